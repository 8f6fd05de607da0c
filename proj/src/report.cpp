#include "bfmn/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

namespace bfmn {

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string svg_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

// dark blue to yellow, monotone per channel
std::string heat_color(double t) {
    t = std::clamp(t, 0.0, 1.0);
    const int r = static_cast<int>(std::lround(16 + t * (255 - 16)));
    const int g = static_cast<int>(std::lround(16 + t * (255 - 16)));
    const int b = static_cast<int>(std::lround(64 + t * (51 - 64)));
    char buf[8];
    std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", r, g, b);
    return buf;
}

}  // namespace

std::string RenderSpec::node_color(ValenceLabel label) const {
    switch (label) {
        case ValenceLabel::Positive: return positive_color;
        case ValenceLabel::Negative: return negative_color;
        case ValenceLabel::Neutral: return neutral_color;
    }
    return neutral_color;
}

std::string RenderSpec::edge_color(EdgeClass c) const {
    switch (c) {
        case EdgeClass::NegativeNegative: return negative_color;
        case EdgeClass::PositivePositive: return positive_color;
        case EdgeClass::Conflicting: return conflicting_color;
        case EdgeClass::NeutralTouching: return neutral_edge_color;
    }
    return neutral_edge_color;
}

std::string render_star_svg(const SemanticFrame& frame, const RenderSpec& spec) {
    if (frame.associates.empty())
        throw EmptyFrame("cannot render an empty frame: " + frame.cue);

    const double size = spec.canvas_size;
    const double cx = size / 2.0, cy = size / 2.0;
    const double margin = 110.0;
    const double usable = size / 2.0 - margin;

    // ring assignment: multiplicity-descending fill, ring r holds up to
    // first_ring_capacity * (r + 1) associates
    struct Placed {
        const FrameAssociate* assoc;
        double x, y;
    };
    std::vector<std::vector<const FrameAssociate*>> rings;
    {
        std::size_t i = 0;
        std::size_t ring = 0;
        while (i < frame.associates.size()) {
            const std::size_t capacity = spec.first_ring_capacity * (ring + 1);
            std::vector<const FrameAssociate*> members;
            for (std::size_t k = 0; k < capacity && i < frame.associates.size(); ++k, ++i)
                members.push_back(&frame.associates[i]);
            rings.push_back(std::move(members));
            ++ring;
        }
    }
    std::vector<Placed> placed;
    for (std::size_t r = 0; r < rings.size(); ++r) {
        // lexicographic angular order within the ring
        std::vector<const FrameAssociate*> members = rings[r];
        std::sort(members.begin(), members.end(),
                  [](const FrameAssociate* a, const FrameAssociate* b) {
                      return a->stem < b->stem;
                  });
        const double radius =
            usable * (static_cast<double>(r + 1) / static_cast<double>(rings.size()));
        const double step = 2.0 * std::numbers::pi / static_cast<double>(members.size());
        for (std::size_t j = 0; j < members.size(); ++j) {
            const double theta = step * static_cast<double>(j);
            placed.push_back(Placed{members[j], cx + radius * std::cos(theta),
                                    cy + radius * std::sin(theta)});
        }
    }

    const double base_font = 14.0;
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(size) << "\" height=\""
        << fmt(size) << "\" viewBox=\"0 0 " << fmt(size) << " " << fmt(size) << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    for (const Placed& p : placed) {
        const EdgeClass cls = classify_edge(frame.cue_label, p.assoc->label);
        const double width =
            p.assoc->multiplicity > 1 ? spec.wide_edge_width : spec.narrow_edge_width;
        out << "<line x1=\"" << fmt(cx) << "\" y1=\"" << fmt(cy) << "\" x2=\"" << fmt(p.x)
            << "\" y2=\"" << fmt(p.y) << "\" stroke=\"" << spec.edge_color(cls)
            << "\" stroke-width=\"" << fmt(width) << "\"/>\n";
    }
    for (const Placed& p : placed) {
        const std::string color = spec.node_color(p.assoc->label);
        out << "<circle cx=\"" << fmt(p.x) << "\" cy=\"" << fmt(p.y)
            << "\" r=\"5\" fill=\"" << color << "\"/>\n"
            << "<text x=\"" << fmt(p.x) << "\" y=\"" << fmt(p.y - 9.0)
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\""
            << fmt(base_font) << "\" fill=\"" << color << "\">"
            << svg_escape(p.assoc->display_form) << "</text>\n";
    }
    out << "<circle cx=\"" << fmt(cx) << "\" cy=\"" << fmt(cy) << "\" r=\"7\" fill=\""
        << spec.node_color(frame.cue_label) << "\"/>\n"
        << "<text x=\"" << fmt(cx) << "\" y=\"" << fmt(cy - 12.0)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-weight=\"bold\" "
           "font-size=\""
        << fmt(base_font * spec.cue_font_scale) << "\" fill=\""
        << spec.node_color(frame.cue_label) << "\">" << svg_escape(frame.cue_display)
        << "</text>\n</svg>\n";
    return out.str();
}

std::string render_circumplex_svg(const DensityGrid& grid,
                                  const std::vector<CircumplexPoint>& points,
                                  const RenderSpec& spec) {
    const double plot = spec.canvas_size - 180.0;
    const double ox = 120.0, oy = 40.0;  // plot-area origin (top-left)
    const double size = spec.canvas_size;

    double vmax = 0.0;
    for (double v : grid.cells) vmax = std::max(vmax, v);
    if (vmax <= 0.0) vmax = 1.0;

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(size) << "\" height=\""
        << fmt(size) << "\" viewBox=\"0 0 " << fmt(size) << " " << fmt(size) << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    const double cell = plot / static_cast<double>(grid.n);
    for (std::size_t iy = 0; iy < grid.n; ++iy) {
        for (std::size_t ix = 0; ix < grid.n; ++ix) {
            const double x = ox + cell * static_cast<double>(ix);
            // arousal grows upward; SVG y grows downward
            const double y = oy + plot - cell * static_cast<double>(iy + 1);
            out << "<rect x=\"" << fmt(x) << "\" y=\"" << fmt(y) << "\" width=\""
                << fmt(cell + 0.01) << "\" height=\"" << fmt(cell + 0.01) << "\" fill=\""
                << heat_color(grid.at(ix, iy) / vmax) << "\"/>\n";
        }
    }
    // quadrant guides at 0.5
    out << "<line x1=\"" << fmt(ox + plot / 2) << "\" y1=\"" << fmt(oy) << "\" x2=\""
        << fmt(ox + plot / 2) << "\" y2=\"" << fmt(oy + plot)
        << "\" stroke=\"white\" stroke-dasharray=\"6,4\" stroke-width=\"1.5\"/>\n"
        << "<line x1=\"" << fmt(ox) << "\" y1=\"" << fmt(oy + plot / 2) << "\" x2=\""
        << fmt(ox + plot) << "\" y2=\"" << fmt(oy + plot / 2)
        << "\" stroke=\"white\" stroke-dasharray=\"6,4\" stroke-width=\"1.5\"/>\n";
    for (const CircumplexPoint& p : points) {
        const double x = ox + plot * p.valence;
        const double y = oy + plot * (1.0 - p.arousal);
        out << "<circle cx=\"" << fmt(x) << "\" cy=\"" << fmt(y)
            << "\" r=\"3\" fill=\"white\" stroke=\"black\" stroke-width=\"0.8\"><title>"
            << svg_escape(p.stem) << "</title></circle>\n";
    }
    // axes
    out << "<rect x=\"" << fmt(ox) << "\" y=\"" << fmt(oy) << "\" width=\"" << fmt(plot)
        << "\" height=\"" << fmt(plot) << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (double tick : {0.0, 0.5, 1.0}) {
        out << "<text x=\"" << fmt(ox + plot * tick) << "\" y=\"" << fmt(oy + plot + 24.0)
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
               "fill=\"black\">"
            << fmt(tick) << "</text>\n"
            << "<text x=\"" << fmt(ox - 14.0) << "\" y=\"" << fmt(oy + plot * (1.0 - tick) + 4.0)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"13\" "
               "fill=\"black\">"
            << fmt(tick) << "</text>\n";
    }
    out << "<text x=\"" << fmt(ox + plot / 2) << "\" y=\"" << fmt(oy + plot + 52.0)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\" "
           "fill=\"black\">valence</text>\n"
        << "<text x=\"" << fmt(ox - 60.0) << "\" y=\"" << fmt(oy + plot / 2)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\" "
           "fill=\"black\" transform=\"rotate(-90 " << fmt(ox - 60.0) << " "
        << fmt(oy + plot / 2) << ")\">arousal</text>\n</svg>\n";
    return out.str();
}

std::string render_bars_svg(const std::vector<CueFractions>& rows, const RenderSpec& spec) {
    if (rows.empty()) throw EmptyFrame("no fraction rows to render");
    const double size = spec.canvas_size;
    const double ox = 70.0, oy = 50.0;
    const double plot_w = size - 140.0, plot_h = size - 170.0;
    const double slot = plot_w / static_cast<double>(rows.size());
    const double bar_w = slot * 0.6;

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(size) << "\" height=\""
        << fmt(size) << "\" viewBox=\"0 0 " << fmt(size) << " " << fmt(size) << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    for (double tick : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        out << "<text x=\"" << fmt(ox - 10.0) << "\" y=\"" << fmt(oy + plot_h * (1.0 - tick) + 4.0)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\" "
               "fill=\"black\">"
            << fmt(tick) << "</text>\n"
            << "<line x1=\"" << fmt(ox) << "\" y1=\"" << fmt(oy + plot_h * (1.0 - tick))
            << "\" x2=\"" << fmt(ox + plot_w) << "\" y2=\"" << fmt(oy + plot_h * (1.0 - tick))
            << "\" stroke=\"#dddddd\" stroke-width=\"0.5\"/>\n";
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const CueFractions& r = rows[i];
        const double x = ox + slot * static_cast<double>(i) + (slot - bar_w) / 2.0;
        double y = oy + plot_h;
        struct Segment {
            double fraction;
            const std::string* color;
        };
        const Segment segments[3] = {
            {r.negative, &spec.negative_color},
            {r.neutral, &spec.neutral_edge_color},
            {r.positive, &spec.positive_color},
        };
        for (const Segment& s : segments) {
            const double h = plot_h * s.fraction;
            y -= h;
            if (h <= 0.0) continue;
            out << "<rect x=\"" << fmt(x) << "\" y=\"" << fmt(y) << "\" width=\"" << fmt(bar_w)
                << "\" height=\"" << fmt(h) << "\" fill=\"" << *s.color
                << "\" stroke=\"white\" stroke-width=\"0.5\"/>\n";
        }
        // cue caption carries the cue's own label color
        out << "<text x=\"" << fmt(x + bar_w / 2.0) << "\" y=\"" << fmt(oy + plot_h + 26.0)
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"15\" "
               "font-weight=\"bold\" fill=\""
            << spec.node_color(r.cue_label) << "\">" << svg_escape(r.cue) << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace bfmn
