#include "bfmn/affect.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include "bfmn/normalize.hpp"

#include <json.hpp>

namespace bfmn {

using nlohmann::json;

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, '\t')) fields.push_back(field);
    return fields;
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

bool parse_unit_score(const std::string& s, double& out) {
    try {
        std::size_t pos = 0;
        out = std::stod(s, &pos);
        if (pos != s.size()) return false;
    } catch (const std::exception&) {
        return false;
    }
    return out >= 0.0 && out <= 1.0;
}

}  // namespace

VadLexicon VadLexicon::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FileError("cannot open VAD lexicon: " + path);
    VadLexicon lexicon;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> fields = split_tabs(line);
        if (fields.size() != 4)
            throw FormatError("VAD line " + std::to_string(line_no) +
                              ": expected 4 tab-separated fields");
        double v = 0, a = 0, d = 0;
        if (!parse_unit_score(fields[1], v) || !parse_unit_score(fields[2], a) ||
            !parse_unit_score(fields[3], d)) {
            if (line_no == 1) continue;  // header row tolerance
            throw FormatError("VAD line " + std::to_string(line_no) +
                              ": scores must be numbers in [0,1]");
        }
        lexicon.entries_[lower(fields[0])] = VadEntry{v, a, d};
    }
    lexicon.index_stems();
    return lexicon;
}

VadLexicon VadLexicon::from_entries(const std::map<std::string, VadEntry>& entries) {
    VadLexicon lexicon;
    for (const auto& [word, entry] : entries) lexicon.entries_[lower(word)] = entry;
    lexicon.index_stems();
    return lexicon;
}

void VadLexicon::index_stems() {
    by_stem_.clear();
    // first lexicographic word wins for each stem; entries_ is ordered
    for (const auto& [word, entry] : entries_) by_stem_.emplace(stem(word), word);
}

std::optional<VadEntry> VadLexicon::lookup(const std::string& surface,
                                           const std::string& stem_text) const {
    if (auto it = entries_.find(lower(surface)); it != entries_.end()) return it->second;
    if (auto it = by_stem_.find(stem_text); it != by_stem_.end())
        return entries_.at(it->second);
    return std::nullopt;
}

const std::array<std::string, 10>& EmotionLexicon::emotion_names() {
    static const std::array<std::string, 10> names = {
        "anger", "anticipation", "disgust",  "fear",     "joy",
        "negative", "positive",  "sadness",  "surprise", "trust",
    };
    return names;
}

bool EmotionLexicon::is_basic_emotion(std::size_t index) {
    // all but the negative/positive sentiment columns
    return index != 5 && index != 6;
}

EmotionLexicon EmotionLexicon::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FileError("cannot open emotion lexicon: " + path);
    EmotionLexicon lexicon;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> fields = split_tabs(line);
        if (fields.size() != 3)
            throw FormatError("emotion lexicon line " + std::to_string(line_no) +
                              ": expected word<TAB>emotion<TAB>0|1");
        const auto& names = emotion_names();
        auto name_it = std::find(names.begin(), names.end(), fields[1]);
        if (name_it == names.end())
            throw FormatError("emotion lexicon line " + std::to_string(line_no) +
                              ": unknown emotion '" + fields[1] + "'");
        if (fields[2] != "0" && fields[2] != "1")
            throw FormatError("emotion lexicon line " + std::to_string(line_no) +
                              ": flag must be 0 or 1");
        auto index = static_cast<std::size_t>(name_it - names.begin());
        Flags& flags = lexicon.flags_[lower(fields[0])];
        if (fields[2] == "1") flags[index] = true;
    }
    lexicon.index_stems();
    return lexicon;
}

EmotionLexicon EmotionLexicon::from_flags(const std::map<std::string, Flags>& flags) {
    EmotionLexicon lexicon;
    for (const auto& [word, f] : flags) lexicon.flags_[lower(word)] = f;
    lexicon.index_stems();
    return lexicon;
}

void EmotionLexicon::index_stems() {
    by_stem_.clear();
    for (const auto& [word, f] : flags_) by_stem_.emplace(stem(word), word);
}

std::optional<EmotionLexicon::Flags> EmotionLexicon::lookup(const std::string& surface,
                                                            const std::string& stem_text) const {
    if (auto it = flags_.find(lower(surface)); it != flags_.end()) return it->second;
    if (auto it = by_stem_.find(stem_text); it != by_stem_.end()) return flags_.at(it->second);
    return std::nullopt;
}

bool EmotionLexicon::non_emotional(const std::string& surface,
                                   const std::string& stem_text) const {
    auto flags = lookup(surface, stem_text);
    if (!flags) return true;
    for (std::size_t i = 0; i < flags->size(); ++i)
        if (is_basic_emotion(i) && (*flags)[i]) return false;
    return true;
}

std::pair<std::vector<CircumplexPoint>, CoverageReport> circumplex_points(
    const SemanticFrame& frame, const VadLexicon& vad) {
    std::vector<CircumplexPoint> points;
    CoverageReport coverage;
    for (const FrameAssociate& assoc : frame.associates) {
        auto entry = vad.lookup(assoc.display_form, assoc.stem);
        if (!entry) {
            ++coverage.missing;
            continue;
        }
        ++coverage.found;
        points.push_back(CircumplexPoint{assoc.stem, entry->valence, entry->arousal,
                                         static_cast<double>(assoc.multiplicity)});
    }
    return {points, coverage};
}

double DensityGrid::mass() const {
    const double cell_area = 1.0 / (static_cast<double>(n) * static_cast<double>(n));
    double sum = 0.0;
    for (double v : cells) sum += v;
    return sum * cell_area;
}

DensityGrid kde_density(const std::vector<CircumplexPoint>& points, std::size_t n,
                        std::optional<std::pair<double, double>> bandwidth) {
    if (points.empty()) throw NoPoints("density estimation needs at least one point");
    if (n < 2) throw Error("density grid needs at least 2 cells per side");

    constexpr double kBandwidthFloor = 0.02;
    double bx = 0.0, by = 0.0;
    if (bandwidth) {
        bx = std::max(bandwidth->first, kBandwidthFloor);
        by = std::max(bandwidth->second, kBandwidthFloor);
    } else {
        // Silverman's rule per dimension on the weighted sample:
        // h = sigma * n_eff^(-1/6) for d = 2
        double wsum = 0.0, wsq = 0.0;
        double mx = 0.0, my = 0.0;
        for (const CircumplexPoint& p : points) {
            wsum += p.weight;
            wsq += p.weight * p.weight;
            mx += p.weight * p.valence;
            my += p.weight * p.arousal;
        }
        if (wsum <= 0.0) throw Error("density weights must be positive");
        mx /= wsum;
        my /= wsum;
        double vx = 0.0, vy = 0.0;
        for (const CircumplexPoint& p : points) {
            vx += p.weight * (p.valence - mx) * (p.valence - mx);
            vy += p.weight * (p.arousal - my) * (p.arousal - my);
        }
        vx /= wsum;
        vy /= wsum;
        const double n_eff = wsum * wsum / wsq;
        const double factor = std::pow(n_eff, -1.0 / 6.0);
        bx = std::max(std::sqrt(vx) * factor, kBandwidthFloor);
        by = std::max(std::sqrt(vy) * factor, kBandwidthFloor);
    }

    DensityGrid grid;
    grid.n = n;
    grid.bandwidth_x = bx;
    grid.bandwidth_y = by;
    grid.cells.assign(n * n, 0.0);

    // fixed-order accumulation keeps the output byte-stable
    const double step = 1.0 / static_cast<double>(n);
    for (std::size_t iy = 0; iy < n; ++iy) {
        const double cy = (static_cast<double>(iy) + 0.5) * step;
        for (std::size_t ix = 0; ix < n; ++ix) {
            const double cx = (static_cast<double>(ix) + 0.5) * step;
            double sum = 0.0;
            for (const CircumplexPoint& p : points) {
                const double dx = (cx - p.valence) / bx;
                const double dy = (cy - p.arousal) / by;
                sum += p.weight * std::exp(-0.5 * (dx * dx + dy * dy));
            }
            grid.cells[iy * n + ix] = sum;
        }
    }
    // mass outside [0,1]^2 is clipped; renormalize over the truncated domain
    double total = 0.0;
    for (double v : grid.cells) total += v;
    const double cell_area = step * step;
    if (total <= 0.0) throw Error("density collapsed to zero mass");
    const double scale = 1.0 / (total * cell_area);
    for (double& v : grid.cells) v *= scale;
    return grid;
}

std::string to_string(Quadrant q) {
    switch (q) {
        case Quadrant::SerenityLowerRight: return "serenity_lower_right";
        case Quadrant::AnxietyUpperLeft: return "anxiety_upper_left";
        case Quadrant::ExcitementUpperRight: return "excitement_upper_right";
        case Quadrant::BoredomLowerLeft: return "boredom_lower_left";
    }
    return "serenity_lower_right";
}

Quadrant quadrant(double valence, double arousal) {
    const bool right = valence >= 0.5;
    const bool up = arousal > 0.5;
    if (right && !up) return Quadrant::SerenityLowerRight;
    if (!right && up) return Quadrant::AnxietyUpperLeft;
    if (right && up) return Quadrant::ExcitementUpperRight;
    return Quadrant::BoredomLowerLeft;
}

Quadrant quadrant(const CircumplexPoint& p) { return quadrant(p.valence, p.arousal); }

double quadrant_mass(const DensityGrid& grid, Quadrant q) {
    const double step = 1.0 / static_cast<double>(grid.n);
    const double cell_area = step * step;
    double sum = 0.0;
    for (std::size_t iy = 0; iy < grid.n; ++iy) {
        const double cy = (static_cast<double>(iy) + 0.5) * step;
        for (std::size_t ix = 0; ix < grid.n; ++ix) {
            const double cx = (static_cast<double>(ix) + 0.5) * step;
            if (quadrant(cx, cy) == q) sum += grid.cells[iy * grid.n + ix] * cell_area;
        }
    }
    return sum;
}

std::string density_to_json(const DensityGrid& grid, const std::vector<CircumplexPoint>& points,
                            const CoverageReport& coverage) {
    json j;
    j["grid_size"] = grid.n;
    j["bandwidth"] = json::array({grid.bandwidth_x, grid.bandwidth_y});
    json rows = json::array();
    for (std::size_t iy = 0; iy < grid.n; ++iy) {
        json row = json::array();
        for (std::size_t ix = 0; ix < grid.n; ++ix) row.push_back(grid.at(ix, iy));
        rows.push_back(row);
    }
    j["cells"] = rows;
    json pts = json::array();
    for (const CircumplexPoint& p : points)
        pts.push_back({{"stem", p.stem},
                       {"valence", p.valence},
                       {"arousal", p.arousal},
                       {"weight", p.weight}});
    j["points"] = pts;
    j["coverage"] = {{"found", coverage.found}, {"missing", coverage.missing}};
    return j.dump(2) + "\n";
}

std::string density_to_csv(const DensityGrid& grid) {
    std::ostringstream out;
    for (std::size_t iy = 0; iy < grid.n; ++iy) {
        for (std::size_t ix = 0; ix < grid.n; ++ix) {
            if (ix) out << ',';
            out << json(grid.at(ix, iy)).dump();
        }
        out << '\n';
    }
    return out.str();
}

DensityGrid density_from_json(const std::string& text, std::vector<CircumplexPoint>* points) {
    DensityGrid grid;
    try {
        json j = json::parse(text);
        grid.n = j.at("grid_size").get<std::size_t>();
        grid.bandwidth_x = j.at("bandwidth").at(0).get<double>();
        grid.bandwidth_y = j.at("bandwidth").at(1).get<double>();
        grid.cells.assign(grid.n * grid.n, 0.0);
        const json& rows = j.at("cells");
        for (std::size_t iy = 0; iy < grid.n; ++iy)
            for (std::size_t ix = 0; ix < grid.n; ++ix)
                grid.cells[iy * grid.n + ix] = rows.at(iy).at(ix).get<double>();
        if (points) {
            for (const json& p : j.value("points", json::array()))
                points->push_back(CircumplexPoint{p.at("stem").get<std::string>(),
                                                  p.at("valence").get<double>(),
                                                  p.at("arousal").get<double>(),
                                                  p.value("weight", 1.0)});
        }
    } catch (const json::exception& ex) {
        throw FormatError(std::string("bad density document: ") + ex.what());
    }
    return grid;
}

}  // namespace bfmn
