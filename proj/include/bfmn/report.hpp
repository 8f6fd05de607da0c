#pragma once

#include <string>
#include <vector>

#include "bfmn/affect.hpp"
#include "bfmn/metrics.hpp"
#include "bfmn/network.hpp"

namespace bfmn {

// Paper color semantics: positive cyan, negative red, neutral black; edge
// classes red/cyan/purple/gray; idiosyncratic edges drawn narrower.
struct RenderSpec {
    std::string positive_color = "cyan";
    std::string negative_color = "red";
    std::string neutral_color = "black";
    std::string conflicting_color = "purple";
    std::string neutral_edge_color = "gray";
    double wide_edge_width = 3.0;
    double narrow_edge_width = 1.0;
    double cue_font_scale = 1.6;  // relative to associate labels
    double canvas_size = 900.0;
    std::size_t first_ring_capacity = 16;

    std::string node_color(ValenceLabel label) const;
    std::string edge_color(EdgeClass c) const;
};

// Star layout: cue at the center, associates on concentric rings filled in
// multiplicity-descending order, evenly spaced, lexicographic angular order
// within a ring. Deterministic; throws EmptyFrame on an empty frame.
std::string render_star_svg(const SemanticFrame& frame, const RenderSpec& spec = {});

// Heat map of the density grid with valence on x, arousal on y, quadrant
// guides at 0.5, and optional point overlay. Intensity is monotone in cell
// value.
std::string render_circumplex_svg(const DensityGrid& grid,
                                  const std::vector<CircumplexPoint>& points = {},
                                  const RenderSpec& spec = {});

// Stacked per-cue fraction bars; cue captions colored by the cue's own label.
std::string render_bars_svg(const std::vector<CueFractions>& rows, const RenderSpec& spec = {});

// Top-level CLI: probe, normalize, label, frame, metrics, compare,
// circumplex, render, export. Returns the process exit status.
int run_cli(int argc, const char* const* argv);

}  // namespace bfmn
