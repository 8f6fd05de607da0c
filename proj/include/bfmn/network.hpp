#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "bfmn/types.hpp"
#include "bfmn/valence.hpp"

namespace bfmn {

struct BfmnNode {
    std::string stem;
    std::string display_form;
    ValenceLabel label = ValenceLabel::Neutral;
    std::uint64_t occurrence_count = 0;  // appearances as an associate
    bool is_cue = false;
};

struct BfmnEdge {
    std::string cue_stem;
    std::string associate_stem;
    std::uint64_t multiplicity = 0;
    bool idiosyncratic() const { return multiplicity == 1; }
};

// The behavioral forma mentis network: cue-to-associate links only,
// undirected with a cue-side marker.
struct Bfmn {
    std::map<std::string, BfmnNode> nodes;
    std::map<std::pair<std::string, std::string>, BfmnEdge> edges;
    std::map<std::string, std::vector<int>> cue_scores;  // per cue stem
    std::uint64_t record_count = 0;
};

struct FrameAssociate {
    std::string stem;
    std::string display_form;
    ValenceLabel label = ValenceLabel::Neutral;
    std::uint64_t multiplicity = 0;
    bool idiosyncratic = false;
};

// A cue's network neighborhood, sorted by multiplicity descending then
// lexicographically.
struct SemanticFrame {
    std::string cue;       // cue word as probed
    std::string cue_stem;
    std::string cue_display;
    ValenceLabel cue_label = ValenceLabel::Neutral;
    std::vector<int> cue_scores;
    double cue_mean_valence = 0.0;
    double cue_valence_se = 0.0;
    std::vector<FrameAssociate> associates;
};

enum class EdgeClass { NegativeNegative, PositivePositive, Conflicting, NeutralTouching };

std::string to_string(EdgeClass c);

EdgeClass classify_edge(ValenceLabel a, ValenceLabel b);

// Three edges per record, multiplicities accumulated per (cue, associate)
// pair; node labels come from the lexicon (MissingLabel when absent).
Bfmn build_bfmn(const Corpus& corpus, const LabeledLexicon& lexicon);

SemanticFrame frame(const Bfmn& bfmn, const CueWord& cue);

// frame JSON round trip (used by the frame/metrics/render subcommands)
std::string frame_to_string(const SemanticFrame& f);
SemanticFrame frame_from_string(const std::string& text);

}  // namespace bfmn
