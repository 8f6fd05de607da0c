#pragma once

#include <string>
#include <vector>

#include "bfmn/affect.hpp"
#include "bfmn/network.hpp"

namespace bfmn {

enum class FrameAura { Negative, Neutral, Positive, Mixed };

std::string to_string(FrameAura a);

// One comparison-table row for a cue's semantic frame.
struct FrameMetrics {
    std::string cue;
    std::size_t frame_size = 0;
    double estimated_valence = 0.0;  // mean of the cue's own scores
    double valence_se = 0.0;         // standard error of that mean
    std::size_t valence_n = 0;
    ValenceLabel cue_label = ValenceLabel::Neutral;
    FrameAura frame_aura = FrameAura::Neutral;
    double frac_positive = 0.0;
    double frac_neutral = 0.0;
    double frac_negative = 0.0;
    double non_emotional_fraction = 0.0;
    double ne_frac_positive = 0.0;
    double ne_frac_neutral = 0.0;
    double ne_frac_negative = 0.0;
    bool weighted = false;  // multiplicity-weighted fractions
};

// Six frame measurements. Fractions are over unique associates by default;
// `weighted` weights them by edge multiplicity instead. The aura is always
// the mode of the unique associate labels, ties yielding Mixed.
FrameMetrics frame_metrics(const SemanticFrame& frame, const EmotionLexicon& emolex,
                           bool weighted = false);

struct CueFractions {
    std::string cue;
    ValenceLabel cue_label = ValenceLabel::Neutral;
    double positive = 0.0;
    double negative = 0.0;
    double neutral = 0.0;
    std::size_t frame_size = 0;
};

// Per-cue fraction rows for bar-chart rendering; the cue column carries the
// cue's own label, independent of its associates.
std::vector<CueFractions> fraction_chart_data(const std::vector<FrameMetrics>& frames);

std::string fractions_to_csv(const std::vector<CueFractions>& rows);
std::vector<CueFractions> fractions_from_csv(const std::string& text);

struct ComparisonTable {
    struct Row {
        std::string corpus_id;
        FrameMetrics metrics;
    };
    std::vector<Row> rows;
};

// Align per-corpus metrics into one table; corpus ids must be unique.
ComparisonTable compare(
    const std::vector<std::pair<std::string, std::vector<FrameMetrics>>>& corpora);

std::string comparison_to_csv(const ComparisonTable& table);
std::string comparison_to_markdown(const ComparisonTable& table);

// metrics JSON document for one corpus (input format of the compare stage)
std::string metrics_to_json(const std::string& corpus_id, const std::vector<FrameMetrics>& rows);
std::pair<std::string, std::vector<FrameMetrics>> metrics_from_json(const std::string& text);

}  // namespace bfmn
