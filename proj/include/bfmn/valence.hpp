#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "bfmn/types.hpp"

namespace bfmn {

// All valence scores observed for one stem: occurrences as an associate
// plus cue-rating scores when the stem is a cue.
struct ScoreSample {
    std::string stem;
    std::vector<int> scores;
};

struct SignificanceConfig {
    enum class Pooling { Complement, Full };
    double alpha = 0.1;
    Pooling pooling = Pooling::Complement;
};

struct KruskalWallisResult {
    double h = 0.0;
    double p = 1.0;
    double mean_rank_a = 0.0;
    double mean_rank_b = 0.0;
    bool degenerate = false;  // all pooled values identical
};

struct LabelResult {
    std::string stem;
    ValenceLabel label = ValenceLabel::Neutral;
    double h_statistic = 0.0;
    double p_value = 1.0;
    int direction = 0;  // sign of (sample mean rank - comparison mean rank)
    std::size_t n = 0;
};

struct LabeledLexicon {
    std::map<std::string, LabelResult> by_stem;  // lexicographic iteration
};

// Union of every associate score and every cue-rating score in the corpus.
std::vector<int> pool_scores(const Corpus& corpus);

// 3 * (mean - median) / population standard deviation.
double pearson_skewness(const std::vector<int>& sample);

// Survival function of the chi-square distribution with one degree of
// freedom, in closed form via erfc.
double chi2_sf_df1(double x);

// Two-group Kruskal-Wallis H with tie correction; p from the chi-square
// approximation with 1 df. Identical pooled values degenerate to H=0, p=1.
KruskalWallisResult kruskal_wallis(const std::vector<int>& group_a,
                                   const std::vector<int>& group_b);

// Label one stem's sample against the pooled distribution. `pooled` is the
// full pool including the sample's own scores; complement pooling subtracts
// them before testing.
LabelResult label_stem(const ScoreSample& sample, const std::vector<int>& pooled,
                       const SignificanceConfig& cfg);

// Per-stem score samples of a normalized corpus (associates and cues).
std::map<std::string, ScoreSample> collect_samples(const Corpus& corpus);

// One LabelResult per distinct stem, keyed lexicographically.
LabeledLexicon label_corpus(const Corpus& corpus, const SignificanceConfig& cfg);

// "stem,label,n,h,p,direction" CSV.
void write_labels_csv(const LabeledLexicon& lexicon, std::ostream& out);
LabeledLexicon read_labels_csv(std::istream& in);

}  // namespace bfmn
