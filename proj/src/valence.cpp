#include "bfmn/valence.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "bfmn/normalize.hpp"

#include <json.hpp>

namespace bfmn {

namespace {

constexpr int kMinScore = 1;
constexpr int kMaxScore = 5;

bool in_score_range(const std::vector<int>& v) {
    return std::all_of(v.begin(), v.end(),
                       [](int x) { return x >= kMinScore && x <= kMaxScore; });
}

struct RankSums {
    double sum_a = 0.0;   // rank sum of group a
    double tie_term = 0.0;  // sum over tie groups of t^3 - t
    std::size_t n = 0;
};

// Midrank computation from the joint 1..5 histogram; O(1) in sample size.
RankSums rank_sums_histogram(const std::vector<int>& a, const std::vector<int>& b) {
    std::array<std::uint64_t, 5> ha{}, hb{};
    for (int v : a) ha[static_cast<std::size_t>(v - 1)]++;
    for (int v : b) hb[static_cast<std::size_t>(v - 1)]++;
    RankSums out;
    out.n = a.size() + b.size();
    double below = 0.0;
    for (std::size_t i = 0; i < 5; ++i) {
        double t = static_cast<double>(ha[i] + hb[i]);
        if (t == 0) continue;
        double midrank = below + (t + 1.0) / 2.0;
        out.sum_a += static_cast<double>(ha[i]) * midrank;
        if (t > 1) out.tie_term += t * t * t - t;
        below += t;
    }
    return out;
}

// Generic path for values outside 1..5: sort-based midranks.
RankSums rank_sums_sorted(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<std::pair<int, bool>> all;  // (value, from group a)
    all.reserve(a.size() + b.size());
    for (int v : a) all.emplace_back(v, true);
    for (int v : b) all.emplace_back(v, false);
    std::sort(all.begin(), all.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    RankSums out;
    out.n = all.size();
    std::size_t i = 0;
    while (i < all.size()) {
        std::size_t j = i;
        while (j < all.size() && all[j].first == all[i].first) ++j;
        double t = static_cast<double>(j - i);
        double midrank = static_cast<double>(i) + (t + 1.0) / 2.0;
        for (std::size_t k = i; k < j; ++k)
            if (all[k].second) out.sum_a += midrank;
        if (t > 1) out.tie_term += t * t * t - t;
        i = j;
    }
    return out;
}

}  // namespace

std::vector<int> pool_scores(const Corpus& corpus) {
    std::vector<int> pooled;
    pooled.reserve(corpus.records.size() * 3 + corpus.cue_ratings.size());
    for (const ResponseRecord& record : corpus.records)
        for (const ScoredAssociate& assoc : record.associates)
            pooled.push_back(assoc.score.value());
    for (const CueRating& rating : corpus.cue_ratings) pooled.push_back(rating.score.value());
    if (pooled.empty()) throw EmptyCorpus("corpus contains no valence scores");
    return pooled;
}

double pearson_skewness(const std::vector<int>& sample) {
    if (sample.size() < 2)
        throw DegenerateSample("skewness needs at least two observations");
    std::vector<int> sorted = sample;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    double mean = 0.0;
    for (int v : sorted) mean += v;
    mean /= static_cast<double>(n);
    double median = (n % 2 == 1)
                        ? sorted[n / 2]
                        : (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0;
    double var = 0.0;
    for (int v : sorted) var += (v - mean) * (v - mean);
    var /= static_cast<double>(n);  // population variance
    if (var <= 0.0) throw DegenerateSample("zero variance sample");
    return 3.0 * (mean - median) / std::sqrt(var);
}

double chi2_sf_df1(double x) {
    if (x <= 0.0) return 1.0;
    return std::erfc(std::sqrt(x / 2.0));
}

KruskalWallisResult kruskal_wallis(const std::vector<int>& group_a,
                                   const std::vector<int>& group_b) {
    if (group_a.empty() || group_b.empty())
        throw Error("kruskal_wallis: both groups must be nonempty");

    const RankSums sums = (in_score_range(group_a) && in_score_range(group_b))
                              ? rank_sums_histogram(group_a, group_b)
                              : rank_sums_sorted(group_a, group_b);
    const double n = static_cast<double>(sums.n);
    const double na = static_cast<double>(group_a.size());
    const double nb = static_cast<double>(group_b.size());
    const double sum_b = n * (n + 1.0) / 2.0 - sums.sum_a;

    KruskalWallisResult result;
    result.mean_rank_a = sums.sum_a / na;
    result.mean_rank_b = sum_b / nb;

    const double correction = 1.0 - sums.tie_term / (n * n * n - n);
    if (correction <= 0.0) {
        result.degenerate = true;  // every pooled value identical
        result.h = 0.0;
        result.p = 1.0;
        return result;
    }
    double h_raw = 12.0 / (n * (n + 1.0)) *
                       (sums.sum_a * sums.sum_a / na + sum_b * sum_b / nb) -
                   3.0 * (n + 1.0);
    if (h_raw < 0.0) h_raw = 0.0;  // floating-point guard
    result.h = h_raw / correction;
    result.p = chi2_sf_df1(result.h);
    return result;
}

LabelResult label_stem(const ScoreSample& sample, const std::vector<int>& pooled,
                       const SignificanceConfig& cfg) {
    if (sample.scores.empty()) throw Error("label_stem: empty sample for '" + sample.stem + "'");

    LabelResult result;
    result.stem = sample.stem;
    result.n = sample.scores.size();

    std::vector<int> comparison;
    if (cfg.pooling == SignificanceConfig::Pooling::Complement) {
        // multiset difference: pooled minus the sample's own scores
        std::array<std::int64_t, 5> take{};
        for (int v : sample.scores)
            if (v >= kMinScore && v <= kMaxScore) take[static_cast<std::size_t>(v - 1)]++;
        comparison.reserve(pooled.size());
        for (int v : pooled) {
            if (v >= kMinScore && v <= kMaxScore && take[static_cast<std::size_t>(v - 1)] > 0) {
                take[static_cast<std::size_t>(v - 1)]--;
                continue;
            }
            comparison.push_back(v);
        }
    } else {
        comparison = pooled;
    }

    if (comparison.empty()) {
        // the sample is the whole pool; nothing to compare against
        result.label = ValenceLabel::Neutral;
        return result;
    }

    const KruskalWallisResult kw = kruskal_wallis(sample.scores, comparison);
    result.h_statistic = kw.h;
    result.p_value = kw.p;
    const double diff = kw.mean_rank_a - kw.mean_rank_b;
    result.direction = diff > 0.0 ? 1 : (diff < 0.0 ? -1 : 0);
    if (kw.degenerate || kw.p >= cfg.alpha || result.direction == 0)
        result.label = ValenceLabel::Neutral;
    else
        result.label = result.direction < 0 ? ValenceLabel::Negative : ValenceLabel::Positive;
    return result;
}

std::map<std::string, ScoreSample> collect_samples(const Corpus& corpus) {
    std::map<std::string, ScoreSample> samples;
    auto add = [&samples](const std::string& stem_text, int score) {
        ScoreSample& s = samples[stem_text];
        if (s.stem.empty()) s.stem = stem_text;
        s.scores.push_back(score);
    };
    for (const ResponseRecord& record : corpus.records)
        for (const ScoredAssociate& assoc : record.associates)
            add(corpus.metadata.normalized ? assoc.token : stem_key(assoc.token),
                assoc.score.value());
    for (const CueRating& rating : corpus.cue_ratings)
        add(stem_key(rating.cue.str()), rating.score.value());
    // cue stems with no ratings still appear (possibly scoreless) so the
    // lexicon covers them
    for (const ResponseRecord& record : corpus.records) {
        const std::string cue_stem = stem_key(record.cue.str());
        ScoreSample& s = samples[cue_stem];
        if (s.stem.empty()) s.stem = cue_stem;
    }
    return samples;
}

LabeledLexicon label_corpus(const Corpus& corpus, const SignificanceConfig& cfg) {
    const std::vector<int> pooled = pool_scores(corpus);
    LabeledLexicon lexicon;
    for (const auto& [stem_text, sample] : collect_samples(corpus)) {
        if (sample.scores.empty()) {
            LabelResult r;
            r.stem = stem_text;
            lexicon.by_stem.emplace(stem_text, std::move(r));
            continue;
        }
        lexicon.by_stem.emplace(stem_text, label_stem(sample, pooled, cfg));
    }
    return lexicon;
}

namespace {
std::string number_repr(double v) { return nlohmann::json(v).dump(); }
}  // namespace

void write_labels_csv(const LabeledLexicon& lexicon, std::ostream& out) {
    out << "stem,label,n,h,p,direction\n";
    for (const auto& [stem_text, r] : lexicon.by_stem) {
        std::string quoted = stem_text;
        if (quoted.find(',') != std::string::npos) quoted = "\"" + quoted + "\"";
        out << quoted << ',' << to_string(r.label) << ',' << r.n << ','
            << number_repr(r.h_statistic) << ',' << number_repr(r.p_value) << ','
            << r.direction << '\n';
    }
}

LabeledLexicon read_labels_csv(std::istream& in) {
    LabeledLexicon lexicon;
    std::string line;
    if (!std::getline(in, line)) throw FormatError("labels CSV is empty");
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::string field;
        bool quoted = false;
        for (char c : line) {
            if (c == '"') {
                quoted = !quoted;
            } else if (c == ',' && !quoted) {
                fields.push_back(field);
                field.clear();
            } else {
                field.push_back(c);
            }
        }
        fields.push_back(field);
        if (fields.size() != 6)
            throw FormatError("labels CSV line " + std::to_string(line_no) +
                              ": expected 6 fields");
        LabelResult r;
        r.stem = fields[0];
        r.label = valence_label_from_string(fields[1]);
        try {
            r.n = static_cast<std::size_t>(std::stoull(fields[2]));
            r.h_statistic = std::stod(fields[3]);
            r.p_value = std::stod(fields[4]);
            r.direction = std::stoi(fields[5]);
        } catch (const std::exception&) {
            throw FormatError("labels CSV line " + std::to_string(line_no) +
                              ": bad numeric field");
        }
        lexicon.by_stem[r.stem] = r;
    }
    return lexicon;
}

}  // namespace bfmn
