#include "bfmn/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include <json.hpp>

namespace bfmn {

using nlohmann::json;

std::string to_string(FrameAura a) {
    switch (a) {
        case FrameAura::Negative: return "negative";
        case FrameAura::Neutral: return "neutral";
        case FrameAura::Positive: return "positive";
        case FrameAura::Mixed: return "mixed";
    }
    return "neutral";
}

namespace {

FrameAura aura_from_string(const std::string& s) {
    if (s == "negative") return FrameAura::Negative;
    if (s == "neutral") return FrameAura::Neutral;
    if (s == "positive") return FrameAura::Positive;
    if (s == "mixed") return FrameAura::Mixed;
    throw FormatError("unknown frame aura: '" + s + "'");
}

std::string num(double v) { return json(v).dump(); }

}  // namespace

FrameMetrics frame_metrics(const SemanticFrame& frame, const EmotionLexicon& emolex,
                           bool weighted) {
    FrameMetrics m;
    m.cue = frame.cue;
    m.cue_label = frame.cue_label;
    m.weighted = weighted;
    m.frame_size = frame.associates.size();
    m.estimated_valence = frame.cue_mean_valence;
    m.valence_se = frame.cue_valence_se;
    m.valence_n = frame.cue_scores.size();

    if (frame.associates.empty()) {
        m.frame_aura = FrameAura::Neutral;
        return m;
    }

    // aura: mode of the unique associate labels; ties are Mixed
    std::array<std::size_t, 3> unique_counts{};  // negative, neutral, positive
    for (const FrameAssociate& a : frame.associates)
        unique_counts[static_cast<std::size_t>(a.label)] += 1;
    const std::size_t top = *std::max_element(unique_counts.begin(), unique_counts.end());
    const int modes = static_cast<int>(std::count(unique_counts.begin(), unique_counts.end(), top));
    if (modes > 1) {
        m.frame_aura = FrameAura::Mixed;
    } else if (unique_counts[0] == top) {
        m.frame_aura = FrameAura::Negative;
    } else if (unique_counts[1] == top) {
        m.frame_aura = FrameAura::Neutral;
    } else {
        m.frame_aura = FrameAura::Positive;
    }

    std::array<double, 3> label_mass{};
    std::array<double, 3> ne_mass{};
    double total = 0.0, ne_total = 0.0;
    for (const FrameAssociate& a : frame.associates) {
        const double w = weighted ? static_cast<double>(a.multiplicity) : 1.0;
        label_mass[static_cast<std::size_t>(a.label)] += w;
        total += w;
        if (emolex.non_emotional(a.display_form, a.stem)) {
            ne_mass[static_cast<std::size_t>(a.label)] += w;
            ne_total += w;
        }
    }
    m.frac_negative = label_mass[0] / total;
    m.frac_neutral = label_mass[1] / total;
    m.frac_positive = label_mass[2] / total;
    m.non_emotional_fraction = ne_total / total;
    if (ne_total > 0.0) {
        m.ne_frac_negative = ne_mass[0] / ne_total;
        m.ne_frac_neutral = ne_mass[1] / ne_total;
        m.ne_frac_positive = ne_mass[2] / ne_total;
    }
    return m;
}

std::vector<CueFractions> fraction_chart_data(const std::vector<FrameMetrics>& frames) {
    std::vector<CueFractions> rows;
    rows.reserve(frames.size());
    for (const FrameMetrics& m : frames)
        rows.push_back(CueFractions{m.cue, m.cue_label, m.frac_positive, m.frac_negative,
                                    m.frac_neutral, m.frame_size});
    std::sort(rows.begin(), rows.end(),
              [](const CueFractions& a, const CueFractions& b) { return a.cue < b.cue; });
    return rows;
}

std::string fractions_to_csv(const std::vector<CueFractions>& rows) {
    std::ostringstream out;
    out << "cue,cue_label,positive,negative,neutral,frame_size\n";
    for (const CueFractions& r : rows)
        out << r.cue << ',' << to_string(r.cue_label) << ',' << num(r.positive) << ','
            << num(r.negative) << ',' << num(r.neutral) << ',' << r.frame_size << '\n';
    return out.str();
}

std::vector<CueFractions> fractions_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw FormatError("fractions CSV is empty");
    std::vector<CueFractions> rows;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::string field;
        std::istringstream fs(line);
        while (std::getline(fs, field, ',')) fields.push_back(field);
        if (fields.size() != 6)
            throw FormatError("fractions CSV line " + std::to_string(line_no) +
                              ": expected 6 fields");
        CueFractions r;
        r.cue = fields[0];
        r.cue_label = valence_label_from_string(fields[1]);
        try {
            r.positive = std::stod(fields[2]);
            r.negative = std::stod(fields[3]);
            r.neutral = std::stod(fields[4]);
            r.frame_size = static_cast<std::size_t>(std::stoull(fields[5]));
        } catch (const std::exception&) {
            throw FormatError("fractions CSV line " + std::to_string(line_no) +
                              ": bad numeric field");
        }
        rows.push_back(r);
    }
    return rows;
}

ComparisonTable compare(
    const std::vector<std::pair<std::string, std::vector<FrameMetrics>>>& corpora) {
    if (corpora.empty()) throw Error("compare needs at least one corpus");
    std::set<std::string> seen;
    ComparisonTable table;
    for (const auto& [corpus_id, metrics] : corpora) {
        if (!seen.insert(corpus_id).second)
            throw DuplicateCorpusId("duplicate corpus id: '" + corpus_id + "'");
        for (const FrameMetrics& m : metrics)
            table.rows.push_back(ComparisonTable::Row{corpus_id, m});
    }
    std::sort(table.rows.begin(), table.rows.end(),
              [](const ComparisonTable::Row& a, const ComparisonTable::Row& b) {
                  if (a.metrics.cue != b.metrics.cue) return a.metrics.cue < b.metrics.cue;
                  return a.corpus_id < b.corpus_id;
              });
    return table;
}

namespace {

std::vector<std::string> metric_row_fields(const ComparisonTable::Row& row) {
    const FrameMetrics& m = row.metrics;
    return {
        row.corpus_id,
        m.cue,
        std::to_string(m.frame_size),
        num(m.estimated_valence) + " +/- " + num(m.valence_se),
        to_string(m.cue_label),
        to_string(m.frame_aura),
        num(m.frac_positive) + "/" + num(m.frac_neutral) + "/" + num(m.frac_negative),
        num(m.non_emotional_fraction),
        num(m.ne_frac_positive) + "/" + num(m.ne_frac_neutral) + "/" + num(m.ne_frac_negative),
    };
}

const std::vector<std::string>& metric_headers() {
    static const std::vector<std::string> headers = {
        "corpus",
        "cue",
        "frame_size",
        "estimated_valence",
        "cue_label",
        "frame_valence",
        "positive/neutral/negative",
        "non_emotional",
        "non_emotional positive/neutral/negative",
    };
    return headers;
}

}  // namespace

std::string comparison_to_csv(const ComparisonTable& table) {
    std::ostringstream out;
    const auto& headers = metric_headers();
    for (std::size_t i = 0; i < headers.size(); ++i)
        out << (i ? "," : "") << headers[i];
    out << '\n';
    for (const ComparisonTable::Row& row : table.rows) {
        auto fields = metric_row_fields(row);
        for (std::size_t i = 0; i < fields.size(); ++i) out << (i ? "," : "") << fields[i];
        out << '\n';
    }
    return out.str();
}

std::string comparison_to_markdown(const ComparisonTable& table) {
    std::ostringstream out;
    const auto& headers = metric_headers();
    out << '|';
    for (const std::string& h : headers) out << ' ' << h << " |";
    out << "\n|";
    for (std::size_t i = 0; i < headers.size(); ++i) out << " --- |";
    out << '\n';
    for (const ComparisonTable::Row& row : table.rows) {
        out << '|';
        for (const std::string& f : metric_row_fields(row)) out << ' ' << f << " |";
        out << '\n';
    }
    return out.str();
}

std::string metrics_to_json(const std::string& corpus_id, const std::vector<FrameMetrics>& rows) {
    json j;
    j["corpus_id"] = corpus_id;
    json arr = json::array();
    for (const FrameMetrics& m : rows) {
        arr.push_back({
            {"cue", m.cue},
            {"frame_size", m.frame_size},
            {"estimated_valence", m.estimated_valence},
            {"valence_se", m.valence_se},
            {"valence_n", m.valence_n},
            {"cue_label", to_string(m.cue_label)},
            {"frame_aura", to_string(m.frame_aura)},
            {"fractions",
             {{"positive", m.frac_positive},
              {"neutral", m.frac_neutral},
              {"negative", m.frac_negative}}},
            {"non_emotional_fraction", m.non_emotional_fraction},
            {"non_emotional_fractions",
             {{"positive", m.ne_frac_positive},
              {"neutral", m.ne_frac_neutral},
              {"negative", m.ne_frac_negative}}},
            {"weighted", m.weighted},
        });
    }
    j["frames"] = arr;
    return j.dump(2) + "\n";
}

std::pair<std::string, std::vector<FrameMetrics>> metrics_from_json(const std::string& text) {
    std::vector<FrameMetrics> rows;
    std::string corpus_id;
    try {
        json j = json::parse(text);
        corpus_id = j.at("corpus_id").get<std::string>();
        for (const json& e : j.at("frames")) {
            FrameMetrics m;
            m.cue = e.at("cue").get<std::string>();
            m.frame_size = e.at("frame_size").get<std::size_t>();
            m.estimated_valence = e.at("estimated_valence").get<double>();
            m.valence_se = e.value("valence_se", 0.0);
            m.valence_n = e.value("valence_n", std::size_t{0});
            m.cue_label = valence_label_from_string(e.at("cue_label").get<std::string>());
            m.frame_aura = aura_from_string(e.at("frame_aura").get<std::string>());
            m.frac_positive = e.at("fractions").at("positive").get<double>();
            m.frac_neutral = e.at("fractions").at("neutral").get<double>();
            m.frac_negative = e.at("fractions").at("negative").get<double>();
            m.non_emotional_fraction = e.at("non_emotional_fraction").get<double>();
            m.ne_frac_positive = e.at("non_emotional_fractions").at("positive").get<double>();
            m.ne_frac_neutral = e.at("non_emotional_fractions").at("neutral").get<double>();
            m.ne_frac_negative = e.at("non_emotional_fractions").at("negative").get<double>();
            m.weighted = e.value("weighted", false);
            rows.push_back(m);
        }
    } catch (const json::exception& ex) {
        throw FormatError(std::string("bad metrics document: ") + ex.what());
    }
    return {corpus_id, rows};
}

}  // namespace bfmn
