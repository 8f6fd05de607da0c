#include "bfmn/network.hpp"

#include <algorithm>
#include <cmath>

#include "bfmn/normalize.hpp"

#include <json.hpp>

namespace bfmn {

using nlohmann::json;

std::string to_string(EdgeClass c) {
    switch (c) {
        case EdgeClass::NegativeNegative: return "negative_negative";
        case EdgeClass::PositivePositive: return "positive_positive";
        case EdgeClass::Conflicting: return "conflicting";
        case EdgeClass::NeutralTouching: return "neutral_touching";
    }
    return "neutral_touching";
}

EdgeClass classify_edge(ValenceLabel a, ValenceLabel b) {
    if (a == ValenceLabel::Neutral || b == ValenceLabel::Neutral)
        return EdgeClass::NeutralTouching;
    if (a == b)
        return a == ValenceLabel::Negative ? EdgeClass::NegativeNegative
                                           : EdgeClass::PositivePositive;
    return EdgeClass::Conflicting;
}

Bfmn build_bfmn(const Corpus& corpus, const LabeledLexicon& lexicon) {
    Bfmn bfmn;
    bfmn.record_count = corpus.records.size();

    auto display_of = [&corpus](const std::string& stem_text) {
        auto it = corpus.display_forms.find(stem_text);
        return it == corpus.display_forms.end() ? stem_text : it->second;
    };
    auto label_of = [&lexicon](const std::string& stem_text) {
        auto it = lexicon.by_stem.find(stem_text);
        if (it == lexicon.by_stem.end()) throw MissingLabel(stem_text);
        return it->second.label;
    };
    auto ensure_node = [&](const std::string& stem_text, bool is_cue) -> BfmnNode& {
        auto [it, inserted] = bfmn.nodes.try_emplace(stem_text);
        BfmnNode& node = it->second;
        if (inserted) {
            node.stem = stem_text;
            node.display_form = display_of(stem_text);
            node.label = label_of(stem_text);
        }
        node.is_cue = node.is_cue || is_cue;
        return node;
    };

    for (const ResponseRecord& record : corpus.records) {
        const std::string cue_stem = stem_key(record.cue.str());
        ensure_node(cue_stem, true);
        for (const ScoredAssociate& assoc : record.associates) {
            const std::string assoc_stem =
                corpus.metadata.normalized ? assoc.token : stem_key(assoc.token);
            BfmnNode& node = ensure_node(assoc_stem, false);
            node.occurrence_count += 1;
            BfmnEdge& edge = bfmn.edges[{cue_stem, assoc_stem}];
            if (edge.multiplicity == 0) {
                edge.cue_stem = cue_stem;
                edge.associate_stem = assoc_stem;
            }
            edge.multiplicity += 1;
        }
    }
    for (const CueRating& rating : corpus.cue_ratings) {
        const std::string cue_stem = stem_key(rating.cue.str());
        ensure_node(cue_stem, true);
    }

    // a cue's own score sample: its cue ratings plus occurrences as an
    // associate of other cues
    for (const CueRating& rating : corpus.cue_ratings)
        bfmn.cue_scores[stem_key(rating.cue.str())].push_back(rating.score.value());
    for (const ResponseRecord& record : corpus.records) {
        for (const ScoredAssociate& assoc : record.associates) {
            const std::string assoc_stem =
                corpus.metadata.normalized ? assoc.token : stem_key(assoc.token);
            if (auto it = bfmn.nodes.find(assoc_stem);
                it != bfmn.nodes.end() && it->second.is_cue)
                bfmn.cue_scores[assoc_stem].push_back(assoc.score.value());
        }
    }
    return bfmn;
}

SemanticFrame frame(const Bfmn& bfmn, const CueWord& cue) {
    const std::string cue_stem = stem_key(cue.str());
    auto node_it = bfmn.nodes.find(cue_stem);
    if (node_it == bfmn.nodes.end()) throw UnknownCue("cue not present in network: " + cue.str());

    SemanticFrame f;
    f.cue = cue.str();
    f.cue_stem = cue_stem;
    f.cue_display = node_it->second.display_form;
    f.cue_label = node_it->second.label;
    if (auto it = bfmn.cue_scores.find(cue_stem); it != bfmn.cue_scores.end())
        f.cue_scores = it->second;

    if (!f.cue_scores.empty()) {
        double mean = 0.0;
        for (int v : f.cue_scores) mean += v;
        mean /= static_cast<double>(f.cue_scores.size());
        f.cue_mean_valence = mean;
        if (f.cue_scores.size() > 1) {
            double var = 0.0;
            for (int v : f.cue_scores) var += (v - mean) * (v - mean);
            var /= static_cast<double>(f.cue_scores.size() - 1);
            f.cue_valence_se = std::sqrt(var / static_cast<double>(f.cue_scores.size()));
        }
    }

    auto begin = bfmn.edges.lower_bound({cue_stem, ""});
    for (auto it = begin; it != bfmn.edges.end() && it->first.first == cue_stem; ++it) {
        const BfmnEdge& edge = it->second;
        const BfmnNode& node = bfmn.nodes.at(edge.associate_stem);
        f.associates.push_back(FrameAssociate{node.stem, node.display_form, node.label,
                                              edge.multiplicity, edge.idiosyncratic()});
    }
    std::sort(f.associates.begin(), f.associates.end(),
              [](const FrameAssociate& a, const FrameAssociate& b) {
                  if (a.multiplicity != b.multiplicity) return a.multiplicity > b.multiplicity;
                  return a.stem < b.stem;
              });
    return f;
}

std::string frame_to_string(const SemanticFrame& f) {
    json j;
    j["cue"] = f.cue;
    j["cue_stem"] = f.cue_stem;
    j["cue_display"] = f.cue_display;
    j["cue_label"] = to_string(f.cue_label);
    j["cue_scores"] = f.cue_scores;
    j["cue_mean_valence"] = f.cue_mean_valence;
    j["cue_valence_se"] = f.cue_valence_se;
    json associates = json::array();
    for (const FrameAssociate& a : f.associates)
        associates.push_back({{"stem", a.stem},
                              {"display_form", a.display_form},
                              {"label", to_string(a.label)},
                              {"multiplicity", a.multiplicity},
                              {"idiosyncratic", a.idiosyncratic}});
    j["associates"] = associates;
    return j.dump(2) + "\n";
}

SemanticFrame frame_from_string(const std::string& text) {
    SemanticFrame f;
    try {
        json j = json::parse(text);
        f.cue = j.at("cue").get<std::string>();
        f.cue_stem = j.at("cue_stem").get<std::string>();
        f.cue_display = j.value("cue_display", f.cue_stem);
        f.cue_label = valence_label_from_string(j.at("cue_label").get<std::string>());
        f.cue_scores = j.value("cue_scores", std::vector<int>{});
        f.cue_mean_valence = j.value("cue_mean_valence", 0.0);
        f.cue_valence_se = j.value("cue_valence_se", 0.0);
        for (const json& a : j.value("associates", json::array()))
            f.associates.push_back(FrameAssociate{
                a.at("stem").get<std::string>(),
                a.value("display_form", a.at("stem").get<std::string>()),
                valence_label_from_string(a.at("label").get<std::string>()),
                a.at("multiplicity").get<std::uint64_t>(),
                a.value("idiosyncratic", a.at("multiplicity").get<std::uint64_t>() == 1),
            });
    } catch (const json::exception& ex) {
        throw FormatError(std::string("bad frame document: ") + ex.what());
    }
    return f;
}

}  // namespace bfmn
