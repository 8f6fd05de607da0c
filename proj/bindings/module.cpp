#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bfmn/affect.hpp"
#include "bfmn/corpus_io.hpp"
#include "bfmn/graph_io.hpp"
#include "bfmn/metrics.hpp"
#include "bfmn/network.hpp"
#include "bfmn/normalize.hpp"
#include "bfmn/probe.hpp"
#include "bfmn/report.hpp"
#include "bfmn/stemmer.hpp"
#include "bfmn/valence.hpp"

namespace py = pybind11;

namespace {

py::dict label_to_dict(const bfmn::LabelResult& r) {
    py::dict d;
    d["stem"] = r.stem;
    d["label"] = bfmn::to_string(r.label);
    d["h"] = r.h_statistic;
    d["p"] = r.p_value;
    d["direction"] = r.direction;
    d["n"] = r.n;
    return d;
}

py::dict metrics_to_dict(const bfmn::FrameMetrics& m) {
    py::dict d;
    d["cue"] = m.cue;
    d["frame_size"] = m.frame_size;
    d["estimated_valence"] = m.estimated_valence;
    d["valence_se"] = m.valence_se;
    d["cue_label"] = bfmn::to_string(m.cue_label);
    d["frame_aura"] = bfmn::to_string(m.frame_aura);
    d["fractions"] = py::make_tuple(m.frac_positive, m.frac_neutral, m.frac_negative);
    d["non_emotional_fraction"] = m.non_emotional_fraction;
    d["non_emotional_fractions"] =
        py::make_tuple(m.ne_frac_positive, m.ne_frac_neutral, m.ne_frac_negative);
    d["weighted"] = m.weighted;
    return d;
}

}  // namespace

PYBIND11_MODULE(_bfmn, m) {
    m.doc() = "behavioral forma mentis networks toolkit";

    // prompts and reply parsing
    m.def("render_association_prompt",
          [](const std::string& cue) {
              return bfmn::render_association_prompt(bfmn::CueWord(cue));
          },
          py::arg("cue"));
    m.def("render_cue_rating_prompt",
          [](const std::string& cue) {
              return bfmn::render_cue_rating_prompt(bfmn::CueWord(cue));
          },
          py::arg("cue"));
    m.def("parse_association_reply",
          [](const std::string& raw, const std::string& cue) {
              bfmn::ParsedReply reply =
                  bfmn::parse_association_reply(raw, bfmn::CueWord(cue));
              if (!reply.ok()) throw py::value_error(reply.failure);
              std::vector<std::pair<std::string, int>> out;
              for (const bfmn::ScoredAssociate& a : reply.items)
                  out.emplace_back(a.token, a.score.value());
              return out;
          },
          py::arg("raw"), py::arg("cue"));

    // normalization
    m.def("clean_token", &bfmn::clean_token, py::arg("raw"));
    m.def("stem", &bfmn::stem, py::arg("token"));
    py::class_<bfmn::Wordlist>(m, "Wordlist")
        .def_static("load", &bfmn::Wordlist::load, py::arg("path"))
        .def_static("from_words", &bfmn::Wordlist::from_words, py::arg("words"))
        .def("contains", &bfmn::Wordlist::contains, py::arg("word"))
        .def("__len__", &bfmn::Wordlist::size);
    m.def("spell_correct", &bfmn::spell_correct, py::arg("token"), py::arg("wordlist"));

    // rank statistics
    m.def("kruskal_wallis",
          [](const std::vector<int>& a, const std::vector<int>& b) {
              bfmn::KruskalWallisResult r = bfmn::kruskal_wallis(a, b);
              return py::make_tuple(r.h, r.p);
          },
          py::arg("group_a"), py::arg("group_b"));
    m.def("pearson_skewness", &bfmn::pearson_skewness, py::arg("sample"));
    m.def("chi2_sf_df1", &bfmn::chi2_sf_df1, py::arg("x"));
    m.def("label_scores",
          [](const std::vector<int>& sample, const std::vector<int>& pooled, double alpha,
             const std::string& pooling) {
              bfmn::SignificanceConfig cfg;
              cfg.alpha = alpha;
              cfg.pooling = pooling == "full" ? bfmn::SignificanceConfig::Pooling::Full
                                              : bfmn::SignificanceConfig::Pooling::Complement;
              return label_to_dict(bfmn::label_stem({"sample", sample}, pooled, cfg));
          },
          py::arg("sample"), py::arg("pooled"), py::arg("alpha") = 0.1,
          py::arg("pooling") = "complement");

    // circumplex
    m.def("quadrant",
          [](double valence, double arousal) {
              return bfmn::to_string(bfmn::quadrant(valence, arousal));
          },
          py::arg("valence"), py::arg("arousal"));
    m.def("kde_density",
          [](const std::vector<std::tuple<double, double, double>>& points, std::size_t grid,
             std::optional<std::pair<double, double>> bandwidth) {
              std::vector<bfmn::CircumplexPoint> pts;
              for (const auto& [v, a, w] : points) pts.push_back({"", v, a, w});
              bfmn::DensityGrid g = bfmn::kde_density(pts, grid, bandwidth);
              std::vector<std::vector<double>> rows(g.n, std::vector<double>(g.n));
              for (std::size_t iy = 0; iy < g.n; ++iy)
                  for (std::size_t ix = 0; ix < g.n; ++ix) rows[iy][ix] = g.at(ix, iy);
              return py::make_tuple(rows, py::make_tuple(g.bandwidth_x, g.bandwidth_y));
          },
          py::arg("points"), py::arg("grid") = 100, py::arg("bandwidth") = std::nullopt);

    // file-level pipeline helpers
    m.def("label_corpus_file",
          [](const std::string& corpus_path, double alpha, const std::string& pooling) {
              bfmn::SignificanceConfig cfg;
              cfg.alpha = alpha;
              cfg.pooling = pooling == "full" ? bfmn::SignificanceConfig::Pooling::Full
                                              : bfmn::SignificanceConfig::Pooling::Complement;
              bfmn::LabeledLexicon lex =
                  bfmn::label_corpus(bfmn::load_corpus(corpus_path), cfg);
              py::dict out;
              for (const auto& [stem_text, r] : lex.by_stem)
                  out[py::str(stem_text)] = label_to_dict(r);
              return out;
          },
          py::arg("corpus_path"), py::arg("alpha") = 0.1, py::arg("pooling") = "complement");
    m.def("analyze_frame",
          [](const std::string& corpus_path, const std::string& cue,
             const std::string& wordlist_path, const std::string& emolex_path, double alpha,
             bool weighted) {
              bfmn::Corpus corpus = bfmn::load_corpus(corpus_path);
              bfmn::Wordlist wordlist = wordlist_path.empty()
                                            ? bfmn::Wordlist::from_words({})
                                            : bfmn::Wordlist::load(wordlist_path);
              auto [normalized, report] = bfmn::normalize_corpus(corpus, wordlist);
              bfmn::SignificanceConfig cfg;
              cfg.alpha = alpha;
              bfmn::LabeledLexicon lexicon = bfmn::label_corpus(normalized, cfg);
              bfmn::Bfmn graph = bfmn::build_bfmn(normalized, lexicon);
              bfmn::SemanticFrame f = bfmn::frame(graph, bfmn::CueWord(cue));
              bfmn::EmotionLexicon emolex = emolex_path.empty()
                                                ? bfmn::EmotionLexicon::from_flags({})
                                                : bfmn::EmotionLexicon::load(emolex_path);
              return metrics_to_dict(bfmn::frame_metrics(f, emolex, weighted));
          },
          py::arg("corpus_path"), py::arg("cue"), py::arg("wordlist_path") = "",
          py::arg("emolex_path") = "", py::arg("alpha") = 0.1, py::arg("weighted") = false);
    m.def("render_star_svg_file",
          [](const std::string& frame_path) {
              return bfmn::render_star_svg(
                  bfmn::frame_from_string(bfmn::read_text_file(frame_path)));
          },
          py::arg("frame_path"));

    py::register_exception<bfmn::Error>(m, "BfmnError");
}
