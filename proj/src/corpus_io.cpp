#include "bfmn/corpus_io.hpp"

#include <fstream>
#include <sstream>

namespace bfmn {

using nlohmann::json;

nlohmann::json corpus_to_json(const Corpus& corpus) {
    json j;
    json metadata;
    metadata["model_id"] = corpus.metadata.model_id;
    metadata["temperature"] = corpus.metadata.temperature;
    metadata["created"] = corpus.metadata.created;
    metadata["normalized"] = corpus.metadata.normalized;
    metadata["seed"] = corpus.metadata.seed;
    j["metadata"] = metadata;

    json ratings = json::array();
    for (const CueRating& r : corpus.cue_ratings)
        ratings.push_back({{"cue", r.cue.str()}, {"score", r.score.value()}});
    j["cue_ratings"] = ratings;

    json records = json::array();
    for (const ResponseRecord& rec : corpus.records) {
        json associates = json::array();
        for (const ScoredAssociate& a : rec.associates)
            associates.push_back(json::array({a.token, a.score.value()}));
        records.push_back({{"cue", rec.cue.str()},
                           {"associates", associates},
                           {"raw_reply", rec.raw_reply},
                           {"model_id", rec.model_id},
                           {"sequence", rec.sequence},
                           {"timestamp", rec.timestamp}});
    }
    j["records"] = records;

    json display = json::object();
    for (const auto& [stem_text, form] : corpus.display_forms) display[stem_text] = form;
    j["display_forms"] = display;
    return j;
}

Corpus corpus_from_json(const json& j) {
    Corpus corpus;
    try {
        const json& metadata = j.at("metadata");
        corpus.metadata.model_id = metadata.value("model_id", "");
        corpus.metadata.temperature = metadata.value("temperature", 0.7);
        corpus.metadata.created = metadata.value("created", "");
        corpus.metadata.normalized = metadata.value("normalized", false);
        corpus.metadata.seed = metadata.value("seed", std::uint64_t{0});

        for (const json& r : j.value("cue_ratings", json::array()))
            corpus.cue_ratings.push_back(
                CueRating{CueWord(r.at("cue").get<std::string>()),
                          ValenceScore(r.at("score").get<int>())});

        for (const json& r : j.value("records", json::array())) {
            const json& assoc = r.at("associates");
            if (!assoc.is_array() || assoc.size() != 3)
                throw FormatError("record must have exactly three associates");
            auto pair = [&assoc](std::size_t i) {
                return ScoredAssociate{assoc.at(i).at(0).get<std::string>(),
                                       ValenceScore(assoc.at(i).at(1).get<int>())};
            };
            corpus.records.push_back(ResponseRecord{
                CueWord(r.at("cue").get<std::string>()),
                {pair(0), pair(1), pair(2)},
                r.value("raw_reply", ""),
                r.value("model_id", ""),
                r.value("sequence", std::uint64_t{0}),
                r.value("timestamp", ""),
            });
        }
        for (const auto& [stem_text, form] : j.value("display_forms", json::object()).items())
            corpus.display_forms[stem_text] = form.get<std::string>();
    } catch (const json::exception& ex) {
        throw FormatError(std::string("bad corpus document: ") + ex.what());
    }
    return corpus;
}

std::string corpus_to_string(const Corpus& corpus) {
    return corpus_to_json(corpus).dump(2) + "\n";
}

void save_corpus(const Corpus& corpus, const std::string& path) {
    write_text_file(path, corpus_to_string(corpus));
}

Corpus load_corpus(const std::string& path) {
    const std::string text = read_text_file(path);
    try {
        return corpus_from_json(json::parse(text));
    } catch (const json::exception& ex) {
        throw FormatError("cannot parse corpus '" + path + "': " + ex.what());
    }
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FileError("cannot open file: " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FileError("cannot write file: " + path);
    out << content;
    if (!out) throw FileError("failed writing file: " + path);
}

}  // namespace bfmn
