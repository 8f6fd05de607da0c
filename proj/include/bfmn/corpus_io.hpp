#pragma once

#include <string>

#include "bfmn/types.hpp"

#include <json.hpp>

namespace bfmn {

nlohmann::json corpus_to_json(const Corpus& corpus);
Corpus corpus_from_json(const nlohmann::json& j);

// Canonical serialization: sorted keys, two-space indent, trailing newline.
// Identical corpora serialize to identical bytes.
std::string corpus_to_string(const Corpus& corpus);

void save_corpus(const Corpus& corpus, const std::string& path);
Corpus load_corpus(const std::string& path);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace bfmn
