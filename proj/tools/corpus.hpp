#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace mimostab::cli {

/// One built-in corpus item: a system description (optionally a pair) plus
/// the recorded expectations its analyses are diffed against. Expectations
/// are data, not code, so the suite is auditable and overridable from disk.
struct CorpusItem {
    std::string name;
    nlohmann::ordered_json doc;  // {system, second_system?, checks: [...]}
};

/// The built-in corpus.
const std::vector<CorpusItem>& paper_corpus();

/// Load corpus items from a directory of *.json files (overrides built-in).
std::vector<CorpusItem> load_corpus_dir(const std::string& dir);

/// Write the built-in corpus out as one JSON file per item.
void dump_corpus(const std::string& dir);

} // namespace mimostab::cli
