#pragma once

// Corpus entries as input documents, with their expected verdicts.

#include "factorlab/document.hpp"

namespace factorlab::io {

struct CorpusEntry {
    std::string id;
    std::string description;
    ojson document;
};

/// All entries in a fixed order.
const std::vector<CorpusEntry>& corpus_entries();

/// Throws InputError for an unknown id.
const CorpusEntry& corpus_entry(const std::string& id);

} // namespace factorlab::io
