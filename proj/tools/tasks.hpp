#pragma once

// Task execution behind the command-line tool. Reports are ordered JSON so
// that output is byte-identical across runs.

#include "factorlab/corpus_documents.hpp"

namespace factorlab::cli {

using io::json;
using io::ojson;

enum Exit : int { Pass = 0, Fail = 1, Inconclusive = 2, InputFailure = 3 };

struct TaskOptions {
    std::optional<unsigned> order;
    std::optional<unsigned> degree_cap;
    std::optional<std::string> q;
    bool extend = false;
    bool timing = false;
};

struct TaskResult {
    ojson report;
    int exit_code = Pass;
};

/// task is one of check-twist, check-deformation, obstruction, cohomology.
TaskResult run_task(const std::string& task, const json& doc, const TaskOptions& opts);

/// Every expectation of every corpus entry; exit 0 when all match.
TaskResult run_corpus(const TaskOptions& opts);

std::string render_human(const ojson& report);

} // namespace factorlab::cli
