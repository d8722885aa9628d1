#pragma once

// Pass/fail verdicts carrying a witness.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace factorlab {

struct Witness {
    /// Formatted basis inputs in argument order.
    std::vector<std::string> inputs;
    std::string lhs;
    std::string rhs;
    /// Lowest power of t at which the two sides differ (deformed checks).
    std::optional<unsigned> order;
};

struct CheckReport {
    std::string check;
    bool pass = true;
    std::size_t tuples_checked = 0;
    /// Which identity failed (e.g. "associativity", "twist-product-A").
    std::string failed;
    std::optional<Witness> witness;

    /// Keeps the earliest-order failure seen so far.
    void record_failure(std::string identity, Witness w)
    {
        const bool better = pass || !witness ||
                            (w.order && (!witness->order || *w.order < *witness->order));
        pass = false;
        if (better) {
            failed = std::move(identity);
            witness = std::move(w);
        }
    }

    void merge(const CheckReport& other)
    {
        tuples_checked += other.tuples_checked;
        if (!other.pass)
            record_failure(other.failed, *other.witness);
    }
};

} // namespace factorlab
