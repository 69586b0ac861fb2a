#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ola/hypothesis.hpp"

namespace ola {

/// One time step of a run. Exactly one of `queried` / `predicted` is set.
struct StepRecord {
    bool queried = false;
    std::optional<Label> predicted;
    Label y_true = 0;
    Label y_bayes = 0;
    std::uint32_t epoch = 0;
};

/// Per-step history of a run; step t (1-based) is steps[t - 1].
struct RunTrace {
    std::vector<StepRecord> steps;
    std::uint64_t seed = 0;
    std::string fingerprint;

    [[nodiscard]] std::size_t size() const { return steps.size(); }
};

}  // namespace ola
