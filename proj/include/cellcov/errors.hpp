#pragma once

#include <stdexcept>
#include <string>

namespace cellcov {

// A series or iteration hit its term/iteration cap before meeting tolerance.
struct NonConvergence : std::runtime_error {
    explicit NonConvergence(const std::string& what) : std::runtime_error(what) {}
};

// No evaluation strategy applies to the given arguments; callers may fall
// back to an alternative formulation (e.g. outer quadrature in coverage).
struct StrategyUnavailable : std::runtime_error {
    explicit StrategyUnavailable(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace cellcov
