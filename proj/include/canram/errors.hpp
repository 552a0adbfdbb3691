#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace canram {

// Malformed or out-of-contract input (bad JSON, kind mismatch, range errors).
class input_error : public std::runtime_error {
public:
    explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

// A configured resource cap was hit before the computation finished.
// Distinct from a negative verdict: the question is left unanswered.
class budget_exceeded : public std::runtime_error {
public:
    budget_exceeded(const std::string& what, std::uint64_t reached)
        : std::runtime_error(what), count_reached(reached) {}
    std::uint64_t count_reached;
};

// A postcondition that should hold by construction failed at runtime.
class internal_inconsistency : public std::runtime_error {
public:
    explicit internal_inconsistency(const std::string& what) : std::runtime_error(what) {}
};

} // namespace canram
