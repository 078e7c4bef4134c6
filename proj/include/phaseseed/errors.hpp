#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace phaseseed {

/// Invalid argument or non-finite value passed to a numerical routine.
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Inconsistent run or drive configuration (overlapping windows, bad duty, ...).
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Primary and secondary series that do not share the same time grid.
class AlignmentError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A state variable became non-finite during integration.
class IntegrationBlowup : public std::runtime_error {
public:
    IntegrationBlowup(std::string quantity, std::size_t step_index)
        : std::runtime_error("integration blowup: " + quantity +
                             " is not finite at step " +
                             std::to_string(step_index)),
          quantity_(std::move(quantity)),
          step_index_(step_index) {}

    const std::string& quantity() const noexcept { return quantity_; }
    std::size_t step_index() const noexcept { return step_index_; }

private:
    std::string quantity_;
    std::size_t step_index_;
};

}  // namespace phaseseed
