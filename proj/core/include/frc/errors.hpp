#pragma once

#include <stdexcept>
#include <string>

namespace frc {

// Thrown when an integral fails to converge within the subdivision budget.
// This typically signals a genuinely divergent integrand -- for instance a
// Fisher integral that does not exist for the requested parameters -- rather
// than a tolerance problem, so callers should treat it as "the quantity does
// not exist", not retry with looser tolerances.
//
// Parameter-domain violations throw std::domain_error and inverse-function
// range violations throw std::range_error throughout the library.
class divergence_error : public std::runtime_error {
public:
    explicit divergence_error(const std::string& what_arg)
        : std::runtime_error(what_arg) {}
};

}  // namespace frc
