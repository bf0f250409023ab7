#pragma once

#include <stdexcept>
#include <string>

namespace cskct {

/// Averaged quantity requested over an empty distance interval (y_max <= y_min).
class degenerate_interval_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A (gamma, rho, Q0, M) combination whose conditional-mean ordering cannot
/// support a common threshold set.  Carries the first offending threshold index.
class infeasible_design_error : public std::runtime_error {
public:
    infeasible_design_error(std::string what, int threshold_index)
        : std::runtime_error(std::move(what)), threshold_index_(threshold_index) {}

    int threshold_index() const noexcept { return threshold_index_; }

private:
    int threshold_index_;
};

/// Bad key, value, or combination in a config file / CLI flags.
class config_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace cskct
