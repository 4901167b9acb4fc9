#pragma once

#include <stdexcept>
#include <string>

namespace modlab {

/// Spectral mass beyond the guarded Nyquist range; carries the offending
/// fraction and, for dilation checks, the largest admissible scale.
class AliasingError : public std::runtime_error {
public:
    AliasingError(const std::string& what, double fraction, double max_lambda = 0)
        : std::runtime_error(what), fraction_(fraction), max_lambda_(max_lambda) {}
    double fraction() const { return fraction_; }
    double max_admissible_lambda() const { return max_lambda_; }

private:
    double fraction_;
    double max_lambda_;
};

/// Band truncation left too much norm mass uncovered; suggests the radius
/// that would cover every contributing band.
class TruncationError : public std::runtime_error {
public:
    TruncationError(const std::string& what, int suggested_radius)
        : std::runtime_error(what), suggested_radius_(suggested_radius) {}
    int suggested_radius() const { return suggested_radius_; }

private:
    int suggested_radius_;
};

}  // namespace modlab
