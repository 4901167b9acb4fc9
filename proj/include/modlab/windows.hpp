#pragma once

#include <span>

#include "modlab/grid.hpp"

namespace modlab {

/// Frequency window generating the uniform (modulation) decomposition.
///
/// Both kinds are exact partitions of unity over integer translates with
/// support exactly [-1,1]^n: the tensor hat, and a C^2 smoothed hat built
/// from the quintic blend S(t) = 6t^5 - 15t^4 + 10t^3 (which satisfies
/// S(t) + S(1-t) = 1, so the translates still sum to one exactly).
class Window {
public:
    enum class Kind { Hat, SmoothedHat };

    explicit Window(Kind kind = Kind::Hat) : kind_(kind) {}

    Kind kind() const { return kind_; }
    const char* name() const { return kind_ == Kind::Hat ? "hat" : "smoothed-hat"; }

    /// One-dimensional factor, supported on [-1, 1].
    double profile1(double t) const;

    /// Tensor profile over up to two axes.
    double profile(std::span<const double> xi) const {
        double v = 1;
        for (double t : xi) v *= profile1(t);
        return v;
    }

    /// max_t |sum_k profile1(t - k) - 1| over one period, sampled.
    double partition_defect(int samples = 4096) const;

private:
    Kind kind_;
};

/// Radial dyadic windows: theta is a C^2 cutoff equal to 1 on [0,1] and 0 on
/// [2,inf); psi0 = theta(|xi|) and psi(xi) = theta(|xi|) - theta(2|xi|), so
/// psi is supported in {1/2 <= |xi| <= 2} and
/// psi0 + sum_{j>=1} psi(./2^j) telescopes to theta(|xi|/2^J) = 1 on |xi| <= 2^J.
class DyadicWindow {
public:
    double theta(double r) const;

    /// psi_j: j = 0 gives psi0, j >= 1 gives psi(xi / 2^j).
    double value(int j, std::span<const double> xi) const;

    /// max over sampled radii in [0, max_radius] of |sum_{j<=levels} psi_j - 1|.
    double partition_defect(double max_radius, int levels, int samples = 4096) const;
};

/// Multiply by phi(. - k); result supported in k + [-1,1]^n. Uses exact
/// index arithmetic on integer-frequency grids.
Spectrum band_project(const Spectrum& F, const LatticePoint& k, const Window& w);

/// Multiply by psi_j; errors when the band lies entirely beyond the lattice.
Spectrum dyadic_project(const Spectrum& F, int j, const DyadicWindow& dw);

}  // namespace modlab
