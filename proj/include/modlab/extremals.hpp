#pragma once

#include <map>

#include <json.hpp>

#include "modlab/exponents.hpp"
#include "modlab/grid.hpp"

namespace modlab {

/// Finitely supported coefficient sequence {c_k}, k in Z^n.
class LatticeCoefficients {
public:
    explicit LatticeCoefficients(int dim = 1);

    int dim() const { return dim_; }
    bool empty() const { return entries_.empty(); }
    std::size_t count() const { return entries_.size(); }

    /// Setting a zero value erases the entry, keeping the support finite and
    /// explicit.
    void set(const LatticePoint& k, Complex value);
    Complex at(const LatticePoint& k) const;
    bool has(const LatticePoint& k) const { return entries_.count(k) != 0; }

    const std::map<LatticePoint, Complex>& entries() const { return entries_; }

    /// max euclidean |k| over the support (0 when empty).
    double radius() const;
    /// max |k_i| over the support.
    int radius_sup() const;

    /// ||{c_k}||_{l^p}.
    double lp_mass(const ExtendedExponent& p) const;

    nlohmann::json to_json() const;
    static LatticeCoefficients from_json(const nlohmann::json& j);

private:
    int dim_;
    std::map<LatticePoint, Complex> entries_;
};

/// Spatial bump profiles used by the extremal constructions, all piecewise
/// polynomial with exact support boxes. The scaled-bump profile additionally
/// records the measured lower bound of |ahat| on |xi| <= 2, which the
/// annular estimates require to be positive.
class BumpProfile {
public:
    enum class Role { Eta, ScaledBump, PsiPlateau };

    /// supp eta = [-1/2, 1/2]^n, C^2, eta(0) = 1.
    static BumpProfile eta();
    /// supp a = [-delta/8, delta/8]^n, ||a||_inf <= 1, |ahat| >= C > 0 on |xi| <= 2.
    static BumpProfile bump_a(double delta = 0.5);
    /// Psi = 1 on [-delta/4, delta/4]^n, supp in [-3 delta/8, 3 delta/8]^n.
    static BumpProfile psi_plateau(double delta = 0.5);

    Role role() const { return role_; }
    double support_halfwidth() const { return support_half_; }
    double plateau_halfwidth() const { return plateau_half_; }
    /// min |profile-hat| over the frequency box the construction relies on
    /// (one axis factor; measured by quadrature when the profile is built).
    double spectral_floor() const { return spectral_floor_; }

    /// One axis factor of the tensor profile.
    double profile1(double t) const;
    double operator()(std::span<const double> x) const;

private:
    BumpProfile(Role role, double support_half, double plateau_half);

    Role role_;
    double support_half_;
    double plateau_half_;
    double spectral_floor_ = 0;
};

/// f(x) = sum_l c_l e^{i l.x} eta(x - l); translates have disjoint supports.
SampledFunction gabor_lattice(const LatticeCoefficients& c, const BumpProfile& eta,
                              const GridSpec& spec);

/// f(x) = sum_{l != 0} c_l |l|^{n/p} a(|l|(x - l)), the L^p-normalized bump train.
SampledFunction scaled_bumps(const LatticeCoefficients& c, const BumpProfile& a,
                             const ExtendedExponent& p, const GridSpec& spec);

/// c_k = |k|^{-n/p} (log|k|)^{-(1+eps)/p} for n_start <= |k| <= radius, else 0.
LatticeCoefficients critical_sequence(const ExtendedExponent& p, double eps, int n_start,
                                      int radius, int dim = 1);

/// Radial profile of ghat: 1 on {2^{-1/2} < |xi| < 2^{1/2}}, support in
/// {2^{-1} < |xi| < 2}, C^2 blends in between.
double annulus_profile(double r);

/// Spectrum of U_lambda g on the grid: lambda^{-n} ghat(xi / lambda).
Spectrum annulus_spectrum(const GridSpec& spec, double lambda = 1.0);

/// g itself on the grid.
SampledFunction annulus_function(const GridSpec& spec);

/// U_lambda f(x) = f(lambda x), lambda >= 1, resampled on the same grid by
/// trigonometric interpolation; errors with the largest admissible lambda
/// when the dilated spectrum would breach the Nyquist guard.
SampledFunction dilate(const SampledFunction& f, double lambda);

}  // namespace modlab
