#pragma once

#include <cstdint>
#include <map>
#include <optional>

#include "modlab/extremals.hpp"
#include "modlab/norms.hpp"
#include "modlab/verdicts.hpp"

namespace modlab {

inline constexpr std::uint64_t kDefaultSeed = 12345;
/// Margin added to the exact [n mu2, n mu1] bracket when judging fitted
/// dilation slopes.
inline constexpr double kSlopeTolerance = 0.05;
/// Default |slope - predicted| tolerance for multiplier loss fits.
inline constexpr double kMultiplierSlopeTolerance = 0.1;
/// Embedding probes: a holding embedding must keep max/min of the ratio
/// series below this cap; a failing one must grow by at least the factor
/// below at every step of the sweep.
inline constexpr double kBoundedRatioCap = 4.0;
inline constexpr double kMonotoneGrowthFactor = 1.005;

/// Least-squares line through (log lambda, log value).
struct ExponentFit {
    double slope = 0;
    double intercept = 0;
    double residual = 0;  // max relative deviation of value from the fitted power law
    std::vector<double> lambdas;
    std::vector<double> values;

    nlohmann::json to_json() const;
};

ExponentFit fit_exponent(std::span<const std::pair<double, double>> pairs);

/// Measurement vs prediction for one parameter point.
struct ProbeReport {
    std::string probe;
    std::map<std::string, std::string> params;
    double predicted_low = 0;
    double predicted_high = 0;
    std::optional<ExponentFit> fit;
    std::vector<std::pair<double, double>> series;  // (sweep parameter, measured value)
    double measured = 0;
    bool verdict_consistency = false;
    std::uint64_t seed = kDefaultSeed;

    nlohmann::json to_json() const;
};

enum class DilationFamily { Gaussian, Annulus };
enum class ProbeFamily { GaussianDilates, GaborCritical };

const char* family_name(DilationFamily f);
const char* family_name(ProbeFamily f);

/// Spectrum of U_lambda f for the analytic experiment families, evaluated
/// directly on the frequency lattice (no resampling error; coefficients
/// below 1e-18 of the peak are truncated to exact zeros so band enumeration
/// stays proportional to the spectral support).
Spectrum family_spectrum(DilationFamily family, const GridSpec& spec, double lambda);

/// Measures ||U_lambda f||_{M^{p,q}} across the sweep, fits the exponent
/// (first lambda excluded as transient), and checks the fitted slope against
/// [n mu2 - tol, n mu1 + tol].
ProbeReport dilation_experiment(const ExtendedExponent& p, const ExtendedExponent& q,
                                std::span<const double> lambdas, DilationFamily family,
                                std::optional<GridSpec> spec = std::nullopt);

/// Batched form: one band decomposition per lambda serves every (p,q) pair.
std::vector<ProbeReport> dilation_sweep(
    std::span<const std::pair<ExtendedExponent, ExtendedExponent>> pairs,
    std::span<const double> lambdas, DilationFamily family,
    std::optional<GridSpec> spec = std::nullopt);

/// Ratio series ||f||_{L^p_s} / ||f||_{M^{p,q}} over the family sweep,
/// judged against the embeds_M_in_L prediction: bounded ratios when the
/// embedding holds, monotone growth when it fails.
ProbeReport embedding_probe(const ExtendedExponent& p, const ExtendedExponent& q,
                            const Smoothness& s, int n, ProbeFamily family,
                            std::span<const double> sweep = {},
                            std::optional<GridSpec> spec = std::nullopt);

/// Truncated dual norm ||{(1+|k|)^{-sp}}||_{l^{(q/p)'}} over |k| <= radius;
/// requires p < q.
double sequence_oracle_dual_norm(const ExtendedExponent& p, const ExtendedExponent& q,
                                 const Smoothness& s, int n, int radius);

/// LHS/RHS of the annular sequence inequality
///   {sum_k |k|^{(n(1/p-1)+s)q} (sum_{|k|/2<=|l|<=2|k|} |c_l|^p)^{q/p}}^{1/q}
///     <~ (sum |c_k|^p)^{1/p},
/// the q < p obstruction driving the critical-sequence divergence.
double annular_inequality_check(const ExtendedExponent& p, const ExtendedExponent& q,
                                const Smoothness& s, int n, const LatticeCoefficients& c);

/// ||e^{i|lambda D|^alpha} <lambda D>^{-s} g||_{L^p} across lambda for the
/// annulus g, fitted and compared against the stationary-phase exponent
/// alpha n/p - alpha n/2 - s.
ProbeReport multiplier_loss_experiment(const ExtendedExponent& p, const Rational& alpha,
                                       const Smoothness& s, std::span<const double> lambdas,
                                       std::optional<GridSpec> spec = std::nullopt);

/// Lower bound for ||phi(D-k) e^{i|D|^alpha}||_{L^p -> L^p}: max ratio over
/// a library of band-concentrated test functions, monotone in trials.
double band_multiplier_norm_probe(const ExtendedExponent& p, const Rational& alpha, int k,
                                  int trials, std::uint64_t seed = kDefaultSeed,
                                  std::optional<GridSpec> spec = std::nullopt);

/// Divergence signatures are asserted as growth under radius doubling, never
/// as fitted log rates: a divergent series must gain at least this much per
/// doubling, a convergent one must keep its doubling increments under the
/// integral comparison bound.
inline constexpr double kDivergenceStep = 0.01;

/// sequence_oracle_dual_norm over a doubling radius sweep, judged against
/// the critical index s = n(1/p - 1/q).
ProbeReport dual_norm_probe(const ExtendedExponent& p, const ExtendedExponent& q,
                            const Smoothness& s, int n, std::span<const int> radii);

/// annular_inequality_check of the critical sequence over a doubling radius
/// sweep, judged against the critical index s = -n(1/p + 1/q - 1).
ProbeReport annular_growth_probe(const ExtendedExponent& p, const ExtendedExponent& q,
                                 const Smoothness& s, int n, std::span<const int> radii,
                                 double eps = 0.5, int n_start = 3);

}  // namespace modlab
