#pragma once

#include <optional>
#include <utility>

#include <json.hpp>

#include "modlab/exponents.hpp"
#include "modlab/windows.hpp"

namespace modlab {

/// Result of a band-decomposed norm evaluation. `bands` holds the nonzero
/// per-band L^p norms (keyed by the lattice point k for modulation norms,
/// by {j, 0} for Besov norms); `value` is their weighted l^q aggregation.
struct NormReport {
    std::string space;  // "Lp" | "Lps" | "M" | "B"
    std::string p, q, s;
    double value = 0;
    std::vector<std::pair<LatticePoint, double>> bands;  // sorted by key
    int k_dims = 1;                                      // ints emitted per band key
    int truncation_radius = 0;
    double tail_estimate = 0;

    nlohmann::json to_json() const;
};

/// Riemann-sum L^p norm; p = infty is the grid maximum of |f|.
double lp_norm(const SampledFunction& f, const ExtendedExponent& p);

/// ||<D>^s f||_{L^p}; checks the aliasing guard first.
double sobolev_norm(const SampledFunction& f, const ExtendedExponent& p, const Smoothness& s);

/// Modulation norm M^{p,q}_s with the frequency-uniform decomposition of w.
/// With no truncation_radius the band family covers every contributing k and
/// the tail estimate is exactly zero; an explicit radius that leaves more
/// than 1e-6 of the value uncovered raises TruncationError.
NormReport modulation_norm(const SampledFunction& f, const ExtendedExponent& p,
                           const ExtendedExponent& q, const Smoothness& s, const Window& w,
                           std::optional<int> truncation_radius = std::nullopt);
NormReport modulation_norm(const Spectrum& F, const ExtendedExponent& p, const ExtendedExponent& q,
                           const Smoothness& s, const Window& w,
                           std::optional<int> truncation_radius = std::nullopt);

/// Besov norm B^{p,q}_s with the dyadic decomposition of dw.
NormReport besov_norm(const SampledFunction& f, const ExtendedExponent& p,
                      const ExtendedExponent& q, const Smoothness& s, const DyadicWindow& dw);
NormReport besov_norm(const Spectrum& F, const ExtendedExponent& p, const ExtendedExponent& q,
                      const Smoothness& s, const DyadicWindow& dw);

/// Per-band L^p norms for several exponents in one pass over the band
/// family; the dilation experiments sweep (p, q) pairs against a fixed
/// decomposition and would otherwise redo every band transform.
struct BandNormTable {
    std::vector<LatticePoint> ks;
    std::vector<std::vector<double>> norms;  // norms[p_index][band]
};

BandNormTable band_lp_norms(const Spectrum& F, const Window& w,
                            std::span<const ExtendedExponent> ps);

/// Weighted l^q aggregation of a band table column: value of M^{p,q}_s.
double aggregate_modulation(const BandNormTable& table, std::size_t p_index,
                            const ExtendedExponent& q, const Smoothness& s, int n);

}  // namespace modlab
