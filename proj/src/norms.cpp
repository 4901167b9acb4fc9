#include "modlab/norms.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace modlab {

namespace {

// Neumaier-compensated accumulator; band sums mix very different magnitudes
// and the report must re-aggregate to 1e-12.
struct KahanSum {
    double s = 0, c = 0;
    void add(double x) {
        double t = s + x;
        if (std::abs(s) >= std::abs(x)) {
            c += (s - t) + x;
        } else {
            c += (x - t) + s;
        }
        s = t;
    }
    double get() const { return s + c; }
};

double pow_abs(double a, double e) {
    if (e == 1.0) return a;
    if (e == 2.0) return a * a;
    return std::pow(a, e);
}

/// Riemann p-norm of a raw value buffer with cell weight `cell`.
double lp_of_values(const std::vector<Complex>& values, double cell, const ExtendedExponent& p) {
    if (p.is_infinite()) {
        double m = 0;
        for (const auto& v : values) m = std::max(m, std::abs(v));
        return m;
    }
    const double pd = 1.0 / p.reciprocal().to_double();
    KahanSum sum;
    for (const auto& v : values) {
        double a = std::abs(v);
        if (a != 0) sum.add(pow_abs(a, pd));
    }
    return std::pow(sum.get() * cell, 1.0 / pd);
}

double bracket_weight(const LatticePoint& k, int n, double s) {
    // <k>^s with <k> = (1 + |k|^2)^{1/2}
    double k2 = static_cast<double>(k[0]) * k[0];
    if (n > 1) k2 += static_cast<double>(k[1]) * k[1];
    return std::pow(1.0 + k2, s / 2);
}

/// Weighted l^q aggregation of (weight_i * contribution_i).
double aggregate_lq(std::span<const double> weighted, const ExtendedExponent& q) {
    if (q.is_infinite()) {
        double m = 0;
        for (double w : weighted) m = std::max(m, w);
        return m;
    }
    const double qd = 1.0 / q.reciprocal().to_double();
    KahanSum sum;
    for (double w : weighted) {
        if (w != 0) sum.add(pow_abs(w, qd));
    }
    return std::pow(sum.get(), 1.0 / qd);
}

struct IndexBox {
    int lo0 = 0, hi0 = -1, lo1 = 0, hi1 = -1;  // inclusive; empty when hi < lo
    bool empty() const { return hi0 < lo0 || hi1 < lo1; }
};

/// Bounding box (in frequency index m per axis) of the nonzero coefficients.
IndexBox nonzero_box(const Spectrum& F) {
    const int N = F.spec().N;
    IndexBox box;
    box.lo0 = N;
    box.hi0 = -N;
    box.lo1 = F.spec().n == 1 ? 0 : N;
    box.hi1 = F.spec().n == 1 ? 0 : -N;
    bool any = false;
    for (std::size_t i = 0; i < F.coeffs().size(); ++i) {
        if (F.coeffs()[i] == Complex(0, 0)) continue;
        any = true;
        int m0, m1 = 0;
        if (F.spec().n == 1) {
            m0 = static_cast<int>(i) - N / 2;
        } else {
            m0 = static_cast<int>(i) / N - N / 2;
            m1 = static_cast<int>(i) % N - N / 2;
            box.lo1 = std::min(box.lo1, m1);
            box.hi1 = std::max(box.hi1, m1);
        }
        box.lo0 = std::min(box.lo0, m0);
        box.hi0 = std::max(box.hi0, m0);
    }
    if (!any) return IndexBox{};  // empty
    return box;
}

struct BandIndexRange {
    int lo, hi;  // frequency index range under supp phi(. - k), clipped
};

BandIndexRange band_axis_range(const GridSpec& spec, int kc) {
    BandIndexRange r;
    if (spec.lattice_scale > 0) {
        r.lo = (kc - 1) * spec.lattice_scale;
        r.hi = (kc + 1) * spec.lattice_scale;
    } else {
        r.lo = static_cast<int>(std::ceil((kc - 1) / spec.dxi()));
        r.hi = static_cast<int>(std::floor((kc + 1) / spec.dxi()));
    }
    r.lo = std::max(r.lo, -spec.N / 2);
    r.hi = std::min(r.hi, spec.N / 2 - 1);
    return r;
}

inline double window_factor(const GridSpec& spec, const Window& w, int m, int kc) {
    double t = spec.lattice_scale > 0
                   ? static_cast<double>(m - kc * spec.lattice_scale) / spec.lattice_scale
                   : spec.freq(m) - kc;
    return w.profile1(t);
}

inline int fft_index(int m, int N) { return m >= 0 ? m : m + N; }
inline double parity_sign(int m) { return (m % 2) != 0 ? -1.0 : 1.0; }

/// Writes the spatial band function phi(D - k) f into `buffer` (natural
/// sample order), reusing the buffer across bands.
void band_values(const Spectrum& F, const Window& w, const LatticePoint& k,
                 std::vector<Complex>& buffer) {
    const GridSpec& spec = F.spec();
    const int N = spec.N;
    buffer.assign(spec.size(), Complex(0, 0));
    if (spec.n == 1) {
        auto r = band_axis_range(spec, k[0]);
        for (int m = r.lo; m <= r.hi; ++m) {
            double f = window_factor(spec, w, m, k[0]);
            if (f == 0) continue;
            buffer[fft_index(m, N)] = parity_sign(m) * f * F.coeffs()[m + N / 2];
        }
    } else {
        auto r0 = band_axis_range(spec, k[0]);
        auto r1 = band_axis_range(spec, k[1]);
        for (int m0 = r0.lo; m0 <= r0.hi; ++m0) {
            double f0 = window_factor(spec, w, m0, k[0]);
            if (f0 == 0) continue;
            for (int m1 = r1.lo; m1 <= r1.hi; ++m1) {
                double f = f0 * window_factor(spec, w, m1, k[1]);
                if (f == 0) continue;
                buffer[static_cast<std::size_t>(fft_index(m0, N)) * N + fft_index(m1, N)] =
                    parity_sign(m0 + m1) * f * F.coeffs()[static_cast<std::size_t>(m0 + N / 2) * N +
                                                          (m1 + N / 2)];
            }
        }
    }
    detail::fft_axes(buffer, spec, +1);
    const double scale = spec.n == 1 ? 1.0 / spec.L : 1.0 / (spec.L * spec.L);
    for (auto& v : buffer) v *= scale;
}

/// All lattice points k whose band index range intersects the nonzero
/// coefficient box, in lexicographic order; `coverage_radius` is the
/// sup-norm radius that covers every such band.
std::vector<LatticePoint> contributing_bands(const Spectrum& F, const IndexBox& box,
                                             std::optional<int> radius_limit,
                                             int& coverage_radius) {
    const GridSpec& spec = F.spec();
    std::vector<LatticePoint> ks;
    coverage_radius = 0;
    if (box.empty()) return ks;

    auto axis_candidates = [&](int lo_m, int hi_m, std::vector<int>& out) {
        int klo = static_cast<int>(std::floor(spec.freq(lo_m))) - 1;
        int khi = static_cast<int>(std::ceil(spec.freq(hi_m))) + 1;
        for (int k = klo; k <= khi; ++k) {
            auto r = band_axis_range(spec, k);
            if (r.hi < lo_m || r.lo > hi_m) continue;  // no index overlap
            out.push_back(k);
        }
    };
    std::vector<int> k0s, k1s;
    axis_candidates(box.lo0, box.hi0, k0s);
    if (spec.n == 2) axis_candidates(box.lo1, box.hi1, k1s);

    for (int c : k0s) coverage_radius = std::max(coverage_radius, std::abs(c));
    for (int c : k1s) coverage_radius = std::max(coverage_radius, std::abs(c));

    auto admit = [&](int c) { return !radius_limit || std::abs(c) <= *radius_limit; };
    for (int k0 : k0s) {
        if (!admit(k0)) continue;
        if (spec.n == 1) {
            ks.push_back({k0, 0});
        } else {
            for (int k1 : k1s) {
                if (admit(k1)) ks.push_back({k0, k1});
            }
        }
    }
    return ks;
}

}  // namespace

nlohmann::json NormReport::to_json() const {
    nlohmann::json bands_json = nlohmann::json::array();
    for (const auto& [k, c] : bands) {
        nlohmann::json key = nlohmann::json::array();
        for (int d = 0; d < k_dims; ++d) key.push_back(k[d]);
        bands_json.push_back({{"k", key}, {"contribution", c}});
    }
    return nlohmann::json{{"space", space},
                          {"p", p},
                          {"q", q},
                          {"s", s},
                          {"value", value},
                          {"bands", bands_json},
                          {"truncation_radius", truncation_radius},
                          {"tail_estimate", tail_estimate}};
}

double lp_norm(const SampledFunction& f, const ExtendedExponent& p) {
    const double cell = f.spec().n == 1 ? f.spec().dx() : f.spec().dx() * f.spec().dx();
    return lp_of_values(f.values(), cell, p);
}

double sobolev_norm(const SampledFunction& f, const ExtendedExponent& p, const Smoothness& s) {
    Spectrum F = dft(f);
    require_alias_free(F);
    const double sd = s.to_double();
    Spectrum lifted = apply_symbol(F, [sd](std::span<const double> xi) {
        double r2 = 0;
        for (double t : xi) r2 += t * t;
        return Complex(std::pow(1.0 + r2, sd / 2), 0);
    });
    return lp_norm(idft(lifted), p);
}

NormReport modulation_norm(const SampledFunction& f, const ExtendedExponent& p,
                           const ExtendedExponent& q, const Smoothness& s, const Window& w,
                           std::optional<int> truncation_radius) {
    Spectrum F = dft(f);
    require_alias_free(F);
    return modulation_norm(F, p, q, s, w, truncation_radius);
}

NormReport modulation_norm(const Spectrum& F, const ExtendedExponent& p, const ExtendedExponent& q,
                           const Smoothness& s, const Window& w,
                           std::optional<int> truncation_radius) {
    const GridSpec& spec = F.spec();
    NormReport report;
    report.space = "M";
    report.p = p.str();
    report.q = q.str();
    report.s = s.str();
    report.k_dims = spec.n;

    IndexBox box = nonzero_box(F);
    int coverage_radius = 0;
    auto ks = contributing_bands(F, box, truncation_radius, coverage_radius);
    report.truncation_radius = truncation_radius ? *truncation_radius : coverage_radius;

    const double cell = spec.n == 1 ? spec.dx() : spec.dx() * spec.dx();
    const double sd = s.to_double();
    std::vector<Complex> buffer;
    std::vector<double> weighted;
    weighted.reserve(ks.size());
    for (const auto& k : ks) {
        band_values(F, w, k, buffer);
        double contribution = lp_of_values(buffer, cell, p);
        if (contribution == 0) continue;
        report.bands.emplace_back(k, contribution);
        weighted.push_back(bracket_weight(k, spec.n, sd) * contribution);
    }
    report.value = aggregate_lq(weighted, q);

    if (truncation_radius && *truncation_radius < coverage_radius) {
        // residual spectrum not covered by any enumerated band
        std::vector<Complex> residual = F.coeffs();
        for (const auto& k : ks) {
            if (spec.n == 1) {
                auto r = band_axis_range(spec, k[0]);
                for (int m = r.lo; m <= r.hi; ++m) {
                    // subtract the covered fraction once per band
                    residual[m + spec.N / 2] -=
                        F.coeffs()[m + spec.N / 2] * window_factor(spec, w, m, k[0]);
                }
            } else {
                auto r0 = band_axis_range(spec, k[0]);
                auto r1 = band_axis_range(spec, k[1]);
                for (int m0 = r0.lo; m0 <= r0.hi; ++m0) {
                    double f0 = window_factor(spec, w, m0, k[0]);
                    for (int m1 = r1.lo; m1 <= r1.hi; ++m1) {
                        std::size_t idx =
                            static_cast<std::size_t>(m0 + spec.N / 2) * spec.N + (m1 + spec.N / 2);
                        residual[idx] -= F.coeffs()[idx] * f0 * window_factor(spec, w, m1, k[1]);
                    }
                }
            }
        }
        double tail_lp = lp_norm(idft(Spectrum(spec, std::move(residual))), p);
        LatticePoint edge{*truncation_radius + 1, 0};
        report.tail_estimate = bracket_weight(edge, spec.n, sd) * tail_lp;
        if (report.tail_estimate >= 1e-6 * std::max(report.value, 1e-300)) {
            std::ostringstream msg;
            msg << "band truncation radius " << *truncation_radius << " leaves tail "
                << report.tail_estimate << "; radius " << coverage_radius
                << " covers every contributing band";
            throw TruncationError(msg.str(), coverage_radius);
        }
    }
    return report;
}

NormReport besov_norm(const SampledFunction& f, const ExtendedExponent& p,
                      const ExtendedExponent& q, const Smoothness& s, const DyadicWindow& dw) {
    Spectrum F = dft(f);
    require_alias_free(F);
    return besov_norm(F, p, q, s, dw);
}

NormReport besov_norm(const Spectrum& F, const ExtendedExponent& p, const ExtendedExponent& q,
                      const Smoothness& s, const DyadicWindow& dw) {
    const GridSpec& spec = F.spec();
    NormReport report;
    report.space = "B";
    report.p = p.str();
    report.q = q.str();
    report.s = s.str();
    report.k_dims = 1;

    IndexBox box = nonzero_box(F);
    double max_abs_xi = 0;
    if (!(box.hi0 < box.lo0)) {
        max_abs_xi = std::max(std::abs(spec.freq(box.lo0)), std::abs(spec.freq(box.hi0)));
        if (spec.n == 2) {
            double a1 = std::max(std::abs(spec.freq(box.lo1)), std::abs(spec.freq(box.hi1)));
            max_abs_xi = std::hypot(max_abs_xi, a1);
        }
    }
    // last level whose band {2^{j-1} <= |xi| <= 2^{j+1}} can meet the spectrum
    int levels = 0;
    while (max_abs_xi > 0 && std::ldexp(1.0, levels - 1) <= max_abs_xi) ++levels;
    report.truncation_radius = levels;

    const double cell = spec.n == 1 ? spec.dx() : spec.dx() * spec.dx();
    const double sd = s.to_double();
    std::vector<double> weighted;
    for (int j = 0; j <= levels; ++j) {
        if (max_abs_xi == 0) break;
        Spectrum piece = dyadic_project(F, j, dw);
        double contribution = lp_norm(idft(piece), p);
        if (contribution == 0) continue;
        report.bands.emplace_back(LatticePoint{j, 0}, contribution);
        weighted.push_back(std::pow(2.0, j * sd) * contribution);
    }
    report.value = aggregate_lq(weighted, q);
    return report;
}

BandNormTable band_lp_norms(const Spectrum& F, const Window& w,
                            std::span<const ExtendedExponent> ps) {
    const GridSpec& spec = F.spec();
    BandNormTable table;
    IndexBox box = nonzero_box(F);
    int coverage_radius = 0;
    table.ks = contributing_bands(F, box, std::nullopt, coverage_radius);
    table.norms.assign(ps.size(), {});
    for (auto& row : table.norms) row.reserve(table.ks.size());
    const double cell = spec.n == 1 ? spec.dx() : spec.dx() * spec.dx();
    std::vector<Complex> buffer;
    for (const auto& k : table.ks) {
        band_values(F, w, k, buffer);
        for (std::size_t pi = 0; pi < ps.size(); ++pi) {
            table.norms[pi].push_back(lp_of_values(buffer, cell, ps[pi]));
        }
    }
    return table;
}

double aggregate_modulation(const BandNormTable& table, std::size_t p_index,
                            const ExtendedExponent& q, const Smoothness& s, int n) {
    const double sd = s.to_double();
    std::vector<double> weighted;
    weighted.reserve(table.ks.size());
    for (std::size_t i = 0; i < table.ks.size(); ++i) {
        double c = table.norms[p_index][i];
        if (c != 0) weighted.push_back(bracket_weight(table.ks[i], n, sd) * c);
    }
    return aggregate_lq(weighted, q);
}

}  // namespace modlab
