#include "modlab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace modlab {

namespace {

GridSpec default_dilation_grid() { return GridSpec::with_integer_frequencies(1, 1 << 14, 8); }
GridSpec default_multiplier_grid() { return GridSpec::make(1, 1 << 16, 32768.0); }
GridSpec default_probe_grid() { return GridSpec::make(1, 1 << 14, 256.0); }
GridSpec default_band_probe_grid() { return GridSpec::with_integer_frequencies(1, 1 << 12, 4); }

void validate_lambdas(std::span<const double> lambdas, std::size_t minimum) {
    if (lambdas.size() < minimum) {
        std::ostringstream msg;
        msg << "lambda sweep needs at least " << minimum << " values, got " << lambdas.size();
        throw std::invalid_argument(msg.str());
    }
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
        if (!(lambdas[i] >= 1)) throw std::invalid_argument("lambda sweep must satisfy lambda >= 1");
        if (i > 0 && !(lambdas[i] > lambdas[i - 1])) {
            throw std::invalid_argument("lambda sweep must be strictly increasing");
        }
    }
}

}  // namespace

const char* family_name(DilationFamily f) {
    return f == DilationFamily::Gaussian ? "gaussian" : "annulus";
}

const char* family_name(ProbeFamily f) {
    return f == ProbeFamily::GaussianDilates ? "gaussian-dilates" : "gabor-critical";
}

nlohmann::json ExponentFit::to_json() const {
    return nlohmann::json{{"slope", slope},
                          {"intercept", intercept},
                          {"residual", residual},
                          {"lambdas", lambdas},
                          {"values", values}};
}

nlohmann::json ProbeReport::to_json() const {
    nlohmann::json series_json = nlohmann::json::array();
    for (const auto& [x, v] : series) series_json.push_back({x, v});
    nlohmann::json j{{"probe", probe},
                     {"params", params},
                     {"predicted_low", predicted_low},
                     {"predicted_high", predicted_high},
                     {"measured", measured},
                     {"consistent", verdict_consistency},
                     {"series", series_json},
                     {"seed", seed}};
    j["fit"] = fit ? fit->to_json() : nlohmann::json(nullptr);
    return j;
}

ExponentFit fit_exponent(std::span<const std::pair<double, double>> pairs) {
    if (pairs.size() < 4) throw std::invalid_argument("exponent fit needs at least 4 points");
    double prev = 0;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        if (!(pairs[i].second > 0)) {
            throw std::invalid_argument("exponent fit requires positive values");
        }
        if (i > 0 && !(pairs[i].first > prev)) {
            throw std::invalid_argument("exponent fit requires strictly increasing lambda");
        }
        prev = pairs[i].first;
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(pairs.size());
    for (const auto& [l, v] : pairs) {
        double x = std::log(l);
        double y = std::log(v);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    ExponentFit fit;
    fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    fit.intercept = sy / n - fit.slope * sx / n;
    for (const auto& [l, v] : pairs) {
        fit.lambdas.push_back(l);
        fit.values.push_back(v);
        double model = std::exp(fit.intercept + fit.slope * std::log(l));
        fit.residual = std::max(fit.residual, std::abs(model - v) / v);
    }
    return fit;
}

Spectrum family_spectrum(DilationFamily family, const GridSpec& spec, double lambda) {
    if (family == DilationFamily::Annulus) return annulus_spectrum(spec, lambda);
    // gaussian e^{-x^2/2}: fhat(xi) = sqrt(2 pi)^n e^{-|xi|^2/2}, dilated
    std::vector<Complex> coeffs(spec.size(), Complex(0, 0));
    Spectrum F(spec, std::move(coeffs));
    const double root = std::sqrt(2 * 3.14159265358979323846);
    const double amp = (spec.n == 1 ? root : root * root) /
                       (spec.n == 1 ? lambda : lambda * lambda);
    for (std::size_t i = 0; i < F.coeffs().size(); ++i) {
        auto xi = F.frequency(i);
        double r2 = xi[0] * xi[0];
        if (spec.n > 1) r2 += xi[1] * xi[1];
        double v = amp * std::exp(-r2 / (2 * lambda * lambda));
        if (v > amp * 1e-18) F.coeffs()[i] = v;
    }
    return F;
}

std::vector<ProbeReport> dilation_sweep(
    std::span<const std::pair<ExtendedExponent, ExtendedExponent>> pairs,
    std::span<const double> lambdas, DilationFamily family, std::optional<GridSpec> spec_opt) {
    validate_lambdas(lambdas, 5);
    if (pairs.empty()) throw std::invalid_argument("dilation sweep needs parameter pairs");
    GridSpec spec = spec_opt.value_or(default_dilation_grid());

    std::vector<ExtendedExponent> ps;
    for (const auto& [p, q] : pairs) {
        if (std::find(ps.begin(), ps.end(), p) == ps.end()) ps.push_back(p);
    }
    const Window window(Window::Kind::Hat);

    // one decomposition per lambda serves every (p, q)
    std::vector<BandNormTable> tables;
    tables.reserve(lambdas.size());
    for (double lambda : lambdas) {
        Spectrum F = family_spectrum(family, spec, lambda);
        require_alias_free(F);
        tables.push_back(band_lp_norms(F, window, ps));
    }

    std::vector<ProbeReport> reports;
    reports.reserve(pairs.size());
    for (const auto& [p, q] : pairs) {
        std::size_t pi = std::find(ps.begin(), ps.end(), p) - ps.begin();
        ProbeReport report;
        report.probe = "dilation";
        report.params["p"] = p.str();
        report.params["q"] = q.str();
        report.params["n"] = "1";
        report.params["family"] = family_name(family);
        report.predicted_low = mu2(p, q).to_double() * spec.n;
        report.predicted_high = mu1(p, q).to_double() * spec.n;

        std::vector<std::pair<double, double>> points;
        for (std::size_t li = 0; li < lambdas.size(); ++li) {
            double value = aggregate_modulation(tables[li], pi, q, Smoothness(0), spec.n);
            report.series.emplace_back(lambdas[li], value);
            if (li > 0) points.emplace_back(lambdas[li], value);  // first lambda is transient
        }
        report.fit = fit_exponent(points);
        report.measured = report.fit->slope;
        report.verdict_consistency = report.measured >= report.predicted_low - kSlopeTolerance &&
                                     report.measured <= report.predicted_high + kSlopeTolerance;
        reports.push_back(std::move(report));
    }
    return reports;
}

ProbeReport dilation_experiment(const ExtendedExponent& p, const ExtendedExponent& q,
                                std::span<const double> lambdas, DilationFamily family,
                                std::optional<GridSpec> spec) {
    std::pair<ExtendedExponent, ExtendedExponent> pair{p, q};
    return dilation_sweep({&pair, 1}, lambdas, family, spec)[0];
}

namespace {

double sobolev_norm_of_spectrum(const Spectrum& F, const ExtendedExponent& p,
                                const Smoothness& s) {
    const double sd = s.to_double();
    Spectrum lifted = apply_symbol(F, [sd](std::span<const double> xi) {
        double r2 = 0;
        for (double t : xi) r2 += t * t;
        return Complex(std::pow(1.0 + r2, sd / 2), 0);
    });
    return lp_norm(idft(lifted), p);
}

/// Holder-extremal coefficient exponent for the p < q dual-norm argument:
/// |c_l| = <l>^{s p (q/p)'/q} maximizes ||<l>^s c||_p / ||c||_q.
double gabor_coefficient_exponent(const ExtendedExponent& p, const ExtendedExponent& q,
                                  const Smoothness& s) {
    if (q.is_infinite()) return 0.0;
    const double pd = 1.0 / p.reciprocal().to_double();
    const double qd = 1.0 / q.reciprocal().to_double();
    const double r = qd / pd;
    const double rprime = r / (r - 1);
    return s.to_double() * pd * rprime / qd;
}

}  // namespace

ProbeReport embedding_probe(const ExtendedExponent& p, const ExtendedExponent& q,
                            const Smoothness& s, int n, ProbeFamily family,
                            std::span<const double> sweep, std::optional<GridSpec> spec_opt) {
    if (n != 1) throw std::domain_error("embedding_probe is implemented in one dimension");
    std::vector<double> default_sweep;
    if (sweep.empty()) {
        default_sweep = family == ProbeFamily::GaussianDilates
                            ? std::vector<double>{1, 2, 4, 8}
                            : std::vector<double>{8, 16, 32, 64};
        sweep = default_sweep;
    }
    GridSpec spec = spec_opt.value_or(family == ProbeFamily::GaussianDilates
                                          ? default_dilation_grid()
                                          : default_probe_grid());
    const Window window(Window::Kind::Hat);
    Verdict predicted = embeds_M_in_L(p, q, s, n);

    ProbeReport report;
    report.probe = "embedding";
    report.params["p"] = p.str();
    report.params["q"] = q.str();
    report.params["s"] = s.str();
    report.params["n"] = std::to_string(n);
    report.params["family"] = family_name(family);
    report.params["predicted"] = predicted.str();
    report.params["matched_condition"] = predicted.matched_condition;
    report.predicted_low = report.predicted_high = predicted.threshold.to_double();

    for (double parameter : sweep) {
        Spectrum F = [&] {
            if (family == ProbeFamily::GaussianDilates) {
                return family_spectrum(DilationFamily::Gaussian, spec, parameter);
            }
            const double e = gabor_coefficient_exponent(p, q, s);
            if (q <= p) {
                throw std::invalid_argument(
                    "the gabor-critical family targets the p < q sharpness regime");
            }
            int radius = static_cast<int>(parameter);
            LatticeCoefficients c(1);
            for (int k = -radius; k <= radius; ++k) {
                c.set({k, 0}, std::pow(1.0 + std::abs(k), e));
            }
            return dft(gabor_lattice(c, BumpProfile::eta(), spec));
        }();
        require_alias_free(F);
        double sob = sobolev_norm_of_spectrum(F, p, s);
        double mod = modulation_norm(F, p, q, Smoothness(0), window).value;
        if (!(sob > 0) || !(mod > 0)) {
            throw std::invalid_argument("embedding probe family produced the zero function");
        }
        report.series.emplace_back(parameter, sob / mod);
    }

    double lo = report.series.front().second;
    double hi = lo;
    bool monotone = true;
    for (std::size_t i = 0; i < report.series.size(); ++i) {
        double r = report.series[i].second;
        lo = std::min(lo, r);
        hi = std::max(hi, r);
        if (i > 0 && r < report.series[i - 1].second * kMonotoneGrowthFactor) monotone = false;
    }
    report.measured = report.series.back().second / report.series.front().second;
    report.verdict_consistency = predicted.holds ? (hi / lo <= kBoundedRatioCap) : monotone;
    return report;
}

double sequence_oracle_dual_norm(const ExtendedExponent& p, const ExtendedExponent& q,
                                 const Smoothness& s, int n, int radius) {
    if (!(p < q)) throw std::domain_error("dual-norm oracle requires p < q");
    if (radius < 0) throw std::domain_error("radius must be >= 0");
    if (n != 1 && n != 2) throw std::domain_error("dual-norm oracle supports n in {1,2}");
    const double pd = 1.0 / p.reciprocal().to_double();
    // (q/p)' = 1 when q = infinity
    double rprime = 1.0;
    if (!q.is_infinite()) {
        double qd = 1.0 / q.reciprocal().to_double();
        double r = qd / pd;
        rprime = r / (r - 1);
    }
    const double exponent = -s.to_double() * pd * rprime;
    double sum = 0;
    if (n == 1) {
        for (int k = -radius; k <= radius; ++k) {
            sum += std::pow(1.0 + std::abs(k), exponent);
        }
    } else {
        for (int k0 = -radius; k0 <= radius; ++k0) {
            for (int k1 = -radius; k1 <= radius; ++k1) {
                double r = std::hypot(k0, k1);
                if (r > radius) continue;
                sum += std::pow(1.0 + r, exponent);
            }
        }
    }
    return std::pow(sum, 1.0 / rprime);
}

double annular_inequality_check(const ExtendedExponent& p, const ExtendedExponent& q,
                                const Smoothness& s, int n, const LatticeCoefficients& c) {
    if (!(q < p)) throw std::domain_error("annular inequality lives in the q < p regime");
    if (p.is_infinite()) throw std::domain_error("annular inequality requires p < infinity");
    if (c.empty()) throw std::invalid_argument("coefficients must be nonempty");
    if (c.has(LatticePoint{0, 0})) {
        throw std::invalid_argument("annular inequality requires 0 outside the support");
    }
    if (c.dim() != n) throw std::invalid_argument("coefficient dimension mismatch");

    const double pd = 1.0 / p.reciprocal().to_double();
    const double qd = 1.0 / q.reciprocal().to_double();
    const double e = n * (p.reciprocal().to_double() - 1.0) + s.to_double();

    // prefix sums of |c_l|^p over sorted euclidean radii
    std::vector<std::pair<double, double>> by_radius;  // (|l|, |c_l|^p)
    by_radius.reserve(c.count());
    for (const auto& [l, v] : c.entries()) {
        by_radius.emplace_back(lattice_abs(l, n), std::pow(std::abs(v), pd));
    }
    std::sort(by_radius.begin(), by_radius.end());
    std::vector<double> radii(by_radius.size()), prefix(by_radius.size() + 1, 0.0);
    for (std::size_t i = 0; i < by_radius.size(); ++i) {
        radii[i] = by_radius[i].first;
        prefix[i + 1] = prefix[i] + by_radius[i].second;
    }
    auto annulus_mass = [&](double r) {
        auto lo = std::lower_bound(radii.begin(), radii.end(), r / 2 - 1e-12) - radii.begin();
        auto hi = std::upper_bound(radii.begin(), radii.end(), 2 * r + 1e-12) - radii.begin();
        return prefix[hi] - prefix[lo];
    };

    const double max_radius = c.radius();
    double lhs_pow = 0;
    auto term = [&](double r) {
        double mass = annulus_mass(r);
        if (mass == 0) return 0.0;
        return std::pow(r, e * qd) * std::pow(mass, qd / pd);
    };
    const int bound = static_cast<int>(std::ceil(2 * max_radius)) + 1;
    if (n == 1) {
        // k and -k contribute the same annulus term
        for (int k = 1; k <= bound; ++k) lhs_pow += 2 * term(k);
    } else {
        for (int k0 = -bound; k0 <= bound; ++k0) {
            for (int k1 = -bound; k1 <= bound; ++k1) {
                if (k0 == 0 && k1 == 0) continue;
                lhs_pow += term(std::hypot(k0, k1));
            }
        }
    }
    const double lhs = std::pow(lhs_pow, 1.0 / qd);
    const double rhs = std::pow(prefix.back(), 1.0 / pd);
    return lhs / rhs;
}

ProbeReport multiplier_loss_experiment(const ExtendedExponent& p, const Rational& alpha,
                                       const Smoothness& s, std::span<const double> lambdas,
                                       std::optional<GridSpec> spec_opt) {
    if (alpha < Rational(0)) throw std::domain_error("multiplier exponent alpha must be >= 0");
    validate_lambdas(lambdas, 5);
    GridSpec spec = spec_opt.value_or(default_multiplier_grid());
    if (spec.n != 1) throw std::domain_error("multiplier experiments are one-dimensional");

    Spectrum g = annulus_spectrum(spec, 1.0);
    require_alias_free(g);
    const double ad = alpha.to_double();
    const double sd = s.to_double();

    ProbeReport report;
    report.probe = "multiplier-loss";
    report.params["p"] = p.str();
    report.params["alpha"] = alpha.str();
    report.params["s"] = s.str();
    report.params["n"] = "1";
    // stationary-phase exponent alpha n / p - alpha n / 2 - s
    Rational predicted = alpha * p.reciprocal() - alpha * Rational(1, 2) - s;
    report.predicted_low = report.predicted_high = predicted.to_double();

    std::vector<std::pair<double, double>> points;
    for (double lambda : lambdas) {
        Spectrum modulated = apply_symbol(g, [&](std::span<const double> xi) {
            double r = std::abs(xi[0]) * lambda;
            double phase = std::pow(r, ad);
            double weight = std::pow(1.0 + r * r, -sd / 2);
            return std::polar(weight, phase);
        });
        double value = lp_norm(idft(modulated), p);
        report.series.emplace_back(lambda, value);
        if (report.series.size() > 1) points.emplace_back(lambda, value);
    }
    report.fit = fit_exponent(points);
    report.measured = report.fit->slope;
    report.verdict_consistency =
        std::abs(report.measured - report.predicted_low) <= kMultiplierSlopeTolerance;
    return report;
}

double band_multiplier_norm_probe(const ExtendedExponent& p, const Rational& alpha, int k,
                                  int trials, std::uint64_t seed, std::optional<GridSpec> spec_opt) {
    if (trials < 1) throw std::invalid_argument("band probe needs at least one trial");
    if (alpha < Rational(0)) throw std::domain_error("multiplier exponent alpha must be >= 0");
    GridSpec spec = spec_opt.value_or(default_band_probe_grid());
    if (spec.n != 1) throw std::domain_error("band probe is one-dimensional");
    if (std::abs(k) + 1 > spec.nyquist()) {
        throw std::domain_error("band center k lies beyond the frequency lattice");
    }

    const Window window(Window::Kind::Hat);
    const double ad = alpha.to_double();
    auto symbol = [&](std::span<const double> xi) {
        return std::polar(1.0, std::pow(std::abs(xi[0]), ad));
    };

    double best = 0;
    for (int t = 0; t < trials; ++t) {
        std::vector<Complex> coeffs(spec.size(), Complex(0, 0));
        Spectrum F(spec, std::move(coeffs));
        const int N = spec.N;
        const int ms = spec.lattice_scale;
        const int lo = std::max(-N / 2, (k - 1) * ms);
        const int hi = std::min(N / 2 - 1, (k + 1) * ms);
        if (t == 0) {
            // deterministic anchor: the band window itself
            for (int m = lo; m <= hi; ++m) {
                F.coeffs()[m + N / 2] = window.profile1(static_cast<double>(m - k * ms) / ms);
            }
        } else {
            std::mt19937_64 rng(seed + static_cast<std::uint64_t>(t));
            std::normal_distribution<double> gauss(0.0, 1.0);
            for (int m = lo; m <= hi; ++m) {
                double envelope = window.profile1(static_cast<double>(m - k * ms) / ms);
                F.coeffs()[m + N / 2] = envelope * Complex(gauss(rng), gauss(rng));
            }
        }
        SampledFunction f = idft(F);
        double denom = lp_norm(f, p);
        if (denom == 0) continue;
        Spectrum pushed = band_project(apply_symbol(F, symbol), {k, 0}, window);
        double numer = lp_norm(idft(pushed), p);
        best = std::max(best, numer / denom);
    }
    return best;
}

namespace {

void validate_doubling_radii(std::span<const int> radii) {
    if (radii.size() < 3) throw std::invalid_argument("radius sweep needs at least 3 radii");
    for (std::size_t i = 0; i < radii.size(); ++i) {
        if (radii[i] < 1) throw std::invalid_argument("radii must be positive");
        if (i > 0 && radii[i] != 2 * radii[i - 1]) {
            throw std::invalid_argument("radius sweep must double at each step");
        }
    }
}

}  // namespace

ProbeReport dual_norm_probe(const ExtendedExponent& p, const ExtendedExponent& q,
                            const Smoothness& s, int n, std::span<const int> radii) {
    validate_doubling_radii(radii);
    ProbeReport report;
    report.probe = "dual-norm";
    report.params["p"] = p.str();
    report.params["q"] = q.str();
    report.params["s"] = s.str();
    report.params["n"] = std::to_string(n);

    const Rational critical = Rational(n) * (p.reciprocal() - q.reciprocal());
    report.predicted_low = report.predicted_high = critical.to_double();
    const bool divergent = s <= critical;  // sp(q/p)' <= n
    report.params["predicted"] = divergent ? "divergent" : "convergent";

    const double pd = 1.0 / p.reciprocal().to_double();
    double rprime = 1.0;
    if (!q.is_infinite()) {
        double qd = 1.0 / q.reciprocal().to_double();
        rprime = (qd / pd) / (qd / pd - 1);
    }
    const double a = s.to_double() * pd * rprime;  // summand is (1+|k|)^{-a}

    bool consistent = true;
    double prev = 0;
    for (std::size_t i = 0; i < radii.size(); ++i) {
        double value = sequence_oracle_dual_norm(p, q, s, n, radii[i]);
        report.series.emplace_back(radii[i], value);
        if (i == 0) {
            prev = value;
            continue;
        }
        if (divergent) {
            if (!(value >= prev + kDivergenceStep)) consistent = false;
        } else {
            // doubling increment of the raw sum against the integral bound
            // sum_{R<|k|<=2R} (1+|k|)^{-a} <= 2 int_R^{2R} (1+r)^{-a} dr (n=1)
            double increment = std::pow(value, rprime) - std::pow(prev, rprime);
            double r0 = radii[i - 1];
            double bound = 2.0 / (a - 1) *
                           (std::pow(1 + r0, 1 - a) - std::pow(1 + 2 * r0, 1 - a));
            if (n == 2) bound *= 8 * radii[i];  // crude lattice-count factor
            if (!(increment <= bound * (1 + 1e-9))) consistent = false;
        }
        prev = value;
    }
    report.measured = report.series.back().second;
    report.verdict_consistency = consistent;
    return report;
}

ProbeReport annular_growth_probe(const ExtendedExponent& p, const ExtendedExponent& q,
                                 const Smoothness& s, int n, std::span<const int> radii,
                                 double eps, int n_start) {
    validate_doubling_radii(radii);
    ProbeReport report;
    report.probe = "annular";
    report.params["p"] = p.str();
    report.params["q"] = q.str();
    report.params["s"] = s.str();
    report.params["n"] = std::to_string(n);
    report.params["eps"] = std::to_string(eps);

    const Rational critical = -(Rational(n) * (p.reciprocal() + q.reciprocal() - Rational(1)));
    report.predicted_low = report.predicted_high = critical.to_double();
    const bool divergent = s >= critical;
    report.params["predicted"] = divergent ? "divergent" : "bounded";

    bool consistent = true;
    double prev = 0;
    double lo = 0, hi = 0;
    for (std::size_t i = 0; i < radii.size(); ++i) {
        LatticeCoefficients c = critical_sequence(p, eps, n_start, radii[i], n);
        double ratio = annular_inequality_check(p, q, s, n, c);
        report.series.emplace_back(radii[i], ratio);
        if (i == 0) {
            prev = lo = hi = ratio;
            continue;
        }
        if (divergent && !(ratio >= prev + kDivergenceStep)) consistent = false;
        prev = ratio;
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
    }
    if (!divergent && hi / lo > kBoundedRatioCap) consistent = false;
    report.measured = report.series.back().second;
    report.verdict_consistency = consistent;
    return report;
}

}  // namespace modlab
