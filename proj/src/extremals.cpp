#include "modlab/extremals.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace modlab {

namespace {

double smoothstep(double t) {
    if (t <= 0) return 0;
    if (t >= 1) return 1;
    return t * t * t * (10 + t * (-15 + 6 * t));
}

// (1 - (t/h)^2)^3 on |t| < h: C^2 across the support edge.
double cubic_bump(double t, double h) {
    double u = t / h;
    double v = 1 - u * u;
    if (v <= 0) return 0;
    return v * v * v;
}

/// |int profile1(t) e^{-i t xi} dt| lower bound on [0, xi_max], by Simpson
/// quadrature on the support and a scan over frequencies.
double measure_spectral_floor(const BumpProfile& profile, double xi_max) {
    const double h = profile.support_halfwidth();
    const int quad = 2000;  // Simpson panels over [-h, h]
    auto transform_at = [&](double xi) {
        double re = 0, im = 0;
        double step = 2 * h / quad;
        for (int i = 0; i <= quad; ++i) {
            double t = -h + i * step;
            double w = (i == 0 || i == quad) ? 1 : (i % 2 ? 4 : 2);
            double v = profile.profile1(t);
            re += w * v * std::cos(t * xi);
            im -= w * v * std::sin(t * xi);
        }
        re *= step / 3;
        im *= step / 3;
        return std::hypot(re, im);
    };
    double floor_value = transform_at(0);
    const int scan = 400;
    for (int i = 0; i <= scan; ++i) {
        floor_value = std::min(floor_value, transform_at(xi_max * i / scan));
    }
    return floor_value;
}

}  // namespace

LatticeCoefficients::LatticeCoefficients(int dim) : dim_(dim) {
    if (dim != 1 && dim != 2) throw std::domain_error("lattice dimension must be 1 or 2");
}

void LatticeCoefficients::set(const LatticePoint& k, Complex value) {
    if (dim_ == 1 && k[1] != 0) throw std::domain_error("1D lattice point must have k[1] == 0");
    if (value == Complex(0, 0)) {
        entries_.erase(k);
    } else {
        entries_[k] = value;
    }
}

Complex LatticeCoefficients::at(const LatticePoint& k) const {
    auto it = entries_.find(k);
    return it == entries_.end() ? Complex(0, 0) : it->second;
}

double LatticeCoefficients::radius() const {
    double r = 0;
    for (const auto& [k, v] : entries_) r = std::max(r, lattice_abs(k, dim_));
    return r;
}

int LatticeCoefficients::radius_sup() const {
    int r = 0;
    for (const auto& [k, v] : entries_) {
        r = std::max({r, std::abs(k[0]), std::abs(k[1])});
    }
    return r;
}

double LatticeCoefficients::lp_mass(const ExtendedExponent& p) const {
    if (p.is_infinite()) {
        double m = 0;
        for (const auto& [k, v] : entries_) m = std::max(m, std::abs(v));
        return m;
    }
    const double pd = 1.0 / p.reciprocal().to_double();
    double sum = 0;
    for (const auto& [k, v] : entries_) sum += std::pow(std::abs(v), pd);
    return std::pow(sum, 1.0 / pd);
}

nlohmann::json LatticeCoefficients::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [k, v] : entries_) {
        nlohmann::json key = nlohmann::json::array();
        for (int d = 0; d < dim_; ++d) key.push_back(k[d]);
        arr.push_back({{"k", key}, {"re", v.real()}, {"im", v.imag()}});
    }
    return nlohmann::json{{"dim", dim_}, {"entries", arr}};
}

LatticeCoefficients LatticeCoefficients::from_json(const nlohmann::json& j) {
    LatticeCoefficients c(j.at("dim").get<int>());
    for (const auto& e : j.at("entries")) {
        const auto& key = e.at("k");
        LatticePoint k{key.at(0).get<int>(), 0};
        if (c.dim() == 2) k[1] = key.at(1).get<int>();
        c.set(k, Complex(e.at("re").get<double>(), e.at("im").get<double>()));
    }
    return c;
}

BumpProfile::BumpProfile(Role role, double support_half, double plateau_half)
    : role_(role), support_half_(support_half), plateau_half_(plateau_half) {}

BumpProfile BumpProfile::eta() { return BumpProfile(Role::Eta, 0.5, 0); }

BumpProfile BumpProfile::bump_a(double delta) {
    if (!(delta > 0 && delta < 1)) throw std::domain_error("scaled-bump delta must be in (0,1)");
    BumpProfile p(Role::ScaledBump, delta / 8, 0);
    p.spectral_floor_ = measure_spectral_floor(p, 2.0);
    if (!(p.spectral_floor_ > 0)) {
        throw std::logic_error("scaled-bump profile lost its spectral lower bound on |xi| <= 2");
    }
    return p;
}

BumpProfile BumpProfile::psi_plateau(double delta) {
    if (!(delta > 0 && delta < 1)) throw std::domain_error("plateau delta must be in (0,1)");
    BumpProfile p(Role::PsiPlateau, 3 * delta / 8, delta / 4);
    p.spectral_floor_ = measure_spectral_floor(p, 2.0);
    if (!(p.spectral_floor_ > 0)) {
        throw std::logic_error("plateau profile lost its spectral lower bound on [-2,2]");
    }
    return p;
}

double BumpProfile::profile1(double t) const {
    double a = std::abs(t);
    if (a >= support_half_) return 0;
    if (role_ == Role::PsiPlateau) {
        if (a <= plateau_half_) return 1;
        return 1 - smoothstep((a - plateau_half_) / (support_half_ - plateau_half_));
    }
    return cubic_bump(t, support_half_);
}

double BumpProfile::operator()(std::span<const double> x) const {
    double v = 1;
    for (double t : x) v *= profile1(t);
    return v;
}

SampledFunction gabor_lattice(const LatticeCoefficients& c, const BumpProfile& eta,
                              const GridSpec& spec) {
    if (c.empty()) throw std::invalid_argument("gabor_lattice needs at least one coefficient");
    if (c.dim() != spec.n) throw std::invalid_argument("lattice and grid dimensions differ");
    const double need = c.radius_sup() + eta.support_halfwidth() + 1.0;
    if (spec.L / 2 < need) {
        std::ostringstream msg;
        msg << "box too small for the lattice: need L >= " << 2 * need << ", got " << spec.L;
        throw std::invalid_argument(msg.str());
    }

    std::vector<Complex> values(spec.size(), Complex(0, 0));
    const double h = spec.dx();
    const int N = spec.N;
    auto axis_indices = [&](double center, int& jlo, int& jhi) {
        jlo = static_cast<int>(std::ceil((center - eta.support_halfwidth() + spec.L / 2) / h));
        jhi = static_cast<int>(std::floor((center + eta.support_halfwidth() + spec.L / 2) / h));
        jlo = std::max(jlo, 0);
        jhi = std::min(jhi, N - 1);
    };
    for (const auto& [k, coeff] : c.entries()) {
        if (spec.n == 1) {
            int jlo, jhi;
            axis_indices(k[0], jlo, jhi);
            for (int j = jlo; j <= jhi; ++j) {
                double x = spec.coord(j);
                double envelope = eta.profile1(x - k[0]);
                if (envelope == 0) continue;
                values[j] += coeff * std::polar(envelope, k[0] * x);
            }
        } else {
            int j0lo, j0hi, j1lo, j1hi;
            axis_indices(k[0], j0lo, j0hi);
            axis_indices(k[1], j1lo, j1hi);
            for (int j0 = j0lo; j0 <= j0hi; ++j0) {
                double x0 = spec.coord(j0);
                double e0 = eta.profile1(x0 - k[0]);
                if (e0 == 0) continue;
                for (int j1 = j1lo; j1 <= j1hi; ++j1) {
                    double x1 = spec.coord(j1);
                    double e1 = eta.profile1(x1 - k[1]);
                    if (e1 == 0) continue;
                    values[static_cast<std::size_t>(j0) * N + j1] +=
                        coeff * std::polar(e0 * e1, k[0] * x0 + k[1] * x1);
                }
            }
        }
    }
    return SampledFunction(spec, std::move(values));
}

SampledFunction scaled_bumps(const LatticeCoefficients& c, const BumpProfile& a,
                             const ExtendedExponent& p, const GridSpec& spec) {
    if (c.empty()) throw std::invalid_argument("scaled_bumps needs at least one coefficient");
    if (c.dim() != spec.n) throw std::invalid_argument("lattice and grid dimensions differ");
    if (c.has(LatticePoint{0, 0})) {
        throw std::invalid_argument("scaled_bumps requires 0 outside the coefficient support");
    }
    const double rmax = c.radius();
    const double narrowest = a.support_halfwidth() / rmax;
    if (spec.dx() > narrowest / 8) {
        int needed = spec.N;
        while (spec.L / needed > narrowest / 8) needed *= 2;
        std::ostringstream msg;
        msg << "grid does not resolve the narrowest bump (need >= 8 samples across " << narrowest
            << "); increase N to " << needed;
        throw std::invalid_argument(msg.str());
    }
    const double exponent = spec.n * p.reciprocal().to_double();  // n/p; 0 for p = infty

    std::vector<Complex> values(spec.size(), Complex(0, 0));
    const double h = spec.dx();
    const int N = spec.N;
    for (const auto& [k, coeff] : c.entries()) {
        const double scale = lattice_abs(k, spec.n);
        const double amp = std::pow(scale, exponent);
        const double half = a.support_halfwidth() / scale;
        auto axis_indices = [&](double center, int& jlo, int& jhi) {
            jlo = std::max(0, static_cast<int>(std::ceil((center - half + spec.L / 2) / h)));
            jhi = std::min(N - 1, static_cast<int>(std::floor((center + half + spec.L / 2) / h)));
        };
        if (spec.n == 1) {
            int jlo, jhi;
            axis_indices(k[0], jlo, jhi);
            for (int j = jlo; j <= jhi; ++j) {
                double t = scale * (spec.coord(j) - k[0]);
                double v = a.profile1(t);
                if (v != 0) values[j] += coeff * amp * v;
            }
        } else {
            int j0lo, j0hi, j1lo, j1hi;
            axis_indices(k[0], j0lo, j0hi);
            axis_indices(k[1], j1lo, j1hi);
            for (int j0 = j0lo; j0 <= j0hi; ++j0) {
                double v0 = a.profile1(scale * (spec.coord(j0) - k[0]));
                if (v0 == 0) continue;
                for (int j1 = j1lo; j1 <= j1hi; ++j1) {
                    double v1 = a.profile1(scale * (spec.coord(j1) - k[1]));
                    if (v1 != 0) {
                        values[static_cast<std::size_t>(j0) * N + j1] += coeff * amp * (v0 * v1);
                    }
                }
            }
        }
    }
    return SampledFunction(spec, std::move(values));
}

LatticeCoefficients critical_sequence(const ExtendedExponent& p, double eps, int n_start,
                                      int radius, int dim) {
    if (!(eps > 0)) throw std::domain_error("critical_sequence requires eps > 0");
    if (n_start < 3 || radius <= n_start) {
        throw std::domain_error("critical_sequence requires radius > n_start >= 3");
    }
    const double recip = p.reciprocal().to_double();  // 1/p
    const double power = dim * recip;
    const double logpower = (1 + eps) * recip;
    LatticeCoefficients c(dim);
    auto value = [&](double r) {
        return std::pow(r, -power) * std::pow(std::log(r), -logpower);
    };
    if (dim == 1) {
        for (int k = n_start; k <= radius; ++k) {
            double v = value(k);
            c.set({k, 0}, v);
            c.set({-k, 0}, v);
        }
    } else {
        for (int k0 = -radius; k0 <= radius; ++k0) {
            for (int k1 = -radius; k1 <= radius; ++k1) {
                double r = std::hypot(k0, k1);
                if (r < n_start || r > radius) continue;
                c.set({k0, k1}, value(r));
            }
        }
    }
    return c;
}

double annulus_profile(double r) {
    static const double kInner = 0.5;
    static const double kPlateauLo = std::exp2(-0.5);
    static const double kPlateauHi = std::exp2(0.5);
    static const double kOuter = 2.0;
    if (r <= kInner || r >= kOuter) return 0;
    if (r < kPlateauLo) return smoothstep((r - kInner) / (kPlateauLo - kInner));
    if (r <= kPlateauHi) return 1;
    return smoothstep((kOuter - r) / (kOuter - kPlateauHi));
}

Spectrum annulus_spectrum(const GridSpec& spec, double lambda) {
    if (!(lambda > 0)) throw std::domain_error("dilation parameter must be positive");
    std::vector<Complex> coeffs(spec.size(), Complex(0, 0));
    const double amp = spec.n == 1 ? 1.0 / lambda : 1.0 / (lambda * lambda);
    Spectrum shape(spec, std::move(coeffs));
    for (std::size_t i = 0; i < shape.coeffs().size(); ++i) {
        auto xi = shape.frequency(i);
        double r = spec.n == 1 ? std::abs(xi[0]) : std::hypot(xi[0], xi[1]);
        double v = annulus_profile(r / lambda);
        if (v != 0) shape.coeffs()[i] = amp * v;
    }
    return shape;
}

SampledFunction annulus_function(const GridSpec& spec) { return idft(annulus_spectrum(spec)); }

SampledFunction dilate(const SampledFunction& f, double lambda) {
    if (!(lambda >= 1)) throw std::domain_error("dilate requires lambda >= 1");
    if (lambda == 1) return f;
    const GridSpec& spec = f.spec();
    Spectrum F = dft(f);

    // admissible dilation from the guarded spectral radius of f
    const double guard = spec.nyquist() / 2;
    double total = 0;
    for (const auto& v : F.coeffs()) total += std::norm(v);
    std::vector<std::pair<double, double>> mass;  // (|xi|_inf, |F|^2)
    mass.reserve(F.coeffs().size());
    for (std::size_t i = 0; i < F.coeffs().size(); ++i) {
        double m = std::norm(F.coeffs()[i]);
        if (m == 0) continue;
        auto xi = F.frequency(i);
        double linf = std::abs(xi[0]);
        if (spec.n > 1) linf = std::max(linf, std::abs(xi[1]));
        mass.emplace_back(linf, m);
    }
    std::sort(mass.begin(), mass.end());
    double acc = 0;
    double rho = 0;
    for (const auto& [linf, m] : mass) {
        acc += m;
        if (acc >= (1 - 1e-8) * total) {
            rho = linf;
            break;
        }
    }
    if (rho * lambda > guard) {
        double max_lambda = rho > 0 ? guard / rho : std::numeric_limits<double>::infinity();
        std::ostringstream msg;
        msg << "dilation by " << lambda << " pushes the spectrum past the Nyquist guard; "
            << "max admissible lambda on this grid is " << max_lambda;
        throw AliasingError(msg.str(), 1.0, max_lambda);
    }

    // trigonometric interpolation at lambda * x, zero outside the box
    const int N = spec.N;
    const double inv = spec.n == 1 ? 1.0 / spec.L : 1.0 / (spec.L * spec.L);
    std::vector<Complex> out(spec.size(), Complex(0, 0));
    if (spec.n == 1) {
        int lo = N, hi = -1;
        for (int i = 0; i < N; ++i) {
            if (F.coeffs()[i] != Complex(0, 0)) {
                lo = std::min(lo, i);
                hi = std::max(hi, i);
            }
        }
        for (int j = 0; j < N; ++j) {
            double y = lambda * spec.coord(j);
            if (std::abs(y) > spec.L / 2) continue;
            Complex acc2(0, 0);
            for (int i = lo; i <= hi; ++i) {
                double xi = spec.freq(i - N / 2);
                acc2 += F.coeffs()[i] * std::polar(1.0, y * xi);
            }
            out[j] = acc2 * inv;
        }
    } else {
        // separable pass: first sum over the second axis for each (m0, j1)
        std::vector<Complex> partial(static_cast<std::size_t>(N) * N, Complex(0, 0));
        for (int j1 = 0; j1 < N; ++j1) {
            double y1 = lambda * spec.coord(j1);
            if (std::abs(y1) > spec.L / 2) continue;
            for (int m0 = 0; m0 < N; ++m0) {
                Complex acc2(0, 0);
                for (int m1 = 0; m1 < N; ++m1) {
                    const Complex& cf = F.coeffs()[static_cast<std::size_t>(m0) * N + m1];
                    if (cf == Complex(0, 0)) continue;
                    acc2 += cf * std::polar(1.0, y1 * spec.freq(m1 - N / 2));
                }
                partial[static_cast<std::size_t>(m0) * N + j1] = acc2;
            }
        }
        for (int j0 = 0; j0 < N; ++j0) {
            double y0 = lambda * spec.coord(j0);
            if (std::abs(y0) > spec.L / 2) continue;
            for (int j1 = 0; j1 < N; ++j1) {
                Complex acc2(0, 0);
                for (int m0 = 0; m0 < N; ++m0) {
                    const Complex& cf = partial[static_cast<std::size_t>(m0) * N + j1];
                    if (cf == Complex(0, 0)) continue;
                    acc2 += cf * std::polar(1.0, y0 * spec.freq(m0 - N / 2));
                }
                out[static_cast<std::size_t>(j0) * N + j1] = acc2 * inv;
            }
        }
    }
    return SampledFunction(spec, std::move(out));
}

}  // namespace modlab
