#include "modlab/windows.hpp"

#include <cmath>
#include <sstream>

namespace modlab {

namespace {

// quintic smoothstep: S(0)=0, S(1)=1, S' = S'' = 0 at both ends
double smoothstep(double t) {
    if (t <= 0) return 0;
    if (t >= 1) return 1;
    return t * t * t * (10 + t * (-15 + 6 * t));
}

}  // namespace

double Window::profile1(double t) const {
    double a = std::abs(t);
    if (a >= 1) return 0;
    if (kind_ == Kind::Hat) return 1 - a;
    return 1 - smoothstep(a);
}

double Window::partition_defect(int samples) const {
    double worst = 0;
    for (int i = 0; i < samples; ++i) {
        double t = static_cast<double>(i) / samples;
        double sum = 0;
        for (int k = -2; k <= 2; ++k) sum += profile1(t - k);
        worst = std::max(worst, std::abs(sum - 1));
    }
    return worst;
}

double DyadicWindow::theta(double r) const {
    if (r <= 1) return 1;
    if (r >= 2) return 0;
    return 1 - smoothstep(r - 1);
}

double DyadicWindow::value(int j, std::span<const double> xi) const {
    double r2 = 0;
    for (double t : xi) r2 += t * t;
    double r = std::sqrt(r2);
    if (j == 0) return theta(r);
    double scale = std::ldexp(1.0, -j);  // 2^{-j}
    return theta(r * scale) - theta(r * scale * 2);
}

double DyadicWindow::partition_defect(double max_radius, int levels, int samples) const {
    double worst = 0;
    for (int i = 0; i <= samples; ++i) {
        double r = max_radius * i / samples;
        double sum = 0;
        for (int j = 0; j <= levels; ++j) {
            sum += value(j, std::span<const double>(&r, 1));
        }
        worst = std::max(worst, std::abs(sum - 1));
    }
    return worst;
}

Spectrum band_project(const Spectrum& F, const LatticePoint& k, const Window& w) {
    const GridSpec& spec = F.spec();
    std::vector<Complex> out(F.coeffs().size(), Complex(0, 0));
    const int N = spec.N;
    const int ms = spec.lattice_scale;

    auto axis_range = [&](int kc, int& lo, int& hi) {
        if (ms > 0) {
            lo = kc * ms - ms;
            hi = kc * ms + ms;
        } else {
            lo = static_cast<int>(std::ceil((kc - 1) / spec.dxi()));
            hi = static_cast<int>(std::floor((kc + 1) / spec.dxi()));
        }
        lo = std::max(lo, -N / 2);
        hi = std::min(hi, N / 2 - 1);
    };
    auto factor = [&](int m, int kc) {
        double t = ms > 0 ? static_cast<double>(m - kc * ms) / ms : spec.freq(m) - kc;
        return w.profile1(t);
    };

    if (spec.n == 1) {
        int lo, hi;
        axis_range(k[0], lo, hi);
        for (int m = lo; m <= hi; ++m) {
            out[m + N / 2] = F.coeffs()[m + N / 2] * factor(m, k[0]);
        }
    } else {
        int lo0, hi0, lo1, hi1;
        axis_range(k[0], lo0, hi0);
        axis_range(k[1], lo1, hi1);
        for (int m0 = lo0; m0 <= hi0; ++m0) {
            double f0 = factor(m0, k[0]);
            for (int m1 = lo1; m1 <= hi1; ++m1) {
                std::size_t idx = static_cast<std::size_t>(m0 + N / 2) * N + (m1 + N / 2);
                out[idx] = F.coeffs()[idx] * (f0 * factor(m1, k[1]));
            }
        }
    }
    return Spectrum(spec, std::move(out));
}

Spectrum dyadic_project(const Spectrum& F, int j, const DyadicWindow& dw) {
    if (j < 0) throw std::domain_error("dyadic level must be >= 0");
    const GridSpec& spec = F.spec();
    double inner = j == 0 ? 0.0 : std::ldexp(1.0, j - 1);
    if (inner > spec.nyquist()) {
        std::ostringstream msg;
        msg << "dyadic band j=" << j << " starts at |xi|=" << inner
            << ", beyond the nyquist frequency " << spec.nyquist()
            << "; increase N or decrease L";
        throw std::domain_error(msg.str());
    }
    std::vector<Complex> out(F.coeffs().size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        auto xi = F.frequency(i);
        out[i] = F.coeffs()[i] * dw.value(j, std::span<const double>(xi.data(), spec.n));
    }
    return Spectrum(spec, std::move(out));
}

}  // namespace modlab
