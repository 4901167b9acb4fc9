#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "modlab/errors.hpp"

namespace modlab {

using Complex = std::complex<double>;

/// Integer lattice point in Z^n, n <= 2; the second coordinate is 0 in 1D.
using LatticePoint = std::array<int, 2>;

inline double lattice_abs(const LatticePoint& k, int n) {
    double s = static_cast<double>(k[0]) * k[0];
    if (n > 1) s += static_cast<double>(k[1]) * k[1];
    return std::sqrt(s);
}

/// Periodic uniform grid on [-L/2, L/2)^n with N samples per axis.
/// Frequency lattice: xi_m = m * (2 pi / L), m in [-N/2, N/2).
struct GridSpec {
    int n = 1;
    int N = 8;
    double L = 1.0;
    /// When positive, L = 2 pi * lattice_scale, so integer frequencies sit
    /// exactly on the lattice (index m = k * lattice_scale) and band windows
    /// can be evaluated in exact index arithmetic.
    int lattice_scale = 0;

    static GridSpec make(int dim, int samples, double box);

    /// Box chosen as L = 2 pi m so the integer frequencies of the
    /// frequency-uniform decomposition are exact lattice points.
    static GridSpec with_integer_frequencies(int dim, int samples, int m);

    double dx() const { return L / N; }
    double dxi() const { return 2.0 * std::acos(-1.0) / L; }
    double nyquist() const { return std::acos(-1.0) * N / L; }
    std::size_t size() const { return n == 1 ? static_cast<std::size_t>(N)
                                             : static_cast<std::size_t>(N) * N; }

    double coord(int j) const { return -L / 2 + j * dx(); }      // axis sample position
    double freq(int m) const { return m * dxi(); }               // m in [-N/2, N/2)

    friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

/// Complex samples on a grid, row-major over axes.
class SampledFunction {
public:
    SampledFunction(GridSpec spec, std::vector<Complex> values);

    const GridSpec& spec() const { return spec_; }
    const std::vector<Complex>& values() const { return values_; }
    std::vector<Complex>& values() { return values_; }

private:
    GridSpec spec_;
    std::vector<Complex> values_;
};

/// Discrete spectrum in ascending frequency order: in 1D coeffs[i] holds the
/// approximation of fhat(xi_m) for m = i - N/2, quadrature weight (L/N)^n
/// included; in 2D row-major over (m0, m1) with the same offset per axis.
class Spectrum {
public:
    Spectrum(GridSpec spec, std::vector<Complex> coeffs);

    const GridSpec& spec() const { return spec_; }
    const std::vector<Complex>& coeffs() const { return coeffs_; }
    std::vector<Complex>& coeffs() { return coeffs_; }

    /// Frequency vector of the flat index.
    std::array<double, 2> frequency(std::size_t index) const;

private:
    GridSpec spec_;
    std::vector<Complex> coeffs_;
};

/// Analytic descriptor for grid sampling; the closed set used by the tools
/// is built by the factories below, user data enters through read_csv.
struct AnalyticFunction {
    std::string name;
    std::function<Complex(std::span<const double>)> eval;
};

namespace descriptors {
AnalyticFunction zero();
AnalyticFunction gaussian(double sigma = 1.0);
AnalyticFunction hat();                    // prod max(0, 1 - |x_i|)
AnalyticFunction bump(double radius);      // C^2 bump, support exactly [-r, r]^n
/// sum of c_j e^{i k_j . x} g(x - a_j) over a base descriptor g
AnalyticFunction modulated_sum(AnalyticFunction base, std::vector<Complex> coefficients,
                               std::vector<std::array<double, 2>> modulations,
                               std::vector<std::array<double, 2>> translations);
}  // namespace descriptors

SampledFunction sample(const AnalyticFunction& descriptor, const GridSpec& spec);

/// Riemann-sum Fourier transform pair matching the conventions
/// fhat(xi) = int f e^{-i x.xi} dx and f = (2 pi)^{-n} int fhat e^{i x.xi} dxi.
Spectrum dft(const SampledFunction& f);
SampledFunction idft(const Spectrum& F);

/// Coefficient-wise multiplication by symbol(xi); throws on non-finite
/// symbol values naming the offending frequency.
Spectrum apply_symbol(const Spectrum& F,
                      const std::function<Complex(std::span<const double>)>& symbol);

/// Fraction of spectral L^2 mass outside the guard box |xi_i| <= nyquist/2.
double aliasing_fraction(const Spectrum& F);

/// Throws AliasingError when aliasing_fraction exceeds the guard tolerance.
void require_alias_free(const Spectrum& F, double tolerance = 1e-8);

/// Tabulated-function interchange: header rows record the GridSpec, data
/// rows are (index..., re, im).
void write_csv(const SampledFunction& f, std::ostream& out);
SampledFunction read_csv(std::istream& in);

namespace detail {
/// In-place radix-2 transform, unnormalized: sign -1 forward, +1 inverse.
void fft_pow2(std::span<Complex> data, int sign);
/// Transform along each axis of an N^n row-major array.
void fft_axes(std::vector<Complex>& data, const GridSpec& spec, int sign);
}  // namespace detail

}  // namespace modlab
