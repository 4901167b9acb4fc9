#include "modlab/grid.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace modlab {

namespace {

constexpr double kPi = 3.14159265358979323846;

bool is_pow2(int v) { return v > 0 && (v & (v - 1)) == 0; }

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

GridSpec GridSpec::make(int dim, int samples, double box) {
    if (dim != 1 && dim != 2) throw std::domain_error("grid dimension must be 1 or 2");
    if (samples < 8 || !is_pow2(samples)) {
        throw std::domain_error("grid size N must be a power of two with N >= 8");
    }
    if (!(box > 0) || !std::isfinite(box)) throw std::domain_error("box length L must be positive");
    GridSpec spec;
    spec.n = dim;
    spec.N = samples;
    spec.L = box;
    // recognize boxes commensurate with the unit frequency lattice
    double m = box / (2 * kPi);
    double rounded = std::round(m);
    if (rounded >= 1 && std::abs(m - rounded) < 1e-9 * rounded) {
        spec.lattice_scale = static_cast<int>(rounded);
    }
    return spec;
}

GridSpec GridSpec::with_integer_frequencies(int dim, int samples, int m) {
    if (m < 1) throw std::domain_error("lattice scale must be a positive integer");
    GridSpec spec = make(dim, samples, 2 * kPi * m);
    spec.lattice_scale = m;
    return spec;
}

SampledFunction::SampledFunction(GridSpec spec, std::vector<Complex> values)
    : spec_(spec), values_(std::move(values)) {
    if (values_.size() != spec_.size()) {
        throw std::invalid_argument("sample count does not match the grid");
    }
}

Spectrum::Spectrum(GridSpec spec, std::vector<Complex> coeffs)
    : spec_(spec), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() != spec_.size()) {
        throw std::invalid_argument("coefficient count does not match the grid");
    }
}

std::array<double, 2> Spectrum::frequency(std::size_t index) const {
    if (spec_.n == 1) {
        return {spec_.freq(static_cast<int>(index) - spec_.N / 2), 0.0};
    }
    int i0 = static_cast<int>(index) / spec_.N;
    int i1 = static_cast<int>(index) % spec_.N;
    return {spec_.freq(i0 - spec_.N / 2), spec_.freq(i1 - spec_.N / 2)};
}

namespace detail {

namespace {

const std::vector<Complex>& twiddles(std::size_t n) {
    thread_local std::map<std::size_t, std::vector<Complex>> cache;
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    std::vector<Complex> tw(n / 2);
    for (std::size_t k = 0; k < n / 2; ++k) {
        double a = -2.0 * kPi * static_cast<double>(k) / static_cast<double>(n);
        tw[k] = Complex(std::cos(a), std::sin(a));
    }
    return cache.emplace(n, std::move(tw)).first->second;
}

}  // namespace

void fft_pow2(std::span<Complex> a, int sign) {
    const std::size_t n = a.size();
    if (n == 0 || (n & (n - 1)) != 0) throw std::invalid_argument("fft length must be a power of two");
    if (n == 1) return;
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    const auto& tw = twiddles(n);
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t half = len / 2;
        const std::size_t step = n / len;
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t k = 0; k < half; ++k) {
                Complex w = tw[k * step];
                if (sign > 0) w = std::conj(w);
                Complex u = a[i + k];
                Complex v = a[i + k + half] * w;
                a[i + k] = u + v;
                a[i + k + half] = u - v;
            }
        }
    }
}

void fft_axes(std::vector<Complex>& data, const GridSpec& spec, int sign) {
    const int N = spec.N;
    if (spec.n == 1) {
        fft_pow2(data, sign);
        return;
    }
    // rows
    for (int r = 0; r < N; ++r) {
        fft_pow2(std::span<Complex>(data.data() + static_cast<std::size_t>(r) * N, N), sign);
    }
    // columns
    std::vector<Complex> col(N);
    for (int c = 0; c < N; ++c) {
        for (int r = 0; r < N; ++r) col[r] = data[static_cast<std::size_t>(r) * N + c];
        fft_pow2(col, sign);
        for (int r = 0; r < N; ++r) data[static_cast<std::size_t>(r) * N + c] = col[r];
    }
}

}  // namespace detail

namespace {

inline int fft_index(int m, int N) { return m >= 0 ? m : m + N; }
inline double parity_sign(int m) { return (m % 2) != 0 ? -1.0 : 1.0; }

}  // namespace

Spectrum dft(const SampledFunction& f) {
    const GridSpec& spec = f.spec();
    std::vector<Complex> work = f.values();
    detail::fft_axes(work, spec, -1);
    const int N = spec.N;
    const double weight = spec.n == 1 ? spec.dx() : spec.dx() * spec.dx();
    std::vector<Complex> coeffs(spec.size());
    if (spec.n == 1) {
        for (int i = 0; i < N; ++i) {
            int m = i - N / 2;
            coeffs[i] = weight * parity_sign(m) * work[fft_index(m, N)];
        }
    } else {
        for (int i0 = 0; i0 < N; ++i0) {
            int m0 = i0 - N / 2;
            for (int i1 = 0; i1 < N; ++i1) {
                int m1 = i1 - N / 2;
                coeffs[static_cast<std::size_t>(i0) * N + i1] =
                    weight * parity_sign(m0 + m1) *
                    work[static_cast<std::size_t>(fft_index(m0, N)) * N + fft_index(m1, N)];
            }
        }
    }
    return Spectrum(spec, std::move(coeffs));
}

SampledFunction idft(const Spectrum& F) {
    const GridSpec& spec = F.spec();
    const int N = spec.N;
    std::vector<Complex> work(spec.size());
    if (spec.n == 1) {
        for (int i = 0; i < N; ++i) {
            int m = i - N / 2;
            work[fft_index(m, N)] = parity_sign(m) * F.coeffs()[i];
        }
    } else {
        for (int i0 = 0; i0 < N; ++i0) {
            int m0 = i0 - N / 2;
            for (int i1 = 0; i1 < N; ++i1) {
                int m1 = i1 - N / 2;
                work[static_cast<std::size_t>(fft_index(m0, N)) * N + fft_index(m1, N)] =
                    parity_sign(m0 + m1) * F.coeffs()[static_cast<std::size_t>(i0) * N + i1];
            }
        }
    }
    detail::fft_axes(work, spec, +1);
    const double scale = spec.n == 1 ? 1.0 / spec.L : 1.0 / (spec.L * spec.L);
    for (auto& v : work) v *= scale;
    return SampledFunction(spec, std::move(work));
}

Spectrum apply_symbol(const Spectrum& F,
                      const std::function<Complex(std::span<const double>)>& symbol) {
    std::vector<Complex> coeffs(F.coeffs().size());
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        auto xi = F.frequency(i);
        Complex s = symbol(std::span<const double>(xi.data(), F.spec().n));
        if (!std::isfinite(s.real()) || !std::isfinite(s.imag())) {
            std::ostringstream msg;
            msg << "symbol is not finite at xi = (" << xi[0];
            if (F.spec().n > 1) msg << ", " << xi[1];
            msg << ")";
            throw std::domain_error(msg.str());
        }
        coeffs[i] = F.coeffs()[i] * s;
    }
    return Spectrum(F.spec(), std::move(coeffs));
}

double aliasing_fraction(const Spectrum& F) {
    const double guard = F.spec().nyquist() / 2;
    double total = 0;
    double outside = 0;
    for (std::size_t i = 0; i < F.coeffs().size(); ++i) {
        double m = std::norm(F.coeffs()[i]);
        total += m;
        auto xi = F.frequency(i);
        double linf = std::abs(xi[0]);
        if (F.spec().n > 1) linf = std::max(linf, std::abs(xi[1]));
        if (linf > guard) outside += m;
    }
    return total > 0 ? outside / total : 0.0;
}

void require_alias_free(const Spectrum& F, double tolerance) {
    double fraction = aliasing_fraction(F);
    if (fraction >= tolerance) {
        std::ostringstream msg;
        msg << "aliasing guard violated: fraction " << fraction << " of the spectral mass lies "
            << "outside |xi| <= nyquist/2; increase N or decrease L";
        throw AliasingError(msg.str(), fraction);
    }
}

SampledFunction sample(const AnalyticFunction& descriptor, const GridSpec& spec) {
    std::vector<Complex> values(spec.size());
    std::array<double, 2> x{0, 0};
    if (spec.n == 1) {
        for (int j = 0; j < spec.N; ++j) {
            x[0] = spec.coord(j);
            values[j] = descriptor.eval(std::span<const double>(x.data(), 1));
        }
    } else {
        for (int j0 = 0; j0 < spec.N; ++j0) {
            x[0] = spec.coord(j0);
            for (int j1 = 0; j1 < spec.N; ++j1) {
                x[1] = spec.coord(j1);
                values[static_cast<std::size_t>(j0) * spec.N + j1] =
                    descriptor.eval(std::span<const double>(x.data(), 2));
            }
        }
    }
    for (const auto& v : values) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
            throw std::domain_error("descriptor '" + descriptor.name +
                                    "' evaluated to a non-finite value");
        }
    }
    return SampledFunction(spec, std::move(values));
}

namespace descriptors {

AnalyticFunction zero() {
    return {"zero", [](std::span<const double>) { return Complex(0, 0); }};
}

AnalyticFunction gaussian(double sigma) {
    if (!(sigma > 0)) throw std::domain_error("gaussian width must be positive");
    return {"gaussian", [sigma](std::span<const double> x) {
                double r2 = 0;
                for (double c : x) r2 += c * c;
                return Complex(std::exp(-r2 / (2 * sigma * sigma)), 0);
            }};
}

AnalyticFunction hat() {
    return {"hat", [](std::span<const double> x) {
                double v = 1;
                for (double c : x) v *= std::max(0.0, 1.0 - std::abs(c));
                return Complex(v, 0);
            }};
}

AnalyticFunction bump(double radius) {
    if (!(radius > 0)) throw std::domain_error("bump radius must be positive");
    return {"bump", [radius](std::span<const double> x) {
                double v = 1;
                for (double c : x) {
                    double t = c / radius;
                    if (std::abs(t) >= 1) return Complex(0, 0);
                    double u = 1 - t * t;
                    v *= u * u * u;
                }
                return Complex(v, 0);
            }};
}

AnalyticFunction modulated_sum(AnalyticFunction base, std::vector<Complex> coefficients,
                               std::vector<std::array<double, 2>> modulations,
                               std::vector<std::array<double, 2>> translations) {
    if (coefficients.size() != modulations.size() || coefficients.size() != translations.size()) {
        throw std::invalid_argument("modulated_sum requires equally long coefficient lists");
    }
    auto eval = [base = std::move(base), c = std::move(coefficients), mod = std::move(modulations),
                 tr = std::move(translations)](std::span<const double> x) {
        Complex acc(0, 0);
        std::array<double, 2> shifted{0, 0};
        for (std::size_t j = 0; j < c.size(); ++j) {
            double phase = 0;
            for (std::size_t d = 0; d < x.size(); ++d) {
                phase += mod[j][d] * x[d];
                shifted[d] = x[d] - tr[j][d];
            }
            acc += c[j] * std::polar(1.0, phase) *
                   base.eval(std::span<const double>(shifted.data(), x.size()));
        }
        return acc;
    };
    return {"modulated_sum", std::move(eval)};
}

}  // namespace descriptors

void write_csv(const SampledFunction& f, std::ostream& out) {
    const GridSpec& spec = f.spec();
    out << "n,N,L\n" << spec.n << "," << spec.N << "," << format_double(spec.L) << "\n";
    out << (spec.n == 1 ? "i0,re,im\n" : "i0,i1,re,im\n");
    for (std::size_t i = 0; i < f.values().size(); ++i) {
        const Complex& v = f.values()[i];
        if (spec.n == 1) {
            out << i;
        } else {
            out << i / static_cast<std::size_t>(spec.N) << "," << i % static_cast<std::size_t>(spec.N);
        }
        out << "," << format_double(v.real()) << "," << format_double(v.imag()) << "\n";
    }
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur.push_back(ch);
        }
    }
    fields.push_back(cur);
    return fields;
}

double parse_number(const std::string& s) {
    try {
        std::size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("malformed number in csv: '" + s + "'");
    }
}

}  // namespace

SampledFunction read_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || split_csv_line(line) != std::vector<std::string>{"n", "N", "L"}) {
        throw std::invalid_argument("csv header must start with 'n,N,L'");
    }
    if (!std::getline(in, line)) throw std::invalid_argument("csv missing grid row");
    auto grid_fields = split_csv_line(line);
    if (grid_fields.size() != 3) throw std::invalid_argument("csv grid row must have 3 fields");
    GridSpec spec = GridSpec::make(static_cast<int>(parse_number(grid_fields[0])),
                                   static_cast<int>(parse_number(grid_fields[1])),
                                   parse_number(grid_fields[2]));
    std::string expected_cols = spec.n == 1 ? "i0,re,im" : "i0,i1,re,im";
    if (!std::getline(in, line) || split_csv_line(line) != split_csv_line(expected_cols)) {
        throw std::invalid_argument("csv column header must be '" + expected_cols + "'");
    }
    std::vector<Complex> values(spec.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::getline(in, line)) throw std::invalid_argument("csv has fewer rows than the grid");
        auto fields = split_csv_line(line);
        std::size_t want = spec.n == 1 ? 3 : 4;
        if (fields.size() != want) throw std::invalid_argument("csv row has the wrong field count");
        std::size_t idx;
        if (spec.n == 1) {
            idx = static_cast<std::size_t>(parse_number(fields[0]));
        } else {
            idx = static_cast<std::size_t>(parse_number(fields[0])) * spec.N +
                  static_cast<std::size_t>(parse_number(fields[1]));
        }
        if (idx != i) throw std::invalid_argument("csv rows must be in row-major index order");
        values[i] = Complex(parse_number(fields[fields.size() - 2]),
                            parse_number(fields[fields.size() - 1]));
    }
    return SampledFunction(spec, std::move(values));
}

}  // namespace modlab
