#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>

#include "modlab/windows.hpp"

using namespace modlab;

namespace {

constexpr double kPi = 3.14159265358979323846;

double rel_err(double got, double want) { return std::abs(got - want) / std::abs(want); }

double l2_rel_diff(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    double num = 0, den = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        num += std::norm(a[i] - b[i]);
        den += std::norm(b[i]);
    }
    return den == 0 ? std::sqrt(num) : std::sqrt(num / den);
}

SampledFunction random_smooth(const GridSpec& spec, std::uint32_t seed) {
    // random coefficients on low frequencies only, so the guard passes
    std::mt19937 rng(seed);
    std::normal_distribution<double> gauss;
    std::vector<Complex> coeffs(spec.size(), Complex(0, 0));
    Spectrum F(spec, std::move(coeffs));
    for (std::size_t i = 0; i < F.coeffs().size(); ++i) {
        auto xi = F.frequency(i);
        double r = std::abs(xi[0]);
        if (spec.n > 1) r = std::max(r, std::abs(xi[1]));
        if (r <= spec.nyquist() / 8) F.coeffs()[i] = Complex(gauss(rng), gauss(rng));
    }
    return idft(F);
}

}  // namespace

TEST_CASE("grid validation") {
    CHECK_THROWS_AS(GridSpec::make(3, 64, 10.0), std::domain_error);
    CHECK_THROWS_AS(GridSpec::make(1, 48, 10.0), std::domain_error);
    CHECK_THROWS_AS(GridSpec::make(1, 4, 10.0), std::domain_error);
    CHECK_THROWS_AS(GridSpec::make(1, 64, -1.0), std::domain_error);
    GridSpec spec = GridSpec::with_integer_frequencies(1, 64, 2);
    CHECK(spec.lattice_scale == 2);
    CHECK(spec.dxi() == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("sampling descriptors") {
    GridSpec spec = GridSpec::make(1, 64, 16.0);
    SampledFunction g = sample(descriptors::gaussian(1.0), spec);
    CHECK(g.values()[32] == Complex(1, 0));  // x = 0 is a grid node for even N

    SampledFunction z = sample(descriptors::zero(), spec);
    for (const auto& v : z.values()) CHECK(v == Complex(0, 0));

    AnalyticFunction h = descriptors::hat();
    double x = 0.5;
    CHECK(h.eval(std::span<const double>(&x, 1)).real() == doctest::Approx(0.5));

    AnalyticFunction bad{"bad", [](std::span<const double>) {
                             return Complex(std::numeric_limits<double>::quiet_NaN(), 0);
                         }};
    CHECK_THROWS_AS(sample(bad, spec), std::domain_error);
}

TEST_CASE("gaussian transform matches the analytic integral") {
    GridSpec spec = GridSpec::make(1, 2048, 40.0);
    Spectrum F = dft(sample(descriptors::gaussian(1.0), spec));
    // fhat(xi) = sqrt(2 pi) e^{-xi^2/2}
    const double root2pi = std::sqrt(2 * kPi);
    std::size_t center = spec.N / 2;
    CHECK(rel_err(F.coeffs()[center].real(), root2pi) < 1e-8);
    CHECK(std::abs(F.coeffs()[center].imag()) < 1e-12);
    for (int m : {1, 5, 40}) {
        double xi = spec.freq(m);
        CHECK(rel_err(F.coeffs()[center + m].real(), root2pi * std::exp(-xi * xi / 2)) < 1e-8);
    }
}

TEST_CASE("round trip and parseval") {
    for (int dim : {1, 2}) {
        GridSpec spec = dim == 1 ? GridSpec::make(1, 256, 20.0) : GridSpec::make(2, 32, 12.0);
        SampledFunction f = random_smooth(spec, 7u + dim);
        Spectrum F = dft(f);
        SampledFunction back = idft(F);
        CHECK(l2_rel_diff(back.values(), f.values()) < 1e-12);

        // sum |f|^2 dx = (2 pi)^{-n} sum |fhat|^2 dxi
        double cell = dim == 1 ? spec.dx() : spec.dx() * spec.dx();
        double fcell = dim == 1 ? spec.dxi() : spec.dxi() * spec.dxi();
        double space = 0, freq = 0;
        for (const auto& v : f.values()) space += std::norm(v);
        for (const auto& v : F.coeffs()) freq += std::norm(v);
        space *= cell;
        freq *= fcell / std::pow(2 * kPi, dim);
        CHECK(rel_err(freq, space) < 1e-12);
    }
}

TEST_CASE("modulation covariance: e^{ikx} shifts the spectrum") {
    GridSpec spec = GridSpec::with_integer_frequencies(1, 512, 4);
    SampledFunction f = sample(descriptors::gaussian(1.0), spec);
    const int k = 3;
    std::vector<Complex> modulated(f.values().size());
    for (int j = 0; j < spec.N; ++j) {
        modulated[j] = f.values()[j] * std::polar(1.0, k * spec.coord(j));
    }
    Spectrum Fm = dft(SampledFunction(spec, std::move(modulated)));
    Spectrum F = dft(f);
    const int shift = k * spec.lattice_scale;
    double worst = 0;
    for (int i = 0; i + shift < spec.N; ++i) {
        worst = std::max(worst, std::abs(Fm.coeffs()[i + shift] - F.coeffs()[i]));
    }
    CHECK(worst < 1e-11);
}

TEST_CASE("apply_symbol") {
    GridSpec spec = GridSpec::make(1, 128, 16.0);
    SampledFunction f = random_smooth(spec, 11);
    Spectrum F = dft(f);

    Spectrum same = apply_symbol(F, [](std::span<const double>) { return Complex(1, 0); });
    CHECK(l2_rel_diff(same.coeffs(), F.coeffs()) == 0);

    auto chirp = [](std::span<const double> xi) {
        return std::polar(1.0, xi[0] * xi[0]);
    };
    auto unchirp = [](std::span<const double> xi) {
        return std::polar(1.0, -xi[0] * xi[0]);
    };
    Spectrum round = apply_symbol(apply_symbol(F, chirp), unchirp);
    CHECK(l2_rel_diff(round.coeffs(), F.coeffs()) < 1e-14);

    CHECK_THROWS_WITH_AS(
        (void)apply_symbol(F, [](std::span<const double> xi) {
            return xi[0] == 0.0 ? Complex(std::numeric_limits<double>::infinity(), 0)
                                : Complex(1, 0);
        }),
        doctest::Contains("xi = (0"), std::domain_error);
}

TEST_CASE("band projection respects supports and the partition of unity") {
    GridSpec spec = GridSpec::with_integer_frequencies(1, 256, 4);
    Window hat(Window::Kind::Hat);

    SUBCASE("sum over k restores the spectrum") {
        Spectrum F = dft(sample(descriptors::gaussian(1.0), spec));
        std::vector<Complex> acc(F.coeffs().size(), Complex(0, 0));
        for (int k = -34; k <= 34; ++k) {
            Spectrum piece = band_project(F, {k, 0}, hat);
            for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += piece.coeffs()[i];
        }
        CHECK(l2_rel_diff(acc, F.coeffs()) < 1e-13);
    }

    SUBCASE("disjoint supports give zero") {
        std::vector<Complex> coeffs(spec.size(), Complex(0, 0));
        Spectrum F(spec, std::move(coeffs));
        // support inside [-1/4, 1/4]
        for (int m = -1; m <= 1; ++m) F.coeffs()[m + spec.N / 2] = Complex(1, 0);
        Spectrum away = band_project(F, {5, 0}, hat);
        for (const auto& v : away.coeffs()) CHECK(v == Complex(0, 0));
    }

    SUBCASE("flat spectrum exposes the window profile") {
        std::vector<Complex> coeffs(spec.size(), Complex(1, 0));
        Spectrum F(spec, std::move(coeffs));
        Spectrum shaped = band_project(F, {0, 0}, hat);
        for (std::size_t i = 0; i < shaped.coeffs().size(); ++i) {
            double xi = shaped.frequency(i)[0];
            double expected = std::abs(xi) < 1 ? 1 - std::abs(xi) : 0.0;
            CHECK(std::abs(shaped.coeffs()[i].real() - expected) < 1e-12);
        }
    }
}

TEST_CASE("dyadic projection") {
    GridSpec spec = GridSpec::with_integer_frequencies(1, 512, 4);
    DyadicWindow dw;

    SUBCASE("partition reassembles band-limited spectra") {
        Spectrum F = dft(sample(descriptors::gaussian(1.0), spec));
        std::vector<Complex> acc(F.coeffs().size(), Complex(0, 0));
        for (int j = 0; j <= 7; ++j) {  // theta(|xi|/2^7) = 1 well past the gaussian support
            Spectrum piece = dyadic_project(F, j, dw);
            for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += piece.coeffs()[i];
        }
        CHECK(l2_rel_diff(acc, F.coeffs()) < 1e-13);
    }

    SUBCASE("low-frequency spectra miss high bands") {
        std::vector<Complex> coeffs(spec.size(), Complex(0, 0));
        Spectrum F(spec, std::move(coeffs));
        F.coeffs()[spec.N / 2 + 1] = Complex(1, 0);  // |xi| = 1/4, below the j=3 band
        Spectrum piece = dyadic_project(F, 3, dw);
        for (const auto& v : piece.coeffs()) CHECK(v == Complex(0, 0));
    }

    SUBCASE("flat spectrum exposes psi_1") {
        std::vector<Complex> coeffs(spec.size(), Complex(1, 0));
        Spectrum F(spec, std::move(coeffs));
        Spectrum shaped = dyadic_project(F, 1, dw);
        for (std::size_t i = 0; i < shaped.coeffs().size(); ++i) {
            double xi = std::abs(shaped.frequency(i)[0]);
            double expected = dw.theta(xi / 2) - dw.theta(xi);
            CHECK(std::abs(shaped.coeffs()[i].real() - expected) < 1e-12);
        }
    }

    SUBCASE("bands beyond the lattice are rejected") {
        std::vector<Complex> coeffs(spec.size(), Complex(1, 0));
        Spectrum F(spec, std::move(coeffs));
        CHECK_THROWS_AS((void)dyadic_project(F, 12, dw), std::domain_error);
    }
}

TEST_CASE("window partitions of unity hold to 1e-12") {
    CHECK(Window(Window::Kind::Hat).partition_defect() < 1e-12);
    CHECK(Window(Window::Kind::SmoothedHat).partition_defect() < 1e-12);
    DyadicWindow dw;
    CHECK(dw.partition_defect(100.0, 8) < 1e-12);
}

TEST_CASE("csv round trip") {
    for (int dim : {1, 2}) {
        GridSpec spec = dim == 1 ? GridSpec::make(1, 64, 12.0) : GridSpec::make(2, 8, 6.0);
        SampledFunction f = random_smooth(spec, 23u + dim);
        std::stringstream buffer;
        write_csv(f, buffer);
        SampledFunction back = read_csv(buffer);
        CHECK(back.spec().n == spec.n);
        CHECK(back.spec().N == spec.N);
        CHECK(back.spec().L == spec.L);
        CHECK(l2_rel_diff(back.values(), f.values()) == 0);
    }

    std::stringstream bad("x,y\n1,2\n");
    CHECK_THROWS_AS((void)read_csv(bad), std::invalid_argument);
}
