#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "modlab/verdicts.hpp"

using namespace modlab;

namespace {

ExtendedExponent exp_of(std::int64_t num, std::int64_t den = 1) {
    return ExtendedExponent::from_value(Rational(num, den));
}

const ExtendedExponent kInf = ExtendedExponent::infinity();

}  // namespace

TEST_CASE("besov-modulation embedding (sharp both ways)") {
    Verdict v = embeds_besov_modulation(exp_of(2), exp_of(2), Rational(0), 1,
                                        EmbeddingDirection::BesovToM);
    CHECK(v.holds);
    CHECK(v.matched_condition == "Thm1.1(1)");
    CHECK(v.threshold == Rational(0));

    // equality is allowed at the threshold
    v = embeds_besov_modulation(exp_of(1), exp_of(2), Rational(1, 2), 1,
                                EmbeddingDirection::BesovToM);
    CHECK(v.holds);

    // -0.4 > -1/2, so the reverse direction fails
    v = embeds_besov_modulation(exp_of(1), exp_of(2), Rational(-2, 5), 1,
                                EmbeddingDirection::MToBesov);
    CHECK_FALSE(v.holds);
    CHECK(v.threshold == Rational(-1, 2));
}

TEST_CASE("L^p_s into M^{p,q}") {
    Verdict v = embeds_L_in_M(exp_of(2), exp_of(2), Rational(0), 1);
    CHECK(v.holds);
    CHECK(v.matched_condition == "Thm1.3(1)");

    // p > q requires strict inequality at the threshold 1/2
    v = embeds_L_in_M(exp_of(2), exp_of(1), Rational(1, 2), 1);
    CHECK_FALSE(v.holds);
    CHECK(v.matched_condition == "Thm1.3(2)");
    CHECK(v.threshold == Rational(1, 2));
    CHECK(embeds_L_in_M(exp_of(2), exp_of(1), Rational(51, 100), 1).holds);

    v = embeds_L_in_M(exp_of(1), kInf, Rational(0), 1);
    CHECK(v.holds);
    CHECK(v.matched_condition == "Thm1.3(3)");

    // p = 1, q finite is strict
    CHECK_FALSE(embeds_L_in_M(exp_of(1), exp_of(2), Rational(1, 2), 1).holds);
    CHECK(embeds_L_in_M(exp_of(1), exp_of(2), Rational(3, 5), 1).holds);
}

TEST_CASE("M^{p,q} into L^p_s") {
    Verdict v = embeds_M_in_L(exp_of(2), exp_of(1), Rational(0), 1);
    CHECK(v.holds);
    CHECK(v.matched_condition == "Thm1.4(1)");

    v = embeds_M_in_L(exp_of(2), exp_of(4), Rational(-1, 4), 1);
    CHECK_FALSE(v.holds);
    CHECK(v.matched_condition == "Thm1.4(2)");
    CHECK(v.threshold == Rational(-1, 4));
    CHECK(embeds_M_in_L(exp_of(2), exp_of(4), Rational(-3, 10), 1).holds);

    v = embeds_M_in_L(kInf, exp_of(1), Rational(0), 1);
    CHECK(v.holds);
    CHECK(v.matched_condition == "Thm1.4(3)");

    // p = infty, q != 1 is strict
    CHECK_FALSE(embeds_M_in_L(kInf, exp_of(2), Rational(-1, 2), 1).holds);
    CHECK(embeds_M_in_L(kInf, exp_of(2), Rational(-3, 5), 1).holds);
}

TEST_CASE("shifted statements via lifting") {
    // M^{2,1} -> L^2 at s = 0
    CHECK(embeds_M_shifted(exp_of(2), exp_of(1), Rational(0), 1, EmbeddingDirection::MToLps).holds);

    // L^1 -> M^{1,2}_{-1/2}: needs strict inequality, fails at the threshold
    Verdict v =
        embeds_M_shifted(exp_of(1), exp_of(2), Rational(-1, 2), 1, EmbeddingDirection::LpsToM);
    CHECK_FALSE(v.holds);
    CHECK(v.threshold == Rational(-1, 2));

    // M^{infty,2}_{1/2} -> L^infty, i.e. M^{infty,2} -> L^infty_{-1/2}
    v = embeds_M_shifted(kInf, exp_of(2), Rational(1, 2), 1, EmbeddingDirection::MToLps);
    CHECK_FALSE(v.holds);
    CHECK(v.matched_condition == "Thm1.4(4)");
}

TEST_CASE("L^p -> L^p multiplier bound") {
    CHECK(miyachi_Lp_bound(exp_of(2), Rational(0), 1, Rational(2)).holds);
    CHECK_FALSE(miyachi_Lp_bound(exp_of(2), Rational(-1, 100), 1, Rational(2)).holds);
    Verdict v = miyachi_Lp_bound(exp_of(4), Rational(1, 2), 1, Rational(2));
    CHECK(v.holds);
    CHECK(v.threshold == Rational(1, 2));

    CHECK_THROWS_AS(miyachi_Lp_bound(exp_of(1), Rational(0), 1, Rational(2)), std::domain_error);
    CHECK_THROWS_AS(miyachi_Lp_bound(kInf, Rational(0), 1, Rational(2)), std::domain_error);
    CHECK_THROWS_AS(miyachi_Lp_bound(exp_of(2), Rational(0), 1, Rational(1)), std::domain_error);
}

TEST_CASE("multiplier verdict across the alpha ranges") {
    TriVerdict v = multiplier_verdict(exp_of(2), exp_of(2), Rational(0), 1, Rational(2),
                                      MultiplierDirection::ModulationToLp);
    CHECK(v.state == Boundedness::Bounded);
    CHECK(v.threshold == Rational(0));
    CHECK(v.matched_condition == "Cor5.2(1)");

    // alpha > 2, p < q at the exact threshold: sufficient condition is
    // strict, necessary condition is weak, so the truth is open
    v = multiplier_verdict(exp_of(2), exp_of(4), Rational(1, 4), 1, Rational(3),
                           MultiplierDirection::ModulationToLp);
    CHECK(v.state == Boundedness::UnknownGap);
    CHECK(v.threshold == Rational(1, 4));

    v = multiplier_verdict(exp_of(1), exp_of(1), Rational(0), 1, Rational(3),
                           MultiplierDirection::ModulationToLp);
    CHECK(v.state == Boundedness::Unbounded);
    CHECK(v.threshold == Rational(1, 2));

    CHECK_THROWS_AS(multiplier_verdict(exp_of(2), exp_of(2), Rational(0), 1, Rational(-1),
                                       MultiplierDirection::ModulationToLp),
                    std::domain_error);

    // the L-to-M direction mirrors Thm 1.3's clause structure
    v = multiplier_verdict(exp_of(2), exp_of(4), Rational(0), 1, Rational(2),
                           MultiplierDirection::LpToModulation);
    CHECK(v.state == Boundedness::Bounded);
    CHECK(v.matched_condition == "Cor5.2(5)");
}

TEST_CASE("properties: monotonicity, duality and corollary consistency") {
    std::mt19937 rng(20240911);
    std::uniform_int_distribution<int> den(1, 12);
    std::uniform_int_distribution<int> snum(-24, 24);
    for (int trial = 0; trial < 2000; ++trial) {
        int dp = den(rng), dq = den(rng);
        std::uniform_int_distribution<int> nump(0, dp), numq(0, dq);
        auto p = ExtendedExponent::from_reciprocal(Rational(nump(rng), dp));
        auto q = ExtendedExponent::from_reciprocal(Rational(numq(rng), dq));
        Smoothness s(snum(rng), 12);

        // monotonicity in s
        if (embeds_L_in_M(p, q, s, 1).holds) {
            CHECK(embeds_L_in_M(p, q, s + Rational(1, 7), 1).holds);
        }
        if (embeds_M_in_L(p, q, s, 1).holds) {
            CHECK(embeds_M_in_L(p, q, s - Rational(1, 7), 1).holds);
        }

        // corollary consistency: embedding implies the weak necessary
        // condition; strict sufficiency always embeds
        if (embeds_L_in_M(p, q, s, 1).holds) CHECK(s >= nu1(p, q));
        if (s > nu1(p, q)) CHECK(embeds_L_in_M(p, q, s, 1).holds);
        if (embeds_M_in_L(p, q, s, 1).holds) CHECK(s <= nu2(p, q));
        if (s < nu2(p, q)) CHECK(embeds_M_in_L(p, q, s, 1).holds);

        // interior duality between the two main theorems
        if (!p.is_one() && !p.is_infinite() && !q.is_one() && !q.is_infinite()) {
            CHECK(embeds_M_in_L(p, q, s, 1).holds ==
                  embeds_L_in_M(p.dual(), q.dual(), -s, 1).holds);
        }

        // TriVerdict coherence for alpha > 2
        TriVerdict tv = multiplier_verdict(p, q, s, 1, Rational(5, 2),
                                           MultiplierDirection::ModulationToLp);
        if (tv.state == Boundedness::UnknownGap) {
            CHECK(s == tv.threshold);
            bool strict_clause = (!p.is_infinite() && p < q) || (p.is_infinite() && !q.is_one());
            CHECK(strict_clause);
        }
    }
}
