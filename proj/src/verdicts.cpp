#include "modlab/verdicts.hpp"

#include <stdexcept>

namespace modlab {

namespace {

void require_dimension(int n) {
    if (n < 1) throw std::domain_error("dimension must satisfy n >= 1");
}

struct Clause {
    std::string label;
    bool strict;  // strict inequality required for the smoothness condition
};

// Theorem deciding L^p_s -> M^{p,q}: exactly one clause governs each (p,q).
Clause governing_clause_L_to_M(const ExtendedExponent& p, const ExtendedExponent& q,
                               const char* prefix, int offset) {
    auto name = [&](int i) { return std::string(prefix) + "(" + std::to_string(i + offset) + ")"; };
    if (p.is_one()) {
        if (q.is_infinite()) return {name(3), false};
        return {name(4), true};
    }
    if (q >= p) return {name(1), false};
    return {name(2), true};
}

// Theorem deciding M^{p,q} -> L^p_s.
Clause governing_clause_M_to_L(const ExtendedExponent& p, const ExtendedExponent& q,
                               const char* prefix, int offset) {
    auto name = [&](int i) { return std::string(prefix) + "(" + std::to_string(i + offset) + ")"; };
    if (p.is_infinite()) {
        if (q.is_one()) return {name(3), false};
        return {name(4), true};
    }
    if (q <= p) return {name(1), false};
    return {name(2), true};
}

Verdict decide(const Clause& clause, const Smoothness& s, const Rational& threshold,
               bool lower_bound) {
    // lower_bound: condition is s >= / > threshold; otherwise s <= / <.
    bool ok = lower_bound ? (clause.strict ? s > threshold : s >= threshold)
                          : (clause.strict ? s < threshold : s <= threshold);
    return Verdict{ok, clause.label, threshold};
}

}  // namespace

Verdict embeds_besov_modulation(const ExtendedExponent& p, const ExtendedExponent& q,
                                const Smoothness& s, int n, EmbeddingDirection direction) {
    require_dimension(n);
    switch (direction) {
        case EmbeddingDirection::BesovToM: {
            Rational threshold = Rational(n) * nu1(p, q);
            return Verdict{s >= threshold, "Thm1.1(1)", threshold};
        }
        case EmbeddingDirection::MToBesov: {
            Rational threshold = Rational(n) * nu2(p, q);
            return Verdict{s <= threshold, "Thm1.1(2)", threshold};
        }
        default:
            throw std::domain_error("embeds_besov_modulation expects a Besov direction");
    }
}

Verdict embeds_L_in_M(const ExtendedExponent& p, const ExtendedExponent& q, const Smoothness& s,
                      int n) {
    require_dimension(n);
    Clause clause = governing_clause_L_to_M(p, q, "Thm1.3", 0);
    return decide(clause, s, Rational(n) * nu1(p, q), /*lower_bound=*/true);
}

Verdict embeds_M_in_L(const ExtendedExponent& p, const ExtendedExponent& q, const Smoothness& s,
                      int n) {
    require_dimension(n);
    Clause clause = governing_clause_M_to_L(p, q, "Thm1.4", 0);
    return decide(clause, s, Rational(n) * nu2(p, q), /*lower_bound=*/false);
}

Verdict embeds_M_shifted(const ExtendedExponent& p, const ExtendedExponent& q, const Smoothness& s,
                         int n, EmbeddingDirection direction) {
    require_dimension(n);
    Verdict inner;
    switch (direction) {
        case EmbeddingDirection::MToLps:
            inner = embeds_M_in_L(p, q, -s, n);
            break;
        case EmbeddingDirection::LpsToM:
            inner = embeds_L_in_M(p, q, -s, n);
            break;
        default:
            throw std::domain_error("embeds_M_shifted expects an L^p direction");
    }
    inner.threshold = -inner.threshold;  // back to the caller's s coordinate
    return inner;
}

Verdict miyachi_Lp_bound(const ExtendedExponent& p, const Smoothness& s, int n,
                         const Rational& alpha) {
    require_dimension(n);
    if (p.is_one() || p.is_infinite()) {
        throw std::domain_error("miyachi_Lp_bound requires 1 < p < infty");
    }
    if (alpha <= Rational(1)) {
        throw std::domain_error("miyachi_Lp_bound requires alpha > 1");
    }
    Rational threshold = alpha * Rational(n) * abs(p.reciprocal() - Rational(1, 2));
    return Verdict{s >= threshold, "ThmA", threshold};
}

TriVerdict multiplier_verdict(const ExtendedExponent& p, const ExtendedExponent& q,
                              const Smoothness& s, int n, const Rational& alpha,
                              MultiplierDirection direction) {
    require_dimension(n);
    if (alpha < Rational(0)) throw std::domain_error("multiplier exponent alpha must be >= 0");

    const bool high_order = alpha > Rational(2);
    Rational base;
    Clause clause;
    if (direction == MultiplierDirection::ModulationToLp) {
        base = -(Rational(n) * nu2(p, q));
        clause = governing_clause_M_to_L(p, q, high_order ? "Cor5.4" : "Cor5.2", 0);
    } else {
        base = Rational(n) * nu1(p, q);
        clause = governing_clause_L_to_M(p, q, high_order ? "Cor5.4" : "Cor5.2", 4);
    }

    Rational threshold = base;
    if (high_order) {
        threshold += (alpha - Rational(2)) * Rational(n) * abs(p.reciprocal() - Rational(1, 2));
    }

    bool sufficient = clause.strict ? s > threshold : s >= threshold;
    if (sufficient) return TriVerdict{Boundedness::Bounded, threshold, clause.label};
    if (!high_order) return TriVerdict{Boundedness::Unbounded, threshold, clause.label};
    // alpha > 2: Bounded and the necessary condition of the gap theorem part
    // ways only on strict clauses at s == threshold.
    if (s < threshold) return TriVerdict{Boundedness::Unbounded, threshold, "Thm5.5"};
    return TriVerdict{Boundedness::UnknownGap, threshold, clause.label + "/Thm5.5"};
}

}  // namespace modlab
