#pragma once

#include <string>

#include "modlab/indices.hpp"

namespace modlab {

enum class EmbeddingDirection {
    LpsToM,    // L^p_s -> M^{p,q}
    MToLps,    // M^{p,q} -> L^p_s
    BesovToM,  // B^{p,q}_s -> M^{p,q}
    MToBesov,  // M^{p,q} -> B^{p,q}_s
};

enum class MultiplierDirection {
    ModulationToLp,  // e^{i|D|^alpha}: M^{p,q}_s -> L^p
    LpToModulation,  // e^{i|D|^alpha}: L^p_s -> M^{p,q}
};

/// Outcome of an embedding predicate. matched_condition names the theorem
/// clause that decided the statement (for failures, the clause whose
/// necessary condition was violated); threshold is the critical smoothness
/// so callers can display distance to criticality.
struct Verdict {
    bool holds = false;
    std::string matched_condition;
    Rational threshold;

    std::string str() const { return holds ? "Embeds" : "DoesNotEmbed"; }
};

enum class Boundedness { Bounded, Unbounded, UnknownGap };

/// Three-valued outcome for the multiplier mapping problem. UnknownGap marks
/// the alpha > 2 strict-clause borderline where the known sufficient
/// condition just fails while the known necessary condition just holds.
struct TriVerdict {
    Boundedness state = Boundedness::Unbounded;
    Rational threshold;
    std::string matched_condition;

    std::string str() const {
        switch (state) {
            case Boundedness::Bounded: return "Bounded";
            case Boundedness::Unbounded: return "Unbounded";
            default: return "UnknownGap";
        }
    }
};

/// B^{p,q}_s <-> M^{p,q} (direction BesovToM or MToBesov).
Verdict embeds_besov_modulation(const ExtendedExponent& p, const ExtendedExponent& q,
                                const Smoothness& s, int n, EmbeddingDirection direction);

/// L^p_s -> M^{p,q}.
Verdict embeds_L_in_M(const ExtendedExponent& p, const ExtendedExponent& q, const Smoothness& s,
                      int n);

/// M^{p,q} -> L^p_s.
Verdict embeds_M_in_L(const ExtendedExponent& p, const ExtendedExponent& q, const Smoothness& s,
                      int n);

/// Shifted statements via the lifting property: MToLps decides
/// M^{p,q}_s -> L^p and LpsToM decides L^p -> M^{p,q}_s, both by delegation
/// with the sign-flipped smoothness. The returned threshold is expressed in
/// the caller's s coordinate.
Verdict embeds_M_shifted(const ExtendedExponent& p, const ExtendedExponent& q, const Smoothness& s,
                         int n, EmbeddingDirection direction);

/// e^{i|D|^alpha}: L^p_s -> L^p; requires 1 < p < infinity and alpha > 1.
Verdict miyachi_Lp_bound(const ExtendedExponent& p, const Smoothness& s, int n,
                         const Rational& alpha);

/// e^{i|D|^alpha} between modulation and L^p-Sobolev scales; alpha >= 0.
/// Exact for 0 <= alpha <= 2; for alpha > 2 the verdict is Bounded under the
/// known sufficient clause, Unbounded under the known necessary condition's
/// failure, UnknownGap in between.
TriVerdict multiplier_verdict(const ExtendedExponent& p, const ExtendedExponent& q,
                              const Smoothness& s, int n, const Rational& alpha,
                              MultiplierDirection direction);

}  // namespace modlab
