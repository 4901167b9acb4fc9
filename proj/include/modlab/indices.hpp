#pragma once

#include "modlab/exponents.hpp"

namespace modlab {

/// Closed-region membership on the unit square of (1/p, 1/q).
///
/// The starred family drives nu1/mu1, the unstarred family nu2/mu2:
///   I1*: min(1/p, 1/p') >= 1/q      I1: max(1/p, 1/p') <= 1/q
///   I2*: min(1/q, 1/2) >= 1/p'      I2: max(1/q, 1/2) <= 1/p'
///   I3*: min(1/q, 1/2) >= 1/p       I3: max(1/q, 1/2) <= 1/p
///
/// The three closed regions of each family cover the square; boundary points
/// belong to every region whose inequalities they satisfy.
struct RegionSet {
    bool i1_star = false;
    bool i2_star = false;
    bool i3_star = false;
    bool i1 = false;
    bool i2 = false;
    bool i3 = false;
};

RegionSet classify_regions(const IndexPair& pq);

/// Index functions of the embedding theory, dimensionless (callers multiply
/// by the dimension n). Piecewise rational on the region families; the
/// evaluators compute every matched branch and throw std::logic_error if two
/// matched branches ever disagree, making well-definedness a checked
/// property instead of an assumption.
Rational nu1(const ExtendedExponent& p, const ExtendedExponent& q);
Rational nu2(const ExtendedExponent& p, const ExtendedExponent& q);
Rational mu1(const ExtendedExponent& p, const ExtendedExponent& q);
Rational mu2(const ExtendedExponent& p, const ExtendedExponent& q);

Rational nu1(const IndexPair& pq);
Rational nu2(const IndexPair& pq);
Rational mu1(const IndexPair& pq);
Rational mu2(const IndexPair& pq);

}  // namespace modlab
