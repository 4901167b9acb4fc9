#include "modlab/indices.hpp"

#include <optional>

namespace modlab {

namespace {

const Rational kHalf(1, 2);
const Rational kOne(1);

struct Branches {
    // branch value per region, in family order (1, 2, 3)
    Rational b1, b2, b3;
};

Rational evaluate_family(const IndexPair& pq, bool r1, bool r2, bool r3, const Branches& br,
                         const char* family) {
    std::optional<Rational> value;
    auto take = [&](bool member, const Rational& v) {
        if (!member) return;
        if (value && *value != v) {
            throw std::logic_error(std::string("piecewise index ") + family +
                                   " has disagreeing branches at (" + pq.u.str() + "," + pq.v.str() +
                                   "): " + value->str() + " vs " + v.str());
        }
        value = v;
    };
    take(r1, br.b1);
    take(r2, br.b2);
    take(r3, br.b3);
    if (!value) {
        throw std::logic_error(std::string("point (") + pq.u.str() + "," + pq.v.str() +
                               ") matched no region of family " + family);
    }
    return *value;
}

}  // namespace

RegionSet classify_regions(const IndexPair& pq) {
    const Rational& u = pq.u;        // 1/p
    const Rational& v = pq.v;        // 1/q
    const Rational ud = kOne - u;    // 1/p'
    RegionSet r;
    r.i1_star = min(u, ud) >= v;
    r.i2_star = min(v, kHalf) >= ud;
    r.i3_star = min(v, kHalf) >= u;
    r.i1 = max(u, ud) <= v;
    r.i2 = max(v, kHalf) <= ud;
    r.i3 = max(v, kHalf) <= u;
    return r;
}

Rational nu1(const IndexPair& pq) {
    RegionSet r = classify_regions(pq);
    return evaluate_family(pq, r.i1_star, r.i2_star, r.i3_star,
                           {Rational(0), pq.u + pq.v - kOne, pq.v - pq.u}, "nu1");
}

Rational nu2(const IndexPair& pq) {
    RegionSet r = classify_regions(pq);
    return evaluate_family(pq, r.i1, r.i2, r.i3,
                           {Rational(0), pq.u + pq.v - kOne, pq.v - pq.u}, "nu2");
}

Rational mu1(const IndexPair& pq) {
    RegionSet r = classify_regions(pq);
    return evaluate_family(pq, r.i1_star, r.i2_star, r.i3_star,
                           {-pq.u, pq.v - kOne, pq.v - pq.u - pq.u}, "mu1");
}

Rational mu2(const IndexPair& pq) {
    RegionSet r = classify_regions(pq);
    return evaluate_family(pq, r.i1, r.i2, r.i3,
                           {-pq.u, pq.v - kOne, pq.v - pq.u - pq.u}, "mu2");
}

Rational nu1(const ExtendedExponent& p, const ExtendedExponent& q) { return nu1(IndexPair(p, q)); }
Rational nu2(const ExtendedExponent& p, const ExtendedExponent& q) { return nu2(IndexPair(p, q)); }
Rational mu1(const ExtendedExponent& p, const ExtendedExponent& q) { return mu1(IndexPair(p, q)); }
Rational mu2(const ExtendedExponent& p, const ExtendedExponent& q) { return mu2(IndexPair(p, q)); }

}  // namespace modlab
