#ifndef CUBICCANON_AFFINE_HPP
#define CUBICCANON_AFFINE_HPP

#include "cubiccanon/poly2.hpp"

namespace cubiccanon {

/// Element of the real affine group acting by substitution
/// <Ax + By + R, Cx + Dy + S>, with AD - BC bounded away from zero.
struct AffineMap {
    double A = 1.0, B = 0.0, R = 0.0;
    double C = 0.0, D = 1.0, S = 0.0;

    static AffineMap identity() { return {}; }

    /// Throws SingularMapError when |AD - BC| < kDetFloor.
    static AffineMap make(double A, double B, double R, double C, double D, double S);

    double det() const { return A * D - B * C; }
    SubstitutionMap to_substitution() const;

    /// Ratio of the singular values of the linear part.
    double condition_number() const;
};

/// Map applying `a` first, then `b`:
/// compose(f, affine_compose(a, b)) == compose(compose(f, a), b).
AffineMap affine_compose(const AffineMap& a, const AffineMap& b);

/// Exact 2x2 affine inverse; throws SingularMapError below the det floor.
AffineMap affine_invert(const AffineMap& a);

Poly2 compose(const Poly2& f, const AffineMap& a, double chop_eps = kChopEps);

}  // namespace cubiccanon

#endif
