#include "cubiccanon/affine.hpp"

#include <cmath>
#include <limits>

#include "cubiccanon/errors.hpp"
#include "cubiccanon/tolerances.hpp"

namespace cubiccanon {

AffineMap AffineMap::make(double A, double B, double R, double C, double D, double S) {
    AffineMap m{A, B, R, C, D, S};
    if (std::abs(m.det()) < kDetFloor) throw SingularMapError();
    return m;
}

SubstitutionMap AffineMap::to_substitution() const {
    Poly2 p, q;
    p.set_coeff(1, 0, A);
    p.set_coeff(0, 1, B);
    p.set_coeff(0, 0, R);
    q.set_coeff(1, 0, C);
    q.set_coeff(0, 1, D);
    q.set_coeff(0, 0, S);
    return {p, q};
}

double AffineMap::condition_number() const {
    const double t = A * A + B * B + C * C + D * D;
    const double d = std::abs(det());
    const double disc = std::sqrt(std::max(0.0, t * t - 4.0 * d * d));
    const double smax2 = (t + disc) / 2.0;
    const double smin2 = (t - disc) / 2.0;
    if (smin2 <= 0.0) return std::numeric_limits<double>::infinity();
    return std::sqrt(smax2 / smin2);
}

AffineMap affine_compose(const AffineMap& a, const AffineMap& b) {
    AffineMap m;
    m.A = a.A * b.A + a.B * b.C;
    m.B = a.A * b.B + a.B * b.D;
    m.R = a.A * b.R + a.B * b.S + a.R;
    m.C = a.C * b.A + a.D * b.C;
    m.D = a.C * b.B + a.D * b.D;
    m.S = a.C * b.R + a.D * b.S + a.S;
    return m;
}

AffineMap affine_invert(const AffineMap& a) {
    const double d = a.det();
    if (std::abs(d) < kDetFloor) throw SingularMapError();
    AffineMap inv;
    inv.A = a.D / d;
    inv.B = -a.B / d;
    inv.C = -a.C / d;
    inv.D = a.A / d;
    inv.R = -(inv.A * a.R + inv.B * a.S);
    inv.S = -(inv.C * a.R + inv.D * a.S);
    return inv;
}

Poly2 compose(const Poly2& f, const AffineMap& a, double chop_eps) {
    return compose(f, a.to_substitution(), chop_eps);
}

}  // namespace cubiccanon
