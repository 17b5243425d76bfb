#include "cubiccanon/cubic_form.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "cubiccanon/errors.hpp"
#include "cubiccanon/univariate.hpp"

namespace cubiccanon {

const char* tag_name(CubicFormTag tag) {
    switch (tag) {
        case CubicFormTag::kXXY2Plus: return "x^3+x*y^2";
        case CubicFormTag::kXXY2Minus: return "x^3-x*y^2";
        case CubicFormTag::kX2Y: return "x^2*y";
        case CubicFormTag::kX3: return "x^3";
    }
    return "?";
}

Poly2 canonical_form_poly(CubicFormTag tag) {
    Poly2 p;
    switch (tag) {
        case CubicFormTag::kXXY2Plus:
            p.set_coeff(3, 0, 1.0);
            p.set_coeff(1, 2, 1.0);
            break;
        case CubicFormTag::kXXY2Minus:
            p.set_coeff(3, 0, 1.0);
            p.set_coeff(1, 2, -1.0);
            break;
        case CubicFormTag::kX2Y:
            p.set_coeff(2, 1, 1.0);
            break;
        case CubicFormTag::kX3:
            p.set_coeff(3, 0, 1.0);
            break;
    }
    return p;
}

double binary_cubic_discriminant(double a, double b, double c, double d) {
    return 18.0 * a * b * c * d - 4.0 * b * b * b * d + b * b * c * c - 4.0 * a * c * c * c -
           27.0 * a * a * d * d;
}

namespace {

struct Coeffs {
    double a, b, c, d;  // x^3, x^2y, xy^2, y^3
    double scale() const { return std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)}); }
};

Coeffs read_coeffs(const Poly2& h) {
    return {h.coeff(3, 0), h.coeff(2, 1), h.coeff(1, 2), h.coeff(0, 3)};
}

// Linear map (R = S = 0) from explicit entries, normalized so the
// largest entry has magnitude 1.
AffineMap linear_map(double A, double B, double C, double D) {
    const double m = std::max({std::abs(A), std::abs(B), std::abs(C), std::abs(D)});
    return AffineMap::make(A / m, B / m, 0.0, C / m, D / m, 0.0);
}

double distance_from_identity(const AffineMap& L) {
    return std::max({std::abs(L.A - 1.0), std::abs(L.B), std::abs(L.C), std::abs(L.D - 1.0)});
}

// Roots n of a*n^3 + b*n^2 + c*n + d; the linear factors of h are x - n*y.
UniPoly factor_slope_poly(const Coeffs& k) { return UniPoly({k.d, k.c, k.b, k.a}); }

FormReduction finish(CubicFormTag tag, const Poly2& h, AffineMap linmap) {
    const Poly2 image = compose(h, linmap, 0.0);
    const Poly2 canon = canonical_form_poly(tag);
    const double s = tag == CubicFormTag::kX2Y ? image.coeff(2, 1) : image.coeff(3, 0);
    const double denom = std::max(image.max_abs_coeff(), 1e-300);
    const double residual = max_abs_diff(image, scale(canon, s, 0.0)) / denom;
    return {tag, linmap, s, residual};
}

FormReduction reduce_three_real(const Poly2& h, const std::array<double, 3>& roots) {
    // Assign the three root directions to the factor targets
    // {x, x+y, x-y}; keep the best-conditioned map, ties broken toward
    // the identity.
    static constexpr int kPerms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                         {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    bool have_best = false;
    AffineMap best;
    double best_cond = 0.0;
    for (const auto& perm : kPerms) {
        const double n1 = roots[perm[0]];  // -> x
        const double n2 = roots[perm[1]];  // -> x + y
        const double n3 = roots[perm[2]];  // -> x - y
        if (n3 == n2) continue;
        const double C = (2.0 * n1 - n2 - n3) / (n3 - n2);
        const double A = (n1 - n2) + n2 * C;
        AffineMap cand;
        try {
            cand = linear_map(A, n1, C, 1.0);
        } catch (const SingularMapError&) {
            continue;
        }
        const double cond = cand.condition_number();
        if (!have_best || cond < best_cond * (1.0 - 1e-9) ||
            (cond <= best_cond * (1.0 + 1e-9) &&
             distance_from_identity(cand) < distance_from_identity(best))) {
            best = cand;
            best_cond = cond;
            have_best = true;
        }
    }
    if (!have_best) throw InternalDispatchError("no usable root assignment for x^3-x*y^2 form");
    return finish(CubicFormTag::kXXY2Minus, h, best);
}

FormReduction reduce_one_real(const Poly2& h, const Coeffs& k,
                              const std::vector<Complex>& roots) {
    // Real root -> x axis; complex pair u +- vi normalized onto x^2 + y^2.
    int real_idx = 0;
    double best_im = std::abs(roots[0].imag());
    for (int i = 1; i < 3; ++i) {
        const double im = std::abs(roots[i].imag());
        if (im < best_im) {
            best_im = im;
            real_idx = i;
        }
    }
    double n0 = roots[real_idx].real();
    // Polish the real root, then take u, v from the deflated quadratic.
    const UniPoly q = factor_slope_poly(k);
    const UniPoly dq = q.derivative();
    for (int it = 0; it < 40; ++it) {
        const double d = dq.eval(n0);
        if (std::abs(d) < 1e-300) break;
        const double step = q.eval(n0) / d;
        n0 -= step;
        if (std::abs(step) < 1e-15 * (1.0 + std::abs(n0))) break;
    }
    const double qa = k.a;
    const double qb = k.b + qa * n0;
    const double qc = k.c + qb * n0;
    const double disc = qb * qb - 4.0 * qa * qc;
    if (disc >= 0.0 || qa == 0.0)
        throw InternalDispatchError("expected a complex pair in x^3+x*y^2 form");
    const double u = -qb / (2.0 * qa);
    const double v = std::sqrt(-disc) / (2.0 * std::abs(qa));

    const double C = (u - n0) / v;
    const double A = u * C + v;
    return finish(CubicFormTag::kXXY2Plus, h, linear_map(A, n0, C, 1.0));
}

}  // namespace

FormReduction classify_binary_cubic(const HomogeneousPart& h) {
    if (h.degree != 3 || h.poly.is_zero()) throw ZeroCubicPartError();

    Coeffs k = read_coeffs(h.poly);
    const double S = k.scale();
    if (S == 0.0) throw ZeroCubicPartError();

    // Ensure a usable leading coefficient so every factor has finite
    // slope: swap the variables when the y^3 end is healthy, otherwise
    // shear y -> t*x + y with the smallest workable integer t.
    AffineMap pre = AffineMap::identity();
    Poly2 work = h.poly;
    const double lead_floor = 1e-6 * S;
    if (std::abs(k.a) < lead_floor) {
        if (std::abs(k.d) >= lead_floor) {
            pre = AffineMap::make(0.0, 1.0, 0.0, 1.0, 0.0, 0.0);  // <y, x>
        } else {
            for (int step = 1; step <= 64; ++step) {
                for (int t : {step, -step}) {
                    const double lead = k.a + k.b * t + k.c * t * t + k.d * t * t * t;
                    if (std::abs(lead) >= lead_floor) {
                        pre = AffineMap::make(1.0, 0.0, 0.0, t, 1.0, 0.0);  // <x, t*x+y>
                        goto sheared;
                    }
                }
            }
            throw ZeroCubicPartError();
        sheared:;
        }
        work = compose(h.poly, pre, 0.0);
        k = read_coeffs(work);
    }

    const double disc = binary_cubic_discriminant(k.a, k.b, k.c, k.d);
    const double disc_tol = 1e-9 * std::pow(k.scale(), 4);

    FormReduction red;
    if (std::abs(disc) <= disc_tol) {
        // Repeated root: triple iff the Hessian covariant vanishes.
        const double hp = k.b * k.b - 3.0 * k.a * k.c;
        const double hq = k.b * k.c - 9.0 * k.a * k.d;
        const double hr = k.c * k.c - 3.0 * k.b * k.d;
        const double hess_scale = std::max({std::abs(hp), std::abs(hq), std::abs(hr)});
        if (hess_scale <= 1e-9 * k.scale() * k.scale()) {
            const double m = -k.b / (3.0 * k.a);
            red = finish(CubicFormTag::kX3, work, linear_map(1.0, m, 0.0, 1.0));
        } else {
            // Double root from the Hessian (x - m*y)^2 pattern; work with
            // the reciprocal when the y^2 end dominates.
            double m;
            if (std::abs(hp) >= std::abs(hr)) {
                m = -hq / (2.0 * hp);
            } else {
                const double inv = -hq / (2.0 * hr);
                if (std::abs(inv) < 1e-12)
                    throw InternalDispatchError("double root direction at infinity after shear");
                m = 1.0 / inv;
            }
            const double simple = -k.b / k.a - 2.0 * m;
            red = finish(CubicFormTag::kX2Y, work, linear_map(simple, m, 1.0, 1.0));
        }
    } else if (disc > 0.0) {
        std::vector<double> roots = real_roots(factor_slope_poly(k), 1e-5, 0.0);
        if (roots.size() != 3)
            throw InternalDispatchError("positive discriminant but fewer than 3 real roots");
        red = reduce_three_real(work, {roots[0], roots[1], roots[2]});
    } else {
        red = reduce_one_real(work, k, all_roots(factor_slope_poly(k)));
    }

    red.linmap = affine_compose(pre, red.linmap);
    // Recompute the witness residual through the full map.
    return finish(red.form, h.poly, red.linmap);
}

}  // namespace cubiccanon
