#ifndef CUBICCANON_CUBIC_FORM_HPP
#define CUBICCANON_CUBIC_FORM_HPP

#include <string>

#include "cubiccanon/affine.hpp"
#include "cubiccanon/poly2.hpp"

namespace cubiccanon {

/// The four canonical binary cubics. Tags correspond to the real root
/// structure of the form: one simple real root / three distinct real
/// roots / double + simple / triple.
enum class CubicFormTag { kXXY2Plus, kXXY2Minus, kX2Y, kX3 };

const char* tag_name(CubicFormTag tag);
Poly2 canonical_form_poly(CubicFormTag tag);

/// Witness of the linear reduction: compose(h, linmap) == scale * form,
/// with linmap purely linear (R = S = 0).
struct FormReduction {
    CubicFormTag form;
    AffineMap linmap;
    double scale = 1.0;
    double residual = 0.0;
};

/// Discriminant of a*x^3 + b*x^2*y + c*x*y^2 + d*y^3.
double binary_cubic_discriminant(double a, double b, double c, double d);

/// Reduce a nonzero homogeneous cubic to its canonical form.
/// Dispatch: sign of the discriminant, with the near-zero band split
/// into double/triple root cases by the Hessian covariant. Throws
/// ZeroCubicPartError when h vanishes.
FormReduction classify_binary_cubic(const HomogeneousPart& h);

}  // namespace cubiccanon

#endif
