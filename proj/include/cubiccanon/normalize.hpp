#ifndef CUBICCANON_NORMALIZE_HPP
#define CUBICCANON_NORMALIZE_HPP

#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cubiccanon/affine.hpp"
#include "cubiccanon/cubic_form.hpp"
#include "cubiccanon/poly2.hpp"
#include "cubiccanon/tolerances.hpp"

namespace cubiccanon {

/// One identifier per row of the classification table, sign variants
/// split into distinct families.
enum class FamilyId {
    // block x^3 + x*y^2
    kX3Xy2X2HIJ,   // x^3+x*y^2+x^2+H*x+I*y+J      (I >= 0)
    kX3Xy2YHJ,     // x^3+x*y^2+y+H*x+J            (J >= 0)
    kX3Xy2PxJ,     // x^3+x*y^2+x+J                (J >= 0)
    kX3Xy2MxJ,     // x^3+x*y^2-x+J                (J >= 0)
    kX3Xy2P1,      // x^3+x*y^2+1
    kX3Xy2,        // x^3+x*y^2
    // block x^3 - x*y^2
    kX3Mxy2My2HIJ,  // x^3-x*y^2-y^2+H*x+I*y+J     (I >= 0, H+I <= -3/4)
    kX3Mxy2MyHJ,    // x^3-x*y^2-y+H*x+J           (J >= 0, H in [-1,1])
    kX3Mxy2P1,      // x^3-x*y^2+1
    kX3Mxy2,        // x^3-x*y^2
    // block x^2*y
    kX2yY2MxIJ,  // x^2*y+y^2-x+I*y+J
    kX2yY2PyJ,   // x^2*y+y^2+y+J
    kX2yY2MyJ,   // x^2*y+y^2-y+J
    kX2yY2P1,    // x^2*y+y^2+1
    kX2yY2M1,    // x^2*y+y^2-1
    kX2yY2,      // x^2*y+y^2
    kX2yMxPyJ,   // x^2*y-x+y+J                    (J >= 0)
    kX2yMxMyJ,   // x^2*y-x-y+J                    (J >= 0)
    kX2yPyP1,    // x^2*y+y+1
    kX2yMyP1,    // x^2*y-y+1
    kX2yPy,      // x^2*y+y
    kX2yMy,      // x^2*y-y
    kX2yMxP1,    // x^2*y-x+1
    kX2yMx,      // x^2*y-x
    kX2yM1,      // x^2*y-1
    kX2y,        // x^2*y
    // block x^3
    kX3My2PxJ,  // x^3-y^2+x+J
    kX3My2MxJ,  // x^3-y^2-x+J
    kX3My2P1,   // x^3-y^2+1
    kX3My2M1,   // x^3-y^2-1
    kX3My2,     // x^3-y^2
    kX3My,      // x^3-y
    kX3MxyP1,   // x^3-x*y+1
    kX3Mxy,     // x^3-x*y
    kX3PxJ,     // x^3+x+J                         (J >= 0)
    kX3MxJ,     // x^3-x+J                         (J >= 0)
    kX3P1,      // x^3+1
    kX3,        // x^3
};

struct FamilyInfo {
    FamilyId id;
    const char* name;
    CubicFormTag block;
    bool has_H, has_I, has_J;
};

const FamilyInfo& family_info(FamilyId id);
const std::vector<FamilyInfo>& all_families();
const char* family_name(FamilyId id);
std::optional<FamilyId> family_from_name(const std::string& name);

/// The table representative with the given parameters (absent ones ignored).
Poly2 family_polynomial(FamilyId id, double H = 0.0, double I = 0.0, double J = 0.0);

/// Canonical cubic part plus quadratic coefficients and the linear tail.
struct MidForm {
    CubicFormTag form;
    double E = 0.0, F = 0.0, G = 0.0;
    Poly2 lin;  // degree <= 1
};

Poly2 mid_form_polynomial(const MidForm& m);

/// The nine reduced shapes produced by the high tables.
enum class ReducedKind {
    k1 = 1,  // c(x^3+x*y^2+x^2+Hx+Iy+J)
    k2,      // c(x^3+x*y^2+Hx+Iy+J)
    k3,      // c(x^3-x*y^2+Hx+Iy+J)
    k4,      // c(x^3-x*y^2-y^2+Hx+Iy+J)
    k5,      // c(x^2*y+y^2+Hx+Iy+J)
    k6,      // c(x^2*y+Hx+Iy+J)
    k7,      // c(x^3-y^2+Hx+Iy+J)
    k8,      // c(x^3-x*y+Hx+Iy+J)
    k9,      // c(x^3+Hx+Iy+J)
};

struct ReducedForm {
    ReducedKind kind;
    double c = 1.0;
    double H = 0.0, I = 0.0, J = 0.0;
};

/// The reduced polynomial with unit leading coefficient (c not applied).
Poly2 reduced_polynomial(const ReducedForm& r);

struct TraceStep {
    std::string table;
    std::string case_label;
    AffineMap map;
    std::vector<std::pair<std::string, double>> scalars;
};

/// Ordered table steps; composing the maps in order yields the witness.
/// min_guard_margin is the smallest normalized distance of any guard
/// from its decision boundary, for near-boundary failure attribution.
struct StepTrace {
    std::vector<TraceStep> steps;
    double min_guard_margin = std::numeric_limits<double>::infinity();
};

struct ClassificationResult {
    FamilyId family;
    std::optional<double> H, I, J;
    AffineMap witness;
    double scale = 1.0;
    double residual = 0.0;
    Poly2 canonical;
    StepTrace trace;
};

/// sigma(0) = 1; negative only below -eps.
inline double signum(double t, double eps = kCaseEps) { return t < -eps ? -1.0 : 1.0; }

/// Reduce the cubic part of f to canonical form and read off E, F, G
/// and the linear tail of the transformed polynomial. Throws
/// NotCubicError unless degree(f) == 3.
std::pair<MidForm, FormReduction> to_mid_form(const Poly2& f, const Tolerances& tol = {});

/// Apply the matching high-table map; the reduced kind follows from the
/// guard. Coefficients of the image are read off and shape-checked.
std::pair<ReducedForm, StepTrace> reduce_high(const MidForm& m, const Tolerances& tol = {});

struct LowReduction {
    FamilyId family;
    std::optional<double> H, I, J;
    AffineMap map;
    double c2 = 1.0;
};

/// Apply the matching low-table row to the unit reduced polynomial.
LowReduction reduce_low(const ReducedForm& r, const Tolerances& tol = {},
                        StepTrace* trace = nullptr);

/// Full pipeline: form reduction, high table, low table; the witness is
/// the composition of all three maps and the residual is recomputed
/// from scratch through compose.
ClassificationResult classify(const Poly2& f, const Tolerances& tol = {});

/// Relative max-norm residual of compose(f, w) - scale * g, normalized
/// by the max-norm of f.
double verify(const Poly2& f, const AffineMap& w, double scale, const Poly2& g);

}  // namespace cubiccanon

#endif
