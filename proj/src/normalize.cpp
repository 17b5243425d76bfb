#include "cubiccanon/normalize.hpp"

#include <algorithm>
#include <cmath>

#include "cubiccanon/errors.hpp"

namespace cubiccanon {

namespace {

using Tag = CubicFormTag;

const std::vector<FamilyInfo> kFamilies = {
    {FamilyId::kX3Xy2X2HIJ, "X3_XY2_X2_HIJ", Tag::kXXY2Plus, true, true, true},
    {FamilyId::kX3Xy2YHJ, "X3_XY2_Y_HJ", Tag::kXXY2Plus, true, false, true},
    {FamilyId::kX3Xy2PxJ, "X3_XY2_PX_J", Tag::kXXY2Plus, false, false, true},
    {FamilyId::kX3Xy2MxJ, "X3_XY2_MX_J", Tag::kXXY2Plus, false, false, true},
    {FamilyId::kX3Xy2P1, "X3_XY2_P1", Tag::kXXY2Plus, false, false, false},
    {FamilyId::kX3Xy2, "X3_XY2", Tag::kXXY2Plus, false, false, false},
    {FamilyId::kX3Mxy2My2HIJ, "X3_MXY2_MY2_HIJ", Tag::kXXY2Minus, true, true, true},
    {FamilyId::kX3Mxy2MyHJ, "X3_MXY2_MY_HJ", Tag::kXXY2Minus, true, false, true},
    {FamilyId::kX3Mxy2P1, "X3_MXY2_P1", Tag::kXXY2Minus, false, false, false},
    {FamilyId::kX3Mxy2, "X3_MXY2", Tag::kXXY2Minus, false, false, false},
    {FamilyId::kX2yY2MxIJ, "X2Y_Y2_MX_IJ", Tag::kX2Y, false, true, true},
    {FamilyId::kX2yY2PyJ, "X2Y_Y2_PY_J", Tag::kX2Y, false, false, true},
    {FamilyId::kX2yY2MyJ, "X2Y_Y2_MY_J", Tag::kX2Y, false, false, true},
    {FamilyId::kX2yY2P1, "X2Y_Y2_P1", Tag::kX2Y, false, false, false},
    {FamilyId::kX2yY2M1, "X2Y_Y2_M1", Tag::kX2Y, false, false, false},
    {FamilyId::kX2yY2, "X2Y_Y2", Tag::kX2Y, false, false, false},
    {FamilyId::kX2yMxPyJ, "X2Y_MX_PY_J", Tag::kX2Y, false, false, true},
    {FamilyId::kX2yMxMyJ, "X2Y_MX_MY_J", Tag::kX2Y, false, false, true},
    {FamilyId::kX2yPyP1, "X2Y_PY_P1", Tag::kX2Y, false, false, false},
    {FamilyId::kX2yMyP1, "X2Y_MY_P1", Tag::kX2Y, false, false, false},
    {FamilyId::kX2yPy, "X2Y_PY", Tag::kX2Y, false, false, false},
    {FamilyId::kX2yMy, "X2Y_MY", Tag::kX2Y, false, false, false},
    {FamilyId::kX2yMxP1, "X2Y_MX_P1", Tag::kX2Y, false, false, false},
    {FamilyId::kX2yMx, "X2Y_MX", Tag::kX2Y, false, false, false},
    {FamilyId::kX2yM1, "X2Y_M1", Tag::kX2Y, false, false, false},
    {FamilyId::kX2y, "X2Y", Tag::kX2Y, false, false, false},
    {FamilyId::kX3My2PxJ, "X3_MY2_PX_J", Tag::kX3, false, false, true},
    {FamilyId::kX3My2MxJ, "X3_MY2_MX_J", Tag::kX3, false, false, true},
    {FamilyId::kX3My2P1, "X3_MY2_P1", Tag::kX3, false, false, false},
    {FamilyId::kX3My2M1, "X3_MY2_M1", Tag::kX3, false, false, false},
    {FamilyId::kX3My2, "X3_MY2", Tag::kX3, false, false, false},
    {FamilyId::kX3My, "X3_MY", Tag::kX3, false, false, false},
    {FamilyId::kX3MxyP1, "X3_MXY_P1", Tag::kX3, false, false, false},
    {FamilyId::kX3Mxy, "X3_MXY", Tag::kX3, false, false, false},
    {FamilyId::kX3PxJ, "X3_PX_J", Tag::kX3, false, false, true},
    {FamilyId::kX3MxJ, "X3_MX_J", Tag::kX3, false, false, true},
    {FamilyId::kX3P1, "X3_P1", Tag::kX3, false, false, false},
    {FamilyId::kX3, "X3", Tag::kX3, false, false, false},
};

// Fixed parts of each family polynomial beyond H*x + I*y + J.
void add_family_pattern(Poly2& p, FamilyId id) {
    auto m = [&](int i, int j, double c) { p.set_coeff(i, j, p.coeff(i, j) + c); };
    switch (id) {
        case FamilyId::kX3Xy2X2HIJ: m(3, 0, 1); m(1, 2, 1); m(2, 0, 1); break;
        case FamilyId::kX3Xy2YHJ: m(3, 0, 1); m(1, 2, 1); m(0, 1, 1); break;
        case FamilyId::kX3Xy2PxJ: m(3, 0, 1); m(1, 2, 1); m(1, 0, 1); break;
        case FamilyId::kX3Xy2MxJ: m(3, 0, 1); m(1, 2, 1); m(1, 0, -1); break;
        case FamilyId::kX3Xy2P1: m(3, 0, 1); m(1, 2, 1); m(0, 0, 1); break;
        case FamilyId::kX3Xy2: m(3, 0, 1); m(1, 2, 1); break;
        case FamilyId::kX3Mxy2My2HIJ: m(3, 0, 1); m(1, 2, -1); m(0, 2, -1); break;
        case FamilyId::kX3Mxy2MyHJ: m(3, 0, 1); m(1, 2, -1); m(0, 1, -1); break;
        case FamilyId::kX3Mxy2P1: m(3, 0, 1); m(1, 2, -1); m(0, 0, 1); break;
        case FamilyId::kX3Mxy2: m(3, 0, 1); m(1, 2, -1); break;
        case FamilyId::kX2yY2MxIJ: m(2, 1, 1); m(0, 2, 1); m(1, 0, -1); break;
        case FamilyId::kX2yY2PyJ: m(2, 1, 1); m(0, 2, 1); m(0, 1, 1); break;
        case FamilyId::kX2yY2MyJ: m(2, 1, 1); m(0, 2, 1); m(0, 1, -1); break;
        case FamilyId::kX2yY2P1: m(2, 1, 1); m(0, 2, 1); m(0, 0, 1); break;
        case FamilyId::kX2yY2M1: m(2, 1, 1); m(0, 2, 1); m(0, 0, -1); break;
        case FamilyId::kX2yY2: m(2, 1, 1); m(0, 2, 1); break;
        case FamilyId::kX2yMxPyJ: m(2, 1, 1); m(1, 0, -1); m(0, 1, 1); break;
        case FamilyId::kX2yMxMyJ: m(2, 1, 1); m(1, 0, -1); m(0, 1, -1); break;
        case FamilyId::kX2yPyP1: m(2, 1, 1); m(0, 1, 1); m(0, 0, 1); break;
        case FamilyId::kX2yMyP1: m(2, 1, 1); m(0, 1, -1); m(0, 0, 1); break;
        case FamilyId::kX2yPy: m(2, 1, 1); m(0, 1, 1); break;
        case FamilyId::kX2yMy: m(2, 1, 1); m(0, 1, -1); break;
        case FamilyId::kX2yMxP1: m(2, 1, 1); m(1, 0, -1); m(0, 0, 1); break;
        case FamilyId::kX2yMx: m(2, 1, 1); m(1, 0, -1); break;
        case FamilyId::kX2yM1: m(2, 1, 1); m(0, 0, -1); break;
        case FamilyId::kX2y: m(2, 1, 1); break;
        case FamilyId::kX3My2PxJ: m(3, 0, 1); m(0, 2, -1); m(1, 0, 1); break;
        case FamilyId::kX3My2MxJ: m(3, 0, 1); m(0, 2, -1); m(1, 0, -1); break;
        case FamilyId::kX3My2P1: m(3, 0, 1); m(0, 2, -1); m(0, 0, 1); break;
        case FamilyId::kX3My2M1: m(3, 0, 1); m(0, 2, -1); m(0, 0, -1); break;
        case FamilyId::kX3My2: m(3, 0, 1); m(0, 2, -1); break;
        case FamilyId::kX3My: m(3, 0, 1); m(0, 1, -1); break;
        case FamilyId::kX3MxyP1: m(3, 0, 1); m(1, 1, -1); m(0, 0, 1); break;
        case FamilyId::kX3Mxy: m(3, 0, 1); m(1, 1, -1); break;
        case FamilyId::kX3PxJ: m(3, 0, 1); m(1, 0, 1); break;
        case FamilyId::kX3MxJ: m(3, 0, 1); m(1, 0, -1); break;
        case FamilyId::kX3P1: m(3, 0, 1); m(0, 0, 1); break;
        case FamilyId::kX3: m(3, 0, 1); break;
    }
}

// Guard bookkeeping: every comparison records its normalized distance
// from the decision boundary into the trace.
struct Guards {
    double eps;
    StepTrace* trace;

    void note(double margin) const {
        if (trace) trace->min_guard_margin = std::min(trace->min_guard_margin, margin);
    }
    bool eq(double a, double b) const {
        const double margin = std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
        note(margin);
        return margin <= eps;
    }
    bool zero(double v) const { return eq(v, 0.0); }
    // Zero test against an explicit magnitude reference.
    bool zero_ref(double v, double ref) const {
        const double margin = std::abs(v) / std::max(1.0, ref);
        note(margin);
        return margin <= eps;
    }
};

void push_step(StepTrace* trace, std::string table, std::string label, const AffineMap& map,
               std::vector<std::pair<std::string, double>> scalars = {}) {
    if (trace) trace->steps.push_back({std::move(table), std::move(label), map, std::move(scalars)});
}

constexpr double kShapeTol = 1e-6;

// Read c * (pattern + Hx + Iy + J) off an image polynomial whose
// expected support is the pattern plus the linear tail; anything else
// must be numerical debris.
struct PatternRead {
    double c, H, I, J;
};

PatternRead read_pattern(const Poly2& image, const Poly2& unit_pattern, const char* what) {
    double c = 0.0;
    if (unit_pattern.coeff(3, 0) != 0.0)
        c = image.coeff(3, 0) / unit_pattern.coeff(3, 0);
    else
        c = image.coeff(2, 1) / unit_pattern.coeff(2, 1);
    const double ref = std::max(image.max_abs_coeff(), std::abs(c));
    if (std::abs(c) < 1e-300)
        throw InternalDispatchError(std::string("vanishing scale reading ") + what);
    for (const auto& [k, v] : image.terms()) {
        const bool structural = unit_pattern.coeff(k.first, k.second) != 0.0;
        const bool tail = k.first + k.second <= 1;
        if (!structural && !tail && std::abs(v) > kShapeTol * ref)
            throw InternalDispatchError(std::string("unexpected monomial reading ") + what);
    }
    for (const auto& [k, v] : unit_pattern.terms()) {
        if (k.first + k.second <= 1) continue;
        if (std::abs(image.coeff(k.first, k.second) - c * v) > kShapeTol * ref)
            throw InternalDispatchError(std::string("pattern coefficient mismatch reading ") + what);
    }
    PatternRead out;
    out.c = c;
    out.H = image.coeff(1, 0) / c;
    out.I = image.coeff(0, 1) / c;
    out.J = image.coeff(0, 0) / c;
    return out;
}

Poly2 kind_pattern(ReducedKind kind) {
    Poly2 p;
    switch (kind) {
        case ReducedKind::k1: p.set_coeff(3, 0, 1); p.set_coeff(1, 2, 1); p.set_coeff(2, 0, 1); break;
        case ReducedKind::k2: p.set_coeff(3, 0, 1); p.set_coeff(1, 2, 1); break;
        case ReducedKind::k3: p.set_coeff(3, 0, 1); p.set_coeff(1, 2, -1); break;
        case ReducedKind::k4: p.set_coeff(3, 0, 1); p.set_coeff(1, 2, -1); p.set_coeff(0, 2, -1); break;
        case ReducedKind::k5: p.set_coeff(2, 1, 1); p.set_coeff(0, 2, 1); break;
        case ReducedKind::k6: p.set_coeff(2, 1, 1); break;
        case ReducedKind::k7: p.set_coeff(3, 0, 1); p.set_coeff(0, 2, -1); break;
        case ReducedKind::k8: p.set_coeff(3, 0, 1); p.set_coeff(1, 1, -1); break;
        case ReducedKind::k9: p.set_coeff(3, 0, 1); break;
    }
    return p;
}

AffineMap diag(double ax, double dy) { return AffineMap::make(ax, 0, 0, 0, dy, 0); }

}  // namespace

const FamilyInfo& family_info(FamilyId id) { return kFamilies[static_cast<std::size_t>(id)]; }

const std::vector<FamilyInfo>& all_families() { return kFamilies; }

const char* family_name(FamilyId id) { return family_info(id).name; }

std::optional<FamilyId> family_from_name(const std::string& name) {
    for (const auto& info : kFamilies)
        if (name == info.name) return info.id;
    return std::nullopt;
}

Poly2 family_polynomial(FamilyId id, double H, double I, double J) {
    Poly2 p;
    add_family_pattern(p, id);
    const FamilyInfo& info = family_info(id);
    if (info.has_H) p.set_coeff(1, 0, p.coeff(1, 0) + H);
    if (info.has_I) p.set_coeff(0, 1, p.coeff(0, 1) + I);
    if (info.has_J) p.set_coeff(0, 0, p.coeff(0, 0) + J);
    return p.chopped(0.0);
}

Poly2 mid_form_polynomial(const MidForm& m) {
    Poly2 p = canonical_form_poly(m.form);
    p.set_coeff(2, 0, p.coeff(2, 0) + m.E);
    p.set_coeff(1, 1, p.coeff(1, 1) + m.F);
    p.set_coeff(0, 2, p.coeff(0, 2) + m.G);
    return add(p, m.lin, 0.0);
}

Poly2 reduced_polynomial(const ReducedForm& r) {
    Poly2 p = kind_pattern(r.kind);
    p.set_coeff(1, 0, p.coeff(1, 0) + r.H);
    p.set_coeff(0, 1, p.coeff(0, 1) + r.I);
    p.set_coeff(0, 0, p.coeff(0, 0) + r.J);
    return p.chopped(0.0);
}

std::pair<MidForm, FormReduction> to_mid_form(const Poly2& f, const Tolerances& tol) {
    if (f.degree() != 3) throw NotCubicError();
    FormReduction fr = classify_binary_cubic(homogeneous_component(f, 3));
    const Poly2 transformed = scale(compose(f, fr.linmap, 0.0), 1.0 / fr.scale, tol.chop);

    MidForm m;
    m.form = fr.form;
    m.E = transformed.coeff(2, 0);
    m.F = transformed.coeff(1, 1);
    m.G = transformed.coeff(0, 2);
    for (const auto& [k, c] : transformed.terms())
        if (k.first + k.second <= 1) m.lin.set_coeff(k.first, k.second, c);

    // The cubic part of `transformed` must be the canonical form; any
    // deviation beyond shape tolerance means the form reduction failed.
    const Poly2 cubic = homogeneous_component(transformed, 3).poly;
    if (max_abs_diff(cubic, canonical_form_poly(m.form)) >
        kShapeTol * std::max(1.0, transformed.max_abs_coeff()))
        throw InternalDispatchError("cubic part not canonical after form reduction");
    return {m, fr};
}

std::pair<ReducedForm, StepTrace> reduce_high(const MidForm& m, const Tolerances& tol) {
    StepTrace trace;
    Guards g{tol.case_eps, &trace};
    const double E = m.E, F = m.F, G = m.G;

    AffineMap map;
    ReducedKind kind;
    std::string table, label;

    switch (m.form) {
        case Tag::kXXY2Plus:
            table = "x^3+x*y^2 high";
            if (!g.eq(E, 3.0 * G)) {
                map = AffineMap::make(E - 3.0 * G, 0, -G, 0, E - 3.0 * G, -F / 2.0);
                kind = ReducedKind::k1;
                label = "E != 3G";
            } else {
                map = AffineMap::make(1, 0, -G, 0, 1, -F / 2.0);
                kind = ReducedKind::k2;
                label = "E = 3G";
            }
            break;
        case Tag::kXXY2Minus:
            table = "x^3-x*y^2 high";
            if (!g.eq(E, -3.0 * G)) {
                map = AffineMap::make(-E / 3.0 - G, 0, -E / 3.0, 0, -E / 3.0 - G, F / 2.0);
                kind = ReducedKind::k4;
                label = "E != -3G";
            } else {
                map = AffineMap::make(1, 0, -E / 3.0, 0, 1, F / 2.0);
                kind = ReducedKind::k3;
                label = "E = -3G";
            }
            break;
        case Tag::kX2Y:
            table = "x^2*y high";
            if (!g.zero(G)) {
                map = AffineMap::make(1, 0, -F / 2.0, 0, 1.0 / G, -E);
                kind = ReducedKind::k5;
                label = "G != 0";
            } else {
                map = AffineMap::make(1, 0, -F / 2.0, 0, 1, -E);
                kind = ReducedKind::k6;
                label = "G = 0";
            }
            break;
        case Tag::kX3:
            table = "x^3 high";
            if (!g.zero(G)) {
                map = AffineMap::make(signum(-G, tol.case_eps), 0,
                                      (F * F - 4.0 * E * G) / (12.0 * G), F / (2.0 * std::abs(G)),
                                      1.0 / std::sqrt(std::abs(G)), 0);
                kind = ReducedKind::k7;
                label = "G != 0";
            } else if (!g.zero(F)) {
                map = AffineMap::make(1, 0, -E / 3.0, 0, -1.0 / F, 0);
                kind = ReducedKind::k8;
                label = "G = 0, F != 0";
            } else {
                map = AffineMap::make(1, 0, -E / 3.0, 0, 1, 0);
                kind = ReducedKind::k9;
                label = "G = F = 0";
            }
            break;
        default:
            throw InternalDispatchError("unknown canonical form");
    }

    const Poly2 image = compose(mid_form_polynomial(m), map, tol.chop);
    const PatternRead read = read_pattern(image, kind_pattern(kind), "high-table image");
    push_step(&trace, table, label, map);
    return {ReducedForm{kind, read.c, read.H, read.I, read.J}, trace};
}

namespace {

struct RowChoice {
    AffineMap map;
    FamilyId family;
    std::string label;
    std::vector<std::pair<std::string, double>> scalars;
};

RowChoice low_row(const ReducedForm& r, const Guards& g, double eps) {
    const double H = r.H, I = r.I, J = r.J;
    auto sg = [eps](double t) { return signum(t, eps); };

    switch (r.kind) {
        case ReducedKind::k1:
            return {diag(1.0, sg(I)), FamilyId::kX3Xy2X2HIJ, "sigma(I) normalization", {}};

        case ReducedKind::k2: {
            if (!g.zero(I)) {
                const double k = sg(J) * std::sqrt(std::abs(I));
                return {diag(k, sg(I) * k), FamilyId::kX3Xy2YHJ, "I != 0", {}};
            }
            if (!g.zero(H)) {
                const double k = sg(J) * std::sqrt(std::abs(H));
                return {diag(k, k), sg(H) > 0 ? FamilyId::kX3Xy2PxJ : FamilyId::kX3Xy2MxJ,
                        "I = 0, H != 0", {}};
            }
            if (!g.zero(J)) {
                const double k = std::cbrt(J);
                return {diag(k, k), FamilyId::kX3Xy2P1, "I = H = 0, J != 0", {}};
            }
            return {AffineMap::identity(), FamilyId::kX3Xy2, "I = H = J = 0", {}};
        }

        case ReducedKind::k3: {
            if (!g.zero(I)) {
                if (g.eq(std::abs(H), std::abs(I)) || std::abs(H) < std::abs(I)) {
                    const double k = sg(J) * std::sqrt(std::abs(I));
                    return {diag(k, sg(-I) * k), FamilyId::kX3Mxy2MyHJ, "I != 0, |H| <= |I|", {}};
                }
                const double alpha = -std::sqrt((std::abs(H) + std::abs(I)) / (8.0 * std::abs(I)));
                const double k = alpha * std::sqrt(std::abs(I)) * sg(J);
                const double sH = sg(H);
                const double sIH = sg(I * H);
                return {AffineMap::make(k, k * sH, 0, -3.0 * k * sIH, k * sIH * sH, 0),
                        FamilyId::kX3Mxy2MyHJ,
                        "I != 0, |H| > |I|",
                        {{"alpha", alpha}}};
            }
            if (!g.zero(H)) {
                const double beta = -std::sqrt(std::abs(H) / 8.0);
                const double k = beta * sg(J);
                const double sH = sg(H);
                return {AffineMap::make(k, k * sH, 0, 3.0 * k, -k * sH, 0),
                        FamilyId::kX3Mxy2MyHJ,
                        "I = 0, H != 0",
                        {{"beta", beta}}};
            }
            if (!g.zero(J)) {
                const double k = std::cbrt(J);
                return {diag(k, k), FamilyId::kX3Mxy2P1, "I = H = 0, J != 0", {}};
            }
            return {AffineMap::identity(), FamilyId::kX3Mxy2, "I = H = J = 0", {}};
        }

        case ReducedKind::k4: {
            const double t = H + 0.75;
            const double sI = sg(I);
            const bool boundary = g.eq(std::abs(t), std::abs(I));
            if (!boundary && std::abs(t) < std::abs(I)) {
                return {AffineMap::make(-0.5, -0.5, -0.75, -1.5 * sI, 0.5 * sI, -0.75 * sI),
                        FamilyId::kX3Mxy2My2HIJ, "|H+3/4| < |I|", {}};
            }
            if (t >= 0.0) {
                return {AffineMap::make(-0.5, 0.5, -0.75, -1.5 * sI, -0.5 * sI, -0.75 * sI),
                        FamilyId::kX3Mxy2My2HIJ, "H+3/4 >= |I|", {}};
            }
            return {AffineMap::make(1, 0, 0, 0, sI, 0), FamilyId::kX3Mxy2My2HIJ,
                    "H+3/4 <= -|I|", {}};
        }

        case ReducedKind::k5: {
            if (!g.zero(H)) {
                const double a = std::cbrt(-H);
                return {diag(a, a * a), FamilyId::kX2yY2MxIJ, "H != 0", {}};
            }
            if (!g.zero(I)) {
                return {diag(std::sqrt(std::abs(I)), std::abs(I)),
                        sg(I) > 0 ? FamilyId::kX2yY2PyJ : FamilyId::kX2yY2MyJ, "H = 0, I != 0", {}};
            }
            if (!g.zero(J)) {
                return {diag(std::pow(std::abs(J), 0.25), std::sqrt(std::abs(J))),
                        sg(J) > 0 ? FamilyId::kX2yY2P1 : FamilyId::kX2yY2M1, "H = I = 0, J != 0", {}};
            }
            return {AffineMap::identity(), FamilyId::kX2yY2, "H = I = J = 0", {}};
        }

        case ReducedKind::k6: {
            const bool zh = g.zero(H), zi = g.zero(I), zj = g.zero(J);
            if (!zh && !zi) {
                const double s = sg(-H * J);
                return {diag(s * std::sqrt(std::abs(I)), s * (-H) / std::sqrt(std::abs(I))),
                        sg(I) > 0 ? FamilyId::kX2yMxPyJ : FamilyId::kX2yMxMyJ, "HI != 0", {}};
            }
            if (!zh && !zj) return {diag(-J / H, H * H / J), FamilyId::kX2yMxP1, "HJ != 0, I = 0", {}};
            if (!zh) return {diag(1.0, -H), FamilyId::kX2yMx, "H != 0, I = J = 0", {}};
            if (!zi && !zj) {
                return {diag(std::sqrt(std::abs(I)), J / std::abs(I)),
                        sg(I) > 0 ? FamilyId::kX2yPyP1 : FamilyId::kX2yMyP1, "H = 0, IJ != 0", {}};
            }
            if (!zi) {
                return {diag(std::sqrt(std::abs(I)), 1.0),
                        sg(I) > 0 ? FamilyId::kX2yPy : FamilyId::kX2yMy, "H = J = 0, I != 0", {}};
            }
            if (!zj) return {diag(1.0, -J), FamilyId::kX2yM1, "H = I = 0, J != 0", {}};
            return {AffineMap::identity(), FamilyId::kX2y, "H = I = J = 0", {}};
        }

        case ReducedKind::k7: {
            if (!g.zero(H)) {
                return {AffineMap::make(std::sqrt(std::abs(H)), 0, 0, 0,
                                        std::pow(std::abs(H), 0.75), I / 2.0),
                        sg(H) > 0 ? FamilyId::kX3My2PxJ : FamilyId::kX3My2MxJ, "|H| != 0", {}};
            }
            const double K = I * I / 4.0 + J;
            if (!g.zero_ref(K, std::max(I * I / 4.0, std::abs(J)))) {
                return {AffineMap::make(std::cbrt(std::abs(K)), 0, 0, 0, std::sqrt(std::abs(K)),
                                        I / 2.0),
                        sg(K) > 0 ? FamilyId::kX3My2P1 : FamilyId::kX3My2M1,
                        "H = 0, I^2/4+J != 0",
                        {{"K", K}}};
            }
            return {AffineMap::make(1, 0, 0, 0, 1, I / 2.0), FamilyId::kX3My2, "H = I^2/4+J = 0", {}};
        }

        case ReducedKind::k8: {
            const double gamma = I * I * I + I * H + J;
            const double ref = std::max({std::abs(I * I * I), std::abs(I * H), std::abs(J)});
            if (!g.zero_ref(gamma, ref)) {
                const double cr = std::cbrt(gamma);
                return {AffineMap::make(cr, 0, I, 3.0 * cr * I, cr * cr, 3.0 * I * I + H),
                        FamilyId::kX3MxyP1,
                        "gamma != 0",
                        {{"gamma", gamma}}};
            }
            return {AffineMap::make(1, 0, I, 3.0 * I, 1, 3.0 * I * I + H), FamilyId::kX3Mxy,
                    "gamma = 0",
                    {{"gamma", gamma}}};
        }

        case ReducedKind::k9: {
            if (!g.zero(I)) {
                return {AffineMap::make(1, 0, 0, -H / I, -1.0 / I, -J / I), FamilyId::kX3My,
                        "I != 0", {}};
            }
            if (!g.zero(H)) {
                return {diag(sg(J) * std::sqrt(std::abs(H)), 1.0),
                        sg(H) > 0 ? FamilyId::kX3PxJ : FamilyId::kX3MxJ, "I = 0, H != 0", {}};
            }
            if (!g.zero(J)) return {diag(std::cbrt(J), 1.0), FamilyId::kX3P1, "I = H = 0, J != 0", {}};
            return {AffineMap::identity(), FamilyId::kX3, "I = H = J = 0", {}};
        }
    }
    throw InternalDispatchError("unknown reduced kind");
}

constexpr double kSnapEps = 1e-9;

double snap_to(double v, double target) {
    return std::abs(v - target) <= kSnapEps * std::max(1.0, std::abs(target)) ? target : v;
}

void check_constraint(bool ok, const char* what) {
    if (!ok) throw InternalDispatchError(std::string("family constraint violated: ") + what);
}

}  // namespace

LowReduction reduce_low(const ReducedForm& r, const Tolerances& tol, StepTrace* trace) {
    StepTrace local;
    Guards g{tol.case_eps, trace ? trace : &local};
    RowChoice row = low_row(r, g, tol.case_eps);

    const Poly2 image = compose(reduced_polynomial(r), row.map, tol.chop);
    Poly2 pattern;
    add_family_pattern(pattern, row.family);
    const PatternRead read = read_pattern(image, pattern, "low-table image");

    const FamilyInfo& info = family_info(row.family);
    LowReduction out;
    out.family = row.family;
    out.map = row.map;
    out.c2 = read.c;

    // Structural +-1 coefficients in the linear tail (the -x of family
    // x^2*y+y^2-x+I*y+J, the +-y rows, ...) are part of the pattern;
    // subtract them before reading parameters.
    double H = read.H - pattern.coeff(1, 0);
    double I = read.I - pattern.coeff(0, 1);
    double J = read.J - pattern.coeff(0, 0);
    if (!info.has_H && std::abs(H) > kShapeTol)
        throw InternalDispatchError("unexpected x coefficient in family read");
    if (!info.has_I && std::abs(I) > kShapeTol)
        throw InternalDispatchError("unexpected y coefficient in family read");
    if (!info.has_J && std::abs(J) > kShapeTol)
        throw InternalDispatchError("unexpected constant coefficient in family read");

    switch (row.family) {
        case FamilyId::kX3Xy2X2HIJ:
            I = snap_to(I, 0.0);
            check_constraint(I >= 0.0, "I >= 0");
            break;
        case FamilyId::kX3Xy2YHJ:
        case FamilyId::kX3Xy2PxJ:
        case FamilyId::kX3Xy2MxJ:
        case FamilyId::kX2yMxPyJ:
        case FamilyId::kX2yMxMyJ:
        case FamilyId::kX3PxJ:
        case FamilyId::kX3MxJ:
            J = snap_to(J, 0.0);
            check_constraint(J >= 0.0, "J >= 0");
            break;
        case FamilyId::kX3Mxy2My2HIJ:
            I = snap_to(I, 0.0);
            check_constraint(I >= 0.0, "I >= 0");
            check_constraint(H + I <= -0.75 + kSnapEps * std::max(1.0, std::abs(H) + std::abs(I)),
                             "H + I <= -3/4");
            break;
        case FamilyId::kX3Mxy2MyHJ:
            J = snap_to(J, 0.0);
            H = snap_to(H, 1.0);
            H = snap_to(H, -1.0);
            check_constraint(J >= 0.0, "J >= 0");
            check_constraint(H >= -1.0 && H <= 1.0, "H in [-1, 1]");
            break;
        default:
            break;
    }

    if (info.has_H) out.H = H;
    if (info.has_I) out.I = I;
    if (info.has_J) out.J = J;
    push_step(g.trace, "low table", row.label, row.map, row.scalars);
    return out;
}

ClassificationResult classify(const Poly2& f, const Tolerances& tol) {
    auto [mid, fr] = to_mid_form(f, tol);
    StepTrace trace;
    push_step(&trace, "cubic form reduction", tag_name(fr.form), fr.linmap);

    auto [red, high_trace] = reduce_high(mid, tol);
    const AffineMap high_map = high_trace.steps.front().map;
    trace.min_guard_margin = std::min(trace.min_guard_margin, high_trace.min_guard_margin);
    for (auto& s : high_trace.steps) trace.steps.push_back(std::move(s));

    LowReduction low = reduce_low(red, tol, &trace);

    ClassificationResult result;
    result.family = low.family;
    result.H = low.H;
    result.I = low.I;
    result.J = low.J;
    result.witness = affine_compose(affine_compose(fr.linmap, high_map), low.map);
    result.scale = fr.scale * red.c * low.c2;
    result.canonical =
        family_polynomial(low.family, low.H.value_or(0.0), low.I.value_or(0.0), low.J.value_or(0.0));
    result.residual = verify(f, result.witness, result.scale, result.canonical);
    result.trace = std::move(trace);
    return result;
}

double verify(const Poly2& f, const AffineMap& w, double scale_factor, const Poly2& g) {
    if (scale_factor == 0.0) throw CubicError("verify: scale must be nonzero");
    const Poly2 image = compose(f, w, 0.0);
    const double num = max_abs_diff(image, scale(g, scale_factor, 0.0));
    return num / std::max(f.max_abs_coeff(), 1e-300);
}

}  // namespace cubiccanon
