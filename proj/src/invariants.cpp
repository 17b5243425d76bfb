#include "cubiccanon/invariants.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <tuple>

#include "cubiccanon/affine.hpp"
#include "cubiccanon/errors.hpp"

namespace cubiccanon {

const char* singularity_name(SingularityKind kind) {
    switch (kind) {
        case SingularityKind::kNode: return "node";
        case SingularityKind::kCusp: return "cusp";
        case SingularityKind::kIsolated: return "isolated";
    }
    return "?";
}

namespace {

constexpr double kNewtonResidual = 1e-10;

void require_cubic(const Poly2& f) {
    if (f.degree() != 3) throw NotCubicError();
}

// y-coefficients of f at a fixed complex x, lowest degree first.
std::vector<Complex> y_poly_at(const Poly2& f, Complex x0) {
    int deg_y = 0;
    for (const auto& [k, c] : f.terms()) deg_y = std::max(deg_y, k.second);
    std::vector<Complex> out(deg_y + 1, Complex(0.0));
    for (const auto& [k, c] : f.terms()) {
        Complex xp = 1.0;
        for (int i = 0; i < k.first; ++i) xp *= x0;
        out[k.second] += c * xp;
    }
    return out;
}

bool all_small(const std::vector<Complex>& coeffs, double tol) {
    for (Complex c : coeffs)
        if (std::abs(c) > tol) return false;
    return true;
}

// Roots of a degree <= 2 polynomial with complex coefficients.
std::vector<Complex> quadratic_roots(const std::vector<Complex>& c, double zero_tol) {
    std::vector<Complex> padded = c;
    padded.resize(3, Complex(0.0));
    const Complex c2 = padded[2], c1 = padded[1], c0 = padded[0];
    if (std::abs(c2) > zero_tol) {
        const Complex sq = std::sqrt(c1 * c1 - 4.0 * c2 * c0);
        const Complex q = std::abs(c1 - sq) > std::abs(c1 + sq) ? (c1 - sq) : (c1 + sq);
        if (std::abs(q) < 1e-300) return {Complex(0.0), Complex(0.0)};
        return {-q / (2.0 * c2), -2.0 * c0 / q};
    }
    if (std::abs(c1) > zero_tol) return {-c0 / c1};
    return {};
}

struct GradientSystem {
    Poly2 fx, fy;  // normalized to unit max coefficient
    Poly2 fxx, fxy, fyx, fyy;

    explicit GradientSystem(const Poly2& f) {
        auto [gx, gy] = gradient(f);
        if (gx.is_zero() || gy.is_zero()) throw NonIsolatedLocusError();
        fx = scale(gx, 1.0 / gx.max_abs_coeff(), 0.0);
        fy = scale(gy, 1.0 / gy.max_abs_coeff(), 0.0);
        std::tie(fxx, fxy) = gradient(fx);
        std::tie(fyx, fyy) = gradient(fy);
    }

    // Complex Newton iteration on (fx, fy) = 0.
    void polish(Complex& x, Complex& y) const {
        for (int it = 0; it < 60; ++it) {
            const Complex vx = evaluate(fx, x, y);
            const Complex vy = evaluate(fy, x, y);
            const Complex j11 = evaluate(fxx, x, y);
            const Complex j12 = evaluate(fxy, x, y);
            const Complex j21 = evaluate(fyx, x, y);
            const Complex j22 = evaluate(fyy, x, y);
            const Complex det = j11 * j22 - j12 * j21;
            if (std::abs(det) < 1e-14) break;
            const Complex dx = (vx * j22 - vy * j12) / det;
            const Complex dy = (vy * j11 - vx * j21) / det;
            x -= dx;
            y -= dy;
            if (std::abs(dx) + std::abs(dy) < 1e-15 * (1.0 + std::abs(x) + std::abs(y))) break;
        }
    }

    bool satisfied(Complex x, Complex y) const {
        const double ref = (1.0 + std::abs(x) + std::abs(y));
        const double bound = kNewtonResidual * ref * ref;
        return std::abs(evaluate(fx, x, y)) <= bound && std::abs(evaluate(fy, x, y)) <= bound;
    }

    // Solutions of fx = fy = 0 over the complex numbers.
    std::vector<std::pair<Complex, Complex>> solve() const {
        UniPoly res = resultant_y(fx, fy);
        res.normalize(1e-13);
        if (res.is_zero(1e-10)) throw NonIsolatedLocusError();

        std::vector<std::pair<Complex, Complex>> points;
        for (Complex x0 : all_roots(res)) {
            const double local_tol = 1e-8 * std::pow(1.0 + std::abs(x0), 2);
            const std::vector<Complex> gx = y_poly_at(fx, x0);
            const std::vector<Complex> gy = y_poly_at(fy, x0);
            const bool gx_zero = all_small(gx, local_tol);
            const bool gy_zero = all_small(gy, local_tol);
            if (gx_zero && gy_zero) throw NonIsolatedLocusError();

            std::vector<Complex> candidates;
            if (!gx_zero)
                for (Complex y : quadratic_roots(gx, local_tol)) candidates.push_back(y);
            if (!gy_zero)
                for (Complex y : quadratic_roots(gy, local_tol)) candidates.push_back(y);

            for (Complex y0 : candidates) {
                Complex x = x0, y = y0;
                polish(x, y);
                if (!satisfied(x, y)) continue;
                bool duplicate = false;
                for (const auto& p : points) {
                    if (std::abs(p.first - x) + std::abs(p.second - y) <=
                        1e-8 * (1.0 + std::abs(x) + std::abs(y))) {
                        duplicate = true;
                        break;
                    }
                }
                if (!duplicate) points.emplace_back(x, y);
            }
        }
        std::sort(points.begin(), points.end(), [](const auto& a, const auto& b) {
            if (a.first.real() != b.first.real()) return a.first.real() < b.first.real();
            if (a.first.imag() != b.first.imag()) return a.first.imag() < b.first.imag();
            if (a.second.real() != b.second.real()) return a.second.real() < b.second.real();
            return a.second.imag() < b.second.imag();
        });
        return points;
    }
};

bool is_real_point(Complex x, Complex y) {
    const double ref = 1.0 + std::abs(x) + std::abs(y);
    return std::abs(x.imag()) <= 1e-8 * ref && std::abs(y.imag()) <= 1e-8 * ref;
}

}  // namespace

std::vector<std::pair<double, double>> critical_points_real(const Poly2& f) {
    require_cubic(f);
    GradientSystem sys(f);
    std::vector<std::pair<double, double>> out;
    for (const auto& [x, y] : sys.solve()) {
        if (!is_real_point(x, y)) continue;
        Complex xr(x.real(), 0.0), yr(y.real(), 0.0);
        sys.polish(xr, yr);
        if (sys.satisfied(xr.real(), yr.real())) out.emplace_back(xr.real(), yr.real());
    }
    std::sort(out.begin(), out.end());
    return out;
}

SingularityKind classify_singularity(const Poly2& f, double px, double py, double r) {
    require_cubic(f);
    const AffineMap shift = AffineMap::make(1, 0, px, 0, 1, py);
    const Poly2 local = sub(compose(f, shift, 0.0), Poly2::constant(r), 0.0);

    if (std::abs(local.coeff(0, 0)) > 1e-8 * std::max(1.0, std::abs(r) + f.max_abs_coeff()))
        throw CubicError("classify_singularity: f(p) differs from r");

    const double q20 = local.coeff(2, 0);
    const double q11 = local.coeff(1, 1);
    const double q02 = local.coeff(0, 2);
    const double qs = std::max({std::abs(q20), std::abs(q11), std::abs(q02)});
    const Poly2 cubic = homogeneous_component(local, 3).poly;
    const double cs = cubic.max_abs_coeff();

    if (qs <= 1e-10 * std::max(1.0, cs)) throw DegenerateSingularityError();

    const double det = 4.0 * q20 * q02 - q11 * q11;
    const double det_tol = 1e-9 * qs * qs;
    if (det < -det_tol) return SingularityKind::kNode;
    if (det > det_tol) return SingularityKind::kIsolated;

    // Rank one: Q is proportional to a squared linear form; a cusp needs
    // the cubic part to survive along its kernel direction.
    double dx, dy;
    if (std::abs(q20) >= std::abs(q02)) {
        const double v = q11 / (2.0 * q20);
        dx = -v;
        dy = 1.0;
    } else {
        const double u = q11 / (2.0 * q02);
        dx = 1.0;
        dy = -u;
    }
    const double norm = std::hypot(dx, dy);
    dx /= norm;
    dy /= norm;
    const double along = evaluate(cubic, dx, dy);
    if (std::abs(along) > 1e-8 * std::max(1.0, cs)) return SingularityKind::kCusp;
    throw DegenerateSingularityError();
}

std::vector<double> red_levels(const Poly2& f) {
    require_cubic(f);
    const double fscale = f.max_abs_coeff();
    const Poly2 fn = scale(f, 1.0 / fscale, 0.0);
    auto a = [&](int i, int j) { return fn.coeff(i, j); };

    std::vector<double> levels;
    const UniPoly c0_poly({a(0, 0), a(0, 1), a(0, 2), a(0, 3)});  // f(0, b)

    // Lines y = m*x + b: the x^3, x^2, x coefficients of f(x, mx+b)
    // must vanish; the constant coefficient is the level.
    const UniPoly c3({a(3, 0), a(2, 1), a(1, 2), a(0, 3)});
    for (double m : real_roots(c3, 1e-7, 1e-9)) {
        const double mref = std::pow(1.0 + std::abs(m), 3);
        const double eps = 1e-8 * mref;
        const double A = a(2, 1) + 2.0 * a(1, 2) * m + 3.0 * a(0, 3) * m * m;
        const double B = a(2, 0) + a(1, 1) * m + a(0, 2) * m * m;
        const UniPoly c1({a(1, 0) + a(0, 1) * m, a(1, 1) + 2.0 * a(0, 2) * m,
                          a(1, 2) + 3.0 * a(0, 3) * m});
        if (std::abs(A) > eps) {
            const double b = -B / A;
            if (std::abs(c1.eval(b)) <= 1e-7 * mref * std::pow(1.0 + std::abs(b), 2))
                levels.push_back(c0_poly.eval(b));
        } else if (std::abs(B) > eps) {
            continue;
        } else if (c1.is_zero(eps)) {
            UniPoly c0_var = c0_poly;
            c0_var.c[0] = 0.0;
            if (!c0_var.is_zero(eps)) throw ContinuumOfLevelsError();
            levels.push_back(a(0, 0));
        } else {
            for (double b : real_roots(c1, 1e-7, 1e-9)) levels.push_back(c0_poly.eval(b));
        }
    }

    // Vertical lines x = t: the y^3, y^2, y coefficients of f(t, y)
    // must vanish.
    if (std::abs(a(0, 3)) <= 1e-12) {
        const UniPoly av({a(0, 2), a(1, 2)});
        const UniPoly bv({a(0, 1), a(1, 1), a(2, 1)});
        const UniPoly cv({a(0, 0), a(1, 0), a(2, 0), a(3, 0)});  // f(t, 0)
        const double eps = 1e-8;
        if (std::abs(a(1, 2)) > eps) {
            const double t = -a(0, 2) / a(1, 2);
            if (std::abs(bv.eval(t)) <= 1e-7 * std::pow(1.0 + std::abs(t), 2))
                levels.push_back(cv.eval(t));
        } else if (std::abs(a(0, 2)) > eps) {
            // no vertical line
        } else if (bv.is_zero(eps)) {
            UniPoly cvar = cv;
            cvar.c[0] = 0.0;
            if (!cvar.is_zero(eps)) throw ContinuumOfLevelsError();
            levels.push_back(a(0, 0));
        } else {
            for (double t : real_roots(bv, 1e-7, 1e-9)) levels.push_back(cv.eval(t));
        }
    }

    for (double& s : levels) s *= fscale;
    return cluster_values(std::move(levels), 1e-7);
}

std::optional<Line> find_linear_factor(const Poly2& f) {
    require_cubic(f);
    const double fscale = f.max_abs_coeff();
    const Poly2 fn = scale(f, 1.0 / fscale, 0.0);
    auto a = [&](int i, int j) { return fn.coeff(i, j); };

    std::vector<Line> candidates;
    const UniPoly c0_poly({a(0, 0), a(0, 1), a(0, 2), a(0, 3)});

    const UniPoly c3({a(3, 0), a(2, 1), a(1, 2), a(0, 3)});
    for (double m : real_roots(c3, 1e-7, 1e-9)) {
        const double mref = std::pow(1.0 + std::abs(m), 3);
        const double eps = 1e-8 * mref;
        const double A = a(2, 1) + 2.0 * a(1, 2) * m + 3.0 * a(0, 3) * m * m;
        const double B = a(2, 0) + a(1, 1) * m + a(0, 2) * m * m;
        const UniPoly c1({a(1, 0) + a(0, 1) * m, a(1, 1) + 2.0 * a(0, 2) * m,
                          a(1, 2) + 3.0 * a(0, 3) * m});
        std::vector<double> bs;
        if (std::abs(A) > eps) {
            bs.push_back(-B / A);
        } else if (std::abs(B) > eps) {
            continue;
        } else if (c1.is_zero(eps)) {
            bs = real_roots(c0_poly, 1e-7, 1e-9);
        } else {
            bs = real_roots(c1, 1e-7, 1e-9);
        }
        for (double b : bs) candidates.push_back({m, -1.0, b});
    }

    if (std::abs(a(0, 3)) <= 1e-12) {
        const UniPoly bv({a(0, 1), a(1, 1), a(2, 1)});
        const UniPoly cv({a(0, 0), a(1, 0), a(2, 0), a(3, 0)});
        const double eps = 1e-8;
        std::vector<double> ts;
        if (std::abs(a(1, 2)) > eps) {
            ts.push_back(-a(0, 2) / a(1, 2));
        } else if (std::abs(a(0, 2)) > eps) {
            // none
        } else if (bv.is_zero(eps)) {
            ts = real_roots(cv, 1e-7, 1e-9);
        } else {
            ts = real_roots(bv, 1e-7, 1e-9);
        }
        for (double t : ts) candidates.push_back({1.0, 0.0, -t});
    }

    std::optional<Line> best;
    for (Line line : candidates) {
        const double norm = std::hypot(line.a, line.b);
        line.a /= norm;
        line.b /= norm;
        line.c /= norm;
        double lead = std::abs(line.a) > 1e-12 ? line.a : (std::abs(line.b) > 1e-12 ? line.b : line.c);
        if (lead < 0) {
            line.a = -line.a;
            line.b = -line.b;
            line.c = -line.c;
        }
        // The line must carry the zero set: check four sample points.
        const double x0 = -line.c * line.a, y0 = -line.c * line.b;
        bool ok = true;
        for (double t : {-1.5, -0.5, 0.5, 1.5}) {
            const double px = x0 - t * line.b;
            const double py = y0 + t * line.a;
            const double ref = std::pow(1.0 + std::abs(px) + std::abs(py), 3);
            if (std::abs(evaluate(fn, px, py)) > 1e-8 * ref) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        auto lex_less = [](const Line& u, const Line& v) {
            if (std::abs(u.a - v.a) > 1e-9) return u.a < v.a;
            if (std::abs(u.b - v.b) > 1e-9) return u.b < v.b;
            if (std::abs(u.c - v.c) > 1e-9) return u.c < v.c;
            return false;
        };
        if (!best || lex_less(line, *best)) best = line;
    }
    return best;
}

std::vector<Complex> sing_levels_complex(const Poly2& f) {
    require_cubic(f);
    GradientSystem sys(f);
    std::vector<Complex> values;
    for (const auto& [x, y] : sys.solve()) values.push_back(evaluate(f, x, y));
    values = cluster_values(std::move(values), 1e-7);

    // Real input polynomial: the set is closed under conjugation. Snap
    // near-real values and pair the rest with their conjugates.
    std::vector<Complex> out;
    std::vector<bool> used(values.size(), false);
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (used[i]) continue;
        used[i] = true;
        const Complex v = values[i];
        if (std::abs(v.imag()) <= 1e-9 * (1.0 + std::abs(v))) {
            out.emplace_back(v.real(), 0.0);
            continue;
        }
        bool paired = false;
        for (std::size_t j = i + 1; j < values.size(); ++j) {
            if (used[j]) continue;
            if (std::abs(values[j] - std::conj(v)) <= 1e-7 * (1.0 + std::abs(v))) {
                used[j] = true;
                const double re = (v.real() + values[j].real()) / 2.0;
                const double im = (std::abs(v.imag()) + std::abs(values[j].imag())) / 2.0;
                out.emplace_back(re, im);
                out.emplace_back(re, -im);
                paired = true;
                break;
            }
        }
        if (!paired) out.push_back(v);
    }
    std::sort(out.begin(), out.end(), [](Complex a, Complex b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return out;
}

InvariantReport invariant_report(const Poly2& f) {
    require_cubic(f);
    InvariantReport report;

    try {
        for (const auto& [px, py] : critical_points_real(f)) {
            const double r = evaluate(f, px, py);
            try {
                switch (classify_singularity(f, px, py, r)) {
                    case SingularityKind::kNode: report.node.push_back(r); break;
                    case SingularityKind::kCusp: report.cusp.push_back(r); break;
                    case SingularityKind::kIsolated: report.isol.push_back(r); break;
                }
            } catch (const DegenerateSingularityError&) {
                report.degenerate.push_back(r);
            }
        }
    } catch (const NonIsolatedLocusError&) {
        report.nonisolated_singular_locus = true;
    }

    try {
        report.red = red_levels(f);
    } catch (const ContinuumOfLevelsError&) {
        report.nonisolated_singular_locus = true;
    }

    try {
        report.sing_complex = sing_levels_complex(f);
    } catch (const NonIsolatedLocusError&) {
        report.nonisolated_singular_locus = true;
    }

    report.cusp = cluster_values(std::move(report.cusp), 1e-7);
    report.isol = cluster_values(std::move(report.isol), 1e-7);
    report.node = cluster_values(std::move(report.node), 1e-7);
    report.degenerate = cluster_values(std::move(report.degenerate), 1e-7);
    return report;
}

}  // namespace cubiccanon
