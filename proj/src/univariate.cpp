#include "cubiccanon/univariate.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace cubiccanon {

int UniPoly::degree() const {
    for (int k = static_cast<int>(c.size()) - 1; k >= 0; --k)
        if (c[k] != 0.0) return k;
    return -1;
}

double UniPoly::max_abs() const {
    double m = 0.0;
    for (double v : c) m = std::max(m, std::abs(v));
    return m;
}

bool UniPoly::is_zero(double eps) const {
    for (double v : c)
        if (std::abs(v) > eps) return false;
    return true;
}

double UniPoly::eval(double t) const {
    double acc = 0.0;
    for (int k = static_cast<int>(c.size()) - 1; k >= 0; --k) acc = acc * t + c[k];
    return acc;
}

Complex UniPoly::eval(Complex t) const {
    Complex acc = 0.0;
    for (int k = static_cast<int>(c.size()) - 1; k >= 0; --k) acc = acc * t + c[k];
    return acc;
}

UniPoly UniPoly::derivative() const {
    UniPoly d;
    for (std::size_t k = 1; k < c.size(); ++k) d.c.push_back(c[k] * static_cast<double>(k));
    return d;
}

void UniPoly::normalize(double eps) {
    const double cutoff = eps * max_abs();
    while (!c.empty() && std::abs(c.back()) <= cutoff) c.pop_back();
}

UniPoly uni_add(const UniPoly& a, const UniPoly& b) {
    UniPoly out;
    out.c.resize(std::max(a.c.size(), b.c.size()), 0.0);
    for (std::size_t k = 0; k < a.c.size(); ++k) out.c[k] += a.c[k];
    for (std::size_t k = 0; k < b.c.size(); ++k) out.c[k] += b.c[k];
    return out;
}

UniPoly uni_mul(const UniPoly& a, const UniPoly& b) {
    if (a.c.empty() || b.c.empty()) return {};
    UniPoly out;
    out.c.resize(a.c.size() + b.c.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.c.size(); ++i)
        for (std::size_t j = 0; j < b.c.size(); ++j) out.c[i + j] += a.c[i] * b.c[j];
    return out;
}

UniPoly uni_scale(const UniPoly& a, double s) {
    UniPoly out = a;
    for (double& v : out.c) v *= s;
    return out;
}

namespace {

Complex newton_polish(const UniPoly& p, const UniPoly& dp, Complex z) {
    for (int it = 0; it < 40; ++it) {
        const Complex f = p.eval(z);
        const Complex d = dp.eval(z);
        if (std::abs(d) < 1e-300) break;
        const Complex step = f / d;
        z -= step;
        if (std::abs(step) < 1e-15 * (1.0 + std::abs(z))) break;
    }
    return z;
}

}  // namespace

std::vector<Complex> all_roots(const UniPoly& input) {
    UniPoly p = input;
    p.normalize();
    const int n = p.degree();
    if (n <= 0) return {};
    std::vector<Complex> monic(n + 1);
    for (int k = 0; k <= n; ++k) monic[k] = p.c[k] / p.c[n];

    auto eval_monic = [&](Complex z) {
        Complex acc = 0.0;
        for (int k = n; k >= 0; --k) acc = acc * z + monic[k];
        return acc;
    };

    double radius = 0.0;
    for (int k = 0; k < n; ++k) radius = std::max(radius, std::abs(monic[k]));
    radius = 1.0 + radius;

    std::vector<Complex> z(n);
    const Complex seed(0.4, 0.9);
    Complex w = 1.0;
    for (int k = 0; k < n; ++k) {
        w *= seed;
        z[k] = radius * w;
    }

    for (int it = 0; it < 200; ++it) {
        double max_step = 0.0;
        for (int k = 0; k < n; ++k) {
            Complex denom = 1.0;
            for (int j = 0; j < n; ++j)
                if (j != k) denom *= (z[k] - z[j]);
            if (std::abs(denom) < 1e-300) denom = 1e-300;
            const Complex step = eval_monic(z[k]) / denom;
            z[k] -= step;
            max_step = std::max(max_step, std::abs(step));
        }
        if (max_step < 1e-14 * radius) break;
    }

    const UniPoly dp = p.derivative();
    for (auto& root : z) root = newton_polish(p, dp, root);
    return z;
}

std::vector<double> real_roots(const UniPoly& input, double imag_tol, double cluster_tol) {
    UniPoly p = input;
    p.normalize();
    const UniPoly dp = p.derivative();
    std::vector<double> out;
    for (Complex z : all_roots(p)) {
        if (std::abs(z.imag()) > imag_tol * (1.0 + std::abs(z))) continue;
        double t = z.real();
        for (int it = 0; it < 40; ++it) {
            const double d = dp.eval(t);
            if (std::abs(d) < 1e-300) break;
            const double step = p.eval(t) / d;
            t -= step;
            if (std::abs(step) < 1e-15 * (1.0 + std::abs(t))) break;
        }
        // Reject polish escapes and residual non-roots.
        if (std::abs(p.eval(t)) > 1e-6 * (1.0 + p.max_abs()) * std::pow(1.0 + std::abs(t), p.degree()))
            continue;
        out.push_back(t);
    }
    return cluster_values(std::move(out), cluster_tol);
}

UniPoly resultant_y(const Poly2& f, const Poly2& g) {
    auto y_coeffs = [](const Poly2& h) {
        int deg_y = 0;
        for (const auto& [k, c] : h.terms()) deg_y = std::max(deg_y, k.second);
        std::vector<UniPoly> out(deg_y + 1);
        for (const auto& [k, c] : h.terms()) {
            auto& poly = out[k.second].c;
            if (static_cast<int>(poly.size()) <= k.first) poly.resize(k.first + 1, 0.0);
            poly[k.first] = c;
        }
        for (auto& u : out) u.normalize(0.0);
        while (out.size() > 1 && out.back().c.empty()) out.pop_back();
        return out;
    };

    const std::vector<UniPoly> fc = y_coeffs(f);
    const std::vector<UniPoly> gc = y_coeffs(g);
    const int m = static_cast<int>(fc.size()) - 1;
    const int n = static_cast<int>(gc.size()) - 1;

    if (m == 0 && n == 0) return UniPoly({1.0});
    if (m == 0) {
        UniPoly acc({1.0});
        for (int k = 0; k < n; ++k) acc = uni_mul(acc, fc[0]);
        return acc;
    }
    if (n == 0) {
        UniPoly acc({1.0});
        for (int k = 0; k < m; ++k) acc = uni_mul(acc, gc[0]);
        return acc;
    }

    // Sylvester matrix, rows of f-coefficients then g-coefficients.
    const int size = m + n;
    std::vector<std::vector<UniPoly>> mat(size, std::vector<UniPoly>(size));
    for (int r = 0; r < n; ++r)
        for (int k = 0; k <= m; ++k) mat[r][r + (m - k)] = fc[k];
    for (int r = 0; r < m; ++r)
        for (int k = 0; k <= n; ++k) mat[n + r][r + (n - k)] = gc[k];

    // Cofactor expansion; the matrix is at most 4x4 for cubic inputs.
    std::vector<int> cols(size);
    for (int k = 0; k < size; ++k) cols[k] = k;

    std::function<UniPoly(int, std::vector<int>&)> det = [&](int row,
                                                             std::vector<int>& active) -> UniPoly {
        if (active.empty()) return UniPoly({1.0});
        UniPoly acc;
        for (std::size_t pick = 0; pick < active.size(); ++pick) {
            const int col = active[pick];
            if (mat[row][col].c.empty()) continue;
            std::vector<int> rest;
            rest.reserve(active.size() - 1);
            for (std::size_t k = 0; k < active.size(); ++k)
                if (k != pick) rest.push_back(active[k]);
            UniPoly minor = det(row + 1, rest);
            UniPoly contrib = uni_mul(mat[row][col], minor);
            if (pick % 2 == 1) contrib = uni_scale(contrib, -1.0);
            acc = uni_add(acc, contrib);
        }
        return acc;
    };
    return det(0, cols);
}

std::vector<double> cluster_values(std::vector<double> values, double tol) {
    std::sort(values.begin(), values.end());
    std::vector<double> out;
    for (double v : values) {
        if (!out.empty() && std::abs(v - out.back()) <= tol * (1.0 + std::abs(v)))
            out.back() = (out.back() + v) / 2.0;
        else
            out.push_back(v);
    }
    return out;
}

std::vector<Complex> cluster_values(std::vector<Complex> values, double tol) {
    std::sort(values.begin(), values.end(), [](Complex a, Complex b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    std::vector<Complex> out;
    for (Complex v : values) {
        bool merged = false;
        for (Complex& u : out) {
            if (std::abs(v - u) <= tol * (1.0 + std::abs(v))) {
                u = (u + v) / 2.0;
                merged = true;
                break;
            }
        }
        if (!merged) out.push_back(v);
    }
    std::sort(out.begin(), out.end(), [](Complex a, Complex b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return out;
}

}  // namespace cubiccanon
