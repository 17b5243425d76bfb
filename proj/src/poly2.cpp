#include "cubiccanon/poly2.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <vector>

namespace cubiccanon {

Poly2 Poly2::constant(double c) { return monomial(0, 0, c); }
Poly2 Poly2::x() { return monomial(1, 0, 1.0); }
Poly2 Poly2::y() { return monomial(0, 1, 1.0); }

Poly2 Poly2::monomial(int i, int j, double c) {
    Poly2 p;
    if (c != 0.0) p.terms_[{i, j}] = c;
    return p;
}

double Poly2::coeff(int i, int j) const {
    auto it = terms_.find({i, j});
    return it == terms_.end() ? 0.0 : it->second;
}

int Poly2::degree() const {
    int d = -1;
    for (const auto& [k, c] : terms_) d = std::max(d, k.first + k.second);
    return d;
}

double Poly2::max_abs_coeff() const {
    double m = 0.0;
    for (const auto& [k, c] : terms_) m = std::max(m, std::abs(c));
    return m;
}

Poly2 Poly2::chopped(double eps) const {
    const double cutoff = eps * std::max(1.0, max_abs_coeff());
    Poly2 out;
    for (const auto& [k, c] : terms_)
        if (std::abs(c) > cutoff) out.terms_[k] = c;
    return out;
}

void Poly2::set_coeff(int i, int j, double c) {
    if (c == 0.0)
        terms_.erase({i, j});
    else
        terms_[{i, j}] = c;
}

SubstitutionMap SubstitutionMap::identity() { return {Poly2::x(), Poly2::y()}; }

Poly2 add(const Poly2& f, const Poly2& g, double chop_eps) {
    Poly2 out = f;
    for (const auto& [k, c] : g.terms()) out.set_coeff(k.first, k.second, out.coeff(k.first, k.second) + c);
    return out.chopped(chop_eps);
}

Poly2 sub(const Poly2& f, const Poly2& g, double chop_eps) {
    Poly2 out = f;
    for (const auto& [k, c] : g.terms()) out.set_coeff(k.first, k.second, out.coeff(k.first, k.second) - c);
    return out.chopped(chop_eps);
}

Poly2 mul(const Poly2& f, const Poly2& g, double chop_eps) {
    Poly2 out;
    for (const auto& [ka, ca] : f.terms())
        for (const auto& [kb, cb] : g.terms()) {
            const int i = ka.first + kb.first;
            const int j = ka.second + kb.second;
            out.set_coeff(i, j, out.coeff(i, j) + ca * cb);
        }
    return out.chopped(chop_eps);
}

Poly2 scale(const Poly2& f, double c, double chop_eps) {
    Poly2 out;
    for (const auto& [k, v] : f.terms()) out.set_coeff(k.first, k.second, v * c);
    return out.chopped(chop_eps);
}

Poly2 compose(const Poly2& f, const SubstitutionMap& s, double chop_eps) {
    int max_i = 0, max_j = 0;
    for (const auto& [k, c] : f.terms()) {
        max_i = std::max(max_i, k.first);
        max_j = std::max(max_j, k.second);
    }
    std::vector<Poly2> p_pow(max_i + 1), q_pow(max_j + 1);
    p_pow[0] = Poly2::constant(1.0);
    q_pow[0] = Poly2::constant(1.0);
    for (int i = 1; i <= max_i; ++i) p_pow[i] = mul(p_pow[i - 1], s.p, 0.0);
    for (int j = 1; j <= max_j; ++j) q_pow[j] = mul(q_pow[j - 1], s.q, 0.0);

    Poly2 out;
    for (const auto& [k, c] : f.terms()) {
        Poly2 term = mul(p_pow[k.first], q_pow[k.second], 0.0);
        for (const auto& [tk, tc] : term.terms())
            out.set_coeff(tk.first, tk.second, out.coeff(tk.first, tk.second) + c * tc);
    }
    return out.chopped(chop_eps);
}

SubstitutionMap compose_maps(const SubstitutionMap& s1, const SubstitutionMap& s2,
                             double chop_eps) {
    return {compose(s1.p, s2, chop_eps), compose(s1.q, s2, chop_eps)};
}

HomogeneousPart homogeneous_component(const Poly2& f, int k) {
    HomogeneousPart part;
    part.degree = k;
    for (const auto& [key, c] : f.terms())
        if (key.first + key.second == k) part.poly.set_coeff(key.first, key.second, c);
    return part;
}

std::pair<Poly2, Poly2> gradient(const Poly2& f) {
    Poly2 fx, fy;
    for (const auto& [k, c] : f.terms()) {
        if (k.first > 0) fx.set_coeff(k.first - 1, k.second, c * k.first);
        if (k.second > 0) fy.set_coeff(k.first, k.second - 1, c * k.second);
    }
    return {fx, fy};
}

namespace {

// Horner over y inside Horner over x, on a dense staging grid.
template <typename T>
T evaluate_impl(const Poly2& f, T x0, T y0) {
    if (f.is_zero()) return T(0);
    int max_i = 0, max_j = 0;
    for (const auto& [k, c] : f.terms()) {
        max_i = std::max(max_i, k.first);
        max_j = std::max(max_j, k.second);
    }
    std::vector<std::vector<double>> rows(max_i + 1, std::vector<double>(max_j + 1, 0.0));
    for (const auto& [k, c] : f.terms()) rows[k.first][k.second] = c;

    T acc(0);
    for (int i = max_i; i >= 0; --i) {
        T row(0);
        for (int j = max_j; j >= 0; --j) row = row * y0 + T(rows[i][j]);
        acc = acc * x0 + row;
    }
    return acc;
}

void append_double(std::string& out, double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    out.append(buf, res.ptr);
}

void append_monomial(std::string& out, int i, int j, double magnitude) {
    const bool unit = magnitude == 1.0;
    const bool has_vars = i > 0 || j > 0;
    if (!unit || !has_vars) append_double(out, magnitude);
    if (i > 0) {
        if (!unit) out += "*";
        out += "x";
        if (i > 1) {
            out += "^";
            out += std::to_string(i);
        }
    }
    if (j > 0) {
        if (!unit || i > 0) out += "*";
        out += "y";
        if (j > 1) {
            out += "^";
            out += std::to_string(j);
        }
    }
}

}  // namespace

double evaluate(const Poly2& f, double x0, double y0) { return evaluate_impl(f, x0, y0); }

std::complex<double> evaluate(const Poly2& f, std::complex<double> x0,
                              std::complex<double> y0) {
    return evaluate_impl(f, x0, y0);
}

std::string to_string(const Poly2& f) {
    if (f.is_zero()) return "0";
    std::vector<std::pair<Poly2::Key, double>> terms(f.terms().begin(), f.terms().end());
    std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
        const int da = a.first.first + a.first.second;
        const int db = b.first.first + b.first.second;
        if (da != db) return da > db;
        return a.first.first > b.first.first;
    });
    std::string out;
    bool first = true;
    for (const auto& [k, c] : terms) {
        if (first) {
            if (c < 0) out += "-";
            first = false;
        } else {
            out += c < 0 ? " - " : " + ";
        }
        append_monomial(out, k.first, k.second, std::abs(c));
    }
    return out;
}

double max_abs_diff(const Poly2& f, const Poly2& g) {
    return sub(f, g, 0.0).max_abs_coeff();
}

}  // namespace cubiccanon
