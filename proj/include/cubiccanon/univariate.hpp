#ifndef CUBICCANON_UNIVARIATE_HPP
#define CUBICCANON_UNIVARIATE_HPP

#include <complex>
#include <vector>

#include "cubiccanon/poly2.hpp"

namespace cubiccanon {

using Complex = std::complex<double>;

/// Dense univariate polynomial, c[k] the coefficient of t^k.
/// Trailing (leading-degree) zeros are trimmed by normalize().
struct UniPoly {
    std::vector<double> c;

    UniPoly() = default;
    explicit UniPoly(std::vector<double> coeffs) : c(std::move(coeffs)) {}

    int degree() const;
    double max_abs() const;
    bool is_zero(double eps = 0.0) const;
    double eval(double t) const;
    Complex eval(Complex t) const;
    UniPoly derivative() const;

    /// Trim leading coefficients with |c| <= eps * max_abs().
    void normalize(double eps = 1e-13);
};

UniPoly uni_add(const UniPoly& a, const UniPoly& b);
UniPoly uni_mul(const UniPoly& a, const UniPoly& b);
UniPoly uni_scale(const UniPoly& a, double s);

/// All complex roots by simultaneous (Durand-Kerner) iteration followed
/// by a few Newton polish steps per root. Leading coefficient must be
/// nonzero after normalize().
std::vector<Complex> all_roots(const UniPoly& p);

/// Real roots of p: complex roots filtered by small imaginary part and
/// polished by real Newton. Clustered duplicates are merged.
std::vector<double> real_roots(const UniPoly& p, double imag_tol = 1e-7,
                               double cluster_tol = 1e-9);

/// Resultant of f and g with respect to y, as a polynomial in x.
/// Entries of the Sylvester matrix are the y-coefficients of f and g,
/// each a univariate polynomial in x. Conventions: Res = 1 when both
/// have y-degree 0; Res = lead^n when exactly one does.
UniPoly resultant_y(const Poly2& f, const Poly2& g);

/// Merge values closer than tol; output sorted ascending.
std::vector<double> cluster_values(std::vector<double> values, double tol);
std::vector<Complex> cluster_values(std::vector<Complex> values, double tol);

}  // namespace cubiccanon

#endif
