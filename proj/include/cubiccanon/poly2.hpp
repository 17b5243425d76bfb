#ifndef CUBICCANON_POLY2_HPP
#define CUBICCANON_POLY2_HPP

#include <complex>
#include <map>
#include <string>
#include <utility>

#include "cubiccanon/tolerances.hpp"

namespace cubiccanon {

/// Sparse bivariate real polynomial. Terms map exponent pairs (i, j),
/// meaning x^i * y^j, to nonzero double coefficients. All arithmetic
/// chops coefficients whose magnitude is at most
/// chop_eps * max(1, largest |coefficient|), so debris from radical
/// scalars never survives into case dispatch. Values are immutable in
/// spirit: every operation returns a fresh polynomial.
class Poly2 {
  public:
    using Key = std::pair<int, int>;
    using TermMap = std::map<Key, double>;

    Poly2() = default;

    static Poly2 constant(double c);
    static Poly2 x();
    static Poly2 y();
    static Poly2 monomial(int i, int j, double c = 1.0);

    /// Coefficient of x^i y^j (0.0 when absent).
    double coeff(int i, int j) const;
    const TermMap& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }

    /// Total degree; -1 is the sentinel for the zero polynomial.
    int degree() const;

    double max_abs_coeff() const;

    /// Drop coefficients with |c| <= eps * max(1, max |coeff|).
    Poly2 chopped(double eps = kChopEps) const;

    void set_coeff(int i, int j, double c);

    /// Exact term-map identity (both sides assumed chopped).
    friend bool operator==(const Poly2& a, const Poly2& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const Poly2& a, const Poly2& b) { return !(a == b); }

  private:
    TermMap terms_;
};

/// Pair <p, q> acting on polynomials by substitution x -> p, y -> q.
struct SubstitutionMap {
    Poly2 p;
    Poly2 q;

    static SubstitutionMap identity();
};

struct HomogeneousPart {
    int degree = 0;
    Poly2 poly;
};

Poly2 add(const Poly2& f, const Poly2& g, double chop_eps = kChopEps);
Poly2 sub(const Poly2& f, const Poly2& g, double chop_eps = kChopEps);
Poly2 mul(const Poly2& f, const Poly2& g, double chop_eps = kChopEps);
Poly2 scale(const Poly2& f, double c, double chop_eps = kChopEps);

inline Poly2 operator+(const Poly2& f, const Poly2& g) { return add(f, g); }
inline Poly2 operator-(const Poly2& f, const Poly2& g) { return sub(f, g); }
inline Poly2 operator*(const Poly2& f, const Poly2& g) { return mul(f, g); }
inline Poly2 operator*(double c, const Poly2& f) { return scale(f, c); }
inline Poly2 operator*(const Poly2& f, double c) { return scale(f, c); }
inline Poly2 operator-(const Poly2& f) { return scale(f, -1.0); }

/// f(p, q) fully expanded.
Poly2 compose(const Poly2& f, const SubstitutionMap& s, double chop_eps = kChopEps);

/// Substitute s2 into the components of s1, so that
/// compose(compose(f, s1), s2) == compose(f, compose_maps(s1, s2)).
SubstitutionMap compose_maps(const SubstitutionMap& s1, const SubstitutionMap& s2,
                             double chop_eps = kChopEps);

/// Sum of the terms of total degree k.
HomogeneousPart homogeneous_component(const Poly2& f, int k);

/// (df/dx, df/dy).
std::pair<Poly2, Poly2> gradient(const Poly2& f);

/// Horner-style evaluation, one variable at a time.
double evaluate(const Poly2& f, double x0, double y0);
std::complex<double> evaluate(const Poly2& f, std::complex<double> x0,
                              std::complex<double> y0);

/// Graded-lexicographic text form (x before y, descending degree);
/// coefficients printed in shortest round-trip decimal.
std::string to_string(const Poly2& f);

/// Max-norm of the coefficient vector of f - g.
double max_abs_diff(const Poly2& f, const Poly2& g);

}  // namespace cubiccanon

#endif
