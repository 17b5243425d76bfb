#ifndef CUBICCANON_TOLERANCES_HPP
#define CUBICCANON_TOLERANCES_HPP

namespace cubiccanon {

// A coefficient c of a polynomial with largest coefficient M is dropped
// when |c| <= kChopEps * max(1, M).
inline constexpr double kChopEps = 1e-9;

// Table-guard equality tolerance: guards compare with
// |a - b| <= eps_case * max(1, |a|, |b|).
inline constexpr double kCaseEps = 1e-9;

// Witness acceptance bound on the relative residual of
// compose(f, witness) - scale * canonical.
inline constexpr double kResidualBound = 1e-6;

// Floor on |det| of an AffineMap.
inline constexpr double kDetFloor = 1e-12;

struct Tolerances {
    double chop = kChopEps;
    double case_eps = kCaseEps;
    double residual_bound = kResidualBound;
};

}  // namespace cubiccanon

#endif
