#ifndef CUBICCANON_INVARIANTS_HPP
#define CUBICCANON_INVARIANTS_HPP

#include <optional>
#include <vector>

#include "cubiccanon/poly2.hpp"
#include "cubiccanon/univariate.hpp"

namespace cubiccanon {

enum class SingularityKind { kNode, kCusp, kIsolated };

const char* singularity_name(SingularityKind kind);

/// The level sets of the curve family f - r = 0: cusp/isol/node/red
/// over the reals and sing over the complex numbers. Lists are
/// deduplicated (1e-7 clustering) and sorted ascending; sing_complex is
/// ordered lexicographically by (re, im). `degenerate` collects levels
/// whose singular point is none of node/cusp/isolated point (a tangent
/// crossing of two components); such levels appear in no other real
/// list.
struct InvariantReport {
    std::vector<double> cusp;
    std::vector<double> isol;
    std::vector<double> node;
    std::vector<double> red;
    std::vector<Complex> sing_complex;
    bool nonisolated_singular_locus = false;
    std::vector<double> degenerate;
};

/// All real solutions of grad f = 0, by resultant elimination in y and
/// back-substitution, Newton-polished. Throws NonIsolatedLocusError
/// when the partials share a nonconstant factor.
std::vector<std::pair<double, double>> critical_points_real(const Poly2& f);

/// Local type of the critical point p of f on the level f(p) = r.
/// Hessian indefinite -> node, definite -> isolated point, rank 1 with
/// a nonvanishing cubic term along the kernel -> cusp. Throws
/// DegenerateSingularityError otherwise.
SingularityKind classify_singularity(const Poly2& f, double px, double py, double r);

/// All shifts s such that f - s has a real linear factor. Throws
/// ContinuumOfLevelsError when infinitely many qualify.
std::vector<double> red_levels(const Poly2& f);

/// Line a*x + b*y + c = 0, normalized to unit (a, b) with the first
/// nonzero component positive.
struct Line {
    double a, b, c;
};

/// A line on which f vanishes identically, if one exists; the
/// lexicographically smallest normalized (a, b, c) wins.
std::optional<Line> find_linear_factor(const Poly2& f);

/// Complex critical values of f, closed under conjugation.
std::vector<Complex> sing_levels_complex(const Poly2& f);

/// Assemble the full report; degeneracies set the locus flag instead of
/// escaping as errors.
InvariantReport invariant_report(const Poly2& f);

}  // namespace cubiccanon

#endif
