#ifndef CUBICCANON_GROUP_ACTIONS_HPP
#define CUBICCANON_GROUP_ACTIONS_HPP

#include <cstdint>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "cubiccanon/affine.hpp"
#include "cubiccanon/poly2.hpp"

namespace cubiccanon {

/// Deterministic RNG stream; all sampling takes an explicit seed.
using Rng = std::mt19937_64;

/// Uniform double in [lo, hi) drawn portably from the raw engine
/// stream (distribution objects are implementation-defined).
double uniform_in(Rng& rng, double lo, double hi);

/// Affine map with coefficients uniform in [-range, range], rejection
/// resampled until |det| >= 0.1 * range^2. Throws on range <= 0.
AffineMap sample_affine(Rng& rng, double range);
AffineMap sample_affine(std::uint64_t seed, double range);

/// Shear <x + h(y), y> or <x, y + h(x)> with a univariate integer h.
struct TriangularMap {
    bool shear_x;  // true: x + h(y); false: y + h(x)
    std::vector<long> h;  // h[k] is the coefficient of t^k

    SubstitutionMap to_substitution() const;
    TriangularMap inverted() const;
};

using TameGenerator = std::variant<AffineMap, TriangularMap>;

/// Ordered product of affine and triangular generators. The realized
/// substitution is invertible by construction; the inverse applies the
/// inverted generators in reverse order.
struct TameMap {
    std::vector<TameGenerator> generators;

    Poly2 apply(const Poly2& f) const;
    Poly2 apply_inverse(const Poly2& f) const;
    SubstitutionMap realize() const;
    SubstitutionMap realize_inverse() const;
};

/// Random alternating product of integer affine maps (unimodular, so
/// the inverse stays exactly representable) and triangular shears with
/// small integer coefficients.
TameMap sample_tame(std::uint64_t seed, int max_generators, int max_h_degree);

struct AutDegRow {
    std::string input;
    std::string map_text;
    std::string expected;
    bool pass = false;
};

struct AutDegReport {
    std::vector<AutDegRow> rows;
    bool all_pass = false;
};

/// Verify the three degree-dropping substitutions with exact
/// coefficient arithmetic.
AutDegReport check_autdeg_table();

}  // namespace cubiccanon

#endif
