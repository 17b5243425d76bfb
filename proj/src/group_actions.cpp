#include "cubiccanon/group_actions.hpp"

#include <cmath>
#include <stdexcept>

#include "cubiccanon/errors.hpp"
#include "cubiccanon/parse.hpp"

namespace cubiccanon {

double uniform_in(Rng& rng, double lo, double hi) {
    const double unit = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return lo + unit * (hi - lo);
}

AffineMap sample_affine(Rng& rng, double range) {
    if (range <= 0.0) throw std::invalid_argument("sample_affine: range must be positive");
    const double det_floor = 0.1 * range * range;
    for (;;) {
        const double A = uniform_in(rng, -range, range);
        const double B = uniform_in(rng, -range, range);
        const double R = uniform_in(rng, -range, range);
        const double C = uniform_in(rng, -range, range);
        const double D = uniform_in(rng, -range, range);
        const double S = uniform_in(rng, -range, range);
        if (std::abs(A * D - B * C) >= det_floor) return AffineMap{A, B, R, C, D, S};
    }
}

AffineMap sample_affine(std::uint64_t seed, double range) {
    Rng rng(seed);
    return sample_affine(rng, range);
}

SubstitutionMap TriangularMap::to_substitution() const {
    Poly2 h_poly;
    for (std::size_t k = 0; k < h.size(); ++k) {
        if (h[k] == 0) continue;
        if (shear_x)
            h_poly.set_coeff(0, static_cast<int>(k), static_cast<double>(h[k]));
        else
            h_poly.set_coeff(static_cast<int>(k), 0, static_cast<double>(h[k]));
    }
    if (shear_x) return {add(Poly2::x(), h_poly, 0.0), Poly2::y()};
    return {Poly2::x(), add(Poly2::y(), h_poly, 0.0)};
}

TriangularMap TriangularMap::inverted() const {
    TriangularMap inv = *this;
    for (long& c : inv.h) c = -c;
    return inv;
}

namespace {

SubstitutionMap generator_substitution(const TameGenerator& g) {
    if (std::holds_alternative<AffineMap>(g)) return std::get<AffineMap>(g).to_substitution();
    return std::get<TriangularMap>(g).to_substitution();
}

SubstitutionMap generator_inverse_substitution(const TameGenerator& g) {
    if (std::holds_alternative<AffineMap>(g))
        return affine_invert(std::get<AffineMap>(g)).to_substitution();
    return std::get<TriangularMap>(g).inverted().to_substitution();
}

}  // namespace

Poly2 TameMap::apply(const Poly2& f) const {
    Poly2 out = f;
    for (const auto& g : generators) out = compose(out, generator_substitution(g), 0.0);
    return out;
}

Poly2 TameMap::apply_inverse(const Poly2& f) const {
    Poly2 out = f;
    for (auto it = generators.rbegin(); it != generators.rend(); ++it)
        out = compose(out, generator_inverse_substitution(*it), 0.0);
    return out;
}

SubstitutionMap TameMap::realize() const {
    SubstitutionMap m = SubstitutionMap::identity();
    return {apply(m.p), apply(m.q)};
}

SubstitutionMap TameMap::realize_inverse() const {
    SubstitutionMap m = SubstitutionMap::identity();
    return {apply_inverse(m.p), apply_inverse(m.q)};
}

TameMap sample_tame(std::uint64_t seed, int max_generators, int max_h_degree) {
    Rng rng(seed);
    auto pick = [&rng](int n) { return static_cast<int>(rng() % static_cast<std::uint64_t>(n)); };

    TameMap tame;
    const int count = max_generators > 0 ? pick(max_generators + 1) : 0;
    for (int k = 0; k < count; ++k) {
        if (k % 2 == 0) {
            // Unimodular integer affine: signed permutation, one integer
            // shear, integer translation. det = +-1 keeps the inverse exact.
            double A = 1, B = 0, C = 0, D = 1;
            switch (pick(4)) {
                case 0: break;
                case 1: A = 0; B = 1; C = 1; D = 0; break;  // swap
                case 2: A = -1; break;
                case 3: D = -1; break;
            }
            const int shear = pick(5) - 2;
            if (pick(2) == 0) {
                // column shear x -> x + shear*y
                B += A * shear;
                D += C * shear;
            } else {
                A += B * shear;
                C += D * shear;
            }
            const double R = pick(7) - 3;
            const double S = pick(7) - 3;
            tame.generators.emplace_back(AffineMap{A, B, R, C, D, S});
        } else {
            TriangularMap tri;
            tri.shear_x = pick(2) == 0;
            const int deg = 1 + pick(std::max(1, max_h_degree));
            tri.h.assign(deg + 1, 0);
            for (int d = 1; d <= deg; ++d) tri.h[d] = pick(7) - 3;
            tame.generators.emplace_back(tri);
        }
    }
    return tame;
}

AutDegReport check_autdeg_table() {
    AutDegReport report;
    const struct {
        const char* input;
        const char* map;
        const char* expected;
    } rows[] = {
        {"x^3 - y", "y ; y^3 - x", "x"},
        {"x^3 - x*y", "y ; y^2 - x", "x*y"},
        {"x^3 - x*y + 1", "y ; y^2 - x", "x*y + 1"},
    };
    report.all_pass = true;
    for (const auto& row : rows) {
        const Poly2 f = parse_poly(row.input);
        const SubstitutionMap phi = parse_map(row.map);
        const Poly2 expected = parse_poly(row.expected);
        const bool pass = compose(f, phi, 0.0) == expected;
        report.rows.push_back({row.input, row.map, row.expected, pass});
        report.all_pass = report.all_pass && pass;
    }
    return report;
}

}  // namespace cubiccanon
