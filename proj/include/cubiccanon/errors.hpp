#ifndef CUBICCANON_ERRORS_HPP
#define CUBICCANON_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cubiccanon {

// Base class for all library errors.
struct CubicError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Text did not conform to the expression grammar. `position` is the
// 0-based byte offset of the first offending character.
struct ParseError : CubicError {
    ParseError(const std::string& what, std::size_t position)
        : CubicError(what + " at offset " + std::to_string(position)),
          position(position) {}
    std::size_t position;
};

// Input polynomial does not have total degree 3.
struct NotCubicError : CubicError {
    NotCubicError() : CubicError("polynomial is not of degree 3") {}
};

// The homogeneous degree-3 part is (numerically) zero.
struct ZeroCubicPartError : CubicError {
    ZeroCubicPartError() : CubicError("cubic part is zero") {}
};

// Affine map with |det| below the invertibility floor.
struct SingularMapError : CubicError {
    SingularMapError() : CubicError("affine map is singular") {}
};

// The partial derivatives share a nonconstant factor: the singular
// locus is a curve, not a finite point set.
struct NonIsolatedLocusError : CubicError {
    NonIsolatedLocusError() : CubicError("singular locus is not a finite point set") {}
};

// Infinitely many shifts s make f - s reducible.
struct ContinuumOfLevelsError : CubicError {
    ContinuumOfLevelsError() : CubicError("reducible levels form a continuum") {}
};

// Critical point whose local structure is none of node/cusp/isolated point.
struct DegenerateSingularityError : CubicError {
    DegenerateSingularityError() : CubicError("degenerate singular point") {}
};

// No table row matched; indicates a tolerance misconfiguration and
// should be unreachable for well-formed inputs.
struct InternalDispatchError : CubicError {
    using CubicError::CubicError;
};

}  // namespace cubiccanon

#endif
