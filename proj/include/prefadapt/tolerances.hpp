#pragma once

namespace prefadapt::tol {

// Simplex pivoting and reduced-cost sign tests.
inline constexpr double kPivot = 1e-9;
// Vertex feasibility, tightness and max-norm identity.
inline constexpr double kVertex = 1e-7;
// Allowed deviation of a preference vector from unit Euclidean norm.
inline constexpr double kUnitNorm = 1e-9;
// Smallest max-margin value for which the preference cone counts as
// having an interior.
inline constexpr double kMargin = 1e-7;

}  // namespace prefadapt::tol
