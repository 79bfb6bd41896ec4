#pragma once

// Central tolerance policy.  All problem matrices here are small (dim <= ~16)
// and double precision leaves large headroom, so one set of constants serves
// the whole library.
namespace statecmp::tol {

inline constexpr double herm = 1e-10;      // Hermiticity validation, max-norm
inline constexpr double orth = 1e-10;      // orthonormality of basis columns
inline constexpr double isect = 1e-10;     // subspace intersection / containment
inline constexpr double recon = 1e-9;      // eigendecomposition reconstruction, per entry
inline constexpr double rank = 1e-10;      // relative eigenvalue/singular-value cutoff
inline constexpr double psd = 1e-10;       // POVM positivity slack (min eig >= -psd)
inline constexpr double complete = 1e-10;  // POVM completeness defect, max-norm
inline constexpr double zero_pattern = 1e-9;  // "must be zero" threshold in outcome patterns
inline constexpr double pos_pattern = 1e-9;   // "must be positive" threshold in outcome patterns
inline constexpr double prior_sum = 1e-12;    // priors must sum to 1 within this
inline constexpr double prob_sum = 1e-8;      // sampled outcome distribution defect
inline constexpr double prior_edge = 1e-6;    // q1 closer than this to 0 or 1 is rejected

} // namespace statecmp::tol
