#pragma once

#include <optional>

#include "statecmp/reduction.hpp"

// Equal-overlap, equal-prior comparison of two systems drawn from three pure
// states: reduction structure, the overlap region in which the known lower
// and upper bounds coincide, and the closed-form optimum inside it.
namespace statecmp {

struct ThreeInstance {
    double cos_theta = 0;
    PureEnsemble ensemble; // 3 equal-overlap unit vectors in dim 3, priors 1/3
};

ThreeInstance make_three_instance(double cos_theta);

// (sqrt(2) - sqrt(sqrt(2))) / (2 - sqrt(2)): the largest overlap for which
// the closed-form optimum below is known to be tight.
double region_boundary();

struct ThreeReport {
    Index dim_H_prime = 0;
    Index dim_kcap_a = 0;
    Index dim_kcap_b = 0;
    bool region_ok = false;
    std::optional<double> p_opt; // present iff region_ok
    double boundary = 0;
};

// Reduction dimensions plus the closed form
// P = 1 - (sqrt(8)/9) (4 cos - cos^2) inside the region.
ThreeReport p_opt3(double cos_theta);

// Full reduction of the assembled 9x9 problem; checks the expected structure
// (dim H' = 6 with H' equal to the swap-symmetric subspace, corner dimensions
// 3 and 0) and throws with the offending dimension otherwise.
ReductionResult reduce3(const ThreeInstance& inst);

// Best product-of-local-unambiguous-identification value found by a coarse
// search over detector weights; a heuristic reference point, not a proven
// separable optimum.
double separable3_heuristic(double cos_theta);

} // namespace statecmp
