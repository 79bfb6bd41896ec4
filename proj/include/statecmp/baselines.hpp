#pragma once

#include <vector>

#include "statecmp/ensemble.hpp"
#include "statecmp/solver2oo2.hpp"

// Optimal separable (two local measurements) baseline for the two-state
// comparison, the prior/overlap branch condition, the gain of the joint
// strategy over it, and grid data for plotting.
namespace statecmp {

// Branch condition: cos(theta) < sqrt((1 - q_max)/q_max).
bool condition_doublestar(double q1, double cos_theta);

struct PSepResult {
    double value = 0;
    bool doublestar = false; // condition held
};

// Separable success probability: the square of the local
// unambiguous-discrimination optimum.
PSepResult p_sep(double q1, double cos_theta, bool allow_limit = false);

struct SeparableSolution {
    double p_sep = 0;
    bool doublestar = false;
    double q_max = 0;
    Povm local_povm; // elements "1", "2", "?" on dim
    Povm povm;       // elements "a", "b", "?" on dim^2
    // True when the condition fails: the minority-state detector has weight
    // exactly 0 and unambiguity holds as the limit of an infinitesimally
    // perturbed measurement.
    bool eps_limit = false;
};

// The local unambiguous-discrimination measurement with the optimal weights;
// labels "1", "2", "?".
Povm local_ud_povm(double q1, double cos_theta);

// Builds the product measurement: same-outcome pairs report "equal",
// mixed-outcome pairs report "different", anything inconclusive stays
// inconclusive.  Verifies the closed form against the assembled traces.
SeparableSolution assemble_separable(const TwoTwoInstance& inst);

// p_opt - p_sep (never negative).
double gain(double q1, double cos_theta);

struct GainRow {
    double q1 = 0;
    double cos_theta = 0;
    double p_opt = 0;
    double p_sep = 0;
    double gain = 0;
    bool star = false;
    bool doublestar = false;
};

// Row-major sweep over the open parameter square, endpoints excluded by a
// half-step inset: q1 = (i + 1/2)/steps_q, cos_theta = (j + 1/2)/steps_c.
std::vector<GainRow> gain_grid(int steps_q, int steps_c);

} // namespace statecmp
