#pragma once

#include "statecmp/ensemble.hpp"
#include "statecmp/hermlin.hpp"

// Closed-form optimal comparison of two systems drawn from two pure states
// with arbitrary non-vanishing priors: the four-vector product basis, the
// direction left after the reductions, the prior/overlap branch condition,
// the optimal success probability, and the full measurement.
namespace statecmp {

// Parameters plus explicit vectors realizing the overlap.  cos_theta is the
// real overlap <psi1|psi2>, restricted to the open interval (0, 1).
struct TwoTwoInstance {
    double q1 = 0;
    double cos_theta = 0;
    Index dim = 0;
    ComplexVector psi1;
    ComplexVector psi2;

    double q2() const { return 1.0 - q1; }
    double eta_a() const { return q1 * q1 + q2() * q2(); }
    double eta_b() const { return 2.0 * q1 * q2(); }
};

// Canonical embedding: psi1 = (1, 0), psi2 = (cos_theta, sin_theta) in dim 2.
TwoTwoInstance make_two_two_instance(double q1, double cos_theta);

// General embedding; the overlap must be real within 1e-12 and in (0, 1).
TwoTwoInstance make_two_two_instance(double q1, const ComplexVector& psi1,
                                     const ComplexVector& psi2);

// Orthonormal basis of H = Supp rho_a + Supp rho_b built from the product
// vectors: e1, e2 from |psi_i psi_i> (symmetric/antisymmetric combinations),
// e3, e4 from the orthocomplement vectors psi_bar_i.
struct EBasis {
    ComplexVector e1, e2, e3, e4;
    double n_plus = 0;  // sqrt(1 + cos^2)
    double n_minus = 0; // sqrt(1 - cos^2)
};

EBasis e_basis(const TwoTwoInstance& inst);

// The normalized direction gamma of rho_b inside span(e1, e3) and its
// orthogonal companion; components are non-negative by phase convention.
struct GammaVectors {
    ComplexVector gamma;
    ComplexVector gamma_perp;
    double g1 = 0; // <e1|gamma> = 2 cos / n_plus^2
    double g3 = 0; // <e3|gamma> = sin^2 / n_plus^2
};

GammaVectors gamma_vector(double cos_theta, const EBasis& basis);

// Branch condition: cos(theta) < sqrt(eta_a/eta_b) (1 - sqrt((eta_a-eta_b)/eta_a)).
bool condition_star(double eta_a, double eta_b, double cos_theta);

struct POptResult {
    double value = 0;
    bool star = false; // condition held
};

// Optimal success probability.  With allow_limit the closed forms are also
// evaluated at the excluded boundary overlaps 0 and 1.
POptResult p_opt(double q1, double cos_theta, bool allow_limit = false);

struct TwoTwoSolution {
    double p_opt = 0;
    bool star = false;
    double alpha = 0;
    double beta = 0;
    Povm povm; // elements "a", "b", "?" on dim^2
    EBasis basis;
    GammaVectors gamma;
};

// Assembles the optimal measurement F_a = alpha |gp><gp| + |e2><e2|,
// F_b = beta |e3><e3| + |e4><e4|, F_? = 1 - F_a - F_b and verifies that its
// success rate reproduces the closed form.
TwoTwoSolution assemble_povm(const TwoTwoInstance& inst);

// The two-pure-state unambiguous-discrimination optimum for priors p_a, p_b
// and overlap g (shared by the separable baseline and the reduction
// cross-check).
double two_state_ud_optimum(double p_a, double p_b, double g);

} // namespace statecmp
