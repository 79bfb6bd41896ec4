#pragma once

#include <vector>

#include "statecmp/ensemble.hpp"
#include "statecmp/hermlin.hpp"

// Two-step reduction of the induced discrimination problem: restriction to
// H = Supp rho_a + Supp rho_b, then removal of the perfectly distinguishable
// corners K_a = Kern rho_a  ^  Supp rho_b and K_b = Kern rho_b  ^  Supp rho_a.
// Also the coefficient-matrix characterizations of those corners for the
// 2-out-of-N pure case and the equal-overlap state family.
namespace statecmp {

struct ReductionResult {
    Subspace H;       // Supp rho_a + Supp rho_b
    Subspace kcap_a;  // Kern rho_a  ^  Supp rho_b
    Subspace kcap_b;  // Kern rho_b  ^  Supp rho_a
    Subspace H_prime; // ortho-complement of kcap_a + kcap_b inside H
    double zeta_a = 0, zeta_b = 0, zeta = 0; // zeta_x = tr(P_H' rho_x)
    double eta_a_prime = 0, eta_b_prime = 0; // eta_x zeta_x / zeta
    HermitianOperator rho_a_prime; // rho_x restricted to H' coordinates, renormalized
    HermitianOperator rho_b_prime;
};

// H = Supp rho_a + Supp rho_b; throws if the supports intersect nontrivially
// (the construction assumes linearly independent hypotheses).
Subspace first_reduction(const DiscriminationProblem& prob);

// Removes the corners and renormalizes; when H' is trivial (perfect
// discrimination) the reduced operators are empty and the reduced priors are
// set to 1/2 by convention.
ReductionResult second_reduction(const DiscriminationProblem& prob, const Subspace& H);

// Lifts a reduced-problem success probability back to the full problem:
// P = 1 - (1 - p_prime) * zeta.
double lift_success(double p_prime, double zeta);

// Swap-symmetric / swap-antisymmetric split of a two-factor subspace.
struct SymmetrySplit {
    Subspace H_plus;
    Subspace H_minus;
};

// The ambient space must be a perfect square d x d; H must be swap-invariant.
SymmetrySplit symmetry_split(const Subspace& H);

// Coefficient bases for the corners of a 2-out-of-N pure problem with Gram
// matrix C_ij = <psi_i|psi_j>.  Vectors sum_{i>j} A_ij (|psi_i psi_j> +
// |psi_j psi_i>) lie in Kern rho_a  ^  Supp rho_b (beyond the antisymmetric
// part) iff [C A C^T]_kk = 0 for all k; the returned strictly-lower-triangular
// matrices A form a basis of the solution space.
std::vector<ComplexMatrix> kcap_a_symmetric(const ComplexMatrix& gram);

// Vectors sum_k B_kk |psi_k psi_k> lie in Kern rho_b  ^  Supp rho_a iff
// [C B C^T]_ij = 0 for all i > j; returns a basis of diagonal solutions B.
std::vector<ComplexMatrix> kcap_b_diagonal(const ComplexMatrix& gram);

// N real unit vectors in dimension N with all pairwise overlaps equal to
// cos_theta in [0, 1); priors default to 1/N each.
PureEnsemble equal_overlap_ensemble(int n, double cos_theta,
                                    std::vector<double> priors = {});

} // namespace statecmp
