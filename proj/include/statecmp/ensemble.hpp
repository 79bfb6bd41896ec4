#pragma once

#include <string>
#include <vector>

#include "statecmp/hermlin.hpp"

// Ensemble model, construction of the comparison-induced discrimination
// problem, unambiguity checking, and the feasibility test with its witness
// measurement.
namespace statecmp {

// N pure states with strictly positive a priori probabilities.
struct PureEnsemble {
    Index dim = 0;
    std::vector<ComplexVector> states; // unit vectors
    std::vector<double> priors;        // q_i > 0, sum 1

    std::size_t size() const { return states.size(); }
};

// N density matrices with strictly positive a priori probabilities.
struct MixedEnsemble {
    Index dim = 0;
    std::vector<ComplexMatrix> states; // positive semidefinite, unit trace
    std::vector<double> priors;

    std::size_t size() const { return states.size(); }
};

// Validating constructors.  Ensembles with repeated identical states are
// rejected: "all states equal" vs "not all equal" is ill-posed for them.
PureEnsemble make_pure_ensemble(Index dim, std::vector<ComplexVector> states,
                                std::vector<double> priors);
MixedEnsemble make_mixed_ensemble(Index dim, std::vector<ComplexMatrix> states,
                                  std::vector<double> priors);
MixedEnsemble to_mixed(const PureEnsemble& ens);

// The induced two-state discrimination pair: rho_a mixes the C-fold copies of
// the individual states ("all equal"), rho_b the remainder of the C-fold
// average state ("not all equal"), with priors eta_a = sum_i q_i^C and
// eta_b = 1 - eta_a.
struct DiscriminationProblem {
    HermitianOperator rho_a;
    HermitianOperator rho_b;
    double eta_a = 0;
    double eta_b = 0;
    int copies = 0;
    Index local_dim = 0;
};

DiscriminationProblem build_problem(const MixedEnsemble& ens, int copies);
DiscriminationProblem build_problem(const PureEnsemble& ens, int copies);

// Ordered list of labeled positive operators summing to identity.  The
// inconclusive element "?" is last by convention.
struct PovmElement {
    std::string label;
    HermitianOperator op;
};

struct Povm {
    std::vector<PovmElement> elements;

    const HermitianOperator& operator[](const std::string& label) const;
    bool has(const std::string& label) const;
    Index dim() const;
};

// Positivity (min eigenvalue >= -tol::psd) and completeness
// (max-norm defect <= tol::complete); throws on violation.
void validate_povm(const Povm& povm);

// One row of the unambiguity report: a tuple of state indices, the traces of
// the conclusive elements against that product state, and the verdict.
struct UnambiguityEntry {
    std::vector<int> tuple;   // 0-based state indices, one per copy
    bool all_equal = false;
    double trace_a = 0;
    double trace_b = 0;
    bool ok = false;
    bool eps_limit_used = false; // required positive accepted as an epsilon-limit
};

struct UnambiguityReport {
    std::vector<UnambiguityEntry> entries;
    bool pass = false;
    bool eps_limit = false; // the convention was enabled for this check
};

// Checks the defining outcome pattern of unambiguous comparison: "same" may
// only fire on all-equal tuples and must fire on all of them; "different"
// likewise for the mixed tuples.  With eps_limit, required-positive entries
// that are exactly zero are accepted and flagged: they correspond to the
// limit of an infinitesimally perturbed measurement (see baselines).
UnambiguityReport check_unambiguous(const Povm& povm, const MixedEnsemble& ens,
                                    int copies, bool eps_limit = false);

struct ComparabilityReport {
    bool comparable = false;
    // state_ok[i]: Supp(pi_i) is NOT contained in the sum of the other supports.
    std::vector<bool> state_ok;
};

// Unambiguous comparison is possible iff no state's support is contained in
// the span of the other supports.
ComparabilityReport is_comparable(const MixedEnsemble& ens);

// Feasibility witness: rank-1 elements F_i = (1/N)|phi_i><phi_i| with phi_i
// orthogonal to every other state's support, so tr(F_i pi_j) > 0 iff i = j.
// Labels are "1".."N" and "?".
Povm witness_povm(const MixedEnsemble& ens);

// Trace table tr(F_i pi_j) for a witness POVM plus the diagonal pattern verdict.
struct WitnessReport {
    std::vector<std::vector<double>> table; // [i][j] = tr(F_i pi_j)
    bool pattern_ok = false;
};

WitnessReport witness_report(const Povm& povm, const MixedEnsemble& ens);

} // namespace statecmp
