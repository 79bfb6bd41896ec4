#include "statecmp/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "statecmp/rng.hpp"

namespace statecmp {

namespace {

void require(bool ok, const std::string& msg) {
    if (!ok) throw ValidationError(msg);
}

void validate_priors(const std::vector<double>& priors, std::size_t n_states) {
    require(priors.size() == n_states, "priors and states must have equal length");
    double sum = 0;
    for (std::size_t i = 0; i < priors.size(); ++i) {
        require(std::isfinite(priors[i]) && priors[i] > 0,
                "prior " + std::to_string(i) + " must be strictly positive");
        sum += priors[i];
    }
    require(std::abs(sum - 1.0) <= tol::prior_sum,
            "priors must sum to 1 (got " + std::to_string(sum) + ")");
}

// Enumerate all index tuples (i_1..i_C) in row-major order.
std::vector<std::vector<int>> index_tuples(int n, int copies) {
    std::vector<std::vector<int>> tuples;
    std::vector<int> current(copies, 0);
    while (true) {
        tuples.push_back(current);
        int pos = copies - 1;
        while (pos >= 0 && ++current[pos] == n) current[pos--] = 0;
        if (pos < 0) break;
    }
    return tuples;
}

ComplexMatrix tuple_state(const MixedEnsemble& ens, const std::vector<int>& tuple) {
    ComplexMatrix out = ens.states[tuple[0]];
    for (std::size_t c = 1; c < tuple.size(); ++c) out = kron(out, ens.states[tuple[c]]);
    return out;
}

} // namespace

PureEnsemble make_pure_ensemble(Index dim, std::vector<ComplexVector> states,
                                std::vector<double> priors) {
    require(dim >= 1, "dimension must be positive");
    require(states.size() >= 2, "an ensemble needs at least two states");
    validate_priors(priors, states.size());
    for (std::size_t i = 0; i < states.size(); ++i) {
        require(states[i].size() == dim,
                "state " + std::to_string(i) + " has wrong dimension");
        require(states[i].allFinite(), "state " + std::to_string(i) + " has non-finite entries");
        require(std::abs(states[i].norm() - 1.0) <= tol::orth,
                "state " + std::to_string(i) + " is not normalized");
    }
    for (std::size_t i = 0; i < states.size(); ++i)
        for (std::size_t j = i + 1; j < states.size(); ++j) {
            const double overlap = std::abs(states[i].dot(states[j]));
            require(overlap < 1.0 - tol::herm,
                    "states " + std::to_string(i) + " and " + std::to_string(j) +
                        " are identical up to phase; comparison is ill-posed");
        }
    return PureEnsemble{dim, std::move(states), std::move(priors)};
}

MixedEnsemble make_mixed_ensemble(Index dim, std::vector<ComplexMatrix> states,
                                  std::vector<double> priors) {
    require(dim >= 1, "dimension must be positive");
    require(states.size() >= 2, "an ensemble needs at least two states");
    validate_priors(priors, states.size());
    for (std::size_t i = 0; i < states.size(); ++i) {
        require(states[i].rows() == dim && states[i].cols() == dim,
                "state " + std::to_string(i) + " has wrong dimension");
        const HermitianOperator op = make_hermitian(states[i]);
        require(std::abs(op.matrix.trace().real() - 1.0) <= tol::herm,
                "state " + std::to_string(i) + " does not have unit trace");
        support(op); // throws if not positive semidefinite
    }
    for (std::size_t i = 0; i < states.size(); ++i)
        for (std::size_t j = i + 1; j < states.size(); ++j)
            require((states[i] - states[j]).cwiseAbs().maxCoeff() > tol::herm,
                    "states " + std::to_string(i) + " and " + std::to_string(j) +
                        " are identical; comparison is ill-posed");
    return MixedEnsemble{dim, std::move(states), std::move(priors)};
}

MixedEnsemble to_mixed(const PureEnsemble& ens) {
    std::vector<ComplexMatrix> projectors;
    projectors.reserve(ens.size());
    for (const auto& psi : ens.states) projectors.push_back(psi * psi.adjoint());
    return MixedEnsemble{ens.dim, std::move(projectors), ens.priors};
}

DiscriminationProblem build_problem(const MixedEnsemble& ens, int copies) {
    require(copies >= 2, "comparison needs at least two copies");
    const Index big_dim = static_cast<Index>(std::pow(static_cast<double>(ens.dim), copies) + 0.5);
    ComplexMatrix equal_part = ComplexMatrix::Zero(big_dim, big_dim);
    ComplexMatrix average = ComplexMatrix::Zero(ens.dim, ens.dim);
    double eta_a = 0;
    for (std::size_t i = 0; i < ens.size(); ++i) {
        equal_part += kron_power(ens.priors[i] * ens.states[i], copies);
        average += ens.priors[i] * ens.states[i];
        eta_a += std::pow(ens.priors[i], copies);
    }
    const double eta_b = 1.0 - eta_a;
    require(eta_b > 0, "degenerate ensemble: the not-all-equal hypothesis has zero weight");
    const ComplexMatrix total = kron_power(average, copies);
    const std::vector<Index> factors(static_cast<std::size_t>(copies), ens.dim);
    DiscriminationProblem prob;
    prob.rho_a = make_hermitian(equal_part / eta_a, factors);
    prob.rho_b = make_hermitian((total - equal_part) / eta_b, factors);
    prob.eta_a = eta_a;
    prob.eta_b = eta_b;
    prob.copies = copies;
    prob.local_dim = ens.dim;
    return prob;
}

DiscriminationProblem build_problem(const PureEnsemble& ens, int copies) {
    return build_problem(to_mixed(ens), copies);
}

const HermitianOperator& Povm::operator[](const std::string& label) const {
    for (const auto& e : elements)
        if (e.label == label) return e.op;
    throw ValidationError("POVM has no element labeled '" + label + "'");
}

bool Povm::has(const std::string& label) const {
    return std::any_of(elements.begin(), elements.end(),
                       [&](const PovmElement& e) { return e.label == label; });
}

Index Povm::dim() const {
    return elements.empty() ? 0 : elements.front().op.dim();
}

void validate_povm(const Povm& povm) {
    require(!povm.elements.empty(), "POVM has no elements");
    const Index n = povm.dim();
    ComplexMatrix sum = ComplexMatrix::Zero(n, n);
    for (const auto& e : povm.elements) {
        require(e.op.dim() == n, "POVM element '" + e.label + "' has mismatched dimension");
        const EighResult es = eigh(e.op);
        const double min_eig = es.eigenvalues.size() ? es.eigenvalues.minCoeff() : 0.0;
        require(min_eig >= -tol::psd, "POVM element '" + e.label +
                                          "' is not positive semidefinite (min eigenvalue " +
                                          std::to_string(min_eig) + ")");
        sum += e.op.matrix;
    }
    const double defect = (sum - ComplexMatrix::Identity(n, n)).cwiseAbs().maxCoeff();
    require(defect <= tol::complete,
            "POVM elements do not sum to identity (defect " + std::to_string(defect) + ")");
}

UnambiguityReport check_unambiguous(const Povm& povm, const MixedEnsemble& ens,
                                    int copies, bool eps_limit) {
    require(copies >= 1, "copies must be positive");
    require(povm.has("a") && povm.has("b"),
            "unambiguity check expects a comparison POVM with elements 'a' and 'b'");
    const Index big_dim = static_cast<Index>(std::pow(static_cast<double>(ens.dim), copies) + 0.5);
    require(povm.dim() == big_dim, "POVM dimension does not match dim^copies");
    const ComplexMatrix& fa = povm["a"].matrix;
    const ComplexMatrix& fb = povm["b"].matrix;

    UnambiguityReport report;
    report.eps_limit = eps_limit;
    report.pass = true;
    for (const auto& tuple : index_tuples(static_cast<int>(ens.size()), copies)) {
        UnambiguityEntry entry;
        entry.tuple = tuple;
        entry.all_equal =
            std::all_of(tuple.begin(), tuple.end(), [&](int i) { return i == tuple[0]; });
        const ComplexMatrix sigma = tuple_state(ens, tuple);
        entry.trace_a = (fa * sigma).trace().real();
        entry.trace_b = (fb * sigma).trace().real();
        const double must_zero = entry.all_equal ? entry.trace_b : entry.trace_a;
        const double must_pos = entry.all_equal ? entry.trace_a : entry.trace_b;
        const bool zero_ok = must_zero <= tol::zero_pattern;
        bool pos_ok = must_pos >= tol::pos_pattern;
        if (!pos_ok && eps_limit && must_pos <= tol::zero_pattern) {
            // Zero weight on a required-conclusive outcome: valid as the limit
            // of the infinitesimally perturbed measurement.
            pos_ok = true;
            entry.eps_limit_used = true;
        }
        entry.ok = zero_ok && pos_ok;
        report.pass = report.pass && entry.ok;
        report.entries.push_back(std::move(entry));
    }
    return report;
}

ComparabilityReport is_comparable(const MixedEnsemble& ens) {
    const std::size_t n = ens.size();
    std::vector<Subspace> supports;
    supports.reserve(n);
    for (const auto& pi : ens.states) supports.push_back(support(make_hermitian(pi)));

    ComparabilityReport report;
    report.comparable = true;
    for (std::size_t i = 0; i < n; ++i) {
        Subspace others = zero_subspace(ens.dim);
        for (std::size_t k = 0; k < n; ++k)
            if (k != i) others = subspace_sum(others, supports[k]);
        const ComplexMatrix outside =
            (ComplexMatrix::Identity(ens.dim, ens.dim) - others.projector()) *
            supports[i].projector();
        const bool contained = outside.cwiseAbs().maxCoeff() <= tol::isect;
        report.state_ok.push_back(!contained);
        report.comparable = report.comparable && !contained;
    }
    return report;
}

Povm witness_povm(const MixedEnsemble& ens) {
    const ComparabilityReport feasibility = is_comparable(ens);
    if (!feasibility.comparable)
        throw ValidationError("ensemble admits no unambiguous comparison (some state's "
                              "support lies inside the span of the others)");
    const std::size_t n = ens.size();
    const double norm_floor = 1e-8;
    Povm povm;
    ComplexMatrix sum = ComplexMatrix::Zero(ens.dim, ens.dim);
    for (std::size_t i = 0; i < n; ++i) {
        Subspace others = zero_subspace(ens.dim);
        for (std::size_t k = 0; k < n; ++k)
            if (k != i) others = subspace_sum(others, support(make_hermitian(ens.states[k])));
        const ComplexMatrix perp =
            ComplexMatrix::Identity(ens.dim, ens.dim) - others.projector();

        // Candidate source vectors: support eigenvectors by descending
        // eigenvalue, then seeded random support combinations as a fallback.
        const EighResult es = eigh(make_hermitian(ens.states[i]));
        ComplexVector phi;
        bool found = false;
        for (Index k = es.eigenvalues.size() - 1; k >= 0 && !found; --k) {
            if (es.eigenvalues(k) <= tol::rank * es.eigenvalues.maxCoeff()) break;
            const ComplexVector projected = perp * es.eigenvectors.col(k);
            if (projected.norm() > norm_floor) {
                phi = projected.normalized();
                found = true;
            }
        }
        if (!found) {
            const Subspace supp = support(make_hermitian(ens.states[i]));
            Xoshiro256ss rng(0x57a7ec3fULL + i);
            for (int attempt = 0; attempt < 64 && !found; ++attempt) {
                ComplexVector coeff(supp.dim());
                for (Index k = 0; k < coeff.size(); ++k)
                    coeff(k) = Complex(rng.next_double() - 0.5, rng.next_double() - 0.5);
                const ComplexVector projected = perp * (supp.basis * coeff).normalized();
                if (projected.norm() > norm_floor) {
                    phi = projected.normalized();
                    found = true;
                }
            }
        }
        if (!found)
            throw NumericsError("witness construction failed for state " + std::to_string(i) +
                                ": no support vector survives the projection");
        const ComplexMatrix fi = (phi * phi.adjoint()) / static_cast<double>(n);
        sum += fi;
        povm.elements.push_back({std::to_string(i + 1), make_hermitian(fi)});
    }
    povm.elements.push_back(
        {"?", make_hermitian(ComplexMatrix::Identity(ens.dim, ens.dim) - sum)});
    validate_povm(povm);
    return povm;
}

WitnessReport witness_report(const Povm& povm, const MixedEnsemble& ens) {
    const std::size_t n = ens.size();
    WitnessReport report;
    report.pattern_ok = true;
    for (std::size_t i = 0; i < n; ++i) {
        const ComplexMatrix& fi = povm[std::to_string(i + 1)].matrix;
        std::vector<double> row;
        for (std::size_t j = 0; j < n; ++j) {
            const double t = (fi * ens.states[j]).trace().real();
            row.push_back(t);
            const bool ok = (i == j) ? t >= tol::pos_pattern : t <= tol::zero_pattern;
            report.pattern_ok = report.pattern_ok && ok;
        }
        report.table.push_back(std::move(row));
    }
    return report;
}

} // namespace statecmp
