#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "statecmp/ensemble.hpp"

// Independent stochastic oracle: samples preparation tuples and measurement
// outcomes to validate analytic success rates and unambiguity.
namespace statecmp {

struct SimConfig {
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    Povm povm;
    MixedEnsemble ensemble;
    int copies = 1;
    // Trials per shard; empty means one shard with all trials.  Shards only
    // partition the work: every trial draws its own counter-based random
    // stream from (seed, trial index), so results are bit-identical for every
    // shard plan and for serial vs parallel execution.
    std::vector<std::uint64_t> shards;
};

struct SimReport {
    std::map<std::pair<std::string, std::string>, std::uint64_t> counts; // (truth, outcome)
    std::uint64_t trials = 0;
    std::uint64_t conclusive = 0;
    std::uint64_t error_count = 0; // conclusive outcomes contradicting the truth
    double empirical_p = 0;        // conclusive fraction
    double std_error = 0;          // sqrt(p(1-p)/trials)
};

// Runs the shards in parallel threads.
SimReport simulate(const SimConfig& config);

// Runs the same shard plan serially; bit-identical to simulate().
SimReport simulate_serial(const SimConfig& config);

// Deterministic trace evaluation of the conclusive probability:
// sum over tuples of (prior product) x tr((sum of conclusive elements) sigma).
double exact_success(const Povm& povm, const MixedEnsemble& ens, int copies);

} // namespace statecmp
