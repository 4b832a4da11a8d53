// estimator.hpp
// Monte Carlo simulation of the estimation protocol: draw a true phase from
// the uniform prior, sample a measurement outcome from the Born rule, guess
// theta_hat = 2pi m / M and score with the single-copy fidelity.

#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "phasest/pom.hpp"
#include "phasest/state.hpp"

namespace phasest {

struct trial_record {
    double theta_true = 0.0;
    int outcome = 0;
    double theta_guess = 0.0;
    double fidelity = 0.0;   // |<psi_m|psi(theta_true)>|^2
};

struct simulation_summary {
    std::uint64_t trials = 0;
    double mean_score = 0.0;
    double std_error = 0.0;   // sample standard deviation / sqrt(trials)
    std::uint64_t seed = 0;
};

// Counter-based generator: SplitMix64 evaluated at an arbitrary stream
// position. Stateless, so disjoint counter ranges form reproducible
// independent substreams regardless of batching.
struct counter_rng {
    std::uint64_t seed = 0;

    double uniform(std::uint64_t counter) const {
        std::uint64_t z = seed + (counter + 1) * 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        z ^= z >> 31;
        return static_cast<double>(z >> 11) * 0x1.0p-53;
    }
};

// Born-rule outcome probabilities p_m = w_m |<v_m|Psi(theta)>|^2.
inline Eigen::VectorXd outcome_distribution(const pom& strategy, const symmetric_state& state,
                                            double theta) {
    if (strategy.dim != state.dim()) {
        throw dimension_mismatch_error("outcome_distribution: POM dimension mismatch");
    }
    const Eigen::VectorXcd ladder = evolved_symmetric(state, theta);
    Eigen::VectorXd p(strategy.outcomes());
    for (int m = 0; m < strategy.outcomes(); ++m) {
        p[m] = strategy.weights[m] * std::norm(strategy.vectors.col(m).dot(ladder));
    }
    return p;
}

namespace detail {

// Inverse-CDF sampling; rounding residue lands in the final bucket.
inline int sample_outcome(const Eigen::VectorXd& p, double u) {
    double cumulative = 0.0;
    for (Eigen::Index m = 0; m < p.size(); ++m) {
        cumulative += p[m];
        if (u < cumulative) return static_cast<int>(m);
    }
    return static_cast<int>(p.size()) - 1;
}

inline double expansion_score(const overlap_coefficients& overlaps, double offset) {
    double score = overlaps[0];
    for (int lag = 1; lag <= overlaps.max_lag(); ++lag) {
        score += 2.0 * overlaps[lag] * std::cos(lag * offset);
    }
    return score;
}

}  // namespace detail

// Single-copy fidelity written through the overlap expansion:
// d_0 + 2 sum_L d_L cos(L (2pi m / M - theta)).
inline double score_given_outcome(const state_spec& spec, double theta_true, int outcome,
                                  int sample_points) {
    return detail::expansion_score(fidelity_overlaps(spec),
                                   two_pi * outcome / sample_points - theta_true);
}

// One protocol round using counters 2t and 2t+1 of the stream.
inline trial_record run_trial(const state_spec& spec, const symmetric_state& state,
                              const pom& strategy, const counter_rng& rng, std::uint64_t index) {
    trial_record record;
    record.theta_true = two_pi * rng.uniform(2 * index);
    const Eigen::VectorXd p = outcome_distribution(strategy, state, record.theta_true);
    record.outcome = detail::sample_outcome(p, rng.uniform(2 * index + 1));
    const int sample_points = strategy.outcomes();
    record.theta_guess = two_pi * record.outcome / sample_points;
    record.fidelity = score_given_outcome(spec, record.theta_true, record.outcome, sample_points);
    return record;
}

// Full simulation with the uniform SRM strategy. Deterministic for a fixed
// seed; the mean/variance accumulation is sequential (Welford) so the
// summary is reproducible to the bit.
inline simulation_summary simulate(const state_spec& spec, int copies, int sample_points,
                                   std::uint64_t trials, std::uint64_t seed) {
    if (trials < 1) {
        throw error("simulate: need at least one trial");
    }
    const symmetric_state state = symmetric_amplitudes(spec, copies);
    if (sample_points < state.dim()) {
        throw error("simulate: sample points must reach the ladder dimension K*N+1");
    }
    const pom strategy = srm(sample_states(state, sample_points));
    const overlap_coefficients overlaps = fidelity_overlaps(spec);
    const counter_rng rng{seed};

    double mean = 0.0;
    double m2 = 0.0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        const double theta = two_pi * rng.uniform(2 * t);
        const Eigen::VectorXd p = outcome_distribution(strategy, state, theta);
        const int outcome = detail::sample_outcome(p, rng.uniform(2 * t + 1));
        const double score =
            detail::expansion_score(overlaps, two_pi * outcome / sample_points - theta);
        const double delta = score - mean;
        mean += delta / static_cast<double>(t + 1);
        m2 += delta * (score - mean);
    }

    simulation_summary summary;
    summary.trials = trials;
    summary.seed = seed;
    summary.mean_score = mean;
    summary.std_error =
        trials > 1 ? std::sqrt(m2 / static_cast<double>(trials - 1) / static_cast<double>(trials))
                   : 0.0;
    return summary;
}

}  // namespace phasest
