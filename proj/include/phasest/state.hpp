// state.hpp
// Single-copy pure states on the level basis |0>..|K>, their phase evolution
// under exp(-i*theta*level), and the compression of N identical copies onto
// the (K*N+1)-dimensional ladder of total-level eigenspaces.

#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

#include "phasest/errors.hpp"

namespace phasest {

using cxd = std::complex<double>;

inline constexpr double two_pi = 2.0 * std::numbers::pi;

// Tolerance for validating unit norm of user-supplied data, and the tighter
// bound used for identities the algebra makes exact.
inline constexpr double norm_tol = 1e-10;
inline constexpr double identity_tol = 1e-12;

// Single-copy pure state: K+1 complex amplitudes on the levels 0..K,
// unit Euclidean norm. Construct through make_state_spec.
struct state_spec {
    int max_level = 0;             // K
    Eigen::VectorXcd amplitudes;   // c_0 .. c_K

    int dim() const { return max_level + 1; }
};

// N identical copies compressed to the total-level ladder J = 0..K*N.
// The amplitudes are the nonnegative square roots A_J, so phases of the
// single-copy amplitudes never enter.
struct symmetric_state {
    int max_level = 0;            // K of the underlying single-copy state
    int copies = 0;               // N
    Eigen::VectorXd amplitudes;   // A_0 .. A_{K*N}

    int dim() const { return max_level * copies + 1; }

    // Dimension binom(N+K, K) of the full symmetric product space; the
    // ladder above is the smaller subspace actually needed.
    double bosonic_dimension() const {
        double result = 1.0;
        for (int i = 1; i <= max_level; ++i) {
            result *= static_cast<double>(copies + i) / i;
        }
        return result;
    }
};

// Autocorrelation coefficients d_0..d_K of the single-copy fidelity:
// |<psi_m|psi(theta)>|^2 = d_0 + sum_L d_L (e^{iL(phi_m-theta)} + c.c.).
struct overlap_coefficients {
    Eigen::VectorXd values;   // d_0 .. d_K

    int max_lag() const { return static_cast<int>(values.size()) - 1; }
    double operator[](int lag) const { return values[lag]; }
};

namespace detail {

inline void check_unit_norm(const Eigen::VectorXcd& v, const char* what) {
    if (std::abs(v.squaredNorm() - 1.0) > norm_tol) {
        throw not_normalized_error(std::string(what) + ": amplitudes are not normalized");
    }
}

// Exact binomial coefficient as a double (exact while the values stay below
// 2^53, far beyond the ladder sizes used here).
inline double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    if (k > n - k) k = n - k;
    double c = 1.0;
    for (int i = 1; i <= k; ++i) {
        c = c * (n - k + i) / i;
    }
    return c;
}

// Walks the occupation tuples (n_0..n_K) with sum N and adds each tuple's
// multinomial weight N! * prod_k p_k^{n_k}/n_k! to the bucket of its total
// level J = sum_k k*n_k. Factorials stay in log space: every individual
// weight is a probability <= 1, so nothing can overflow regardless of N.
inline void accumulate_occupation_weights(const Eigen::VectorXd& log_probability,
                                          int level, int remaining, int total_level,
                                          double log_weight, Eigen::VectorXd& weight_by_level) {
    const int max_level = static_cast<int>(log_probability.size()) - 1;
    const double neg_inf = -std::numeric_limits<double>::infinity();
    if (level == max_level) {
        if (remaining > 0 && log_probability[level] == neg_inf) return;
        const double occupied = remaining > 0 ? remaining * log_probability[level] : 0.0;
        const double w = log_weight - std::lgamma(remaining + 1.0) + occupied;
        weight_by_level[total_level + level * remaining] += std::exp(w);
        return;
    }
    for (int n = 0; n <= remaining; ++n) {
        if (n > 0 && log_probability[level] == neg_inf) break;
        const double occupied = n > 0 ? n * log_probability[level] : 0.0;
        accumulate_occupation_weights(log_probability, level + 1, remaining - n,
                                      total_level + level * n,
                                      log_weight - std::lgamma(n + 1.0) + occupied,
                                      weight_by_level);
    }
}

}  // namespace detail

// Normalizes the given amplitudes into a state_spec with K = length-1.
inline state_spec make_state_spec(const Eigen::VectorXcd& amplitudes) {
    if (amplitudes.size() == 0) {
        throw empty_spec_error("make_state_spec: no amplitudes given");
    }
    const double norm = amplitudes.norm();
    if (norm <= 0.0) {
        throw zero_norm_error("make_state_spec: amplitudes have zero norm");
    }
    state_spec spec;
    spec.max_level = static_cast<int>(amplitudes.size()) - 1;
    spec.amplitudes = amplitudes / norm;
    return spec;
}

inline state_spec make_state_spec(const std::vector<cxd>& amplitudes) {
    return make_state_spec(Eigen::Map<const Eigen::VectorXcd>(
        amplitudes.data(), static_cast<Eigen::Index>(amplitudes.size())));
}

inline state_spec make_state_spec(std::initializer_list<cxd> amplitudes) {
    return make_state_spec(std::vector<cxd>(amplitudes));
}

// Phase evolution of the single copy: component k picks up e^{-i*theta*k}.
inline Eigen::VectorXcd evolved_single(const state_spec& spec, double theta) {
    Eigen::VectorXcd out(spec.dim());
    for (int k = 0; k <= spec.max_level; ++k) {
        out[k] = spec.amplitudes[k] * std::polar(1.0, -theta * k);
    }
    return out;
}

// Compresses |psi>^(x)N onto the total-level ladder: A_J^2 collects the
// multinomial weight of every occupation tuple with total level J.
inline symmetric_state symmetric_amplitudes(const state_spec& spec, int copies) {
    if (copies < 1) {
        throw error("symmetric_amplitudes: need at least one copy");
    }
    detail::check_unit_norm(spec.amplitudes, "symmetric_amplitudes");

    Eigen::VectorXd log_probability(spec.dim());
    for (int k = 0; k <= spec.max_level; ++k) {
        const double p = std::norm(spec.amplitudes[k]);
        log_probability[k] = p > 0.0 ? std::log(p) : -std::numeric_limits<double>::infinity();
    }

    Eigen::VectorXd weight_by_level = Eigen::VectorXd::Zero(spec.max_level * copies + 1);
    detail::accumulate_occupation_weights(log_probability, 0, copies, 0,
                                          std::lgamma(copies + 1.0), weight_by_level);

    if (std::abs(weight_by_level.sum() - 1.0) > norm_tol) {
        throw not_normalized_error("symmetric_amplitudes: occupation weights do not sum to one");
    }

    symmetric_state state;
    state.max_level = spec.max_level;
    state.copies = copies;
    state.amplitudes = weight_by_level.cwiseSqrt();
    return state;
}

// d_L = sum_{k=0}^{K-L} |c_{k+L} c_k|^2.
inline overlap_coefficients fidelity_overlaps(const state_spec& spec) {
    overlap_coefficients overlaps;
    overlaps.values = Eigen::VectorXd::Zero(spec.dim());
    for (int lag = 0; lag <= spec.max_level; ++lag) {
        double sum = 0.0;
        for (int k = 0; k + lag <= spec.max_level; ++k) {
            sum += std::norm(spec.amplitudes[k + lag] * spec.amplitudes[k]);
        }
        overlaps.values[lag] = sum;
    }
    return overlaps;
}

// Phase evolution on the ladder: component J picks up e^{-i*theta*J}.
inline Eigen::VectorXcd evolved_symmetric(const symmetric_state& state, double theta) {
    Eigen::VectorXcd out(state.dim());
    for (int j = 0; j < state.dim(); ++j) {
        out[j] = state.amplitudes[j] * std::polar(1.0, -theta * j);
    }
    return out;
}

}  // namespace phasest
