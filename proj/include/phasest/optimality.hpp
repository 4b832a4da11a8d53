// optimality.hpp
// Score operators, Lagrange operators and the certification of the global
// optimality conditions: Gamma = sum_m W_m mu_m must be Hermitian with
// (Gamma - W_m) mu_m = 0 (extremality), and Gamma - W_m >= 0 for a global
// maximum (<= 0 for a global minimum). Two independent routes exist for both
// the score operators (closed form vs quadrature) and the average score.

#pragma once

#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "phasest/pom.hpp"
#include "phasest/state.hpp"

namespace phasest {

// One Hermitian positive semidefinite score operator per outcome.
struct score_operators {
    int dim = 0;
    std::vector<Eigen::MatrixXcd> w;

    int outcomes() const { return static_cast<int>(w.size()); }
};

enum class certification_verdict {
    global_maximum,   // extremal and every Gamma - W_m is PSD
    global_minimum,   // extremal and every Gamma - W_m is NSD
    mixed_sign,       // extremal with eigenvalues of both signs
    extremal,         // extremal, sign pattern unresolved at the tolerance
    not_extremal,     // condition (i) itself fails
};

inline const char* to_string(certification_verdict v) {
    switch (v) {
        case certification_verdict::global_maximum: return "GlobalMaximum";
        case certification_verdict::global_minimum: return "GlobalMinimum";
        case certification_verdict::mixed_sign: return "MixedSign";
        case certification_verdict::extremal: return "Extremal";
        case certification_verdict::not_extremal: return "NotExtremal";
    }
    return "?";
}

struct optimality_report {
    double gamma_hermiticity_residual = 0.0;
    std::vector<double> extremality_residuals;   // ||(Gamma - W_m) v_m|| per outcome
    std::vector<double> min_eigenvalues;         // smallest eigenvalue of Gamma - W_m
    std::vector<double> max_eigenvalues;
    double score_trace = 0.0;                    // Tr Gamma = average score at the extremum
    double tolerance = 0.0;
    certification_verdict verdict = certification_verdict::not_extremal;
};

// Default theta-quadrature resolution: the integrands are trigonometric
// polynomials of degree at most K(N+1), sampled with ample margin.
inline int default_gridpoints(int max_level, int copies) {
    return 4 * (max_level * copies + max_level) + 8;
}

// Closed-form score operators: W_m = d_0 sum_J A_J^2 |J><J|
// + sum_L d_L sum_J A_J A_{J+L} (e^{+i 2pi m L / M} |J><J+L| + h.c.).
inline score_operators score_operators_closed(const symmetric_state& state,
                                              const overlap_coefficients& overlaps,
                                              int sample_points) {
    const int dim = state.dim();
    const int top = dim - 1;
    score_operators ops;
    ops.dim = dim;
    ops.w.reserve(sample_points);
    for (int m = 0; m < sample_points; ++m) {
        Eigen::MatrixXcd w = Eigen::MatrixXcd::Zero(dim, dim);
        for (int j = 0; j <= top; ++j) {
            w(j, j) = overlaps[0] * state.amplitudes[j] * state.amplitudes[j];
        }
        for (int lag = 1; lag <= overlaps.max_lag(); ++lag) {
            const cxd phase = std::polar(1.0, two_pi * m * lag / sample_points);
            for (int j = 0; j + lag <= top; ++j) {
                const double coeff = overlaps[lag] * state.amplitudes[j] * state.amplitudes[j + lag];
                w(j, j + lag) += coeff * phase;
                w(j + lag, j) += coeff * std::conj(phase);
            }
        }
        ops.w.push_back(std::move(w));
    }
    return ops;
}

// Score operators straight from the defining integral
// W_m = (1/2pi) int dtheta |Psi(theta)><Psi(theta)| |<psi_m|psi(theta)>|^2,
// by the periodic trapezoid rule. Independent cross-check of the closed form.
inline score_operators score_operators_quadrature(const state_spec& spec,
                                                  const symmetric_state& state,
                                                  int sample_points, int gridpoints = 0) {
    if (gridpoints <= 0) gridpoints = default_gridpoints(state.max_level, state.copies);
    const int dim = state.dim();
    std::vector<Eigen::VectorXcd> guessed(sample_points);
    for (int m = 0; m < sample_points; ++m) {
        guessed[m] = evolved_single(spec, two_pi * m / sample_points);
    }
    score_operators ops;
    ops.dim = dim;
    ops.w.assign(sample_points, Eigen::MatrixXcd::Zero(dim, dim));
    for (int g = 0; g < gridpoints; ++g) {
        const double theta = two_pi * g / gridpoints;
        const Eigen::VectorXcd ladder = evolved_symmetric(state, theta);
        const Eigen::VectorXcd single = evolved_single(spec, theta);
        const Eigen::MatrixXcd projector = ladder * ladder.adjoint();
        for (int m = 0; m < sample_points; ++m) {
            const double fidelity = std::norm(guessed[m].dot(single));
            ops.w[m] += (fidelity / gridpoints) * projector;
        }
    }
    return ops;
}

// Gamma = sum_m W_m (w_m |v_m><v_m|). Returned as computed; whether it is
// Hermitian is part of what certification measures.
inline Eigen::MatrixXcd lagrange_operator(const score_operators& ops, const pom& strategy) {
    if (ops.dim != strategy.dim || ops.outcomes() != strategy.outcomes()) {
        throw dimension_mismatch_error("lagrange_operator: score operators and POM disagree");
    }
    Eigen::MatrixXcd gamma = Eigen::MatrixXcd::Zero(ops.dim, ops.dim);
    for (int m = 0; m < ops.outcomes(); ++m) {
        gamma += ops.w[m] * (strategy.weights[m] *
                             (strategy.vectors.col(m) * strategy.vectors.col(m).adjoint()));
    }
    return gamma;
}

// Evaluates both optimality conditions for the given strategy and assigns a
// verdict. The eigenvalue scan runs on the Hermitian part of Gamma - W_m;
// with the hermiticity residual reported separately that loses nothing.
inline optimality_report certify(const score_operators& ops, const pom& strategy,
                                 double tolerance = 1e-10) {
    const Eigen::MatrixXcd gamma = lagrange_operator(ops, strategy);
    const Eigen::MatrixXcd gamma_h = 0.5 * (gamma + gamma.adjoint());

    optimality_report report;
    report.tolerance = tolerance;
    report.gamma_hermiticity_residual = (gamma - gamma.adjoint()).cwiseAbs().maxCoeff();
    report.score_trace = gamma.trace().real();

    bool extremal = report.gamma_hermiticity_residual < tolerance;
    bool all_psd = true;
    bool all_nsd = true;
    for (int m = 0; m < ops.outcomes(); ++m) {
        const double residual = ((gamma - ops.w[m]) * strategy.vectors.col(m)).norm();
        report.extremality_residuals.push_back(residual);
        extremal = extremal && residual < tolerance;

        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(gamma_h - ops.w[m]);
        const double lo = eig.eigenvalues().minCoeff();
        const double hi = eig.eigenvalues().maxCoeff();
        report.min_eigenvalues.push_back(lo);
        report.max_eigenvalues.push_back(hi);
        all_psd = all_psd && lo > -tolerance;
        all_nsd = all_nsd && hi < tolerance;
    }

    if (!extremal) {
        report.verdict = certification_verdict::not_extremal;
    } else if (all_psd) {
        report.verdict = certification_verdict::global_maximum;
    } else if (all_nsd) {
        report.verdict = certification_verdict::global_minimum;
    } else {
        // Extremal but neither sign-definite; a strict two-sided violation is
        // the mixed case, anything at the tolerance boundary stays unresolved.
        bool definite_neg = false;
        bool definite_pos = false;
        for (std::size_t m = 0; m < report.min_eigenvalues.size(); ++m) {
            definite_neg = definite_neg || report.min_eigenvalues[m] < -tolerance;
            definite_pos = definite_pos || report.max_eigenvalues[m] > tolerance;
        }
        report.verdict = (definite_neg && definite_pos) ? certification_verdict::mixed_sign
                                                        : certification_verdict::extremal;
    }
    return report;
}

// Closed-form maximum average score:
// d_0 sum_J A_J^2 + 2 sum_L d_L sum_J A_J A_{J+L}.
inline double max_average_score(const symmetric_state& state,
                                const overlap_coefficients& overlaps) {
    const int top = state.dim() - 1;
    double score = overlaps[0] * state.amplitudes.squaredNorm();
    for (int lag = 1; lag <= overlaps.max_lag(); ++lag) {
        double chain = 0.0;
        for (int j = 0; j + lag <= top; ++j) {
            chain += state.amplitudes[j] * state.amplitudes[j + lag];
        }
        score += 2.0 * overlaps[lag] * chain;
    }
    return score;
}

// Average score of an arbitrary strategy with arbitrary guess angles,
// S = sum_m (1/2pi) int dtheta w_m |<v_m|Psi(theta)>|^2 |<psi_m|psi(theta)>|^2,
// by the periodic trapezoid rule. The independent oracle for the closed form,
// and the evaluator for deliberately suboptimal strategies.
inline double average_score_quadrature(const state_spec& spec, const symmetric_state& state,
                                       const pom& strategy, const std::vector<double>& guesses,
                                       int gridpoints = 0) {
    if (static_cast<int>(guesses.size()) != strategy.outcomes()) {
        throw length_mismatch_error("average_score_quadrature: one guess angle per outcome required");
    }
    if (strategy.dim != state.dim()) {
        throw dimension_mismatch_error("average_score_quadrature: strategy dimension mismatch");
    }
    if (gridpoints <= 0) gridpoints = default_gridpoints(state.max_level, state.copies);

    std::vector<Eigen::VectorXcd> guessed(guesses.size());
    for (std::size_t m = 0; m < guesses.size(); ++m) {
        guessed[m] = evolved_single(spec, guesses[m]);
    }
    double total = 0.0;
    for (int g = 0; g < gridpoints; ++g) {
        const double theta = two_pi * g / gridpoints;
        const Eigen::VectorXcd ladder = evolved_symmetric(state, theta);
        const Eigen::VectorXcd single = evolved_single(spec, theta);
        for (int m = 0; m < strategy.outcomes(); ++m) {
            const double p = strategy.weights[m] * std::norm(strategy.vectors.col(m).dot(ladder));
            total += p * std::norm(guessed[m].dot(single));
        }
    }
    return total / gridpoints;
}

// Guess angles 2pi m / M used by every uniform strategy.
inline std::vector<double> uniform_guesses(int sample_points) {
    std::vector<double> guesses(sample_points);
    for (int m = 0; m < sample_points; ++m) {
        guesses[m] = two_pi * m / sample_points;
    }
    return guesses;
}

}  // namespace phasest
