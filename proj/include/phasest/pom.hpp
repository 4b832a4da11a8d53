// pom.hpp
// Probability operator measures on the total-level ladder: the square root
// measurement over uniformly spaced sample states, its reciprocal (built
// from the states orthogonal to the samples), and the continuum limit.

#pragma once

#include <cmath>
#include <complex>

#include <Eigen/Dense>

#include "phasest/state.hpp"

namespace phasest {

// M sample states |Psi_m>, one per column. For the uniform family,
// component J of column m is A_J e^{-i 2pi m J / M}.
struct sample_family {
    int dim = 0;
    Eigen::MatrixXcd vectors;

    int outcomes() const { return static_cast<int>(vectors.cols()); }
};

// Finite POM with rank-one elements w_m |v_m><v_m|. The discrete SRM has
// all weights 1; the discretized continuum measure carries weight 1/M.
struct pom {
    int dim = 0;
    Eigen::MatrixXcd vectors;
    Eigen::VectorXd weights;

    int outcomes() const { return static_cast<int>(vectors.cols()); }
};

namespace detail {

// Pseudo inverse square root of a positive semidefinite Hermitian operator.
// Eigenvalues below relative_cutoff * lambda_max count as exact zeros, which
// extends the construction to rank-deficient sample families.
inline Eigen::MatrixXcd pseudo_inverse_sqrt(const Eigen::MatrixXcd& op,
                                            double relative_cutoff = 1e-12) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(op);
    const Eigen::VectorXd& values = eig.eigenvalues();
    const double cutoff = relative_cutoff * std::max(values.maxCoeff(), 0.0);
    Eigen::VectorXd inv_root(values.size());
    for (Eigen::Index i = 0; i < values.size(); ++i) {
        inv_root[i] = values[i] > cutoff ? 1.0 / std::sqrt(values[i]) : 0.0;
    }
    return eig.eigenvectors() * inv_root.asDiagonal() * eig.eigenvectors().adjoint();
}

}  // namespace detail

// The M uniformly spaced sample states, i.e. the ladder state evolved to
// theta_m = 2pi m / M for m = 0..M-1.
inline sample_family sample_states(const symmetric_state& state, int sample_points) {
    if (sample_points < 1) {
        throw error("sample_states: need at least one sample point");
    }
    sample_family family;
    family.dim = state.dim();
    family.vectors.resize(family.dim, sample_points);
    for (int m = 0; m < sample_points; ++m) {
        family.vectors.col(m) = evolved_symmetric(state, two_pi * m / sample_points);
    }
    return family;
}

// Square root measurement for the given family: v_m = S^{-1/2} |Psi_m> with
// S = sum_m |Psi_m><Psi_m|. The inverse root is a pseudo-inverse, so the
// resolution of identity holds on the support of S.
inline pom srm(const sample_family& family) {
    const Eigen::MatrixXcd gram_op = family.vectors * family.vectors.adjoint();
    pom out;
    out.dim = family.dim;
    out.vectors = detail::pseudo_inverse_sqrt(gram_op) * family.vectors;
    out.weights = Eigen::VectorXd::Ones(family.outcomes());
    return out;
}

// Geometric sum sum_{m=0}^{M-1} e^{i 2pi m n / M}: M when n = 0 (mod M),
// zero otherwise. Returned as computed, for use as a numerical fixture.
inline cxd orthogonality_lemma_check(int sample_points, long n) {
    cxd sum = 0.0;
    for (int m = 0; m < sample_points; ++m) {
        sum += std::polar(1.0, two_pi * m * n / sample_points);
    }
    return sum;
}

// States orthogonal to the sample states: component J of vector m is
// binom(KN, J) A_J^{-1} (-1)^J e^{-i 2pi m J / M}. Stored unnormalized;
// <Psi_m|Psi_m_perp> = 0 exactly (alternating binomial sum).
inline sample_family reciprocal_states(const symmetric_state& state, int sample_points) {
    if (sample_points < 1) {
        throw error("reciprocal_states: need at least one sample point");
    }
    const int top = state.dim() - 1;
    for (int j = 0; j <= top; ++j) {
        if (state.amplitudes[j] <= norm_tol) {
            throw zero_amplitude_error("reciprocal_states: amplitude A_" + std::to_string(j) +
                                       " vanishes");
        }
    }
    sample_family family;
    family.dim = state.dim();
    family.vectors.resize(family.dim, sample_points);
    for (int m = 0; m < sample_points; ++m) {
        for (int j = 0; j <= top; ++j) {
            const double magnitude = detail::binomial(top, j) / state.amplitudes[j];
            const double sign = (j % 2 == 0) ? 1.0 : -1.0;
            family.vectors(j, m) = sign * magnitude * std::polar(1.0, -two_pi * m * j / sample_points);
        }
    }
    return family;
}

// SRM discriminating the reciprocal family. For M >= KN+1 (and all A_J > 0)
// component J of vector m comes out as (-1)^J e^{-i 2pi m J / M} / sqrt(M).
inline pom srm_reciprocal(const symmetric_state& state, int sample_points) {
    return srm(reciprocal_states(state, sample_points));
}

// Uniform discretization of the continuum measure |mu(phi)><mu(phi)| dphi/2pi
// with |mu(phi)> = sum_J e^{-i phi J} |J>: gridpoints elements of weight 1/G.
inline pom continuum_pom(const symmetric_state& state, int gridpoints) {
    if (gridpoints < 1) {
        throw error("continuum_pom: need at least one gridpoint");
    }
    pom out;
    out.dim = state.dim();
    out.vectors.resize(out.dim, gridpoints);
    for (int g = 0; g < gridpoints; ++g) {
        for (int j = 0; j < out.dim; ++j) {
            out.vectors(j, g) = std::polar(1.0, -two_pi * g * j / gridpoints);
        }
    }
    out.weights = Eigen::VectorXd::Constant(gridpoints, 1.0 / gridpoints);
    return out;
}

// Sum of the POM elements, sum_m w_m |v_m><v_m|.
inline Eigen::MatrixXcd pom_element_sum(const pom& measure) {
    Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(measure.dim, measure.dim);
    for (int m = 0; m < measure.outcomes(); ++m) {
        sum += measure.weights[m] * (measure.vectors.col(m) * measure.vectors.col(m).adjoint());
    }
    return sum;
}

// Max-norm deviation of the discretized continuum measure from the identity.
// The integrand is a trigonometric polynomial of degree K*N, so the periodic
// rule is exact (deviation at rounding level) once gridpoints > K*N.
inline double continuum_identity_check(const symmetric_state& state, int gridpoints) {
    const Eigen::MatrixXcd sum = pom_element_sum(continuum_pom(state, gridpoints));
    const Eigen::MatrixXcd identity = Eigen::MatrixXcd::Identity(state.dim(), state.dim());
    return (sum - identity).cwiseAbs().maxCoeff();
}

}  // namespace phasest
