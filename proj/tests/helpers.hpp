// helpers.hpp
// Test-side oracles. Each one recomputes a quantity along a route that is
// independent of the library implementation it checks.

#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "phasest/state.hpp"

namespace oracle {

using phasest::cxd;

// Compression of |psi>^(x)N by explicit tensor power: build all (K+1)^N
// product amplitudes, group coordinates by their digit sum, and take the
// root-sum-square of each group.
inline Eigen::VectorXd tensor_compression(const phasest::state_spec& spec, int copies) {
    const int base = spec.dim();
    long total = 1;
    for (int i = 0; i < copies; ++i) total *= base;
    Eigen::VectorXd weight = Eigen::VectorXd::Zero(spec.max_level * copies + 1);
    for (long idx = 0; idx < total; ++idx) {
        long rest = idx;
        cxd amp = 1.0;
        int level_sum = 0;
        for (int pos = 0; pos < copies; ++pos) {
            const int digit = static_cast<int>(rest % base);
            rest /= base;
            amp *= spec.amplitudes[digit];
            level_sum += digit;
        }
        weight[level_sum] += std::norm(amp);
    }
    return weight.cwiseSqrt();
}

inline double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

namespace detail {

inline void occupation_walk(const phasest::state_spec& spec, int level, int remaining,
                            int level_sum, double coeff, Eigen::VectorXd& weight) {
    if (level == spec.max_level) {
        const double p = std::pow(std::norm(spec.amplitudes[level]), remaining);
        weight[level_sum + level * remaining] += coeff * p / factorial(remaining);
        return;
    }
    for (int n = 0; n <= remaining; ++n) {
        const double p = std::pow(std::norm(spec.amplitudes[level]), n);
        occupation_walk(spec, level + 1, remaining - n, level_sum + level * n,
                        coeff * p / factorial(n), weight);
    }
}

}  // namespace detail

// Same compression by brute-force occupation-tuple enumeration with plain
// double factorials (no log space).
inline Eigen::VectorXd occupation_compression(const phasest::state_spec& spec, int copies) {
    Eigen::VectorXd weight = Eigen::VectorXd::Zero(spec.max_level * copies + 1);
    detail::occupation_walk(spec, 0, copies, 0, 1.0, weight);
    return (factorial(copies) * weight).cwiseSqrt();
}

// Forward DFT matrix F[j][k] = e^{-2pi i jk/D} / sqrt(D).
inline Eigen::MatrixXcd fourier_matrix(int dim) {
    Eigen::MatrixXcd f(dim, dim);
    for (int j = 0; j < dim; ++j) {
        for (int k = 0; k < dim; ++k) {
            f(j, k) = std::polar(1.0 / std::sqrt(double(dim)), -phasest::two_pi * j * k / dim);
        }
    }
    return f;
}

// Permutation sending |x> to the basis state with bit-reversed index.
inline Eigen::MatrixXcd bit_reversal_matrix(int qubits) {
    const int dim = 1 << qubits;
    Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(dim, dim);
    for (int x = 0; x < dim; ++x) {
        int rev = 0;
        for (int i = 0; i < qubits; ++i) rev |= ((x >> i) & 1) << (qubits - 1 - i);
        p(rev, x) = 1.0;
    }
    return p;
}

// Rotates a vector by a global phase so its first component of nonnegligible
// magnitude becomes real positive.
inline Eigen::VectorXcd phase_normalized(const Eigen::VectorXcd& v) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (std::abs(v[i]) > 1e-9) {
            return v * (std::conj(v[i]) / std::abs(v[i]));
        }
    }
    return v;
}

// Random spec with magnitudes bounded away from zero, so every ladder
// amplitude stays strictly positive.
inline phasest::state_spec random_spec(std::mt19937& rng, int max_level, double min_mag = 0.25) {
    std::uniform_real_distribution<double> mag(min_mag, 1.0);
    std::uniform_real_distribution<double> phase(0.0, phasest::two_pi);
    Eigen::VectorXcd c(max_level + 1);
    for (int k = 0; k <= max_level; ++k) {
        c[k] = std::polar(mag(rng), phase(rng));
    }
    return phasest::make_state_spec(c);
}

inline double random_angle(std::mt19937& rng) {
    return std::uniform_real_distribution<double>(0.0, phasest::two_pi)(rng);
}

}  // namespace oracle
