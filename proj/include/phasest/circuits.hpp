// circuits.hpp
// Dense statevector simulation of the qubit (K=1) measurement pipelines for
// N = 2, 3, 4 copies: the compression circuits that map the N-qubit
// symmetric basis onto low-order computational basis states, the discrete
// Fourier transform readout network, and the outcome decision rule.
//
// Conventions
//   * Qubit order is big-endian: qubit 0 is the leftmost ket symbol and the
//     most significant bit of a basis index.
//   * The DFT network is the plain Hadamard/controlled-phase ladder with no
//     terminal swaps; its unitary equals (bit reversal) o (inverse DFT), so
//     outcome m is read from the bit-reversed basis pattern. That is exactly
//     the projector pairing the readout uses.
//   * Compression circuits are pinned by their action on the symmetric
//     basis; blocks with no fixed realization are deterministic completions
//     (lexicographically first unassigned basis vector onto the first unused
//     target).
//
// Everything here is dense: at most 4 qubits, 16-dimensional matrices.

#pragma once

#include <bit>
#include <cmath>
#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "phasest/state.hpp"

namespace phasest {

enum class gate_kind {
    hadamard,
    pauli_x,
    controlled_not,
    toffoli,
    controlled_phase,     // |x>|y> -> e^{i x y angle} |x>|y>
    controlled_unitary,   // 2x2 unitary on the target, one control
    swap_pair,
    custom,               // explicit unitary on the listed targets
};

struct gate {
    gate_kind kind = gate_kind::hadamard;
    std::vector<int> controls;
    std::vector<int> targets;
    double angle = 0.0;
    Eigen::MatrixXcd matrix;
    std::string label;

    static gate make(gate_kind kind, std::vector<int> controls, std::vector<int> targets) {
        gate g;
        g.kind = kind;
        g.controls = std::move(controls);
        g.targets = std::move(targets);
        return g;
    }
    static gate hadamard(int q) { return make(gate_kind::hadamard, {}, {q}); }
    static gate pauli_x(int q) { return make(gate_kind::pauli_x, {}, {q}); }
    static gate controlled_not(int control, int target) {
        return make(gate_kind::controlled_not, {control}, {target});
    }
    static gate toffoli(int control_a, int control_b, int target) {
        return make(gate_kind::toffoli, {control_a, control_b}, {target});
    }
    static gate controlled_phase(int control, int target, double angle) {
        gate g = make(gate_kind::controlled_phase, {control}, {target});
        g.angle = angle;
        return g;
    }
    static gate controlled_unitary(int control, int target, const Eigen::Matrix2cd& u,
                                   std::string label = {}) {
        gate g = make(gate_kind::controlled_unitary, {control}, {target});
        g.matrix = u;
        g.label = std::move(label);
        return g;
    }
    static gate swap_pair(int a, int b) { return make(gate_kind::swap_pair, {}, {a, b}); }
    static gate custom(std::vector<int> targets, const Eigen::MatrixXcd& u,
                       std::string label = {}) {
        gate g = make(gate_kind::custom, {}, std::move(targets));
        g.matrix = u;
        g.label = std::move(label);
        return g;
    }
};

namespace detail {

inline int bit_reverse(int value, int bits) {
    int out = 0;
    for (int i = 0; i < bits; ++i) {
        out |= ((value >> i) & 1) << (bits - 1 - i);
    }
    return out;
}

inline Eigen::MatrixXcd local_unitary(const gate& g) {
    Eigen::MatrixXcd u;
    switch (g.kind) {
        case gate_kind::hadamard:
            u.resize(2, 2);
            u << 1, 1, 1, -1;
            u /= std::sqrt(2.0);
            break;
        case gate_kind::pauli_x:
        case gate_kind::controlled_not:
        case gate_kind::toffoli:
            u.resize(2, 2);
            u << 0, 1, 1, 0;
            break;
        case gate_kind::controlled_phase:
            u.resize(2, 2);
            u << 1, 0, 0, std::polar(1.0, g.angle);
            break;
        case gate_kind::controlled_unitary:
        case gate_kind::custom:
            u = g.matrix;
            break;
        case gate_kind::swap_pair:
            u = Eigen::MatrixXcd::Zero(4, 4);
            u(0, 0) = u(3, 3) = u(1, 2) = u(2, 1) = 1;
            break;
    }
    return u;
}

}  // namespace detail

struct circuit {
    int qubits = 0;
    std::vector<gate> gates;

    circuit() = default;
    explicit circuit(int n) : qubits(n) {}

    // Validates indices and the local unitary before accepting the gate.
    void push(gate g) {
        std::vector<bool> seen(qubits, false);
        auto claim = [&](int q, const char* role) {
            if (q < 0 || q >= qubits) {
                throw error(std::string("circuit: ") + role + " qubit out of range");
            }
            if (seen[q]) {
                throw error(std::string("circuit: duplicate ") + role + " qubit");
            }
            seen[q] = true;
        };
        for (int q : g.controls) claim(q, "control");
        for (int q : g.targets) claim(q, "target");
        if (g.targets.empty()) {
            throw error("circuit: gate needs at least one target");
        }
        const Eigen::MatrixXcd u = detail::local_unitary(g);
        const Eigen::Index local_dim = Eigen::Index(1) << g.targets.size();
        if (u.rows() != local_dim || u.cols() != local_dim) {
            throw dimension_mismatch_error("circuit: gate matrix does not match its target count");
        }
        const double residual =
            (u.adjoint() * u - Eigen::MatrixXcd::Identity(local_dim, local_dim))
                .cwiseAbs()
                .maxCoeff();
        if (residual > 1e-12) {
            throw error("circuit: gate matrix is not unitary");
        }
        gates.push_back(std::move(g));
    }

    // Appends another circuit with its qubit indices shifted by offset.
    void append(const circuit& other, int offset = 0) {
        for (gate g : other.gates) {
            for (int& q : g.controls) q += offset;
            for (int& q : g.targets) q += offset;
            push(std::move(g));
        }
    }
};

// Full 2^n x 2^n matrix of a single gate (controls included).
inline Eigen::MatrixXcd gate_matrix(const gate& g, int qubits) {
    const int dim = 1 << qubits;
    const Eigen::MatrixXcd local = detail::local_unitary(g);
    const int local_bits = static_cast<int>(g.targets.size());
    const int local_dim = 1 << local_bits;

    auto bit_position = [&](int q) { return qubits - 1 - q; };

    Eigen::MatrixXcd full = Eigen::MatrixXcd::Zero(dim, dim);
    for (int b = 0; b < dim; ++b) {
        bool active = true;
        for (int q : g.controls) {
            active = active && ((b >> bit_position(q)) & 1);
        }
        if (!active) {
            full(b, b) = 1.0;
            continue;
        }
        int in = 0;
        for (int i = 0; i < local_bits; ++i) {
            in |= ((b >> bit_position(g.targets[i])) & 1) << (local_bits - 1 - i);
        }
        for (int out = 0; out < local_dim; ++out) {
            int b2 = b;
            for (int i = 0; i < local_bits; ++i) {
                const int mask = 1 << bit_position(g.targets[i]);
                if ((out >> (local_bits - 1 - i)) & 1) {
                    b2 |= mask;
                } else {
                    b2 &= ~mask;
                }
            }
            full(b2, b) += local(out, in);
        }
    }
    return full;
}

inline Eigen::MatrixXcd circuit_unitary(const circuit& c) {
    const int dim = 1 << c.qubits;
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(dim, dim);
    for (const gate& g : c.gates) {
        u = gate_matrix(g, c.qubits) * u;
    }
    return u;
}

// Sequential left-action of every gate.
inline Eigen::VectorXcd apply_circuit(const circuit& c, const Eigen::VectorXcd& psi) {
    if (psi.size() != (Eigen::Index(1) << c.qubits)) {
        throw dimension_mismatch_error("apply_circuit: state vector does not match the qubit count");
    }
    Eigen::VectorXcd out = psi;
    for (const gate& g : c.gates) {
        out = gate_matrix(g, c.qubits) * out;
    }
    return out;
}

// Hadamard/controlled-phase ladder computing the discrete Fourier transform
// with bit-reversed output order: the induced unitary U satisfies
// U = (bit reversal) o F+ where F+|j> = sum_k e^{+i 2pi jk/D} |k> / sqrt(D).
// Hence U^dagger applied to the bit-reversed pattern of m gives the Fourier
// projector sum_L e^{-i 2pi m L / D} |L> / sqrt(D).
inline circuit dft_unitary(int qubits) {
    if (qubits < 1) {
        throw error("dft_unitary: need at least one qubit");
    }
    circuit c(qubits);
    for (int q = 0; q < qubits; ++q) {
        c.push(gate::hadamard(q));
        for (int p = q + 1; p < qubits; ++p) {
            c.push(gate::controlled_phase(p, q, two_pi / (1 << (p - q + 1))));
        }
    }
    return c;
}

namespace detail {

// |J>_T on n qubits: uniform superposition of all weight-J bitstrings.
inline Eigen::VectorXcd symmetric_basis_state(int qubits, int weight) {
    const int dim = 1 << qubits;
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
    const double coeff = 1.0 / std::sqrt(binomial(qubits, weight));
    for (int b = 0; b < dim; ++b) {
        if (std::popcount(static_cast<unsigned>(b)) == weight) {
            v[b] = coeff;
        }
    }
    return v;
}

// Unitary pinned on (source vector -> target basis state) pairs and
// completed deterministically: scan the computational basis in numeric
// order, Gram-Schmidt each vector against the directions already assigned,
// and send every new direction to the first unused target basis state.
inline Eigen::MatrixXcd completion_unitary(const std::vector<Eigen::VectorXcd>& sources,
                                           const std::vector<int>& targets, int dim) {
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(dim, dim);
    std::vector<Eigen::VectorXcd> assigned = sources;
    std::vector<bool> target_used(dim, false);
    for (std::size_t j = 0; j < sources.size(); ++j) {
        u.row(targets[j]) = sources[j].adjoint();
        target_used[targets[j]] = true;
    }
    int next_target = 0;
    for (int x = 0; x < dim && static_cast<int>(assigned.size()) < dim; ++x) {
        Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
        v[x] = 1.0;
        for (int pass = 0; pass < 2; ++pass) {
            for (const Eigen::VectorXcd& s : assigned) {
                v -= s * s.dot(v);
            }
        }
        if (v.norm() <= 1e-9) continue;
        v.normalize();
        while (target_used[next_target]) ++next_target;
        u.row(next_target) = v.adjoint();
        target_used[next_target] = true;
        assigned.push_back(std::move(v));
    }
    return u;
}

inline Eigen::Matrix2cd givens_rotation(double c, double s) {
    Eigen::Matrix2cd u;
    u << c, s, -s, c;
    return u;
}

inline Eigen::Matrix2cd hadamard_2x2() {
    Eigen::Matrix2cd h;
    h << 1, 1, 1, -1;
    return h / std::sqrt(2.0);
}

}  // namespace detail

// Compression circuit for N qubits: maps the symmetric basis state of
// weight J onto the computational basis state with index J (N = 2) or onto
// |0> tensor |J> (N = 3, 4), so a DFT readout of the trailing qubits
// implements the uniform estimation strategy.
inline circuit basis_transform(int copies) {
    switch (copies) {
        case 2: {
            circuit c(2);
            c.push(gate::controlled_not(0, 1));
            c.push(gate::controlled_unitary(1, 0, detail::hadamard_2x2(), "controlled-hadamard"));
            return c;
        }
        case 3: {
            circuit c(3);
            // two-copy compression on the leading qubits
            c.append(basis_transform(2), 0);
            // route |100> to |110>, leaving the other occupied states alone
            c.push(gate::pauli_x(2));
            c.push(gate::toffoli(0, 2, 1));
            c.push(gate::pauli_x(2));
            // merge the residual superpositions onto |0>|J>; the block is pinned
            // by its action and completed deterministically off that subspace
            const Eigen::MatrixXcd prefix = circuit_unitary(c);
            std::vector<Eigen::VectorXcd> sources;
            for (int j = 0; j <= 3; ++j) {
                sources.push_back(prefix * detail::symmetric_basis_state(3, j));
            }
            c.push(gate::custom({0, 1, 2},
                                detail::completion_unitary(sources, {0, 1, 2, 3}, 8),
                                "merge-rotation block"));
            return c;
        }
        case 4: {
            circuit c(4);
            c.append(basis_transform(3), 0);
            c.push(gate::toffoli(2, 3, 1));
            c.push(gate::controlled_not(2, 3));
            c.push(gate::controlled_unitary(
                3, 2, detail::givens_rotation(0.5, std::sqrt(3.0) / 2.0), "controlled-rotation"));
            // final reorder on the trailing three qubits; the compressed images
            // all carry |0> on qubit 0 at this point
            const Eigen::MatrixXcd prefix = circuit_unitary(c);
            std::vector<Eigen::VectorXcd> sources;
            for (int j = 0; j <= 4; ++j) {
                const Eigen::VectorXcd image = prefix * detail::symmetric_basis_state(4, j);
                if (image.tail(8).norm() > 1e-9) {
                    throw error("basis_transform: leading qubit not cleared");
                }
                sources.push_back(image.head(8));
            }
            c.push(gate::custom({1, 2, 3},
                                detail::completion_unitary(sources, {0, 1, 2, 3, 4}, 8),
                                "reorder block"));
            return c;
        }
        default:
            throw unsupported_copies_error("basis_transform: supported copy counts are 2, 3, 4");
    }
}

inline int pipeline_measured_qubits(int copies) { return copies == 4 ? 3 : 2; }
inline int pipeline_outcomes(int copies) { return 1 << pipeline_measured_qubits(copies); }

// Compression followed by the DFT readout network on the measured qubits.
inline circuit estimation_circuit(int copies) {
    circuit c = basis_transform(copies);
    const int measured = pipeline_measured_qubits(copies);
    c.append(dft_unitary(measured), copies - measured);
    return c;
}

inline Eigen::VectorXcd tensor_power(const Eigen::VectorXcd& v, int n) {
    Eigen::VectorXcd out = Eigen::VectorXcd::Ones(1);
    for (int i = 0; i < n; ++i) {
        Eigen::VectorXcd next(out.size() * v.size());
        for (Eigen::Index a = 0; a < out.size(); ++a) {
            next.segment(a * v.size(), v.size()) = out[a] * v;
        }
        out.swap(next);
    }
    return out;
}

namespace detail {

inline void check_pipeline_spec(const state_spec& spec, int copies) {
    if (copies < 2 || copies > 4) {
        throw unsupported_copies_error("pipeline: supported copy counts are 2, 3, 4");
    }
    if (spec.max_level != 1) {
        throw dimension_mismatch_error("pipeline: qubit specs (K = 1) only");
    }
    for (int k = 0; k <= spec.max_level; ++k) {
        const cxd a = spec.amplitudes[k];
        if (std::abs(a.imag()) > identity_tol || a.real() < -identity_tol) {
            throw non_real_spec_error("pipeline: amplitudes must be real and nonnegative");
        }
    }
}

}  // namespace detail

// Probabilities over the trailing `measured` qubits, marginalized over the
// rest and labeled by outcome m at the bit-reversed measurement pattern
// (the ladder network leaves its output in bit-reversed order).
inline std::vector<double> outcome_probabilities(const Eigen::VectorXcd& state, int qubits,
                                                 int measured) {
    if (state.size() != (Eigen::Index(1) << qubits)) {
        throw dimension_mismatch_error("outcome_probabilities: state size mismatch");
    }
    const int tail_dim = 1 << measured;
    std::vector<double> by_pattern(tail_dim, 0.0);
    for (Eigen::Index idx = 0; idx < state.size(); ++idx) {
        by_pattern[idx & (tail_dim - 1)] += std::norm(state[idx]);
    }
    std::vector<double> p(tail_dim);
    for (int m = 0; m < tail_dim; ++m) {
        p[m] = by_pattern[detail::bit_reverse(m, measured)];
    }
    return p;
}

// Outcome distribution of the full pipeline on |psi(theta)>^(x)N; outcome m
// corresponds to the guess theta_hat = 2pi m / 2^measured.
inline std::vector<double> pipeline_distribution(const state_spec& spec, int copies,
                                                 double theta) {
    detail::check_pipeline_spec(spec, copies);
    const Eigen::VectorXcd input = tensor_power(evolved_single(spec, theta), copies);
    const Eigen::VectorXcd output = apply_circuit(estimation_circuit(copies), input);
    return outcome_probabilities(output, copies, pipeline_measured_qubits(copies));
}

// Prior-averaged score of the circuit strategy by periodic quadrature;
// matches the closed-form maximum for every real-amplitude qubit spec.
inline double pipeline_average_score(const state_spec& spec, int copies, int gridpoints = 0) {
    detail::check_pipeline_spec(spec, copies);
    if (gridpoints <= 0) gridpoints = 4 * (copies + 1) + 8;
    const Eigen::MatrixXcd u = circuit_unitary(estimation_circuit(copies));
    const int measured = pipeline_measured_qubits(copies);
    const int outcomes = pipeline_outcomes(copies);

    std::vector<Eigen::VectorXcd> guessed(outcomes);
    for (int m = 0; m < outcomes; ++m) {
        guessed[m] = evolved_single(spec, two_pi * m / outcomes);
    }
    double total = 0.0;
    for (int g = 0; g < gridpoints; ++g) {
        const double theta = two_pi * g / gridpoints;
        const Eigen::VectorXcd single = evolved_single(spec, theta);
        const Eigen::VectorXcd output = u * tensor_power(single, copies);
        const std::vector<double> p = outcome_probabilities(output, copies, measured);
        for (int m = 0; m < outcomes; ++m) {
            total += p[m] * std::norm(guessed[m].dot(single));
        }
    }
    return total / gridpoints;
}

namespace detail {

inline std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

inline std::string format_indices(const std::vector<int>& qubits) {
    std::string out = "[";
    for (std::size_t i = 0; i < qubits.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(qubits[i]);
    }
    return out + "]";
}

inline std::string format_matrix(const Eigen::MatrixXcd& m) {
    std::string out = "[";
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        if (r) out += ",";
        out += "[";
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            if (c) out += ",";
            out += "(" + format_double(m(r, c).real()) + "," + format_double(m(r, c).imag()) + ")";
        }
        out += "]";
    }
    return out + "]";
}

}  // namespace detail

// Human-readable listing, one gate per line: kind, controls, targets, params.
inline std::string circuit_listing(const circuit& c) {
    static const char* names[] = {"hadamard",         "pauli_x",           "controlled_not",
                                  "toffoli",          "controlled_phase",  "controlled_unitary",
                                  "swap",             "custom"};
    std::string out;
    for (const gate& g : c.gates) {
        out += names[static_cast<int>(g.kind)];
        out += " controls=" + detail::format_indices(g.controls);
        out += " targets=" + detail::format_indices(g.targets);
        if (g.kind == gate_kind::controlled_phase) {
            out += " angle=" + detail::format_double(g.angle);
        }
        if (g.kind == gate_kind::controlled_unitary || g.kind == gate_kind::custom) {
            out += " matrix=" + detail::format_matrix(g.matrix);
        }
        if (!g.label.empty()) {
            out += " label=\"" + g.label + "\"";
        }
        out += "\n";
    }
    return out;
}

}  // namespace phasest
