#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "phasest/state.hpp"

using namespace phasest;
using Catch::Approx;

namespace {
const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
}

TEST_CASE("make_state_spec normalizes its input") {
    const state_spec spec = make_state_spec({cxd(1, 0), cxd(1, 0)});
    REQUIRE(spec.max_level == 1);
    REQUIRE(spec.amplitudes[0].real() == Approx(inv_sqrt2).margin(1e-15));
    REQUIRE(spec.amplitudes[1].real() == Approx(inv_sqrt2).margin(1e-15));

    const state_spec basis = make_state_spec({cxd(1, 0), cxd(0, 0)});
    REQUIRE(basis.amplitudes[0] == cxd(1, 0));
    REQUIRE(basis.amplitudes[1] == cxd(0, 0));

    const state_spec qutrit = make_state_spec({cxd(1, 0), cxd(1, 0), cxd(1, 0)});
    REQUIRE(qutrit.max_level == 2);
    for (int k = 0; k <= 2; ++k) {
        REQUIRE(std::abs(qutrit.amplitudes[k]) == Approx(1.0 / std::sqrt(3.0)).margin(1e-15));
    }
}

TEST_CASE("make_state_spec rejects degenerate input") {
    REQUIRE_THROWS_AS(make_state_spec(std::vector<cxd>{}), empty_spec_error);
    REQUIRE_THROWS_AS(make_state_spec({cxd(0, 0), cxd(0, 0)}), zero_norm_error);
}

TEST_CASE("evolved_single applies the level-dependent phase") {
    const state_spec basis = make_state_spec({cxd(1, 0), cxd(0, 0)});
    Eigen::VectorXcd out = evolved_single(basis, std::numbers::pi);
    REQUIRE(std::abs(out[0] - cxd(1, 0)) < 1e-15);
    REQUIRE(std::abs(out[1]) < 1e-15);

    const state_spec equal = make_state_spec({cxd(1, 0), cxd(1, 0)});
    out = evolved_single(equal, 0.0);
    REQUIRE(std::abs(out[0] - cxd(inv_sqrt2, 0)) < 1e-15);
    REQUIRE(std::abs(out[1] - cxd(inv_sqrt2, 0)) < 1e-15);

    out = evolved_single(equal, std::numbers::pi);
    REQUIRE(std::abs(out[0] - cxd(inv_sqrt2, 0)) < 1e-12);
    REQUIRE(std::abs(out[1] - cxd(-inv_sqrt2, 0)) < 1e-12);
}

TEST_CASE("symmetric_amplitudes matches the occupation-tuple oracle on fixtures") {
    const state_spec equal = make_state_spec({cxd(1, 0), cxd(1, 0)});

    const symmetric_state two = symmetric_amplitudes(equal, 2);
    const Eigen::VectorXd expect_two = oracle::occupation_compression(equal, 2);
    REQUIRE(two.dim() == 3);
    for (int j = 0; j < 3; ++j) {
        REQUIRE(two.amplitudes[j] == Approx(expect_two[j]).margin(1e-13));
    }
    REQUIRE(two.amplitudes[0] == Approx(0.5).margin(1e-10));
    REQUIRE(two.amplitudes[1] == Approx(0.7071067812).margin(1e-10));
    REQUIRE(two.amplitudes[2] == Approx(0.5).margin(1e-10));

    const symmetric_state three = symmetric_amplitudes(equal, 3);
    const Eigen::VectorXd expect_three = oracle::occupation_compression(equal, 3);
    for (int j = 0; j < 4; ++j) {
        REQUIRE(three.amplitudes[j] == Approx(expect_three[j]).margin(1e-13));
    }
    REQUIRE(three.amplitudes[0] == Approx(0.3535533906).margin(1e-10));
    REQUIRE(three.amplitudes[1] == Approx(0.6123724357).margin(1e-10));
    REQUIRE(three.amplitudes.squaredNorm() == Approx(1.0).margin(1e-12));

    // single occupied mode: all weight stays at J = 0
    const state_spec basis = make_state_spec({cxd(1, 0), cxd(0, 0)});
    const symmetric_state peaked = symmetric_amplitudes(basis, 5);
    REQUIRE(peaked.amplitudes[0] == Approx(1.0).margin(1e-14));
    REQUIRE(peaked.amplitudes.tail(5).norm() < 1e-14);
}

TEST_CASE("symmetric_amplitudes agrees with the full tensor-power oracle") {
    std::mt19937 rng(991);
    for (int max_level = 1; max_level <= 3; ++max_level) {
        for (int copies = 1;; ++copies) {
            double dims = std::pow(double(max_level + 1), copies);
            if (dims > 4096) break;
            const state_spec spec = oracle::random_spec(rng, max_level);
            const symmetric_state state = symmetric_amplitudes(spec, copies);
            const Eigen::VectorXd expect = oracle::tensor_compression(spec, copies);
            REQUIRE((state.amplitudes - expect).cwiseAbs().maxCoeff() < 1e-12);
        }
    }
}

TEST_CASE("symmetric amplitudes stay normalized across the test grid") {
    std::mt19937 rng(1371);
    for (int max_level = 1; max_level <= 3; ++max_level) {
        for (int copies = 1; copies <= 12; ++copies) {
            const state_spec spec = oracle::random_spec(rng, max_level);
            const symmetric_state state = symmetric_amplitudes(spec, copies);
            REQUIRE(state.amplitudes.squaredNorm() == Approx(1.0).margin(1e-12));
            REQUIRE(state.amplitudes.minCoeff() >= 0.0);
        }
    }
}

TEST_CASE("bosonic dimension is the binomial (N+K, K)") {
    const state_spec qutrit = make_state_spec({cxd(1, 0), cxd(1, 0), cxd(1, 0)});
    const symmetric_state state = symmetric_amplitudes(qutrit, 4);
    REQUIRE(state.bosonic_dimension() == Approx(15.0));  // binom(6, 2)
    REQUIRE(state.dim() == 9);
}

TEST_CASE("fidelity_overlaps evaluates the autocorrelations") {
    const state_spec equal = make_state_spec({cxd(1, 0), cxd(1, 0)});
    const overlap_coefficients d = fidelity_overlaps(equal);
    REQUIRE(d[0] == Approx(0.5).margin(1e-12));
    REQUIRE(d[1] == Approx(0.25).margin(1e-12));

    const state_spec basis = make_state_spec({cxd(1, 0), cxd(0, 0)});
    const overlap_coefficients flat = fidelity_overlaps(basis);
    REQUIRE(flat[0] == Approx(1.0).margin(1e-12));
    REQUIRE(flat[1] == Approx(0.0).margin(1e-15));

    const state_spec qutrit = make_state_spec({cxd(1, 0), cxd(1, 0), cxd(1, 0)});
    const overlap_coefficients dq = fidelity_overlaps(qutrit);
    REQUIRE(dq[0] == Approx(1.0 / 3.0).margin(1e-12));
    REQUIRE(dq[1] == Approx(2.0 / 9.0).margin(1e-12));
    REQUIRE(dq[2] == Approx(1.0 / 9.0).margin(1e-12));
}

TEST_CASE("overlap expansion is complete: d_0 + 2 sum d_L = 1") {
    std::mt19937 rng(52);
    for (int max_level = 1; max_level <= 4; ++max_level) {
        const state_spec spec = oracle::random_spec(rng, max_level, 0.05);
        const overlap_coefficients d = fidelity_overlaps(spec);
        REQUIRE(d[0] <= 1.0 + 1e-12);
        double total = d[0];
        for (int lag = 1; lag <= d.max_lag(); ++lag) {
            REQUIRE(d[lag] >= 0.0);
            total += 2.0 * d[lag];
        }
        REQUIRE(total == Approx(1.0).margin(1e-12));
    }
}

TEST_CASE("evolved_symmetric phases the ladder components") {
    const state_spec equal = make_state_spec({cxd(1, 0), cxd(1, 0)});
    const symmetric_state two = symmetric_amplitudes(equal, 2);

    Eigen::VectorXcd still = evolved_symmetric(two, 0.0);
    for (int j = 0; j < 3; ++j) {
        REQUIRE(std::abs(still[j] - cxd(two.amplitudes[j], 0)) < 1e-15);
    }

    Eigen::VectorXcd flipped = evolved_symmetric(two, std::numbers::pi);
    REQUIRE(std::abs(flipped[0] - cxd(0.5, 0)) < 1e-12);
    REQUIRE(std::abs(flipped[1] - cxd(-0.7071067812, 0)) < 1e-10);
    REQUIRE(std::abs(flipped[2] - cxd(0.5, 0)) < 1e-12);

    const symmetric_state one = symmetric_amplitudes(equal, 1);
    Eigen::VectorXcd quarter = evolved_symmetric(one, std::numbers::pi / 2);
    REQUIRE(std::abs(quarter[0] - cxd(inv_sqrt2, 0)) < 1e-12);
    REQUIRE(std::abs(quarter[1] - cxd(0, -inv_sqrt2)) < 1e-12);
}

TEST_CASE("phase evolution is covariant: theta1 + theta2 composes") {
    std::mt19937 rng(77);
    for (int trial = 0; trial < 20; ++trial) {
        const state_spec spec = oracle::random_spec(rng, 2);
        const symmetric_state state = symmetric_amplitudes(spec, 3);
        const double t1 = oracle::random_angle(rng);
        const double t2 = oracle::random_angle(rng);
        const Eigen::VectorXcd direct = evolved_symmetric(state, t1 + t2);
        Eigen::VectorXcd staged = evolved_symmetric(state, t1);
        for (int j = 0; j < state.dim(); ++j) {
            staged[j] *= std::polar(1.0, -t2 * j);
        }
        REQUIRE((direct - staged).cwiseAbs().maxCoeff() < 1e-12);
    }
}
