#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <complex>
#include <random>

#include "cavityduet/exact_propagator.hpp"

using namespace cduet;
using Catch::Matchers::WithinAbs;

namespace {

double max_amp_diff(const PureState& a, const PureState& b) {
    return (a.amp - b.amp).cwiseAbs().maxCoeff();
}

// Textbook two-level Rabi solution for one atom against its own cavity,
// written out fresh here as an oracle.  Detuning d = Omega1 - omega1; all
// phases carry 2*pi.  Returns the excited-state survival probability.
double rabi_survival(double g, double d, double tau) {
    const double om = std::sqrt(g * g + 0.25 * d * d);
    const double s = std::sin(two_pi * om * tau);
    return 1.0 - (g * g) / (om * om) * s * s;
}

}  // namespace

TEST_CASE("hand-checked Hamiltonian matrix elements") {
    SimParams p;
    p.g1 = 0.04;
    p.g2 = 0.05;
    p.lambda = 0.001;
    SectorBasis basis(3);
    const auto h = build_hamiltonian(p, basis);

    const auto i_0e2g = static_cast<Eigen::Index>(basis.index_of({0, 1, 2, 0}));
    const auto i_1g2g = static_cast<Eigen::Index>(basis.index_of({1, 0, 2, 0}));
    const auto i_0e1e = static_cast<Eigen::Index>(basis.index_of({0, 1, 1, 1}));
    const auto i_0g3g = static_cast<Eigen::Index>(basis.index_of({0, 0, 3, 0}));

    // diagonal: omega1 n1 + omega2 n2 + Omega1 (2 s1 - 1)/2 + Omega2 (2 s2 - 1)/2
    REQUIRE_THAT(h(i_0e2g, i_0e2g).real(),
                 WithinAbs(0.5 * p.Omega1 + 2.0 * p.omega2 - 0.5 * p.Omega2, 1e-15));
    // atom one absorbing the cavity-one photon: g1 sqrt(1)
    REQUIRE_THAT(h(i_0e2g, i_1g2g).real(), WithinAbs(p.g1, 1e-15));
    // atom two: g2 sqrt(2) between (0,e,2,g) and (0,e,1,e)
    REQUIRE_THAT(h(i_0e1e, i_0e2g).real(), WithinAbs(p.g2 * std::sqrt(2.0), 1e-15));
    // hopping between (1,g,2,g) and (0,g,3,g): lambda sqrt(1) sqrt(3)
    REQUIRE_THAT(h(i_0g3g, i_1g2g).real(), WithinAbs(p.lambda * std::sqrt(3.0), 1e-15));
    // no direct coupling between the two atoms
    const auto i_0e0e2 = basis.find(BasisKet{0, 1, 1, 1});
    REQUIRE(i_0e0e2.has_value());
    REQUIRE(std::abs(h(i_1g2g, i_0e1e)) == 0.0);
}

TEST_CASE("Hamiltonian is Hermitian for random parameter draws") {
    std::mt19937 rng(911u);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 40; ++trial) {
        SimParams p;
        p.omega2 = 0.5 + u(rng);
        p.Omega1 = u(rng);
        p.Omega2 = u(rng);
        p.g1 = 0.5 * u(rng);
        p.g2 = 0.5 * u(rng);
        p.lambda = 0.5 * u(rng);
        SectorBasis basis(1 + static_cast<int>(u(rng) * 4));
        const auto h = build_hamiltonian(p, basis);
        REQUIRE((h - h.adjoint()).cwiseAbs().maxCoeff() <= 1e-12);
        REQUIRE(h.imag().cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("eigendecomposition reconstructs the Hamiltonian") {
    SimParams p;
    p.g1 = 0.04;
    p.g2 = 0.05;
    p.lambda = 0.08;
    SectorBasis basis(3);
    const auto h = build_hamiltonian(p, basis);
    ExactEvolution ev(p, basis);
    const auto& v = ev.eigenvectors();
    const Eigen::MatrixXcd vhv = v.adjoint() * v;
    REQUIRE((vhv - Eigen::MatrixXcd::Identity(12, 12)).cwiseAbs().maxCoeff() <= 1e-12);
    const Eigen::MatrixXcd rebuilt = v * ev.eigenvalues().asDiagonal() * v.adjoint();
    REQUIRE((rebuilt - h).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("tau = 0 is the identity") {
    SimParams p;
    p.g1 = 0.2;
    p.g2 = 0.3;
    p.lambda = 0.1;
    SectorBasis basis(3);
    const PureState psi0 = basis_state(basis, {0, 1, 2, 0});
    const auto out = propagate_exact(p, psi0, {0.0});
    REQUIRE(max_amp_diff(out[0], psi0) <= 1e-12);
}

TEST_CASE("uncoupled evolution is a pure phase per ket") {
    SimParams p;  // couplings default to zero
    SectorBasis basis(3);
    const BasisKet k{0, 1, 2, 0};
    const PureState psi0 = basis_state(basis, k);
    const double tau = 0.3125;
    const auto out = propagate_exact(p, psi0, {tau});
    const double e = 0.5 * p.Omega1 + 2.0 * p.omega2 - 0.5 * p.Omega2;
    const std::complex<double> expect =
        std::exp(std::complex<double>(0.0, -two_pi * e * tau));
    const auto idx = static_cast<Eigen::Index>(basis.index_of(k));
    REQUIRE(std::abs(out[0].amp(idx) - expect) <= 1e-12);
    REQUIRE_THAT(norm_of(out[0]), WithinAbs(1.0, 1e-12));
}

TEST_CASE("single-cavity dynamics reproduces the Rabi oracle") {
    SectorBasis basis(1);
    const PureState psi0 = basis_state(basis, {0, 1, 0, 0});
    const std::vector<double> taus{0.5, 1.7, 4.0, 9.25};

    SECTION("on resonance") {
        SimParams p;
        p.Omega1 = 1.0;  // resonant atom one
        p.g1 = 0.04;
        const auto out = propagate_exact(p, psi0, taus);
        for (std::size_t i = 0; i < taus.size(); ++i) {
            const double pe =
                std::norm(out[i].amp(static_cast<Eigen::Index>(basis.index_of({0, 1, 0, 0}))));
            REQUIRE_THAT(pe, WithinAbs(rabi_survival(p.g1, 0.0, taus[i]), 1e-10));
            const double sz = expectation(out[i], Observable::SZ1);
            REQUIRE_THAT(sz, WithinAbs(std::cos(2.0 * two_pi * p.g1 * taus[i]), 1e-10));
        }
    }

    SECTION("detuned") {
        SimParams p;  // Omega1 = 0.999
        p.g1 = 0.04;
        const auto out = propagate_exact(p, psi0, taus);
        for (std::size_t i = 0; i < taus.size(); ++i) {
            const double pe =
                std::norm(out[i].amp(static_cast<Eigen::Index>(basis.index_of({0, 1, 0, 0}))));
            REQUIRE_THAT(pe, WithinAbs(rabi_survival(p.g1, p.Omega1 - p.omega1, taus[i]), 1e-10));
        }
    }
}

TEST_CASE("norm and energy are conserved along the exact path") {
    SimParams p;
    p.g1 = 0.04;
    p.g2 = 0.05;
    p.lambda = 0.08;
    SectorBasis basis(3);
    const PureState psi0 = basis_state(basis, {0, 1, 2, 0});
    std::vector<double> taus;
    for (int i = 0; i <= 40; ++i) taus.push_back(2.5 * i);
    const auto out = propagate_exact(p, psi0, taus);
    const auto h = build_hamiltonian(p, basis);
    const double e0 = (psi0.amp.adjoint() * h * psi0.amp)(0).real();
    for (const auto& s : out) {
        REQUIRE_THAT(norm_of(s), WithinAbs(1.0, 1e-9));
        const double e = (s.amp.adjoint() * h * s.amp)(0).real();
        REQUIRE_THAT(e, WithinAbs(e0, 1e-10));
    }
}

TEST_CASE("RK4 cross-check agrees with the eigendecomposition path") {
    SimParams p;
    p.g1 = 0.001;
    p.g2 = 0.00125;
    p.lambda = 0.25;
    SectorBasis basis(3);
    const PureState psi0 = basis_state(basis, {0, 1, 2, 0});
    const std::vector<double> taus{10.0};
    const auto exact = propagate_exact(p, psi0, taus);

    const auto rk = propagate_rk_check(p, psi0, taus, 1e-3);
    const double err = max_amp_diff(rk[0], exact[0]);
    REQUIRE(err <= 1e-6);

    // order check: halving the step shrinks the error by about 2^4
    const auto rk_half = propagate_rk_check(p, psi0, taus, 5e-4);
    const double err_half = max_amp_diff(rk_half[0], exact[0]);
    REQUIRE(err_half > 0.0);
    const double ratio = err / err_half;
    REQUIRE(ratio > 12.0);
    REQUIRE(ratio < 20.0);
}

TEST_CASE("RK4 with a reckless step reports instability") {
    SimParams p;
    p.g1 = 0.001;
    p.g2 = 0.00125;
    p.lambda = 0.25;
    SectorBasis basis(3);
    const PureState psi0 = basis_state(basis, {0, 1, 2, 0});
    REQUIRE_THROWS_AS(propagate_rk_check(p, psi0, {10.0}, 0.2), NumericalFailure);
    REQUIRE_THROWS_AS(propagate_rk_check(p, psi0, {1.0}, -0.1), ValidationError);
}
