#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "cavityduet/analytic_propagator.hpp"
#include "cavityduet/observables.hpp"

using namespace cduet;
using Catch::Matchers::WithinAbs;

namespace {

PureState random_state(const SectorBasis& basis, std::mt19937& rng) {
    std::normal_distribution<double> dist;
    PureState psi;
    psi.basis = &basis;
    psi.amp = Eigen::VectorXcd(static_cast<Eigen::Index>(basis.dim()));
    for (Eigen::Index i = 0; i < psi.amp.size(); ++i)
        psi.amp(i) = std::complex<double>(dist(rng), dist(rng));
    psi.amp.normalize();
    return psi;
}

double max_amp_diff(const PureState& a, const PureState& b) {
    return (a.amp - b.amp).cwiseAbs().maxCoeff();
}

SimParams fig_params(double g1_w1, double lam) {
    SimParams p;
    p.g1 = g1_w1;
    p.g2 = g1_w1 * p.omega2;
    p.lambda = lam;
    return p;
}

std::vector<LadderBetaSet> zero_betas(int cavity, int m_max) {
    std::vector<LadderBetaSet> bs;
    for (int m = 1; m <= m_max; ++m) {
        LadderBetaSet b;
        b.cavity = cavity;
        b.m = m;
        bs.push_back(b);
    }
    return bs;
}

}  // namespace

TEST_CASE("free phases: one cavity-one photon over half a period") {
    SimParams p;
    p.Omega1 = 0.0;  // atoms switched off so only the photon phase remains
    p.Omega2 = 0.0;
    SectorBasis basis(1);
    const PureState psi0 = basis_state(basis, {1, 0, 0, 0});
    const PureState out = apply_u0(p, 0.5, psi0);
    const auto idx = static_cast<Eigen::Index>(basis.index_of({1, 0, 0, 0}));
    REQUIRE_THAT(std::abs(out.amp(idx) - cplx(-1.0, 0.0)), WithinAbs(0.0, 1e-12));
    REQUIRE_THAT(norm_of(out), WithinAbs(1.0, 1e-12));
}

TEST_CASE("free phases leave populations untouched") {
    SimParams p;
    SectorBasis basis(3);
    std::mt19937 rng(5150u);
    const PureState psi = random_state(basis, rng);
    const PureState out = apply_u0(p, 7.25, psi);
    for (Eigen::Index i = 0; i < psi.amp.size(); ++i)
        REQUIRE_THAT(std::norm(out.amp(i)), WithinAbs(std::norm(psi.amp(i)), 1e-12));
}

TEST_CASE("hopping factor at gamma = 0 is the bitwise identity") {
    SectorBasis basis(3);
    std::mt19937 rng(77u);
    const PureState psi = random_state(basis, rng);
    const PureState out = apply_ui1_sum(GammaSet{1.5, 0.0, 0.0, 0.0}, psi);
    for (Eigen::Index i = 0; i < psi.amp.size(); ++i) REQUIRE(out.amp(i) == psi.amp(i));
}

TEST_CASE("hopping factor rotates a single photon between the cavities") {
    const double lambda = 0.125;
    SectorBasis basis(1);
    const PureState psi0 = basis_state(basis, {1, 0, 0, 0});
    for (double tau : {0.4, 1.0, 1.6}) {
        const double x = two_pi * lambda * tau;
        const GammaSet g = gamma_closed_form_resonant(lambda, tau);
        const PureState out = apply_ui1_sum(g, psi0);
        const auto i10 = static_cast<Eigen::Index>(basis.index_of({1, 0, 0, 0}));
        const auto i01 = static_cast<Eigen::Index>(basis.index_of({0, 0, 1, 0}));
        REQUIRE_THAT(std::abs(out.amp(i10) - std::cos(x)), WithinAbs(0.0, 1e-12));
        REQUIRE_THAT(std::abs(out.amp(i01) - cplx(0.0, -std::sin(x))), WithinAbs(0.0, 1e-12));
        REQUIRE_THAT(norm_of(out), WithinAbs(1.0, 1e-12));
    }
}

TEST_CASE("double-sum hopping factor equals its matrix-exponential oracle") {
    std::mt19937 rng(20240542u);
    std::uniform_real_distribution<double> u(-0.8, 0.8);
    for (int m = 1; m <= 4; ++m) {
        SectorBasis basis(m);
        for (int trial = 0; trial < 30; ++trial) {
            GammaSet g;
            g.gamma1 = cplx(u(rng), u(rng));
            g.gamma2 = cplx(u(rng), u(rng));
            g.gamma3 = 0.6 * cplx(u(rng), u(rng));
            const PureState psi = random_state(basis, rng);
            const PureState fast = apply_ui1_sum(g, psi);
            const PureState ref = apply_ui1_expm(g, psi);
            REQUIRE(max_amp_diff(fast, ref) <= 1e-10);
        }
    }
}

TEST_CASE("hopping factor conserves total photon number and spins") {
    SimParams p = fig_params(0.0, 0.25);
    const auto gs = integrate_gamma(p, {0.0, 3.0, 7.5});
    SectorBasis basis(3);
    std::mt19937 rng(8128u);
    const PureState psi = random_state(basis, rng);
    for (const auto& g : gs) {
        const PureState out = apply_ui1_sum(g, psi);
        REQUIRE_THAT(norm_of(out), WithinAbs(1.0, 1e-8));
        const double nsum_in = expectation(psi, Observable::N1) + expectation(psi, Observable::N2);
        const double nsum_out = expectation(out, Observable::N1) + expectation(out, Observable::N2);
        REQUIRE_THAT(nsum_out, WithinAbs(nsum_in, 1e-8));
        REQUIRE_THAT(expectation(out, Observable::SZ1),
                     WithinAbs(expectation(psi, Observable::SZ1), 1e-8));
        REQUIRE_THAT(expectation(out, Observable::SZ2),
                     WithinAbs(expectation(psi, Observable::SZ2), 1e-8));
    }
}

TEST_CASE("photon numbers beyond the factorial table are rejected") {
    SectorBasis basis(25);
    const PureState psi = basis_state(basis, {25, 0, 0, 0});
    REQUIRE_THROWS_AS(apply_ui1_sum(GammaSet{0.0, 0.1, 0.1, 0.0}, psi), std::out_of_range);
}

TEST_CASE("ladder factor at beta = 0 is the bitwise identity") {
    SectorBasis basis(3);
    std::mt19937 rng(42u);
    const PureState psi = random_state(basis, rng);
    for (int cavity : {1, 2}) {
        const PureState out = apply_ujc(cavity, zero_betas(cavity, 3), psi);
        for (Eigen::Index i = 0; i < psi.amp.size(); ++i) REQUIRE(out.amp(i) == psi.amp(i));
    }
}

TEST_CASE("resonant ladder factor swaps atom and photon") {
    const double g = 0.125;  // kappa tau = pi/2 at tau = 2
    SectorBasis basis(1);
    const PureState psi0 = basis_state(basis, {0, 1, 0, 0});
    std::vector<LadderBetaSet> bs{beta_closed_form_resonant(1, 1, g, 2.0 - 1e-9)};
    const PureState out = apply_ujc(1, bs, psi0);
    const auto ie = static_cast<Eigen::Index>(basis.index_of({0, 1, 0, 0}));
    const auto ig = static_cast<Eigen::Index>(basis.index_of({1, 0, 0, 0}));
    REQUIRE_THAT(std::abs(out.amp(ie)), WithinAbs(0.0, 1e-6));
    REQUIRE_THAT(std::abs(out.amp(ig) - cplx(0.0, -1.0)), WithinAbs(0.0, 1e-6));
}

TEST_CASE("ladder factor leaves the other cavity's quantum numbers alone") {
    const double g = 0.04;
    SectorBasis basis(3);
    std::mt19937 rng(31337u);
    const PureState psi = random_state(basis, rng);
    std::vector<LadderBetaSet> bs;
    for (int m = 1; m <= 3; ++m) bs.push_back(beta_closed_form_resonant(1, m, g, 1.5));
    const PureState out = apply_ujc(1, bs, psi);
    REQUIRE_THAT(norm_of(out), WithinAbs(1.0, 1e-10));
    REQUIRE_THAT(expectation(out, Observable::N2),
                 WithinAbs(expectation(psi, Observable::N2), 1e-10));
    REQUIRE_THAT(expectation(out, Observable::SZ2),
                 WithinAbs(expectation(psi, Observable::SZ2), 1e-10));
    REQUIRE_THAT(expectation(out, Observable::M1),
                 WithinAbs(expectation(psi, Observable::M1), 1e-10));
}

TEST_CASE("missing or mislabeled ladder tables are internal errors") {
    SectorBasis basis(3);
    const PureState psi = basis_state(basis, {2, 0, 1, 0});
    REQUIRE_THROWS_AS(apply_ujc(1, zero_betas(1, 1), psi), std::logic_error);
    auto bs = zero_betas(1, 3);
    bs[1].m = 3;
    REQUIRE_THROWS_AS(apply_ujc(1, bs, psi), std::logic_error);
    REQUIRE_THROWS_AS(apply_ujc(3, zero_betas(1, 3), psi), ValidationError);
}

TEST_CASE("product evolution at tau = 0 returns the initial state") {
    SimParams p = fig_params(0.04, 0.08);
    SectorBasis basis(3);
    const PureState psi0 = basis_state(basis, {0, 1, 2, 0});
    const auto out = evolve_analytic(p, psi0, {0.0});
    REQUIRE(max_amp_diff(out[0], psi0) == 0.0);
}

TEST_CASE("pure hopping limit matches the exact propagator") {
    SimParams p = fig_params(0.0, 0.08);
    SectorBasis basis(3);
    const PureState psi0 = basis_state(basis, {0, 1, 2, 0});
    std::vector<double> grid;
    for (int i = 0; i <= 100; ++i) grid.push_back(0.5 * i);
    const auto ana = evolve_analytic(p, psi0, grid);
    const auto num = propagate_exact(p, psi0, grid);
    double dmax = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i)
        dmax = std::max(dmax, max_amp_diff(ana[i], num[i]));
    REQUIRE(dmax <= 1e-6);
}

TEST_CASE("pure Jaynes-Cummings limit matches the exact propagator") {
    SimParams p = fig_params(0.04, 0.0);
    SectorBasis basis(3);
    const PureState psi0 = basis_state(basis, {0, 1, 2, 0});
    std::vector<double> grid;
    for (int i = 0; i <= 100; ++i) grid.push_back(0.5 * i);
    const auto ana = evolve_analytic(p, psi0, grid);
    const auto num = propagate_exact(p, psi0, grid);
    double dmax = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i)
        dmax = std::max(dmax, max_amp_diff(ana[i], num[i]));
    REQUIRE(dmax <= 1e-6);
}

TEST_CASE("product evolution conserves norm and total excitation") {
    SimParams p = fig_params(0.04, 0.08);
    SectorBasis basis(3);
    const PureState psi0 = basis_state(basis, {0, 1, 2, 0});
    std::vector<double> grid;
    for (int i = 0; i <= 60; ++i) grid.push_back(0.5 * i);
    const auto ana = evolve_analytic(p, psi0, grid);
    for (const auto& s : ana) {
        REQUIRE_THAT(norm_of(s), WithinAbs(1.0, 1e-8));
        REQUIRE_THAT(expectation(s, Observable::MTOT), WithinAbs(3.0, 1e-8));
    }
}
