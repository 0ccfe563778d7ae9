#pragma once

#include <Eigen/Dense>
#include <array>
#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "cavityduet/params.hpp"

namespace cduet {

using cplx = std::complex<double>;
inline constexpr cplx im{0.0, 1.0};

// Hopping coefficients of the product form exp(g1 J+) exp(g2 J-) exp(g3 Jz),
// J+ = a1 a2^dag, J- = a1^dag a2, Jz = n1 - n2.
struct GammaSet {
    double tau = 0.0;
    cplx gamma1{0.0, 0.0};
    cplx gamma2{0.0, 0.0};
    cplx gamma3{0.0, 0.0};
};

// Dressed single-excitation phases seen by the atoms once the hopping factor
// has been peeled off.  Column p is the raising side, m the lowering side.
struct PhiSet {
    cplx phi11, phi12;  // cavity one: phi+ = phi11, phi- = phi12
    cplx phi21, phi22;  // cavity two: phi+ = phi21, phi- = phi22
};

// Coefficients of one generalized Jaynes-Cummings ladder
// {|m-1, e>, |m, g>} for a single cavity.
struct LadderBetaSet {
    int cavity = 1;  // 1 or 2
    int m = 1;       // ladder index (photon number on the ground side)
    double tau = 0.0;
    cplx bz{0.0, 0.0};
    cplx bp{0.0, 0.0};
    cplx bm{0.0, 0.0};
};

inline std::array<cplx, 3> gamma_rhs(double tau, const GammaSet& g, const SimParams& p) {
    const double lam = two_pi * p.lambda;
    const double dw = two_pi * (p.omega1 - p.omega2);
    const cplx em = std::exp(-im * dw * tau);
    const cplx ep = std::exp(im * dw * tau);
    const cplx d1 = -im * lam * (em - g.gamma1 * g.gamma1 * ep);
    const cplx d2 = -im * lam * (1.0 + 2.0 * g.gamma1 * g.gamma2) * ep;
    const cplx d3 = -im * lam * g.gamma1 * ep;
    return {d1, d2, d3};
}

inline PhiSet phi_coeffs(double tau, const GammaSet& g, const SimParams& p) {
    const cplx a = (1.0 + g.gamma1 * g.gamma2) * std::exp(-g.gamma3);
    const cplx b = std::exp(g.gamma3);
    const double d1 = two_pi * (p.Omega1 - p.omega1);
    const double d2 = two_pi * (p.Omega2 - p.omega2);
    PhiSet phi;
    phi.phi11 = a * std::exp(-im * d1 * tau);
    phi.phi12 = b * std::exp(im * d1 * tau);
    phi.phi21 = b * std::exp(-im * d2 * tau);
    phi.phi22 = a * std::exp(im * d2 * tau);
    return phi;
}

inline std::array<cplx, 3> beta_rhs(const LadderBetaSet& b, const PhiSet& phi,
                                    const SimParams& p) {
    const double g = (b.cavity == 1) ? p.g1 : p.g2;
    const double kappa = two_pi * g * std::sqrt(static_cast<double>(b.m));
    const cplx phi_p = (b.cavity == 1) ? phi.phi11 : phi.phi21;
    const cplx phi_m = (b.cavity == 1) ? phi.phi12 : phi.phi22;
    const cplx dbm = -im * kappa * phi_m * std::exp(-2.0 * b.bz);
    const cplx dbz = b.bp * dbm;
    const cplx dbp = -im * kappa * phi_p * std::exp(2.0 * b.bz) + b.bp * b.bp * dbm;
    return {dbz, dbp, dbm};
}

// Closed forms on resonance (omega1 = omega2 for gamma; Omega_i = omega_i and
// lambda = 0 for beta).  Both charts blow up at the tangent pole.
inline GammaSet gamma_closed_form_resonant(double lambda, double tau) {
    const double x = two_pi * lambda * tau;
    const double c = std::cos(x);
    if (std::abs(c) < 1e-12)
        throw FactorizationBreakdown("hopping factorization pole at tau = " +
                                         std::to_string(tau),
                                     tau);
    GammaSet g;
    g.tau = tau;
    g.gamma1 = -im * std::tan(x);
    g.gamma2 = -0.5 * im * std::sin(2.0 * x);
    g.gamma3 = std::log(cplx(c, 0.0));
    return g;
}

inline LadderBetaSet beta_closed_form_resonant(int cavity, int m, double g, double tau) {
    const double x = two_pi * g * std::sqrt(static_cast<double>(m)) * tau;
    const double c = std::cos(x);
    if (std::abs(c) < 1e-12)
        throw FactorizationBreakdown("ladder factorization pole at tau = " +
                                         std::to_string(tau),
                                     tau);
    LadderBetaSet b;
    b.cavity = cavity;
    b.m = m;
    b.tau = tau;
    b.bz = std::log(cplx(c, 0.0));
    b.bp = -0.5 * im * std::sin(2.0 * x);
    b.bm = -im * std::tan(x);
    return b;
}

// 2x2 action of the hopping factor on the one-photon block (|0,1>, |1,0>).
inline Eigen::Matrix2cd gamma_block(const GammaSet& g) {
    Eigen::Matrix2cd u;
    u << (1.0 + g.gamma1 * g.gamma2) * std::exp(-g.gamma3), g.gamma1 * std::exp(g.gamma3),
        g.gamma2 * std::exp(-g.gamma3), std::exp(g.gamma3);
    return u;
}

// 2x2 action of one ladder factor on (|m-1, e>, |m, g>).
inline Eigen::Matrix2cd beta_block(const LadderBetaSet& b) {
    Eigen::Matrix2cd u;
    u << std::exp(b.bz), std::exp(b.bz) * b.bm, b.bp * std::exp(-b.bz),
        std::exp(-b.bz) * (1.0 + b.bp * b.bm);
    return u;
}

inline double unitarity_residual(const Eigen::Matrix2cd& u) {
    return (u.adjoint() * u - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff();
}

inline double gamma_unitarity_residual(const GammaSet& g) {
    return unitarity_residual(gamma_block(g));
}

inline double beta_unitarity_residual(const LadderBetaSet& b) {
    return unitarity_residual(beta_block(b));
}

struct IntegratorOptions {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    double initial_step = 1e-6;
    double gamma_limit = 1e6;    // coordinate-singularity guard on |gamma1|
    double ladder_limit = 1e6;   // same guard on |beta+-|
    double betaz_limit = 700.0;  // exp overflow guard on |beta_z|
    std::size_t max_steps = 10'000'000;
};

// Coefficient tables on a shared time grid.  beta[c][m-1][i] holds the ladder
// (cavity c+1, index m) at grid point i.
struct CoefficientTables {
    std::vector<double> tau;
    std::vector<GammaSet> gamma;
    std::array<std::vector<std::vector<LadderBetaSet>>, 2> beta;
};

namespace detail {

struct LadderSlot {
    int cavity;
    int m;
};

// State layout: y[0..2] = gamma, then (bz, bp, bm) per ladder slot.
using CoeffState = std::vector<cplx>;

struct CoeffSystem {
    SimParams p;
    std::vector<LadderSlot> slots;

    void operator()(const CoeffState& y, CoeffState& dydt, double tau) const {
        GammaSet g;
        g.tau = tau;
        g.gamma1 = y[0];
        g.gamma2 = y[1];
        g.gamma3 = y[2];
        const auto dg = gamma_rhs(tau, g, p);
        dydt[0] = dg[0];
        dydt[1] = dg[1];
        dydt[2] = dg[2];
        if (slots.empty()) return;
        const PhiSet phi = phi_coeffs(tau, g, p);
        for (std::size_t k = 0; k < slots.size(); ++k) {
            LadderBetaSet b;
            b.cavity = slots[k].cavity;
            b.m = slots[k].m;
            b.tau = tau;
            b.bz = y[3 + 3 * k];
            b.bp = y[4 + 3 * k];
            b.bm = y[5 + 3 * k];
            const auto db = beta_rhs(b, phi, p);
            dydt[3 + 3 * k] = db[0];
            dydt[4 + 3 * k] = db[1];
            dydt[5 + 3 * k] = db[2];
        }
    }
};

inline void check_grid(const std::vector<double>& grid) {
    if (grid.empty()) throw ValidationError("time grid must not be empty");
    if (grid.front() != 0.0) throw ValidationError("time grid must start at 0");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1]))
            throw ValidationError("time grid must be strictly increasing");
}

inline void guard_state(const CoeffState& y, double tau, const IntegratorOptions& opts) {
    for (const cplx& v : y)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw NumericalFailure("coefficient integration produced a non-finite value near tau = " +
                                   std::to_string(tau));
    if (std::abs(y[0]) > opts.gamma_limit)
        throw FactorizationBreakdown(
            "hopping factorization pole near tau = " + std::to_string(tau), tau);
    for (std::size_t k = 3; k + 3 <= y.size(); k += 3) {
        if (std::abs(y[k]) > opts.betaz_limit ||
            std::abs(y[k + 1]) > opts.ladder_limit ||
            std::abs(y[k + 2]) > opts.ladder_limit)
            throw FactorizationBreakdown(
                "ladder factorization pole near tau = " + std::to_string(tau), tau);
    }
}

inline CoefficientTables integrate_system(const SimParams& p,
                                          const std::vector<LadderSlot>& slots,
                                          const std::vector<double>& grid,
                                          const IntegratorOptions& opts) {
    check_grid(grid);
    validate(p);

    CoeffSystem sys{p, slots};
    CoeffState y0(3 + 3 * slots.size(), cplx(0.0, 0.0));

    int m_max = 0;
    for (const auto& s : slots) m_max = std::max(m_max, s.m);
    CoefficientTables tab;
    tab.tau = grid;
    tab.gamma.resize(grid.size());
    for (auto& side : tab.beta) side.assign(static_cast<std::size_t>(m_max), {});
    for (const auto& s : slots)
        tab.beta[static_cast<std::size_t>(s.cavity - 1)][static_cast<std::size_t>(s.m - 1)]
            .resize(grid.size());

    auto record = [&](std::size_t i, const CoeffState& y) {
        const double tau = grid[i];
        tab.gamma[i] = GammaSet{tau, y[0], y[1], y[2]};
        for (std::size_t k = 0; k < slots.size(); ++k)
            tab.beta[static_cast<std::size_t>(slots[k].cavity - 1)]
                    [static_cast<std::size_t>(slots[k].m - 1)][i] =
                LadderBetaSet{slots[k].cavity, slots[k].m, tau,
                              y[3 + 3 * k], y[4 + 3 * k], y[5 + 3 * k]};
    };

    record(0, y0);
    if (grid.size() == 1) return tab;

    namespace odeint = boost::numeric::odeint;
    auto stepper = odeint::make_dense_output(opts.abs_tol, opts.rel_tol,
                                             odeint::runge_kutta_dopri5<CoeffState>());
    stepper.initialize(y0, 0.0, opts.initial_step);

    std::size_t next = 1;
    std::size_t steps = 0;
    CoeffState yi(y0.size());
    while (next < grid.size()) {
        try {
            stepper.do_step(sys);
        } catch (const std::exception& e) {
            guard_state(stepper.current_state(), stepper.current_time(), opts);
            throw NumericalFailure(std::string("adaptive step failure: ") + e.what());
        }
        guard_state(stepper.current_state(), stepper.current_time(), opts);
        if (++steps > opts.max_steps)
            throw NumericalFailure("coefficient integration exceeded the step budget");
        while (next < grid.size() &&
               grid[next] <= stepper.current_time() + 1e-14) {
            stepper.calc_state(grid[next], yi);
            record(next, yi);
            ++next;
        }
    }
    return tab;
}

}  // namespace detail

// Joint integration of gamma together with every ladder (cavity 1..2,
// m = 1..m_max); the betas see the exact same gamma trajectory with no
// interpolation error between passes.
inline CoefficientTables integrate_coefficients(const SimParams& p, int m_max,
                                                const std::vector<double>& grid,
                                                const IntegratorOptions& opts = {}) {
    if (m_max < 0) throw ValidationError("m_max must be >= 0");
    std::vector<detail::LadderSlot> slots;
    for (int cavity = 1; cavity <= 2; ++cavity)
        for (int m = 1; m <= m_max; ++m) slots.push_back({cavity, m});
    return detail::integrate_system(p, slots, grid, opts);
}

inline std::vector<GammaSet> integrate_gamma(const SimParams& p,
                                             const std::vector<double>& grid,
                                             const IntegratorOptions& opts = {}) {
    return detail::integrate_system(p, {}, grid, opts).gamma;
}

inline std::vector<LadderBetaSet> integrate_beta(const SimParams& p, int cavity, int m,
                                                 const std::vector<double>& grid,
                                                 const IntegratorOptions& opts = {}) {
    if (cavity != 1 && cavity != 2) throw ValidationError("cavity must be 1 or 2");
    if (m < 1) throw ValidationError("ladder index must be >= 1");
    auto tab = detail::integrate_system(p, {{cavity, m}}, grid, opts);
    return tab.beta[static_cast<std::size_t>(cavity - 1)][static_cast<std::size_t>(m - 1)];
}

}  // namespace cduet
