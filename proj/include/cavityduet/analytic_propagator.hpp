#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "cavityduet/exact_propagator.hpp"
#include "cavityduet/sector_basis.hpp"
#include "cavityduet/wei_norman.hpp"

namespace cduet {

namespace detail {

inline constexpr int factorial_max = 20;

inline double factorial(int n) {
    static const auto table = [] {
        std::array<double, factorial_max + 1> t{};
        t[0] = 1.0;
        for (int i = 1; i <= factorial_max; ++i) t[i] = t[i - 1] * i;
        return t;
    }();
    if (n < 0 || n > factorial_max)
        throw std::out_of_range("photon number outside factorial table (0..20)");
    return table[static_cast<std::size_t>(n)];
}

}  // namespace detail

// Free evolution: diagonal phases exp(-i 2*pi f tau) per product ket.
inline PureState apply_u0(const SimParams& p, double tau, const PureState& psi) {
    PureState out;
    out.basis = psi.basis;
    out.amp = psi.amp;
    for (Eigen::Index i = 0; i < out.amp.size(); ++i) {
        const double f = free_phase_coefficient(p, psi.basis->ket(static_cast<std::size_t>(i)));
        out.amp(i) *= std::exp(cplx(0.0, -two_pi * f * tau));
    }
    return out;
}

// Hopping factor exp(g1 J+) exp(g2 J-) exp(g3 Jz) applied through its
// normal-ordered double sum over photon redistributions.
inline PureState apply_ui1_sum(const GammaSet& g, const PureState& psi) {
    const SectorBasis& basis = *psi.basis;
    PureState out;
    out.basis = psi.basis;
    out.amp = Eigen::VectorXcd::Zero(psi.amp.size());
    for (Eigen::Index src = 0; src < psi.amp.size(); ++src) {
        const cplx a = psi.amp(src);
        if (a == cplx(0.0, 0.0)) continue;
        const BasisKet k = basis.ket(static_cast<std::size_t>(src));
        const cplx base = a * std::exp(g.gamma3 * static_cast<double>(k.n1 - k.n2));
        // The p = k = 0 term's factorial ratios cancel identically; keeping it
        // in that form preserves the exact identity action at zero coupling.
        out.amp(src) += base;
        const cplx pref =
            base * std::sqrt(detail::factorial(k.n2) / detail::factorial(k.n1));
        cplx g2p{1.0, 0.0};  // gamma2^p / p!
        for (int p = 0; p <= k.n2; ++p) {
            const cplx cp = g2p * (detail::factorial(k.n1 + p) / detail::factorial(k.n2 - p));
            cplx g1k{1.0, 0.0};  // gamma1^k / k!
            for (int kk = 0; kk <= k.n1 + p; ++kk) {
                if (p == 0 && kk == 0) {
                    g1k *= g.gamma1;
                    continue;
                }
                const cplx ck =
                    g1k * std::sqrt(detail::factorial(k.n2 - p + kk) /
                                    detail::factorial(k.n1 + p - kk));
                const auto dst = basis.index_of({k.n1 + p - kk, k.s1, k.n2 - p + kk, k.s2});
                out.amp(static_cast<Eigen::Index>(dst)) += pref * cp * ck;
                g1k *= g.gamma1 / static_cast<double>(kk + 1);
            }
            g2p *= g.gamma2 / static_cast<double>(p + 1);
        }
    }
    return out;
}

// Oracle variant: build J+, J-, Jz on the sector and exponentiate the
// nilpotent factors by their (terminating) power series.
inline Eigen::MatrixXcd ui1_matrix_expm(const GammaSet& g, const SectorBasis& basis) {
    const auto n = static_cast<Eigen::Index>(basis.dim());
    Eigen::MatrixXcd jp = Eigen::MatrixXcd::Zero(n, n);
    Eigen::MatrixXcd jm = Eigen::MatrixXcd::Zero(n, n);
    Eigen::VectorXcd jz(n);
    for (Eigen::Index j = 0; j < n; ++j) {
        const BasisKet k = basis.ket(static_cast<std::size_t>(j));
        jz(j) = static_cast<double>(k.n1 - k.n2);
        if (k.n1 > 0) {
            const auto i = basis.index_of({k.n1 - 1, k.s1, k.n2 + 1, k.s2});
            jp(static_cast<Eigen::Index>(i), j) =
                std::sqrt(static_cast<double>(k.n1) * (k.n2 + 1));
        }
        if (k.n2 > 0) {
            const auto i = basis.index_of({k.n1 + 1, k.s1, k.n2 - 1, k.s2});
            jm(static_cast<Eigen::Index>(i), j) =
                std::sqrt(static_cast<double>(k.n2) * (k.n1 + 1));
        }
    }
    auto exp_nilpotent = [n](const Eigen::MatrixXcd& m) {
        Eigen::MatrixXcd acc = Eigen::MatrixXcd::Identity(n, n);
        Eigen::MatrixXcd term = Eigen::MatrixXcd::Identity(n, n);
        for (Eigen::Index k = 1; k <= n; ++k) {
            term = (term * m) / static_cast<double>(k);
            if (term.cwiseAbs().maxCoeff() == 0.0) break;
            acc += term;
        }
        return acc;
    };
    Eigen::MatrixXcd u = exp_nilpotent(g.gamma1 * jp) * exp_nilpotent(g.gamma2 * jm);
    for (Eigen::Index j = 0; j < n; ++j) u.col(j) *= std::exp(g.gamma3 * jz(j));
    return u;
}

inline PureState apply_ui1_expm(const GammaSet& g, const PureState& psi) {
    PureState out;
    out.basis = psi.basis;
    out.amp = ui1_matrix_expm(g, *psi.basis) * psi.amp;
    return out;
}

// One cavity's stack of generalized Jaynes-Cummings factors; betas holds the
// ladders m = 1..M at a single time.  The (0, g) component is the trivial
// one-dimensional ladder and passes through untouched.
inline PureState apply_ujc(int cavity, const std::vector<LadderBetaSet>& betas,
                           const PureState& psi) {
    if (cavity != 1 && cavity != 2) throw ValidationError("cavity must be 1 or 2");
    const SectorBasis& basis = *psi.basis;
    PureState out;
    out.basis = psi.basis;
    out.amp = psi.amp;
    for (Eigen::Index j = 0; j < psi.amp.size(); ++j) {
        const BasisKet k = basis.ket(static_cast<std::size_t>(j));
        const int s = (cavity == 1) ? k.s1 : k.s2;
        const int n = (cavity == 1) ? k.n1 : k.n2;
        if (s != 0 || n < 1) continue;  // visit each ladder from its ground side
        const int m = n;
        if (m > static_cast<int>(betas.size()))
            throw std::logic_error("missing ladder coefficients for m = " + std::to_string(m));
        const LadderBetaSet& b = betas[static_cast<std::size_t>(m - 1)];
        if (b.cavity != cavity || b.m != m)
            throw std::logic_error("ladder coefficient table is mislabeled");
        BasisKet ke = k;
        if (cavity == 1) {
            ke.n1 -= 1;
            ke.s1 = 1;
        } else {
            ke.n2 -= 1;
            ke.s2 = 1;
        }
        const auto ie = static_cast<Eigen::Index>(basis.index_of(ke));
        const Eigen::Matrix2cd u = beta_block(b);
        const cplx ae = psi.amp(ie);
        const cplx ag = psi.amp(j);
        out.amp(ie) = u(0, 0) * ae + u(0, 1) * ag;
        out.amp(j) = u(1, 0) * ae + u(1, 1) * ag;
    }
    return out;
}

// Approximate product-form evolution: the two dressed Jaynes-Cummings stacks,
// then the hopping factor, then the free phases.
inline std::vector<PureState> evolve_analytic(const SimParams& p, const PureState& psi0,
                                              const std::vector<double>& grid,
                                              const IntegratorOptions& opts = {}) {
    const int m_total = psi0.basis->m_total();
    const CoefficientTables tab = integrate_coefficients(p, m_total, grid, opts);
    std::vector<PureState> out;
    out.reserve(grid.size());
    std::vector<LadderBetaSet> b1(static_cast<std::size_t>(m_total));
    std::vector<LadderBetaSet> b2(static_cast<std::size_t>(m_total));
    for (std::size_t i = 0; i < grid.size(); ++i) {
        for (int m = 1; m <= m_total; ++m) {
            b1[static_cast<std::size_t>(m - 1)] = tab.beta[0][static_cast<std::size_t>(m - 1)][i];
            b2[static_cast<std::size_t>(m - 1)] = tab.beta[1][static_cast<std::size_t>(m - 1)][i];
        }
        PureState psi = apply_ujc(2, b2, psi0);
        psi = apply_ujc(1, b1, psi);
        psi = apply_ui1_sum(tab.gamma[i], psi);
        out.push_back(apply_u0(p, grid[i], psi));
    }
    return out;
}

}  // namespace cduet
