#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <vector>

#include "cavityduet/params.hpp"
#include "cavityduet/sector_basis.hpp"

namespace cduet {

// Free-evolution frequency of a product ket.  Kept in one place so the
// Hamiltonian diagonal and the analytic-path phase factor agree bit for bit.
inline double free_phase_coefficient(const SimParams& p, const BasisKet& k) {
    return p.omega1 * k.n1 + p.omega2 * k.n2 +
           0.5 * p.Omega1 * (2 * k.s1 - 1) + 0.5 * p.Omega2 * (2 * k.s2 - 1);
}

// Sector-restricted Hamiltonian (real symmetric; kept complex for uniformity
// with the propagators).  Off-diagonal terms are generated from the lowering
// side of each interaction so every matrix element is visited once.
inline Eigen::MatrixXcd build_hamiltonian(const SimParams& p, const SectorBasis& basis) {
    const auto n = static_cast<Eigen::Index>(basis.dim());
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        const BasisKet k = basis.ket(static_cast<std::size_t>(j));
        h(j, j) = free_phase_coefficient(p, k);
        if (k.s1 == 0 && k.n1 > 0) {  // g1 (a1 sigma1+ + h.c.)
            const auto i = static_cast<Eigen::Index>(
                basis.index_of({k.n1 - 1, 1, k.n2, k.s2}));
            const double v = p.g1 * std::sqrt(static_cast<double>(k.n1));
            h(i, j) += v;
            h(j, i) += v;
        }
        if (k.s2 == 0 && k.n2 > 0) {  // g2 (a2 sigma2+ + h.c.)
            const auto i = static_cast<Eigen::Index>(
                basis.index_of({k.n1, k.s1, k.n2 - 1, 1}));
            const double v = p.g2 * std::sqrt(static_cast<double>(k.n2));
            h(i, j) += v;
            h(j, i) += v;
        }
        if (k.n1 > 0) {  // lambda (a1 a2+ + h.c.)
            const auto i = static_cast<Eigen::Index>(
                basis.index_of({k.n1 - 1, k.s1, k.n2 + 1, k.s2}));
            const double v = p.lambda * std::sqrt(static_cast<double>(k.n1)) *
                             std::sqrt(static_cast<double>(k.n2 + 1));
            h(i, j) += v;
            h(j, i) += v;
        }
    }
    return h;
}

// Reference propagator: one eigendecomposition per parameter set, then exact
// phase evolution exp(-i 2*pi E tau) in the eigenbasis.
class ExactEvolution {
  public:
    ExactEvolution(const SimParams& p, const SectorBasis& basis) : basis_(&basis) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(build_hamiltonian(p, basis));
        if (solver.info() != Eigen::Success)
            throw NumericalFailure("eigendecomposition did not converge");
        evals_ = solver.eigenvalues();
        evecs_ = solver.eigenvectors();
    }

    const Eigen::VectorXd& eigenvalues() const { return evals_; }
    const Eigen::MatrixXcd& eigenvectors() const { return evecs_; }

    PureState propagate(const PureState& psi0, double tau) const {
        Eigen::VectorXcd c = evecs_.adjoint() * psi0.amp;
        for (Eigen::Index i = 0; i < c.size(); ++i)
            c(i) *= std::exp(std::complex<double>(0.0, -two_pi * evals_(i) * tau));
        PureState out;
        out.basis = basis_;
        out.amp = evecs_ * c;
        return out;
    }

  private:
    const SectorBasis* basis_;
    Eigen::VectorXd evals_;
    Eigen::MatrixXcd evecs_;
};

inline std::vector<PureState> propagate_exact(const SimParams& p, const PureState& psi0,
                                              const std::vector<double>& taus) {
    ExactEvolution ev(p, *psi0.basis);
    std::vector<PureState> out;
    out.reserve(taus.size());
    for (double tau : taus) out.push_back(ev.propagate(psi0, tau));
    return out;
}

// Independent cross-check: classical fixed-step RK4 on i dpsi/dtau = 2*pi H psi.
// Deliberately shares nothing with ExactEvolution beyond the Hamiltonian.
inline std::vector<PureState> propagate_rk_check(const SimParams& p, const PureState& psi0,
                                                 const std::vector<double>& taus,
                                                 double step = 1e-3) {
    if (!(step > 0.0)) throw ValidationError("rk step must be positive");
    const Eigen::MatrixXcd h = build_hamiltonian(p, *psi0.basis);
    const std::complex<double> pre(0.0, -two_pi);
    auto rhs = [&](const Eigen::VectorXcd& v) -> Eigen::VectorXcd { return pre * (h * v); };

    std::vector<PureState> out;
    out.reserve(taus.size());
    Eigen::VectorXcd psi = psi0.amp;
    const double norm0 = psi.norm();
    double t = 0.0;
    for (double target : taus) {
        if (target < t - 1e-12)
            throw ValidationError("rk check expects a non-decreasing time grid");
        while (t < target - 1e-12) {
            const double dt = std::min(step, target - t);
            const Eigen::VectorXcd k1 = rhs(psi);
            const Eigen::VectorXcd k2 = rhs(psi + 0.5 * dt * k1);
            const Eigen::VectorXcd k3 = rhs(psi + 0.5 * dt * k2);
            const Eigen::VectorXcd k4 = rhs(psi + dt * k3);
            psi += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            t += dt;
        }
        if (std::abs(psi.norm() - norm0) > 1e-4)
            throw NumericalFailure("rk norm drift exceeds 1e-4; reduce the step size");
        PureState s;
        s.basis = psi0.basis;
        s.amp = psi;
        out.push_back(std::move(s));
    }
    return out;
}

}  // namespace cduet
