#pragma once

#include <Eigen/Dense>
#include <compare>
#include <complex>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cavityduet/errors.hpp"

namespace cduet {

// Product basis ket |n1, s1; n2, s2>, photon numbers plus two-level atom
// occupations (s = 0 ground, 1 excited).
struct BasisKet {
    int n1 = 0;
    int s1 = 0;
    int n2 = 0;
    int s2 = 0;

    int total() const { return n1 + s1 + n2 + s2; }
    auto operator<=>(const BasisKet&) const = default;
};

inline std::string to_string(const BasisKet& k) {
    return "|" + std::to_string(k.n1) + "," + (k.s1 ? "e" : "g") + ";" +
           std::to_string(k.n2) + "," + (k.s2 ? "e" : "g") + ">";
}

// The total-excitation operator commutes with the full Hamiltonian, so all
// dynamics stays inside one fixed-M sector.  Kets are held in lexicographic
// (n1, s1, n2, s2) order.
class SectorBasis {
  public:
    explicit SectorBasis(int m_total) : m_total_(m_total) {
        if (m_total < 0) throw ValidationError("total excitation must be >= 0");
        for (int n1 = 0; n1 <= m_total; ++n1)
            for (int s1 = 0; s1 <= 1 && n1 + s1 <= m_total; ++s1)
                for (int n2 = 0; n1 + s1 + n2 <= m_total; ++n2) {
                    const int s2 = m_total - n1 - s1 - n2;
                    if (s2 == 0 || s2 == 1) {
                        index_.emplace(BasisKet{n1, s1, n2, s2}, kets_.size());
                        kets_.push_back(BasisKet{n1, s1, n2, s2});
                    }
                }
    }

    int m_total() const { return m_total_; }
    std::size_t dim() const { return kets_.size(); }
    const std::vector<BasisKet>& kets() const { return kets_; }
    const BasisKet& ket(std::size_t i) const { return kets_.at(i); }

    std::optional<std::size_t> find(const BasisKet& k) const {
        auto it = index_.find(k);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    std::size_t index_of(const BasisKet& k) const {
        auto idx = find(k);
        if (!idx)
            throw ValidationError("ket " + to_string(k) + " is not in the M=" +
                                  std::to_string(m_total_) + " sector");
        return *idx;
    }

  private:
    int m_total_;
    std::vector<BasisKet> kets_;
    std::map<BasisKet, std::size_t> index_;
};

// Amplitude vector over a sector basis.  The basis must outlive the state.
struct PureState {
    const SectorBasis* basis = nullptr;
    Eigen::VectorXcd amp;
};

inline PureState basis_state(const SectorBasis& basis, const BasisKet& k) {
    PureState psi;
    psi.basis = &basis;
    psi.amp = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis.dim()));
    psi.amp(static_cast<Eigen::Index>(basis.index_of(k))) = 1.0;
    return psi;
}

inline double norm_of(const PureState& psi) { return psi.amp.norm(); }

enum class Observable { N1, N2, SZ1, SZ2, M1, M2, MTOT };

inline double observable_value(Observable o, const BasisKet& k) {
    switch (o) {
        case Observable::N1: return k.n1;
        case Observable::N2: return k.n2;
        case Observable::SZ1: return 2 * k.s1 - 1;
        case Observable::SZ2: return 2 * k.s2 - 1;
        case Observable::M1: return k.n1 + k.s1;
        case Observable::M2: return k.n2 + k.s2;
        case Observable::MTOT: return k.total();
    }
    return 0.0;
}

// All tracked observables are diagonal in the product basis, so expectations
// reduce to weighted sums of |amplitude|^2.
inline double expectation(const PureState& psi, Observable o) {
    double acc = 0.0;
    for (Eigen::Index i = 0; i < psi.amp.size(); ++i)
        acc += std::norm(psi.amp(i)) *
               observable_value(o, psi.basis->ket(static_cast<std::size_t>(i)));
    return acc;
}

}  // namespace cduet
