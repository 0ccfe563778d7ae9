#pragma once

#include <cmath>

#include "cavityduet/errors.hpp"

namespace cduet {

// All simulation frequencies in units of the first cavity frequency; time in
// units of the first cavity period, so every phase is 2*pi * f * tau.
inline constexpr double two_pi = 6.283185307179586476925286766559;

struct SimParams {
    double omega1 = 1.0;      // first cavity, fixed reference
    double omega2 = 1.25;     // second cavity
    double Omega1 = 0.999;    // first atom
    double Omega2 = 1.24875;  // second atom
    double g1 = 0.0;          // atom-cavity coupling, cavity one
    double g2 = 0.0;          // atom-cavity coupling, cavity two
    double lambda = 0.0;      // photon hopping
};

// Rescale a parameter set quoted in arbitrary frequency units (e.g. GHz) to
// the internal omega1-normalized form.
inline SimParams normalized(const SimParams& raw) {
    if (!(raw.omega1 > 0.0))
        throw ValidationError("omega1 must be positive");
    SimParams p;
    p.omega1 = 1.0;
    p.omega2 = raw.omega2 / raw.omega1;
    p.Omega1 = raw.Omega1 / raw.omega1;
    p.Omega2 = raw.Omega2 / raw.omega1;
    p.g1 = raw.g1 / raw.omega1;
    p.g2 = raw.g2 / raw.omega1;
    p.lambda = raw.lambda / raw.omega1;
    return p;
}

inline void validate(const SimParams& p) {
    if (!(p.omega1 > 0.0)) throw ValidationError("omega1 must be positive");
    if (!(p.omega2 > 0.0)) throw ValidationError("omega2 must be positive");
    for (double v : {p.omega1, p.omega2, p.Omega1, p.Omega2, p.g1, p.g2, p.lambda})
        if (!std::isfinite(v)) throw ValidationError("non-finite parameter");
    if (p.Omega1 < 0.0 || p.Omega2 < 0.0)
        throw ValidationError("atomic frequencies must be non-negative");
    if (p.g1 < 0.0 || p.g2 < 0.0 || p.lambda < 0.0)
        throw ValidationError("couplings must be non-negative");
}

}  // namespace cduet
