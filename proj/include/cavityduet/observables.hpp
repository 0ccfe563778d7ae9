#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

#include "cavityduet/analytic_propagator.hpp"
#include "cavityduet/exact_propagator.hpp"
#include "cavityduet/sector_basis.hpp"

namespace cduet {

inline std::vector<double> make_grid(double tau_max, double tau_step) {
    if (!(tau_max > 0.0)) throw ValidationError("tau_max must be positive");
    if (!(tau_step > 0.0)) throw ValidationError("tau_step must be positive");
    if (tau_step > tau_max) throw ValidationError("tau_step must not exceed tau_max");
    std::vector<double> grid;
    const auto n = static_cast<long long>(std::floor(tau_max / tau_step + 1e-9));
    grid.reserve(static_cast<std::size_t>(n) + 2);
    for (long long i = 0; i <= n; ++i) grid.push_back(static_cast<double>(i) * tau_step);
    if (grid.back() < tau_max - 1e-9 * std::max(1.0, tau_max)) grid.push_back(tau_max);
    return grid;
}

// Side-by-side observable tracks: _A analytic product form, _N exact
// reference, d_ = A - N.
struct ObservableSeries {
    std::vector<double> tau;
    std::vector<double> n1_A, n2_A, sz1_A, sz2_A, m1_A, m2_A, mtot_A;
    std::vector<double> n1_N, n2_N, sz1_N, sz2_N, m1_N, m2_N, mtot_N;
    std::vector<double> d_n1, d_n2, d_sz1, d_sz2, d_m1, d_m2, d_mtot;
    std::vector<double> norm_A, norm_N;
};

inline ObservableSeries compute_series(const SimParams& p, const PureState& psi0,
                                       const std::vector<double>& grid,
                                       const IntegratorOptions& opts = {}) {
    validate(p);
    const std::vector<PureState> ana = evolve_analytic(p, psi0, grid, opts);
    const std::vector<PureState> num = propagate_exact(p, psi0, grid);

    ObservableSeries s;
    s.tau = grid;
    const std::size_t n = grid.size();
    for (auto* v : {&s.n1_A, &s.n2_A, &s.sz1_A, &s.sz2_A, &s.m1_A, &s.m2_A, &s.mtot_A,
                    &s.n1_N, &s.n2_N, &s.sz1_N, &s.sz2_N, &s.m1_N, &s.m2_N, &s.mtot_N,
                    &s.d_n1, &s.d_n2, &s.d_sz1, &s.d_sz2, &s.d_m1, &s.d_m2, &s.d_mtot,
                    &s.norm_A, &s.norm_N})
        v->resize(n);

    for (std::size_t i = 0; i < n; ++i) {
        s.n1_A[i] = expectation(ana[i], Observable::N1);
        s.n2_A[i] = expectation(ana[i], Observable::N2);
        s.sz1_A[i] = expectation(ana[i], Observable::SZ1);
        s.sz2_A[i] = expectation(ana[i], Observable::SZ2);
        s.m1_A[i] = expectation(ana[i], Observable::M1);
        s.m2_A[i] = expectation(ana[i], Observable::M2);
        s.mtot_A[i] = expectation(ana[i], Observable::MTOT);
        s.n1_N[i] = expectation(num[i], Observable::N1);
        s.n2_N[i] = expectation(num[i], Observable::N2);
        s.sz1_N[i] = expectation(num[i], Observable::SZ1);
        s.sz2_N[i] = expectation(num[i], Observable::SZ2);
        s.m1_N[i] = expectation(num[i], Observable::M1);
        s.m2_N[i] = expectation(num[i], Observable::M2);
        s.mtot_N[i] = expectation(num[i], Observable::MTOT);
        s.d_n1[i] = s.n1_A[i] - s.n1_N[i];
        s.d_n2[i] = s.n2_A[i] - s.n2_N[i];
        s.d_sz1[i] = s.sz1_A[i] - s.sz1_N[i];
        s.d_sz2[i] = s.sz2_A[i] - s.sz2_N[i];
        s.d_m1[i] = s.m1_A[i] - s.m1_N[i];
        s.d_m2[i] = s.m2_A[i] - s.m2_N[i];
        s.d_mtot[i] = s.mtot_A[i] - s.mtot_N[i];
        s.norm_A[i] = norm_of(ana[i]);
        s.norm_N[i] = norm_of(num[i]);
    }
    return s;
}

inline double max_abs_in_window(const std::vector<double>& tau, const std::vector<double>& v,
                                double lo, double hi) {
    double m = 0.0;
    for (std::size_t i = 0; i < tau.size(); ++i)
        if (tau[i] >= lo - 1e-12 && tau[i] <= hi + 1e-12)
            m = std::max(m, std::abs(v[i]));
    return m;
}

enum class Verdict { quantitative, qualitative_only };

inline const char* verdict_name(Verdict v) {
    return v == Verdict::quantitative ? "quantitative+qualitative" : "qualitative-only";
}

struct RegimeReport {
    double window_lo = 0.0;
    double window_hi = 0.0;
    double threshold = 0.05;
    double max_diff = 0.0;  // over {n1, n2, sz1, sz2} inside the window
    Verdict verdict = Verdict::quantitative;
};

// A regime counts as quantitative when the product form tracks the exact
// populations and inversions to within the threshold over the whole window.
inline RegimeReport classify_regime(const ObservableSeries& s, double lo, double hi,
                                    double threshold = 0.05) {
    if (!(hi > lo)) throw ValidationError("classification window must be non-empty");
    RegimeReport r;
    r.window_lo = lo;
    r.window_hi = hi;
    r.threshold = threshold;
    r.max_diff = std::max({max_abs_in_window(s.tau, s.d_n1, lo, hi),
                           max_abs_in_window(s.tau, s.d_n2, lo, hi),
                           max_abs_in_window(s.tau, s.d_sz1, lo, hi),
                           max_abs_in_window(s.tau, s.d_sz2, lo, hi)});
    r.verdict = (r.max_diff <= threshold) ? Verdict::quantitative : Verdict::qualitative_only;
    return r;
}

struct TableRow {
    std::string label;
    SimParams params;
    RegimeReport report;
};

// The five benchmark coupling regimes; g2 is quoted relative to omega2 in the
// labels but stored omega1-normalized like everything else.
inline std::vector<TableRow> table_rows() {
    SimParams base;  // omega2 = 1.25, Omega_i = 0.999 omega_i
    auto row = [&](const std::string& label, double g1, double g2_in_omega2, double lambda) {
        TableRow r;
        r.label = label;
        r.params = base;
        r.params.g1 = g1;
        r.params.g2 = g2_in_omega2 * base.omega2;
        r.params.lambda = lambda;
        return r;
    };
    return {
        row("g=0.04w, lambda=0.001w1", 0.04, 0.04, 0.001),
        row("g=0.001w, lambda=0.25w1", 0.001, 0.001, 0.25),
        row("g=0.01w, lambda=0.02w1", 0.01, 0.01, 0.02),
        row("g=0.4w, lambda=0.001w1", 0.4, 0.4, 0.001),
        row("g=0.04w, lambda=0.08w1", 0.04, 0.04, 0.08),
    };
}

inline std::size_t table_thread_cap(std::size_t rows) {
    std::size_t cap = std::thread::hardware_concurrency();
    if (cap == 0) cap = 1;
    if (const char* env = std::getenv("CAVITY_DUET_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end == env || *end != '\0' || v < 1)
            throw ValidationError("CAVITY_DUET_THREADS must be a positive integer");
        cap = static_cast<std::size_t>(v);
    }
    return std::max<std::size_t>(1, std::min(cap, rows));
}

// Classify every row over a common window; rows fan out over worker threads
// (capped by CAVITY_DUET_THREADS) since each one is independent.
inline void run_table(std::vector<TableRow>& rows, const BasisKet& initial,
                      double tau_max = 50.0, double tau_step = 0.05,
                      double threshold = 0.05, const IntegratorOptions& opts = {}) {
    if (rows.empty()) return;
    const std::vector<double> grid = make_grid(tau_max, tau_step);
    const std::size_t cap = table_thread_cap(rows.size());

    std::atomic<std::size_t> cursor{0};
    std::vector<std::exception_ptr> errors(rows.size());
    auto work = [&] {
        for (;;) {
            const std::size_t i = cursor.fetch_add(1);
            if (i >= rows.size()) return;
            try {
                const SectorBasis basis(initial.total());
                const PureState psi0 = basis_state(basis, initial);
                const ObservableSeries s = compute_series(rows[i].params, psi0, grid, opts);
                rows[i].report = classify_regime(s, 0.0, tau_max, threshold);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };

    std::vector<std::thread> pool;
    for (std::size_t t = 1; t < cap; ++t) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace cduet
