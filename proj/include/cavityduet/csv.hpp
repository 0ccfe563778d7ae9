#pragma once

#include <charconv>
#include <fstream>
#include <string>
#include <system_error>
#include <vector>

#include "cavityduet/errors.hpp"
#include "cavityduet/observables.hpp"
#include "cavityduet/wei_norman.hpp"

namespace cduet {

// Shortest representation that round-trips to the same double.
inline std::string format_double(double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    if (res.ec != std::errc())
        throw NumericalFailure("failed to format a floating-point value");
    return std::string(buf, res.ptr);
}

inline constexpr const char* series_csv_header =
    "tau,n1_A,n1_N,n2_A,n2_N,sz1_A,sz1_N,sz2_A,sz2_N,"
    "m1_A,m1_N,m2_A,m2_N,mtot_A,mtot_N,d_n1,d_n2,d_sz1,d_sz2";

inline void emit_csv(const ObservableSeries& s, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw IoError("cannot open '" + path + "' for writing");
    f << series_csv_header << '\n';
    for (std::size_t i = 0; i < s.tau.size(); ++i) {
        f << format_double(s.tau[i]) << ',' << format_double(s.n1_A[i]) << ','
          << format_double(s.n1_N[i]) << ',' << format_double(s.n2_A[i]) << ','
          << format_double(s.n2_N[i]) << ',' << format_double(s.sz1_A[i]) << ','
          << format_double(s.sz1_N[i]) << ',' << format_double(s.sz2_A[i]) << ','
          << format_double(s.sz2_N[i]) << ',' << format_double(s.m1_A[i]) << ','
          << format_double(s.m1_N[i]) << ',' << format_double(s.m2_A[i]) << ','
          << format_double(s.m2_N[i]) << ',' << format_double(s.mtot_A[i]) << ','
          << format_double(s.mtot_N[i]) << ',' << format_double(s.d_n1[i]) << ','
          << format_double(s.d_n2[i]) << ',' << format_double(s.d_sz1[i]) << ','
          << format_double(s.d_sz2[i]) << '\n';
    }
    if (!f) throw IoError("write to '" + path + "' failed");
}

inline void emit_coeffs_csv(const CoefficientTables& tab, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw IoError("cannot open '" + path + "' for writing");
    f << "tau,gamma1_re,gamma1_im,gamma2_re,gamma2_im,gamma3_re,gamma3_im";
    for (int c = 1; c <= 2; ++c)
        for (std::size_t m = 1; m <= tab.beta[static_cast<std::size_t>(c - 1)].size(); ++m) {
            const std::string tag = "c" + std::to_string(c) + "m" + std::to_string(m);
            f << ',' << tag << "_bz_re," << tag << "_bz_im," << tag << "_bp_re," << tag
              << "_bp_im," << tag << "_bm_re," << tag << "_bm_im";
        }
    f << '\n';
    for (std::size_t i = 0; i < tab.tau.size(); ++i) {
        const GammaSet& g = tab.gamma[i];
        f << format_double(tab.tau[i]) << ',' << format_double(g.gamma1.real()) << ','
          << format_double(g.gamma1.imag()) << ',' << format_double(g.gamma2.real()) << ','
          << format_double(g.gamma2.imag()) << ',' << format_double(g.gamma3.real()) << ','
          << format_double(g.gamma3.imag());
        for (const auto& side : tab.beta)
            for (const auto& ladder : side) {
                const LadderBetaSet& b = ladder[i];
                f << ',' << format_double(b.bz.real()) << ',' << format_double(b.bz.imag())
                  << ',' << format_double(b.bp.real()) << ',' << format_double(b.bp.imag())
                  << ',' << format_double(b.bm.real()) << ',' << format_double(b.bm.imag());
            }
        f << '\n';
    }
    if (!f) throw IoError("write to '" + path + "' failed");
}

inline void emit_table_csv(const std::vector<TableRow>& rows, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw IoError("cannot open '" + path + "' for writing");
    f << "label,g1,g2,lambda,window_lo,window_hi,threshold,max_diff,verdict\n";
    for (const auto& r : rows) {
        f << '"' << r.label << "\"," << format_double(r.params.g1) << ','
          << format_double(r.params.g2) << ',' << format_double(r.params.lambda) << ','
          << format_double(r.report.window_lo) << ',' << format_double(r.report.window_hi)
          << ',' << format_double(r.report.threshold) << ','
          << format_double(r.report.max_diff) << ',' << verdict_name(r.report.verdict)
          << '\n';
    }
    if (!f) throw IoError("write to '" + path + "' failed");
}

}  // namespace cduet
