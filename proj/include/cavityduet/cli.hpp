#pragma once

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "cavityduet/config.hpp"
#include "cavityduet/csv.hpp"
#include "cavityduet/observables.hpp"
#include "cavityduet/svg.hpp"

namespace cduet {

namespace detail {

inline std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

inline std::filesystem::path prepare_out_dir(const std::string& out_dir) {
    std::filesystem::path dir(out_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory '" + out_dir + "': " + ec.message());
    if (!std::filesystem::is_directory(dir))
        throw IoError("output path '" + out_dir + "' is not a directory");
    return dir;
}

struct CliArgs {
    std::optional<std::string> config;
    std::optional<std::string> preset;
    std::optional<double> tau_max;
    std::optional<double> tau_step;
    std::string out_dir = ".";
    bool csv = false;
    bool svg = false;
};

inline RunConfig resolve_config(const CliArgs& a) {
    std::optional<ConfigOverrides> file;
    if (a.config) file = parse_config_file(*a.config);
    CliOverrides cli;
    cli.preset = a.preset;
    cli.tau_max = a.tau_max;
    cli.tau_step = a.tau_step;
    cli.csv = a.csv;
    cli.svg = a.svg;
    return build_run_config(file, cli);
}

inline void print_series_summary(const RunConfig& cfg, const ObservableSeries& s,
                                 const RegimeReport& rep, std::ostream& os) {
    os << "window tau in [0, " << cfg.tau_max << "], " << s.tau.size() << " points, M = "
       << cfg.initial.total() << " sector\n";
    os << "max |product - exact|: n1 " << sci(max_abs_in_window(s.tau, s.d_n1, 0, cfg.tau_max))
       << "  n2 " << sci(max_abs_in_window(s.tau, s.d_n2, 0, cfg.tau_max)) << "  sz1 "
       << sci(max_abs_in_window(s.tau, s.d_sz1, 0, cfg.tau_max)) << "  sz2 "
       << sci(max_abs_in_window(s.tau, s.d_sz2, 0, cfg.tau_max)) << '\n';
    os << "verdict (threshold " << rep.threshold << "): " << verdict_name(rep.verdict) << '\n';
    os << "final norm offsets: product " << sci(std::abs(s.norm_A.back() - 1.0)) << ", exact "
       << sci(std::abs(s.norm_N.back() - 1.0)) << '\n';
}

inline int do_run(const CliArgs& a, bool force_figure, std::ostream& os) {
    RunConfig cfg = resolve_config(a);
    if (force_figure) {
        if (cfg.preset.empty())
            throw ValidationError("figure requires a preset (fig1, fig2, or fig3)");
        cfg.csv = true;
        cfg.svg = true;
    }
    const SectorBasis basis(cfg.initial.total());
    const PureState psi0 = basis_state(basis, cfg.initial);
    const std::vector<double> grid = make_grid(cfg.tau_max, cfg.tau_step);
    const ObservableSeries s = compute_series(cfg.params, psi0, grid);
    const RegimeReport rep = classify_regime(s, 0.0, cfg.tau_max);
    print_series_summary(cfg, s, rep, os);

    const std::string stem = cfg.preset.empty() ? "run" : cfg.preset;
    if (cfg.csv || cfg.svg || cfg.coeffs) {
        const auto dir = prepare_out_dir(a.out_dir);
        if (cfg.csv) {
            const auto p = dir / (stem + ".csv");
            emit_csv(s, p.string());
            os << "wrote " << p.string() << '\n';
        }
        if (cfg.svg) {
            const auto p = dir / (stem + ".svg");
            emit_series_svg(s, cfg.preset, p.string());
            os << "wrote " << p.string() << '\n';
        }
        if (cfg.coeffs) {
            const auto tab = integrate_coefficients(cfg.params, basis.m_total(), grid);
            const auto p = dir / (stem + "_coeffs.csv");
            emit_coeffs_csv(tab, p.string());
            os << "wrote " << p.string() << '\n';
        }
    }
    return 0;
}

inline int do_table(const CliArgs& a, std::ostream& os) {
    const double tau_max = a.tau_max.value_or(50.0);
    const double tau_step = a.tau_step.value_or(0.05);
    std::vector<TableRow> rows = table_rows();
    run_table(rows, BasisKet{0, 1, 2, 0}, tau_max, tau_step);
    os << "window tau in [0, " << tau_max << "], grid step " << tau_step
       << ", threshold 0.05\n";
    char line[160];
    std::snprintf(line, sizeof line, "%9s %9s %9s %15s   %s", "g1/w1", "g2/w2", "lam/w1",
                  "max|prod-exact|", "verdict");
    os << line << '\n';
    for (const auto& r : rows) {
        std::snprintf(line, sizeof line, "%9.4f %9.4f %9.4f %15.3e   %s", r.params.g1,
                      r.params.g2 / r.params.omega2, r.params.lambda, r.report.max_diff,
                      verdict_name(r.report.verdict));
        os << line << '\n';
    }
    if (a.csv) {
        const auto dir = prepare_out_dir(a.out_dir);
        const auto p = dir / "table.csv";
        emit_table_csv(rows, p.string());
        os << "wrote " << p.string() << '\n';
    }
    return 0;
}

inline int do_coeffs(const CliArgs& a, std::ostream& os) {
    const RunConfig cfg = resolve_config(a);
    const std::vector<double> grid = make_grid(cfg.tau_max, cfg.tau_step);
    const SectorBasis basis(cfg.initial.total());
    const auto tab = integrate_coefficients(cfg.params, basis.m_total(), grid);
    const auto dir = prepare_out_dir(a.out_dir);
    const std::string stem = cfg.preset.empty() ? "coeffs" : cfg.preset + "_coeffs";
    const auto p = dir / (stem + ".csv");
    emit_coeffs_csv(tab, p.string());
    os << "wrote " << p.string() << " (" << grid.size() << " rows)\n";
    return 0;
}

}  // namespace detail

// Whole CLI behind a callable entry point so tests can drive it in-process.
inline int run_main(int argc, const char* const* argv, std::ostream& os = std::cout,
                    std::ostream& err = std::cerr) {
    CLI::App app{"two coupled cavity-atom pairs: product-form propagator vs exact reference"};
    app.require_subcommand(1);

    detail::CliArgs args;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", args.config, "run description file (key = value lines)");
        sub->add_option("--preset", args.preset, "fig1, fig2, or fig3");
        sub->add_option("--tau-max", args.tau_max, "end of the time window");
        sub->add_option("--tau-step", args.tau_step, "time grid step (default 0.05)");
        sub->add_option("--out", args.out_dir, "output directory (default .)");
        sub->add_flag("--csv", args.csv, "write CSV output");
        sub->add_flag("--svg", args.svg, "write SVG output");
    };
    CLI::App* sub_run = app.add_subcommand("run", "compare both propagators on one parameter set");
    CLI::App* sub_figure = app.add_subcommand("figure", "preset comparison run, writes CSV and SVG");
    CLI::App* sub_table = app.add_subcommand("table", "classify the five benchmark regimes");
    CLI::App* sub_coeffs = app.add_subcommand("coeffs", "dump the factorization coefficient tables");
    for (CLI::App* sub : {sub_run, sub_figure, sub_table, sub_coeffs}) add_common(sub);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return static_cast<int>(ExitCode::parse_error);
    }

    try {
        if (sub_run->parsed()) return detail::do_run(args, false, os);
        if (sub_figure->parsed()) return detail::do_run(args, true, os);
        if (sub_table->parsed()) return detail::do_table(args, os);
        if (sub_coeffs->parsed()) return detail::do_coeffs(args, os);
        err << "error: no subcommand\n";
        return static_cast<int>(ExitCode::parse_error);
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return static_cast<int>(ExitCode::parse_error);
    } catch (const ValidationError& e) {
        err << "validation error: " << e.what() << '\n';
        return static_cast<int>(ExitCode::validation_error);
    } catch (const FactorizationBreakdown& e) {
        err << "factorization breakdown: " << e.what() << '\n';
        return static_cast<int>(ExitCode::factorization_breakdown);
    } catch (const NumericalFailure& e) {
        err << "numerical failure: " << e.what() << '\n';
        return static_cast<int>(ExitCode::numerical_failure);
    } catch (const IoError& e) {
        err << "i/o error: " << e.what() << '\n';
        return static_cast<int>(ExitCode::io_error);
    } catch (const std::out_of_range& e) {
        err << "validation error: " << e.what() << '\n';
        return static_cast<int>(ExitCode::validation_error);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace cduet
