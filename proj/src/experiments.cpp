#include "cskct/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <iostream>
#include <sstream>

#include "cskct/errors.hpp"

namespace cskct {

namespace {

std::string fmt_g(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

std::string fmt_prob(double p) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12e", p);
    return buf;
}

std::string header_block(const ExperimentConfig& cfg, const std::string& command,
                         const EmitOptions& opt) {
    std::string block = cfg.echo_comments(command);
    if (opt.timestamp) {
        std::time_t now = std::time(nullptr);
        char buf[64];
        std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
        block += std::string("# generated_at=") + buf + "\n";
    }
    return block;
}

void warn_outside_range(const std::string& name, double value, double lo, double hi) {
    if (value < lo || value > hi) {
        std::cerr << "warning: " << name << "=" << fmt_g(value) << " outside the usual range ["
                  << fmt_g(lo) << ", " << fmt_g(hi) << "]\n";
    }
}

void warn_sweep_value(const std::string& parameter, const std::string& value) {
    if (parameter == "t_sym") {
        warn_outside_range("t_sym", std::stod(value), 1.28, 32.0);
    } else if (parameter == "y_max") {
        warn_outside_range("y_max", std::stod(value), 17.0, 21.0);
    } else if (parameter == "d_bar") {
        warn_outside_range("d_bar", std::stod(value), 11.5, 13.5);
    } else if (parameter == "rho") {
        warn_outside_range("rho", std::stod(value), 1.0, 4.0);
    }
}

void apply_sweep_value(ExperimentConfig& cfg, const std::string& parameter,
                       const std::string& value) {
    if (parameter == "t_sym") {
        cfg.set("t_sym_s", value);
    } else if (parameter == "y_max") {
        cfg.set("y_max_um", value);
    } else if (parameter == "d_bar") {
        cfg.set("d_bar_um", value);
    } else if (parameter == "rho") {
        cfg.set("rho", value);
    } else if (parameter == "M") {
        cfg.set("M", value);
    } else if (parameter == "scheme") {
        cfg.set("scheme", value);
    } else if (parameter == "k_memory") {
        cfg.set("k_memory", value);
    } else {
        throw config_error("ser sweep cannot vary '" + parameter +
                           "' (expected one of t_sym, y_max, d_bar, rho, M, scheme, k_memory)");
    }
}

} // namespace

double report_d_bar(const ExperimentConfig& cfg) {
    return 0.5 * (cfg.y_min + cfg.effective_y_max());
}

LinkSetup build_setup(const ExperimentConfig& cfg) {
    LinkSetup setup;
    setup.topo = cfg.topology();
    setup.table = build_cir_table(cfg.params, setup.topo);
    return setup;
}

ModulationDesign make_design(const ExperimentConfig& cfg, const LinkSetup& setup) {
    if (cfg.scheme == Scheme::benchmark) {
        return design_benchmark(setup.topo, setup.table, cfg.benchmark_concentrations());
    }
    return design_cskct(cfg.params, setup.topo, setup.table, cfg.symbol_count, cfg.rho, cfg.q0);
}

std::string cmd_design_text(const ExperimentConfig& cfg) {
    const LinkSetup setup = build_setup(cfg);
    const ModulationDesign design = make_design(cfg, setup);
    std::ostringstream out;
    out << "scheme          " << to_string(design.scheme) << "\n";
    out << "M               " << design.symbol_count << "\n";
    out << "d_bar_um        " << fmt_g(report_d_bar(cfg)) << "\n";
    out << "K               " << setup.topo.tx_count() << "\n";
    out << "k_memory        " << setup.topo.isi_memory << "\n";
    if (design.scheme == Scheme::csk_ct) {
        out << "rho             " << fmt_g(design.rho) << "\n";
        out << "gamma           " << fmt_g(design.gamma) << "\n";
    }
    out << "Q               ";
    for (std::size_t j = 0; j < design.concentrations.levels.size(); ++j) {
        if (j) out << " ";
        out << design.concentrations.levels[j];
    }
    out << "\n";
    if (design.scheme == Scheme::csk_ct) {
        out << "tau             ";
        for (std::size_t j = 0; j < design.common_thresholds.size(); ++j) {
            if (j) out << " ";
            out << fmt_g(design.common_thresholds[j]);
        }
        out << "\n";
        out << "limits_spacing  ";
        for (std::size_t j = 0; j < design.limits_spacing.size(); ++j) {
            if (j) out << " ";
            out << fmt_g(design.limits_spacing[j]);
        }
        out << "\n";
    } else {
        for (std::size_t k = 0; k < design.per_tx_thresholds.size(); ++k) {
            out << "tau_tx" << (k + 1) << (k + 1 < 10 ? "         " : "        ");
            for (std::size_t j = 0; j < design.per_tx_thresholds[k].size(); ++j) {
                if (j) out << " ";
                out << fmt_g(design.per_tx_thresholds[k][j]);
            }
            out << "\n";
        }
    }
    return out.str();
}

std::string cmd_design_csv(const ExperimentConfig& cfg, const EmitOptions& opt) {
    const LinkSetup setup = build_setup(cfg);
    const ModulationDesign design = make_design(cfg, setup);
    std::ostringstream out;
    out << header_block(cfg, "design", opt);
    out << "d_bar,scheme,M,rho,gamma,index,Q,tau\n";
    const std::string prefix = fmt_g(report_d_bar(cfg)) + "," +
                               std::string(to_string(design.scheme)) + "," +
                               std::to_string(design.symbol_count) + "," + fmt_g(design.rho) +
                               "," + (design.scheme == Scheme::csk_ct ? fmt_g(design.gamma) : "") +
                               ",";
    for (int j = 0; j < design.symbol_count; ++j) {
        out << prefix << j << "," << design.concentrations.levels[static_cast<std::size_t>(j)]
            << ",";
        if (design.scheme == Scheme::csk_ct && j + 1 < design.symbol_count) {
            out << fmt_g(design.common_thresholds[static_cast<std::size_t>(j)]);
        }
        out << "\n";
    }
    if (design.scheme == Scheme::benchmark) {
        out << "# per-transmitter thresholds\n";
        out << "tx_index,y_um,threshold_index,tau\n";
        for (std::size_t k = 0; k < design.per_tx_thresholds.size(); ++k) {
            for (std::size_t j = 0; j < design.per_tx_thresholds[k].size(); ++j) {
                out << (k + 1) << "," << fmt_g(setup.topo.distances[k]) << "," << j << ","
                    << fmt_g(design.per_tx_thresholds[k][j]) << "\n";
            }
        }
    }
    return out.str();
}

std::string cmd_gamma_sweep_csv(const ExperimentConfig& cfg,
                                const std::vector<double>& t_sym_values,
                                const std::vector<double>& y_max_values, const EmitOptions& opt) {
    std::ostringstream out;
    out << header_block(cfg, "gamma-sweep", opt);
    out << "t_sym_s,y_max_um,gamma\n";
    for (double t_sym : t_sym_values) {
        warn_outside_range("t_sym", t_sym, 1.28, 32.0);
        for (double ymax : y_max_values) {
            warn_outside_range("y_max", ymax, 17.0, 21.0);
            ChannelParams p = cfg.params;
            p.symbol_period = t_sym;
            out << fmt_g(t_sym) << "," << fmt_g(ymax) << ","
                << fmt_g(gamma_ratio(p, cfg.y_min, ymax)) << "\n";
        }
    }
    return out.str();
}

std::string cmd_ser_csv(const ExperimentConfig& cfg, const SweepSpec& spec,
                        const EmitOptions& opt) {
    if (spec.values.empty()) throw config_error("ser sweep needs at least one value");
    {
        // reject bad parameter names up front, not per point
        ExperimentConfig probe = cfg;
        apply_sweep_value(probe, spec.parameter, spec.values.front());
    }

    // rho/M/scheme leave the channel untouched; reuse one CIR table for those.
    const bool channel_fixed =
        spec.parameter == "rho" || spec.parameter == "M" || spec.parameter == "scheme";
    LinkSetup shared_setup;
    if (channel_fixed) shared_setup = build_setup(cfg);

    std::ostringstream out;
    out << header_block(cfg, "ser", opt);
    out << spec.parameter << ",scheme,M,rho,k_memory,p_e_analytic";
    if (spec.with_montecarlo) out << ",ser_empirical,ci_lo,ci_hi";
    out << ",status\n";

    for (const std::string& value : spec.values) {
        warn_sweep_value(spec.parameter, value);
        ExperimentConfig point = cfg;
        try {
            apply_sweep_value(point, spec.parameter, value);
            LinkSetup point_setup;
            if (!channel_fixed) point_setup = build_setup(point);
            const LinkSetup& setup = channel_fixed ? shared_setup : point_setup;
            const ModulationDesign design = make_design(point, setup);
            const ErrorReport report =
                network_error_prob(design, setup.topo, setup.table);

            out << value << "," << to_string(design.scheme) << "," << design.symbol_count << ","
                << fmt_g(design.rho) << "," << setup.topo.isi_memory << ","
                << fmt_prob(report.network);
            if (spec.with_montecarlo) {
                TrialConfig trial;
                trial.rounds = point.mc_rounds;
                trial.seed = point.seed;
                trial.threads = point.mc_threads;
                trial.arrival_model = point.arrival_model;
                const SimResult sim =
                    run(design, point.params, setup.topo, setup.table, trial);
                out << "," << fmt_prob(sim.network_ser) << "," << fmt_prob(sim.network_ci.lo)
                    << "," << fmt_prob(sim.network_ci.hi);
            }
            out << ",ok\n";
        } catch (const infeasible_design_error& e) {
            std::cerr << "ser sweep: " << spec.parameter << "=" << value
                      << " infeasible: " << e.what() << "\n";
            out << value << ",,,,,";
            if (spec.with_montecarlo) out << ",,,";
            out << ",infeasible\n";
        } catch (const std::exception& e) {
            std::cerr << "ser sweep: " << spec.parameter << "=" << value
                      << " failed: " << e.what() << "\n";
            out << value << ",,,,,";
            if (spec.with_montecarlo) out << ",,,";
            out << ",error\n";
        }
    }
    return out.str();
}

std::string cmd_complexity_csv(const ExperimentConfig& cfg, const std::vector<int>& k_values,
                               const EmitOptions& opt) {
    std::ostringstream out;
    out << header_block(cfg, "complexity", opt);
    out << "K,scheme,M,threshold_count,cir_count\n";
    for (int k : k_values) {
        for (Scheme scheme : {Scheme::csk_ct, Scheme::benchmark}) {
            const ComplexityCount c = count_threshold_computations(scheme, k, cfg.symbol_count);
            out << k << "," << to_string(scheme) << "," << cfg.symbol_count << ","
                << c.thresholds << "," << c.cirs << "\n";
        }
    }
    return out.str();
}

std::string cmd_montecarlo_csv(const ExperimentConfig& cfg, const EmitOptions& opt) {
    const LinkSetup setup = build_setup(cfg);
    return cmd_montecarlo_csv(cfg, make_design(cfg, setup), opt);
}

std::string cmd_montecarlo_csv(const ExperimentConfig& cfg, const ModulationDesign& design,
                               const EmitOptions& opt) {
    const LinkSetup setup = build_setup(cfg);
    const ErrorReport report = network_error_prob(design, setup.topo, setup.table);

    TrialConfig trial;
    trial.rounds = cfg.mc_rounds;
    trial.seed = cfg.seed;
    trial.threads = cfg.mc_threads;
    trial.arrival_model = cfg.arrival_model;
    if (!cfg.fixed_sequence.empty()) {
        trial.symbol_source = SymbolSource::fixed_sequence;
        trial.fixed_sequence = cfg.fixed_sequence;
    }
    const SimResult sim = run(design, cfg.params, setup.topo, setup.table, trial);

    const double d_bar = report_d_bar(cfg);
    const double t_sym = cfg.params.symbol_period;

    std::ostringstream out;
    out << header_block(cfg, "montecarlo", opt);
    out << sim_result_csv_header() << "\n";
    // Analytic rows in the same schema, blank CI.
    std::istringstream analytic(error_report_csv(report, d_bar, t_sym));
    std::string line;
    while (std::getline(analytic, line)) {
        out << line << ",analytic,,\n";
    }
    out << sim_result_csv(sim, design, d_bar, t_sym, setup.topo.isi_memory);
    return out.str();
}

std::string cmd_cir_dump_csv(const ExperimentConfig& cfg, const EmitOptions& opt) {
    const LinkSetup setup = build_setup(cfg);
    std::ostringstream out;
    out << header_block(cfg, "cir-dump", opt);
    out << "tx_index,y_um,period,cir\n";
    for (std::size_t k = 0; k < setup.topo.tx_count(); ++k) {
        for (int i = 1; i <= setup.table.periods(); ++i) {
            out << (k + 1) << "," << fmt_g(setup.topo.distances[k]) << "," << i << ","
                << fmt_prob(setup.table.tx_cir(k, i)) << "\n";
        }
    }
    for (int i = 1; i <= setup.table.periods(); ++i) {
        out << "all,," << i << "," << fmt_prob(setup.table.avg_cir(i)) << "\n";
    }
    return out.str();
}

} // namespace cskct
