// Batch front-end: reproduces the design tables and figure data as CSV and
// runs parameter sweeps.  Exit codes: 0 ok, 2 config error, 3 infeasible
// design, 4 numerical failure.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "cskct/errors.hpp"
#include "cskct/experiments.hpp"

namespace {

struct CommonArgs {
    std::string config_path;
    std::vector<std::string> overrides;
    std::string out_path;
    bool timestamp = false;
};

cskct::ExperimentConfig load_config(const CommonArgs& args) {
    cskct::ExperimentConfig cfg;
    if (!args.config_path.empty()) cfg = cskct::ExperimentConfig::from_file(args.config_path);
    for (const std::string& kv : args.overrides) {
        auto eq = kv.find('=');
        if (eq == std::string::npos) {
            throw cskct::config_error("--set expects key=value, got '" + kv + "'");
        }
        cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
    }
    return cfg;
}

void write_output(const CommonArgs& args, const std::string& content) {
    if (args.out_path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(args.out_path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open output file: " + args.out_path);
    out << content;
}

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("-c,--config", args.config_path, "key=value config file");
    cmd->add_option("-s,--set", args.overrides, "override config entries (key=value, repeatable)");
    cmd->add_option("-o,--out", args.out_path, "output CSV path (default: stdout)");
    cmd->add_flag("--timestamp", args.timestamp, "add a generated_at comment line");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"link-level design and simulation toolkit for multi-transmitter "
                 "diffusive molecular communication with concentration shift keying"};
    app.require_subcommand(1);

    CommonArgs args;

    auto* design = app.add_subcommand(
        "design", "release concentrations and detection thresholds for the configured scheme");
    add_common(design, args);
    std::string save_design_path;
    design->add_option("--save-design", save_design_path,
                       "also write the design as a key=value block");

    auto* gamma = app.add_subcommand("gamma-sweep",
                                     "concentration ratio versus symbol period and y_max");
    add_common(gamma, args);
    std::string t_sym_list = "1.28,2.56,5.12,10.24,20.48,32";
    std::string y_max_list = "17,18,19,20,21";
    gamma->add_option("--t-sym", t_sym_list, "t_sym values (list or start:stop:step)");
    gamma->add_option("--y-max", y_max_list, "y_max values (list or start:stop:step)");

    auto* ser = app.add_subcommand("ser", "symbol error probability sweep");
    add_common(ser, args);
    cskct::SweepSpec spec;
    ser->add_option("--vary", spec.parameter,
                    "varied parameter: t_sym, y_max, d_bar, rho, M, scheme, k_memory")
        ->required();
    std::string values_list;
    ser->add_option("--values", values_list, "values (list or start:stop:step)")->required();
    ser->add_flag("--montecarlo", spec.with_montecarlo, "add empirical SER columns");

    auto* complexity = app.add_subcommand("complexity",
                                          "receiver-side threshold and CIR computation counts");
    add_common(complexity, args);
    std::string k_list = "1:100:1";
    complexity->add_option("--k-values", k_list, "K values (list or start:stop:step)");

    auto* montecarlo = app.add_subcommand("montecarlo",
                                          "stochastic slot simulation against the analytic rates");
    add_common(montecarlo, args);
    std::string design_in_path;
    montecarlo->add_option("--design", design_in_path,
                           "load a serialized design instead of deriving one");
    std::string fixed_sequence;
    montecarlo->add_option("--fixed-sequence", fixed_sequence,
                           "transmit this symbol cycle instead of uniform-random draws");

    auto* cir_dump = app.add_subcommand("cir-dump", "per-transmitter and averaged CIR table");
    add_common(cir_dump, args);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        cskct::ExperimentConfig cfg = load_config(args);
        cskct::EmitOptions opt;
        opt.timestamp = args.timestamp;

        if (design->parsed()) {
            std::cout << cskct::cmd_design_text(cfg);
            if (!args.out_path.empty()) write_output(args, cskct::cmd_design_csv(cfg, opt));
            if (!save_design_path.empty()) {
                const cskct::LinkSetup setup = cskct::build_setup(cfg);
                std::ofstream out(save_design_path, std::ios::binary | std::ios::trunc);
                if (!out) {
                    throw std::runtime_error("cannot open design file: " + save_design_path);
                }
                out << cskct::serialize_design(cskct::make_design(cfg, setup));
            }
        } else if (gamma->parsed()) {
            write_output(args, cskct::cmd_gamma_sweep_csv(cfg, cskct::parse_value_list(t_sym_list),
                                                          cskct::parse_value_list(y_max_list),
                                                          opt));
        } else if (ser->parsed()) {
            spec.values = cskct::parse_token_list(values_list);
            if (spec.parameter != "scheme" && values_list.find(':') != std::string::npos) {
                spec.values.clear();
                for (double v : cskct::parse_value_list(values_list)) {
                    char buf[40];
                    std::snprintf(buf, sizeof(buf), "%.10g", v);
                    spec.values.emplace_back(buf);
                }
            }
            write_output(args, cskct::cmd_ser_csv(cfg, spec, opt));
        } else if (complexity->parsed()) {
            std::vector<int> ks;
            for (double v : cskct::parse_value_list(k_list)) ks.push_back(static_cast<int>(v));
            write_output(args, cskct::cmd_complexity_csv(cfg, ks, opt));
        } else if (montecarlo->parsed()) {
            if (!fixed_sequence.empty()) cfg.set("fixed_sequence", fixed_sequence);
            if (!design_in_path.empty()) {
                std::ifstream in(design_in_path);
                if (!in) throw cskct::config_error("cannot open design file: " + design_in_path);
                std::ostringstream buf;
                buf << in.rdbuf();
                cskct::ModulationDesign loaded = cskct::parse_design(buf.str());
                cfg.scheme = loaded.scheme;
                cfg.symbol_count = loaded.symbol_count;
                cfg.rho = loaded.rho;
                write_output(args, cskct::cmd_montecarlo_csv(cfg, loaded, opt));
            } else {
                write_output(args, cskct::cmd_montecarlo_csv(cfg, opt));
            }
        } else if (cir_dump->parsed()) {
            write_output(args, cskct::cmd_cir_dump_csv(cfg, opt));
        }
        return 0;
    } catch (const cskct::config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const cskct::infeasible_design_error& e) {
        std::cerr << "infeasible design: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
}
