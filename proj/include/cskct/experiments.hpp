#pragma once

#include <string>
#include <vector>

#include "cskct/config.hpp"
#include "cskct/detection.hpp"
#include "cskct/montecarlo.hpp"

namespace cskct {

/// Topology + CIR table materialised for one configuration point.
struct LinkSetup {
    Topology topo;
    CirTable table;
};

LinkSetup build_setup(const ExperimentConfig& cfg);

/// Design for the configured scheme: csk-ct derives concentrations from
/// (Q0, gamma, rho); benchmark takes its levels from config verbatim.
ModulationDesign make_design(const ExperimentConfig& cfg, const LinkSetup& setup);

/// One SER sweep: exactly one varied parameter out of
/// {t_sym, y_max, d_bar, rho, M, scheme, k_memory}.
struct SweepSpec {
    std::string parameter;
    std::vector<std::string> values;
    bool with_montecarlo = false;
};

/// Emitted CSVs carry the config echo as '#' comments; the timestamp line is
/// optional so reruns can be byte-identical.
struct EmitOptions {
    bool timestamp = false;
};

std::string cmd_design_text(const ExperimentConfig& cfg);
std::string cmd_design_csv(const ExperimentConfig& cfg, const EmitOptions& opt = {});

std::string cmd_gamma_sweep_csv(const ExperimentConfig& cfg, const std::vector<double>& t_sym_values,
                                const std::vector<double>& y_max_values,
                                const EmitOptions& opt = {});

std::string cmd_ser_csv(const ExperimentConfig& cfg, const SweepSpec& spec,
                        const EmitOptions& opt = {});

std::string cmd_complexity_csv(const ExperimentConfig& cfg, const std::vector<int>& k_values,
                               const EmitOptions& opt = {});

std::string cmd_montecarlo_csv(const ExperimentConfig& cfg, const EmitOptions& opt = {});

/// Same, but simulating an externally supplied design (e.g. one loaded from
/// its key=value serialization) over the configured channel.
std::string cmd_montecarlo_csv(const ExperimentConfig& cfg, const ModulationDesign& design,
                               const EmitOptions& opt = {});

std::string cmd_cir_dump_csv(const ExperimentConfig& cfg, const EmitOptions& opt = {});

/// d_bar for reporting: midpoint of the effective distance interval.
double report_d_bar(const ExperimentConfig& cfg);

} // namespace cskct
