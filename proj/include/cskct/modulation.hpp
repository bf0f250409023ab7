#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "cskct/channel.hpp"
#include "cskct/link_model.hpp"

namespace cskct {

enum class Scheme {
    benchmark, ///< per-transmitter geometric-mean thresholds, K*(M-1) of them
    csk_ct,    ///< one common threshold set valid for every transmitter
};

std::string_view to_string(Scheme scheme);
Scheme scheme_from_string(std::string_view name);

/// A complete modulation design: release concentrations plus detection
/// thresholds.  csk_ct designs carry the common threshold vector, the
/// gamma/rho knobs and the limits-spacing diagnostic; benchmark designs carry
/// the K x (M-1) per-transmitter threshold matrix.
struct ModulationDesign {
    Scheme scheme = Scheme::csk_ct;
    int symbol_count = 0;
    double rho = 1.0;
    double gamma = 0.0; ///< 0 when not applicable (benchmark)
    ConcentrationSet concentrations;
    std::vector<double> common_thresholds;
    std::vector<std::vector<double>> per_tx_thresholds;
    std::vector<double> limits_spacing;

    /// Thresholds used to decode transmitter tx's slot.
    const std::vector<double>& thresholds_for_tx(std::size_t tx) const;
};

/// Ratio between adjacent release concentrations implied by the distance
/// limits: h(y_min,1) / h(y_max,1).  Requires 0 < y_min < y_max; > 1.
double gamma_ratio(const ChannelParams& params, double y_min, double y_max);

/// Release concentrations Q_j = round(Q0 * gamma^(j*rho)), j = 0..M-1.
/// rho >= 1; the exact (unrounded) values are kept alongside.
ConcentrationSet design_concentrations(std::int64_t q0, double gamma, double rho, int symbol_count);

/// Common thresholds for the given concentration set.  rho == 1 places each
/// threshold at the weakest conditional mean of the next level; rho > 1 uses
/// the geometric mean of the adjacent limit means.  Throws
/// infeasible_design_error (naming the index) when the limit means are not
/// ordered.
std::vector<double> design_thresholds_cskct(const ConcentrationSet& cset, double rho,
                                            const ChannelParams& params, const Topology& topo,
                                            const CirTable& table);

/// Benchmark per-transmitter thresholds: geometric means of adjacent
/// conditional means at each transmitter's own distance.
std::vector<std::vector<double>> design_thresholds_benchmark(const ConcentrationSet& cset,
                                                             const Topology& topo,
                                                             const CirTable& table);

/// Gap between the weakest mean of level j+1 and the strongest mean of level
/// j, per threshold index.  The ISI term cancels, so only the levels and the
/// two limit CIRs enter.  Zero (identically) for rho = 1 designs evaluated on
/// exact levels; positive for feasible rho > 1 designs.
std::vector<double> limits_spacing(const std::vector<double>& levels, double h_ymin1,
                                   double h_ymax1);

struct ComplexityCount {
    std::int64_t thresholds = 0;
    std::int64_t cirs = 0;
};

/// Number of threshold computations (and CIRs) the receiver needs:
/// M-1 thresholds / 2 CIRs for csk-ct independent of K; K*(M-1) / K for the
/// benchmark.
ComplexityCount count_threshold_computations(Scheme scheme, int tx_count, int symbol_count);

/// Full csk-ct design from the channel geometry: gamma from the distance
/// limits, concentrations from (q0, gamma, rho), thresholds from the limit
/// means with the table's ISI memory.
ModulationDesign design_cskct(const ChannelParams& params, const Topology& topo,
                              const CirTable& table, int symbol_count, double rho,
                              std::int64_t q0);

/// csk-ct thresholds for externally chosen levels (no gamma/concentration
/// derivation); rho only selects the threshold rule.
ModulationDesign design_cskct_with_levels(const ChannelParams& params, const Topology& topo,
                                          const CirTable& table, ConcentrationSet cset,
                                          double rho);

/// Benchmark design for externally chosen levels.
ModulationDesign design_benchmark(const Topology& topo, const CirTable& table,
                                  ConcentrationSet cset);

/// Flat key=value text block (scheme, M, rho, gamma, Q list, tau list/matrix),
/// round-trippable through parse_design.
std::string serialize_design(const ModulationDesign& design);
ModulationDesign parse_design(const std::string& text);

} // namespace cskct
