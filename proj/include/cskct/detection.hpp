#pragma once

#include <span>
#include <string>
#include <vector>

#include "cskct/channel.hpp"
#include "cskct/link_model.hpp"
#include "cskct/modulation.hpp"

namespace cskct {

/// Closed-form symbol error probabilities per (transmitter, symbol), per
/// transmitter, and network-wide, under the Gaussian received-count model.
struct ErrorReport {
    std::vector<std::vector<double>> per_symbol; ///< [tx][symbol], K x M
    std::vector<double> per_tx;                  ///< equiprobable-symbol average per tx
    double network = 0.0;                        ///< average over transmitters
    int isi_memory = 0;
    Scheme scheme = Scheme::csk_ct;
    int symbol_count = 0;
    double rho = 1.0;
};

/// Threshold detection: region j is [tau_{j-1}, tau_j); counts equal to a
/// threshold decode upward.  thresholds must be strictly increasing and of
/// length num_symbols-1 (empty with num_symbols > 1 is a domain error).
int decode(double observed, std::span<const double> thresholds, int num_symbols);

/// Gaussian tail probability P(X >= mean + delta) for X ~ N(mean, stddev^2),
/// i.e. 0.5*erfc(delta / (sqrt(2)*stddev)).  stddev == 0 degenerates to the
/// indicator step: 1 for delta < 0, 0.5 at delta == 0, 0 for delta > 0.
double gaussian_tail(double delta, double stddev);

/// Error probability when symbol j is sent, given the decision thresholds
/// and the conditional count moments (mean, stddev).  Edge symbols have one
/// tail, middle symbols two.
double symbol_error_prob(int symbol, std::span<const double> thresholds, double mean,
                         double stddev);

/// Full analytic error report for a design over a topology: per-distance
/// signal conditioning, averaged-CIR ISI, the design's own thresholds
/// (common vector or per-transmitter row).
ErrorReport network_error_prob(const ModulationDesign& design, const Topology& topo,
                               const CirTable& table);

/// CSV rows (scheme,M,rho,d_bar,t_sym,k_memory,tx_index,symbol,p_error) with
/// per-transmitter and network aggregate rows appended (symbol/tx = "all").
/// No header or comments; callers prepend those.
std::string error_report_csv(const ErrorReport& report, double d_bar, double t_sym);

/// Column header matching error_report_csv.
std::string error_report_csv_header();

} // namespace cskct
