#include "cskct/detection.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace cskct {

int decode(double observed, std::span<const double> thresholds, int num_symbols) {
    if (num_symbols < 1) throw std::domain_error("decode: need at least one symbol");
    if (thresholds.size() != static_cast<std::size_t>(num_symbols - 1)) {
        throw std::domain_error("decode: need M-1 thresholds");
    }
    for (std::size_t j = 1; j < thresholds.size(); ++j) {
        if (!(thresholds[j] > thresholds[j - 1])) {
            throw std::domain_error("decode: thresholds must be strictly increasing");
        }
    }
    int j = 0;
    while (j < num_symbols - 1 && observed >= thresholds[static_cast<std::size_t>(j)]) ++j;
    return j;
}

double gaussian_tail(double delta, double stddev) {
    if (stddev < 0.0) throw std::domain_error("gaussian_tail: stddev must be >= 0");
    if (stddev == 0.0) {
        if (delta > 0.0) return 0.0;
        if (delta < 0.0) return 1.0;
        return 0.5;
    }
    return 0.5 * std::erfc(delta / (std::sqrt(2.0) * stddev));
}

double symbol_error_prob(int symbol, std::span<const double> thresholds, double mean,
                         double stddev) {
    const int m = static_cast<int>(thresholds.size()) + 1;
    if (symbol < 0 || symbol >= m) throw std::domain_error("symbol_error_prob: symbol out of range");
    if (m < 2) return 0.0;
    if (symbol == 0) {
        return gaussian_tail(thresholds[0] - mean, stddev);
    }
    if (symbol == m - 1) {
        return gaussian_tail(mean - thresholds[static_cast<std::size_t>(m - 2)], stddev);
    }
    // Middle symbols lose mass below tau_{j-1} and at/above tau_j.
    return gaussian_tail(mean - thresholds[static_cast<std::size_t>(symbol - 1)], stddev) +
           gaussian_tail(thresholds[static_cast<std::size_t>(symbol)] - mean, stddev);
}

ErrorReport network_error_prob(const ModulationDesign& design, const Topology& topo,
                               const CirTable& table) {
    design.concentrations.validate();
    if (design.symbol_count != design.concentrations.symbol_count()) {
        throw std::domain_error("network_error_prob: design symbol count != level count");
    }
    if (design.scheme == Scheme::benchmark &&
        design.per_tx_thresholds.size() != topo.tx_count()) {
        throw std::domain_error("network_error_prob: benchmark threshold rows != K");
    }

    const int m = design.symbol_count;
    const double q_mean = design.concentrations.mean();

    ErrorReport report;
    report.scheme = design.scheme;
    report.symbol_count = m;
    report.rho = design.rho;
    report.isi_memory = table.periods() - 1;
    report.per_symbol.resize(topo.tx_count());
    report.per_tx.resize(topo.tx_count());

    double network_sum = 0.0;
    for (std::size_t k = 0; k < topo.tx_count(); ++k) {
        const auto& tau = design.thresholds_for_tx(k);
        const double h1 = table.tx_cir(k, 1);
        auto& row = report.per_symbol[k];
        row.resize(static_cast<std::size_t>(m));
        double tx_sum = 0.0;
        for (int j = 0; j < m; ++j) {
            SignalMoments mom = conditional_moments_at(
                design.concentrations.levels[static_cast<std::size_t>(j)], h1, q_mean, table);
            row[static_cast<std::size_t>(j)] =
                symbol_error_prob(j, tau, mom.mean, mom.stddev());
            tx_sum += row[static_cast<std::size_t>(j)];
        }
        report.per_tx[k] = tx_sum / m;
        network_sum += report.per_tx[k];
    }
    report.network = network_sum / static_cast<double>(topo.tx_count());
    return report;
}

namespace {

std::string fmt_prob(double p) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12e", p);
    return buf;
}

std::string fmt_short(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

} // namespace

std::string error_report_csv_header() {
    return "scheme,M,rho,d_bar,t_sym,k_memory,tx_index,symbol,p_error";
}

std::string error_report_csv(const ErrorReport& report, double d_bar, double t_sym) {
    std::ostringstream out;
    const std::string prefix = std::string(to_string(report.scheme)) + "," +
                               std::to_string(report.symbol_count) + "," +
                               fmt_short(report.rho) + "," + fmt_short(d_bar) + "," +
                               fmt_short(t_sym) + "," + std::to_string(report.isi_memory) + ",";
    for (std::size_t k = 0; k < report.per_symbol.size(); ++k) {
        for (std::size_t j = 0; j < report.per_symbol[k].size(); ++j) {
            out << prefix << (k + 1) << "," << j << "," << fmt_prob(report.per_symbol[k][j])
                << "\n";
        }
    }
    for (std::size_t k = 0; k < report.per_tx.size(); ++k) {
        out << prefix << (k + 1) << ",all," << fmt_prob(report.per_tx[k]) << "\n";
    }
    out << prefix << "all,all," << fmt_prob(report.network) << "\n";
    return out.str();
}

} // namespace cskct
