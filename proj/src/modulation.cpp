#include "cskct/modulation.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "cskct/errors.hpp"

namespace cskct {

namespace {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

struct LimitMeans {
    double h_min = 0.0; ///< h(y_min, 1)
    double h_max = 0.0; ///< h(y_max, 1)
    double e_isi = 0.0;

    double strongest(double q) const { return q * h_min + e_isi; } ///< at y_min
    double weakest(double q) const { return q * h_max + e_isi; }   ///< at y_max
};

LimitMeans limit_means(const ConcentrationSet& cset, const ChannelParams& params,
                       const Topology& topo, const CirTable& table) {
    LimitMeans lm;
    lm.h_min = cir(params, topo.y_min, 1);
    lm.h_max = cir(params, topo.y_max, 1);
    lm.e_isi = expected_isi(cset.mean(), table);
    return lm;
}

} // namespace

std::string_view to_string(Scheme scheme) {
    return scheme == Scheme::benchmark ? "benchmark" : "csk-ct";
}

Scheme scheme_from_string(std::string_view name) {
    if (name == "benchmark") return Scheme::benchmark;
    if (name == "csk-ct" || name == "csk_ct" || name == "cskct") return Scheme::csk_ct;
    throw std::domain_error("unknown scheme: " + std::string(name));
}

const std::vector<double>& ModulationDesign::thresholds_for_tx(std::size_t tx) const {
    if (scheme == Scheme::csk_ct) return common_thresholds;
    return per_tx_thresholds.at(tx);
}

double gamma_ratio(const ChannelParams& params, double y_min, double y_max) {
    if (!(y_min > 0.0)) throw std::domain_error("gamma_ratio: y_min must be > 0");
    if (!(y_max > y_min)) throw std::domain_error("gamma_ratio: require y_min < y_max");
    return cum_hit(params, y_min, params.symbol_period) /
           cum_hit(params, y_max, params.symbol_period);
}

ConcentrationSet design_concentrations(std::int64_t q0, double gamma, double rho,
                                       int symbol_count) {
    if (q0 < 1) throw std::domain_error("design_concentrations: Q0 must be >= 1");
    if (!(gamma > 1.0)) throw std::domain_error("design_concentrations: gamma must be > 1");
    if (!(rho >= 1.0)) throw std::domain_error("design_concentrations: rho must be >= 1");
    if (symbol_count < 2) throw std::domain_error("design_concentrations: M must be >= 2");

    std::vector<std::int64_t> levels;
    std::vector<double> exact;
    levels.reserve(static_cast<std::size_t>(symbol_count));
    exact.reserve(static_cast<std::size_t>(symbol_count));
    for (int j = 0; j < symbol_count; ++j) {
        double q = static_cast<double>(q0) * std::pow(gamma, j * rho);
        exact.push_back(q);
        levels.push_back(std::llround(q));
    }
    for (int j = 1; j < symbol_count; ++j) {
        if (levels[static_cast<std::size_t>(j)] <= levels[static_cast<std::size_t>(j - 1)]) {
            throw infeasible_design_error(
                "design_concentrations: rounded levels not strictly increasing at j=" +
                    std::to_string(j),
                j - 1);
        }
    }
    return {std::move(levels), std::move(exact)};
}

std::vector<double> design_thresholds_cskct(const ConcentrationSet& cset, double rho,
                                            const ChannelParams& params, const Topology& topo,
                                            const CirTable& table) {
    cset.validate();
    if (!(rho >= 1.0)) throw std::domain_error("design_thresholds_cskct: rho must be >= 1");
    const LimitMeans lm = limit_means(cset, params, topo, table);
    const int m = cset.symbol_count();

    // With integer-rounded levels the rho=1 equality of the limit means only
    // holds to within half a molecule per level; allow that much slack.
    const double slack = rho == 1.0 ? 0.5 * (lm.h_min + lm.h_max) + 1e-9 : 0.0;

    std::vector<double> tau;
    tau.reserve(static_cast<std::size_t>(m - 1));
    for (int j = 0; j + 1 < m; ++j) {
        const double lo = lm.strongest(static_cast<double>(cset.levels[static_cast<std::size_t>(j)]));
        const double hi = lm.weakest(static_cast<double>(cset.levels[static_cast<std::size_t>(j + 1)]));
        const bool feasible = rho == 1.0 ? lo <= hi + slack : lo < hi;
        if (!feasible) {
            throw infeasible_design_error(
                "design_thresholds_cskct: limit means not ordered at threshold j=" +
                    std::to_string(j) + " (strongest(Q_j)=" + fmt_double(lo) +
                    ", weakest(Q_j+1)=" + fmt_double(hi) + ")",
                j);
        }
        tau.push_back(rho == 1.0 ? hi : std::sqrt(lo * hi));
    }
    for (std::size_t j = 1; j < tau.size(); ++j) {
        if (!(tau[j] > tau[j - 1])) {
            throw infeasible_design_error(
                "design_thresholds_cskct: thresholds not strictly increasing at j=" +
                    std::to_string(j),
                static_cast<int>(j));
        }
    }
    return tau;
}

std::vector<std::vector<double>> design_thresholds_benchmark(const ConcentrationSet& cset,
                                                             const Topology& topo,
                                                             const CirTable& table) {
    cset.validate();
    const double e_isi = expected_isi(cset.mean(), table);
    const int m = cset.symbol_count();

    std::vector<std::vector<double>> rows;
    rows.reserve(topo.tx_count());
    for (std::size_t k = 0; k < topo.tx_count(); ++k) {
        const double h1 = table.tx_cir(k, 1);
        std::vector<double> row;
        row.reserve(static_cast<std::size_t>(m - 1));
        for (int j = 0; j + 1 < m; ++j) {
            double a = static_cast<double>(cset.levels[static_cast<std::size_t>(j)]) * h1 + e_isi;
            double b = static_cast<double>(cset.levels[static_cast<std::size_t>(j + 1)]) * h1 + e_isi;
            row.push_back(std::sqrt(a * b));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<double> limits_spacing(const std::vector<double>& levels, double h_ymin1,
                                   double h_ymax1) {
    if (levels.size() < 2) throw std::domain_error("limits_spacing: need at least 2 levels");
    std::vector<double> spacing;
    spacing.reserve(levels.size() - 1);
    for (std::size_t j = 0; j + 1 < levels.size(); ++j) {
        spacing.push_back(levels[j + 1] * h_ymax1 - levels[j] * h_ymin1);
    }
    return spacing;
}

ComplexityCount count_threshold_computations(Scheme scheme, int tx_count, int symbol_count) {
    if (tx_count < 1) throw std::domain_error("count_threshold_computations: K must be >= 1");
    if (symbol_count < 2) throw std::domain_error("count_threshold_computations: M must be >= 2");
    ComplexityCount c;
    if (scheme == Scheme::csk_ct) {
        c.thresholds = symbol_count - 1;
        c.cirs = 2;
    } else {
        c.thresholds = static_cast<std::int64_t>(tx_count) * (symbol_count - 1);
        c.cirs = tx_count;
    }
    return c;
}

ModulationDesign design_cskct(const ChannelParams& params, const Topology& topo,
                              const CirTable& table, int symbol_count, double rho,
                              std::int64_t q0) {
    ModulationDesign d;
    d.scheme = Scheme::csk_ct;
    d.symbol_count = symbol_count;
    d.rho = rho;
    d.gamma = gamma_ratio(params, topo.y_min, topo.y_max);
    d.concentrations = design_concentrations(q0, d.gamma, rho, symbol_count);
    d.common_thresholds = design_thresholds_cskct(d.concentrations, rho, params, topo, table);
    d.limits_spacing = limits_spacing(d.concentrations.exact_levels, cir(params, topo.y_min, 1),
                                      cir(params, topo.y_max, 1));
    return d;
}

ModulationDesign design_cskct_with_levels(const ChannelParams& params, const Topology& topo,
                                          const CirTable& table, ConcentrationSet cset,
                                          double rho) {
    ModulationDesign d;
    d.scheme = Scheme::csk_ct;
    d.symbol_count = cset.symbol_count();
    d.rho = rho;
    d.gamma = 0.0;
    d.common_thresholds = design_thresholds_cskct(cset, rho, params, topo, table);
    d.limits_spacing = limits_spacing(cset.exact_levels, cir(params, topo.y_min, 1),
                                      cir(params, topo.y_max, 1));
    d.concentrations = std::move(cset);
    return d;
}

ModulationDesign design_benchmark(const Topology& topo, const CirTable& table,
                                  ConcentrationSet cset) {
    ModulationDesign d;
    d.scheme = Scheme::benchmark;
    d.symbol_count = cset.symbol_count();
    d.per_tx_thresholds = design_thresholds_benchmark(cset, topo, table);
    d.concentrations = std::move(cset);
    return d;
}

std::string serialize_design(const ModulationDesign& design) {
    std::ostringstream out;
    out << "scheme=" << to_string(design.scheme) << "\n";
    out << "M=" << design.symbol_count << "\n";
    out << "rho=" << fmt_double(design.rho) << "\n";
    out << "gamma=" << fmt_double(design.gamma) << "\n";
    out << "Q=";
    for (std::size_t j = 0; j < design.concentrations.levels.size(); ++j) {
        if (j) out << ",";
        out << design.concentrations.levels[j];
    }
    out << "\n";
    if (design.scheme == Scheme::csk_ct) {
        out << "tau=";
        for (std::size_t j = 0; j < design.common_thresholds.size(); ++j) {
            if (j) out << ",";
            out << fmt_double(design.common_thresholds[j]);
        }
        out << "\n";
    } else {
        for (std::size_t k = 0; k < design.per_tx_thresholds.size(); ++k) {
            out << "tau_tx" << (k + 1) << "=";
            for (std::size_t j = 0; j < design.per_tx_thresholds[k].size(); ++j) {
                if (j) out << ",";
                out << fmt_double(design.per_tx_thresholds[k][j]);
            }
            out << "\n";
        }
    }
    return out.str();
}

namespace {

std::vector<std::string> split_csv_field(const std::string& value) {
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : value) {
        if (ch == ',') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    if (!cur.empty()) parts.push_back(cur);
    return parts;
}

} // namespace

ModulationDesign parse_design(const std::string& text) {
    ModulationDesign d;
    std::istringstream in(text);
    std::string line;
    std::vector<std::vector<double>> tau_rows;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) throw std::domain_error("parse_design: missing '=' in: " + line);
        std::string key = line.substr(0, eq);
        std::string value = line.substr(eq + 1);
        if (key == "scheme") {
            d.scheme = scheme_from_string(value);
        } else if (key == "M") {
            d.symbol_count = std::stoi(value);
        } else if (key == "rho") {
            d.rho = std::stod(value);
        } else if (key == "gamma") {
            d.gamma = std::stod(value);
        } else if (key == "Q") {
            std::vector<std::int64_t> levels;
            for (const auto& p : split_csv_field(value)) levels.push_back(std::stoll(p));
            d.concentrations = ConcentrationSet(std::move(levels));
        } else if (key == "tau") {
            for (const auto& p : split_csv_field(value)) d.common_thresholds.push_back(std::stod(p));
        } else if (key.rfind("tau_tx", 0) == 0) {
            std::size_t idx = std::stoul(key.substr(6));
            if (tau_rows.size() < idx) tau_rows.resize(idx);
            std::vector<double> row;
            for (const auto& p : split_csv_field(value)) row.push_back(std::stod(p));
            tau_rows[idx - 1] = std::move(row);
        } else {
            throw std::domain_error("parse_design: unknown key: " + key);
        }
    }
    d.per_tx_thresholds = std::move(tau_rows);
    if (d.symbol_count == 0) d.symbol_count = d.concentrations.symbol_count();
    return d;
}

} // namespace cskct
