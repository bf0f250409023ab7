#include "cskct/link_model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cskct {

ConcentrationSet::ConcentrationSet(std::vector<std::int64_t> lv) : levels(std::move(lv)) {
    exact_levels.assign(levels.begin(), levels.end());
    validate();
}

ConcentrationSet::ConcentrationSet(std::vector<std::int64_t> lv, std::vector<double> exact)
    : levels(std::move(lv)), exact_levels(std::move(exact)) {
    validate();
}

void ConcentrationSet::validate() const {
    if (levels.size() < 2) throw std::domain_error("ConcentrationSet: need at least 2 levels");
    if (exact_levels.size() != levels.size()) {
        throw std::domain_error("ConcentrationSet: exact/integer level count mismatch");
    }
    if (levels.front() < 0) throw std::domain_error("ConcentrationSet: levels must be nonnegative");
    for (std::size_t j = 1; j < levels.size(); ++j) {
        if (levels[j] <= levels[j - 1]) {
            throw std::domain_error("ConcentrationSet: levels must be strictly increasing");
        }
    }
}

int ConcentrationSet::bits_per_symbol() const {
    int m = symbol_count();
    int b = 0;
    while ((1 << b) < m) ++b;
    if ((1 << b) != m) {
        throw std::domain_error("ConcentrationSet: symbol count is not a power of two");
    }
    return b;
}

double ConcentrationSet::mean() const {
    double sum = 0.0;
    for (auto q : levels) sum += static_cast<double>(q);
    return sum / static_cast<double>(levels.size());
}

double SignalMoments::stddev() const { return std::sqrt(variance); }

double expected_signal(double q_mean, double h1) {
    if (q_mean < 0.0) throw std::domain_error("expected_signal: q_mean must be >= 0");
    if (h1 < 0.0 || h1 > 1.0) throw std::domain_error("expected_signal: h1 must be in [0,1]");
    return q_mean * h1;
}

double expected_isi(double q_mean, const std::vector<double>& avg_cir, int memory) {
    if (memory < 0) throw std::domain_error("expected_isi: memory must be >= 0");
    if (static_cast<std::size_t>(memory) + 1 > avg_cir.size()) {
        throw std::length_error("expected_isi: averaged CIR vector too short for memory");
    }
    double sum = 0.0;
    for (int i = 2; i <= memory + 1; ++i) sum += avg_cir[static_cast<std::size_t>(i - 1)];
    return q_mean * sum;
}

double expected_isi(double q_mean, const CirTable& table) {
    return expected_isi(q_mean, table.averaged, table.periods() - 1);
}

double isi_variance(double q_mean, const std::vector<double>& avg_cir, int memory) {
    if (memory < 0) throw std::domain_error("isi_variance: memory must be >= 0");
    if (static_cast<std::size_t>(memory) + 1 > avg_cir.size()) {
        throw std::length_error("isi_variance: averaged CIR vector too short for memory");
    }
    double sum = 0.0;
    for (int i = 2; i <= memory + 1; ++i) {
        double h = avg_cir[static_cast<std::size_t>(i - 1)];
        sum += h * (1.0 - h);
    }
    return q_mean * sum;
}

double isi_variance(double q_mean, const CirTable& table) {
    return isi_variance(q_mean, table.averaged, table.periods() - 1);
}

SignalMoments conditional_moments_at(std::int64_t q_level, double h1, double q_mean,
                                     const CirTable& table) {
    if (q_level < 0) throw std::domain_error("conditional_moments: level must be >= 0");
    if (h1 < 0.0 || h1 > 1.0) throw std::domain_error("conditional_moments: h1 must be in [0,1]");
    SignalMoments m;
    const double q = static_cast<double>(q_level);
    m.signal_mean = q * h1;
    m.signal_variance = q * h1 * (1.0 - h1);
    m.isi_mean = expected_isi(q_mean, table);
    m.isi_variance = isi_variance(q_mean, table);
    m.mean = m.signal_mean + m.isi_mean;
    m.variance = m.signal_variance + m.isi_variance;
    return m;
}

SignalMoments conditional_moments(std::int64_t q_level, double y, const ConcentrationSet& cset,
                                  const ChannelParams& params, const CirTable& table) {
    cset.validate();
    if (std::find(cset.levels.begin(), cset.levels.end(), q_level) == cset.levels.end()) {
        throw std::domain_error("conditional_moments: q_level is not one of the design levels");
    }
    return conditional_moments_at(q_level, cir(params, y, 1), cset.mean(), table);
}

} // namespace cskct
