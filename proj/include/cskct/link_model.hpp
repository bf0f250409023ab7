#pragma once

#include <cstdint>
#include <vector>

#include "cskct/channel.hpp"

namespace cskct {

/// The set of release concentrations assigned to the symbol alphabet,
/// strictly increasing.  exact_levels keeps the pre-rounding design values;
/// for sets built directly from integers the two coincide.
struct ConcentrationSet {
    std::vector<std::int64_t> levels;
    std::vector<double> exact_levels;

    ConcentrationSet() = default;
    explicit ConcentrationSet(std::vector<std::int64_t> lv);
    ConcentrationSet(std::vector<std::int64_t> lv, std::vector<double> exact);

    int symbol_count() const { return static_cast<int>(levels.size()); }
    /// log2(M); throws for non-power-of-two alphabets.
    int bits_per_symbol() const;
    /// Arithmetic mean of the integer levels (equiprobable symbols).
    double mean() const;

    void validate() const;
};

/// Mean and variance of the received molecule count, split into signal and
/// ISI components.  variance == signal_variance + isi_variance (the two
/// contributions are independent).
struct SignalMoments {
    double mean = 0.0;
    double variance = 0.0;
    double signal_mean = 0.0;
    double isi_mean = 0.0;
    double signal_variance = 0.0;
    double isi_variance = 0.0;

    double stddev() const;
};

/// Expected received signal strength for mean release q_mean and averaged
/// first-period CIR h1.
double expected_signal(double q_mean, double h1);

/// Expected ISI: q_mean times the sum of averaged CIRs for periods
/// 2..memory+1.  memory = 0 gives 0 (first slot of a round, no history).
double expected_isi(double q_mean, const std::vector<double>& avg_cir, int memory);

/// Convenience overload using the table's full memory.
double expected_isi(double q_mean, const CirTable& table);

/// ISI variance: q_mean * sum of H[i]*(1-H[i]) over periods 2..memory+1.
double isi_variance(double q_mean, const std::vector<double>& avg_cir, int memory);
double isi_variance(double q_mean, const CirTable& table);

/// Received-count moments conditioned on a specific release level and
/// transmitter distance.  The signal part uses the per-distance first-period
/// CIR h(y,1); the ISI part aggregates over the distance population via the
/// averaged CIRs and the set's mean level.  q_level must be one of the
/// design levels.
SignalMoments conditional_moments(std::int64_t q_level, double y, const ConcentrationSet& cset,
                                  const ChannelParams& params, const CirTable& table);

/// Same moments with the per-distance CIR supplied directly (h1 = h(y,1)).
SignalMoments conditional_moments_at(std::int64_t q_level, double h1, double q_mean,
                                     const CirTable& table);

} // namespace cskct
