#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cskct/channel.hpp"
#include "cskct/modulation.hpp"

namespace cskct {

enum class ArrivalModel { binomial, gaussian };
enum class SymbolSource { uniform_random, fixed_sequence };

/// One transmission round = K slots, one per transmitter in round-robin
/// order; interference crosses round boundaries on the continuous slot
/// timeline.  Identical (config, seed) gives bit-identical results
/// regardless of thread count.
struct TrialConfig {
    std::uint64_t rounds = 1;
    std::uint64_t seed = 1;
    ArrivalModel arrival_model = ArrivalModel::binomial;
    SymbolSource symbol_source = SymbolSource::uniform_random;
    std::vector<int> fixed_sequence; ///< cycled through per slot when fixed
    int threads = 1;
};

struct WilsonInterval {
    double lo = 0.0;
    double hi = 1.0;

    bool operator==(const WilsonInterval&) const = default;
};

/// 95% Wilson score interval for a binomial proportion.
WilsonInterval wilson_95(std::uint64_t successes, std::uint64_t trials);

struct SimResult {
    std::vector<std::vector<std::uint64_t>> errors; ///< [tx][symbol]
    std::vector<std::vector<std::uint64_t>> trials; ///< [tx][symbol]
    std::vector<double> per_tx_ser;
    std::vector<WilsonInterval> per_tx_ci;
    double network_ser = 0.0;
    WilsonInterval network_ci;

    // Slot-statistics diagnostics (exact integer accumulation, so identical
    // across thread counts): run-averaged ISI molecules per slot and
    // per-(tx,symbol) observed-count moments.
    double isi_mean = 0.0;
    std::vector<std::vector<double>> observed_mean;
    std::vector<std::vector<double>> observed_variance;

    std::uint64_t rounds = 0;
    std::uint64_t seed = 0;

    bool operator==(const SimResult&) const = default;
};

/// Slot-level simulation: per slot, the observed count is the signal
/// Binomial(Q_symbol, h(y,1)) plus one Binomial draw per remembered prior
/// transmission, decoded against the design's thresholds and tallied per
/// (transmitter, true symbol).
SimResult run(const ModulationDesign& design, const ChannelParams& params, const Topology& topo,
              const CirTable& table, const TrialConfig& config);

/// Empirical per-period hit fractions at one distance: for each period the
/// fraction of n_molecules*n_trials Bernoulli(cir(y,i)) successes.  Sampling
/// validation of the closed-form CIR, not a random-walk simulation.
std::vector<double> estimate_cir_empirical(const ChannelParams& params, double y,
                                           std::uint64_t n_molecules, std::uint64_t n_trials,
                                           int periods, std::uint64_t seed);

/// CSV rows in the error-report schema extended with source and CI columns.
/// Aggregate rows carry the Wilson interval; per-symbol rows leave it blank.
std::string sim_result_csv(const SimResult& result, const ModulationDesign& design, double d_bar,
                           double t_sym, int isi_memory);

/// Header matching sim_result_csv (error-report columns + source,ci_lo,ci_hi).
std::string sim_result_csv_header();

} // namespace cskct
