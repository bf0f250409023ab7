#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cskct/channel.hpp"
#include "cskct/link_model.hpp"
#include "cskct/modulation.hpp"
#include "cskct/montecarlo.hpp"

namespace cskct {

/// Flat key=value experiment configuration with Table-style defaults.
/// File keys and CLI overrides share the same names; flags win over file
/// values.  d_bar_um is a convenience: it derives y_max = 2*d_bar - y_min and
/// a 1 um transmitter grid.
struct ExperimentConfig {
    ChannelParams params;
    double y_min = 6.0;
    double y_max = 17.0;
    std::optional<double> d_bar;
    int tx_count = 0;   ///< 0: one transmitter per um on [y_min, y_max]
    int isi_memory = -1; ///< -1: full channel memory K-1
    double rho = 1.0;
    std::int64_t q0 = 1000;
    int symbol_count = 2;
    Scheme scheme = Scheme::csk_ct;
    std::uint64_t seed = 1;
    std::vector<std::int64_t> bench_levels; ///< empty: defaults for M=2/M=4
    std::uint64_t mc_rounds = 100000;
    int mc_threads = 1;
    ArrivalModel arrival_model = ArrivalModel::binomial;
    std::vector<int> fixed_sequence; ///< empty: uniform-random symbols

    /// Apply one key=value assignment; throws config_error on unknown key or
    /// unparsable value.
    void set(const std::string& key, const std::string& value);

    /// Effective maximum transmitter distance (d_bar wins over y_max).
    double effective_y_max() const;

    Topology topology() const;

    /// Benchmark levels from config, or the stock {1000,1500} /
    /// {1000,1500,2000,3000} sets for M=2/4.
    ConcentrationSet benchmark_concentrations() const;

    /// All effective parameters as '#'-prefixed comment lines.
    std::string echo_comments(const std::string& command) const;

    static ExperimentConfig from_file(const std::string& path);

    /// Parses the body of a config file (key=value lines, '#' comments).
    static ExperimentConfig from_string(const std::string& text);
};

/// "1,2,3" or "start:stop:step" (inclusive of stop within half a step).
std::vector<double> parse_value_list(const std::string& text);

/// Comma-separated tokens, kept as strings (for scheme sweeps).
std::vector<std::string> parse_token_list(const std::string& text);

} // namespace cskct
