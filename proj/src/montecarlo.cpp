#include "cskct/montecarlo.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "cskct/detection.hpp"
#include "cskct/rng.hpp"

namespace cskct {

namespace {

// Substream ids per slot: 0 draws the symbol, 1 the signal arrival,
// 1+m the arrival of interference from the slot m steps back.
constexpr std::uint64_t kSymbolStream = 0;
constexpr std::uint64_t kArrivalStream = 1;

using u128 = unsigned __int128;

struct CellTally {
    std::uint64_t errors = 0;
    std::uint64_t trials = 0;
    u128 obs_sum = 0;
    u128 obs_sq_sum = 0;
};

struct WorkerTally {
    std::vector<CellTally> cells; // K*M
    u128 isi_sum = 0;
};

int symbol_at(std::uint64_t slot, const TrialConfig& cfg, int symbol_count) {
    if (cfg.symbol_source == SymbolSource::fixed_sequence) {
        return cfg.fixed_sequence[static_cast<std::size_t>(slot % cfg.fixed_sequence.size())];
    }
    SplitRng rng(cfg.seed, slot, kSymbolStream);
    return static_cast<int>(rng.next_below(static_cast<std::uint64_t>(symbol_count)));
}

std::int64_t draw_arrival(const TrialConfig& cfg, std::uint64_t slot, std::uint64_t substream,
                          std::int64_t n, double p) {
    SplitRng rng(cfg.seed, slot, substream);
    return cfg.arrival_model == ArrivalModel::binomial ? sample_binomial(rng, n, p)
                                                       : sample_binomial_gaussian(rng, n, p);
}

} // namespace

WilsonInterval wilson_95(std::uint64_t successes, std::uint64_t trials) {
    if (trials == 0) return {0.0, 1.0};
    if (successes > trials) throw std::domain_error("wilson_95: successes > trials");
    constexpr double z = 1.959963984540054; // 97.5th normal percentile
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / n;
    const double z2n = z * z / n;
    const double denom = 1.0 + z2n;
    const double center = (p + 0.5 * z2n) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / n + 0.25 * z2n / n) / denom;
    WilsonInterval ci{std::max(0.0, center - half), std::min(1.0, center + half)};
    if (successes == 0) ci.lo = 0.0;
    if (successes == trials) ci.hi = 1.0;
    return ci;
}

SimResult run(const ModulationDesign& design, const ChannelParams& params, const Topology& topo,
              const CirTable& table, const TrialConfig& config) {
    params.validate();
    topo.validate();
    design.concentrations.validate();
    if (design.symbol_count != design.concentrations.symbol_count()) {
        throw std::domain_error("montecarlo: design symbol count != level count");
    }
    if (config.rounds < 1) throw std::domain_error("montecarlo: rounds must be >= 1");
    if (config.threads < 1) throw std::domain_error("montecarlo: threads must be >= 1");
    if (config.symbol_source == SymbolSource::fixed_sequence) {
        if (config.fixed_sequence.empty()) {
            throw std::domain_error("montecarlo: fixed_sequence must be nonempty");
        }
        for (int s : config.fixed_sequence) {
            if (s < 0 || s >= design.symbol_count) {
                throw std::domain_error("montecarlo: fixed_sequence symbol out of range");
            }
        }
    }

    const std::size_t tx_count = topo.tx_count();
    const int memory = table.periods() - 1;
    const int m_syms = design.symbol_count;
    const auto& levels = design.concentrations.levels;

    auto simulate_rounds = [&](std::uint64_t round_begin, std::uint64_t round_end,
                               WorkerTally& tally) {
        for (std::uint64_t round = round_begin; round < round_end; ++round) {
            for (std::size_t pos = 0; pos < tx_count; ++pos) {
                const std::uint64_t slot = round * tx_count + pos;
                const int sym = symbol_at(slot, config, m_syms);

                std::int64_t observed = draw_arrival(
                    config, slot, kArrivalStream,
                    levels[static_cast<std::size_t>(sym)], table.per_tx[pos][0]);

                std::int64_t isi = 0;
                const std::uint64_t reach = std::min<std::uint64_t>(
                    static_cast<std::uint64_t>(memory), slot);
                for (std::uint64_t m = 1; m <= reach; ++m) {
                    const std::uint64_t past_slot = slot - m;
                    const std::size_t past_tx = static_cast<std::size_t>(past_slot % tx_count);
                    const int past_sym = symbol_at(past_slot, config, m_syms);
                    isi += draw_arrival(config, slot, kArrivalStream + m,
                                        levels[static_cast<std::size_t>(past_sym)],
                                        table.per_tx[past_tx][static_cast<std::size_t>(m)]);
                }
                observed += isi;

                const int decoded = decode(static_cast<double>(observed),
                                           design.thresholds_for_tx(pos), m_syms);
                CellTally& cell = tally.cells[pos * static_cast<std::size_t>(m_syms) +
                                              static_cast<std::size_t>(sym)];
                cell.trials += 1;
                cell.errors += decoded != sym ? 1 : 0;
                cell.obs_sum += static_cast<u128>(observed);
                cell.obs_sq_sum += static_cast<u128>(observed) * static_cast<u128>(observed);
                tally.isi_sum += static_cast<u128>(isi);
            }
        }
    };

    const int workers = static_cast<int>(
        std::min<std::uint64_t>(static_cast<std::uint64_t>(config.threads), config.rounds));
    std::vector<WorkerTally> tallies(static_cast<std::size_t>(workers));
    for (auto& t : tallies) t.cells.resize(tx_count * static_cast<std::size_t>(m_syms));

    if (workers == 1) {
        simulate_rounds(0, config.rounds, tallies[0]);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        const std::uint64_t base = config.rounds / static_cast<std::uint64_t>(workers);
        const std::uint64_t extra = config.rounds % static_cast<std::uint64_t>(workers);
        std::uint64_t begin = 0;
        for (int w = 0; w < workers; ++w) {
            const std::uint64_t count = base + (static_cast<std::uint64_t>(w) < extra ? 1 : 0);
            const std::uint64_t end = begin + count;
            pool.emplace_back([&, begin, end, w] {
                simulate_rounds(begin, end, tallies[static_cast<std::size_t>(w)]);
            });
            begin = end;
        }
        for (auto& th : pool) th.join();
    }

    // Exact integer merge: identical totals for any worker split.
    std::vector<CellTally> total(tx_count * static_cast<std::size_t>(m_syms));
    u128 isi_total = 0;
    for (const auto& t : tallies) {
        isi_total += t.isi_sum;
        for (std::size_t i = 0; i < total.size(); ++i) {
            total[i].errors += t.cells[i].errors;
            total[i].trials += t.cells[i].trials;
            total[i].obs_sum += t.cells[i].obs_sum;
            total[i].obs_sq_sum += t.cells[i].obs_sq_sum;
        }
    }

    SimResult result;
    result.rounds = config.rounds;
    result.seed = config.seed;
    result.errors.assign(tx_count, std::vector<std::uint64_t>(static_cast<std::size_t>(m_syms)));
    result.trials.assign(tx_count, std::vector<std::uint64_t>(static_cast<std::size_t>(m_syms)));
    result.observed_mean.assign(tx_count, std::vector<double>(static_cast<std::size_t>(m_syms)));
    result.observed_variance.assign(tx_count,
                                    std::vector<double>(static_cast<std::size_t>(m_syms)));
    result.per_tx_ser.resize(tx_count);
    result.per_tx_ci.resize(tx_count);

    std::uint64_t all_errors = 0;
    std::uint64_t all_trials = 0;
    for (std::size_t k = 0; k < tx_count; ++k) {
        std::uint64_t tx_errors = 0;
        std::uint64_t tx_trials = 0;
        for (int j = 0; j < m_syms; ++j) {
            const CellTally& cell = total[k * static_cast<std::size_t>(m_syms) +
                                          static_cast<std::size_t>(j)];
            result.errors[k][static_cast<std::size_t>(j)] = cell.errors;
            result.trials[k][static_cast<std::size_t>(j)] = cell.trials;
            tx_errors += cell.errors;
            tx_trials += cell.trials;
            if (cell.trials > 0) {
                const double n = static_cast<double>(cell.trials);
                const double mean = static_cast<double>(cell.obs_sum) / n;
                const double mean_sq = static_cast<double>(cell.obs_sq_sum) / n;
                result.observed_mean[k][static_cast<std::size_t>(j)] = mean;
                result.observed_variance[k][static_cast<std::size_t>(j)] =
                    cell.trials > 1 ? (mean_sq - mean * mean) * n / (n - 1.0) : 0.0;
            }
        }
        result.per_tx_ser[k] =
            tx_trials ? static_cast<double>(tx_errors) / static_cast<double>(tx_trials) : 0.0;
        result.per_tx_ci[k] = wilson_95(tx_errors, tx_trials);
        all_errors += tx_errors;
        all_trials += tx_trials;
    }
    result.network_ser =
        all_trials ? static_cast<double>(all_errors) / static_cast<double>(all_trials) : 0.0;
    result.network_ci = wilson_95(all_errors, all_trials);
    result.isi_mean = all_trials ? static_cast<double>(isi_total) / static_cast<double>(all_trials)
                                 : 0.0;
    return result;
}

std::vector<double> estimate_cir_empirical(const ChannelParams& params, double y,
                                           std::uint64_t n_molecules, std::uint64_t n_trials,
                                           int periods, std::uint64_t seed) {
    if (periods < 1) throw std::domain_error("estimate_cir_empirical: periods must be >= 1");
    if (n_molecules == 0 || n_trials == 0) {
        throw std::domain_error("estimate_cir_empirical: need molecules and trials");
    }
    const std::uint64_t total = n_molecules * n_trials;
    if (total / n_trials != n_molecules || total > (1ULL << 40)) {
        throw std::domain_error("estimate_cir_empirical: molecule budget too large");
    }
    std::vector<double> fractions(static_cast<std::size_t>(periods));
    for (int i = 1; i <= periods; ++i) {
        SplitRng rng(seed, static_cast<std::uint64_t>(i), 0);
        const std::int64_t hits =
            sample_binomial(rng, static_cast<std::int64_t>(total), cir(params, y, i));
        fractions[static_cast<std::size_t>(i - 1)] =
            static_cast<double>(hits) / static_cast<double>(total);
    }
    return fractions;
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

std::string sim_result_csv_header() {
    return "scheme,M,rho,d_bar,t_sym,k_memory,tx_index,symbol,p_error,source,ci_lo,ci_hi";
}

std::string sim_result_csv(const SimResult& result, const ModulationDesign& design, double d_bar,
                           double t_sym, int isi_memory) {
    std::ostringstream out;
    const std::string prefix = std::string(to_string(design.scheme)) + "," +
                               std::to_string(design.symbol_count) + "," +
                               fmt_short(design.rho) + "," + fmt_short(d_bar) + "," +
                               fmt_short(t_sym) + "," + std::to_string(isi_memory) + ",";
    for (std::size_t k = 0; k < result.errors.size(); ++k) {
        for (std::size_t j = 0; j < result.errors[k].size(); ++j) {
            const double ser = result.trials[k][j]
                                   ? static_cast<double>(result.errors[k][j]) /
                                         static_cast<double>(result.trials[k][j])
                                   : 0.0;
            out << prefix << (k + 1) << "," << j << "," << fmt_prob(ser) << ",montecarlo,,\n";
        }
    }
    for (std::size_t k = 0; k < result.per_tx_ser.size(); ++k) {
        out << prefix << (k + 1) << ",all," << fmt_prob(result.per_tx_ser[k]) << ",montecarlo,"
            << fmt_prob(result.per_tx_ci[k].lo) << "," << fmt_prob(result.per_tx_ci[k].hi) << "\n";
    }
    out << prefix << "all,all," << fmt_prob(result.network_ser) << ",montecarlo,"
        << fmt_prob(result.network_ci.lo) << "," << fmt_prob(result.network_ci.hi) << "\n";
    return out.str();
}

} // namespace cskct
