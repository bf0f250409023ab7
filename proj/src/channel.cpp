#include "cskct/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "cskct/errors.hpp"
#include "cskct/quadrature.hpp"

namespace cskct {

namespace {

// Absolute tolerance on each averaged CIR value; the H[i] differences that
// matter downstream are O(1e-3), so the quadrature must sit far below that.
constexpr double kAvgCirTol = 1e-10;

} // namespace

void ChannelParams::validate() const {
    if (!(diffusion > 0.0)) throw std::domain_error("ChannelParams: diffusion must be > 0");
    if (!(receiver_radius > 0.0)) throw std::domain_error("ChannelParams: receiver_radius must be > 0");
    if (!(symbol_period > 0.0)) throw std::domain_error("ChannelParams: symbol_period must be > 0");
    if (!(sampling_period > 0.0)) throw std::domain_error("ChannelParams: sampling_period must be > 0");
}

void Topology::validate() const {
    if (distances.empty()) throw std::domain_error("Topology: need at least one transmitter");
    if (!(y_min > 0.0) || !(y_max >= y_min)) {
        throw std::domain_error("Topology: require 0 < y_min <= y_max");
    }
    for (double y : distances) {
        if (!(y >= y_min) || !(y <= y_max)) {
            throw std::domain_error("Topology: transmitter distance outside [y_min, y_max]");
        }
    }
    int k_max = static_cast<int>(distances.size()) - 1;
    if (isi_memory < 0 || isi_memory > k_max) {
        throw std::domain_error("Topology: isi_memory must be in [0, K-1]");
    }
}

Topology Topology::grid_1um(double y_min, double y_max, int memory) {
    Topology topo;
    topo.y_min = y_min;
    topo.y_max = y_max;
    int count = static_cast<int>(std::lround(y_max - y_min)) + 1;
    topo.distances.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) topo.distances.push_back(y_min + i);
    topo.isi_memory = memory < 0 ? count - 1 : memory;
    topo.validate();
    return topo;
}

Topology Topology::single(double y) {
    Topology topo;
    topo.y_min = y;
    topo.y_max = y;
    topo.distances = {y};
    topo.isi_memory = 0;
    topo.validate();
    return topo;
}

double hit_rate(const ChannelParams& params, double y, double t) {
    params.validate();
    if (!(y > 0.0)) throw std::domain_error("hit_rate: y must be > 0");
    if (!(t > 0.0)) throw std::domain_error("hit_rate: t must be > 0");
    const double r = params.receiver_radius;
    const double d = params.diffusion;
    return r / (y + r) * y / std::sqrt(4.0 * std::numbers::pi * d * t * t * t) *
           std::exp(-y * y / (4.0 * d * t));
}

double cum_hit(const ChannelParams& params, double y, double t) {
    params.validate();
    if (!(y > 0.0)) throw std::domain_error("cum_hit: y must be > 0");
    if (t < 0.0) throw std::domain_error("cum_hit: t must be >= 0");
    if (t == 0.0) return 0.0;
    const double r = params.receiver_radius;
    return r / (y + r) * std::erfc(y / std::sqrt(4.0 * params.diffusion * t));
}

double cir(const ChannelParams& params, double y, int period) {
    if (period < 1) throw std::domain_error("cir: period index must be >= 1");
    return cum_hit(params, y, period * params.symbol_period) -
           cum_hit(params, y, (period - 1) * params.symbol_period);
}

double averaged_cir(const ChannelParams& params, double y_min, double y_max, int period) {
    if (period < 1) throw std::domain_error("averaged_cir: period index must be >= 1");
    if (!(y_min > 0.0)) throw std::domain_error("averaged_cir: y_min must be > 0");
    if (!(y_max > y_min)) {
        throw degenerate_interval_error(
            "averaged_cir: y_max <= y_min (use the per-distance cir for point topologies)");
    }
    const double width = y_max - y_min;
    double integral = integrate_adaptive(
        [&](double y) { return cir(params, y, period); }, y_min, y_max, kAvgCirTol * width);
    return integral / width;
}

CirTable build_cir_table(const ChannelParams& params, const Topology& topo) {
    params.validate();
    topo.validate();
    const int periods = topo.isi_memory + 1;

    CirTable table;
    table.per_tx.resize(topo.tx_count());
    for (std::size_t k = 0; k < topo.tx_count(); ++k) {
        table.per_tx[k].resize(static_cast<std::size_t>(periods));
        for (int i = 1; i <= periods; ++i) {
            table.per_tx[k][static_cast<std::size_t>(i - 1)] = cir(params, topo.distances[k], i);
        }
    }

    table.averaged.resize(static_cast<std::size_t>(periods));
    for (int i = 1; i <= periods; ++i) {
        table.averaged[static_cast<std::size_t>(i - 1)] =
            topo.is_point() ? cir(params, topo.y_min, i)
                            : averaged_cir(params, topo.y_min, topo.y_max, i);
    }
    return table;
}

} // namespace cskct
