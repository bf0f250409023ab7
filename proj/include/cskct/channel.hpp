#pragma once

#include <cstddef>
#include <vector>

namespace cskct {

/// Physical constants of the diffusive medium and the absorbing spherical
/// receiver.  Units are fixed project-wide: micrometres for length, seconds
/// for time, molecule counts for concentration.
struct ChannelParams {
    double diffusion = 79.4;       ///< diffusion coefficient, um^2/s
    double receiver_radius = 5.0;  ///< fully absorbing sphere radius, um
    double symbol_period = 21.12;  ///< slot duration, s
    double sampling_period = 0.32; ///< receiver sampling period, s (metadata; unused analytically)

    void validate() const;
};

/// Transmitter placement around the receiver.  Distances are
/// nearest-surface distances; the continuous distance distribution is
/// uniform on [y_min, y_max].  isi_memory is the number of prior slots
/// whose transmissions interfere with the current one (0 = ISI-free mode,
/// at most K-1 otherwise).
struct Topology {
    double y_min = 0.0;
    double y_max = 0.0;
    std::vector<double> distances;
    int isi_memory = 0;

    std::size_t tx_count() const { return distances.size(); }
    bool is_point() const { return y_min == y_max; }

    void validate() const;

    /// One transmitter per whole micrometre on [y_min, y_max], full channel
    /// memory K-1 unless a shorter memory is requested (memory < 0 => K-1).
    static Topology grid_1um(double y_min, double y_max, int memory = -1);

    /// Single transmitter at distance y (ISI-free).
    static Topology single(double y);
};

/// Per-transmitter and distance-averaged channel impulse responses,
/// h(y_k, i) and the uniform-distance average, for periods i = 1..isi_memory+1.
struct CirTable {
    std::vector<std::vector<double>> per_tx; ///< [tx][i-1], K x (memory+1)
    std::vector<double> averaged;            ///< [i-1], memory+1 entries

    int periods() const { return static_cast<int>(averaged.size()); }

    /// h(y_k, i) for 1-based period i.
    double tx_cir(std::size_t tx, int period) const { return per_tx.at(tx).at(period - 1); }
    /// Distance-averaged CIR for 1-based period i.
    double avg_cir(int period) const { return averaged.at(period - 1); }
};

/// First-passage rate of molecules released at distance y onto the receiver
/// surface at time t.  Positive y and t required.
double hit_rate(const ChannelParams& params, double y, double t);

/// Fraction of released molecules absorbed by time t.  Exactly 0 at t = 0;
/// monotone nondecreasing in t with asymptote r/(y+r).
double cum_hit(const ChannelParams& params, double y, double t);

/// Probability of absorption during the i-th symbol period (i >= 1),
/// i.e. cum_hit at i*t_sym minus cum_hit at (i-1)*t_sym.
double cir(const ChannelParams& params, double y, int period);

/// cir averaged over the uniform distance distribution on [y_min, y_max],
/// evaluated by adaptive quadrature to ~1e-10 absolute.
/// Throws degenerate_interval_error when y_max <= y_min; point topologies
/// substitute the per-distance value instead (see build_cir_table).
double averaged_cir(const ChannelParams& params, double y_min, double y_max, int period);

/// Materialises per-transmitter and averaged CIRs for periods 1..isi_memory+1.
/// For a point topology (y_min == y_max) the averaged column equals the
/// per-distance values.
CirTable build_cir_table(const ChannelParams& params, const Topology& topo);

} // namespace cskct
