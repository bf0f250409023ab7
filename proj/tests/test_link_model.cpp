#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "cskct/channel.hpp"
#include "cskct/link_model.hpp"
#include "test_support.hpp"

using namespace cskct;

namespace {

const ChannelParams kParams{79.4, 5.0, 21.12, 0.32};

// Brute-force distance average of one CIR tap, independent of the library's
// adaptive quadrature.
double avg_cir_oracle(double y_min, double y_max, int period) {
    auto f = [&](long double y) {
        return static_cast<long double>(cir(kParams, static_cast<double>(y), period));
    };
    return static_cast<double>(oracle::simpson(f, y_min, y_max, 200000) / (y_max - y_min));
}

} // namespace

TEST_CASE("concentration set invariants") {
    CHECK_THROWS_AS(ConcentrationSet({1000}), std::domain_error);
    CHECK_THROWS_AS(ConcentrationSet({1000, 1000}), std::domain_error);
    CHECK_THROWS_AS(ConcentrationSet({2000, 1000}), std::domain_error);
    CHECK_THROWS_AS(ConcentrationSet({-1, 1000}), std::domain_error);

    ConcentrationSet cset({1000, 2386, 5693, 13581});
    CHECK(cset.symbol_count() == 4);
    CHECK(cset.bits_per_symbol() == 2);
    CHECK(cset.mean() == doctest::Approx((1000.0 + 2386.0 + 5693.0 + 13581.0) / 4.0));

    ConcentrationSet three({1, 2, 4});
    CHECK(three.symbol_count() == 3);
    CHECK_THROWS_AS(three.bits_per_symbol(), std::domain_error);
}

TEST_CASE("expected signal strength") {
    CHECK(expected_signal(0.0, 0.3) == 0.0);
    CHECK(expected_signal(1.0, 1.0) == 1.0);
    CHECK_THROWS_AS(expected_signal(-1.0, 0.5), std::domain_error);
    CHECK_THROWS_AS(expected_signal(1.0, 1.5), std::domain_error);

    const double h1 = averaged_cir(kParams, 6.0, 17.0, 1);
    CHECK(expected_signal(1693.0, h1) == doctest::Approx(1693.0 * h1));
    CHECK(expected_signal(1693.0, h1) ==
          doctest::Approx(1693.0 * avg_cir_oracle(6, 17, 1)).epsilon(1e-7));
}

TEST_CASE("expected ISI") {
    const Topology topo = Topology::grid_1um(6.0, 17.0); // K=12, memory 11
    const CirTable table = build_cir_table(kParams, topo);

    CHECK(expected_isi(1693.0, table.averaged, 0) == 0.0);

    // quadrature oracle for the k=11 tail sum
    double tail = 0.0;
    for (int i = 2; i <= 12; ++i) tail += avg_cir_oracle(6.0, 17.0, i);
    const double e_isi = expected_isi(1693.0, table);
    CHECK(e_isi == doctest::Approx(1693.0 * tail).epsilon(1e-7));
    CHECK(e_isi > 50.0);
    CHECK(e_isi < 65.0);

    // nondecreasing in memory
    double prev = 0.0;
    for (int k = 0; k <= 11; ++k) {
        double v = expected_isi(1693.0, table.averaged, k);
        CHECK(v >= prev);
        prev = v;
    }

    CHECK_THROWS_AS(expected_isi(1693.0, table.averaged, 12), std::length_error);
}

TEST_CASE("conditional moments") {
    const Topology topo = Topology::grid_1um(6.0, 17.0);
    const CirTable table = build_cir_table(kParams, topo);
    const ConcentrationSet cset({1000, 2386});

    CHECK_THROWS_AS(conditional_moments(1500, 17.0, cset, kParams, table), std::domain_error);

    SUBCASE("no memory: pure binomial moments") {
        const CirTable bare = build_cir_table(kParams, Topology::grid_1um(6.0, 17.0, 0));
        const SignalMoments m = conditional_moments(2386, 17.0, cset, kParams, bare);
        const double h = cir(kParams, 17.0, 1);
        CHECK(m.mean == doctest::Approx(2386.0 * h));
        CHECK(m.variance == doctest::Approx(2386.0 * h * (1.0 - h)));
        CHECK(m.isi_mean == 0.0);
        CHECK(m.isi_variance == 0.0);
    }

    SUBCASE("with memory: anchors the reference threshold") {
        const SignalMoments m = conditional_moments(2386, 17.0, cset, kParams, table);
        const double h = cir(kParams, 17.0, 1);
        CHECK(m.signal_mean == doctest::Approx(2386.0 * h)); // ~417
        CHECK(m.isi_mean == doctest::Approx(expected_isi(cset.mean(), table)));
        CHECK(m.mean == doctest::Approx(m.signal_mean + m.isi_mean));
        // within 2% of the reference 478-molecule threshold anchor
        CHECK(std::abs(m.mean - 478.0) / 478.0 < 0.02);
    }

    SUBCASE("identities and monotonicity") {
        const SignalMoments lo = conditional_moments(1000, 9.0, cset, kParams, table);
        const SignalMoments hi = conditional_moments(2386, 9.0, cset, kParams, table);
        CHECK(hi.mean > lo.mean);
        CHECK(hi.signal_variance > lo.signal_variance);
        CHECK(lo.variance == doctest::Approx(lo.signal_variance + lo.isi_variance));
        CHECK(lo.mean >= lo.isi_mean);
        // Bernoulli sums keep variance below mean
        CHECK(lo.variance < lo.mean);
        CHECK(hi.variance < hi.mean);
    }

    SUBCASE("averaged conditioning recovers the ensemble expressions") {
        const double h1 = table.avg_cir(1);
        const auto q_bar_level = static_cast<std::int64_t>(cset.mean());
        const SignalMoments m = conditional_moments_at(q_bar_level, h1, cset.mean(), table);
        CHECK(m.signal_mean ==
              doctest::Approx(expected_signal(static_cast<double>(q_bar_level), h1)));
        CHECK(m.isi_mean == doctest::Approx(expected_isi(cset.mean(), table)));
        CHECK(m.isi_variance == doctest::Approx(isi_variance(cset.mean(), table)));
    }
}
