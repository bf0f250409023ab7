#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <sstream>

#include "cskct/errors.hpp"
#include "cskct/experiments.hpp"

using namespace cskct;

namespace {

std::vector<std::string> data_lines(const std::string& csv) {
    std::vector<std::string> lines;
    std::istringstream in(csv);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line[0] != '#') lines.push_back(line);
    }
    return lines;
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    fields.push_back(cur);
    return fields;
}

} // namespace

TEST_CASE("config parsing") {
    SUBCASE("defaults match the reference setup") {
        const ExperimentConfig cfg;
        CHECK(cfg.params.diffusion == 79.4);
        CHECK(cfg.params.receiver_radius == 5.0);
        CHECK(cfg.params.symbol_period == 21.12);
        CHECK(cfg.params.sampling_period == 0.32);
        CHECK(cfg.y_min == 6.0);
        CHECK(cfg.y_max == 17.0);
        const Topology topo = cfg.topology();
        CHECK(topo.tx_count() == 12);
        CHECK(topo.isi_memory == 11);
    }

    SUBCASE("file body with comments and overrides") {
        const ExperimentConfig cfg = ExperimentConfig::from_string(
            "# reference point\n"
            "t_sym_s = 10.24\n"
            "d_bar_um = 13.5\n"
            "rho=1.24\n"
            "M=4\n"
            "scheme=benchmark\n"
            "k_memory = 3\n"
            "seed=99\n");
        CHECK(cfg.params.symbol_period == 10.24);
        CHECK(cfg.effective_y_max() == 21.0);
        CHECK(cfg.scheme == Scheme::benchmark);
        const Topology topo = cfg.topology();
        CHECK(topo.tx_count() == 16);
        CHECK(topo.isi_memory == 3);
        CHECK(cfg.seed == 99);
    }

    SUBCASE("d_bar derives the 1um grid") {
        ExperimentConfig cfg;
        cfg.set("d_bar_um", "12.5");
        const Topology topo = cfg.topology();
        CHECK(topo.y_max == 19.0);
        CHECK(topo.tx_count() == 14);
        CHECK(topo.distances[1] == doctest::Approx(7.0));
    }

    SUBCASE("errors") {
        ExperimentConfig cfg;
        CHECK_THROWS_AS(cfg.set("unknown_key", "1"), config_error);
        CHECK_THROWS_AS(cfg.set("rho", "fast"), config_error);
        CHECK_THROWS_AS(cfg.set("M", "3"), config_error);
        CHECK_THROWS_AS(cfg.set("M", "1"), config_error);
        CHECK_THROWS_AS(cfg.set("scheme", "mystery"), config_error);
        CHECK_THROWS_AS(ExperimentConfig::from_string("just a line\n"), config_error);
        CHECK_THROWS_AS(ExperimentConfig::from_file("/nonexistent/path.cfg"), config_error);

        cfg = ExperimentConfig{};
        cfg.set("K", "1");
        CHECK_THROWS_AS(cfg.topology(), config_error); // K=1 needs y_min == y_max
        cfg.set("y_max_um", "6");
        CHECK(cfg.topology().tx_count() == 1);
    }

    SUBCASE("fixed symbol sequence") {
        ExperimentConfig cfg;
        cfg.set("fixed_sequence", "0,1,1,0");
        CHECK(cfg.fixed_sequence == std::vector<int>{0, 1, 1, 0});
        CHECK(cfg.echo_comments("montecarlo").find("# fixed_sequence=0,1,1,0\n") !=
              std::string::npos);
        CHECK_THROWS_AS(cfg.set("fixed_sequence", "0,x"), config_error);
    }

    SUBCASE("benchmark level defaults") {
        ExperimentConfig cfg;
        cfg.set("scheme", "benchmark");
        CHECK(cfg.benchmark_concentrations().levels == std::vector<std::int64_t>{1000, 1500});
        cfg.set("M", "4");
        CHECK(cfg.benchmark_concentrations().levels ==
              std::vector<std::int64_t>{1000, 1500, 2000, 3000});
        cfg.set("M", "8");
        CHECK_THROWS_AS(cfg.benchmark_concentrations(), config_error);
        cfg.set("bench_q", "10,20,30,40,50,60,70,80");
        CHECK(cfg.benchmark_concentrations().symbol_count() == 8);
        cfg.set("bench_q", "10,20");
        CHECK_THROWS_AS(cfg.benchmark_concentrations(), config_error);
    }
}

TEST_CASE("value list parsing") {
    CHECK(parse_value_list("1,2,3") == std::vector<double>{1.0, 2.0, 3.0});
    const auto range = parse_value_list("1:2:0.5");
    REQUIRE(range.size() == 3);
    CHECK(range[0] == 1.0);
    CHECK(range[2] == 2.0);
    CHECK_THROWS_AS(parse_value_list("1:2"), config_error);
    CHECK_THROWS_AS(parse_value_list("2:1:0.5"), config_error);
    CHECK_THROWS_AS(parse_value_list(""), config_error);
    CHECK(parse_token_list("a, b,c") == std::vector<std::string>{"a", "b", "c"});
}

TEST_CASE("design command") {
    ExperimentConfig cfg;
    cfg.set("d_bar_um", "13.5");
    cfg.set("M", "4");

    SUBCASE("csk-ct text and csv") {
        const std::string text = cmd_design_text(cfg);
        CHECK(text.find("gamma") != std::string::npos);
        CHECK(text.find("1000 3025 9151") != std::string::npos);

        const std::string csv = cmd_design_csv(cfg);
        const auto lines = data_lines(csv);
        REQUIRE(lines.size() == 5); // header + 4 level rows
        CHECK(lines[0] == "d_bar,scheme,M,rho,gamma,index,Q,tau");
        const auto row0 = split(lines[1]);
        CHECK(row0[0] == "13.5");
        CHECK(row0[1] == "csk-ct");
        CHECK(row0[6] == "1000");
        // reference row: Q={1000,3025,9151,27681}, tau={789,1633,4188}
        CHECK(std::abs(std::stod(split(lines[2])[6]) - 3025.0) <= 1.0);
        CHECK(std::abs(std::stod(split(lines[3])[6]) - 9151.0) <= 1.0);
        CHECK(std::abs(std::stod(split(lines[4])[6]) - 27681.0) <= 1.0);
        CHECK(std::abs(std::stod(split(lines[1])[7]) - 789.0) / 789.0 < 0.02);
        CHECK(std::abs(std::stod(split(lines[2])[7]) - 1633.0) / 1633.0 < 0.02);
        CHECK(std::abs(std::stod(split(lines[3])[7]) - 4188.0) / 4188.0 < 0.02);
    }

    SUBCASE("another reference point") {
        ExperimentConfig point;
        point.set("d_bar_um", "12");
        point.set("rho", "1.24");
        const std::string csv = cmd_design_csv(point);
        const auto lines = data_lines(csv);
        REQUIRE(lines.size() == 3);
        CHECK(std::abs(std::stod(split(lines[2])[6]) - 3174.0) <= 1.0);
        CHECK(std::abs(std::stod(split(lines[1])[7]) - 544.0) / 544.0 < 0.02);
    }

    SUBCASE("benchmark passthrough emits the threshold matrix") {
        cfg.set("scheme", "benchmark");
        const std::string csv = cmd_design_csv(cfg);
        const auto lines = data_lines(csv);
        // header + 4 levels + matrix header + 16*3 threshold rows
        REQUIRE(lines.size() == 1 + 4 + 1 + 48);
        CHECK(lines[5] == "tx_index,y_um,threshold_index,tau");
        const auto row = split(lines[6]);
        CHECK(row[0] == "1");
        CHECK(row[1] == "6");
        const std::string text = cmd_design_text(cfg);
        CHECK(text.find("tau_tx16") != std::string::npos);
    }

    SUBCASE("infeasible design propagates") {
        ExperimentConfig bad;
        bad.set("y_min_um", "16");
        bad.set("y_max_um", "17");
        bad.set("Q0", "1");
        bad.set("rho", "1");
        bad.set("M", "4");
        // gamma ~ 1.08 with Q0=1: rounding collapses adjacent levels
        CHECK_THROWS_AS(cmd_design_csv(bad), infeasible_design_error);
    }
}

TEST_CASE("gamma sweep command") {
    const ExperimentConfig cfg;
    const std::string csv =
        cmd_gamma_sweep_csv(cfg, {1.28, 2.56, 5.12, 10.24, 20.48, 32.0},
                            {17.0, 18.0, 19.0, 20.0, 21.0});
    const auto lines = data_lines(csv);
    CHECK(lines[0] == "t_sym_s,y_max_um,gamma");
    REQUIRE(lines.size() == 1 + 6 * 5);

    // strictly decreasing along each y_max series, increasing across y_max
    for (std::size_t ymax_idx = 0; ymax_idx < 5; ++ymax_idx) {
        double prev = 1e300;
        for (std::size_t t_idx = 0; t_idx < 6; ++t_idx) {
            const double g = std::stod(split(lines[1 + t_idx * 5 + ymax_idx])[2]);
            CHECK(g < prev);
            prev = g;
        }
    }
    for (std::size_t t_idx = 0; t_idx < 6; ++t_idx) {
        double prev = 0.0;
        for (std::size_t ymax_idx = 0; ymax_idx < 5; ++ymax_idx) {
            const double g = std::stod(split(lines[1 + t_idx * 5 + ymax_idx])[2]);
            CHECK(g > prev);
            prev = g;
        }
    }
}

TEST_CASE("ser sweep command") {
    ExperimentConfig cfg;
    cfg.set("M", "2");

    SUBCASE("rho sweep stays in one channel") {
        SweepSpec spec;
        spec.parameter = "rho";
        spec.values = {"1", "1.12", "1.24"};
        const auto lines = data_lines(cmd_ser_csv(cfg, spec));
        CHECK(lines[0] == "rho,scheme,M,rho,k_memory,p_e_analytic,status");
        REQUIRE(lines.size() == 4);
        double prev = 1.0;
        for (std::size_t i = 1; i < lines.size(); ++i) {
            const auto row = split(lines[i]);
            CHECK(row.back() == "ok");
            const double pe = std::stod(row[5]);
            CHECK(pe < prev);
            prev = pe;
        }
    }

    SUBCASE("no-ISI error rate grows with the symbol period") {
        ExperimentConfig point;
        point.set("k_memory", "0");
        point.set("rho", "1.24");
        SweepSpec spec;
        spec.parameter = "t_sym";
        spec.values = {"1.28", "2.56", "5.12", "10.24", "20.48", "32"};
        const auto lines = data_lines(cmd_ser_csv(point, spec));
        REQUIRE(lines.size() == 7);
        double prev = 0.0;
        for (std::size_t i = 1; i < lines.size(); ++i) {
            const double pe = std::stod(split(lines[i])[5]);
            CHECK(pe >= prev);
            prev = pe;
        }
    }

    SUBCASE("scheme sweep") {
        SweepSpec spec;
        spec.parameter = "scheme";
        spec.values = {"csk-ct", "benchmark"};
        const auto lines = data_lines(cmd_ser_csv(cfg, spec));
        REQUIRE(lines.size() == 3);
        CHECK(split(lines[1])[1] == "csk-ct");
        CHECK(split(lines[2])[1] == "benchmark");
    }

    SUBCASE("infeasible points are blank with a flag, sweep continues") {
        ExperimentConfig tiny;
        tiny.set("y_min_um", "16");
        tiny.set("y_max_um", "17");
        tiny.set("Q0", "1");
        SweepSpec spec;
        // rho=1 collapses the rounded levels at gamma ~ 1.07; rho=8 survives
        spec.parameter = "rho";
        spec.values = {"1", "8"};
        const auto lines = data_lines(cmd_ser_csv(tiny, spec));
        REQUIRE(lines.size() == 3);
        const auto bad = split(lines[1]);
        CHECK(bad.back() == "infeasible");
        CHECK(bad[5].empty());
        CHECK(split(lines[2]).back() == "ok");
    }

    SUBCASE("unknown parameter is a config error") {
        SweepSpec spec;
        spec.parameter = "Q0";
        spec.values = {"1000"};
        CHECK_THROWS_AS(cmd_ser_csv(cfg, spec), config_error);
    }

    SUBCASE("montecarlo columns when requested") {
        ExperimentConfig quick;
        quick.set("mc_rounds", "2000");
        quick.set("mc_threads", "2");
        SweepSpec spec;
        spec.parameter = "rho";
        spec.values = {"1.12"};
        spec.with_montecarlo = true;
        const auto lines = data_lines(cmd_ser_csv(quick, spec));
        CHECK(lines[0] ==
              "rho,scheme,M,rho,k_memory,p_e_analytic,ser_empirical,ci_lo,ci_hi,status");
        const auto row = split(lines[1]);
        REQUIRE(row.size() == 10);
        CHECK(std::stod(row[7]) <= std::stod(row[6]));
        CHECK(std::stod(row[6]) <= std::stod(row[8]));
    }
}

TEST_CASE("complexity command") {
    ExperimentConfig cfg;
    cfg.set("M", "4");
    const auto lines = data_lines(cmd_complexity_csv(cfg, {1, 16, 100}));
    CHECK(lines[0] == "K,scheme,M,threshold_count,cir_count");
    REQUIRE(lines.size() == 1 + 3 * 2);
    CHECK(lines[1] == "1,csk-ct,4,3,2");
    CHECK(lines[2] == "1,benchmark,4,3,1");
    CHECK(lines[3] == "16,csk-ct,4,3,2");
    CHECK(lines[4] == "16,benchmark,4,48,16");
    CHECK(lines[5] == "100,csk-ct,4,3,2");
    CHECK(lines[6] == "100,benchmark,4,300,100");
}

TEST_CASE("montecarlo command") {
    ExperimentConfig cfg;
    cfg.set("mc_rounds", "3000");
    cfg.set("mc_threads", "2");
    cfg.set("k_memory", "0");
    cfg.set("rho", "1.12");

    const std::string csv = cmd_montecarlo_csv(cfg);
    const auto lines = data_lines(csv);
    CHECK(lines[0] ==
          "scheme,M,rho,d_bar,t_sym,k_memory,tx_index,symbol,p_error,source,ci_lo,ci_hi");
    // 12 tx * 2 symbols + 12 + 1 rows for each of analytic and montecarlo
    REQUIRE(lines.size() == 1 + 2 * (24 + 12 + 1));
    int analytic_rows = 0;
    int mc_rows = 0;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto row = split(lines[i]);
        REQUIRE(row.size() == 12);
        if (row[9] == "analytic") ++analytic_rows;
        if (row[9] == "montecarlo") ++mc_rows;
    }
    CHECK(analytic_rows == 37);
    CHECK(mc_rows == 37);

    SUBCASE("byte-identical rerun and thread-count invariance") {
        const std::string again = cmd_montecarlo_csv(cfg);
        CHECK(csv == again);
        ExperimentConfig eight = cfg;
        eight.set("mc_threads", "8");
        CHECK(cmd_montecarlo_csv(eight) == csv);
    }
}

TEST_CASE("cir dump command") {
    ExperimentConfig cfg;
    cfg.set("k_memory", "2");
    const auto lines = data_lines(cmd_cir_dump_csv(cfg));
    CHECK(lines[0] == "tx_index,y_um,period,cir");
    // 12 tx * 3 periods + 3 averaged rows
    REQUIRE(lines.size() == 1 + 36 + 3);
    CHECK(split(lines[1])[0] == "1");
    CHECK(split(lines.back())[0] == "all");
}

TEST_CASE("config echo and timestamp control") {
    ExperimentConfig cfg;
    cfg.set("d_bar_um", "11.5");
    const std::string echo = cfg.echo_comments("ser");
    CHECK(echo.find("# command=ser\n") != std::string::npos);
    CHECK(echo.find("# D_um2_per_s=79.4\n") != std::string::npos);
    CHECK(echo.find("# K=12\n") != std::string::npos);
    CHECK(echo.find("# k_memory=11\n") != std::string::npos);

    EmitOptions stamped;
    stamped.timestamp = true;
    const std::string with_stamp = cmd_complexity_csv(cfg, {1}, stamped);
    CHECK(with_stamp.find("# generated_at=") != std::string::npos);
    const std::string without = cmd_complexity_csv(cfg, {1});
    CHECK(without.find("# generated_at=") == std::string::npos);
}
