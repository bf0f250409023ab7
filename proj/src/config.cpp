#include "cskct/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "cskct/errors.hpp"

namespace cskct {

namespace {

std::string trim(const std::string& s) {
    auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw config_error("bad numeric value for " + key + ": '" + value + "'");
    }
}

std::int64_t parse_int(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        std::int64_t v = std::stoll(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw config_error("bad integer value for " + key + ": '" + value + "'");
    }
}

std::string fmt_g(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

} // namespace

void ExperimentConfig::set(const std::string& key, const std::string& value) {
    if (key == "D_um2_per_s") {
        params.diffusion = parse_double(key, value);
    } else if (key == "r_um") {
        params.receiver_radius = parse_double(key, value);
    } else if (key == "t_sym_s") {
        params.symbol_period = parse_double(key, value);
    } else if (key == "dt_s") {
        params.sampling_period = parse_double(key, value);
    } else if (key == "y_min_um") {
        y_min = parse_double(key, value);
    } else if (key == "y_max_um") {
        y_max = parse_double(key, value);
        d_bar.reset();
    } else if (key == "d_bar_um") {
        d_bar = parse_double(key, value);
    } else if (key == "K") {
        tx_count = static_cast<int>(parse_int(key, value));
    } else if (key == "k_memory") {
        isi_memory = static_cast<int>(parse_int(key, value));
    } else if (key == "rho") {
        rho = parse_double(key, value);
    } else if (key == "Q0") {
        q0 = parse_int(key, value);
    } else if (key == "M") {
        int m = static_cast<int>(parse_int(key, value));
        if (m < 2 || (m & (m - 1)) != 0) {
            throw config_error("M must be a power of two >= 2, got " + value);
        }
        symbol_count = m;
    } else if (key == "scheme") {
        try {
            scheme = scheme_from_string(value);
        } catch (const std::exception& e) {
            throw config_error(e.what());
        }
    } else if (key == "seed") {
        seed = static_cast<std::uint64_t>(parse_int(key, value));
    } else if (key == "bench_q") {
        bench_levels.clear();
        for (const auto& tok : parse_token_list(value)) {
            bench_levels.push_back(parse_int(key, tok));
        }
    } else if (key == "mc_rounds") {
        mc_rounds = static_cast<std::uint64_t>(parse_int(key, value));
    } else if (key == "mc_threads") {
        mc_threads = static_cast<int>(parse_int(key, value));
    } else if (key == "fixed_sequence") {
        fixed_sequence.clear();
        for (const auto& tok : parse_token_list(value)) {
            fixed_sequence.push_back(static_cast<int>(parse_int(key, tok)));
        }
    } else if (key == "arrival_model") {
        if (value == "binomial") {
            arrival_model = ArrivalModel::binomial;
        } else if (value == "gaussian") {
            arrival_model = ArrivalModel::gaussian;
        } else {
            throw config_error("arrival_model must be binomial or gaussian, got " + value);
        }
    } else {
        throw config_error("unknown config key: " + key);
    }
}

double ExperimentConfig::effective_y_max() const {
    return d_bar ? 2.0 * *d_bar - y_min : y_max;
}

Topology ExperimentConfig::topology() const {
    const double ymax = effective_y_max();
    if (!(y_min > 0.0)) throw config_error("y_min_um must be > 0");
    if (ymax < y_min) throw config_error("derived y_max < y_min");

    int count = tx_count;
    if (count == 0) count = static_cast<int>(std::lround(ymax - y_min)) + 1;
    if (count < 1) throw config_error("K must be >= 1");
    if (count == 1 && ymax != y_min) {
        throw config_error("K=1 requires y_min_um == y_max_um");
    }

    Topology topo;
    topo.y_min = y_min;
    topo.y_max = ymax;
    topo.distances.reserve(static_cast<std::size_t>(count));
    if (count == 1) {
        topo.distances.push_back(y_min);
    } else {
        const double step = (ymax - y_min) / (count - 1);
        for (int i = 0; i < count; ++i) topo.distances.push_back(y_min + i * step);
        topo.distances.back() = ymax;
    }
    topo.isi_memory = isi_memory < 0 ? count - 1 : isi_memory;
    try {
        topo.validate();
    } catch (const std::exception& e) {
        throw config_error(e.what());
    }
    return topo;
}

ConcentrationSet ExperimentConfig::benchmark_concentrations() const {
    std::vector<std::int64_t> levels = bench_levels;
    if (levels.empty()) {
        if (symbol_count == 2) {
            levels = {1000, 1500};
        } else if (symbol_count == 4) {
            levels = {1000, 1500, 2000, 3000};
        } else {
            throw config_error("benchmark scheme with M=" + std::to_string(symbol_count) +
                               " needs explicit bench_q levels");
        }
    }
    if (static_cast<int>(levels.size()) != symbol_count) {
        throw config_error("bench_q must list exactly M levels");
    }
    try {
        return ConcentrationSet(std::move(levels));
    } catch (const std::exception& e) {
        throw config_error(e.what());
    }
}

std::string ExperimentConfig::echo_comments(const std::string& command) const {
    const Topology topo = topology();
    std::ostringstream out;
    out << "# command=" << command << "\n";
    out << "# D_um2_per_s=" << fmt_g(params.diffusion) << "\n";
    out << "# r_um=" << fmt_g(params.receiver_radius) << "\n";
    out << "# t_sym_s=" << fmt_g(params.symbol_period) << "\n";
    out << "# dt_s=" << fmt_g(params.sampling_period) << "\n";
    out << "# y_min_um=" << fmt_g(y_min) << "\n";
    out << "# y_max_um=" << fmt_g(topo.y_max) << "\n";
    if (d_bar) out << "# d_bar_um=" << fmt_g(*d_bar) << "\n";
    out << "# K=" << topo.tx_count() << "\n";
    out << "# k_memory=" << topo.isi_memory << "\n";
    out << "# rho=" << fmt_g(rho) << "\n";
    out << "# Q0=" << q0 << "\n";
    out << "# M=" << symbol_count << "\n";
    out << "# scheme=" << to_string(scheme) << "\n";
    out << "# seed=" << seed << "\n";
    if (scheme == Scheme::benchmark) {
        out << "# bench_q=";
        const auto levels = benchmark_concentrations().levels;
        for (std::size_t i = 0; i < levels.size(); ++i) {
            if (i) out << ",";
            out << levels[i];
        }
        out << "\n";
    }
    // worker count deliberately left out: results are thread-count invariant
    out << "# mc_rounds=" << mc_rounds << "\n";
    out << "# arrival_model="
        << (arrival_model == ArrivalModel::binomial ? "binomial" : "gaussian") << "\n";
    if (!fixed_sequence.empty()) {
        out << "# fixed_sequence=";
        for (std::size_t i = 0; i < fixed_sequence.size(); ++i) {
            if (i) out << ",";
            out << fixed_sequence[i];
        }
        out << "\n";
    }
    return out.str();
}

ExperimentConfig ExperimentConfig::from_string(const std::string& text) {
    ExperimentConfig cfg;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string s = trim(line);
        if (s.empty() || s[0] == '#') continue;
        auto eq = s.find('=');
        if (eq == std::string::npos) {
            throw config_error("line " + std::to_string(line_no) + ": expected key=value");
        }
        cfg.set(trim(s.substr(0, eq)), trim(s.substr(eq + 1)));
    }
    return cfg;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_string(buf.str());
}

std::vector<double> parse_value_list(const std::string& text) {
    auto colon = text.find(':');
    if (colon != std::string::npos) {
        auto colon2 = text.find(':', colon + 1);
        if (colon2 == std::string::npos) {
            throw config_error("range syntax is start:stop:step, got " + text);
        }
        double start = parse_double("range start", text.substr(0, colon));
        double stop = parse_double("range stop", text.substr(colon + 1, colon2 - colon - 1));
        double step = parse_double("range step", text.substr(colon2 + 1));
        if (!(step > 0.0) || stop < start) throw config_error("bad range: " + text);
        std::vector<double> values;
        for (int i = 0;; ++i) {
            double v = start + i * step;
            if (v > stop + 0.5 * step) break;
            values.push_back(std::min(v, stop));
        }
        return values;
    }
    std::vector<double> values;
    for (const auto& tok : parse_token_list(text)) {
        values.push_back(parse_double("value list", tok));
    }
    if (values.empty()) throw config_error("empty value list");
    return values;
}

std::vector<std::string> parse_token_list(const std::string& text) {
    std::vector<std::string> tokens;
    std::string cur;
    for (char ch : text) {
        if (ch == ',') {
            tokens.push_back(trim(cur));
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    cur = trim(cur);
    if (!cur.empty()) tokens.push_back(cur);
    return tokens;
}

} // namespace cskct
