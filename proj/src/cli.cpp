#include "precode/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>

namespace precode {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(trim(item));
    return out;
}

double parse_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw ParamError("config key '" + key + "': bad numeric value '" + v + "'");
    }
}

long long parse_int(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const long long i = std::stoll(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return i;
    } catch (const std::exception&) {
        throw ParamError("config key '" + key + "': bad integer value '" + v + "'");
    }
}

std::vector<Scheme> parse_schemes(const std::string& v) {
    std::vector<Scheme> out;
    for (const auto& name : split(v, ','))
        if (!name.empty()) out.push_back(scheme_from_name(name));
    if (out.empty()) throw ParamError("empty scheme list");
    return out;
}

std::string timestamp_utc() {
    if (const char* fixed = std::getenv("PRECODE_LAB_TIMESTAMP")) return fixed;
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

const char* angle_model_name(AngleModel m) {
    switch (m) {
        case AngleModel::Linear: return "linear";
        case AngleModel::Sin: return "sin";
        default: return "literal_eq2";
    }
}

std::string lg_policy_name(const LgPolicy& p) {
    if (p.kind == LgPolicy::Kind::Fixed)
        return "fixed:" + std::to_string(p.fixed_l);
    return "auto:" + format_num(p.threshold);
}

std::string join_schemes(const std::vector<Scheme>& schemes) {
    std::string out;
    for (Scheme s : schemes) {
        if (!out.empty()) out += ',';
        out += scheme_name(s);
    }
    return out;
}

std::string out_dir_or_default(std::string dir) {
    if (!dir.empty()) return dir;
    if (const char* env = std::getenv("PRECODE_LAB_OUT")) return env;
    return ".";
}

void write_manifest(std::ofstream& os, const RunManifest& m) {
    for (const auto& [k, v] : m.entries) os << "# " << k << " = " << v << "\n";
}

}  // namespace

std::string format_num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::vector<double> parse_range(const std::string& text) {
    const auto parts = split(text, ':');
    if (parts.size() == 1) return {parse_double("range", parts[0])};
    if (parts.size() != 3) {
        throw ParamError("range '" + text + "': expected start:step:stop");
    }
    const double start = parse_double("range", parts[0]);
    const double step = parse_double("range", parts[1]);
    const double stop = parse_double("range", parts[2]);
    if (!(step > 0.0)) throw ParamError("range '" + text + "': step must be > 0");
    std::vector<double> out;
    for (int i = 0;; ++i) {
        const double v = start + i * step;
        if (v > stop + 1e-9 * step) break;
        out.push_back(v);
    }
    if (out.empty()) throw ParamError("range '" + text + "' is empty");
    return out;
}

void apply_config_line(SystemConfig& cfg, const std::string& key,
                       const std::string& value) {
    if (key == "n") cfg.n = static_cast<int>(parse_int(key, value));
    else if (key == "k") cfg.k = static_cast<int>(parse_int(key, value));
    else if (key == "g") cfg.g = static_cast<int>(parse_int(key, value));
    else if (key == "mod_order") cfg.mod_order = static_cast<int>(parse_int(key, value));
    else if (key == "omega") cfg.omega = parse_double(key, value);
    else if (key == "delta_deg") cfg.delta_deg = parse_double(key, value);
    else if (key == "t") cfg.t = static_cast<int>(parse_int(key, value));
    else if (key == "ebn0") cfg.ebn0_grid_db = parse_range(value);
    else if (key == "max_blocks") cfg.max_blocks = static_cast<std::uint64_t>(parse_int(key, value));
    else if (key == "min_bit_errors") cfg.min_bit_errors = static_cast<std::uint64_t>(parse_int(key, value));
    else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(parse_int(key, value));
    else if (key == "quad_points") cfg.quad_points = static_cast<int>(parse_int(key, value));
    else if (key == "workers") cfg.workers = static_cast<int>(parse_int(key, value));
    else if (key == "schemes") cfg.schemes = parse_schemes(value);
    else if (key == "lg_policy") {
        const auto parts = split(value, ':');
        if (parts[0] == "auto") {
            cfg.lg_policy = LgPolicy::auto_threshold(
                parts.size() > 1 ? parse_double(key, parts[1]) : 1e-3);
        } else if (parts[0] == "fixed" && parts.size() == 2) {
            cfg.lg_policy = LgPolicy::fixed(static_cast<int>(parse_int(key, parts[1])));
        } else {
            throw ParamError("config key 'lg_policy': expected auto[:thresh] or fixed:L");
        }
    } else if (key == "angle_model") {
        if (value == "linear") cfg.angle_model = AngleModel::Linear;
        else if (value == "sin") cfg.angle_model = AngleModel::Sin;
        else if (value == "literal_eq2") cfg.angle_model = AngleModel::LiteralEq2;
        else throw ParamError("config key 'angle_model': unknown value '" + value + "'");
    } else if (key == "root_mode") {
        if (value == "sqrt") cfg.root_mode = RootMode::HermitianSqrt;
        else if (value == "literal") cfg.root_mode = RootMode::Literal;
        else throw ParamError("config key 'root_mode': unknown value '" + value + "'");
    } else if (key == "rx_mode") {
        if (value == "literal") cfg.rx_mode = LinearReceiverMode::Literal;
        else if (value == "genie") cfg.rx_mode = LinearReceiverMode::GenieGain;
        else throw ParamError("config key 'rx_mode': unknown value '" + value + "'");
    } else {
        throw ParamError("unknown config key '" + key + "'");
    }
}

SystemConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParamError("cannot open config file '" + path + "'");
    SystemConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ParamError(path + ":" + std::to_string(lineno) +
                             ": expected key = value");
        }
        apply_config_line(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return cfg;
}

RunManifest make_manifest(const SystemConfig& cfg) {
    RunManifest m;
    m.entries = {
        {"tool", "precode-lab"},
        {"version", kVersion},
        {"timestamp", timestamp_utc()},
        {"n", std::to_string(cfg.n)},
        {"k", std::to_string(cfg.k)},
        {"g", std::to_string(cfg.g)},
        {"mod_order", std::to_string(cfg.mod_order)},
        {"omega", format_num(cfg.omega)},
        {"delta_deg", format_num(cfg.delta_deg)},
        {"t", std::to_string(cfg.t)},
        {"max_blocks", std::to_string(cfg.max_blocks)},
        {"min_bit_errors", std::to_string(cfg.min_bit_errors)},
        {"seed", std::to_string(cfg.seed)},
        {"lg_policy", lg_policy_name(cfg.lg_policy)},
        {"schemes", join_schemes(cfg.schemes)},
        {"angle_model", angle_model_name(cfg.angle_model)},
        {"root_mode",
         cfg.root_mode == RootMode::HermitianSqrt ? "sqrt" : "literal"},
        {"rx_mode",
         cfg.rx_mode == LinearReceiverMode::Literal ? "literal" : "genie"},
        {"quad_points", std::to_string(cfg.quad_points)},
        {"beta", format_num(cfg.beta())},
    };
    return m;
}

void write_ber_csv(const std::string& path, const RunManifest& manifest,
                   const std::vector<BerRecord>& records) {
    std::ofstream os(path);
    if (!os) throw ParamError("cannot write '" + path + "'");
    write_manifest(os, manifest);
    os << "scheme,ebn0_db,bits,errors,ber,blocks_used,degenerate_blocks\n";
    for (const auto& r : records) {
        os << scheme_name(r.scheme) << ',' << format_num(r.ebn0_db) << ','
           << r.bits << ',' << r.errors << ',' << format_num(r.ber) << ','
           << r.blocks_used << ',' << r.degenerate_blocks << '\n';
    }
}

void write_flops_csv(const std::string& path, const RunManifest& manifest,
                     const std::vector<FlopsRow>& rows) {
    std::ofstream os(path);
    if (!os) throw ParamError("cannot write '" + path + "'");
    write_manifest(os, manifest);
    os << "scheme,K,N,G,T,flops,residual\n";
    for (const auto& r : rows) {
        os << scheme_name(r.scheme) << ',' << r.k << ',' << r.n << ',' << r.g
           << ',' << r.t << ',' << format_num(r.flops) << ','
           << format_num(r.residual) << '\n';
    }
}

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"MU-MIMO downlink precoding simulator"};
    app.require_subcommand(1);

    std::string config_path, out_dir, schemes_arg, ebn0_arg, k_arg;
    std::uint64_t seed = 0;
    bool seed_set = false;
    int workers = 0, n_arg = 32, g_arg = 4, t_arg = 100;

    auto* sim = app.add_subcommand("simulate", "run a seeded BER sweep");
    sim->add_option("--config", config_path, "key = value config file")->required();
    sim->add_option("--seed", seed, "override RNG seed")->each([&](const std::string&) {
        seed_set = true;
    });
    sim->add_option("--workers", workers, "worker thread count");
    sim->add_option("--schemes", schemes_arg, "comma-separated scheme list");
    sim->add_option("--ebn0", ebn0_arg, "Eb/N0 grid start:step:stop (dB)");
    sim->add_option("--out", out_dir, "output directory");

    auto* cx = app.add_subcommand("complexity", "closed-form FLOP counts");
    cx->add_option("--K", k_arg, "UT counts start:step:stop")->required();
    cx->add_option("--N", n_arg, "antenna count");
    cx->add_option("--G", g_arg, "group count");
    cx->add_option("--T", t_arg, "coherence-interval symbols");
    cx->add_option("--out", out_dir, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (sim->parsed()) {
            SystemConfig cfg = parse_config_file(config_path);
            if (seed_set) cfg.seed = seed;
            if (workers > 0) cfg.workers = workers;
            if (!schemes_arg.empty()) apply_config_line(cfg, "schemes", schemes_arg);
            if (!ebn0_arg.empty()) apply_config_line(cfg, "ebn0", ebn0_arg);
            if (cfg.ebn0_grid_db.empty()) {
                throw ParamError("no Eb/N0 grid (set 'ebn0' in the config or --ebn0)");
            }
            cfg.validate();
            const auto records = sweep(cfg);
            const std::string path = out_dir_or_default(out_dir) + "/ber.csv";
            write_ber_csv(path, make_manifest(cfg), records);
            std::cout << "wrote " << path << " (" << records.size() << " rows)\n";
        } else {
            std::vector<FlopsRow> rows;
            SystemConfig manifest_cfg;  // reuse the manifest shape
            manifest_cfg.n = n_arg;
            manifest_cfg.g = g_arg;
            manifest_cfg.t = t_arg;
            for (double kd : parse_range(k_arg)) {
                const int k = static_cast<int>(std::lround(kd));
                if (k < 1 || k % g_arg != 0) {
                    std::cerr << "warning: skipping K=" << k
                              << " (G=" << g_arg << " does not divide it)\n";
                    continue;
                }
                manifest_cfg.k = k;
                const double residual = check_table1_consistency(k, n_arg, g_arg, t_arg);
                for (Scheme s : {Scheme::Rzf, Scheme::PgpRzf, Scheme::Thp,
                                 Scheme::Hlthp}) {
                    rows.push_back({s, k, n_arg, g_arg, t_arg,
                                    flops({s, k, n_arg, g_arg, t_arg}).flops,
                                    residual});
                }
            }
            if (rows.empty()) {
                std::cerr << "error: no valid K in range '" << k_arg << "'\n";
                return 2;
            }
            const std::string path = out_dir_or_default(out_dir) + "/flops.csv";
            write_flops_csv(path, make_manifest(manifest_cfg), rows);
            std::cout << "wrote " << path << " (" << rows.size() << " rows)\n";
        }
    } catch (const FeasibilityError& e) {
        std::cerr << "error: infeasible configuration: " << e.what() << '\n';
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}

}  // namespace precode
