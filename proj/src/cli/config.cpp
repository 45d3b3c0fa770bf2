#include "cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"

namespace nuharm::cli {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(trim(item));
    return out;
}

double to_double(const std::string& key, const std::string& v) {
    double x = 0.0;
    const char* end = v.data() + v.size();
    auto [ptr, ec] = std::from_chars(v.data(), end, x);
    if (ec != std::errc() || ptr != end || !std::isfinite(x))
        throw ConfigError(key + ": expected a number, got '" + v + "'");
    return x;
}

long long to_integer(const std::string& key, const std::string& v) {
    long long x = 0;
    const char* end = v.data() + v.size();
    auto [ptr, ec] = std::from_chars(v.data(), end, x);
    if (ec != std::errc() || ptr != end) throw ConfigError(key + ": expected an integer, got '" + v + "'");
    return x;
}

const std::vector<std::string> option_keys = {"group", "alpha", "p",   "L",     "R",           "grid",
                                              "seed",  "out",   "tol", "summary", "test-function", "pairs",
                                              "triples"};

const std::map<std::string, std::string> option_help = {
    {"group", "affine, sim2, paff or all"},
    {"alpha", "counterexample exponent"},
    {"p", "Lebesgue exponent (> 2 for sweeps)"},
    {"L", "support half-width of f_alpha"},
    {"R", "inner cutoff; default: smallest power of 10 with C_alpha > 0 beyond R L"},
    {"grid", "resolutions as key=value,... (each >= 8)"},
    {"seed", "seed for the randomized checks"},
    {"out", "report path (default stdout)"},
    {"tol", "one tolerance for every check, or check=value,..."},
    {"summary", "JSON-lines summary path"},
    {"test-function", "bump or zero"},
    {"pairs", "random Wigner pairs per group"},
    {"triples", "random Weyl triples per group and p"},
};

const std::map<Command, std::vector<std::string>> grid_keys = {
    {Command::VerifyGroup, {"n_b", "n_a", "n_angle", "n_rep"}},
    {Command::VerifyHarmonic, {"n_rep", "n_angular", "n_b", "n_a", "n_angle"}},
    {Command::SweepDivergence, {"points_per_decade", "decades"}},
};

void apply(RunConfig& c, const std::string& key, const std::string& value) {
    if (key == "group") {
        c.groups = parse_groups(value);
    } else if (key == "alpha") {
        c.alpha = to_double(key, value);
    } else if (key == "p") {
        c.p = to_double(key, value);
        if (!(*c.p > 1.0)) throw ConfigError("p must exceed 1");
    } else if (key == "L") {
        c.L = to_double(key, value);
        if (!(c.L > 0.0)) throw ConfigError("L must be positive");
    } else if (key == "R") {
        c.R = to_double(key, value);
        if (!(*c.R > 0.0)) throw ConfigError("R must be positive");
    } else if (key == "grid") {
        c.grid = parse_grid_spec(value);
        const auto& allowed = grid_keys.at(c.command);
        for (const auto& [k, v] : c.grid)
            if (std::find(allowed.begin(), allowed.end(), k) == allowed.end())
                throw ConfigError("grid key '" + k + "' does not apply to this command");
    } else if (key == "seed") {
        const long long s = to_integer(key, value);
        if (s < 0) throw ConfigError("seed must be nonnegative");
        c.seed = static_cast<std::uint64_t>(s);
    } else if (key == "out") {
        c.out = value;
    } else if (key == "summary") {
        c.summary = value;
    } else if (key == "tol") {
        c.tol = parse_tolerances(value);
    } else if (key == "test-function") {
        if (value == "bump")
            c.test_function = TestFunction::Bump;
        else if (value == "zero")
            c.test_function = TestFunction::Zero;
        else
            throw ConfigError("test-function must be bump or zero");
    } else if (key == "pairs" || key == "triples") {
        const long long n = to_integer(key, value);
        if (n < 1 || n > 1000) throw ConfigError(key + " must lie in [1, 1000]");
        (key == "pairs" ? c.pairs : c.triples) = static_cast<int>(n);
    } else {
        throw ConfigError("unknown key '" + key + "'");
    }
}

}  // namespace

std::map<std::string, int> parse_grid_spec(const std::string& spec) {
    std::map<std::string, int> out;
    for (const auto& item : split(spec, ',')) {
        if (item.empty()) continue;
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw ConfigError("grid entry '" + item + "' is not key=value");
        const std::string k = trim(item.substr(0, eq));
        const long long v = to_integer("grid " + k, trim(item.substr(eq + 1)));
        if (v < 8) throw ConfigError("grid " + k + "=" + std::to_string(v) + ": resolutions must be at least 8");
        if (v > 100000) throw ConfigError("grid " + k + ": resolution too large");
        out[k] = static_cast<int>(v);
    }
    return out;
}

Tolerances parse_tolerances(const std::string& spec) {
    Tolerances t;
    for (const auto& item : split(spec, ',')) {
        if (item.empty()) continue;
        const auto eq = item.find('=');
        const std::string key = eq == std::string::npos ? "" : trim(item.substr(0, eq));
        const double v = to_double("tol", trim(eq == std::string::npos ? item : item.substr(eq + 1)));
        if (!(v > 0.0)) throw ConfigError("tolerances must be positive");
        if (key.empty())
            t.all = v;
        else
            t.by_check[key] = v;
    }
    return t;
}

std::vector<GroupTag> parse_groups(const std::string& name) {
    if (name == "all") return {GroupTag::Affine, GroupTag::Sim2, GroupTag::PoincareAff};
    try {
        return {parse_group_tag(name)};
    } catch (const std::invalid_argument&) {
        throw ConfigError("--group must be affine, sim2, paff or all, got '" + name + "'");
    }
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file '" + path + "'");
    std::map<std::string, std::string> out;
    std::string line;
    int no = 0;
    while (std::getline(in, line)) {
        ++no;
        if (const auto h = line.find('#'); h != std::string::npos) line.erase(h);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path + ":" + std::to_string(no) + ": expected key = value");
        out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return out;
}

std::optional<RunConfig> parse_command_line(int argc, const char* const* argv, std::string& help_text) {
    CLI::App app{"Numerical harmonic analysis on the affine, similitude and affine Poincare groups"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");

    struct Sub {
        CLI::App* app;
        Command cmd;
        std::map<std::string, std::string> values;
        std::string config;
    };
    std::vector<Sub> subs;
    subs.push_back({app.add_subcommand("verify-group", "group law, Haar measure and representation checks"),
                    Command::VerifyGroup, {}, {}});
    subs.push_back({app.add_subcommand("verify-harmonic", "Plancherel, inversion, Wigner and Weyl checks"),
                    Command::VerifyHarmonic, {}, {}});
    subs.push_back({app.add_subcommand("sweep-divergence", "truncated divergence sweeps of the counterexamples"),
                    Command::SweepDivergence, {}, {}});
    for (auto& s : subs) {
        for (const auto& key : option_keys) {
            const std::string flag = "--" + key;
            s.app->add_option(flag, s.values[key], option_help.at(key));
        }
        s.app->add_option("--config", s.config, "key = value file; flags win");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        help_text = app.help();
        return std::nullopt;
    } catch (const CLI::CallForAllHelp&) {
        help_text = app.help("", CLI::AppFormatMode::All);
        return std::nullopt;
    } catch (const CLI::ParseError& e) {
        throw ConfigError(e.what());
    }

    for (auto& s : subs) {
        if (!s.app->parsed()) continue;
        RunConfig c;
        c.command = s.cmd;
        c.groups = parse_groups("all");
        if (s.cmd == Command::SweepDivergence) c.groups = {GroupTag::Affine};
        std::map<std::string, std::string> merged;
        if (!s.config.empty()) merged = read_config_file(s.config);
        for (const auto& key : option_keys)
            if (s.app->count("--" + key) > 0) merged[key] = s.values[key];
        for (const auto& [k, v] : merged) {
            if (std::find(option_keys.begin(), option_keys.end(), k) == option_keys.end())
                throw ConfigError("unknown key '" + k + "'");
            apply(c, k, v);
        }
        return c;
    }
    throw ConfigError("no subcommand given");
}

}  // namespace nuharm::cli
