#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cli/checks.hpp"

namespace nuharm::cli {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Command { VerifyGroup, VerifyHarmonic, SweepDivergence };

struct RunConfig {
    Command command = Command::VerifyGroup;
    std::vector<GroupTag> groups;
    std::optional<double> alpha;
    std::optional<double> p;
    double L = 1.0;
    std::optional<double> R;
    std::map<std::string, int> grid;
    std::uint64_t seed = 7;
    std::string out;      // empty: stdout
    std::string summary;  // JSON-lines path, empty: none
    Tolerances tol;
    TestFunction test_function = TestFunction::Bump;
    int pairs = 2;    // Wigner pairs per group
    int triples = 4;  // Weyl triples per group and p
};

// "k=v,k=v"; every count must be an integer >= 8
std::map<std::string, int> parse_grid_spec(const std::string& spec);
// "1e-3" for all checks, or "check=value,..."
Tolerances parse_tolerances(const std::string& spec);
// "affine", "sim2", "paff" or "all"
std::vector<GroupTag> parse_groups(const std::string& name);
// key = value lines; '#' starts a comment
std::map<std::string, std::string> read_config_file(const std::string& path);

// throws ConfigError; returns nullopt when only help was requested
std::optional<RunConfig> parse_command_line(int argc, const char* const* argv, std::string& help_text);

}  // namespace nuharm::cli
