// One PASS/FAIL line per acceptance criterion; rows behind each line follow it, indented.
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "cli/checks.hpp"

using namespace nuharm;
using namespace nuharm::cli;

namespace {

const std::vector<GroupTag> all_groups = {GroupTag::Affine, GroupTag::Sim2, GroupTag::PoincareAff};
const Tolerances defaults;
constexpr std::uint64_t seed = 7;

struct Timed {
    std::vector<CheckRow> rows;
    double seconds = 0.0;
};

Timed timed(const std::function<std::vector<CheckRow>()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Timed t;
    t.rows = body();
    t.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return t;
}

void append(std::vector<CheckRow>& rows, const std::vector<CheckRow>& more) { rows.insert(rows.end(), more.begin(), more.end()); }

void print_rows(const std::vector<CheckRow>& rows) {
    for (const auto& r : rows)
        std::printf("    %-28s %-6s %-26s %13.6e <= %13.6e %s\n", r.check.c_str(), r.group.c_str(), r.metric.c_str(), r.value,
                    r.tolerance, r.pass ? "ok" : "FAIL");
}

// budget: total seconds, or per-group seconds times the group count for the per-group criteria
bool report(int n, const std::string& name, const std::vector<Timed>& parts, double budget_each) {
    std::vector<CheckRow> rows;
    bool in_time = true;
    double total = 0.0;
    for (const auto& p : parts) {
        append(rows, p.rows);
        total += p.seconds;
        in_time = in_time && p.seconds < budget_each;
    }
    const bool pass = all_pass(rows) && in_time;
    std::printf("%s criterion %d: %s (%.1f s, budget %.0f s%s)\n", pass ? "PASS" : "FAIL", n, name.c_str(), total,
                budget_each, parts.size() > 1 ? " per part" : "");
    print_rows(rows);
    std::fflush(stdout);
    return pass;
}

}  // namespace

int main() {
    int failed = 0;
    auto tally = [&](bool ok) { failed += ok ? 0 : 1; };

    tally(report(1, "group algebra",
                 {timed([] {
                     std::vector<CheckRow> rows;
                     for (GroupTag t : all_groups) append(rows, group_algebra_checks(t, seed, 1000, defaults));
                     return rows;
                 })},
                 1.0));

    tally(report(2, "Haar measure and modular function",
                 {timed([] {
                     std::vector<CheckRow> rows;
                     for (GroupTag t : all_groups) append(rows, haar_checks(t, haar_grid(t), seed, 10, defaults));
                     return rows;
                 })},
                 30.0));

    {
        std::vector<Timed> parts;
        for (GroupTag t : all_groups) parts.push_back(timed([t] { return representation_checks(t, 128, seed, defaults); }));
        tally(report(3, "representation unitarity and homomorphism", parts, 60.0));
    }

    std::vector<HarmonicSetup> desk;
    for (GroupTag t : all_groups) desk.push_back(make_setup(t, desk_params(t)));

    {
        std::vector<Timed> parts;
        for (const auto& s : desk) parts.push_back(timed([&s] { return plancherel_check(s, TestFunction::Bump, defaults); }));
        tally(report(4, "Plancherel", parts, 120.0));
    }
    {
        std::vector<Timed> parts;
        for (const auto& s : desk) parts.push_back(timed([&s] { return inversion_check(s, TestFunction::Bump, defaults); }));
        tally(report(5, "inversion round trip", parts, 120.0));
    }

    tally(report(6, "Wigner identities (10 pairs)",
                 {timed([&desk] {
                     std::vector<CheckRow> rows;
                     append(rows, wigner_checks(desk[0], 10, seed, TestFunction::Bump, defaults));
                     for (GroupTag t : {GroupTag::Sim2, GroupTag::PoincareAff})
                         append(rows, wigner_checks(make_setup(t, reduced_params(t)), 10, seed, TestFunction::Bump, defaults));
                     return rows;
                 })},
                 300.0));

    tally(report(7, "Weyl bound on the affine group (50 triples)",
                 {timed([] {
                     const HarmonicSetup s = make_setup(GroupTag::Affine, weyl_params(GroupTag::Affine));
                     return weyl_checks(s, {1.0, 1.5, 2.0}, 50, seed, TestFunction::Bump, defaults);
                 })},
                 120.0));

    {
        struct Case {
            GroupTag tag;
            double alpha, pp;
        };
        const std::vector<Case> cases = {{GroupTag::Affine, 0.45, 1.5}, {GroupTag::Sim2, 0.45, 1.6}, {GroupTag::PoincareAff, 0.45, 1.5}};
        std::vector<Timed> parts;
        for (const auto& c : cases) {
            parts.push_back(timed([&c] { return std::vector<CheckRow>{sweep_row(run_sweep(c.tag, c.alpha, c.pp, 1.0, {}), defaults)}; }));
            const double below = alpha_threshold(c.tag, c.pp) - 0.05;
            parts.push_back(timed([&c, below] { return std::vector<CheckRow>{sweep_row(run_sweep(c.tag, below, c.pp, 1.0, {}), defaults)}; }));
        }
        tally(report(8, "divergence rates and below-threshold convergence", parts, 60.0));
    }

    tally(report(9, "oscillatory integral oracle", {timed([] { return oscillatory_checks({0.1, 0.25, 0.45}, defaults); })},
                 10.0));

    tally(report(10, "kernel oracle and S2 two-pipeline check",
                 {timed([] {
                     std::vector<CheckRow> rows;
                     for (GroupTag t : all_groups) append(rows, kernel_oracle_checks(t, defaults));
                     append(rows, s2_checks(defaults));
                     return rows;
                 })},
                 60.0));

    std::printf("%d of 10 criteria failed\n", failed);
    return failed == 0 ? 0 : 1;
}
