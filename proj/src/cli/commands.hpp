#pragma once

#include <iosfwd>
#include <vector>

#include "cli/checks.hpp"
#include "cli/config.hpp"

namespace nuharm::cli {

void write_rows_csv(std::ostream& os, const std::vector<CheckRow>& rows);
void write_rows_jsonl(std::ostream& os, const std::vector<CheckRow>& rows);

std::vector<CheckRow> verify_group_rows(const RunConfig& c);
std::vector<CheckRow> verify_harmonic_rows(const RunConfig& c);

// 0 all checks pass, 1 a check failed, 2 usage or configuration error
int run(const RunConfig& c, std::ostream& out, std::ostream& err);
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace nuharm::cli
