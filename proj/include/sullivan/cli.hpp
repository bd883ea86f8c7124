#pragma once

// Command-line front end. Every subcommand produces a report with the keys
// {command, cutoff, verdict, data}, printed as a table or, with --json, as
// JSON with sorted keys.
//
// Exit codes: 0 property holds, 1 property violated, 2 invalid input,
// 3 resource bound exceeded.

#include <iosfwd>
#include <string>
#include <vector>

namespace sullivan {

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sullivan
