#pragma once

#include <string>
#include <vector>

namespace tate {

struct CliResult {
    int exit_code = 0;
    std::string text;        // human-readable report
    std::string structured;  // the same report as a JSON document
};

// Runs one subcommand: diagram, homology, localize, towers, backwards, flow,
// group-qa, xn-report. Returns exit code 0 iff every expected-value check in
// the run passed.
CliResult cli_run(const std::vector<std::string>& args);

}  // namespace tate
