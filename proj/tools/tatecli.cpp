#include "tate/cli.hpp"

#include <iostream>
#include <string>
#include <vector>

namespace {

const char* kUsage = R"(tatecli -- exact computations for doubly-filtered equivariant complexes

usage: tatecli <command> [flags]

commands:
  diagram    four-group diagram with the canonical maps
             --example cn|t-star-s2|torus|local-orbit|rabinowitz-c | --file F
             --ring z|q --horizon K --probe K' --dlow D --dhigh D [--n N] [--c 2,4,...]
  homology   per-degree homology of one window
             --example/--file, --a A --b P/Q --bmu B --dlow D --dhigh D --ring z|q
  towers     tower values in one degree   (--degree D plus diagram flags)
  localize   the locally finite localization counterexample (--counterexample N)
  backwards  subcomplex/quotient splitting with its long exact sequence
  flow       heat|rabinowitz|pde|count-c1 (--x0 X --tol T --grid N)
  group-qa   colimit group of a weight sequence (--seq k+1|const:2|2,3 --depth N [--to SEQ])
  xn-report  rank arithmetic for the surgered four-manifold family (--n-max N)

common flags: --format text|json
)";

}  // namespace

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    if (args.empty() || args[0] == "--help" || args[0] == "-h") {
        std::cout << kUsage;
        return args.empty() ? 2 : 0;
    }
    std::string format = "text";
    for (size_t i = 0; i + 1 < args.size(); ++i)
        if (args[i] == "--format") {
            format = args[i + 1];
            args.erase(args.begin() + i, args.begin() + i + 2);
            break;
        }
    tate::CliResult r = tate::cli_run(args);
    std::cout << (format == "json" ? r.structured + "\n" : r.text);
    return r.exit_code;
}
