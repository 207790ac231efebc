#ifndef PII_CLI_HPP
#define PII_CLI_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "pii/integrate.hpp"

namespace pii {

enum class OutputFormat { Csv, Json };

// Everything a run needs to be reproduced byte-for-byte.
struct RunConfig {
    SolverConfig solver;
    double horizon = 40.0;
    OutputFormat format = OutputFormat::Csv;
    std::optional<std::string> output_path;
    std::vector<double> sigma_grid;
    unsigned long long seed = 0;
    int precision = 12; // significant digits on every emitted number
};

// Parses args (without argv[0]) and runs the selected subcommand, writing
// results to `out` (or the --out path) and diagnostics to `err`.
// Exit codes: 0 success, 1 computational failure, 2 usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace pii

#endif
