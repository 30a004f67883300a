#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace svie {

/// Settings for a convergence study. JSON config keys map 1:1 onto fields;
/// command-line flags override file values.
struct ConvergenceSettings {
    std::string problem = "paper-sin-cos";
    double alpha = 0.0;
    double beta = 0.0;
    std::vector<std::int64_t> levels = {16, 32, 64, 128};
    std::int64_t ref = 256;
    std::int64_t paths = 500;
    std::uint64_t seed = 1;
    std::string scheme = "rmilstein";
    std::string out = "errors.csv";
    std::string plot;

    bool has_alpha = false;
    bool has_beta = false;
};

/// Parse a JSON config document. Unknown keys and malformed JSON throw with
/// the offending key or parse message; value validation happens when the
/// settings are used.
ConvergenceSettings load_config(const std::string& path);

/// Dispatch the svie command line (args exclude the program name).
/// Exit codes: 0 success, 2 usage error, 3 numeric/validation failure.
int run_cli(std::vector<std::string> args, std::ostream& out,
            std::ostream& err);

} // namespace svie
