#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "crackfd/io.hpp"
#include "crackfd/solver.hpp"

namespace crackfd::cli {

/// Bad command line; the message names the offending flag(s).
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// --help was given; what() carries the help text.
class HelpRequested : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Subcommand { Simulate, Analytic, Compare, Precision };

struct CliInvocation {
    Subcommand subcommand{Subcommand::Simulate};
    RunConfig config;
    std::string out_path;
    std::optional<std::string> surface_path;
};

/**
 * Parses
 *
 *   simulate|analytic|compare|precision --ic step|exp --amp R [--l-lo R --l-hi R | --decay R]
 *       [--scheme ftcs|upwind] [--alpha R] [--beta R] [--vsigma R] [--dl R] [--dt R]
 *       [--lmax N] [--tmax N] [--stride N] [--precision f32|f64] --out PATH
 *       [--surface PATH] [--compat-half-coefficient]
 *
 * Either every default is applied and the result validated, or UsageError is
 * thrown; nothing is partially resolved. args excludes the program name.
 */
CliInvocation parse_cli(const std::vector<std::string>& args);

/// Canonical argument list reproducing `inv` (output paths excluded).
std::vector<std::string> canonical_args(const CliInvocation& inv);

/// `# key=value` lines recording the fully resolved configuration.
io::Metadata resolved_metadata(const CliInvocation& inv);

std::string to_string(Subcommand sub);

/// Executes a parsed invocation, writing its output files; returns a one-line summary.
std::string execute(const CliInvocation& inv);

/// Full front end: parse, execute, report. Returns the process exit code (0 ok, 1 runtime error, 2 usage).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace crackfd::cli
