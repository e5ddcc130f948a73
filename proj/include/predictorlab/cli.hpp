#ifndef PREDICTORLAB_CLI_HPP
#define PREDICTORLAB_CLI_HPP

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace predictorlab {

/// Process exit statuses of the command-line tool.
enum ExitCode : int {
    kExitOk = 0,
    kExitConfig = 2,
    kExitModel = 3,
    kExitTruncation = 4,
    kExitDisagreement = 5,
};

/// Runs the command line `args` (without the program name), writing tables to
/// `out` (or the --out file) and a single `error=<code>: <message>` line to
/// `err` on failure. Returns the exit status.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parses "8,16,32", "16..512" (powers of two from 16 up to 512) or a mix of
/// both, e.g. "8,64..256". Throws ArgumentError on malformed input.
std::vector<std::size_t> parse_n_list(std::string_view text);

/// Parses a comma-separated list of reals.
std::vector<double> parse_real_list(std::string_view text);

/// Locale-independent %.17g rendering.
std::string format_real(double x);

}  // namespace predictorlab

#endif  // PREDICTORLAB_CLI_HPP
