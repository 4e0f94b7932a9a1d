#ifndef TENDENCY_CLI_HPP
#define TENDENCY_CLI_HPP

namespace tendency {

/// Command-line entry point. Exit codes: 0 success, 1 usage error,
/// 2 data error. All randomness flows from --seed; identical command lines
/// produce byte-identical artifacts.
int run(int argc, const char* const* argv);

}  // namespace tendency

#endif
