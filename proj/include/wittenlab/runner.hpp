#ifndef WITTENLAB_RUNNER_HPP
#define WITTENLAB_RUNNER_HPP

#include <iosfwd>
#include <string>

#include "wittenlab/config.hpp"

namespace wittenlab {

inline constexpr const char* kOutputDirEnvVar = "WITTENLAB_OUT";

// Exit-code contract: 0 all checks pass, 1 some check failed, 2 configuration
// or usage error. Subcommands: model-check, spectrum, heat-trace, scaled-kernel,
// decay, bochner, morse-report.
int run_subcommand(const std::string& name, const RunConfig& config, std::ostream& out);

bool is_known_subcommand(const std::string& name);

} // namespace wittenlab

#endif
