#pragma once

#include <iosfwd>

#include "capwave/app/config.hpp"

namespace capwave::app {

int cmd_verify(const VerifyConfig& cfg, std::ostream& out);
int cmd_spectrum(const SpectrumConfig& cfg, std::ostream& out);
int cmd_continue(const ContinueConfig& cfg, std::ostream& out);
int cmd_profile(const ProfileConfig& cfg, std::ostream& out);
int cmd_limit_check(const LimitCheckConfig& cfg, std::ostream& out);

// Parses `capwave <subcommand> [--config file.json] [flags]` and dispatches.
// Flags override values from the config file. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace capwave::app
