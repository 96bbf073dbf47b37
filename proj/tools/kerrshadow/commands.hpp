// kerrshadow subcommands

#pragma once

#include <iosfwd>

#include "kerrshadow/config.hpp"

namespace kerrshadow {

// Each command validates the whole configuration before computing anything. Invalid input is
// reported as ValidationError; numerical and I/O failures surface as kerr::Error.
void cmd_shadow(const RunConfig &config, std::ostream &log);
void cmd_render(const RunConfig &config, std::ostream &log);
void cmd_bifurcation(const RunConfig &config, std::ostream &log);
void cmd_classify(const RunConfig &config, std::ostream &out);
void cmd_separatrix(const RunConfig &config, std::ostream &log);
void cmd_observer_info(const RunConfig &config, std::ostream &out);

}  // namespace kerrshadow
