#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace shotnoise {

/// Entry point of the snmtool command line. `args[0]` is the program name.
/// Returns 0 on success and 2 on usage or input errors.
int run_cli(std::span<const std::string> args, std::ostream &out, std::ostream &err);

} // namespace shotnoise
