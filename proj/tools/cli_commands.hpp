#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace stockfc::cli {

/// Entry point shared by the executable and tests. `args` excludes the
/// program name. Returns 0 on success, 1 on runtime errors, 2 on flag errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Expands `--config <file>` (flat key=value lines, keys named after flags)
/// into flag arguments placed before the explicit ones; explicit flags win.
std::vector<std::string> expand_config_file(const std::vector<std::string>& args);

} // namespace stockfc::cli
