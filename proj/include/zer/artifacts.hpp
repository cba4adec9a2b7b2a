#pragma once

#include <string>

#include "zer/config.hpp"
#include "zer/rg.hpp"

namespace zer {

// creates the output directory (throws ConfigError when impossible) before
// any computation; callers should invoke this before run_zer
void prepare_output_directory(const std::string& directory);

// writes the requested artifact files; every file is written to a temporary
// name and renamed, numbers carry 12 significant digits
void write_artifacts(const RGTrace& trace, const RunConfig& config);

}  // namespace zer
