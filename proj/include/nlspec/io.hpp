#pragma once

// File formats and command runners; needs nlohmann/json on the include path.

#include "nlspec/io/commands.hpp"
#include "nlspec/io/results.hpp"
#include "nlspec/io/run_config.hpp"
