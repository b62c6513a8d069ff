#pragma once

#include <string>
#include <utility>
#include <vector>

namespace gyro {

/// Labelled values describing a counterexample, e.g. {{"U", "{0,2}"}, {"x", "1"}}.
using Witness = std::vector<std::pair<std::string, std::string>>;

}  // namespace gyro
