#pragma once

#include <string>
#include <string_view>

#include "mcsense/experiment.hpp"

namespace mcsense {

/// Raised for unreadable, malformed or invalid configuration files. The message
/// carries the origin and, where it can be located, the line number.
class ConfigError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// Strict parse of a flat JSON experiment description. Unknown keys are rejected
/// and every ExperimentConfig invariant is enforced.
ExperimentConfig parse_config_text(std::string_view text, const std::string& origin = "<config>");
ExperimentConfig parse_config(const std::string& path);

}  // namespace mcsense
