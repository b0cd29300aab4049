#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "pconf/term.hpp"

namespace pconf {

/// Command-line requirement literals: `component` or
/// `component.property=value`. Values are integers or constants.
std::optional<UserRequirement> parse_requirement_literal(std::string_view text, Polarity polarity);

/// Inverse of parse_requirement_literal; the target must be atomic.
std::string format_requirement_literal(const UserRequirement& requirement);

}  // namespace pconf
