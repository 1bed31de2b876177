#pragma once

#include <functional>
#include <string>

namespace optomech {

using WarningSink = std::function<void(const std::string&)>;

/// Report a non-fatal condition (truncation tails, validity-regime limits).
/// Goes to stderr unless a sink was installed.
void warn(const std::string& message);

/// Replace the warning sink; pass nullptr to restore the stderr default.
/// Returns the previous sink. Intended for tests and the CLI.
WarningSink set_warning_sink(WarningSink sink);

}  // namespace optomech
