#pragma once

#include <functional>
#include <string>

namespace cogres {

using WarningHandler = std::function<void(const std::string&)>;

/// Replaces the warning sink (default: "warning: <msg>" on stderr). Passing an
/// empty handler silences warnings. Returns the previous handler.
WarningHandler set_warning_handler(WarningHandler handler);

void warn(const std::string& message);

}  // namespace cogres
