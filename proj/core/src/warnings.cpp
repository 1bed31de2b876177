#include "optomech/warnings.hpp"

#include <iostream>
#include <utility>

namespace optomech {

namespace {
WarningSink g_sink;  // empty -> stderr
}

void warn(const std::string& message) {
  if (g_sink) {
    g_sink(message);
  } else {
    std::cerr << "[optomech] warning: " << message << "\n";
  }
}

WarningSink set_warning_sink(WarningSink sink) {
  WarningSink old = std::move(g_sink);
  g_sink = std::move(sink);
  return old;
}

}  // namespace optomech
