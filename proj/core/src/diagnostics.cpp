#include "qjump/diagnostics.hpp"

#include <iostream>
#include <mutex>
#include <utility>

namespace qjump::diagnostics {
namespace {

std::mutex& sink_mutex() {
  static std::mutex m;
  return m;
}

WarningSink& active_sink() {
  static WarningSink sink;
  return sink;
}

}  // namespace

void warn(const std::string& message) {
  std::lock_guard lock(sink_mutex());
  if (active_sink()) {
    active_sink()(message);
  } else {
    std::cerr << "qjump: warning: " << message << '\n';
  }
}

WarningSink set_warning_sink(WarningSink sink) {
  std::lock_guard lock(sink_mutex());
  return std::exchange(active_sink(), std::move(sink));
}

ScopedWarningCapture::ScopedWarningCapture(std::vector<std::string>& out)
    : previous_(set_warning_sink(
          [&out](const std::string& m) { out.push_back(m); })) {}

ScopedWarningCapture::~ScopedWarningCapture() {
  set_warning_sink(std::move(previous_));
}

}  // namespace qjump::diagnostics
