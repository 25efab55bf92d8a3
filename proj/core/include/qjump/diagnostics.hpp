#pragma once

#include <functional>
#include <string>
#include <vector>

namespace qjump::diagnostics {

using WarningSink = std::function<void(const std::string&)>;

/// Emit a non-fatal warning. Thread-safe; the default sink writes to stderr.
void warn(const std::string& message);

/// Replace the active sink, returning the previous one. Passing an empty
/// function restores the stderr sink.
WarningSink set_warning_sink(WarningSink sink);

/// RAII capture of warnings into a vector for the lifetime of the object.
class ScopedWarningCapture {
 public:
  explicit ScopedWarningCapture(std::vector<std::string>& out);
  ~ScopedWarningCapture();
  ScopedWarningCapture(const ScopedWarningCapture&) = delete;
  ScopedWarningCapture& operator=(const ScopedWarningCapture&) = delete;

 private:
  WarningSink previous_;
};

}  // namespace qjump::diagnostics
