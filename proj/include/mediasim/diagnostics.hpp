#pragma once

#include <functional>
#include <string>
#include <vector>

namespace mediasim {

using WarningSink = std::function<void(const std::string&)>;

// Warnings go to stderr unless a sink is installed.
void warn(const std::string& message);
WarningSink set_warning_sink(WarningSink sink);

/// Collects warnings for the lifetime of the object (tests, quiet CLI runs).
class WarningCapture {
 public:
  WarningCapture();
  ~WarningCapture();
  WarningCapture(const WarningCapture&) = delete;
  WarningCapture& operator=(const WarningCapture&) = delete;

  const std::vector<std::string>& messages() const { return messages_; }
  bool contains(const std::string& fragment) const;

 private:
  std::vector<std::string> messages_;
  WarningSink previous_;
};

}  // namespace mediasim
