#include "mediasim/diagnostics.hpp"

#include <iostream>
#include <utility>

namespace mediasim {
namespace {

WarningSink& sink() {
  static WarningSink current;
  return current;
}

}  // namespace

void warn(const std::string& message) {
  if (sink()) {
    sink()(message);
  } else {
    std::cerr << "warning: " << message << '\n';
  }
}

WarningSink set_warning_sink(WarningSink s) { return std::exchange(sink(), std::move(s)); }

WarningCapture::WarningCapture()
    : previous_(set_warning_sink([this](const std::string& m) { messages_.push_back(m); })) {}

WarningCapture::~WarningCapture() { set_warning_sink(std::move(previous_)); }

bool WarningCapture::contains(const std::string& fragment) const {
  for (const auto& m : messages_) {
    if (m.find(fragment) != std::string::npos) return true;
  }
  return false;
}

}  // namespace mediasim
