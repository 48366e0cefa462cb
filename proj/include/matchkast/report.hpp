#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace matchkast {

enum class Status { Pass, Fail, Vacuous };

constexpr std::string_view to_string(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Vacuous: return "vacuous";
  }
  return "?";
}

/// Outcome of one mechanical check. A failing report carries a reproducer:
/// the serialized inputs needed to rerun the check.
struct VerificationReport {
  std::string subject;
  std::string claim;
  Status status = Status::Pass;
  std::vector<std::pair<std::string, std::string>> witness;
  std::string reproducer;

  bool passed() const { return status != Status::Fail; }

  VerificationReport& with(std::string key, std::string value) {
    witness.emplace_back(std::move(key), std::move(value));
    return *this;
  }

  const std::string* find(std::string_view key) const {
    for (const auto& [k, v] : witness)
      if (k == key) return &v;
    return nullptr;
  }
};

}  // namespace matchkast
