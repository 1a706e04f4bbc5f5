#pragma once

#include <chrono>
#include <string>

#include <json.hpp>

namespace galoispts {

enum class Status { kPass, kFail, kSkip, kPaperTrusted };

inline std::string to_string(Status s) {
  switch (s) {
    case Status::kPass: return "pass";
    case Status::kFail: return "fail";
    case Status::kSkip: return "skip";
    case Status::kPaperTrusted: return "paper-trusted";
  }
  return "?";
}

struct CheckResult {
  std::string id;
  std::string description;
  Status status = Status::kPass;
  nlohmann::json details = nlohmann::json::object();
  double duration_ms = 0;

  bool passed() const { return status == Status::kPass; }
  /// Marks the check failed when `ok` is false; never turns a failure back.
  void require(bool ok) {
    if (!ok) status = Status::kFail;
  }
};

inline CheckResult make_check(std::string id, std::string description) {
  CheckResult r;
  r.id = std::move(id);
  r.description = std::move(description);
  return r;
}

class Stopwatch {
 public:
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

}  // namespace galoispts
