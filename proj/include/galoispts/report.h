#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "galoispts/check.h"
#include "galoispts/curves.h"

namespace galoispts::report {

inline constexpr const char* kVersion = "1.0.0";
inline constexpr uint64_t kDefaultSeed = 0x5eed0001;
inline constexpr uint64_t kExtensionFieldBound = uint64_t{1} << 16;

struct VerifyOptions {
  curves::Family family = curves::Family::kHermitian;
  uint64_t parameter = 3;  // q for Hermitian, q0 otherwise
  /// Certificate extension degree; the family default when unset.
  std::optional<unsigned> extension;
  std::optional<bool> implicitization;
  std::optional<bool> sylow_audit;
  std::optional<int64_t> series_order;
  std::string wtable_path;
  bool stable = false;
  uint64_t seed = kDefaultSeed;
};

/// Illegal flag combination or parameter.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct FieldDescriptor {
  uint32_t p = 0, n = 0;
  std::vector<uint32_t> modulus;
};

struct Report {
  std::string family;
  uint32_t p = 0;
  uint64_t q = 0, q0 = 0;
  std::vector<FieldDescriptor> fields;  // ascending (p, n)
  std::vector<CheckResult> checks;      // execution order
  std::optional<uint64_t> wtable_checksum;
  bool stable = false;
  uint64_t seed = kDefaultSeed;
  bool resource_bound_hit = false;

  bool any_failed() const;
  /// 0 when nothing failed, 3 when a resource bound stopped the run, else 1.
  int exit_code() const;
  const CheckResult* find(const std::string& id) const;
  nlohmann::json to_json() const;
  std::string to_text() const;
};

/// Default switches resolved for a family and parameter.
struct ResolvedOptions {
  /// Certificate extension; unset means the family default (Hermitian 2,
  /// otherwise the smallest extension of at most kExtensionFieldBound
  /// elements that adds rational points).
  std::optional<unsigned> extension;
  bool implicitization = false;
  unsigned implicitization_extension = 0;
  bool sylow_audit = false;
};
ResolvedOptions resolve(const VerifyOptions& opt);

/// Runs the family's checks in their fixed order. Throws UsageError for
/// illegal options; construction failures become a failed check.
Report run_verify(const VerifyOptions& opt);

}  // namespace galoispts::report
