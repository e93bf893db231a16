#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "semitree/rational.hpp"

namespace semitree {

/// One failed check of an audit. Witnesses are indices into the audited sample;
/// lhs/rhs hold the two sides of a failed identity or inequality when it has them.
struct Violation {
  std::string check;
  std::vector<std::size_t> witness;
  std::optional<Rational> lhs;
  std::optional<Rational> rhs;
};

struct AuditReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  /// Violations of one named check.
  std::size_t count(const std::string& check) const {
    std::size_t n = 0;
    for (const auto& v : violations) n += v.check == check ? 1 : 0;
    return n;
  }
};

}  // namespace semitree
