#pragma once

#include <cstdint>
#include <ostream>
#include <string>

namespace semitree {

using GroupElem = std::int64_t;

/// Target group G of the step functions: the integers or Z/k for k >= 2.
class GroupSpec {
 public:
  enum class Kind { Integers, Cyclic };

  static GroupSpec integers() { return GroupSpec(Kind::Integers, 0); }
  static GroupSpec cyclic(std::int64_t k);

  Kind kind() const { return kind_; }
  /// k for Z/k; 0 for the integers.
  std::int64_t modulus() const { return modulus_; }
  bool is_finite() const { return kind_ == Kind::Cyclic; }

  bool contains(GroupElem v) const { return kind_ == Kind::Integers || (v >= 0 && v < modulus_); }
  GroupElem normalize(GroupElem v) const;
  GroupElem add(GroupElem a, GroupElem b) const { return normalize(a + b); }
  GroupElem negate(GroupElem a) const { return normalize(-a); }
  GroupElem sub(GroupElem a, GroupElem b) const { return normalize(a - b); }

  /// "z2", "z5", "int", ...
  std::string name() const;
  /// Accepts "int" or "z<k>".
  static GroupSpec parse(const std::string& name);

  friend bool operator==(const GroupSpec&, const GroupSpec&) = default;
  friend std::ostream& operator<<(std::ostream& os, const GroupSpec& g) { return os << g.name(); }

 private:
  GroupSpec(Kind kind, std::int64_t modulus) : kind_(kind), modulus_(modulus) {}
  Kind kind_ = Kind::Cyclic;
  std::int64_t modulus_ = 2;
};

}  // namespace semitree
