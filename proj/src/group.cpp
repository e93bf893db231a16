#include "semitree/group.hpp"

#include "semitree/errors.hpp"

namespace semitree {

GroupSpec GroupSpec::cyclic(std::int64_t k) {
  if (k < 2) throw ArgumentError("cyclic group needs modulus >= 2, got " + std::to_string(k));
  return GroupSpec(Kind::Cyclic, k);
}

GroupElem GroupSpec::normalize(GroupElem v) const {
  if (kind_ == Kind::Integers) return v;
  GroupElem r = v % modulus_;
  return r < 0 ? r + modulus_ : r;
}

std::string GroupSpec::name() const {
  return kind_ == Kind::Integers ? "int" : "z" + std::to_string(modulus_);
}

GroupSpec GroupSpec::parse(const std::string& name) {
  if (name == "int") return integers();
  if (name.size() >= 2 && name[0] == 'z') {
    try {
      std::size_t used = 0;
      const long long k = std::stoll(name.substr(1), &used);
      if (used == name.size() - 1) return cyclic(k);
    } catch (const std::logic_error&) {
    }
  }
  throw ParseError("unknown group '" + name + "' (expected int or z<k>)");
}

}  // namespace semitree
