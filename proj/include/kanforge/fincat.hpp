#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace kanforge {

using ObjId = std::int32_t;
using MorId = std::int32_t;
inline constexpr std::int32_t kNone = -1;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised for malformed input: bad files, bad names, ill-typed requests.
class InputError : public Error {
 public:
  using Error::Error;
};

struct LawViolation {
  std::string law;
  std::string detail;
};

class CategoryError : public InputError {
 public:
  explicit CategoryError(LawViolation v)
      : InputError(v.law + ": " + v.detail), violation_(std::move(v)) {}
  const LawViolation& violation() const { return violation_; }

 private:
  LawViolation violation_;
};

struct MorphismInfo {
  std::string name;
  ObjId dom = kNone;
  ObjId cod = kNone;
};

// Unvalidated composition table. compose entries are {f, g, g∘f}.
struct RawCategory {
  std::string name;
  std::vector<std::string> objects;
  std::vector<MorphismInfo> morphisms;
  std::vector<MorId> identity;
  std::vector<std::array<MorId, 3>> compose;
};

std::optional<LawViolation> find_law_violation(const RawCategory& raw);

class FinCategory {
 public:
  // Throws CategoryError naming the first violated law.
  static FinCategory from_raw(RawCategory raw);

  const std::string& name() const { return name_; }
  std::size_t num_objects() const { return objects_.size(); }
  std::size_t num_morphisms() const { return morphisms_.size(); }

  const std::string& object_name(ObjId x) const { return objects_[x]; }
  const std::string& morphism_name(MorId f) const { return morphisms_[f].name; }
  ObjId dom(MorId f) const { return morphisms_[f].dom; }
  ObjId cod(MorId f) const { return morphisms_[f].cod; }
  MorId identity(ObjId x) const { return identity_[x]; }
  bool is_identity(MorId f) const { return identity_[dom(f)] == f; }

  // g∘f; kNone unless cod(f) == dom(g).
  MorId compose(MorId g, MorId f) const {
    return table_[static_cast<std::size_t>(f) * morphisms_.size() + g];
  }

  std::span<const MorId> hom(ObjId x, ObjId y) const {
    return hom_[static_cast<std::size_t>(x) * objects_.size() + y];
  }

  std::optional<ObjId> find_object(const std::string& name) const;
  std::optional<MorId> find_morphism(const std::string& name) const;

  RawCategory to_raw() const;
  FinCategory renamed(std::string name) const;

 private:
  std::string name_;
  std::vector<std::string> objects_;
  std::vector<MorphismInfo> morphisms_;
  std::vector<MorId> identity_;
  std::vector<MorId> table_;
  std::vector<std::vector<MorId>> hom_;
  std::unordered_map<std::string, ObjId> object_index_;
  std::unordered_map<std::string, MorId> morphism_index_;
};

using CategoryPtr = std::shared_ptr<const FinCategory>;

inline CategoryPtr share(FinCategory c) {
  return std::make_shared<const FinCategory>(std::move(c));
}

FinCategory validate_category(RawCategory raw);
FinCategory opposite(const FinCategory& c);

// True iff the two tables coincide entry by entry, names included.
bool same_table(const FinCategory& a, const FinCategory& b);

struct Functor {
  CategoryPtr source;
  CategoryPtr target;
  std::vector<ObjId> obj;
  std::vector<MorId> mor;
};

std::optional<std::string> functor_violation(const Functor& f);

struct GroupoidCheck {
  bool holds = false;
  MorId witness = kNone;
};
GroupoidCheck is_groupoid(const FinCategory& c);
std::optional<MorId> inverse(const FinCategory& c, MorId f);
std::vector<MorId> automorphisms(const FinCategory& c, ObjId x);

struct FilteredCheck {
  bool holds = false;
  // Either a pair of objects without a cocone, or a parallel pair of
  // morphisms that nothing equalizes.
  std::optional<std::array<ObjId, 2>> objects;
  std::optional<std::array<MorId, 2>> parallel;
};
FilteredCheck is_filtered(const FinCategory& c);

}  // namespace kanforge
