#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "kanforge/diagram.hpp"
#include "kanforge/fincat.hpp"
#include "kanforge/poset.hpp"

namespace kanforge {

inline constexpr std::uint64_t kDefaultBudget = 10'000'000;
inline constexpr std::uint64_t kDefaultBoundaryCap = 1'000'000;

enum class LiftStatus { Filled, Exhausted, Budget };
std::string to_string(LiftStatus s);

struct SearchOptions {
  std::uint64_t budget = kDefaultBudget;
  // Restrict unconstrained elements to one object per isomorphism class
  // and to connecting arrows that are lexicographically least in their
  // orbit under the automorphisms of that object. Exact: it removes only
  // solutions that are naturally isomorphic, rel the fixed data, to one kept.
  bool up_to_iso = true;
};

struct LiftReport {
  LiftStatus status = LiftStatus::Exhausted;
  std::optional<Diagram> filler;
  std::uint64_t nodes = 0;
  std::chrono::nanoseconds elapsed{0};
};

// ambient C, poset B, subposet A (flags) and a functor on A stored in a
// partial diagram over B.
struct LiftingProblem {
  CategoryPtr target;
  PosetPtr domain;
  std::vector<char> in_sub;
  Diagram partial;
};

// Builds the problem for a functor on a subposet given by an index map
// sub -> domain (an order embedding).
LiftingProblem make_lifting_problem(const Diagram& on_sub, const PosetPtr& domain, const std::vector<int>& inclusion);

// Throws InputError unless the problem is well formed.
void check_problem(const LiftingProblem& p);

LiftReport extend_functor(const LiftingProblem& p, const SearchOptions& opts = {});

// Completes an arbitrary partial diagram (any objects and arrows may be
// preset). Filled results are validated before being returned.
LiftReport extend_diagram(const Diagram& partial, const SearchOptions& opts = {});

struct EnumOptions {
  std::uint64_t cap = kDefaultBoundaryCap;
  bool up_to_iso = true;
};

struct EnumResult {
  std::uint64_t count = 0;
  bool truncated = false;
  // Stopped because the visitor asked to.
  bool stopped = false;
};

// Calls visit on functors shape -> target (one per natural-isomorphism
// class at least, when up_to_iso). visit returns false to stop.
EnumResult enumerate_diagrams(const PosetPtr& shape, const CategoryPtr& target, const EnumOptions& opts,
                              const std::function<bool(const Diagram&)>& visit);

// Functors between finite categories, by brute force over object and
// morphism assignments. Used for level-0 horns.
EnumResult enumerate_functors(const CategoryPtr& source, const CategoryPtr& target, std::uint64_t cap,
                              const std::function<bool(const Functor&)>& visit);

}  // namespace kanforge
