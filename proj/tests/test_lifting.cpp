#include <doctest.h>

#include "kanforge/lifting.hpp"
#include "kanforge/sdposet.hpp"
#include "kanforge/zoo.hpp"
#include "oracles.hpp"

using namespace kanforge;

namespace {

bool restricts_to(const Diagram& full, const Diagram& sub, const std::vector<int>& incl) {
  for (int x = 0; x < sub.size(); ++x) {
    if (full.at(incl[x]) != sub.at(x)) return false;
    for (int y = 0; y < sub.size(); ++y)
      if (sub.shape()->leq(x, y) && full.arrow(incl[x], incl[y]) != sub.arrow(x, y)) return false;
  }
  return true;
}

void compare_with_oracle(const CategoryPtr& c, int n, int k, bool up_to_iso) {
  const SdPoset horn = sd_horn(n, k, 1);
  const SdPoset delta = sd_delta(n, 1);
  int filled = 0, exhausted = 0;
  enumerate_diagrams(horn.poset, c, EnumOptions{2000, false}, [&](const Diagram& b) {
    const auto prob = make_lifting_problem(b, delta.poset, horn.inclusion);
    const auto rep = extend_functor(prob, SearchOptions{kDefaultBudget, up_to_iso});
    REQUIRE(rep.status != LiftStatus::Budget);
    const bool exists = oracle::count_extensions(prob.partial, 1) > 0;
    CHECK((rep.status == LiftStatus::Filled) == exists);
    if (rep.filler) {
      CHECK(rep.filler->complete());
      CHECK_FALSE(rep.filler->violation());
      CHECK(restricts_to(*rep.filler, b, horn.inclusion));
      ++filled;
    } else {
      ++exhausted;
    }
    return true;
  });
  CHECK(filled + exhausted > 0);
}

}  // namespace

TEST_CASE("extend_functor matches the naive completion oracle") {
  for (const auto& cat : {zoo::idempotent_monoid(), zoo::parallel_pair(), zoo::chain_poset(2), zoo::cyclic_group(2),
                          zoo::fi_skeleton(2)}) {
    auto c = share(cat);
    CAPTURE(c->name());
    for (int k = 0; k <= 2; ++k) {
      compare_with_oracle(c, 2, k, true);
      compare_with_oracle(c, 2, k, false);
    }
  }
}

TEST_CASE("enumeration up to isomorphism keeps at least one of each class") {
  auto c = share(zoo::walking_iso());
  const SdPoset horn = sd_horn(2, 0, 1);
  const auto all = enumerate_diagrams(horn.poset, c, EnumOptions{100000, false}, [](const Diagram&) { return true; });
  const auto reduced = enumerate_diagrams(horn.poset, c, EnumOptions{100000, true}, [](const Diagram&) { return true; });
  CHECK(reduced.count >= 1);
  CHECK(reduced.count < all.count);
  // Every diagram into the walking isomorphism: 2^5 object choices, arrows forced.
  CHECK(all.count == 32);
}

TEST_CASE("a preset arrow can make an extension impossible") {
  // 0 <= 1 <= 2 in the parallel pair with both outer steps fixed to f and
  // the composite fixed to g.
  auto c = share(zoo::parallel_pair());
  const FinPoset p = FinPoset::from_leq({"0", "1", "2"}, [](int a, int b) { return a <= b; });
  Diagram d(share(p), c);
  const ObjId x = c->dom(*c->find_morphism("f")), y = c->cod(*c->find_morphism("f"));
  d.set_object(0, x);
  d.set_object(2, y);
  d.set_arrow(0, 0, c->identity(x));
  d.set_arrow(2, 2, c->identity(y));
  d.set_arrow(0, 2, *c->find_morphism("g"));
  const auto rep = extend_diagram(d);
  REQUIRE(rep.status == LiftStatus::Filled);
  CHECK(rep.filler->arrow(0, 2) == *c->find_morphism("g"));
  CHECK(oracle::count_extensions(d) == 2);
}

TEST_CASE("budget exhaustion is reported, not hidden") {
  auto c = share(zoo::fi_skeleton(3));
  const SdPoset horn = sd_horn(3, 0, 1);
  const SdPoset delta = sd_delta(3, 1);
  bool saw_budget = false;
  enumerate_diagrams(horn.poset, c, EnumOptions{50, true}, [&](const Diagram& b) {
    const auto rep = extend_functor(make_lifting_problem(b, delta.poset, horn.inclusion), SearchOptions{1, true});
    if (rep.status == LiftStatus::Budget) saw_budget = true;
    CHECK(rep.nodes <= 2);
    return !saw_budget;
  });
  CHECK(saw_budget);
}

TEST_CASE("malformed problems are rejected") {
  auto c = share(zoo::idempotent_monoid());
  const SdPoset horn = sd_horn(2, 0, 1);
  const SdPoset delta = sd_delta(2, 1);
  Diagram partial(horn.poset, c);
  CHECK_THROWS_AS(make_lifting_problem(partial, delta.poset, std::vector<int>(horn.size(), 0)), InputError);
}
