#include <doctest.h>

#include "kanforge/fincat.hpp"
#include "kanforge/poset.hpp"
#include "kanforge/zoo.hpp"
#include "oracles.hpp"

using namespace kanforge;

namespace {

RawCategory idempotent_raw() {
  RawCategory r;
  r.name = "M";
  r.objects = {"*"};
  r.morphisms = {{"1", 0, 0}, {"a", 0, 0}};
  r.identity = {0};
  r.compose = {{0, 0, 0}, {0, 1, 1}, {1, 0, 1}, {1, 1, 1}};
  return r;
}

}  // namespace

TEST_CASE("validated table composes as given") {
  const FinCategory c = validate_category(idempotent_raw());
  CHECK(c.num_objects() == 1);
  CHECK(c.num_morphisms() == 2);
  CHECK(c.compose(1, 1) == 1);
  CHECK(c.is_identity(0));
  CHECK_FALSE(c.is_identity(1));
  CHECK(c.hom(0, 0).size() == 2);
}

TEST_CASE("law violations are named") {
  SUBCASE("missing composite") {
    auto r = idempotent_raw();
    r.compose.pop_back();
    auto v = find_law_violation(r);
    REQUIRE(v);
    CHECK(v->law == "totality");
  }
  SUBCASE("associativity") {
    // a∘a = 1 and b∘b = 1 with a∘b = a is not associative.
    RawCategory r;
    r.objects = {"*"};
    r.morphisms = {{"1", 0, 0}, {"a", 0, 0}, {"b", 0, 0}};
    r.identity = {0};
    for (int f = 0; f < 3; ++f) {
      r.compose.push_back({0, f, f});
      if (f) r.compose.push_back({f, 0, f});
    }
    r.compose.push_back({1, 1, 0});
    r.compose.push_back({2, 2, 0});
    r.compose.push_back({2, 1, 1});  // a∘b = a
    r.compose.push_back({1, 2, 1});  // b∘a = a
    auto v = find_law_violation(r);
    REQUIRE(v);
    CHECK(v->law == "associativity");
    CHECK_THROWS_AS(validate_category(r), CategoryError);
  }
  SUBCASE("duplicate names") {
    auto r = idempotent_raw();
    r.morphisms[1].name = "1";
    auto v = find_law_violation(r);
    REQUIRE(v);
    CHECK(v->law == "names");
  }
}

TEST_CASE("opposite swaps composition order") {
  const FinCategory c = zoo::fi_skeleton(3);
  const FinCategory op = opposite(c);
  for (MorId f = 0; f < static_cast<MorId>(c.num_morphisms()); ++f) {
    CHECK(op.dom(f) == c.cod(f));
    for (MorId g = 0; g < static_cast<MorId>(c.num_morphisms()); ++g)
      if (c.cod(f) == c.dom(g)) CHECK(op.compose(f, g) == c.compose(g, f));
  }
}

TEST_CASE("fi_skeleton(3) has 4 objects and 24 injections") {
  const FinCategory c = zoo::fi_skeleton(3);
  CHECK(c.num_objects() == 4);
  CHECK(c.num_morphisms() == 24);
  CHECK(zoo::fi_skeleton(3, false).num_objects() == 3);
}

TEST_CASE("groupoid check agrees with the inverse oracle") {
  for (const auto& c : {zoo::cyclic_group(3), zoo::walking_iso(), zoo::idempotent_monoid(), zoo::chain_poset(1),
                        zoo::discrete(2), zoo::parallel_pair()}) {
    CAPTURE(c.name());
    CHECK(is_groupoid(c).holds == oracle::groupoid(c));
  }
  const auto chk = is_groupoid(zoo::chain_poset(1));
  REQUIRE(chk.witness != kNone);
  CHECK_FALSE(zoo::chain_poset(1).is_identity(chk.witness));
}

TEST_CASE("filtered categories") {
  CHECK(is_filtered(zoo::chain_poset(3)).holds);
  CHECK(is_filtered(zoo::idempotent_monoid()).holds);
  CHECK_FALSE(is_filtered(zoo::discrete(2)).holds);
  const auto pp = is_filtered(zoo::parallel_pair());
  CHECK_FALSE(pp.holds);
  CHECK(pp.parallel.has_value());
}

TEST_CASE("functor validation") {
  auto src = share(zoo::chain_poset(1));
  auto dst = share(zoo::idempotent_monoid());
  Functor f{src, dst, {0, 0}, {}};
  f.mor.assign(src->num_morphisms(), 0);
  CHECK_FALSE(functor_violation(f));
  // Sending 0<=1 to a is also a functor; sending an identity to a is not.
  for (MorId m = 0; m < static_cast<MorId>(src->num_morphisms()); ++m)
    if (src->is_identity(m)) f.mor[m] = 1;
  CHECK(functor_violation(f));
}

TEST_CASE("poset category round trip") {
  const FinPoset p = zoo::boolean_lattice_poset(2);
  const FinCategory c = poset_as_category(p);
  auto back = category_as_poset(c);
  REQUIRE(back);
  CHECK(back->size() == p.size());
  CHECK(back->num_related_pairs() == p.num_related_pairs());
  CHECK_FALSE(category_as_poset(zoo::idempotent_monoid()));
}
