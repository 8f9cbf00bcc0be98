#include <doctest.h>

#include <bit>
#include <map>

#include "kanforge/fibrancy.hpp"
#include "kanforge/zoo.hpp"
#include "oracles.hpp"

using namespace kanforge;

TEST_CASE("horn categories") {
  // Lambda^1[2] is the path 0 -> 1 -> 2 freely: 3 identities, 2 generators, 1 composite.
  const HornCategory h = horn_category(2, 1);
  CHECK(h.category->num_objects() == 3);
  CHECK(h.category->num_morphisms() == 6);
  // Lambda^0[2] has no composite 1 -> 2.
  CHECK(horn_category(2, 0).category->num_morphisms() == 5);
  // Inner 3-horns already contain every composable pair's composite.
  CHECK(horn_category(3, 1).category->num_morphisms() == 10);
}

TEST_CASE("level 0 detects groupoids") {
  for (const auto& cat : {zoo::cyclic_group(3), zoo::walking_iso(), zoo::chain_poset(1), zoo::idempotent_monoid()}) {
    auto c = share(cat);
    CAPTURE(c->name());
    const auto rep = fibrancy_report(c, 0, 3);
    CHECK((rep.verdict == Verdict::Pass) == oracle::groupoid(*c));
  }
  const auto rep = fibrancy_report(share(zoo::chain_poset(1)), 0, 3);
  REQUIRE_FALSE(rep.horns.empty());
  const auto& last = rep.horns.back();
  CHECK(last.n == 2);
  CHECK(last.verdict == HornVerdict::Failed);
  CHECK(last.witness0.has_value());
}

TEST_CASE("level 1 on small categories") {
  CHECK(fibrancy_report(share(zoo::chain_poset(2)), 1, 3).verdict == Verdict::Pass);
  CHECK(fibrancy_report(share(zoo::idempotent_monoid()), 1, 3).verdict == Verdict::Pass);
  const auto pp = fibrancy_report(share(zoo::parallel_pair()), 1, 2);
  CHECK(pp.verdict == Verdict::Fail);
  CHECK(pp.horns.back().witness.has_value());
}

TEST_CASE("the K-cone route agrees with the direct level-2 test") {
  for (const auto& cat : {zoo::parallel_pair(), zoo::idempotent_monoid(), zoo::chain_poset(2)}) {
    auto c = share(cat);
    CAPTURE(c->name());
    FibrancyOptions opts;
    opts.boundary_cap = 300;
    opts.stop_at_first_failure = false;
    const auto direct = check_horn(c, 2, 2, 2, opts);
    const auto cone = rlp_via_kcone(c, 2, opts);
    CHECK(direct.verdict == cone.verdict);
    CHECK(direct.boundaries == cone.boundaries);
  }
}

TEST_CASE("conjugated boundaries restrict correctly") {
  auto c = share(zoo::fi_skeleton(2));
  const SdPoset src = sd_horn(2, 0, 2);
  const SdPoset dst = sd_horn(2, 2, 2);
  int seen = 0;
  enumerate_diagrams(src.poset, c, EnumOptions{50, true}, [&](const Diagram& b) {
    const Diagram moved = conjugate_boundary(2, 0, b, dst.poset);
    CHECK(moved.complete());
    CHECK_FALSE(moved.violation());
    ++seen;
    return true;
  });
  CHECK(seen > 0);
}

TEST_CASE("worker count does not change the verdict") {
  auto c = share(zoo::idempotent_monoid());
  FibrancyOptions one, four;
  four.workers = 4;
  const auto a = fibrancy_report(c, 1, 3, one);
  const auto b = fibrancy_report(c, 1, 3, four);
  CHECK(a.verdict == b.verdict);
  REQUIRE(a.horns.size() == b.horns.size());
  for (std::size_t i = 0; i < a.horns.size(); ++i) CHECK(a.horns[i].boundaries == b.horns[i].boundaries);
}

TEST_CASE("reusing equivalent level-1 boundaries does not change verdicts") {
  for (const auto& cat : {zoo::fi_skeleton(2), zoo::idempotent_monoid(), zoo::chain_poset(2), zoo::cyclic_group(2)}) {
    auto c = share(cat);
    CAPTURE(c->name());
    FibrancyOptions on, off;
    off.reuse_equivalent = false;
    for (int k = 0; k <= 3; ++k) {
      CAPTURE(k);
      const auto a = check_horn(c, 1, 3, k, on);
      const auto b = check_horn(c, 1, 3, k, off);
      CHECK(a.verdict == b.verdict);
      CHECK(b.equivalent == 0);
      CHECK(a.witness.has_value() == b.witness.has_value());
    }
  }
}

TEST_CASE("level-1 fillability is constant on boundaries with equal face data") {
  // Independent key: objects on faces of dimension >= n-2 (and n-3 inside
  // the missing face) plus every arrow between such faces.
  int classes_with_both = 0;
  for (const auto& cat : {zoo::fi_skeleton(2), zoo::enumerate_monoids(3)[4], zoo::parallel_pair()}) {
    auto c = share(cat);
    CAPTURE(c->name());
    const int n = 3, k = 0;
    const SdPoset horn = sd_horn(n, k, 1);
    const SdPoset delta = sd_delta(n, 1);
    auto relevant = [&](int x) {
      const Subset s = horn.chains[x][0];
      const int size = std::popcount(s);
      return size >= n - 1 || (size == n - 2 && !(s & (Subset{1} << k)));
    };
    std::map<std::vector<int>, bool> seen;
    enumerate_diagrams(horn.poset, c, EnumOptions{20000, false}, [&](const Diagram& b) {
      std::vector<int> key;
      for (int x = 0; x < horn.size(); ++x) {
        if (!relevant(x)) continue;
        key.push_back(b.at(x));
        for (int y = 0; y < horn.size(); ++y)
          if (x != y && relevant(y) && horn.poset->leq(x, y)) key.push_back(b.arrow(x, y));
      }
      const bool fills =
          extend_functor(make_lifting_problem(b, delta.poset, horn.inclusion)).status == LiftStatus::Filled;
      auto [it, fresh] = seen.emplace(key, fills);
      if (!fresh) {
        CHECK(it->second == fills);
        ++classes_with_both;
      }
      return true;
    });
  }
  CHECK(classes_with_both > 0);
}
