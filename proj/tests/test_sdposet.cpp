#include <doctest.h>

#include <set>

#include "kanforge/sdposet.hpp"
#include "oracles.hpp"

using namespace kanforge;

TEST_CASE("level-1 subdivision is the nonempty subset lattice") {
  for (int n = 0; n <= 4; ++n) {
    const SdPoset d = sd_delta(n, 1);
    CHECK(d.size() == (1 << (n + 1)) - 1);
    for (int a = 0; a < d.size(); ++a)
      for (int b = 0; b < d.size(); ++b) {
        const Subset x = d.chains[a][0], y = d.chains[b][0];
        CHECK(d.poset->leq(a, b) == ((x & ~y) == 0));
      }
  }
  CHECK(sd_horn(3, 0, 1).size() == 13);
}

TEST_CASE("level-2 sizes match the chain oracle") {
  for (int n = 0; n <= 4; ++n) {
    CAPTURE(n);
    CHECK(static_cast<std::uint64_t>(sd_delta(n, 2).size()) == oracle::subset_chains(n + 1));
  }
  CHECK(sd_delta(2, 2).size() == 25);
  CHECK(sd_delta(3, 2).size() == 149);
}

TEST_CASE("level-2 order is chain inclusion") {
  const SdPoset d = sd_delta(2, 2);
  for (int a = 0; a < d.size(); ++a)
    for (int b = 0; b < d.size(); ++b) {
      const std::set<Subset> x(d.chains[a].begin(), d.chains[a].end()), y(d.chains[b].begin(), d.chains[b].end());
      bool sub = true;
      for (Subset s : x) sub = sub && y.count(s);
      CHECK(d.poset->leq(a, b) == sub);
    }
}

TEST_CASE("horns keep the chains whose top lies in the horn") {
  // Lambda^2[2] at level 2: tops {0}, {1}, {2}, {0,2}, {1,2}.
  const SdPoset h = sd_horn(2, 2, 2);
  CHECK(h.size() == 9);
  const SdPoset d = sd_delta(2, 2);
  for (int x = 0; x < h.size(); ++x) {
    CHECK(d.chains[h.inclusion[x]] == h.chains[x]);
    for (int y = 0; y < h.size(); ++y) CHECK(h.poset->leq(x, y) == d.poset->leq(h.inclusion[x], h.inclusion[y]));
  }
}

TEST_CASE("level 3 iterates the chain construction") {
  // c Sd^2 Delta[1] has 5 elements and 4 strict relations.
  CHECK(sd_delta(1, 3).size() == 9);
}

TEST_CASE("k_cone shape") {
  const SdPoset h = sd_horn(2, 2, 2);
  const KPoset k = k_cone(h.poset);
  CHECK(k.poset->size() == 2 * h.size() + 1);
  for (int x = 0; x < h.size(); ++x) {
    CHECK(k.poset->leq(k.zero[x], k.one[x]));
    CHECK(k.poset->leq(k.apex, k.one[x]));
    CHECK_FALSE(k.poset->leq(k.apex, k.zero[x]));
    CHECK_FALSE(k.poset->leq(k.one[x], k.zero[x]));
  }
}

TEST_CASE("retraction, embedding and horn automorphisms") {
  for (int n = 1; n <= 4; ++n) {
    CAPTURE(n);
    const SdPoset d = sd_delta(n, 2);
    const SdPoset h = sd_horn(n, n, 2);
    const KPoset kh = k_cone(h.poset);
    const auto p = p_embedding(n, h, kh, d);
    CHECK(is_order_embedding(*kh.poset, *d.poset, p));
    std::set<int> image(p.begin(), p.end());
    for (int x = 0; x < d.size(); ++x) CHECK((image.count(x) > 0) == in_p(n, d.chains[x]));
    const auto r = retraction(n, d);
    CHECK(is_monotone(*d.poset, *d.poset, r));
    for (int x = 0; x < d.size(); ++x) {
      CHECK(image.count(r[x]));
      if (image.count(x)) CHECK(r[x] == x);
    }
    for (int i = 0; i <= n; ++i) {
      const auto theta = horn_automorphism(n, i, d);
      const SdPoset src = sd_horn(n, i, 2);
      std::set<int> target(h.inclusion.begin(), h.inclusion.end());
      for (int x = 0; x < src.size(); ++x) CHECK(target.count(theta[src.inclusion[x]]));
      CHECK(is_order_embedding(*d.poset, *d.poset, theta));
    }
  }
}

TEST_CASE("bad arguments are input errors") {
  CHECK_THROWS_AS(sd_delta(-1, 2), InputError);
  CHECK_THROWS_AS(sd_horn(2, 3, 2), InputError);
  CHECK_THROWS_AS(sd_delta(2, 0), InputError);
}
