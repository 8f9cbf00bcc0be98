#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "kanforge/zoo.hpp"

using namespace kanforge;

namespace {

// Monoids on {0..n-1} with unit 0, up to relabelling the rest.
std::size_t brute_monoids(int n) {
  const int free = (n - 1) * (n - 1);
  std::set<std::vector<int>> classes;
  std::vector<int> digits(free, 0);
  for (long code = 0;; ++code) {
    long rest = code;
    for (int i = 0; i < free; ++i) {
      digits[i] = static_cast<int>(rest % n);
      rest /= n;
    }
    if (rest) break;
    std::vector<int> t(n * n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        t[i * n + j] = i == 0 ? j : j == 0 ? i : digits[(i - 1) * (n - 1) + (j - 1)];
    bool assoc = true;
    for (int a = 0; a < n && assoc; ++a)
      for (int b = 0; b < n && assoc; ++b)
        for (int c = 0; c < n && assoc; ++c) assoc = t[t[a * n + b] * n + c] == t[a * n + t[b * n + c]];
    if (!assoc) continue;
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<int> best;
    do {
      std::vector<int> u(n * n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) u[perm[i] * n + perm[j]] = perm[t[i * n + j]];
      if (best.empty() || u < best) best = u;
    } while (std::next_permutation(perm.begin() + 1, perm.end()));
    classes.insert(best);
  }
  return classes.size();
}

std::size_t brute_posets(int n) {
  std::set<std::vector<char>> classes;
  const int pairs = n * n;
  for (long mask = 0; mask < (1L << pairs); ++mask) {
    auto le = [&](int a, int b) { return a == b || ((mask >> (a * n + b)) & 1); };
    bool ok = true;
    for (int a = 0; a < n && ok; ++a) {
      if ((mask >> (a * n + a)) & 1) ok = false;
      for (int b = 0; b < n && ok; ++b) {
        if (a != b && le(a, b) && le(b, a)) ok = false;
        for (int c = 0; c < n && ok; ++c)
          if (le(a, b) && le(b, c) && !le(a, c)) ok = false;
      }
    }
    if (!ok) continue;
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<char> best;
    do {
      std::vector<char> u(pairs);
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) u[perm[a] * n + perm[b]] = le(a, b);
      if (best.empty() || u < best) best = u;
    } while (std::next_permutation(perm.begin(), perm.end()));
    classes.insert(best);
  }
  return classes.size();
}

std::size_t count_of_size(const std::vector<FinCategory>& cs, std::size_t size, bool by_objects) {
  return static_cast<std::size_t>(std::count_if(cs.begin(), cs.end(), [&](const FinCategory& c) {
    return (by_objects ? c.num_objects() : c.num_morphisms()) == size;
  }));
}

}  // namespace

TEST_CASE("monoid enumeration") {
  const auto ms = zoo::enumerate_monoids(3);
  CHECK(count_of_size(ms, 1, false) == 1);
  CHECK(count_of_size(ms, 2, false) == 2);
  CHECK(count_of_size(ms, 3, false) == brute_monoids(3));
  CHECK(brute_monoids(3) == 7);
  for (const auto& m : ms) CHECK(m.num_objects() == 1);
}

TEST_CASE("poset enumeration") {
  const auto ps = zoo::enumerate_posets(4);
  CHECK(count_of_size(ps, 1, true) == 1);
  CHECK(count_of_size(ps, 2, true) == 2);
  CHECK(count_of_size(ps, 3, true) == brute_posets(3));
  CHECK(count_of_size(ps, 4, true) == brute_posets(4));
  CHECK(brute_posets(4) == 16);
}

TEST_CASE("named builders") {
  for (const auto& n : zoo::names()) CHECK_NOTHROW(zoo::by_name(n, 2));
  CHECK_THROWS_AS(zoo::by_name("nonsense", 1), InputError);
  CHECK_THROWS_AS(zoo::fi_skeleton(5), InputError);
  CHECK(zoo::boolean_lattice(3).num_objects() == 8);
  CHECK(zoo::cyclic_group(4).num_morphisms() == 4);
}
