#include "kanforge/zoo.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace kanforge::zoo {

namespace {

std::string set_name(int size) {
  std::string s = "{";
  for (int i = 0; i < size; ++i) {
    if (i) s += ",";
    s += std::to_string(i);
  }
  return s + "}";
}

std::string bits_name(unsigned mask, int n) {
  std::string s = "{";
  bool first = true;
  for (int i = 0; i < n; ++i)
    if (mask >> i & 1u) {
      if (!first) s += ",";
      s += std::to_string(i);
      first = false;
    }
  return s + "}";
}

}  // namespace

FinCategory idempotent_monoid() { return monoid_from_table(2, {0, 1, 1, 1}, "idempotent"); }

FinCategory monoid_from_table(int order, const std::vector<int>& table, std::string name) {
  static const char* kLetters = "1abcdefghijk";
  if (order < 1 || order > 12) throw InputError("monoid order out of range");
  RawCategory r;
  r.name = std::move(name);
  r.objects = {"*"};
  for (int i = 0; i < order; ++i) r.morphisms.push_back({std::string(1, kLetters[i]), 0, 0});
  r.identity = {0};
  for (int f = 0; f < order; ++f)
    for (int g = 0; g < order; ++g) r.compose.push_back({f, g, table[g * order + f]});
  return FinCategory::from_raw(std::move(r));
}

FinCategory fi_skeleton(int max_size, bool include_empty) {
  if (max_size < 0 || max_size > 4) throw InputError("fi_skeleton: size must be in 0..4");
  const int lo = include_empty ? 0 : 1;
  RawCategory r;
  r.name = "FI" + std::to_string(max_size);
  std::vector<int> sizes;
  for (int j = lo; j <= max_size; ++j) {
    sizes.push_back(j);
    r.objects.push_back(set_name(j));
  }
  std::vector<std::vector<int>> images;
  std::map<std::pair<int, std::vector<int>>, MorId> index;
  for (int a = 0; a < static_cast<int>(sizes.size()); ++a)
    for (int b = 0; b < static_cast<int>(sizes.size()); ++b) {
      if (sizes[a] > sizes[b]) continue;
      std::vector<int> pool(sizes[b]);
      std::iota(pool.begin(), pool.end(), 0);
      std::vector<std::vector<int>> maps;
      // Every injection is a prefix of some permutation; collect distinct prefixes.
      do {
        maps.emplace_back(pool.begin(), pool.begin() + sizes[a]);
      } while (std::next_permutation(pool.begin(), pool.end()));
      std::sort(maps.begin(), maps.end());
      maps.erase(std::unique(maps.begin(), maps.end()), maps.end());
      for (auto& m : maps) {
        std::string name = std::to_string(sizes[a]) + ">" + std::to_string(sizes[b]) + ":";
        for (int v : m) name += std::to_string(v);
        index[{b, m}] = static_cast<MorId>(r.morphisms.size());
        r.morphisms.push_back({name, a, b});
        images.push_back(m);
      }
    }
  r.identity.resize(sizes.size());
  for (int a = 0; a < static_cast<int>(sizes.size()); ++a) {
    std::vector<int> id(sizes[a]);
    std::iota(id.begin(), id.end(), 0);
    r.identity[a] = index.at({a, id});
  }
  for (MorId f = 0; f < static_cast<MorId>(r.morphisms.size()); ++f)
    for (MorId g = 0; g < static_cast<MorId>(r.morphisms.size()); ++g) {
      if (r.morphisms[f].cod != r.morphisms[g].dom) continue;
      std::vector<int> gf;
      for (int v : images[f]) gf.push_back(images[g][v]);
      r.compose.push_back({f, g, index.at({r.morphisms[g].cod, gf})});
    }
  return FinCategory::from_raw(std::move(r));
}

FinCategory parallel_pair() {
  RawCategory r;
  r.name = "parallel_pair";
  r.objects = {"x", "y"};
  r.morphisms = {{"id_x", 0, 0}, {"id_y", 1, 1}, {"f", 0, 1}, {"g", 0, 1}};
  r.identity = {0, 1};
  r.compose = {{0, 0, 0}, {1, 1, 1}, {0, 2, 2}, {0, 3, 3}, {2, 1, 2}, {3, 1, 3}};
  return FinCategory::from_raw(std::move(r));
}

FinPoset boolean_lattice_poset(int n) {
  if (n < 0 || n > 6) throw InputError("boolean_lattice: n must be in 0..6");
  std::vector<unsigned> masks(1u << n);
  std::iota(masks.begin(), masks.end(), 0u);
  std::stable_sort(masks.begin(), masks.end(),
                   [](unsigned a, unsigned b) { return __builtin_popcount(a) < __builtin_popcount(b); });
  std::vector<std::string> names;
  for (unsigned m : masks) names.push_back(bits_name(m, n));
  return FinPoset::from_leq(std::move(names), [&](int a, int b) { return (masks[a] & ~masks[b]) == 0; });
}

FinCategory boolean_lattice(int n) {
  return poset_as_category(boolean_lattice_poset(n), "B" + std::to_string(n));
}

FinCategory chain_poset(int n) {
  if (n < 0) throw InputError("chain_poset: n must be non-negative");
  std::vector<std::string> names;
  for (int i = 0; i <= n; ++i) names.push_back(std::to_string(i));
  return poset_as_category(FinPoset::from_leq(std::move(names), [](int a, int b) { return a <= b; }),
                           "chain" + std::to_string(n));
}

FinCategory cyclic_group(int n) {
  if (n < 1 || n > 12) throw InputError("cyclic_group: order must be in 1..12");
  RawCategory r;
  r.name = "C" + std::to_string(n);
  r.objects = {"*"};
  for (int i = 0; i < n; ++i) r.morphisms.push_back({i == 0 ? "e" : "g" + std::to_string(i), 0, 0});
  r.identity = {0};
  for (int f = 0; f < n; ++f)
    for (int g = 0; g < n; ++g) r.compose.push_back({f, g, (f + g) % n});
  return FinCategory::from_raw(std::move(r));
}

FinCategory walking_iso() {
  RawCategory r;
  r.name = "walking_iso";
  r.objects = {"x", "y"};
  r.morphisms = {{"id_x", 0, 0}, {"id_y", 1, 1}, {"i", 0, 1}, {"j", 1, 0}};
  r.identity = {0, 1};
  r.compose = {{0, 0, 0}, {1, 1, 1}, {0, 2, 2}, {2, 1, 2}, {1, 3, 3},
               {3, 0, 3}, {2, 3, 0}, {3, 2, 1}};
  return FinCategory::from_raw(std::move(r));
}

FinCategory discrete(int n) {
  if (n < 0) throw InputError("discrete: n must be non-negative");
  RawCategory r;
  r.name = "discrete" + std::to_string(n);
  for (int i = 0; i < n; ++i) {
    r.objects.push_back(std::to_string(i));
    r.morphisms.push_back({"id_" + std::to_string(i), i, i});
    r.identity.push_back(i);
    r.compose.push_back({i, i, i});
  }
  return FinCategory::from_raw(std::move(r));
}

std::vector<FinCategory> enumerate_monoids(int max_order) {
  if (max_order < 1 || max_order > 4) throw InputError("enumerate_monoids: order must be in 1..4");
  std::vector<FinCategory> out;
  for (int order = 1; order <= max_order; ++order) {
    const int k = order - 1;
    std::vector<int> table(order * order);
    for (int i = 0; i < order; ++i) {
      table[i] = i;
      table[i * order] = i;
    }
    std::vector<int> free(k * k, 0);
    std::vector<std::vector<int>> canon;
    std::vector<int> perm(order);
    while (true) {
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) table[(i + 1) * order + j + 1] = free[i * k + j];
      bool assoc = true;
      for (int a = 0; a < order && assoc; ++a)
        for (int b = 0; b < order && assoc; ++b)
          for (int c = 0; c < order && assoc; ++c)
            assoc = table[table[a * order + b] * order + c] == table[a * order + table[b * order + c]];
      if (assoc) {
        std::iota(perm.begin(), perm.end(), 0);
        std::vector<int> best;
        do {
          // relabel x -> perm[x]; the unit stays fixed.
          std::vector<int> t(order * order);
          for (int a = 0; a < order; ++a)
            for (int b = 0; b < order; ++b) t[perm[a] * order + perm[b]] = perm[table[a * order + b]];
          if (best.empty() || t < best) best = t;
        } while (std::next_permutation(perm.begin() + 1, perm.end()));
        canon.push_back(best);
      }
      int pos = 0;
      while (pos < k * k && ++free[pos] == order) free[pos++] = 0;
      if (pos == k * k) break;
    }
    std::sort(canon.begin(), canon.end());
    canon.erase(std::unique(canon.begin(), canon.end()), canon.end());
    for (std::size_t i = 0; i < canon.size(); ++i)
      out.push_back(monoid_from_table(order, canon[i], "M" + std::to_string(order) + "_" + std::to_string(i)));
  }
  return out;
}

std::vector<FinCategory> enumerate_posets(int max_size) {
  if (max_size < 1 || max_size > 5) throw InputError("enumerate_posets: size must be in 1..5");
  std::vector<FinCategory> out;
  for (int n = 1; n <= max_size; ++n) {
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
    std::vector<std::uint32_t> canon;
    std::vector<int> perm(n);
    for (std::uint32_t mask = 0; mask < (1u << pairs.size()); ++mask) {
      std::vector<char> rel(n * n, 0);
      for (int i = 0; i < n; ++i) rel[i * n + i] = 1;
      for (std::size_t p = 0; p < pairs.size(); ++p)
        if (mask >> p & 1u) rel[pairs[p].first * n + pairs[p].second] = 1;
      bool trans = true;
      for (int a = 0; a < n && trans; ++a)
        for (int b = 0; b < n && trans; ++b)
          for (int c = 0; c < n && trans; ++c)
            if (rel[a * n + b] && rel[b * n + c] && !rel[a * n + c]) trans = false;
      if (!trans) continue;
      // Code over all n*n cells so that every relabelling is comparable.
      std::iota(perm.begin(), perm.end(), 0);
      std::uint32_t best = ~0u;
      do {
        std::uint32_t code = 0;
        bool upper = true;
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < n; ++b)
            if (rel[a * n + b]) {
              if (a != b && perm[a] > perm[b]) upper = false;
              if (perm[a] != perm[b]) code |= 1u << (perm[a] * n + perm[b]);
            }
        if (upper) best = std::min(best, code);
      } while (std::next_permutation(perm.begin(), perm.end()));
      canon.push_back(best);
    }
    std::sort(canon.begin(), canon.end());
    canon.erase(std::unique(canon.begin(), canon.end()), canon.end());
    for (std::size_t i = 0; i < canon.size(); ++i) {
      std::vector<std::string> names;
      for (int a = 0; a < n; ++a) names.push_back(std::to_string(a));
      const std::uint32_t code = canon[i];
      auto p = FinPoset::from_leq(std::move(names),
                                  [&](int a, int b) { return a == b || (code >> (a * n + b) & 1u); });
      out.push_back(poset_as_category(p, "P" + std::to_string(n) + "_" + std::to_string(i)));
    }
  }
  return out;
}

std::vector<std::string> names() {
  return {"idempotent", "fi", "parallel_pair", "boolean_lattice", "chain", "cyclic", "walking_iso", "discrete"};
}

FinCategory by_name(const std::string& name, int param) {
  if (name == "idempotent") return idempotent_monoid();
  if (name == "fi") return fi_skeleton(param < 0 ? 3 : param);
  if (name == "parallel_pair") return parallel_pair();
  if (name == "boolean_lattice") return boolean_lattice(param < 0 ? 3 : param);
  if (name == "chain") return chain_poset(param < 0 ? 1 : param);
  if (name == "cyclic") return cyclic_group(param < 0 ? 2 : param);
  if (name == "walking_iso") return walking_iso();
  if (name == "discrete") return discrete(param < 0 ? 2 : param);
  throw InputError("unknown zoo entry " + name);
}

}  // namespace kanforge::zoo
