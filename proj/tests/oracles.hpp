// Brute-force reference implementations used only by the tests. They
// follow the definitions directly and share no code with the library
// beyond the category and poset containers.
#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "kanforge/diagram.hpp"
#include "kanforge/fincat.hpp"
#include "kanforge/poset.hpp"

namespace oracle {

using namespace kanforge;

inline std::vector<MorId> all_mor(const FinCategory& c) {
  std::vector<MorId> v(c.num_morphisms());
  for (MorId f = 0; f < static_cast<MorId>(v.size()); ++f) v[f] = f;
  return v;
}

// Morphisms x -> y by scanning the whole table.
inline std::vector<MorId> hom(const FinCategory& c, ObjId x, ObjId y) {
  std::vector<MorId> out;
  for (MorId f : all_mor(c))
    if (c.dom(f) == x && c.cod(f) == y) out.push_back(f);
  return out;
}

// (w, a, b) is a pushout of the span (f, g): every commuting square factors
// through it exactly once.
inline bool is_pushout(const FinCategory& c, MorId f, MorId g, ObjId w, MorId a, MorId b) {
  if (c.compose(a, f) != c.compose(b, g)) return false;
  for (ObjId q = 0; q < static_cast<ObjId>(c.num_objects()); ++q)
    for (MorId a2 : hom(c, c.cod(f), q))
      for (MorId b2 : hom(c, c.cod(g), q)) {
        if (c.compose(a2, f) != c.compose(b2, g)) continue;
        int through = 0;
        for (MorId u : hom(c, w, q))
          if (c.compose(u, a) == a2 && c.compose(u, b) == b2) ++through;
        if (through != 1) return false;
      }
  return true;
}

inline bool is_pullback(const FinCategory& c, MorId f, MorId g, ObjId p, MorId a, MorId b) {
  if (c.compose(f, a) != c.compose(g, b)) return false;
  for (ObjId q = 0; q < static_cast<ObjId>(c.num_objects()); ++q)
    for (MorId a2 : hom(c, q, c.dom(f)))
      for (MorId b2 : hom(c, q, c.dom(g))) {
        if (c.compose(f, a2) != c.compose(g, b2)) continue;
        int through = 0;
        for (MorId u : hom(c, q, p))
          if (c.compose(a, u) == a2 && c.compose(b, u) == b2) ++through;
        if (through != 1) return false;
      }
  return true;
}

inline bool has_pushout(const FinCategory& c, MorId f, MorId g) {
  for (ObjId w = 0; w < static_cast<ObjId>(c.num_objects()); ++w)
    for (MorId a : hom(c, c.cod(f), w))
      for (MorId b : hom(c, c.cod(g), w))
        if (is_pushout(c, f, g, w, a, b)) return true;
  return false;
}

inline bool has_pullback(const FinCategory& c, MorId f, MorId g) {
  for (ObjId p = 0; p < static_cast<ObjId>(c.num_objects()); ++p)
    for (MorId a : hom(c, p, c.dom(f)))
      for (MorId b : hom(c, p, c.dom(g)))
        if (is_pullback(c, f, g, p, a, b)) return true;
  return false;
}

// CF1: every span s: X->Y, t: X->Z has u, v with u s == v t.
inline bool cf1(const FinCategory& c) {
  for (MorId s : all_mor(c))
    for (MorId t : all_mor(c)) {
      if (c.dom(s) != c.dom(t)) continue;
      bool found = false;
      for (MorId u : all_mor(c))
        for (MorId v : all_mor(c))
          if (!found && c.dom(u) == c.cod(s) && c.dom(v) == c.cod(t) && c.cod(u) == c.cod(v) &&
              c.compose(u, s) == c.compose(v, t))
            found = true;
      if (!found) return false;
    }
  return true;
}

// CF2: f s == g s implies t f == t g for some t.
inline bool cf2(const FinCategory& c) {
  for (MorId f : all_mor(c))
    for (MorId g : all_mor(c)) {
      if (c.dom(f) != c.dom(g) || c.cod(f) != c.cod(g)) continue;
      bool coequalized_by_pre = false;
      for (MorId s : all_mor(c))
        if (c.cod(s) == c.dom(f) && c.compose(f, s) == c.compose(g, s)) coequalized_by_pre = true;
      if (!coequalized_by_pre) continue;
      bool found = false;
      for (MorId t : all_mor(c))
        if (c.dom(t) == c.cod(f) && c.compose(t, f) == c.compose(t, g)) found = true;
      if (!found) return false;
    }
  return true;
}

inline bool groupoid(const FinCategory& c) {
  for (MorId f : all_mor(c)) {
    bool inv = false;
    for (MorId g : all_mor(c))
      if (c.dom(g) == c.cod(f) && c.cod(g) == c.dom(f) && c.is_identity(c.compose(g, f)) &&
          c.is_identity(c.compose(f, g)))
        inv = true;
    if (!inv) return false;
  }
  return true;
}

inline bool two_of_six(const FinCategory& c, const std::vector<char>& w) {
  for (MorId r : all_mor(c))
    for (MorId s : all_mor(c))
      for (MorId t : all_mor(c)) {
        if (c.cod(r) != c.dom(s) || c.cod(s) != c.dom(t)) continue;
        if (!w[c.compose(s, r)] || !w[c.compose(t, s)]) continue;
        if (!w[r] || !w[s] || !w[t] || !w[c.compose(t, c.compose(s, r))]) return false;
      }
  return true;
}

// Every functor from the poset that agrees with the preset entries of
// partial, by enumerating objects and then one morphism per covering pair.
inline std::uint64_t count_extensions(const Diagram& partial, std::uint64_t stop_after = ~0ull) {
  const FinPoset& p = *partial.shape();
  const FinCategory& c = *partial.target();
  const int n = p.size();
  const auto covers = p.covers();
  std::vector<ObjId> obj(n);
  std::uint64_t found = 0;
  std::function<void(int)> objects = [&](int x) {
    if (found >= stop_after) return;
    if (x == n) {
      std::vector<MorId> arr(covers.size());
      std::function<void(std::size_t)> arrows = [&](std::size_t i) {
        if (found >= stop_after) return;
        if (i == covers.size()) {
          Diagram d(partial.shape(), partial.target());
          for (int y = 0; y < n; ++y) {
            d.set_object(y, obj[y]);
            d.set_arrow(y, y, c.identity(obj[y]));
          }
          for (std::size_t j = 0; j < covers.size(); ++j) d.set_arrow(covers[j].first, covers[j].second, arr[j]);
          if (d.close_from_covers()) return;
          for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
              if (p.leq(a, b) && partial.arrow(a, b) != kNone && partial.arrow(a, b) != d.arrow(a, b)) return;
          ++found;
          return;
        }
        for (MorId f : hom(c, obj[covers[i].first], obj[covers[i].second])) {
          arr[i] = f;
          arrows(i + 1);
        }
      };
      arrows(0);
      return;
    }
    for (ObjId o = 0; o < static_cast<ObjId>(c.num_objects()); ++o) {
      if (partial.at(x) != kNone && partial.at(x) != o) continue;
      obj[x] = o;
      objects(x + 1);
    }
  };
  objects(0);
  return found;
}

// Chains of nonempty subsets of an N-element set: f(S) counts the chains
// with top S.
inline std::uint64_t subset_chains(int elements) {
  const unsigned full = (1u << elements) - 1;
  std::vector<std::uint64_t> f(full + 1, 0);
  std::uint64_t total = 0;
  for (unsigned s = 1; s <= full; ++s) {
    f[s] = 1;
    for (unsigned t = (s - 1) & s; t; t = (t - 1) & s) f[s] += f[t];
    total += f[s];
  }
  return total;
}

}  // namespace oracle
