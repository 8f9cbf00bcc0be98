#include "kanforge/limits.hpp"

#include <algorithm>
#include <set>

namespace kanforge {

namespace {

// Counts (a, b) with a: Y->q, b: Z->q and a∘f == b∘g.
std::size_t count_span_cocones(const FinCategory& c, MorId f, MorId g, ObjId q) {
  std::size_t n = 0;
  for (MorId a : c.hom(c.cod(f), q))
    for (MorId b : c.hom(c.cod(g), q))
      if (c.compose(a, f) == c.compose(b, g)) ++n;
  return n;
}

std::size_t count_cospan_cones(const FinCategory& c, MorId f, MorId g, ObjId q) {
  std::size_t n = 0;
  for (MorId a : c.hom(q, c.dom(f)))
    for (MorId b : c.hom(q, c.dom(g)))
      if (c.compose(f, a) == c.compose(g, b)) ++n;
  return n;
}

bool pushout_universal(const FinCategory& c, const Square& s, const std::vector<std::size_t>& counts) {
  for (ObjId q = 0; q < static_cast<ObjId>(c.num_objects()); ++q) {
    auto h = c.hom(s.apex, q);
    if (h.size() != counts[q]) return false;
    std::set<std::pair<MorId, MorId>> seen;
    for (MorId u : h)
      if (!seen.emplace(c.compose(u, s.first), c.compose(u, s.second)).second) return false;
  }
  return true;
}

bool pullback_universal(const FinCategory& c, const Square& s, const std::vector<std::size_t>& counts) {
  for (ObjId q = 0; q < static_cast<ObjId>(c.num_objects()); ++q) {
    auto h = c.hom(q, s.apex);
    if (h.size() != counts[q]) return false;
    std::set<std::pair<MorId, MorId>> seen;
    for (MorId u : h)
      if (!seen.emplace(c.compose(s.first, u), c.compose(s.second, u)).second) return false;
  }
  return true;
}

// Cones (dual = false) or cocones (dual = true) over a poset diagram.
// Legs are branched at minimal (resp. maximal) elements and forced
// elsewhere; the enumeration is lexicographic in branching order.
class ConeWalker {
 public:
  ConeWalker(const Diagram& d, bool dual) : d_(d), c_(*d.target()), p_(*d.shape()), dual_(dual) {
    order_ = branch_order();
  }

  template <class Visit>
  void walk(ObjId q, Visit&& visit) {
    legs_.assign(p_.size(), kNone);
    q_ = q;
    stop_ = false;
    step(0, visit);
  }

  const std::vector<MorId>& legs() const { return legs_; }

 private:
  template <class Visit>
  void step(std::size_t i, Visit& visit) {
    if (stop_) return;
    if (i == order_.size()) {
      if (!visit(legs_)) stop_ = true;
      return;
    }
    const int x = order_[i];
    const auto& prev = prev_of(x);
    if (prev.empty()) {
      auto h = dual_ ? c_.hom(d_.at(x), q_) : c_.hom(q_, d_.at(x));
      for (MorId f : h) {
        legs_[x] = f;
        step(i + 1, visit);
        if (stop_) return;
      }
      legs_[x] = kNone;
      return;
    }
    MorId value = kNone;
    for (int m : prev) {
      const MorId v = dual_ ? c_.compose(legs_[m], d_.arrow(x, m)) : c_.compose(d_.arrow(m, x), legs_[m]);
      if (value == kNone) {
        value = v;
      } else if (v != value) {
        return;
      }
    }
    legs_[x] = value;
    step(i + 1, visit);
    legs_[x] = kNone;
  }

  const std::vector<int>& prev_of(int x) const { return dual_ ? p_.upper_covers(x) : p_.lower_covers(x); }
  const std::vector<int>& next_of(int x) const { return dual_ ? p_.lower_covers(x) : p_.upper_covers(x); }

  // Branching elements are taken greedily so that forced elements, and
  // with them the agreement checks, appear as early as possible.
  std::vector<int> branch_order() const {
    const int n = p_.size();
    std::vector<int> pending(n), out;
    std::vector<int> sources;
    for (int x = 0; x < n; ++x) {
      pending[x] = static_cast<int>(prev_of(x).size());
      if (pending[x] == 0) sources.push_back(x);
    }
    std::vector<char> used(n, 0);
    auto release = [&](int x, std::vector<int>& pend, std::vector<int>* trace) {
      std::vector<int> stack{x};
      int count = 0;
      while (!stack.empty()) {
        int y = stack.back();
        stack.pop_back();
        for (int z : next_of(y))
          if (--pend[z] == 0) {
            ++count;
            stack.push_back(z);
            if (trace) trace->push_back(z);
          }
      }
      return count;
    };
    for (std::size_t round = 0; round < sources.size(); ++round) {
      int best = -1, best_gain = -1;
      for (int s : sources) {
        if (used[s]) continue;
        std::vector<int> trial = pending;
        const int gain = release(s, trial, nullptr);
        if (gain > best_gain) {
          best = s;
          best_gain = gain;
        }
      }
      used[best] = 1;
      out.push_back(best);
      std::vector<int> freed;
      release(best, pending, &freed);
      std::sort(freed.begin(), freed.end(), [&](int a, int b) {
        return dual_ ? p_.rank()[a] > p_.rank()[b] : p_.rank()[a] < p_.rank()[b];
      });
      out.insert(out.end(), freed.begin(), freed.end());
    }
    return out;
  }

  const Diagram& d_;
  const FinCategory& c_;
  const FinPoset& p_;
  bool dual_;
  std::vector<int> order_;
  std::vector<MorId> legs_;
  ObjId q_ = kNone;
  bool stop_ = false;
};

std::size_t count_generic(const Diagram& d, ObjId q, bool dual) {
  ConeWalker w(d, dual);
  std::size_t n = 0;
  w.walk(q, [&](const std::vector<MorId>&) {
    ++n;
    return true;
  });
  return n;
}

bool universal_generic(const Diagram& d, const Cone& cone, bool dual, const std::vector<std::size_t>& counts) {
  const FinCategory& c = *d.target();
  const FinPoset& p = *d.shape();
  for (ObjId q = 0; q < static_cast<ObjId>(c.num_objects()); ++q) {
    auto h = dual ? c.hom(cone.apex, q) : c.hom(q, cone.apex);
    if (h.size() != counts[q]) return false;
    std::set<std::vector<MorId>> seen;
    for (MorId u : h) {
      std::vector<MorId> image(p.size());
      for (int x = 0; x < p.size(); ++x)
        image[x] = dual ? c.compose(u, cone.legs[x]) : c.compose(cone.legs[x], u);
      if (!seen.insert(std::move(image)).second) return false;
    }
  }
  return true;
}

bool is_cone(const Diagram& d, const Cone& cone, bool dual) {
  const FinCategory& c = *d.target();
  const FinPoset& p = *d.shape();
  if (static_cast<int>(cone.legs.size()) != p.size()) return false;
  for (int x = 0; x < p.size(); ++x) {
    const MorId l = cone.legs[x];
    if (l < 0) return false;
    if (dual ? (c.dom(l) != d.at(x) || c.cod(l) != cone.apex) : (c.dom(l) != cone.apex || c.cod(l) != d.at(x)))
      return false;
    for (int y : p.upper_covers(x)) {
      if (dual ? c.compose(cone.legs[y], d.arrow(x, y)) != l : c.compose(d.arrow(x, y), l) != cone.legs[y])
        return false;
    }
  }
  return true;
}

std::optional<Cone> search_generic(const Diagram& d, bool dual) {
  const FinCategory& c = *d.target();
  std::vector<std::size_t> counts(c.num_objects());
  for (ObjId q = 0; q < static_cast<ObjId>(c.num_objects()); ++q) counts[q] = count_generic(d, q, dual);
  for (ObjId l = 0; l < static_cast<ObjId>(c.num_objects()); ++l) {
    if (counts[l] == 0) continue;
    std::optional<Cone> found;
    ConeWalker w(d, dual);
    w.walk(l, [&](const std::vector<MorId>& legs) {
      Cone cand{l, legs};
      if (universal_generic(d, cand, dual, counts)) {
        found = std::move(cand);
        return false;
      }
      return true;
    });
    if (found) return found;
  }
  return std::nullopt;
}

}  // namespace

std::optional<Square> pushout(const FinCategory& c, MorId f, MorId g) {
  if (c.dom(f) != c.dom(g)) throw InputError("pushout: morphisms do not share a domain");
  const auto n = static_cast<ObjId>(c.num_objects());
  std::vector<std::size_t> counts(n);
  for (ObjId q = 0; q < n; ++q) counts[q] = count_span_cocones(c, f, g, q);
  for (ObjId w = 0; w < n; ++w)
    for (MorId a : c.hom(c.cod(f), w))
      for (MorId b : c.hom(c.cod(g), w))
        if (c.compose(a, f) == c.compose(b, g)) {
          Square s{w, a, b};
          if (pushout_universal(c, s, counts)) return s;
        }
  return std::nullopt;
}

std::optional<Square> pullback(const FinCategory& c, MorId f, MorId g) {
  if (c.cod(f) != c.cod(g)) throw InputError("pullback: morphisms do not share a codomain");
  const auto n = static_cast<ObjId>(c.num_objects());
  std::vector<std::size_t> counts(n);
  for (ObjId q = 0; q < n; ++q) counts[q] = count_cospan_cones(c, f, g, q);
  for (ObjId p = 0; p < n; ++p)
    for (MorId a : c.hom(p, c.dom(f)))
      for (MorId b : c.hom(p, c.dom(g)))
        if (c.compose(f, a) == c.compose(g, b)) {
          Square s{p, a, b};
          if (pullback_universal(c, s, counts)) return s;
        }
  return std::nullopt;
}

bool is_pushout(const FinCategory& c, MorId f, MorId g, const Square& s) {
  if (c.dom(s.first) != c.cod(f) || c.dom(s.second) != c.cod(g) || c.cod(s.first) != s.apex ||
      c.cod(s.second) != s.apex || c.compose(s.first, f) != c.compose(s.second, g))
    return false;
  std::vector<std::size_t> counts(c.num_objects());
  for (ObjId q = 0; q < static_cast<ObjId>(c.num_objects()); ++q) counts[q] = count_span_cocones(c, f, g, q);
  return pushout_universal(c, s, counts);
}

bool is_pullback(const FinCategory& c, MorId f, MorId g, const Square& s) {
  if (c.cod(s.first) != c.dom(f) || c.cod(s.second) != c.dom(g) || c.dom(s.first) != s.apex ||
      c.dom(s.second) != s.apex || c.compose(f, s.first) != c.compose(g, s.second))
    return false;
  std::vector<std::size_t> counts(c.num_objects());
  for (ObjId q = 0; q < static_cast<ObjId>(c.num_objects()); ++q) counts[q] = count_cospan_cones(c, f, g, q);
  return pullback_universal(c, s, counts);
}

SpanCheck has_all_pushouts(const FinCategory& c) {
  const auto n = static_cast<MorId>(c.num_morphisms());
  for (MorId f = 0; f < n; ++f)
    for (MorId g = f; g < n; ++g)
      if (c.dom(f) == c.dom(g) && !pushout(c, f, g)) return {false, f, g};
  return {};
}

SpanCheck has_all_pullbacks(const FinCategory& c) {
  const auto n = static_cast<MorId>(c.num_morphisms());
  for (MorId f = 0; f < n; ++f)
    for (MorId g = f; g < n; ++g)
      if (c.cod(f) == c.cod(g) && !pullback(c, f, g)) return {false, f, g};
  return {};
}

std::size_t count_cones(const Diagram& d, ObjId q) { return count_generic(d, q, false); }
std::size_t count_cocones(const Diagram& d, ObjId q) { return count_generic(d, q, true); }

bool is_limit(const Diagram& d, const Cone& cone) {
  if (!is_cone(d, cone, false)) return false;
  std::vector<std::size_t> counts(d.target()->num_objects());
  for (ObjId q = 0; q < static_cast<ObjId>(counts.size()); ++q) counts[q] = count_generic(d, q, false);
  return universal_generic(d, cone, false, counts);
}

bool is_colimit(const Diagram& d, const Cone& cocone) {
  if (!is_cone(d, cocone, true)) return false;
  std::vector<std::size_t> counts(d.target()->num_objects());
  for (ObjId q = 0; q < static_cast<ObjId>(counts.size()); ++q) counts[q] = count_generic(d, q, true);
  return universal_generic(d, cocone, true, counts);
}

std::optional<Cone> limit_of_diagram(const Diagram& d) {
  if (!d.complete()) throw InputError("limit_of_diagram: diagram is partial");
  if (auto v = d.violation()) throw InputError("limit_of_diagram: " + *v);
  return search_generic(d, false);
}

std::optional<Cone> colimit_of_diagram(const Diagram& d) {
  if (!d.complete()) throw InputError("colimit_of_diagram: diagram is partial");
  if (auto v = d.violation()) throw InputError("colimit_of_diagram: " + *v);
  return search_generic(d, true);
}

std::vector<MorId> factorizations_through_cone(const FinCategory& c, ObjId s, const Cone& cone,
                                               const std::vector<MorId>& maps) {
  std::vector<MorId> out;
  for (MorId u : c.hom(s, cone.apex)) {
    bool ok = true;
    for (std::size_t x = 0; x < maps.size() && ok; ++x)
      if (maps[x] != kNone) ok = c.compose(cone.legs[x], u) == maps[x];
    if (ok) out.push_back(u);
  }
  return out;
}

std::vector<MorId> factorizations_through_cocone(const FinCategory& c, ObjId t, const Cone& cocone,
                                                 const std::vector<MorId>& maps) {
  std::vector<MorId> out;
  for (MorId u : c.hom(cocone.apex, t)) {
    bool ok = true;
    for (std::size_t x = 0; x < maps.size() && ok; ++x)
      if (maps[x] != kNone) ok = c.compose(u, cocone.legs[x]) == maps[x];
    if (ok) out.push_back(u);
  }
  return out;
}

}  // namespace kanforge
