#include "kanforge/fincat.hpp"

#include <map>
#include <set>
#include <sstream>

namespace kanforge {

namespace {

std::string triple(const RawCategory& r, MorId f, MorId g) {
  return "(" + r.morphisms[f].name + ", " + r.morphisms[g].name + ")";
}

}  // namespace

std::optional<LawViolation> find_law_violation(const RawCategory& raw) {
  const auto nobj = static_cast<int>(raw.objects.size());
  const auto nmor = static_cast<int>(raw.morphisms.size());
  {
    std::set<std::string> seen;
    for (const auto& o : raw.objects) {
      if (o.empty()) return LawViolation{"names", "empty object name"};
      if (!seen.insert(o).second) return LawViolation{"names", "duplicate object " + o};
    }
    seen.clear();
    for (const auto& m : raw.morphisms) {
      if (m.name.empty()) return LawViolation{"names", "empty morphism name"};
      if (!seen.insert(m.name).second) return LawViolation{"names", "duplicate morphism " + m.name};
    }
  }
  for (const auto& m : raw.morphisms) {
    if (m.dom < 0 || m.dom >= nobj || m.cod < 0 || m.cod >= nobj)
      return LawViolation{"domain", "morphism " + m.name + " has an unknown endpoint"};
  }
  if (static_cast<int>(raw.identity.size()) != nobj)
    return LawViolation{"identity", "identity table does not cover every object"};
  for (int x = 0; x < nobj; ++x) {
    const MorId i = raw.identity[x];
    if (i < 0 || i >= nmor || raw.morphisms[i].dom != x || raw.morphisms[i].cod != x)
      return LawViolation{"identity", "identity of " + raw.objects[x] + " is not an endomorphism of it"};
  }

  std::vector<MorId> table(static_cast<std::size_t>(nmor) * nmor, kNone);
  for (const auto& [f, g, h] : raw.compose) {
    if (f < 0 || f >= nmor || g < 0 || g >= nmor || h < 0 || h >= nmor)
      return LawViolation{"typing", "compose entry refers to an unknown morphism"};
    const auto& mf = raw.morphisms[f];
    const auto& mg = raw.morphisms[g];
    const auto& mh = raw.morphisms[h];
    if (mf.cod != mg.dom)
      return LawViolation{"typing", "composite given for non-composable pair " + triple(raw, f, g)};
    if (mh.dom != mf.dom || mh.cod != mg.cod)
      return LawViolation{"typing", "composite of " + triple(raw, f, g) + " = " + mh.name +
                                        " has the wrong endpoints"};
    MorId& slot = table[static_cast<std::size_t>(f) * nmor + g];
    if (slot != kNone && slot != h)
      return LawViolation{"function", "two composites given for " + triple(raw, f, g)};
    slot = h;
  }
  for (MorId f = 0; f < nmor; ++f)
    for (MorId g = 0; g < nmor; ++g)
      if (raw.morphisms[f].cod == raw.morphisms[g].dom &&
          table[static_cast<std::size_t>(f) * nmor + g] == kNone)
        return LawViolation{"totality", "no composite for " + triple(raw, f, g)};
  for (MorId f = 0; f < nmor; ++f) {
    const MorId il = raw.identity[raw.morphisms[f].cod];
    const MorId ir = raw.identity[raw.morphisms[f].dom];
    if (table[static_cast<std::size_t>(f) * nmor + il] != f)
      return LawViolation{"identity", "id after " + raw.morphisms[f].name + " is not " + raw.morphisms[f].name};
    if (table[static_cast<std::size_t>(ir) * nmor + f] != f)
      return LawViolation{"identity", raw.morphisms[f].name + " after id is not " + raw.morphisms[f].name};
  }
  for (MorId f = 0; f < nmor; ++f)
    for (MorId g = 0; g < nmor; ++g) {
      if (raw.morphisms[f].cod != raw.morphisms[g].dom) continue;
      const MorId gf = table[static_cast<std::size_t>(f) * nmor + g];
      for (MorId h = 0; h < nmor; ++h) {
        if (raw.morphisms[g].cod != raw.morphisms[h].dom) continue;
        const MorId hg = table[static_cast<std::size_t>(g) * nmor + h];
        if (table[static_cast<std::size_t>(gf) * nmor + h] != table[static_cast<std::size_t>(f) * nmor + hg])
          return LawViolation{"associativity", "(" + raw.morphisms[f].name + ", " + raw.morphisms[g].name +
                                                   ", " + raw.morphisms[h].name + ")"};
      }
    }
  return std::nullopt;
}

FinCategory FinCategory::from_raw(RawCategory raw) {
  if (auto v = find_law_violation(raw)) throw CategoryError(*v);
  FinCategory c;
  const std::size_t nobj = raw.objects.size();
  const std::size_t nmor = raw.morphisms.size();
  c.name_ = std::move(raw.name);
  c.objects_ = std::move(raw.objects);
  c.morphisms_ = std::move(raw.morphisms);
  c.identity_ = std::move(raw.identity);
  c.table_.assign(nmor * nmor, kNone);
  for (const auto& [f, g, h] : raw.compose) c.table_[static_cast<std::size_t>(f) * nmor + g] = h;
  c.hom_.assign(nobj * nobj, {});
  for (MorId f = 0; f < static_cast<MorId>(nmor); ++f)
    c.hom_[static_cast<std::size_t>(c.dom(f)) * nobj + c.cod(f)].push_back(f);
  for (ObjId x = 0; x < static_cast<ObjId>(nobj); ++x) c.object_index_.emplace(c.objects_[x], x);
  for (MorId f = 0; f < static_cast<MorId>(nmor); ++f) c.morphism_index_.emplace(c.morphisms_[f].name, f);
  return c;
}

std::optional<ObjId> FinCategory::find_object(const std::string& name) const {
  auto it = object_index_.find(name);
  if (it == object_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<MorId> FinCategory::find_morphism(const std::string& name) const {
  auto it = morphism_index_.find(name);
  if (it == morphism_index_.end()) return std::nullopt;
  return it->second;
}

RawCategory FinCategory::to_raw() const {
  RawCategory r;
  r.name = name_;
  r.objects = objects_;
  r.morphisms = morphisms_;
  r.identity = identity_;
  const auto nmor = static_cast<MorId>(morphisms_.size());
  for (MorId f = 0; f < nmor; ++f)
    for (MorId g = 0; g < nmor; ++g)
      if (cod(f) == dom(g)) r.compose.push_back({f, g, compose(g, f)});
  return r;
}

FinCategory FinCategory::renamed(std::string name) const {
  FinCategory c = *this;
  c.name_ = std::move(name);
  return c;
}

FinCategory validate_category(RawCategory raw) { return FinCategory::from_raw(std::move(raw)); }

FinCategory opposite(const FinCategory& c) {
  RawCategory r = c.to_raw();
  r.name = c.name() + "^op";
  for (auto& m : r.morphisms) std::swap(m.dom, m.cod);
  for (auto& t : r.compose) std::swap(t[0], t[1]);
  return FinCategory::from_raw(std::move(r));
}

bool same_table(const FinCategory& a, const FinCategory& b) {
  if (a.num_objects() != b.num_objects() || a.num_morphisms() != b.num_morphisms()) return false;
  for (ObjId x = 0; x < static_cast<ObjId>(a.num_objects()); ++x)
    if (a.object_name(x) != b.object_name(x) || a.identity(x) != b.identity(x)) return false;
  const auto n = static_cast<MorId>(a.num_morphisms());
  for (MorId f = 0; f < n; ++f) {
    if (a.morphism_name(f) != b.morphism_name(f) || a.dom(f) != b.dom(f) || a.cod(f) != b.cod(f))
      return false;
    for (MorId g = 0; g < n; ++g)
      if (a.compose(g, f) != b.compose(g, f)) return false;
  }
  return true;
}

std::optional<std::string> functor_violation(const Functor& F) {
  const FinCategory& s = *F.source;
  const FinCategory& t = *F.target;
  if (F.obj.size() != s.num_objects() || F.mor.size() != s.num_morphisms())
    return "object or morphism map has the wrong size";
  for (ObjId x = 0; x < static_cast<ObjId>(s.num_objects()); ++x)
    if (F.obj[x] < 0 || F.obj[x] >= static_cast<ObjId>(t.num_objects()))
      return "object " + s.object_name(x) + " is unmapped";
  for (MorId f = 0; f < static_cast<MorId>(s.num_morphisms()); ++f) {
    const MorId g = F.mor[f];
    if (g < 0 || g >= static_cast<MorId>(t.num_morphisms()))
      return "morphism " + s.morphism_name(f) + " is unmapped";
    if (t.dom(g) != F.obj[s.dom(f)] || t.cod(g) != F.obj[s.cod(f)])
      return "morphism " + s.morphism_name(f) + " lands outside the hom-set";
  }
  for (ObjId x = 0; x < static_cast<ObjId>(s.num_objects()); ++x)
    if (F.mor[s.identity(x)] != t.identity(F.obj[x]))
      return "identity of " + s.object_name(x) + " is not preserved";
  for (MorId f = 0; f < static_cast<MorId>(s.num_morphisms()); ++f)
    for (MorId g = 0; g < static_cast<MorId>(s.num_morphisms()); ++g) {
      if (s.cod(f) != s.dom(g)) continue;
      if (F.mor[s.compose(g, f)] != t.compose(F.mor[g], F.mor[f]))
        return "composite of (" + s.morphism_name(f) + ", " + s.morphism_name(g) + ") is not preserved";
    }
  return std::nullopt;
}

std::optional<MorId> inverse(const FinCategory& c, MorId f) {
  for (MorId g : c.hom(c.cod(f), c.dom(f)))
    if (c.is_identity(c.compose(g, f)) && c.is_identity(c.compose(f, g))) return g;
  return std::nullopt;
}

std::vector<MorId> automorphisms(const FinCategory& c, ObjId x) {
  std::vector<MorId> out;
  for (MorId f : c.hom(x, x))
    if (inverse(c, f)) out.push_back(f);
  return out;
}

GroupoidCheck is_groupoid(const FinCategory& c) {
  for (MorId f = 0; f < static_cast<MorId>(c.num_morphisms()); ++f)
    if (!inverse(c, f)) return {false, f};
  return {true, kNone};
}

FilteredCheck is_filtered(const FinCategory& c) {
  const auto n = static_cast<ObjId>(c.num_objects());
  FilteredCheck out;
  for (ObjId x = 0; x < n; ++x)
    for (ObjId y = x + 1; y < n; ++y) {
      bool found = false;
      for (ObjId w = 0; w < n && !found; ++w) found = !c.hom(x, w).empty() && !c.hom(y, w).empty();
      if (!found) {
        out.objects = std::array<ObjId, 2>{x, y};
        return out;
      }
    }
  for (ObjId x = 0; x < n; ++x)
    for (ObjId y = 0; y < n; ++y) {
      auto h = c.hom(x, y);
      for (std::size_t i = 0; i < h.size(); ++i)
        for (std::size_t j = i + 1; j < h.size(); ++j) {
          bool found = false;
          for (ObjId w = 0; w < n && !found; ++w)
            for (MorId e : c.hom(y, w))
              if (c.compose(e, h[i]) == c.compose(e, h[j])) {
                found = true;
                break;
              }
          if (!found) {
            out.parallel = std::array<MorId, 2>{h[i], h[j]};
            return out;
          }
        }
    }
  out.holds = true;
  return out;
}

}  // namespace kanforge
