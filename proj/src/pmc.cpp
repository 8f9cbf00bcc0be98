#include "kanforge/pmc.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "kanforge/limits.hpp"

namespace kanforge {

std::vector<char> all_morphisms(const FinCategory& c) { return std::vector<char>(c.num_morphisms(), 1); }

std::vector<char> identities_only(const FinCategory& c) {
  std::vector<char> out(c.num_morphisms(), 0);
  for (ObjId x = 0; x < static_cast<ObjId>(c.num_objects()); ++x) out[c.identity(x)] = 1;
  return out;
}

std::vector<WSquare> weq_squares(const FinCategory& c, const std::vector<char>& weq) {
  std::vector<WSquare> out;
  const auto nm = static_cast<MorId>(c.num_morphisms());
  for (MorId w = 0; w < nm; ++w) {
    if (!weq[w]) continue;
    for (MorId w2 = 0; w2 < nm; ++w2) {
      if (!weq[w2]) continue;
      for (MorId u : c.hom(c.dom(w), c.dom(w2))) {
        if (!weq[u]) continue;
        const MorId wu = c.compose(w2, u);
        for (MorId v : c.hom(c.cod(w), c.cod(w2)))
          if (weq[v] && c.compose(v, w) == wu) out.push_back({w, w2, u, v});
      }
    }
  }
  return out;
}

namespace {

std::string names(const FinCategory& c, const std::vector<MorId>& ms) {
  std::string s;
  for (std::size_t i = 0; i < ms.size(); ++i) s += (i ? ", " : "") + c.morphism_name(ms[i]);
  return s;
}

AxiomCheck fail(std::string axiom, std::vector<MorId> witness, std::string detail) {
  return AxiomCheck{false, std::move(axiom), std::move(witness), std::move(detail)};
}

void check_subcategory(const FinCategory& c, const std::vector<char>& weq) {
  for (ObjId x = 0; x < static_cast<ObjId>(c.num_objects()); ++x)
    if (!weq[c.identity(x)]) throw InputError("weak equivalences miss the identity of " + c.object_name(x));
  const auto nm = static_cast<MorId>(c.num_morphisms());
  for (MorId f = 0; f < nm; ++f)
    for (MorId g = 0; g < nm; ++g)
      if (weq[f] && weq[g] && c.cod(f) == c.dom(g) && !weq[c.compose(g, f)])
        throw InputError("weak equivalences are not closed under composition: " + c.morphism_name(g) + " o " +
                         c.morphism_name(f));
}

// Isomorphisms out of x, and into x.
std::vector<MorId> isos_from(const FinCategory& c, ObjId x) {
  std::vector<MorId> out;
  for (ObjId y = 0; y < static_cast<ObjId>(c.num_objects()); ++y)
    for (MorId f : c.hom(x, y))
      if (inverse(c, f)) out.push_back(f);
  return out;
}

std::vector<MorId> isos_to(const FinCategory& c, ObjId x) {
  std::vector<MorId> out;
  for (ObjId y = 0; y < static_cast<ObjId>(c.num_objects()); ++y)
    for (MorId f : c.hom(y, x))
      if (inverse(c, f)) out.push_back(f);
  return out;
}

// For a map f and each g: the possible new legs of a pushout (or
// pullback) of f along g, or nullopt if there is none.
struct ClosureTable {
  std::vector<std::vector<std::pair<MorId, std::optional<std::vector<MorId>>>>> legs;
};

ClosureTable cof_table(const FinCategory& c) {
  ClosureTable t;
  const auto nm = static_cast<MorId>(c.num_morphisms());
  t.legs.resize(nm);
  for (MorId f = 0; f < nm; ++f)
    for (MorId g = 0; g < nm; ++g) {
      if (c.dom(g) != c.dom(f)) continue;
      auto sq = pushout(c, f, g);
      if (!sq) {
        t.legs[f].push_back({g, std::nullopt});
        continue;
      }
      std::vector<MorId> legs;
      for (MorId phi : isos_from(c, sq->apex)) legs.push_back(c.compose(phi, sq->second));
      t.legs[f].push_back({g, legs});
    }
  return t;
}

ClosureTable fib_table(const FinCategory& c) {
  ClosureTable t;
  const auto nm = static_cast<MorId>(c.num_morphisms());
  t.legs.resize(nm);
  for (MorId f = 0; f < nm; ++f)
    for (MorId g = 0; g < nm; ++g) {
      if (c.cod(g) != c.cod(f)) continue;
      auto sq = pullback(c, f, g);
      if (!sq) {
        t.legs[f].push_back({g, std::nullopt});
        continue;
      }
      std::vector<MorId> legs;
      for (MorId phi : isos_to(c, sq->apex)) legs.push_back(c.compose(sq->second, phi));
      t.legs[f].push_back({g, legs});
    }
  return t;
}

AxiomCheck closure_with(const FinCategory& c, const ClosureTable& t, const std::vector<char>& cls, bool cof) {
  const char* what = cof ? "pushout" : "pullback";
  const std::string axiom = cof ? "cofibration closure" : "fibration closure";
  for (MorId f = 0; f < static_cast<MorId>(cls.size()); ++f) {
    if (!cls[f]) continue;
    for (const auto& [g, legs] : t.legs[f]) {
      if (!legs)
        return fail(axiom, {f, g},
                    std::string(what) + " of (" + c.morphism_name(f) + ", " + c.morphism_name(g) + ") does not exist");
      if (std::none_of(legs->begin(), legs->end(), [&](MorId l) { return cls[l] != 0; }))
        return fail(axiom, {f, g},
                    std::string(what) + " of " + c.morphism_name(f) + " along " + c.morphism_name(g) +
                        " leaves the class");
    }
  }
  return {};
}

struct SquareIndex {
  std::vector<WSquare> squares;
  std::map<WSquare, int> index;
  // (s1, s2, s3) with s3 the composite of s2 after s1.
  std::vector<std::array<int, 3>> composites;
  std::vector<int> identities;
};

SquareIndex index_squares(const FinCategory& c, const std::vector<char>& weq) {
  SquareIndex ix;
  ix.squares = weq_squares(c, weq);
  std::map<MorId, std::vector<int>> from;
  for (int i = 0; i < static_cast<int>(ix.squares.size()); ++i) {
    const auto& s = ix.squares[i];
    ix.index.emplace(s, i);
    from[s[0]].push_back(i);
    if (s[0] == s[1] && c.is_identity(s[2]) && c.is_identity(s[3])) ix.identities.push_back(i);
  }
  for (int i = 0; i < static_cast<int>(ix.squares.size()); ++i) {
    const auto& s1 = ix.squares[i];
    for (int j : from[s1[1]]) {
      const auto& s2 = ix.squares[j];
      const WSquare s3{s1[0], s2[1], c.compose(s2[2], s1[2]), c.compose(s2[3], s1[3])};
      ix.composites.push_back({i, j, ix.index.at(s3)});
    }
  }
  return ix;
}

AxiomCheck factorization_with(const FinCategory& c, const SquareIndex& ix, const RelStructure& r) {
  const std::string axiom = "factorization";
  for (MorId w = 0; w < static_cast<MorId>(c.num_morphisms()); ++w) {
    if (!r.weq[w]) continue;
    const auto [cf, fb] = r.factor[w];
    if (cf == kNone || fb == kNone) return fail(axiom, {w}, "no factorization of " + c.morphism_name(w));
    if (!r.cof[cf] || !r.fib[fb])
      return fail(axiom, {w, cf, fb}, "factors of " + c.morphism_name(w) + " are not a cofibration and a fibration");
    if (c.cod(cf) != c.dom(fb) || c.compose(fb, cf) != w)
      return fail(axiom, {w, cf, fb}, "factors do not compose to " + c.morphism_name(w));
  }
  std::vector<MorId> m(ix.squares.size(), kNone);
  for (std::size_t i = 0; i < ix.squares.size(); ++i) {
    const auto& s = ix.squares[i];
    auto it = r.mid.find(s);
    std::vector<MorId> wit(s.begin(), s.end());
    if (it == r.mid.end()) return fail(axiom, wit, "no middle map for a square");
    const MorId mm = it->second;
    const auto f1 = r.factor[s[0]], f2 = r.factor[s[1]];
    if (mm < 0 || mm >= static_cast<MorId>(c.num_morphisms()) || c.dom(mm) != c.cod(f1.cof) ||
        c.cod(mm) != c.cod(f2.cof))
      return fail(axiom, wit, "middle map has the wrong type");
    if (!r.weq[mm]) return fail(axiom, wit, "middle map " + c.morphism_name(mm) + " is not a weak equivalence");
    if (c.compose(mm, f1.cof) != c.compose(f2.cof, s[2]) || c.compose(f2.fib, mm) != c.compose(s[3], f1.fib))
      return fail(axiom, wit, "middle map " + c.morphism_name(mm) + " does not commute");
    m[i] = mm;
  }
  for (int i : ix.identities)
    if (!c.is_identity(m[i])) {
      const auto& s = ix.squares[i];
      return fail(axiom, {s[0]}, "identity square of " + c.morphism_name(s[0]) + " gets a non-identity");
    }
  for (const auto& [a, b, ab] : ix.composites)
    if (m[ab] != c.compose(m[b], m[a])) {
      const auto& s1 = ix.squares[a];
      const auto& s2 = ix.squares[b];
      return fail(axiom, {s1[0], s1[1], s1[2], s1[3], s2[1], s2[2], s2[3]},
                  "middle maps are not functorial on composable squares");
    }
  return {};
}

}  // namespace

void validate_structure(const RelStructure& r) {
  if (!r.ambient) throw InputError("relative structure has no ambient category");
  const FinCategory& c = *r.ambient;
  const auto nm = c.num_morphisms();
  if (r.weq.size() != nm || r.cof.size() != nm || r.fib.size() != nm || r.factor.size() != nm)
    throw InputError("relative structure tables have the wrong size");
  check_subcategory(c, r.weq);
  for (std::size_t f = 0; f < nm; ++f) {
    if ((r.cof[f] || r.fib[f]) && !r.weq[f])
      throw InputError("class member " + c.morphism_name(static_cast<MorId>(f)) + " is not a weak equivalence");
  }
  for (ObjId x = 0; x < static_cast<ObjId>(c.num_objects()); ++x)
    if (!r.cof[c.identity(x)] || !r.fib[c.identity(x)])
      throw InputError("cofibrations and fibrations must contain the identity of " + c.object_name(x));
  for (const auto& [s, m] : r.mid)
    for (MorId e : s)
      if (e < 0 || e >= static_cast<MorId>(nm) || !r.weq[e])
        throw InputError("middle map table has a square outside the weak equivalences");
}

AxiomCheck check_two_of_six(const FinCategory& c, const std::vector<char>& weq) {
  const auto nm = static_cast<MorId>(c.num_morphisms());
  for (MorId s = 0; s < nm; ++s)
    for (MorId r = 0; r < nm; ++r) {
      if (c.cod(r) != c.dom(s) || !weq[c.compose(s, r)]) continue;
      for (MorId t = 0; t < nm; ++t) {
        if (c.dom(t) != c.cod(s) || !weq[c.compose(t, s)]) continue;
        const MorId tsr = c.compose(t, c.compose(s, r));
        if (!weq[r] || !weq[s] || !weq[t] || !weq[tsr])
          return fail("2-out-of-6", {r, s, t},
                      "(" + names(c, {r, s, t}) + ") has s∘r and t∘s in W but not all of r, s, t, t∘s∘r");
      }
    }
  return {};
}

AxiomCheck check_two_of_six(const RelStructure& r) {
  validate_structure(r);
  return check_two_of_six(*r.ambient, r.weq);
}

AxiomCheck check_cof_closure(const FinCategory& c, const std::vector<char>& cof) {
  return closure_with(c, cof_table(c), cof, true);
}

AxiomCheck check_fib_closure(const FinCategory& c, const std::vector<char>& fib) {
  return closure_with(c, fib_table(c), fib, false);
}

AxiomCheck check_class_closure(const RelStructure& r) {
  validate_structure(r);
  auto a = check_cof_closure(*r.ambient, r.cof);
  if (!a.holds) return a;
  return check_fib_closure(*r.ambient, r.fib);
}

AxiomCheck check_factorization(const RelStructure& r) {
  validate_structure(r);
  return factorization_with(*r.ambient, index_squares(*r.ambient, r.weq), r);
}

AxiomCheck check_pmc(const RelStructure& r) {
  auto a = check_two_of_six(r);
  if (!a.holds) return a;
  a = check_class_closure(r);
  if (!a.holds) return a;
  return check_factorization(r);
}

namespace {

RelStructure trivial_structure(const CategoryPtr& cp, bool cof_side) {
  const FinCategory& c = *cp;
  RelStructure r;
  r.ambient = cp;
  r.weq = all_morphisms(c);
  r.cof = cof_side ? all_morphisms(c) : identities_only(c);
  r.fib = cof_side ? identities_only(c) : all_morphisms(c);
  r.factor.resize(c.num_morphisms());
  for (MorId w = 0; w < static_cast<MorId>(c.num_morphisms()); ++w)
    r.factor[w] = cof_side ? Factorization{w, c.identity(c.cod(w))} : Factorization{c.identity(c.dom(w)), w};
  for (const auto& s : weq_squares(c, r.weq)) r.mid.emplace(s, cof_side ? s[3] : s[2]);
  if (auto a = check_pmc(r); !a.holds) throw Error("constructed structure fails " + a.axiom + ": " + a.detail);
  return r;
}

}  // namespace

RelStructure pmc_from_pullbacks(const CategoryPtr& c) {
  if (auto s = has_all_pullbacks(*c); !s.holds)
    throw Error("pullback of (" + c->morphism_name(s.f) + ", " + c->morphism_name(s.g) + ") does not exist");
  return trivial_structure(c, false);
}

RelStructure pmc_from_pushouts(const CategoryPtr& c) {
  if (auto s = has_all_pushouts(*c); !s.holds)
    throw Error("pushout of (" + c->morphism_name(s.f) + ", " + c->morphism_name(s.g) + ") does not exist");
  return trivial_structure(c, true);
}

namespace {

// Backtracking over factorizations (per weak equivalence) and then over
// middle maps (per square).
class FactorSearch {
 public:
  FactorSearch(const FinCategory& c, const SquareIndex& ix, RelStructure& r) : c_(c), ix_(ix), r_(r) {
    const auto nm = static_cast<MorId>(c.num_morphisms());
    for (MorId w = 0; w < nm; ++w)
      if (r.weq[w]) ws_.push_back(w);
    pos_.assign(nm, -1);
    for (int i = 0; i < static_cast<int>(ws_.size()); ++i) pos_[ws_[i]] = i;
    by_pair_.resize(ws_.size() * ws_.size());
    for (int i = 0; i < static_cast<int>(ix.squares.size()); ++i) {
      const auto& s = ix.squares[i];
      by_pair_[pos_[s[0]] * ws_.size() + pos_[s[1]]].push_back(i);
    }
    last_use_.resize(ix.squares.size());
    for (int i = 0; i < static_cast<int>(ix.composites.size()); ++i) {
      const auto& t = ix.composites[i];
      last_use_[std::max({t[0], t[1], t[2]})].push_back(i);
    }
  }

  // Factorization candidates for w inside the current classes.
  std::vector<Factorization> options(MorId w) const {
    std::vector<Factorization> out;
    for (ObjId m = 0; m < static_cast<ObjId>(c_.num_objects()); ++m)
      for (MorId a : c_.hom(c_.dom(w), m)) {
        if (!r_.cof[a]) continue;
        for (MorId b : c_.hom(m, c_.cod(w)))
          if (r_.fib[b] && c_.compose(b, a) == w) out.push_back({a, b});
      }
    return out;
  }

  std::optional<MorId> unfactorable() const {
    for (MorId w : ws_)
      if (options(w).empty()) return w;
    return std::nullopt;
  }

  bool run() {
    opts_.clear();
    for (MorId w : ws_) opts_.push_back(options(w));
    return assign(0);
  }

 private:
  std::vector<MorId> mid_candidates(int sq) const {
    const auto& s = ix_.squares[sq];
    const auto f1 = r_.factor[s[0]], f2 = r_.factor[s[1]];
    std::vector<MorId> out;
    for (MorId m : c_.hom(c_.cod(f1.cof), c_.cod(f2.cof)))
      if (r_.weq[m] && c_.compose(m, f1.cof) == c_.compose(f2.cof, s[2]) &&
          c_.compose(f2.fib, m) == c_.compose(s[3], f1.fib))
        out.push_back(m);
    return out;
  }

  bool assign(std::size_t i) {
    if (i == ws_.size()) return assign_mids();
    const MorId w = ws_[i];
    for (const auto& f : opts_[i]) {
      r_.factor[w] = f;
      bool ok = true;
      for (std::size_t j = 0; j <= i && ok; ++j)
        for (auto key : {i * ws_.size() + j, j * ws_.size() + i})
          for (int sq : by_pair_[key])
            if (mid_candidates(sq).empty()) {
              ok = false;
              break;
            }
      if (ok && assign(i + 1)) return true;
    }
    r_.factor[w] = {};
    return false;
  }

  bool assign_mids() {
    cands_.clear();
    for (int i = 0; i < static_cast<int>(ix_.squares.size()); ++i) cands_.push_back(mid_candidates(i));
    for (int i : ix_.identities) {
      const MorId id = c_.identity(c_.cod(r_.factor[ix_.squares[i][0]].cof));
      if (std::find(cands_[i].begin(), cands_[i].end(), id) == cands_[i].end()) return false;
      cands_[i] = {id};
    }
    m_.assign(ix_.squares.size(), kNone);
    if (!assign_mid(0)) return false;
    r_.mid.clear();
    for (std::size_t i = 0; i < ix_.squares.size(); ++i) r_.mid.emplace(ix_.squares[i], m_[i]);
    return true;
  }

  bool assign_mid(std::size_t i) {
    if (i == ix_.squares.size()) return true;
    for (MorId m : cands_[i]) {
      m_[i] = m;
      bool ok = true;
      for (int t : last_use_[i]) {
        const auto& tr = ix_.composites[t];
        if (m_[tr[2]] != c_.compose(m_[tr[1]], m_[tr[0]])) {
          ok = false;
          break;
        }
      }
      if (ok && assign_mid(i + 1)) return true;
    }
    m_[i] = kNone;
    return false;
  }

  const FinCategory& c_;
  const SquareIndex& ix_;
  RelStructure& r_;
  std::vector<MorId> ws_;
  std::vector<int> pos_;
  std::vector<std::vector<int>> by_pair_;
  std::vector<std::vector<int>> last_use_;
  std::vector<std::vector<Factorization>> opts_;
  std::vector<std::vector<MorId>> cands_;
  std::vector<MorId> m_;
};

std::vector<MorId> members(const std::vector<MorId>& pool, std::uint64_t mask) {
  std::vector<MorId> out;
  for (std::size_t i = 0; i < pool.size(); ++i)
    if (mask >> i & 1u) out.push_back(pool[i]);
  return out;
}

}  // namespace

PmcSearchResult pmc_search(const CategoryPtr& cp, const std::vector<char>& weq, std::size_t max_morphisms) {
  const FinCategory& c = *cp;
  if (c.num_morphisms() > max_morphisms)
    throw InputError("pmc_search: " + std::to_string(c.num_morphisms()) + " morphisms exceed the guard of " +
                     std::to_string(max_morphisms));
  if (weq.size() != c.num_morphisms()) throw InputError("weak equivalence mask has the wrong size");
  check_subcategory(c, weq);
  PmcSearchResult out;
  if (auto a = check_two_of_six(c, weq); !a.holds) {
    out.certificate.push_back({{}, {}, a});
    return out;
  }

  std::vector<MorId> pool;
  for (MorId f = 0; f < static_cast<MorId>(c.num_morphisms()); ++f)
    if (weq[f] && !c.is_identity(f)) pool.push_back(f);
  if (pool.size() > 30) throw InputError("pmc_search: too many weak equivalences");
  std::vector<std::uint64_t> masks(std::uint64_t{1} << pool.size());
  std::iota(masks.begin(), masks.end(), 0);
  std::sort(masks.begin(), masks.end(), [&](std::uint64_t a, std::uint64_t b) {
    const int pa = __builtin_popcountll(a), pb = __builtin_popcountll(b);
    if (pa != pb) return pa < pb;
    // Equal sizes: the set holding the least differing element comes first.
    const std::uint64_t d = a ^ b;
    return (a & (d & (~d + 1))) != 0;
  });

  const auto ids = identities_only(c);
  auto to_class = [&](std::uint64_t mask) {
    auto cls = ids;
    for (MorId f : members(pool, mask)) cls[f] = 1;
    return cls;
  };
  const auto ct = cof_table(c);
  const auto ft = fib_table(c);
  std::vector<AxiomCheck> cof_ok, fib_ok;
  for (auto mask : masks) {
    cof_ok.push_back(closure_with(c, ct, to_class(mask), true));
    fib_ok.push_back(closure_with(c, ft, to_class(mask), false));
  }

  const SquareIndex ix = index_squares(c, weq);
  for (std::size_t a = 0; a < masks.size(); ++a)
    for (std::size_t b = 0; b < masks.size(); ++b) {
      ++out.candidates;
      CandidateFailure entry{members(pool, masks[a]), members(pool, masks[b]), {}};
      if (!cof_ok[a].holds) {
        entry.reason = cof_ok[a];
      } else if (!fib_ok[b].holds) {
        entry.reason = fib_ok[b];
      } else {
        RelStructure r;
        r.ambient = cp;
        r.weq = weq;
        r.cof = to_class(masks[a]);
        r.fib = to_class(masks[b]);
        r.factor.assign(c.num_morphisms(), {});
        FactorSearch fs(c, ix, r);
        if (auto w = fs.unfactorable()) {
          entry.reason = fail("factorization", {*w},
                              c.morphism_name(*w) + " is not a fibration after a cofibration");
        } else if (fs.run()) {
          if (auto chk = check_pmc(r); !chk.holds) throw Error("pmc_search produced an invalid structure: " + chk.detail);
          out.found = std::move(r);
          return out;
        } else {
          entry.reason = fail("factorization", {}, "no functorial choice of factorizations and middle maps");
        }
      }
      out.certificate.push_back(std::move(entry));
    }
  return out;
}

std::vector<ObjId> weq_component_closure(const RelStructure& r, const std::vector<ObjId>& seeds) {
  const FinCategory& c = *r.ambient;
  const auto no = static_cast<ObjId>(c.num_objects());
  std::vector<ObjId> parent(no);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<ObjId(ObjId)> root = [&](ObjId x) { return parent[x] == x ? x : parent[x] = root(parent[x]); };
  for (MorId f = 0; f < static_cast<MorId>(c.num_morphisms()); ++f)
    if (r.weq[f]) parent[root(c.dom(f))] = root(c.cod(f));
  std::vector<char> keep(no, 0);
  for (ObjId s : seeds) keep[root(s)] = 1;
  std::vector<ObjId> out;
  for (ObjId x = 0; x < no; ++x)
    if (keep[root(x)]) out.push_back(x);
  return out;
}

RelStructure restrict_full(const RelStructure& r, const std::vector<ObjId>& objects) {
  validate_structure(r);
  const FinCategory& c = *r.ambient;
  std::vector<ObjId> newobj(c.num_objects(), kNone);
  std::vector<ObjId> sorted = objects;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  RawCategory raw;
  raw.name = c.name() + "|full";
  for (ObjId x : sorted) {
    newobj[x] = static_cast<ObjId>(raw.objects.size());
    raw.objects.push_back(c.object_name(x));
  }
  std::vector<MorId> newmor(c.num_morphisms(), kNone);
  for (MorId f = 0; f < static_cast<MorId>(c.num_morphisms()); ++f) {
    const bool in_d = newobj[c.dom(f)] != kNone, in_c = newobj[c.cod(f)] != kNone;
    if (r.weq[f] && in_d != in_c)
      throw InputError("object set is not homotopically full: " + c.morphism_name(f) + " leaves it");
    if (!in_d || !in_c) continue;
    newmor[f] = static_cast<MorId>(raw.morphisms.size());
    raw.morphisms.push_back({c.morphism_name(f), newobj[c.dom(f)], newobj[c.cod(f)]});
  }
  for (ObjId x : sorted) raw.identity.push_back(newmor[c.identity(x)]);
  for (MorId f = 0; f < static_cast<MorId>(c.num_morphisms()); ++f)
    for (MorId g = 0; g < static_cast<MorId>(c.num_morphisms()); ++g)
      if (newmor[f] != kNone && newmor[g] != kNone && c.cod(f) == c.dom(g))
        raw.compose.push_back({newmor[f], newmor[g], newmor[c.compose(g, f)]});
  RelStructure out;
  out.ambient = share(FinCategory::from_raw(std::move(raw)));
  const auto nm = out.ambient->num_morphisms();
  out.weq.assign(nm, 0);
  out.cof.assign(nm, 0);
  out.fib.assign(nm, 0);
  out.factor.assign(nm, {});
  for (MorId f = 0; f < static_cast<MorId>(c.num_morphisms()); ++f) {
    const MorId g = newmor[f];
    if (g == kNone) continue;
    out.weq[g] = r.weq[f];
    out.cof[g] = r.cof[f];
    out.fib[g] = r.fib[f];
    if (r.weq[f]) out.factor[g] = {newmor[r.factor[f].cof], newmor[r.factor[f].fib]};
  }
  for (const auto& [s, m] : r.mid) {
    if (newmor[s[0]] == kNone || newmor[s[1]] == kNone) continue;
    out.mid.emplace(WSquare{newmor[s[0]], newmor[s[1]], newmor[s[2]], newmor[s[3]]}, newmor[m]);
  }
  return out;
}

}  // namespace kanforge
