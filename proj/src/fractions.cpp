#include "kanforge/fractions.hpp"

#include "kanforge/sdposet.hpp"

namespace kanforge {

std::optional<Cocone2> cf1_cocone(const FinCategory& c, MorId s, MorId t) {
  const ObjId y = c.cod(s), z = c.cod(t);
  for (ObjId w = 0; w < static_cast<ObjId>(c.num_objects()); ++w)
    for (MorId u : c.hom(y, w)) {
      const MorId us = c.compose(u, s);
      for (MorId v : c.hom(z, w))
        if (c.compose(v, t) == us) return Cocone2{u, v};
    }
  return std::nullopt;
}

std::optional<MorId> cf2_equalizer(const FinCategory& c, MorId f, MorId g) {
  const ObjId y = c.cod(f);
  for (ObjId w = 0; w < static_cast<ObjId>(c.num_objects()); ++w)
    for (MorId t : c.hom(y, w))
      if (c.compose(t, f) == c.compose(t, g)) return t;
  return std::nullopt;
}

CfWitness check_cf(const CategoryPtr& cp) {
  const FinCategory& c = *cp;
  const auto nm = static_cast<MorId>(c.num_morphisms());
  CfWitness w;
  w.category = cp;
  for (MorId s = 0; s < nm; ++s)
    for (MorId t = 0; t < nm; ++t) {
      if (c.dom(s) != c.dom(t)) continue;
      if (auto sq = cf1_cocone(c, s, t))
        w.cf1.emplace(std::make_pair(s, t), *sq);
      else if (!w.cf1_failure)
        w.cf1_failure = std::make_pair(s, t);
    }
  std::map<std::pair<MorId, MorId>, std::optional<MorId>> memo;
  for (MorId f = 0; f < nm; ++f)
    for (MorId g = 0; g < nm; ++g) {
      if (c.dom(f) != c.dom(g) || c.cod(f) != c.cod(g)) continue;
      for (MorId s = 0; s < nm; ++s) {
        if (c.cod(s) != c.dom(f) || c.compose(f, s) != c.compose(g, s)) continue;
        auto it = memo.find({f, g});
        if (it == memo.end()) it = memo.emplace(std::make_pair(f, g), cf2_equalizer(c, f, g)).first;
        if (it->second)
          w.cf2.emplace(Triple{f, g, s}, *it->second);
        else if (!w.cf2_failure)
          w.cf2_failure = Triple{f, g, s};
      }
    }
  return w;
}

void verify_witness(const CfWitness& w) {
  const FinCategory& c = *w.category;
  for (const auto& [span, sq] : w.cf1) {
    const auto [s, t] = span;
    if (c.dom(s) != c.dom(t) || c.dom(sq.u) != c.cod(s) || c.dom(sq.v) != c.cod(t) || c.cod(sq.u) != c.cod(sq.v) ||
        c.compose(sq.u, s) != c.compose(sq.v, t))
      throw Error("CF1 entry for (" + c.morphism_name(s) + ", " + c.morphism_name(t) + ") does not commute");
  }
  for (const auto& [tr, t] : w.cf2) {
    const auto [f, g, s] = tr;
    if (c.compose(f, s) != c.compose(g, s) || c.dom(t) != c.cod(f) || c.compose(t, f) != c.compose(t, g))
      throw Error("CF2 entry for (" + c.morphism_name(f) + ", " + c.morphism_name(g) + ", " + c.morphism_name(s) +
                  ") does not equalize");
  }
}

std::vector<MorId> common_multiple(const FinCategory& c, const std::vector<MorId>& fs, const CfWitness& w) {
  if (fs.empty()) throw InputError("common_multiple needs at least one morphism");
  for (MorId f : fs)
    if (c.dom(f) != c.dom(fs[0])) throw InputError("common_multiple: morphisms must share their source");
  if (fs.size() == 1) return {c.identity(c.cod(fs[0]))};
  auto lookup = [&](MorId s, MorId t) {
    auto it = w.cf1.find({s, t});
    if (it == w.cf1.end())
      throw Error("CF1 witness missing for (" + c.morphism_name(s) + ", " + c.morphism_name(t) + ")");
    return it->second;
  };
  std::vector<MorId> out;
  if (fs.size() == 2) {
    const auto sq = lookup(fs[0], fs[1]);
    out = {sq.u, sq.v};
  } else {
    std::vector<MorId> head(fs.begin(), fs.end() - 1);
    auto g = common_multiple(c, head, w);
    const auto sq = lookup(c.compose(g[0], fs[0]), fs.back());
    for (MorId gi : g) out.push_back(c.compose(sq.u, gi));
    out.push_back(sq.v);
  }
  const MorId first = c.compose(out[0], fs[0]);
  for (std::size_t i = 1; i < fs.size(); ++i)
    if (c.compose(out[i], fs[i]) != first) throw Error("common multiple does not verify");
  return out;
}

Diagram construct_horn_filler(const CfWitness& w, int n, int k, const Diagram& f) {
  const FinCategory& c = *w.category;
  const SdPoset horn = sd_horn(n, k, 1);
  const SdPoset delta = sd_delta(n, 1);
  if (f.target() != w.category) throw InputError("boundary and witness live in different categories");
  if (f.size() != horn.size() || !f.complete()) throw InputError("boundary is not a functor on the horn");
  if (auto v = f.violation()) throw InputError("boundary is not a functor: " + *v);

  const Subset full = full_subset(n);
  auto bit = [](int i) { return Subset{1} << i; };
  auto hidx = [&](Subset s) { return *horn.find({s}); };
  auto didx = [&](Subset s) { return *delta.find({s}); };
  auto farrow = [&](Subset a, Subset b) { return f.arrow(hidx(a), hidx(b)); };

  std::vector<int> others;
  for (int i = 0; i <= n; ++i)
    if (i != k) others.push_back(i);

  // a_i and their common multiple b_i.
  std::vector<MorId> a;
  for (int i : others) a.push_back(farrow(bit(k), full & ~bit(i)));
  const std::vector<MorId> b = common_multiple(c, a, w);
  const ObjId zobj = c.cod(b[0]);

  // Corrections t_ij on each square, then one v through all of them.
  std::vector<MorId> ts;
  for (std::size_t p = 0; p < others.size(); ++p)
    for (std::size_t q = p + 1; q < others.size(); ++q) {
      const Subset both = full & ~bit(others[p]) & ~bit(others[q]);
      const MorId s = farrow(bit(k), both);
      const MorId lhs = c.compose(b[p], farrow(both, full & ~bit(others[p])));
      const MorId rhs = c.compose(b[q], farrow(both, full & ~bit(others[q])));
      auto it = w.cf2.find(Triple{lhs, rhs, s});
      if (it == w.cf2.end())
        throw Error("CF2 witness missing for (" + c.morphism_name(lhs) + ", " + c.morphism_name(rhs) + ", " +
                    c.morphism_name(s) + ")");
      ts.push_back(it->second);
    }
  MorId v = c.identity(zobj);
  if (!ts.empty()) {
    const auto u = common_multiple(c, ts, w);
    v = c.compose(u[0], ts[0]);
  }
  const ObjId wobj = c.cod(v);

  Diagram g(delta.poset, w.category);
  for (int x = 0; x < horn.size(); ++x) {
    const int dx = horn.inclusion[x];
    g.set_object(dx, f.at(x));
    for (int y = 0; y < horn.size(); ++y)
      if (horn.poset->leq(x, y)) g.set_arrow(dx, horn.inclusion[y], f.arrow(x, y));
  }
  const int top = didx(full);
  const int face = didx(full & ~bit(k));
  g.set_object(top, wobj);
  g.set_object(face, wobj);
  g.set_arrow(top, top, c.identity(wobj));
  g.set_arrow(face, face, c.identity(wobj));
  g.set_arrow(face, top, c.identity(wobj));
  for (Subset s = 1; s < full; ++s) {
    if (s == (full & ~bit(k))) continue;
    std::size_t p = 0;
    while (s & bit(others[p])) ++p;
    const MorId to_top = c.compose(c.compose(v, b[p]), farrow(s, full & ~bit(others[p])));
    g.set_arrow(didx(s), top, to_top);
    if (!(s & bit(k))) g.set_arrow(didx(s), face, to_top);
  }
  if (!g.complete()) throw Error("constructed filler is incomplete");
  if (auto bad = g.violation()) throw Error("constructed filler is not a functor: " + *bad);
  return g;
}

namespace {

Diagram boundary_on(const SdPoset& horn, const CategoryPtr& c,
                    const std::vector<std::pair<Subset, ObjId>>& objects,
                    const std::vector<std::pair<std::pair<Subset, Subset>, MorId>>& covers) {
  Diagram d(horn.poset, c);
  for (auto [s, o] : objects) d.set_object(*horn.find({s}), o);
  for (int x = 0; x < horn.size(); ++x) d.set_arrow(x, x, c->identity(d.at(x)));
  for (auto [st, m] : covers) d.set_arrow(*horn.find({st.first}), *horn.find({st.second}), m);
  if (auto v = d.close_from_covers()) throw InputError("boundary is not a functor: " + *v);
  return d;
}

Diagram embed_in_delta(const SdPoset& horn, const Diagram& d) {
  const SdPoset delta = sd_delta(horn.n, 1);
  Diagram p(delta.poset, d.target());
  for (int x = 0; x < horn.size(); ++x) {
    p.set_object(horn.inclusion[x], d.at(x));
    for (int y = 0; y < horn.size(); ++y)
      if (horn.poset->leq(x, y)) p.set_arrow(horn.inclusion[x], horn.inclusion[y], d.arrow(x, y));
  }
  return p;
}

MorId read_arrow(const Diagram& filler, Subset a, Subset b) {
  const FinPoset& p = *filler.shape();
  return filler.arrow(*p.find(subset_name(a)), *p.find(subset_name(b)));
}

}  // namespace

Diagram cf1_horn(const CategoryPtr& cp, MorId s, MorId t) {
  const FinCategory& c = *cp;
  if (c.dom(s) != c.dom(t)) throw InputError("cf1_horn: not a span");
  const SdPoset horn = sd_horn(2, 0, 1);
  const ObjId y = c.cod(s), z = c.cod(t);
  return boundary_on(horn, cp, {{0b001, c.dom(s)}, {0b010, y}, {0b100, z}, {0b011, y}, {0b101, z}},
                     {{{0b001, 0b011}, s}, {{0b010, 0b011}, c.identity(y)}, {{0b001, 0b101}, t},
                      {{0b100, 0b101}, c.identity(z)}});
}

std::optional<Cocone2> cf1_from_filler(const Diagram& filler) {
  const MorId u = read_arrow(filler, 0b011, 0b111);
  const MorId v = read_arrow(filler, 0b101, 0b111);
  if (u == kNone || v == kNone) return std::nullopt;
  return Cocone2{u, v};
}

Diagram cf2_horn(const CategoryPtr& cp, MorId f, MorId g, MorId s) {
  const FinCategory& c = *cp;
  if (c.dom(f) != c.dom(g) || c.cod(f) != c.cod(g) || c.cod(s) != c.dom(f) || c.compose(f, s) != c.compose(g, s))
    throw InputError("cf2_horn: (f, g, s) is not an equalized triple");
  const SdPoset horn = sd_horn(3, 0, 1);
  const ObjId x = c.dom(f), y = c.cod(f), xp = c.dom(s);
  const MorId ix = c.identity(x), iy = c.identity(y), fs = c.compose(f, s);
  return boundary_on(horn, cp,
                     {{0b0001, xp}, {0b0010, xp}, {0b0100, x}, {0b1000, x},
                      {0b0011, x}, {0b0101, y}, {0b1001, x}, {0b0110, x}, {0b1010, x}, {0b1100, x},
                      {0b0111, y}, {0b1011, y}, {0b1101, y}},
                     {{{0b0011, 0b0111}, f}, {{0b0101, 0b0111}, iy}, {{0b0110, 0b0111}, g},
                      {{0b0011, 0b1011}, g}, {{0b1001, 0b1011}, g}, {{0b1010, 0b1011}, g},
                      {{0b0101, 0b1101}, iy}, {{0b1001, 0b1101}, g}, {{0b1100, 0b1101}, g},
                      {{0b0001, 0b0011}, s}, {{0b0001, 0b0101}, fs}, {{0b0001, 0b1001}, s},
                      {{0b0010, 0b0011}, s}, {{0b0010, 0b0110}, s}, {{0b0010, 0b1010}, s},
                      {{0b0100, 0b0101}, g}, {{0b0100, 0b0110}, ix}, {{0b0100, 0b1100}, ix},
                      {{0b1000, 0b1001}, ix}, {{0b1000, 0b1010}, ix}, {{0b1000, 0b1100}, ix}});
}

MorId cf2_from_filler(const Diagram& filler) { return read_arrow(filler, 0b1101, 0b1111); }

HornExtraction cf1_from_horn(const CategoryPtr& cp, const SearchOptions& opts) {
  const FinCategory& c = *cp;
  const SdPoset horn = sd_horn(2, 0, 1);
  HornExtraction out;
  out.witness.category = cp;
  const auto nm = static_cast<MorId>(c.num_morphisms());
  for (MorId s = 0; s < nm; ++s)
    for (MorId t = 0; t < nm; ++t) {
      if (c.dom(s) != c.dom(t)) continue;
      const Diagram d = cf1_horn(cp, s, t);
      const auto r = extend_diagram(embed_in_delta(horn, d), opts);
      if (!r.filler) {
        out.witness.cf1_failure = std::make_pair(s, t);
        out.failed = d;
        out.status = r.status;
        return out;
      }
      out.witness.cf1.emplace(std::make_pair(s, t), *cf1_from_filler(*r.filler));
    }
  verify_witness(out.witness);
  return out;
}

HornExtraction cf2_from_horn(const CategoryPtr& cp, const SearchOptions& opts) {
  const FinCategory& c = *cp;
  const SdPoset horn = sd_horn(3, 0, 1);
  HornExtraction out;
  out.witness.category = cp;
  const auto nm = static_cast<MorId>(c.num_morphisms());
  for (MorId f = 0; f < nm; ++f)
    for (MorId g = 0; g < nm; ++g) {
      if (c.dom(f) != c.dom(g) || c.cod(f) != c.cod(g)) continue;
      for (MorId s = 0; s < nm; ++s) {
        if (c.cod(s) != c.dom(f) || c.compose(f, s) != c.compose(g, s)) continue;
        const Diagram d = cf2_horn(cp, f, g, s);
        const auto r = extend_diagram(embed_in_delta(horn, d), opts);
        if (!r.filler) {
          out.witness.cf2_failure = Triple{f, g, s};
          out.failed = d;
          out.status = r.status;
          return out;
        }
        out.witness.cf2.emplace(Triple{f, g, s}, cf2_from_filler(*r.filler));
      }
    }
  verify_witness(out.witness);
  return out;
}

bool is_coequalizer(const FinCategory& c, MorId f, MorId g, MorId phi) {
  if (c.dom(f) != c.dom(g) || c.cod(f) != c.cod(g) || c.dom(phi) != c.cod(f)) return false;
  if (c.compose(phi, f) != c.compose(phi, g)) return false;
  const ObjId y = c.cod(f), z = c.cod(phi);
  for (ObjId t = 0; t < static_cast<ObjId>(c.num_objects()); ++t)
    for (MorId h : c.hom(y, t)) {
      if (c.compose(h, f) != c.compose(h, g)) continue;
      int through = 0;
      for (MorId psi : c.hom(z, t))
        if (c.compose(psi, phi) == h) ++through;
      if (through != 1) return false;
    }
  return true;
}

Coequalizer coequalizer_from_pushouts(const FinCategory& c, MorId f, MorId g, MorId alpha) {
  if (c.dom(f) != c.dom(g) || c.cod(f) != c.cod(g) || c.cod(alpha) != c.dom(f) ||
      c.compose(f, alpha) != c.compose(g, alpha))
    throw InputError("coequalizer_from_pushouts: alpha does not equalize f and g");
  Coequalizer out;
  const MorId fa = c.compose(f, alpha);
  auto b = pushout(c, alpha, fa);
  if (!b) throw Error("pushout of (" + c.morphism_name(alpha) + ", " + c.morphism_name(fa) + ") does not exist");
  out.b = *b;
  const ObjId y = c.cod(f);
  // The maps B -> Y induced by (f, id) and (g, id).
  auto induced = [&](MorId on_x) {
    for (MorId h : c.hom(b->apex, y))
      if (c.compose(h, b->first) == on_x && c.compose(h, b->second) == c.identity(y)) return h;
    throw Error("pushout does not induce a map to " + c.object_name(y));
  };
  out.big_f = induced(f);
  out.big_g = induced(g);
  auto z = pushout(c, out.big_g, out.big_f);
  if (!z) throw Error("pushout of (G, F) does not exist");
  out.z = *z;
  if (z->first != z->second) throw Error("the two legs of the second pushout differ");
  out.apex = z->apex;
  out.phi = z->first;
  if (!is_coequalizer(c, f, g, out.phi)) throw Error("constructed map is not a coequalizer");
  return out;
}

}  // namespace kanforge
