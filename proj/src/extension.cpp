#include "kanforge/extension.hpp"

#include <map>
#include <mutex>

#include "kanforge/lifting.hpp"

namespace kanforge {

namespace {

std::string mor(const FinCategory& c, MorId f) { return f == kNone ? "-" : c.morphism_name(f); }

void note(Transcript* log, std::string line) {
  if (log) log->push_back(std::move(line));
}

MorId compose_checked(const FinCategory& c, MorId g, MorId f, const std::string& step) {
  const MorId h = c.compose(g, f);
  if (h == kNone) throw ExtensionError(step, "composite " + mor(c, g) + "*" + mor(c, f) + " is undefined");
  return h;
}

MorId unique_into(const FinCategory& c, ObjId s, const Cone& cone, const std::vector<MorId>& maps,
                  const std::string& step) {
  auto u = factorizations_through_cone(c, s, cone, maps);
  if (u.size() != 1)
    throw ExtensionError(step, "expected a unique induced map into " + c.object_name(cone.apex) + ", found " +
                                   std::to_string(u.size()));
  return u[0];
}

MorId unique_from(const FinCategory& c, ObjId t, const Cone& cocone, const std::vector<MorId>& maps,
                  const std::string& step) {
  auto u = factorizations_through_cocone(c, t, cocone, maps);
  if (u.size() != 1)
    throw ExtensionError(step, "expected a unique induced map out of " + c.object_name(cocone.apex) +
                                   ", found " + std::to_string(u.size()));
  return u[0];
}

// Lowest pushout of (f, g) whose leg Z -> W lies in cls; falls back to
// isomorphic copies of the canonical square.
Square pushout_in_class(const FinCategory& c, MorId f, MorId g, const std::vector<char>& cls,
                        const std::string& step) {
  auto po = pushout(c, f, g);
  if (!po) throw ExtensionError(step, "no pushout of " + mor(c, f) + ", " + mor(c, g));
  if (cls[po->second]) return *po;
  for (ObjId w = 0; w < static_cast<ObjId>(c.num_objects()); ++w)
    for (MorId phi : c.hom(po->apex, w)) {
      if (!inverse(c, phi)) continue;
      const MorId second = c.compose(phi, po->second);
      if (cls[second]) return Square{w, c.compose(phi, po->first), second};
    }
  throw ExtensionError(step, "no pushout of " + mor(c, f) + " along " + mor(c, g) + " has its new leg in the class");
}

// Lowest pullback of (f, g) whose leg P -> Z lies in cls.
Square pullback_in_class(const FinCategory& c, MorId f, MorId g, const std::vector<char>& cls,
                         const std::string& step) {
  auto pb = pullback(c, f, g);
  if (!pb) throw ExtensionError(step, "no pullback of " + mor(c, f) + ", " + mor(c, g));
  if (cls[pb->second]) return *pb;
  for (ObjId p = 0; p < static_cast<ObjId>(c.num_objects()); ++p)
    for (MorId psi : c.hom(p, pb->apex)) {
      if (!inverse(c, psi)) continue;
      const MorId second = c.compose(pb->second, psi);
      if (cls[second]) return Square{p, c.compose(pb->first, psi), second};
    }
  throw ExtensionError(step, "no pullback of " + mor(c, f) + " along " + mor(c, g) + " has its new leg in the class");
}

Factorization factor_checked(const RelStructure& r, MorId w, const std::string& step) {
  if (!r.weq[w]) throw ExtensionError(step, mor(*r.ambient, w) + " is not a weak equivalence");
  const Factorization f = r.factor[w];
  if (f.cof == kNone || f.fib == kNone) throw ExtensionError(step, "no factorization of " + mor(*r.ambient, w));
  return f;
}

void require_extension(const RelStructure& r, const KPoset& kp, const Diagram& alpha, const Diagram& out,
                       const std::string& step) {
  auto chk = check_extension(r, kp, alpha, out);
  if (!chk.ok()) throw ExtensionError(step, chk.detail);
}

KData blank_k(const PosetPtr& base, const CategoryPtr& c) {
  KData k;
  const auto n = static_cast<std::size_t>(base->size());
  k.lower = Diagram(base, c);
  k.up.assign(n, kNone);
  k.vert.assign(n, kNone);
  k.upper.assign(n * n, kNone);
  k.legs.assign(n, kNone);
  return k;
}

void set_up_arrow(KData& k, int x, int y, MorId f) { k.upper[static_cast<std::size_t>(x) * k.up.size() + y] = f; }

Diagram constant_extension(const KPoset& kp, const Diagram& alpha, const std::string& step) {
  if (kp.base->size() != 1) throw InputError(step + ": constant extension needs a one-point base");
  const FinCategory& c = *alpha.target();
  KData k = blank_k(kp.base, alpha.target());
  k.lower = alpha;
  const ObjId a = alpha.at(0);
  k.up[0] = a;
  k.vert[0] = c.identity(a);
  set_up_arrow(k, 0, 0, c.identity(a));
  k.apex = a;
  k.legs[0] = c.identity(a);
  return assemble_k(kp, k, step);
}

// Shapes for one dimension n.
struct Level {
  int n = 0;
  SdPoset h;  // c Sd^2 Lambda^n[n], n >= 1
  SdPoset s;  // c Sd^2 Delta[n]
  KPoset kh, ks;
  std::vector<int> p, p_inv;
  // n >= 1: c Sd^2 Delta[n-1] -> c Sd^2 Delta[n].
  std::vector<int> iota0, iota1;
  int bary = -1;
  PosetPtr p_prime;               // c Sd^2 Delta[n] without bary
  std::vector<int> p_prime_incl;  // into s
  // n >= 2: faces c Sd^2 Delta[n-1] -> c Sd^2 Lambda^n[n], i = 0..n-1.
  std::vector<std::vector<int>> faces;
  int last_vertex_h = -1;  // ({n}) in h
  int last_vertex_s = -1;  // ({n}) in s
};

Subset shift_up(Subset a, int i) {
  const Subset low = a & ((Subset{1} << i) - 1);
  return low | ((a & ~low) << 1);
}

std::unique_ptr<Level> make_level(int n) {
  auto L = std::make_unique<Level>();
  L->n = n;
  L->s = sd_delta(n, 2);
  L->ks = k_cone(L->s.poset);
  L->last_vertex_s = *L->s.find(Chain{Subset{1} << n});
  if (n == 0) return L;
  L->h = sd_horn(n, n, 2);
  L->kh = k_cone(L->h.poset);
  L->p = p_embedding(n, L->h, L->kh, L->s);
  L->p_inv.assign(L->s.size(), -1);
  for (int z = 0; z < L->kh.poset->size(); ++z) L->p_inv[L->p[z]] = z;
  L->last_vertex_h = *L->h.find(Chain{Subset{1} << n});
  const SdPoset q = sd_delta(n - 1, 2);
  const Subset face = full_subset(n - 1), full = full_subset(n);
  L->iota0 = map_chains(q, L->s, [&](const Chain& c) {
    Chain out = c;
    if (!out.empty() && out.back() == face) out.back() = full;
    return out;
  });
  L->iota1 = map_chains(q, L->s, [&](const Chain& c) {
    Chain out = c;
    out.push_back(!out.empty() && out.back() == face ? full : face);
    return out;
  });
  L->bary = *L->s.find(Chain{face});
  for (int x = 0; x < L->s.size(); ++x)
    if (x != L->bary) L->p_prime_incl.push_back(x);
  L->p_prime = share(L->s.poset->full_subposet(L->p_prime_incl));
  if (n >= 2) {
    for (int i = 0; i < n; ++i)
      L->faces.push_back(map_chains(q, L->h, [&](const Chain& c) {
        Chain out;
        for (Subset a : c) out.push_back(shift_up(a, i));
        return out;
      }));
  }
  return L;
}

const Level& level(int n) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<Level>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[n];
  if (!slot) slot = make_level(n);
  return *slot;
}

PosetPtr arrow_poset(const PosetPtr& base) {
  const int n = base->size();
  std::vector<std::string> names;
  for (int b = 0; b < 2; ++b)
    for (int x = 0; x < n; ++x) names.push_back(base->name(x) + "@" + std::to_string(b));
  return share(FinPoset::from_leq(std::move(names), [&](int a, int b) {
    return a / n <= b / n && base->leq(a % n, b % n);
  }));
}

}  // namespace

Diagram KData::upper_diagram(const PosetPtr& base) const {
  Diagram d(base, lower.target());
  for (int x = 0; x < base->size(); ++x) {
    d.set_object(x, up[x]);
    for (int y = 0; y < base->size(); ++y)
      if (base->leq(x, y)) d.set_arrow(x, y, up_arrow(x, y));
  }
  return d;
}

KData read_k(const KPoset& kp, const Diagram& d) {
  KData k = blank_k(kp.base, d.target());
  k.lower = d.restrict_along(kp.base, kp.zero);
  const int n = kp.base->size();
  for (int x = 0; x < n; ++x) {
    k.up[x] = d.at(kp.one[x]);
    k.vert[x] = d.arrow(kp.zero[x], kp.one[x]);
    k.legs[x] = d.arrow(kp.apex, kp.one[x]);
    for (int y = 0; y < n; ++y)
      if (kp.base->leq(x, y)) set_up_arrow(k, x, y, d.arrow(kp.one[x], kp.one[y]));
  }
  k.apex = d.at(kp.apex);
  return k;
}

Diagram assemble_k(const KPoset& kp, const KData& k, const std::string& step) {
  const FinCategory& c = *k.lower.target();
  const FinPoset& b = *kp.base;
  Diagram d(kp.poset, k.lower.target());
  for (int x = 0; x < b.size(); ++x) {
    d.set_object(kp.zero[x], k.lower.at(x));
    d.set_object(kp.one[x], k.up[x]);
    d.set_arrow(kp.apex, kp.one[x], k.legs[x]);
    for (int y = 0; y < b.size(); ++y) {
      if (!b.leq(x, y)) continue;
      d.set_arrow(kp.zero[x], kp.zero[y], k.lower.arrow(x, y));
      d.set_arrow(kp.one[x], kp.one[y], k.up_arrow(x, y));
      const MorId across = k.up_arrow(x, y) == kNone || k.vert[x] == kNone ? kNone : c.compose(k.up_arrow(x, y), k.vert[x]);
      d.set_arrow(kp.zero[x], kp.one[y], across);
    }
  }
  d.set_object(kp.apex, k.apex);
  if (k.apex != kNone) d.set_arrow(kp.apex, kp.apex, c.identity(k.apex));
  if (!d.complete()) throw ExtensionError(step, "assembled data is incomplete");
  if (auto v = d.violation()) throw ExtensionError(step, "not a functor: " + *v);
  return d;
}

Cone k_limit(const KPoset& kp, const Diagram& beta) {
  const FinCategory& c = *beta.target();
  const int n = kp.base->size();
  const Diagram d0 = beta.restrict_along(kp.base, kp.zero);
  const Diagram d1 = beta.restrict_along(kp.base, kp.one);
  auto b0 = limit_of_diagram(d0);
  if (!b0) throw ExtensionError("k_limit", "no limit over I x 0");
  auto b1 = limit_of_diagram(d1);
  if (!b1) throw ExtensionError("k_limit", "no limit over I x 1");
  std::vector<MorId> via0(n), viak(n);
  for (int x = 0; x < n; ++x) {
    via0[x] = c.compose(beta.arrow(kp.zero[x], kp.one[x]), b0->legs[x]);
    viak[x] = beta.arrow(kp.apex, kp.one[x]);
  }
  const MorId g = unique_into(c, b0->apex, *b1, via0, "k_limit");
  const MorId h = unique_into(c, beta.at(kp.apex), *b1, viak, "k_limit");
  auto pb = pullback(c, g, h);
  if (!pb) throw ExtensionError("k_limit", "no pullback of " + mor(c, g) + ", " + mor(c, h));
  Cone out{pb->apex, std::vector<MorId>(kp.poset->size())};
  for (int x = 0; x < n; ++x) {
    out.legs[kp.zero[x]] = c.compose(b0->legs[x], pb->first);
    out.legs[kp.one[x]] = c.compose(b1->legs[x], c.compose(g, pb->first));
  }
  out.legs[kp.apex] = pb->second;
  if (!is_limit(beta, out)) throw ExtensionError("k_limit", "pullback is not a limit of the K-diagram");
  return out;
}

ExtensionCheck check_extension(const RelStructure& r, const KPoset& kp, const Diagram& alpha, const Diagram& out) {
  ExtensionCheck chk;
  const FinCategory& c = *r.ambient;
  const KData k = read_k(kp, out);
  if (!(k.lower == alpha)) {
    chk.restriction = false;
    chk.detail = "restriction to the base differs from the input";
    return chk;
  }
  for (int x = 0; x < kp.base->size(); ++x)
    if (!r.cof[k.vert[x]]) {
      chk.cof = false;
      chk.detail = "(Cof) fails at " + kp.base->name(x) + ": " + mor(c, k.vert[x]);
      return chk;
    }
  if (!is_limit(k.upper_diagram(kp.base), k.cone())) {
    chk.lim = false;
    chk.detail = "(Lim) fails: apex " + c.object_name(k.apex) + " is not a limit";
  }
  return chk;
}

DoubleK double_k_extend(const ExtensionFunctor& phi, const RelStructure& r, const Diagram& alpha, Transcript* log) {
  const std::string where = "DoubleK(" + phi.name + ")";
  const FinCategory& c = *r.ambient;
  const KPoset& kh = phi.cone;
  const PosetPtr& d = phi.base;
  const int nd = d->size();
  if (alpha.shape() != kh.poset) throw InputError(where + ": alpha is not on K_h of the base");

  // Step 1.
  const std::string s1 = where + " step 1";
  const KData a0 = read_k(kh, phi.apply(alpha.restrict_along(d, kh.zero), log));
  const KData a1 = read_k(kh, phi.apply(alpha.restrict_along(d, kh.one), log));

  const PosetPtr ap = arrow_poset(kh.poset);
  const int nk = kh.poset->size();
  Diagram nat(ap, alpha.target());
  {
    const Diagram f0 = assemble_k(kh, a0, s1);
    const Diagram f1 = assemble_k(kh, a1, s1);
    for (int x = 0; x < nk; ++x) {
      nat.set_object(x, f0.at(x));
      nat.set_object(nk + x, f1.at(x));
      for (int y = 0; y < nk; ++y)
        if (kh.poset->leq(x, y)) {
          nat.set_arrow(x, y, f0.arrow(x, y));
          nat.set_arrow(nk + x, nk + y, f1.arrow(x, y));
        }
    }
    for (int e = 0; e < nd; ++e) nat.set_arrow(kh.zero[e], nk + kh.zero[e], alpha.arrow(kh.zero[e], kh.one[e]));
  }
  auto rep = extend_diagram(nat, SearchOptions{kDefaultBudget, false});
  if (rep.status != LiftStatus::Filled)
    throw ExtensionError(s1, "no natural transformation between the two extensions (" + to_string(rep.status) + ")");
  std::vector<MorId> tau(nk);
  for (int x = 0; x < nk; ++x) tau[x] = rep.filler->arrow(x, nk + x);
  const MorId tau_k = tau[kh.apex];

  KData out = blank_k(kh.poset, alpha.target());
  out.lower = alpha;
  for (int e = 0; e < nd; ++e) {
    const int z0 = kh.zero[e], z1 = kh.one[e];
    out.up[z0] = a0.up[e];
    out.vert[z0] = a0.vert[e];
    out.up[z1] = a1.up[e];
    out.vert[z1] = a1.vert[e];
    out.legs[z0] = a0.legs[e];
    out.legs[z1] = c.compose(a1.legs[e], tau_k);
    for (int f = 0; f < nd; ++f) {
      if (!d->leq(e, f)) continue;
      set_up_arrow(out, z0, kh.zero[f], a0.up_arrow(e, f));
      set_up_arrow(out, z1, kh.one[f], a1.up_arrow(e, f));
      set_up_arrow(out, z0, kh.one[f], c.compose(a1.up_arrow(e, f), tau[kh.one[e]]));
    }
  }
  std::vector<MorId> into(nd);
  for (int e = 0; e < nd; ++e) into[e] = c.compose(a1.vert[e], alpha.arrow(kh.apex, kh.one[e]));
  const MorId u = unique_into(c, alpha.at(kh.apex), a1.cone(), into, s1);
  out.up[kh.apex] = a1.apex;
  out.vert[kh.apex] = u;
  set_up_arrow(out, kh.apex, kh.apex, c.identity(a1.apex));
  for (int e = 0; e < nd; ++e) set_up_arrow(out, kh.apex, kh.one[e], a1.legs[e]);
  out.apex = a0.apex;
  out.legs[kh.apex] = tau_k;

  DoubleK res;
  res.vertical = k_cone(kh.poset);
  assemble_k(res.vertical, out, s1);
  note(log, s1 + ": u = " + mor(c, u) + ", tau_k = " + mor(c, tau_k));

  // Step 2.
  const std::string s2 = where + " step 2";
  const Factorization fu = factor_checked(r, u, s2);
  out.up[kh.apex] = c.cod(fu.cof);
  out.vert[kh.apex] = fu.cof;
  set_up_arrow(out, kh.apex, kh.apex, c.identity(c.cod(fu.cof)));
  for (int e = 0; e < nd; ++e) set_up_arrow(out, kh.apex, kh.one[e], compose_checked(c, a1.legs[e], fu.fib, s2));
  const Square pb = pullback_in_class(c, fu.fib, tau_k, r.fib, s2);
  out.apex = pb.apex;
  for (int z = 0; z < nk; ++z) out.legs[z] = compose_checked(c, out.legs[z], pb.second, s2);
  out.legs[kh.apex] = pb.first;
  res.epsilon = pb.second;
  note(log, s2 + ": u = " + mor(c, fu.fib) + "*" + mor(c, fu.cof) + ", apex " + c.object_name(pb.apex) +
                ", epsilon = " + mor(c, pb.second));

  // Step 3.
  const std::string s3 = where + " step 3";
  res.out = assemble_k(res.vertical, out, s3);
  require_extension(r, res.vertical, alpha, res.out, s3);
  const Cone kl = k_limit(kh, out.upper_diagram(kh.poset));
  const auto cmp = factorizations_through_cone(c, out.apex, kl, out.legs);
  if (cmp.size() != 1 || !inverse(c, cmp[0]))
    throw ExtensionError(s3, "apex does not agree with the K-limit");
  if (!r.fib[res.epsilon]) throw ExtensionError(s3, "epsilon is not a fibration");
  for (int e = 0; e < nd; ++e)
    for (int x : {kh.zero[e], kh.one[e]})
      if (out.up[x] != (x == kh.zero[e] ? a0.up[e] : a1.up[e]))
        throw ExtensionError(s3, "disagrees with the input extension on D x (0->1)");
  note(log, s3 + ": (Cof), (Lim) and the K-limit verified");
  return res;
}

namespace {

struct FamilyImpl {
  std::shared_ptr<const RelStructure> r;
  int n_max = 0;
  std::vector<ExtensionFunctor> phi, psi;

  Diagram apply_phi(int n, const Diagram& alpha, Transcript* log) const;
  Diagram apply_psi(int n, const Diagram& alpha, Transcript* log) const;
  void check_f3(const KPoset& kp, const Diagram& out, int vertex, const std::string& step) const {
    const MorId leg = out.arrow(kp.apex, kp.one[vertex]);
    if (!r->fib[leg]) throw ExtensionError(step, "(F3) fails: " + mor(*r->ambient, leg) + " is not a fibration");
  }
};

Diagram FamilyImpl::apply_phi(int n, const Diagram& alpha, Transcript* log) const {
  const std::string name = "Phi_" + std::to_string(n);
  const Level& L = level(n);
  if (alpha.shape()->size() != L.h.size()) throw InputError(name + ": input is not on the horn");
  const FinCategory& c = *r->ambient;
  Diagram out;
  if (n == 1) {
    out = constant_extension(L.kh, alpha, name + " constant");
  } else {
    // Step 8.
    const std::string s8 = name + " step 8";
    const Level& Q = level(n - 1);
    std::vector<KData> faces;
    for (int i = 0; i < n; ++i)
      faces.push_back(
          read_k(Q.ks, psi[n - 1].apply(alpha.restrict_along(Q.s.poset, L.faces[i]), log)));
    const int nh = L.h.size();
    // The first face containing each element, and its preimage there.
    std::vector<int> face_of(nh, -1), pre(static_cast<std::size_t>(n) * nh, -1);
    for (int i = 0; i < n; ++i)
      for (int q = 0; q < Q.s.size(); ++q) {
        const int x = L.faces[i][q];
        pre[static_cast<std::size_t>(i) * nh + x] = q;
        if (face_of[x] < 0) face_of[x] = i;
      }
    auto pre_of = [&](int i, int x) { return pre[static_cast<std::size_t>(i) * nh + x]; };
    KData k = blank_k(L.h.poset, alpha.target());
    k.lower = alpha;
    for (int x = 0; x < nh; ++x) {
      if (face_of[x] < 0) throw ExtensionError(s8, "element " + L.h.poset->name(x) + " lies in no face");
      for (int i = 0; i < n; ++i) {
        const int q = pre_of(i, x);
        if (q < 0) continue;
        const ObjId v = faces[i].up[q];
        const MorId w = faces[i].vert[q];
        if (k.up[x] == kNone) {
          k.up[x] = v;
          k.vert[x] = w;
        } else if (k.up[x] != v || k.vert[x] != w) {
          throw ExtensionError(s8, "(F1) faces disagree at " + L.h.poset->name(x));
        }
      }
    }
    for (int x = 0; x < nh; ++x)
      for (int y : L.h.poset->strictly_above(x))
        for (int i = 0; i < n; ++i) {
          const int qx = pre_of(i, x), qy = pre_of(i, y);
          if (qx < 0 || qy < 0) continue;
          const MorId f = faces[i].up_arrow(qx, qy);
          if (k.up_arrow(x, y) == kNone) set_up_arrow(k, x, y, f);
          else if (k.up_arrow(x, y) != f)
            throw ExtensionError(s8, "(F1) faces disagree on " + L.h.poset->name(x) + " <= " + L.h.poset->name(y));
        }
    for (int x = 0; x < nh; ++x) set_up_arrow(k, x, x, c.identity(k.up[x]));
    // Iterated pullback over E = value at ({n}).
    const int last = L.last_vertex_h;
    std::vector<MorId> to_face(n);
    ObjId apex = faces[0].apex;
    to_face[0] = c.identity(apex);
    MorId to_e = faces[0].legs[Q.last_vertex_s];
    for (int i = 1; i < n; ++i) {
      const MorId fi = faces[i].legs[Q.last_vertex_s];
      if (c.cod(fi) != k.up[last]) throw ExtensionError(s8, "faces end at different objects");
      const Square pb = pullback_in_class(c, fi, to_e, r->fib, s8);
      for (int j = 0; j < i; ++j) to_face[j] = c.compose(to_face[j], pb.second);
      to_face[i] = pb.first;
      to_e = c.compose(to_e, pb.second);
      apex = pb.apex;
    }
    k.apex = apex;
    for (int x = 0; x < nh; ++x) {
      const int i = face_of[x];
      k.legs[x] = compose_checked(c, faces[i].legs[pre_of(i, x)], to_face[i], s8);
    }
    out = assemble_k(L.kh, k, s8);
    note(log, s8 + ": X = " + c.object_name(apex) + " over " + std::to_string(n) + " faces");
  }
  require_extension(*r, L.kh, alpha, out, name);
  check_f3(L.kh, out, L.last_vertex_h, name);
  return out;
}

Diagram FamilyImpl::apply_psi(int n, const Diagram& alpha, Transcript* log) const {
  const std::string name = "Psi_" + std::to_string(n);
  const Level& L = level(n);
  if (alpha.shape()->size() != L.s.size()) throw InputError(name + ": input is not on the simplex");
  const FinCategory& c = *r->ambient;
  Diagram out;
  if (n == 0) {
    out = constant_extension(L.ks, alpha, name + " constant");
  } else {
    // Step 1.
    const Diagram on_p = alpha.restrict_along(L.kh.poset, L.p);
    const DoubleK dk = double_k_extend(phi[n], *r, on_p, log);
    const KData d1 = read_k(dk.vertical, dk.out);
    KData k = blank_k(L.s.poset, alpha.target());
    k.lower = alpha;
    const int nkh = L.kh.poset->size();
    for (int z = 0; z < nkh; ++z) {
      const int s = L.p[z];
      k.up[s] = d1.up[z];
      k.vert[s] = d1.vert[z];
      k.legs[s] = d1.legs[z];
      for (int w = 0; w < nkh; ++w)
        if (L.kh.poset->leq(z, w)) set_up_arrow(k, s, L.p[w], d1.up_arrow(z, w));
    }
    k.apex = d1.apex;

    // Step 4.
    const std::string s4 = name + " step 4";
    const Level& Q = level(n - 1);
    const int nq = Q.s.size();
    std::vector<Square> po(nq);
    Diagram gamma(Q.s.poset, alpha.target());
    for (int x = 0; x < nq; ++x) {
      const int s0 = L.iota0[x], s1 = L.iota1[x];
      po[x] = pushout_in_class(c, k.vert[s0], alpha.arrow(s0, s1), r->cof, s4);
      gamma.set_object(x, po[x].apex);
    }
    for (int x = 0; x < nq; ++x)
      for (int y = 0; y < nq; ++y) {
        if (!Q.s.poset->leq(x, y)) continue;
        const std::vector<MorId> maps{
            c.compose(po[y].first, k.up_arrow(L.iota0[x], L.iota0[y])),
            c.compose(po[y].second, alpha.arrow(L.iota1[x], L.iota1[y]))};
        gamma.set_arrow(x, y, unique_from(c, po[y].apex, Cone{po[x].apex, {po[x].first, po[x].second}}, maps, s4));
      }
    if (auto v = gamma.violation()) throw ExtensionError(s4, "gamma is not a functor: " + *v);
    const KData g = read_k(Q.ks, psi[n - 1].apply(gamma, log));
    std::vector<MorId> jump(nq);  // (iota0 y, 1) -> (iota1 y, 1)
    for (int y = 0; y < nq; ++y) {
      const int s1 = L.iota1[y];
      jump[y] = c.compose(g.vert[y], po[y].first);
      k.up[s1] = g.up[y];
      k.vert[s1] = c.compose(g.vert[y], po[y].second);
    }
    for (int y = 0; y < nq; ++y) {
      const int t = L.iota1[y], t0 = L.iota0[y];
      for (int x = 0; x < nq; ++x)
        if (Q.s.poset->leq(x, y)) set_up_arrow(k, L.iota1[x], t, g.up_arrow(x, y));
      for (int z = 0; z < nkh; ++z) {
        const int s = L.p[z];
        if (!L.s.poset->leq(s, t)) continue;
        if (!L.s.poset->leq(s, t0)) throw ExtensionError(s4, "element of P below iota1 but not iota0");
        set_up_arrow(k, s, t, c.compose(jump[y], k.up_arrow(s, t0)));
      }
    }
    note(log, s4 + ": gamma built on " + std::to_string(nq) + " elements");

    // Step 5.
    const std::string s5 = name + " step 5";
    for (int y = 0; y < nq; ++y) k.legs[L.iota1[y]] = c.compose(jump[y], k.legs[L.iota0[y]]);
    {
      std::vector<MorId> legs;
      for (int s : L.p_prime_incl) legs.push_back(k.legs[s]);
      const Diagram upper = k.upper_diagram(L.s.poset).restrict_along(L.p_prime, L.p_prime_incl);
      if (!is_limit(upper, Cone{k.apex, legs})) throw ExtensionError(s5, "apex is not a limit over P'");
      note(log, s5 + ": apex is a limit over P'");
    }

    // Step 6.
    const std::string s6 = name + " step 6";
    const int b = L.bary;
    std::vector<MorId> from_b(nq), from_apex(nq);
    for (int y = 0; y < nq; ++y) {
      from_b[y] = c.compose(k.vert[L.iota1[y]], alpha.arrow(b, L.iota1[y]));
      from_apex[y] = k.legs[L.iota1[y]];
    }
    const MorId m = unique_into(c, alpha.at(b), g.cone(), from_b, s6);
    const Factorization fm = factor_checked(*r, m, s6);
    const MorId q = unique_into(c, k.apex, g.cone(), from_apex, s6);
    k.up[b] = c.cod(fm.cof);
    k.vert[b] = fm.cof;
    set_up_arrow(k, b, b, c.identity(k.up[b]));
    for (int y = 0; y < nq; ++y) set_up_arrow(k, b, L.iota1[y], c.compose(g.legs[y], fm.fib));
    const Square pb = pullback_in_class(c, fm.fib, q, r->fib, s6);
    for (int s = 0; s < L.s.size(); ++s)
      if (s != b) k.legs[s] = c.compose(k.legs[s], pb.second);
    k.legs[b] = pb.first;
    k.apex = pb.apex;
    note(log, s6 + ": m = " + mor(c, fm.fib) + "*" + mor(c, fm.cof) + ", apex " + c.object_name(pb.apex));

    // Step 7.
    out = assemble_k(L.ks, k, name + " step 7");
    // (F2): agreement with Phi_n on the horn.
    const KData ph = read_k(L.kh, phi[n].apply(alpha.restrict_along(L.h.poset, L.h.inclusion), nullptr));
    for (int x = 0; x < L.h.size(); ++x) {
      const int sx = L.h.inclusion[x];
      bool same = ph.up[x] == k.up[sx] && ph.vert[x] == k.vert[sx];
      for (int y : L.h.poset->strictly_above(x)) same = same && ph.up_arrow(x, y) == k.up_arrow(sx, L.h.inclusion[y]);
      if (!same) throw ExtensionError(name + " step 7", "(F2) fails at " + L.h.poset->name(x));
    }
  }
  require_extension(*r, L.ks, alpha, out, name + " step 7");
  check_f3(L.ks, out, L.last_vertex_s, name);
  note(log, name + ": (Cof), (Lim), (F2), (F3) verified");
  return out;
}

}  // namespace

ExtensionFamily build_phi_psi(const RelStructure& r, int n_max, int cap) {
  if (n_max < 1 || n_max > cap)
    throw InputError("build_phi_psi: n_max must be in 1.." + std::to_string(cap));
  validate_structure(r);
  if (auto chk = check_pmc(r); !chk.holds) throw InputError("build_phi_psi: " + chk.axiom + " fails: " + chk.detail);
  auto impl = std::make_shared<FamilyImpl>();
  impl->r = std::make_shared<const RelStructure>(r);
  impl->n_max = n_max;
  impl->phi.resize(n_max + 1);
  impl->psi.resize(n_max);
  for (int n = 0; n <= n_max; ++n) {
    const Level& L = level(n);
    if (n >= 1) {
      std::weak_ptr<FamilyImpl> w = impl;
      impl->phi[n] = ExtensionFunctor{"Phi_" + std::to_string(n), L.h.poset, L.kh,
                                      [w, n](const Diagram& a, Transcript* log) {
                                        return w.lock()->apply_phi(n, a, log);
                                      }};
    }
    if (n < n_max) {
      std::weak_ptr<FamilyImpl> w = impl;
      impl->psi[n] = ExtensionFunctor{"Psi_" + std::to_string(n), L.s.poset, L.ks,
                                      [w, n](const Diagram& a, Transcript* log) {
                                        return w.lock()->apply_psi(n, a, log);
                                      }};
    }
  }
  ExtensionFamily fam;
  fam.structure = impl->r;
  fam.n_max = n_max;
  // The family keeps the implementation alive through strong copies.
  for (int n = 1; n <= n_max; ++n)
    fam.phi.push_back(ExtensionFunctor{impl->phi[n].name, impl->phi[n].base, impl->phi[n].cone,
                                       [impl, n](const Diagram& a, Transcript* log) {
                                         return impl->apply_phi(n, a, log);
                                       }});
  fam.phi.insert(fam.phi.begin(), ExtensionFunctor{});
  for (int n = 0; n < n_max; ++n)
    fam.psi.push_back(ExtensionFunctor{impl->psi[n].name, impl->psi[n].base, impl->psi[n].cone,
                                       [impl, n](const Diagram& a, Transcript* log) {
                                         return impl->apply_psi(n, a, log);
                                       }});
  return fam;
}

Diagram constructive_filler(const ExtensionFamily& fam, int n, int k, const Diagram& boundary, Transcript* log) {
  if (n < 1 || n > fam.n_max) throw InputError("constructive_filler: n out of range");
  if (k < 0 || k > n) throw InputError("constructive_filler: k out of range");
  const SdPoset src = sd_horn(n, k, 2);
  if (boundary.shape()->size() != src.size()) throw InputError("constructive_filler: boundary is not on the horn");
  const Level& L = level(n);
  const auto theta = horn_automorphism(n, k, L.s);
  std::vector<int> horn_of_delta(L.s.size(), -1);
  for (int x = 0; x < src.size(); ++x) horn_of_delta[src.inclusion[x]] = x;
  std::vector<int> g(L.h.size());
  for (int y = 0; y < L.h.size(); ++y) g[y] = horn_of_delta[theta[L.h.inclusion[y]]];
  const Diagram conj = boundary.restrict_along(L.h.poset, g);
  note(log, "conjugated Lambda^" + std::to_string(k) + "[" + std::to_string(n) + "] onto Lambda^" +
                std::to_string(n) + "[" + std::to_string(n) + "]");
  const Diagram ext = fam.phi[n].apply(conj, log);
  const auto r = retraction(n, L.s);
  std::vector<int> through(L.s.size());
  for (int e = 0; e < L.s.size(); ++e) through[e] = L.p_inv[r[theta[e]]];
  Diagram full = ext.restrict_along(L.s.poset, through);
  if (!full.complete() || full.violation()) throw ExtensionError("constructive_filler", "transport is not a functor");
  for (int x = 0; x < src.size(); ++x) {
    const int ix = src.inclusion[x];
    bool same = full.at(ix) == boundary.at(x);
    for (int y : src.poset->strictly_above(x)) same = same && full.arrow(ix, src.inclusion[y]) == boundary.arrow(x, y);
    if (!same) throw ExtensionError("constructive_filler", "filler does not restrict to the boundary at " +
                                                               src.poset->name(x));
  }
  note(log, "filler validated on " + std::to_string(L.s.size()) + " elements");
  return full;
}

}  // namespace kanforge
