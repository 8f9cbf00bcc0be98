#include "kanforge/sdposet.hpp"

#include <algorithm>

namespace kanforge {

namespace {

void check_cap(std::size_t count, std::size_t cap) {
  if (count > cap) throw InputError("subdivision poset exceeds the element cap of " + std::to_string(cap));
}

std::vector<Subset> subsets_in_order(int n) {
  std::vector<Subset> out;
  for (Subset s = 1; s <= full_subset(n); ++s) out.push_back(s);
  std::sort(out.begin(), out.end(), subset_less);
  return out;
}

// All chains x0 < x1 < ... in p, as ascending index lists.
std::vector<std::vector<int>> poset_chains(const FinPoset& p, std::size_t cap) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int)> grow = [&](int x) {
    cur.push_back(x);
    std::vector<int> sorted = cur;
    std::sort(sorted.begin(), sorted.end());
    out.push_back(std::move(sorted));
    check_cap(out.size(), cap);
    for (int y : p.strictly_above(x)) grow(y);
    cur.pop_back();
  };
  for (int x = 0; x < p.size(); ++x) grow(x);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return out;
}

std::string member_name(const SdPoset& lower, std::vector<int> members) {
  std::sort(members.begin(), members.end(),
            [&](int a, int b) { return lower.poset->rank()[a] < lower.poset->rank()[b]; });
  std::string s;
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (i) s += "<";
    s += "[" + lower.poset->name(members[i]) + "]";
  }
  return s;
}

PosetPtr chain_poset_of(const std::vector<Chain>& chains, int m) {
  std::vector<std::string> names;
  for (const auto& c : chains) names.push_back(chain_name(c));
  // Level 1 orders the subsets themselves; level 2 orders chains of them.
  if (m == 1)
    return share(FinPoset::from_leq(std::move(names), [&](int a, int b) { return (chains[a][0] & ~chains[b][0]) == 0; }));
  return share(FinPoset::from_leq(std::move(names), [&](int a, int b) { return chain_leq(chains[a], chains[b]); }));
}

PosetPtr member_poset_of(const SdPoset& lower, const std::vector<std::vector<int>>& members) {
  std::vector<std::string> names;
  for (const auto& m : members) names.push_back(member_name(lower, m));
  return share(FinPoset::from_leq(std::move(names), [&](int a, int b) {
    return std::includes(members[b].begin(), members[b].end(), members[a].begin(), members[a].end());
  }));
}

}  // namespace

std::string subset_name(Subset s) {
  std::string out;
  for (int i = 0; i < 32; ++i)
    if (s >> i & 1u) out += std::to_string(i);
  return out;
}

std::string chain_name(const Chain& c) {
  std::string out;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) out += "<";
    out += subset_name(c[i]);
  }
  return out;
}

bool subset_less(Subset a, Subset b) {
  const int pa = __builtin_popcount(a), pb = __builtin_popcount(b);
  if (pa != pb) return pa < pb;
  // Lexicographic on the ascending element lists.
  while (a != b) {
    const Subset la = a & -a, lb = b & -b;
    if (la != lb) return la < lb;
    a ^= la;
    b ^= lb;
  }
  return false;
}

bool chain_less(const Chain& a, const Chain& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return subset_less(a[i], b[i]);
  return false;
}

bool chain_leq(const Chain& a, const Chain& b) {
  // Entries are strictly increasing under inclusion, hence sorted by size.
  std::size_t j = 0;
  for (Subset s : a) {
    while (j < b.size() && b[j] != s) ++j;
    if (j == b.size()) return false;
  }
  return true;
}

std::optional<int> SdPoset::find(const Chain& c) const {
  auto it = index_.find(c);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

SdPoset sd_delta(int n, int m, std::size_t cap) {
  if (n < 0 || n > 9) throw InputError("sd_delta: n must be in 0..9");
  if (m < 1) throw InputError("sd_delta: level must be at least 1");
  SdPoset out;
  out.n = n;
  out.level = m;
  if (m == 1) {
    for (Subset s : subsets_in_order(n)) out.chains.push_back({s});
    check_cap(out.chains.size(), cap);
    out.poset = chain_poset_of(out.chains, m);
  } else if (m == 2) {
    const auto subsets = subsets_in_order(n);
    Chain cur;
    std::function<void(Subset)> grow = [&](Subset s) {
      cur.push_back(s);
      out.chains.push_back(cur);
      check_cap(out.chains.size(), cap);
      for (Subset t : subsets)
        if (t != s && (s & ~t) == 0) grow(t);
      cur.pop_back();
    };
    for (Subset s : subsets) grow(s);
    std::sort(out.chains.begin(), out.chains.end(), chain_less);
    out.poset = chain_poset_of(out.chains, m);
  } else {
    out.lower = std::make_shared<const SdPoset>(sd_delta(n, m - 1, cap));
    out.members = poset_chains(*out.lower->poset, cap);
    out.poset = member_poset_of(*out.lower, out.members);
  }
  for (int i = 0; i < static_cast<int>(out.chains.size()); ++i) out.index_.emplace(out.chains[i], i);
  return out;
}

SdPoset sd_horn(int n, int k, int m, std::size_t cap) {
  if (n < 1 || n > 9) throw InputError("sd_horn: n must be in 1..9");
  if (k < 0 || k > n) throw InputError("sd_horn: k must be in 0..n");
  if (m < 1) throw InputError("sd_horn: level must be at least 1");
  const Subset full = full_subset(n);
  const Subset face = full & ~(Subset{1} << k);
  SdPoset out;
  out.n = n;
  out.k = k;
  out.level = m;
  if (m <= 2) {
    const SdPoset delta = sd_delta(n, m, cap);
    for (int i = 0; i < delta.size(); ++i) {
      const Subset top = delta.chains[i].back();
      if (top == full || top == face) continue;
      out.chains.push_back(delta.chains[i]);
      out.inclusion.push_back(i);
    }
    out.poset = chain_poset_of(out.chains, m);
  } else {
    auto lower = std::make_shared<const SdPoset>(sd_horn(n, k, m - 1, cap));
    const SdPoset delta = sd_delta(n, m, cap);
    std::map<std::vector<int>, int> delta_index;
    for (int i = 0; i < delta.size(); ++i) delta_index.emplace(delta.members[i], i);
    out.lower = lower;
    out.members = poset_chains(*lower->poset, cap);
    out.poset = member_poset_of(*lower, out.members);
    for (const auto& mem : out.members) {
      std::vector<int> image;
      for (int x : mem) image.push_back(lower->inclusion[x]);
      std::sort(image.begin(), image.end());
      out.inclusion.push_back(delta_index.at(image));
    }
  }
  for (int i = 0; i < static_cast<int>(out.chains.size()); ++i) out.index_.emplace(out.chains[i], i);
  return out;
}

std::size_t count_subset_chains(int n) {
  // Chains ending at a set of size j: each subset of it either is an
  // earlier entry or not, restricted to nonempty proper subsets.
  // Computed by dynamic programming over subsets, independent of sd_delta.
  const Subset full = full_subset(n);
  std::vector<std::size_t> ending(full + 1, 0);
  std::size_t total = 0;
  for (Subset s = 1; s <= full; ++s) {
    std::size_t c = 1;
    for (Subset t = (s - 1) & s; t; t = (t - 1) & s) c += ending[t];
    ending[s] = c;
    total += c;
  }
  return total;
}

KPoset k_cone(const PosetPtr& base) {
  const int n = base->size();
  KPoset out;
  out.base = base;
  std::vector<std::string> names;
  for (int x = 0; x < n; ++x) names.push_back("(" + base->name(x) + ",0)");
  for (int x = 0; x < n; ++x) names.push_back("(" + base->name(x) + ",1)");
  names.push_back("k");
  for (int x = 0; x < n; ++x) {
    out.zero.push_back(x);
    out.one.push_back(n + x);
  }
  out.apex = 2 * n;
  out.poset = share(FinPoset::from_leq(std::move(names), [&](int a, int b) {
    if (a == b) return true;
    if (a == 2 * n) return b >= n && b < 2 * n;
    if (b == 2 * n) return false;
    if (a >= n && b < n) return false;
    return base->leq(a % n, b % n);
  }));
  return out;
}

FinCategory k_cone(const FinCategory& d) {
  const auto no = static_cast<ObjId>(d.num_objects());
  const auto nm = static_cast<MorId>(d.num_morphisms());
  RawCategory r;
  r.name = "K(" + d.name() + ")";
  for (ObjId x = 0; x < no; ++x) r.objects.push_back("(" + d.object_name(x) + ",0)");
  for (ObjId x = 0; x < no; ++x) r.objects.push_back("(" + d.object_name(x) + ",1)");
  r.objects.push_back("k");
  const ObjId k = 2 * no;
  // Blocks: (f,0) at f, (f,1) at nm+f, (f,01) at 2nm+f, k>(X,1) at 3nm+X, id_k last.
  for (MorId f = 0; f < nm; ++f) r.morphisms.push_back({"(" + d.morphism_name(f) + ",0)", d.dom(f), d.cod(f)});
  for (MorId f = 0; f < nm; ++f)
    r.morphisms.push_back({"(" + d.morphism_name(f) + ",1)", no + d.dom(f), no + d.cod(f)});
  for (MorId f = 0; f < nm; ++f)
    r.morphisms.push_back({"(" + d.morphism_name(f) + ",01)", d.dom(f), no + d.cod(f)});
  for (ObjId x = 0; x < no; ++x) r.morphisms.push_back({"k>(" + d.object_name(x) + ",1)", k, no + x});
  const MorId idk = 3 * nm + no;
  r.morphisms.push_back({"id_k", k, k});
  for (ObjId x = 0; x < no; ++x) r.identity.push_back(d.identity(x));
  for (ObjId x = 0; x < no; ++x) r.identity.push_back(nm + d.identity(x));
  r.identity.push_back(idk);
  for (MorId f = 0; f < nm; ++f)
    for (MorId g = 0; g < nm; ++g) {
      if (d.cod(f) != d.dom(g)) continue;
      const MorId gf = d.compose(g, f);
      r.compose.push_back({f, g, gf});
      r.compose.push_back({f, 2 * nm + g, 2 * nm + gf});
      r.compose.push_back({nm + f, nm + g, nm + gf});
      r.compose.push_back({2 * nm + f, nm + g, 2 * nm + gf});
    }
  for (ObjId x = 0; x < no; ++x)
    for (MorId g = 0; g < nm; ++g)
      if (d.dom(g) == x) r.compose.push_back({3 * nm + x, nm + g, 3 * nm + d.cod(g)});
  r.compose.push_back({idk, idk, idk});
  for (ObjId x = 0; x < no; ++x) r.compose.push_back({idk, 3 * nm + x, 3 * nm + x});
  return FinCategory::from_raw(std::move(r));
}

Functor k_functor(const Functor& f, CategoryPtr k_source, CategoryPtr k_target) {
  const auto& s = *f.source;
  const auto& t = *f.target;
  const auto sno = static_cast<ObjId>(s.num_objects()), snm = static_cast<MorId>(s.num_morphisms());
  const auto tno = static_cast<ObjId>(t.num_objects()), tnm = static_cast<MorId>(t.num_morphisms());
  if (k_source->num_objects() != static_cast<std::size_t>(2 * sno + 1) ||
      k_target->num_objects() != static_cast<std::size_t>(2 * tno + 1))
    throw InputError("k_functor: cone categories do not match the functor");
  Functor out{std::move(k_source), std::move(k_target), {}, {}};
  for (ObjId x = 0; x < sno; ++x) out.obj.push_back(f.obj[x]);
  for (ObjId x = 0; x < sno; ++x) out.obj.push_back(tno + f.obj[x]);
  out.obj.push_back(2 * tno);
  for (int block = 0; block < 3; ++block)
    for (MorId m = 0; m < snm; ++m) out.mor.push_back(block * tnm + f.mor[m]);
  for (ObjId x = 0; x < sno; ++x) out.mor.push_back(3 * tnm + f.obj[x]);
  out.mor.push_back(3 * tnm + tno);
  return out;
}

std::vector<int> p_embedding(int n, const SdPoset& horn, const KPoset& kh, const SdPoset& delta) {
  if (horn.level != 2 || delta.level != 2 || horn.n != n || horn.k != n || delta.n != n || delta.is_horn())
    throw InputError("p_embedding: expects sd_horn(n, n, 2) and sd_delta(n, 2)");
  const Subset full = full_subset(n);
  std::vector<int> out(kh.poset->size(), -1);
  for (int v = 0; v < horn.size(); ++v) {
    out[kh.zero[v]] = *delta.find(horn.chains[v]);
    Chain up = horn.chains[v];
    up.push_back(full);
    out[kh.one[v]] = *delta.find(up);
  }
  out[kh.apex] = *delta.find(Chain{full});
  return out;
}

bool in_p(int n, const Chain& c) {
  const Subset face = full_subset(n - 1);
  return std::find(c.begin(), c.end(), face) == c.end();
}

std::vector<int> retraction(int n, const SdPoset& delta) {
  const Subset full = full_subset(n);
  const Subset face = full_subset(n - 1);
  return map_chains(delta, delta, [&](const Chain& c) {
    if (in_p(n, c)) return c;
    Chain w;
    for (Subset s : c) {
      if (s == face) break;
      w.push_back(s);
    }
    w.push_back(full);
    return w;
  });
}

std::vector<int> horn_automorphism(int n, int i, const SdPoset& delta) {
  if (i < 0 || i > n) throw InputError("horn_automorphism: i must be in 0..n");
  return map_chains(delta, delta, [&](const Chain& c) {
    Chain out;
    for (Subset s : c) {
      const Subset bi = s >> i & 1u, bn = s >> n & 1u;
      Subset t = s & ~((Subset{1} << i) | (Subset{1} << n));
      t |= (bi << n) | (bn << i);
      out.push_back(t);
    }
    return out;
  });
}

std::vector<int> map_chains(const SdPoset& a, const SdPoset& b, const std::function<Chain(const Chain&)>& f) {
  std::vector<int> out;
  out.reserve(a.size());
  for (const auto& c : a.chains) {
    auto idx = b.find(f(c));
    if (!idx) throw Error("chain " + chain_name(c) + " has no image " + chain_name(f(c)));
    out.push_back(*idx);
  }
  return out;
}

}  // namespace kanforge
