#include "kanforge/fibrancy.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <thread>
#include <unordered_set>

#include "search.hpp"

namespace kanforge {

namespace {

struct HornShapes {
  SdPoset horn;
  SdPoset delta;
};

const HornShapes& horn_shapes(int n, int k, int m) {
  static std::mutex mu;
  static std::map<std::tuple<int, int, int>, std::unique_ptr<HornShapes>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{n, k, m}];
  if (!slot) slot = std::make_unique<HornShapes>(HornShapes{sd_horn(n, k, m), sd_delta(n, m)});
  return *slot;
}

PosetPtr chain_shape(int n) {
  static std::mutex mu;
  static std::map<int, PosetPtr> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[n];
  if (!slot) {
    std::vector<std::string> names;
    for (int i = 0; i <= n; ++i) names.push_back(std::to_string(i));
    slot = share(FinPoset::from_leq(std::move(names), [](int a, int b) { return a <= b; }));
  }
  return slot;
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

Diagram embed_boundary(const Diagram& b, const SdPoset& horn, const PosetPtr& delta, const CategoryPtr& c) {
  Diagram d(delta, c);
  const FinPoset& h = *horn.poset;
  for (int x = 0; x < h.size(); ++x) {
    const int ix = horn.inclusion[x];
    d.set_object(ix, b.at(x));
    d.set_arrow(ix, ix, b.arrow(x, x));
    for (int y : h.strictly_above(x)) d.set_arrow(ix, horn.inclusion[y], b.arrow(x, y));
  }
  return d;
}

struct Outcome {
  LiftStatus status = LiftStatus::Exhausted;
  std::uint64_t nodes = 0;
  std::optional<Diagram> filler;
};

// Runs solve on every item, in parallel when workers > 1; results keep
// the input order.
template <class Item, class Solve>
std::vector<Outcome> run_batch(const std::vector<Item>& items, unsigned workers, Solve solve) {
  std::vector<Outcome> out(items.size());
  if (workers <= 1 || items.size() < 2) {
    for (std::size_t i = 0; i < items.size(); ++i) out[i] = solve(items[i]);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr error;
  std::mutex error_mu;
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      try {
        for (std::size_t i = next++; i < items.size(); i = next++) out[i] = solve(items[i]);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
      }
    });
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  return out;
}

constexpr std::size_t kBatch = 2048;

// At level 1 a filler of F on Lambda^k[n] consists of cocones on the missing
// face d_k and on the whole horn. Both are fixed by their legs at maximal
// elements, subject to agreement at the pairwise meets. So fillability only
// depends on F at codimension <= 2, on the arrows from codimension 2 into
// the horn facets, and on the arrows from codimension 3 into the facets
// of d_k. Returns the horn elements and covering pairs that carry this data.
struct FaceData {
  std::vector<int> objects;
  std::vector<std::pair<int, int>> arrows;
};

FaceData level1_face_data(const SdPoset& horn, int n, int k) {
  FaceData fd;
  const FinPoset& p = *horn.poset;
  auto size_of = [&](int x) { return std::popcount(horn.chains[x][0]); };
  auto in_dk = [&](int x) { return !(horn.chains[x][0] & (Subset{1} << k)); };
  for (int x = 0; x < p.size(); ++x) {
    const int sx = size_of(x);
    if (sx >= n - 1 || (sx == n - 2 && in_dk(x))) fd.objects.push_back(x);
  }
  for (const auto& [x, y] : p.covers()) {
    const int sy = size_of(y);
    if (sy == n || (sy == n - 1 && in_dk(y))) fd.arrows.emplace_back(x, y);
  }
  return fd;
}

std::string face_key(const Diagram& b, const FaceData& fd) {
  std::string key;
  key.reserve(sizeof(std::int32_t) * (fd.objects.size() + fd.arrows.size()));
  auto put = [&](std::int32_t v) { key.append(reinterpret_cast<const char*>(&v), sizeof v); };
  for (int x : fd.objects) put(static_cast<std::int32_t>(b.at(x)));
  for (auto [x, y] : fd.arrows) put(static_cast<std::int32_t>(b.arrow(x, y)));
  return key;
}

// Shared driver: pulls boundaries from enumerate, solves them in batches
// and folds the outcomes into a HornResult in enumeration order.
template <class Item, class Enumerate, class Solve, class Record>
void drive(HornResult& r, const FibrancyOptions& opts, Enumerate enumerate, Solve solve, Record record) {
  std::vector<Item> batch;
  bool failed = false;
  bool first = true;
  auto flush = [&]() {
    auto outcomes = run_batch(batch, opts.workers, solve);
    for (std::size_t i = 0; i < batch.size(); ++i) {
      const Outcome& o = outcomes[i];
      r.nodes += o.nodes;
      if (first && o.filler) r.sample_filler = o.filler;
      first = false;
      if (o.status == LiftStatus::Exhausted && !failed) {
        failed = true;
        record(r, batch[i]);
        r.verdict = HornVerdict::Failed;
        if (opts.stop_at_first_failure) {
          r.boundaries = r.boundaries - batch.size() + i + 1;
          batch.clear();
          return false;
        }
      } else if (o.status == LiftStatus::Budget) {
        ++r.budget_hits;
        if (!failed && r.budget_hits == 1) record(r, batch[i]);
      }
    }
    batch.clear();
    return true;
  };
  bool go_on = true;
  auto res = enumerate([&](Item item) {
    batch.push_back(std::move(item));
    ++r.boundaries;
    if (batch.size() == kBatch) go_on = flush();
    return go_on;
  });
  if (go_on && !batch.empty()) flush();
  if (!failed) {
    if (r.budget_hits > 0) {
      r.verdict = HornVerdict::Budget;
    } else if (res.truncated) {
      r.verdict = HornVerdict::Truncated;
    }
  }
}

}  // namespace

std::string to_string(HornVerdict v) {
  switch (v) {
    case HornVerdict::AllFilled: return "filled";
    case HornVerdict::Failed: return "failed";
    case HornVerdict::Budget: return "budget";
    case HornVerdict::Truncated: return "truncated";
  }
  return "?";
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

HornCategory horn_category(int n, int k) {
  if (n < 1 || n > 6 || k < 0 || k > n) throw InputError("horn_category: need 1 <= n <= 6 and 0 <= k <= n");
  const unsigned full = (1u << (n + 1)) - 1;
  const unsigned face = full & ~(1u << k);
  auto in_horn = [&](unsigned s) { return s != full && s != face; };
  std::vector<int> vertices;
  for (int v = 0; v <= n; ++v)
    if (in_horn(1u << v)) vertices.push_back(v);
  auto edge = [&](int i, int j) { return in_horn((1u << i) | (1u << j)); };

  // All paths i0 < i1 < ... < ir along horn edges, as vertex lists.
  std::vector<std::vector<int>> paths;
  std::map<std::vector<int>, int> index;
  std::function<void(std::vector<int>&)> grow = [&](std::vector<int>& p) {
    index.emplace(p, static_cast<int>(paths.size()));
    paths.push_back(p);
    for (int j = p.back() + 1; j <= n; ++j)
      if (edge(p.back(), j)) {
        p.push_back(j);
        grow(p);
        p.pop_back();
      }
  };
  for (int v : vertices) {
    std::vector<int> p{v};
    grow(p);
  }
  UnionFind uf(static_cast<int>(paths.size()));
  for (std::size_t i = 0; i < paths.size(); ++i) {
    const auto& p = paths[i];
    for (std::size_t t = 0; t + 2 < p.size(); ++t) {
      const unsigned tri = (1u << p[t]) | (1u << p[t + 1]) | (1u << p[t + 2]);
      if (!in_horn(tri)) continue;
      std::vector<int> q(p.begin(), p.begin() + t + 1);
      q.insert(q.end(), p.begin() + t + 2, p.end());
      uf.unite(static_cast<int>(i), index.at(q));
    }
  }
  HornCategory out;
  out.n = n;
  out.k = k;
  out.vertex = vertices;
  std::map<int, ObjId> obj_of;
  RawCategory r;
  r.name = "horn0(" + std::to_string(n) + "," + std::to_string(k) + ")";
  for (int v : vertices) {
    obj_of[v] = static_cast<ObjId>(r.objects.size());
    r.objects.push_back(std::to_string(v));
  }
  // Morphisms: one per class, named by its least path (shortest first).
  std::map<int, MorId> mor_of;
  std::vector<int> order(paths.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const auto& pa = paths[a];
    const auto& pb = paths[b];
    if (pa.front() != pb.front()) return pa.front() < pb.front();
    if (pa.back() != pb.back()) return pa.back() < pb.back();
    if (pa.size() != pb.size()) return pa.size() < pb.size();
    return pa < pb;
  });
  for (int i : order) {
    const int cls = uf.find(i);
    if (mor_of.count(cls)) continue;
    const auto& p = paths[i];
    std::string name;
    if (p.size() == 1) {
      name = "id_" + std::to_string(p[0]);
    } else {
      for (std::size_t t = 0; t < p.size(); ++t) name += (t ? ">" : "") + std::to_string(p[t]);
    }
    mor_of[cls] = static_cast<MorId>(r.morphisms.size());
    r.morphisms.push_back({name, obj_of[p.front()], obj_of[p.back()]});
    out.span.emplace_back(p.front(), p.back());
  }
  for (int v : vertices) r.identity.push_back(mor_of[uf.find(index.at({v}))]);
  std::set<std::array<MorId, 3>> seen;
  for (std::size_t i = 0; i < paths.size(); ++i)
    for (std::size_t j = 0; j < paths.size(); ++j) {
      if (paths[i].back() != paths[j].front()) continue;
      std::vector<int> cat = paths[i];
      cat.insert(cat.end(), paths[j].begin() + 1, paths[j].end());
      std::array<MorId, 3> t{mor_of[uf.find(static_cast<int>(i))], mor_of[uf.find(static_cast<int>(j))],
                             mor_of[uf.find(index.at(cat))]};
      if (seen.insert(t).second) r.compose.push_back(t);
    }
  out.category = share(FinCategory::from_raw(std::move(r)));
  return out;
}

LiftReport lift_level0(const HornCategory& h, const Functor& f, const SearchOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  Diagram partial(chain_shape(h.n), f.target);
  for (ObjId o = 0; o < static_cast<ObjId>(h.vertex.size()); ++o) partial.set_object(h.vertex[o], f.obj[o]);
  for (MorId m = 0; m < static_cast<MorId>(h.span.size()); ++m) {
    auto [i, j] = h.span[m];
    const MorId prev = partial.arrow(i, j);
    if (prev != kNone && prev != f.mor[m]) {
      // Two parallel morphisms of the horn go to different arrows, but
      // [n] has only one arrow i -> j.
      LiftReport r;
      r.status = LiftStatus::Exhausted;
      r.elapsed = std::chrono::steady_clock::now() - start;
      return r;
    }
    partial.set_arrow(i, j, f.mor[m]);
  }
  return extend_diagram(partial, opts);
}

HornResult check_horn0(const CategoryPtr& c, int n, int k, const FibrancyOptions& opts) {
  HornResult r;
  r.n = n;
  r.k = k;
  const HornCategory h = horn_category(n, k);
  SearchOptions so{opts.budget, opts.up_to_iso};
  drive<Functor>(
      r, opts,
      [&](auto&& sink) { return enumerate_functors(h.category, c, opts.boundary_cap, sink); },
      [&](const Functor& f) {
        auto rep = lift_level0(h, f, so);
        return Outcome{rep.status, rep.nodes, std::move(rep.filler)};
      },
      [](HornResult& res, const Functor& f) { res.witness0 = f; });
  return r;
}

HornResult check_horn(const CategoryPtr& c, int level, int n, int k, const FibrancyOptions& opts) {
  if (level == 0) return check_horn0(c, n, k, opts);
  HornResult r;
  r.n = n;
  r.k = k;
  const HornShapes& s = horn_shapes(n, k, level);
  Diagram pattern(s.delta.poset, c);
  for (int x = 0; x < s.horn.size(); ++x) {
    const int ix = s.horn.inclusion[x];
    pattern.set_object(ix, 0);
    pattern.set_arrow(ix, ix, 0);
    for (int y : s.horn.poset->strictly_above(x)) pattern.set_arrow(ix, s.horn.inclusion[y], 0);
  }
  const auto plan = detail::make_plan(pattern, detail::Order::Linear);
  EnumOptions eo{opts.boundary_cap, opts.up_to_iso};
  const bool reuse = level == 1 && opts.reuse_equivalent;
  const FaceData fd = reuse ? level1_face_data(s.horn, n, k) : FaceData{};
  std::unordered_set<std::string> seen;
  drive<Diagram>(
      r, opts,
      [&](auto&& sink) {
        if (!reuse) return enumerate_diagrams(s.horn.poset, c, eo, sink);
        return enumerate_diagrams(s.horn.poset, c, eo, [&](const Diagram& b) {
          if (seen.insert(face_key(b, fd)).second) return sink(b);
          ++r.equivalent;
          return true;
        });
      },
      [&](const Diagram& b) {
        Diagram partial = embed_boundary(b, s.horn, s.delta.poset, c);
        Outcome o;
        auto stats = detail::run_search(plan, partial, opts.up_to_iso, opts.budget, [&](const Diagram& d) {
          o.filler = d;
          return false;
        });
        o.nodes = stats.nodes;
        if (o.filler) {
          if (auto v = o.filler->violation(); v || !o.filler->complete())
            throw Error("search returned an invalid filler");
          o.status = LiftStatus::Filled;
        } else {
          o.status = stats.budget_hit ? LiftStatus::Budget : LiftStatus::Exhausted;
        }
        return o;
      },
      [](HornResult& res, const Diagram& b) { res.witness = b; });
  r.boundaries += r.equivalent;
  return r;
}

FibrancyReport fibrancy_report(const CategoryPtr& c, int level, int max_dim, const FibrancyOptions& opts) {
  if (level < 0 || level > 2) throw InputError("fibrancy_report: level must be 0, 1 or 2");
  if (max_dim < 1) throw InputError("fibrancy_report: max_dim must be at least 1");
  FibrancyReport rep;
  rep.level = level;
  rep.max_dim = max_dim;
  bool inconclusive = false;
  for (int n = 1; n <= max_dim; ++n)
    for (int k = 0; k <= n; ++k) {
      rep.horns.push_back(check_horn(c, level, n, k, opts));
      const auto v = rep.horns.back().verdict;
      if (v == HornVerdict::Failed) {
        rep.verdict = Verdict::Fail;
        if (opts.stop_at_first_failure) return rep;
      } else if (v != HornVerdict::AllFilled) {
        inconclusive = true;
      }
    }
  if (rep.verdict != Verdict::Fail && inconclusive) rep.verdict = Verdict::Inconclusive;
  return rep;
}

LiftReport lift_via_kcone(int n, const Diagram& boundary, const SearchOptions& opts) {
  const HornShapes& s = horn_shapes(n, n, 2);
  if (boundary.shape()->size() != s.horn.size()) throw InputError("lift_via_kcone: boundary is not on the horn");
  const KPoset kp = k_cone(s.horn.poset);
  const auto p = p_embedding(n, s.horn, kp, s.delta);
  std::vector<int> p_inv(s.delta.size(), -1);
  for (int x = 0; x < kp.poset->size(); ++x) p_inv[p[x]] = x;
  const auto r = retraction(n, s.delta);
  LiftingProblem prob = make_lifting_problem(boundary, kp.poset, kp.zero);
  LiftReport rep = extend_functor(prob, opts);
  if (rep.status != LiftStatus::Filled) return rep;
  std::vector<int> g(s.delta.size());
  for (int e = 0; e < s.delta.size(); ++e) g[e] = p_inv[r[e]];
  Diagram full = rep.filler->restrict_along(s.delta.poset, g);
  if (auto v = full.violation(); v || !full.complete()) throw Error("retraction transport broke functoriality");
  for (int x = 0; x < s.horn.size(); ++x) {
    const int ix = s.horn.inclusion[x];
    if (full.at(ix) != boundary.at(x)) throw Error("retraction transport does not restrict to the boundary");
    for (int y : s.horn.poset->strictly_above(x))
      if (full.arrow(ix, s.horn.inclusion[y]) != boundary.arrow(x, y))
        throw Error("retraction transport does not restrict to the boundary");
  }
  rep.filler = std::move(full);
  return rep;
}

HornResult rlp_via_kcone(const CategoryPtr& c, int n, const FibrancyOptions& opts) {
  HornResult r;
  r.n = n;
  r.k = n;
  const HornShapes& s = horn_shapes(n, n, 2);
  SearchOptions so{opts.budget, opts.up_to_iso};
  EnumOptions eo{opts.boundary_cap, opts.up_to_iso};
  drive<Diagram>(
      r, opts,
      [&](auto&& sink) { return enumerate_diagrams(s.horn.poset, c, eo, sink); },
      [&](const Diagram& b) {
        auto rep = lift_via_kcone(n, b, so);
        return Outcome{rep.status, rep.nodes, std::move(rep.filler)};
      },
      [](HornResult& res, const Diagram& b) { res.witness = b; });
  return r;
}

Diagram conjugate_boundary(int n, int i, const Diagram& boundary, const PosetPtr& target_horn) {
  const HornShapes& src = horn_shapes(n, i, 2);
  const HornShapes& dst = horn_shapes(n, n, 2);
  if (boundary.shape()->size() != src.horn.size() || target_horn->size() != dst.horn.size())
    throw InputError("conjugate_boundary: shapes do not match the horns");
  const auto theta = horn_automorphism(n, i, src.delta);
  std::vector<int> horn_of_delta(src.delta.size(), -1);
  for (int x = 0; x < src.horn.size(); ++x) horn_of_delta[src.horn.inclusion[x]] = x;
  // theta is an involution carrying Lambda^i onto Lambda^n.
  std::vector<int> g(dst.horn.size());
  for (int y = 0; y < dst.horn.size(); ++y) {
    const int pre = horn_of_delta[theta[dst.horn.inclusion[y]]];
    if (pre < 0) throw Error("horn automorphism does not carry the horns onto each other");
    g[y] = pre;
  }
  return boundary.restrict_along(target_horn, g);
}

}  // namespace kanforge
