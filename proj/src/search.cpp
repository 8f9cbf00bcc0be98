#include "search.hpp"

#include <algorithm>

namespace kanforge::detail {

namespace {

// Elements of s that are minimal (keep_min) or maximal among s.
std::vector<int> extremal(const FinPoset& p, std::vector<int> s, bool keep_min) {
  std::sort(s.begin(), s.end(), [&](int a, int b) { return keep_min ? p.rank()[a] < p.rank()[b] : p.rank()[a] > p.rank()[b]; });
  std::vector<int> out;
  for (int z : s) {
    bool dominated = false;
    for (int m : out)
      if (keep_min ? p.leq(m, z) : p.leq(z, m)) {
        dominated = true;
        break;
      }
    if (!dominated) out.push_back(z);
  }
  return out;
}

}  // namespace

SearchPlan make_plan(const Diagram& pattern, Order order) {
  const FinPoset& p = *pattern.shape();
  const int n = p.size();
  SearchPlan plan;
  plan.shape = pattern.shape();

  std::vector<char> preset(n, 0);
  for (int x = 0; x < n; ++x) preset[x] = pattern.object_defined(x);
  bool closed = true;
  for (int x = 0; x < n && closed; ++x) {
    if (!preset[x]) continue;
    if (pattern.arrow(x, x) == kNone) closed = false;
    for (int y : p.strictly_above(x))
      if (preset[y] && pattern.arrow(x, y) == kNone) closed = false;
  }
  std::vector<char> placed(n, 0);
  if (closed) {
    for (int x : p.linear_extension())
      if (preset[x]) {
        plan.prefix.push_back(x);
        placed[x] = 1;
      }
  }

  std::vector<int> rest;
  for (int x : p.linear_extension())
    if (!placed[x]) rest.push_back(x);
  if (order == Order::Connected) {
    std::vector<int> chosen;
    std::vector<char> taken(n, 0);
    std::vector<char> in_set = placed;
    for (std::size_t step = 0; step < rest.size(); ++step) {
      int best = -1, best_score = -1;
      for (int x : rest) {
        if (taken[x]) continue;
        int score = 0;
        for (int y : p.strictly_below(x)) score += in_set[y];
        for (int y : p.strictly_above(x)) score += in_set[y];
        if (score > best_score) {
          best = x;
          best_score = score;
        }
      }
      taken[best] = 1;
      in_set[best] = 1;
      chosen.push_back(best);
    }
    rest = std::move(chosen);
  }

  for (int x : rest) {
    SearchPlan::Step st;
    st.x = x;
    bool touched = preset[x];
    for (int y = 0; y < n && !touched; ++y)
      if (y != x && p.comparable(x, y) && (p.leq(x, y) ? pattern.arrow(x, y) : pattern.arrow(y, x)) != kNone)
        touched = true;
    st.free = !touched;
    for (int y : p.strictly_below(x))
      if (placed[y]) st.down.push_back(y);
    for (int z : p.strictly_above(x))
      if (placed[z]) st.up.push_back(z);
    std::sort(st.down.begin(), st.down.end(), [&](int a, int b) { return p.rank()[a] > p.rank()[b]; });
    std::sort(st.up.begin(), st.up.end(), [&](int a, int b) { return p.rank()[a] < p.rank()[b]; });
    for (int y : st.down) {
      std::vector<int> s;
      for (int z : st.down)
        if (p.lt(y, z)) s.push_back(z);
      st.down_derivers.push_back(extremal(p, std::move(s), true));
    }
    for (int z : st.up) {
      std::vector<int> s;
      for (int w : st.up)
        if (p.lt(w, z)) s.push_back(w);
      st.up_derivers.push_back(extremal(p, std::move(s), false));
    }
    st.max_down = extremal(p, st.down, false);
    placed[x] = 1;
    plan.steps.push_back(std::move(st));
  }
  return plan;
}

namespace {

class Runner {
 public:
  Runner(const SearchPlan& plan, const Diagram& partial, bool up_to_iso, std::uint64_t budget,
         const std::function<bool(const Diagram&)>& visit)
      : plan_(plan),
        c_(*partial.target()),
        work_(partial),
        preset_(partial),
        up_to_iso_(up_to_iso),
        budget_(budget),
        visit_(visit) {
    const auto no = static_cast<ObjId>(c_.num_objects());
    for (ObjId o = 0; o < no; ++o) {
      bool rep = true;
      for (ObjId q = 0; q < o && rep; ++q)
        for (MorId f : c_.hom(o, q))
          if (inverse(c_, f)) {
            rep = false;
            break;
          }
      if (rep) reps_.push_back(o);
    }
    auts_.resize(no);
    for (ObjId o = 0; o < no; ++o)
      for (MorId s : automorphisms(c_, o))
        if (!c_.is_identity(s)) auts_[o].push_back({s, *inverse(c_, s)});
    all_.resize(no);
    for (ObjId o = 0; o < no; ++o) all_[o] = o;
  }

  SearchStats run() {
    place(0);
    return stats_;
  }

 private:
  bool tick() {
    ++stats_.nodes;
    if (budget_ != 0 && stats_.nodes > budget_) {
      stats_.budget_hit = true;
      return false;
    }
    return true;
  }

  bool halted() const { return stats_.budget_hit || stats_.stopped; }

  void place(std::size_t pos) {
    if (pos == plan_.steps.size()) {
      if (!visit_(work_)) stats_.stopped = true;
      return;
    }
    const auto& st = plan_.steps[pos];
    const int x = st.x;
    const ObjId fixed = preset_.at(x);
    auto try_object = [&](ObjId o) {
      if (!tick()) return;
      work_.set_object(x, o);
      work_.set_arrow(x, x, c_.identity(o));
      down(pos, 0);
    };
    if (fixed != kNone) {
      try_object(fixed);
    } else {
      const auto& cands = (up_to_iso_ && st.free) ? reps_ : all_;
      for (ObjId o : cands) {
        try_object(o);
        if (halted()) break;
      }
    }
    work_.set_object(x, fixed);
    work_.set_arrow(x, x, preset_.arrow(x, x));
  }

  void down(std::size_t pos, std::size_t i) {
    const auto& st = plan_.steps[pos];
    if (i == st.down.size()) {
      up(pos, 0);
      return;
    }
    const int x = st.x;
    const int y = st.down[i];
    const MorId fixed = preset_.arrow(y, x);
    const auto& der = st.down_derivers[i];
    if (!der.empty()) {
      const MorId v = c_.compose(work_.arrow(der[0], x), work_.arrow(y, der[0]));
      for (std::size_t j = 1; j < der.size(); ++j)
        if (c_.compose(work_.arrow(der[j], x), work_.arrow(y, der[j])) != v) return;
      if (fixed != kNone && fixed != v) return;
      if (!tick()) return;
      work_.set_arrow(y, x, v);
      down(pos, i + 1);
      work_.set_arrow(y, x, fixed);
      return;
    }
    const ObjId a = work_.at(y), b = work_.at(x);
    if (fixed != kNone) {
      if (c_.dom(fixed) != a || c_.cod(fixed) != b) return;
      if (!tick()) return;
      down(pos, i + 1);
      return;
    }
    for (MorId f : c_.hom(a, b)) {
      if (!tick()) break;
      work_.set_arrow(y, x, f);
      down(pos, i + 1);
      if (halted()) break;
    }
    work_.set_arrow(y, x, kNone);
  }

  bool cross_ok(const SearchPlan::Step& st, int z) const {
    const int x = st.x;
    const MorId xz = work_.arrow(x, z);
    for (int y : st.max_down)
      if (c_.compose(xz, work_.arrow(y, x)) != work_.arrow(y, z)) return false;
    return true;
  }

  void up(std::size_t pos, std::size_t i) {
    const auto& st = plan_.steps[pos];
    if (i == st.up.size()) {
      if (up_to_iso_ && st.free && !orbit_minimal(st)) return;
      place(pos + 1);
      return;
    }
    const int x = st.x;
    const int z = st.up[i];
    const MorId fixed = preset_.arrow(x, z);
    const auto& der = st.up_derivers[i];
    if (!der.empty()) {
      const MorId v = c_.compose(work_.arrow(der[0], z), work_.arrow(x, der[0]));
      for (std::size_t j = 1; j < der.size(); ++j)
        if (c_.compose(work_.arrow(der[j], z), work_.arrow(x, der[j])) != v) return;
      if (fixed != kNone && fixed != v) return;
      if (!tick()) return;
      work_.set_arrow(x, z, v);
      up(pos, i + 1);
      work_.set_arrow(x, z, fixed);
      return;
    }
    const ObjId a = work_.at(x), b = work_.at(z);
    if (fixed != kNone) {
      if (c_.dom(fixed) != a || c_.cod(fixed) != b) return;
      if (!cross_ok(st, z)) return;
      if (!tick()) return;
      up(pos, i + 1);
      return;
    }
    for (MorId f : c_.hom(a, b)) {
      if (!tick()) break;
      work_.set_arrow(x, z, f);
      if (cross_ok(st, z)) up(pos, i + 1);
      if (halted()) break;
    }
    work_.set_arrow(x, z, kNone);
  }

  // The tuple of connecting arrows must be lexicographically least among
  // its images under the automorphisms of the object at x.
  bool orbit_minimal(const SearchPlan::Step& st) const {
    const int x = st.x;
    for (const auto& [s, sinv] : auts_[work_.at(x)]) {
      int cmp = 0;
      for (int y : st.down) {
        const MorId f = work_.arrow(y, x);
        const MorId g = c_.compose(s, f);
        if (g != f) {
          cmp = g < f ? -1 : 1;
          break;
        }
      }
      if (cmp == 0)
        for (int z : st.up) {
          const MorId f = work_.arrow(x, z);
          const MorId g = c_.compose(f, sinv);
          if (g != f) {
            cmp = g < f ? -1 : 1;
            break;
          }
        }
      if (cmp < 0) return false;
    }
    return true;
  }

  const SearchPlan& plan_;
  const FinCategory& c_;
  Diagram work_;
  const Diagram& preset_;
  bool up_to_iso_;
  std::uint64_t budget_;
  const std::function<bool(const Diagram&)>& visit_;
  std::vector<ObjId> reps_, all_;
  std::vector<std::vector<std::pair<MorId, MorId>>> auts_;
  SearchStats stats_;
};

}  // namespace

SearchStats run_search(const SearchPlan& plan, const Diagram& partial, bool up_to_iso, std::uint64_t budget,
                       const std::function<bool(const Diagram&)>& visit) {
  Runner r(plan, partial, up_to_iso, budget, visit);
  return r.run();
}

}  // namespace kanforge::detail
