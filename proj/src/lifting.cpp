#include "kanforge/lifting.hpp"

#include "search.hpp"

namespace kanforge {

std::string to_string(LiftStatus s) {
  switch (s) {
    case LiftStatus::Filled: return "filled";
    case LiftStatus::Exhausted: return "exhausted";
    case LiftStatus::Budget: return "budget";
  }
  return "?";
}

LiftingProblem make_lifting_problem(const Diagram& on_sub, const PosetPtr& domain, const std::vector<int>& inclusion) {
  const FinPoset& a = *on_sub.shape();
  if (static_cast<int>(inclusion.size()) != a.size() || !is_order_embedding(a, *domain, inclusion))
    throw InputError("inclusion is not an order embedding");
  LiftingProblem p{on_sub.target(), domain, std::vector<char>(domain->size(), 0), Diagram(domain, on_sub.target())};
  for (int x = 0; x < a.size(); ++x) {
    p.in_sub[inclusion[x]] = 1;
    p.partial.set_object(inclusion[x], on_sub.at(x));
    p.partial.set_arrow(inclusion[x], inclusion[x], on_sub.arrow(x, x));
    for (int y : a.strictly_above(x)) p.partial.set_arrow(inclusion[x], inclusion[y], on_sub.arrow(x, y));
  }
  return p;
}

void check_problem(const LiftingProblem& p) {
  if (!p.target || !p.domain) throw InputError("lifting problem is missing its category or poset");
  if (p.partial.shape() != p.domain || p.partial.target() != p.target)
    throw InputError("partial functor does not live on the problem's poset");
  if (static_cast<int>(p.in_sub.size()) != p.domain->size()) throw InputError("subposet flags have the wrong size");
  const FinPoset& b = *p.domain;
  for (int x = 0; x < b.size(); ++x) {
    if (p.in_sub[x] != p.partial.object_defined(x))
      throw InputError("partial functor is not defined exactly on the subposet at " + b.name(x));
    for (int y : b.strictly_above(x)) {
      const bool inside = p.in_sub[x] && p.in_sub[y];
      if (inside != (p.partial.arrow(x, y) != kNone))
        throw InputError("partial functor arrow mismatch at " + b.name(x) + " -> " + b.name(y));
    }
  }
  if (auto v = p.partial.violation()) throw InputError("partial functor is not a functor: " + *v);
}

namespace {

void assert_sound(const Diagram& partial, const Diagram& filler) {
  if (!filler.complete()) throw Error("search returned an incomplete filler");
  if (auto v = filler.violation()) throw Error("search returned a non-functor: " + *v);
  const FinPoset& p = *partial.shape();
  for (int x = 0; x < p.size(); ++x) {
    if (partial.at(x) != kNone && partial.at(x) != filler.at(x))
      throw Error("filler does not restrict to the input at " + p.name(x));
    for (int y : p.strictly_above(x))
      if (partial.arrow(x, y) != kNone && partial.arrow(x, y) != filler.arrow(x, y))
        throw Error("filler does not restrict to the input at " + p.name(x) + " -> " + p.name(y));
  }
}

}  // namespace

LiftReport extend_diagram(const Diagram& partial, const SearchOptions& opts) {
  if (auto v = partial.violation()) throw InputError("partial diagram is inconsistent: " + *v);
  const auto start = std::chrono::steady_clock::now();
  auto plan = detail::make_plan(partial, detail::Order::Linear);
  LiftReport report;
  auto stats = detail::run_search(plan, partial, opts.up_to_iso, opts.budget, [&](const Diagram& d) {
    report.filler = d;
    return false;
  });
  report.nodes = stats.nodes;
  if (report.filler) {
    assert_sound(partial, *report.filler);
    report.status = LiftStatus::Filled;
  } else {
    report.status = stats.budget_hit ? LiftStatus::Budget : LiftStatus::Exhausted;
  }
  report.elapsed = std::chrono::steady_clock::now() - start;
  return report;
}

LiftReport extend_functor(const LiftingProblem& p, const SearchOptions& opts) {
  check_problem(p);
  return extend_diagram(p.partial, opts);
}

EnumResult enumerate_diagrams(const PosetPtr& shape, const CategoryPtr& target, const EnumOptions& opts,
                              const std::function<bool(const Diagram&)>& visit) {
  Diagram empty(shape, target);
  auto plan = detail::make_plan(empty, detail::Order::Connected);
  EnumResult out;
  detail::run_search(plan, empty, opts.up_to_iso, 0, [&](const Diagram& d) {
    if (out.count == opts.cap) {
      out.truncated = true;
      return false;
    }
    ++out.count;
    if (!visit(d)) {
      out.stopped = true;
      return false;
    }
    return true;
  });
  return out;
}

EnumResult enumerate_functors(const CategoryPtr& source, const CategoryPtr& target, std::uint64_t cap,
                              const std::function<bool(const Functor&)>& visit) {
  const FinCategory& s = *source;
  const FinCategory& t = *target;
  const auto nso = static_cast<ObjId>(s.num_objects());
  const auto nsm = static_cast<MorId>(s.num_morphisms());
  Functor f{source, target, std::vector<ObjId>(nso, kNone), std::vector<MorId>(nsm, kNone)};
  EnumResult out;
  bool halt = false;
  std::function<void(MorId)> assign_mor = [&](MorId m) {
    if (halt) return;
    if (m == nsm) {
      if (out.count == cap) {
        out.truncated = true;
        halt = true;
        return;
      }
      ++out.count;
      if (!visit(f)) {
        out.stopped = true;
        halt = true;
      }
      return;
    }
    auto consistent = [&]() {
      for (MorId a = 0; a <= m; ++a)
        for (MorId b = 0; b <= m; ++b) {
          if (s.cod(a) != s.dom(b)) continue;
          const MorId ba = s.compose(b, a);
          if (ba > m || (a != m && b != m && ba != m)) continue;
          if (f.mor[ba] != t.compose(f.mor[b], f.mor[a])) return false;
        }
      return true;
    };
    if (s.is_identity(m)) {
      f.mor[m] = t.identity(f.obj[s.dom(m)]);
      if (consistent()) assign_mor(m + 1);
    } else {
      for (MorId g : t.hom(f.obj[s.dom(m)], f.obj[s.cod(m)])) {
        f.mor[m] = g;
        if (consistent()) assign_mor(m + 1);
        if (halt) break;
      }
    }
    f.mor[m] = kNone;
  };
  std::function<void(ObjId)> assign_obj = [&](ObjId x) {
    if (halt) return;
    if (x == nso) {
      assign_mor(0);
      return;
    }
    for (ObjId o = 0; o < static_cast<ObjId>(t.num_objects()); ++o) {
      f.obj[x] = o;
      assign_obj(x + 1);
      if (halt) break;
    }
    f.obj[x] = kNone;
  };
  assign_obj(0);
  return out;
}

}  // namespace kanforge
