#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstring>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "kanforge/extension.hpp"
#include "kanforge/fibrancy.hpp"
#include "kanforge/fractions.hpp"
#include "kanforge/limits.hpp"
#include "kanforge/pmc.hpp"
#include "kanforge/report.hpp"
#include "kanforge/sdposet.hpp"
#include "kanforge/zoo.hpp"

using namespace kanforge;

namespace {

constexpr std::uint64_t kA2FillerCap = 10'000;
constexpr std::uint64_t kA4BoundaryCap = 1'000;
// Large enough that no level-1 horn of the A2 corpus is truncated.
constexpr std::uint64_t kLevel1BoundaryCap = 1'000'000'000;

FibrancyOptions level1_options() {
  FibrancyOptions fo;
  fo.boundary_cap = kLevel1BoundaryCap;
  fo.workers = std::max(1u, std::thread::hardware_concurrency());
  return fo;
}

// Level-1 verdicts by category name, shared by A2 and A9.
std::map<std::string, Verdict> level1_verdicts;

Verdict level1_verdict(const CategoryPtr& c) {
  auto it = level1_verdicts.find(c->name());
  if (it != level1_verdicts.end()) return it->second;
  return level1_verdicts[c->name()] = fibrancy_report(c, 1, 3, level1_options()).verdict;
}

struct Outcome {
  bool pass = true;
  std::string detail;
  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

std::vector<CategoryPtr> shared(const std::vector<FinCategory>& cs) {
  std::vector<CategoryPtr> out;
  for (const auto& c : cs) out.push_back(share(c));
  return out;
}

std::vector<CategoryPtr> a2_corpus() {
  auto out = shared(zoo::enumerate_monoids(3));
  for (auto& p : shared(zoo::enumerate_posets(4))) out.push_back(p);
  return out;
}

std::vector<CategoryPtr> extended_corpus() {
  auto out = a2_corpus();
  for (const auto& c : {zoo::cyclic_group(2), zoo::cyclic_group(3), zoo::walking_iso(), zoo::idempotent_monoid(),
                        zoo::parallel_pair(), zoo::boolean_lattice(2), zoo::discrete(2), zoo::fi_skeleton(2)})
    out.push_back(share(c));
  return out;
}

Outcome a1() {
  Outcome o;
  auto corpus = shared(zoo::enumerate_posets(4));
  for (const auto& c : {zoo::cyclic_group(2), zoo::cyclic_group(3), zoo::walking_iso(), zoo::idempotent_monoid()})
    corpus.push_back(share(c));
  for (const auto& c : corpus) {
    const auto rep = fibrancy_report(c, 0, 3);
    if (rep.verdict == Verdict::Inconclusive) o.fail(c->name() + ": inconclusive");
    if ((rep.verdict == Verdict::Pass) != is_groupoid(*c).holds) o.fail(c->name() + ": level 0 disagrees with groupoid");
  }
  o.detail = o.pass ? std::to_string(corpus.size()) + " categories" : o.detail;
  return o;
}

Outcome a2() {
  Outcome o;
  const auto corpus = a2_corpus();
  std::uint64_t fillers = 0;
  for (const auto& c : corpus) {
    const auto row = compare_cf_fibrancy(c, 3, level1_options(), kA2FillerCap);
    level1_verdicts[c->name()] = row.fibrant;
    fillers += row.fillers_checked;
    if (!row.agrees()) o.fail(c->name() + ": CF and level-1 fibrancy disagree");
    if (row.filler_error) o.fail(c->name() + ": " + *row.filler_error);
  }
  if (o.pass) o.detail = std::to_string(corpus.size()) + " categories, " + std::to_string(fillers) + " fillers";
  return o;
}

Outcome a3() {
  Outcome o;
  auto c = share(zoo::fi_skeleton(3));
  const CfWitness w = check_cf(c);
  if (!w.cf1_holds()) o.fail("CF1 fails");
  if (w.cf2_holds()) o.fail("CF2 holds");
  const MorId id = *c->find_morphism("3>3:012"), tau = *c->find_morphism("3>3:021"), s = *c->find_morphism("1>3:0");
  if (c->compose(id, s) != c->compose(tau, s)) o.fail("triple is not equalized");
  if (cf2_equalizer(*c, id, tau)) o.fail("triple is coequalized");
  const Diagram h = cf2_horn(c, id, tau, s);
  const SdPoset delta = sd_delta(3, 1), horn = sd_horn(3, 0, 1);
  if (extend_functor(make_lifting_problem(h, delta.poset, horn.inclusion)).status != LiftStatus::Exhausted)
    o.fail("triple horn not exhausted");
  const auto rep = fibrancy_report(c, 1, 3);
  if (rep.verdict != Verdict::Fail) o.fail("level-1 fibrancy does not fail");
  const auto& last = rep.horns.back();
  if (last.n != 3 || last.k != 0 || last.verdict != HornVerdict::Failed)
    o.fail("first failure at (" + std::to_string(last.n) + "," + std::to_string(last.k) + ") " +
           to_string(last.verdict));
  if (!has_all_pullbacks(*c).holds) o.fail("missing pullbacks");
  if (pushout(*c, *c->find_morphism("1>2:0"), *c->find_morphism("1>2:1"))) o.fail("span has a pushout");
  return o;
}

Outcome a4(bool with_n3) {
  Outcome o;
  const std::vector<RelStructure> pmcs = {pmc_from_pullbacks(share(zoo::fi_skeleton(3))),
                                          pmc_from_pushouts(share(zoo::boolean_lattice(3)))};
  std::uint64_t total = 0;
  for (const auto& r : pmcs) {
    const std::string name = r.ambient->name();
    FibrancyOptions fo;
    fo.boundary_cap = kA4BoundaryCap;
    const auto rep = fibrancy_report(r.ambient, 2, 2, fo);
    for (const auto& h : rep.horns)
      if (h.verdict == HornVerdict::Failed || h.verdict == HornVerdict::Budget)
        o.fail(name + ": level-2 horn (" + std::to_string(h.n) + "," + std::to_string(h.k) + ") " +
               to_string(h.verdict));
    const auto run = run_main_theorem(r, 2, kA4BoundaryCap, SearchOptions{});
    if (run.error) o.fail(name + ": " + *run.error);
    for (const auto& h : run.horns) {
      total += h.boundaries;
      if (h.error) o.fail(name + ": " + *h.error);
      if (h.constructed != h.boundaries) o.fail(name + ": constructive filler missed a boundary");
      if (h.generic_exhausted) o.fail(name + ": generic solver found no filler where one was constructed");
    }
    if (with_n3) {
      const auto run3 = run_main_theorem(r, 3, kA4BoundaryCap, SearchOptions{}, 3);
      for (const auto& h : run3.horns)
        if (h.error || h.constructed != h.boundaries || h.generic_exhausted)
          o.fail(name + ": n = 3 run failed at (" + std::to_string(h.n) + "," + std::to_string(h.k) + ")");
    }
  }
  if (o.pass) o.detail = std::to_string(total) + " boundaries";
  return o;
}

Outcome a5() {
  Outcome o;
  auto c = share(zoo::idempotent_monoid());
  const MorId a = *c->find_morphism("a");
  if (!check_cf(c).holds()) o.fail("CF fails");
  if (fibrancy_report(c, 1, 3).verdict != Verdict::Pass) o.fail("level-1 fibrancy does not pass");
  if (pushout(*c, a, a)) o.fail("pushout(a,a) exists");
  const auto res = pmc_search(c, all_morphisms(*c));
  if (res.found) o.fail("a structure was found");
  if (res.certificate.size() != res.candidates || res.candidates != 4) o.fail("certificate incomplete");
  for (const auto& f : res.certificate) {
    const bool a_cof = !f.cof.empty(), a_fib = !f.fib.empty();
    if (f.reason.holds) o.fail("certificate entry holds");
    if (a_cof && f.reason.axiom != "cofibration closure") o.fail("C = {1,a} rejected for " + f.reason.axiom);
    if (!a_cof && a_fib && f.reason.axiom != "fibration closure") o.fail("F = {1,a} rejected for " + f.reason.axiom);
    if (!a_cof && !a_fib && f.reason.axiom != "factorization") o.fail("identity classes rejected for " + f.reason.axiom);
  }
  return o;
}

Outcome a6() {
  Outcome o;
  auto corpus = zoo::enumerate_posets(4);
  corpus.push_back(zoo::boolean_lattice(3));
  std::uint64_t checked = 0;
  for (const auto& c : corpus) {
    if (!has_all_pushouts(c).holds) continue;
    const auto m = static_cast<MorId>(c.num_morphisms());
    for (MorId f = 0; f < m; ++f)
      for (MorId g = 0; g < m; ++g) {
        if (c.dom(f) != c.dom(g) || c.cod(f) != c.cod(g)) continue;
        for (MorId al = 0; al < m; ++al) {
          if (c.cod(al) != c.dom(f) || c.compose(f, al) != c.compose(g, al)) continue;
          try {
            const Coequalizer q = coequalizer_from_pushouts(c, f, g, al);
            if (!is_coequalizer(c, f, g, q.phi)) o.fail(c.name() + ": not a coequalizer");
          } catch (const Error& e) {
            o.fail(c.name() + ": " + e.what());
          }
          ++checked;
        }
      }
  }
  if (o.pass) o.detail = std::to_string(checked) + " equalized pairs";
  return o;
}

Outcome a7() {
  Outcome o;
  for (int n = 1; n <= 4; ++n) {
    const std::string at = "n = " + std::to_string(n) + ": ";
    const SdPoset d = sd_delta(n, 2);
    const SdPoset h = sd_horn(n, n, 2);
    const KPoset kh = k_cone(h.poset);
    const auto r = retraction(n, d);
    const auto p = p_embedding(n, h, kh, d);
    if (!is_monotone(*d.poset, *d.poset, r)) o.fail(at + "retraction not monotone");
    if (!is_order_embedding(*kh.poset, *d.poset, p)) o.fail(at + "embedding not an order embedding");
    std::set<int> image(p.begin(), p.end());
    for (int x = 0; x < d.size(); ++x) {
      if ((image.count(x) > 0) != in_p(n, d.chains[x])) o.fail(at + "embedding image is not P");
      if (image.count(x) && r[x] != x) o.fail(at + "retraction moves a point of P");
      if (!image.count(r[x])) o.fail(at + "retraction leaves P");
    }
    const std::set<int> target(h.inclusion.begin(), h.inclusion.end());
    for (int i = 0; i <= n; ++i) {
      const auto theta = horn_automorphism(n, i, d);
      const SdPoset src = sd_horn(n, i, 2);
      std::set<int> moved;
      for (int x : src.inclusion) moved.insert(theta[x]);
      if (moved != target) o.fail(at + "horn automorphism " + std::to_string(i) + " misses the target horn");
      if (!is_order_embedding(*d.poset, *d.poset, theta)) o.fail(at + "horn automorphism not an order isomorphism");
    }
  }
  // Independent count: chains of nonempty subsets of a k-set, by inclusion-exclusion over the top set.
  auto chains = [](int k) {
    std::vector<std::uint64_t> f(k + 1, 0), binom(k + 1, 0);
    for (int j = 1; j <= k; ++j) {
      std::uint64_t sum = 1, b = 1;
      for (int i = 1; i < j; ++i) {
        b = b * (j - i + 1) / i;
        sum += b * f[i];
      }
      f[j] = sum;
    }
    std::uint64_t total = 0, b = 1;
    for (int j = 1; j <= k; ++j) {
      b = b * (k - j + 1) / j;
      total += b * f[j];
    }
    return total;
  };
  if (sd_delta(2, 2).size() != 25 || chains(3) != 25) o.fail("|sd(2,2)| != 25");
  if (sd_delta(3, 2).size() != 149 || chains(4) != 149) o.fail("|sd(3,2)| != 149");
  return o;
}

Outcome a8() {
  Outcome o;
  int filtered = 0;
  for (const auto& c : extended_corpus()) {
    if (!is_filtered(*c).holds) continue;
    ++filtered;
    if (!check_cf(c).holds()) o.fail(c->name() + ": filtered without CF");
  }
  if (o.pass) o.detail = std::to_string(filtered) + " filtered categories";
  return o;
}

Outcome a9() {
  Outcome o;
  int fibrant = 0;
  for (const auto& c : extended_corpus()) {
    if (level1_verdict(c) != Verdict::Pass) continue;
    ++fibrant;
    const auto e1 = cf1_from_horn(c);
    const auto e2 = cf2_from_horn(c);
    if (e1.status != LiftStatus::Filled || !e1.witness.cf1_holds()) o.fail(c->name() + ": CF1 extraction failed");
    if (e2.status != LiftStatus::Filled || !e2.witness.cf2_holds()) o.fail(c->name() + ": CF2 extraction failed");
    try {
      verify_witness(e1.witness);
      verify_witness(e2.witness);
    } catch (const Error& e) {
      o.fail(c->name() + ": " + e.what());
    }
  }
  if (o.pass) o.detail = std::to_string(fibrant) + " fibrant categories";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  bool with_n3 = false;
  std::set<std::string> only;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--n3") == 0)
      with_n3 = true;
    else
      only.insert(argv[i]);
  }
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"A1", a1}, {"A2", a2}, {"A3", a3}, {"A4", [&] { return a4(with_n3); }},
      {"A5", a5}, {"A6", a6}, {"A7", a7}, {"A8", a8}, {"A9", a9}};
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    if (!only.empty() && !only.count(name)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s %s (%.1fs)%s%s\n", name.c_str(), o.pass ? "PASS" : "FAIL", secs, o.detail.empty() ? "" : " ",
                o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  return failed ? 1 : 0;
}
