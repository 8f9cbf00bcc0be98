// kan-forge: command-line front end.
// Exit codes: 0 pass/filled, 1 definitive failure, 2 inconclusive, 3 input error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "kanforge/extension.hpp"
#include "kanforge/fibrancy.hpp"
#include "kanforge/fractions.hpp"
#include "kanforge/io.hpp"
#include "kanforge/lifting.hpp"
#include "kanforge/pmc.hpp"
#include "kanforge/report.hpp"
#include "kanforge/sdposet.hpp"
#include "kanforge/zoo.hpp"

using namespace kanforge;

namespace {

enum Exit { kPass = 0, kFail = 1, kInconclusive = 2, kInput = 3 };

struct Output {
  std::string format = "summary";
  std::string report;

  // JSON goes to stdout in json mode, and to the report file if asked.
  void emit(const Json& j, const std::string& summary) const {
    if (!report.empty()) save_json(report, j);
    if (format == "json") std::cout << j.dump(2) << "\n";
    else std::cout << summary;
  }
};

unsigned workers_from_env() {
  if (const char* w = std::getenv("KANFORGE_WORKERS")) {
    const int n = std::atoi(w);
    if (n >= 1) return static_cast<unsigned>(n);
  }
  return 1;
}

CategoryPtr load_category(const std::string& path) { return share(category_from_json(load_json(path))); }

int exit_of(Verdict v) {
  switch (v) {
    case Verdict::Pass: return kPass;
    case Verdict::Fail: return kFail;
    case Verdict::Inconclusive: return kInconclusive;
  }
  return kInconclusive;
}

std::string horn_line(const HornResult& h) {
  return "  (" + std::to_string(h.n) + "," + std::to_string(h.k) + ") " + to_string(h.verdict) + ", " +
         std::to_string(h.boundaries) + " boundaries\n";
}

SdPoset horn_shape(int level, int n, int k) {
  if (level < 1) throw InputError("boundary files need level >= 1");
  return sd_horn(n, k, level);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fibrancy workbench for finite categories"};
  app.require_subcommand(1);
  Output out;
  app.add_option("--format", out.format, "json|summary|dot")->check(CLI::IsMember({"json", "summary", "dot"}));
  app.add_option("--report", out.report, "write the full JSON report to this file");
  std::uint64_t budget = kDefaultBudget, cap = kDefaultBoundaryCap;
  app.add_option("--budget", budget, "search nodes per lifting problem");
  app.add_option("--cap", cap, "boundaries enumerated per horn");

  // check-kan
  int level = 1, max_dim = 3;
  std::string cat_path;
  auto* kan = app.add_subcommand("check-kan", "fibrancy report against subdivided horns");
  kan->add_option("--level", level)->check(CLI::Range(0, 6));
  kan->add_option("--max-dim", max_dim)->check(CLI::Range(1, 6));
  kan->add_option("category", cat_path)->required();

  auto* cf = app.add_subcommand("check-cf", "left calculus of fractions conditions");
  cf->add_option("category", cat_path)->required();

  std::string relcat_path;
  auto* pmc = app.add_subcommand("check-pmc", "partial model category axioms");
  pmc->add_option("relcat", relcat_path)->required();

  std::vector<std::string> weq_names;
  std::size_t guard = kDefaultPmcGuard;
  auto* spmc = app.add_subcommand("search-pmc", "search for cofibrations, fibrations and a factorization");
  spmc->add_option("--weq", weq_names, "weak equivalences (default: all morphisms)");
  spmc->add_option("--guard", guard, "largest ambient category searched");
  spmc->add_option("category", cat_path)->required();

  int n = 2, k = 0;
  std::string boundary_path;
  auto* fill = app.add_subcommand("fill-horn", "fill a level-1 horn");
  fill->add_option("--n", n)->required();
  fill->add_option("--k", k)->required();
  fill->add_option("--boundary", boundary_path)->required();
  fill->add_option("category", cat_path)->required();

  int n_cap = kDefaultExtensionCap;
  auto* fill2 = app.add_subcommand("fill-horn2", "constructive level-2 filler from a partial model category");
  fill2->add_option("--n", n)->required();
  fill2->add_option("--k", k)->required();
  fill2->add_option("--relcat", relcat_path)->required();
  fill2->add_option("--boundary", boundary_path)->required();
  fill2->add_option("--n-cap", n_cap, "largest n allowed")->check(CLI::Range(1, 3));

  std::string zoo_name, shape_kind, out_path, pmc_kind;
  int param = -1, m = 2;
  auto* gen = app.add_subcommand("gen", "write a zoo category or a subdivision shape");
  gen->add_option("--zoo", zoo_name, "idempotent, fi, parallel_pair, boolean_lattice, chain, cyclic, walking_iso, discrete");
  gen->add_option("--param", param);
  gen->add_option("--pmc", pmc_kind, "with --zoo: write the structure from pullbacks or pushouts")
      ->check(CLI::IsMember({"pullbacks", "pushouts"}));
  gen->add_option("--shape", shape_kind, "sd-delta|sd-horn|k-cone")
      ->check(CLI::IsMember({"sd-delta", "sd-horn", "k-cone"}));
  gen->add_option("--n", n);
  gen->add_option("--k", k);
  gen->add_option("--m", m);
  gen->add_option("-o,--out", out_path);

  int monoids = 3, posets = 4;
  std::string dir = "corpus";
  auto* corpus = app.add_subcommand("corpus", "write the enumerated monoids and posets");
  corpus->add_option("--monoids", monoids)->check(CLI::Range(1, 4));
  corpus->add_option("--posets", posets)->check(CLI::Range(1, 5));
  corpus->add_option("-o,--out", dir);

  std::uint64_t filler_cap = 10'000;
  auto* t21 = app.add_subcommand("verify-theorem21", "CF against level-1 fibrancy over the corpus");
  t21->add_option("--monoids", monoids)->check(CLI::Range(1, 4));
  t21->add_option("--posets", posets)->check(CLI::Range(1, 5));
  t21->add_option("--max-dim", max_dim)->check(CLI::Range(1, 4));
  t21->add_option("--filler-cap", filler_cap);

  int n_max = 2;
  std::uint64_t main_cap = 1000;
  bool no_compare = false;
  auto* vmain = app.add_subcommand("verify-main", "constructive level-2 fillers against the generic solver");
  vmain->add_option("--relcat", relcat_path, "default: the two built-in structures");
  vmain->add_option("--n-max", n_max)->check(CLI::Range(1, 3));
  vmain->add_option("--boundary-cap", main_cap);
  vmain->add_flag("--no-compare", no_compare, "skip the generic solver");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kInput;
  }

  FibrancyOptions fopts;
  fopts.budget = budget;
  fopts.boundary_cap = cap;
  fopts.workers = workers_from_env();

  try {
    if (*kan) {
      const auto c = load_category(cat_path);
      const auto rep = fibrancy_report(c, level, max_dim, fopts);
      std::string s = c->name() + ": level " + std::to_string(level) + " up to " + std::to_string(max_dim) +
                      ": " + to_string(rep.verdict) + "\n";
      for (const auto& h : rep.horns) s += horn_line(h);
      out.emit(fibrancy_to_json(rep, *c), s);
      return exit_of(rep.verdict);
    }
    if (*cf) {
      const auto c = load_category(cat_path);
      const auto w = check_cf(c);
      std::string s = c->name() + ": CF1 " + (w.cf1_holds() ? "pass" : "fail") + ", CF2 " +
                      (w.cf2_holds() ? "pass" : "fail") + "\n";
      if (w.cf1_failure)
        s += "  span (" + c->morphism_name(w.cf1_failure->first) + ", " + c->morphism_name(w.cf1_failure->second) +
             ") has no commuting square\n";
      if (w.cf2_failure) {
        const auto& t = *w.cf2_failure;
        s += "  (" + c->morphism_name(t[0]) + ", " + c->morphism_name(t[1]) + ", " + c->morphism_name(t[2]) +
             ") is not equalized by postcomposition\n";
      }
      out.emit(cf_to_json(w), s);
      return w.holds() ? kPass : kFail;
    }
    if (*pmc) {
      const auto r = relcat_from_json(load_json(relcat_path));
      const auto chk = check_pmc(r);
      Json j{{"schema", kSchemaVersion}, {"category", r.ambient->name()}, {"pmc", axiom_to_json(chk, *r.ambient)}};
      out.emit(j, r.ambient->name() + ": " + (chk.holds ? "partial model category\n" : chk.axiom + " fails: " + chk.detail + "\n"));
      return chk.holds ? kPass : kFail;
    }
    if (*spmc) {
      const auto c = load_category(cat_path);
      std::vector<char> weq = all_morphisms(*c);
      if (!weq_names.empty()) {
        weq = identities_only(*c);
        for (const auto& name : weq_names) {
          auto f = c->find_morphism(name);
          if (!f) throw InputError("--weq: unknown morphism \"" + name + "\"");
          weq[*f] = 1;
        }
      }
      const auto res = pmc_search(c, weq, guard);
      std::string s = c->name() + ": " + std::to_string(res.candidates) + " candidates, " +
                      (res.found ? "structure found\n" : "no structure\n");
      out.emit(pmc_search_to_json(res, *c), s);
      return res.found ? kPass : kFail;
    }
    if (*fill) {
      const auto c = load_category(cat_path);
      const SdPoset horn = horn_shape(1, n, k);
      const Diagram b = diagram_from_json(load_json(boundary_path), horn.poset, c);
      const auto w = check_cf(c);
      Json j{{"schema", kSchemaVersion}, {"n", n}, {"k", k}};
      if (w.holds()) {
        j["method"] = "fractions";
        j["filler"] = diagram_to_json(construct_horn_filler(w, n, k, b));
        out.emit(j, "filled by the calculus of fractions\n");
        return kPass;
      }
      const SdPoset delta = sd_delta(n, 1);
      const auto rep = extend_functor(make_lifting_problem(b, delta.poset, horn.inclusion), SearchOptions{budget, true});
      j["method"] = "search";
      j["status"] = to_string(rep.status);
      j["nodes"] = rep.nodes;
      if (rep.filler) j["filler"] = diagram_to_json(*rep.filler);
      out.emit(j, "search: " + to_string(rep.status) + "\n");
      return rep.status == LiftStatus::Filled ? kPass : rep.status == LiftStatus::Exhausted ? kFail : kInconclusive;
    }
    if (*fill2) {
      const auto r = relcat_from_json(load_json(relcat_path));
      const SdPoset horn = horn_shape(2, n, k);
      const Diagram b = diagram_from_json(load_json(boundary_path), horn.poset, r.ambient);
      const auto fam = build_phi_psi(r, n, n_cap);
      Transcript log;
      Json j{{"schema", kSchemaVersion}, {"n", n}, {"k", k}};
      try {
        const Diagram f = constructive_filler(fam, n, k, b, &log);
        j["filler"] = diagram_to_json(f);
        j["transcript"] = log;
        std::string s;
        for (const auto& line : log) s += line + "\n";
        out.emit(j, s);
        return kPass;
      } catch (const ExtensionError& e) {
        j["error"] = e.what();
        j["transcript"] = log;
        out.emit(j, std::string("construction failed: ") + e.what() + "\n");
        return kFail;
      }
    }
    if (*gen) {
      if (zoo_name.empty() == shape_kind.empty()) throw InputError("gen: give exactly one of --zoo and --shape");
      std::string text;
      if (!zoo_name.empty()) {
        const FinCategory c = zoo::by_name(zoo_name, param);
        if (!pmc_kind.empty()) {
          auto shared_c = share(c);
          const auto r = pmc_kind == "pullbacks" ? pmc_from_pullbacks(shared_c) : pmc_from_pushouts(shared_c);
          text = relcat_to_json(r).dump(2) + "\n";
        } else if (out.format == "dot") {
          auto p = category_as_poset(c);
          if (!p) throw InputError("gen: DOT output needs a poset");
          text = poset_to_dot(*p, c.name());
        } else {
          text = category_to_json(c).dump(2) + "\n";
        }
      } else {
        PosetPtr p;
        std::string name;
        if (shape_kind == "sd-delta") {
          p = sd_delta(n, m).poset;
          name = "sd_delta";
        } else if (shape_kind == "sd-horn") {
          p = sd_horn(n, k, m).poset;
          name = "sd_horn";
        } else {
          p = k_cone(sd_horn(n, n, m).poset).poset;
          name = "k_cone";
        }
        if (out.format != "dot") {
          Json j{{"schema", kSchemaVersion}, {"name", name}, {"elements", Json::array()}, {"covers", Json::array()}};
          for (int x = 0; x < p->size(); ++x) j["elements"].push_back(p->name(x));
          for (auto [x, y] : p->covers()) j["covers"].push_back({p->name(x), p->name(y)});
          text = j.dump(2) + "\n";
        } else {
          text = poset_to_dot(*p, name);
        }
      }
      if (out_path.empty()) std::cout << text;
      else std::ofstream(out_path) << text;
      return kPass;
    }
    if (*corpus) {
      std::filesystem::create_directories(dir);
      int count = 0;
      for (const auto& c : zoo::enumerate_monoids(monoids)) {
        save_json(dir + "/monoid_" + std::to_string(count++) + ".json", category_to_json(c));
      }
      const int nm = count;
      for (const auto& c : zoo::enumerate_posets(posets)) {
        save_json(dir + "/poset_" + std::to_string(count++ - nm) + ".json", category_to_json(c));
      }
      std::cout << nm << " monoids, " << count - nm << " posets written to " << dir << "\n";
      return kPass;
    }
    if (*t21) {
      std::vector<CategoryPtr> cats;
      for (auto& c : zoo::enumerate_monoids(monoids)) cats.push_back(share(std::move(c)));
      for (auto& c : zoo::enumerate_posets(posets)) cats.push_back(share(std::move(c)));
      Json rows = Json::array();
      std::string s;
      int code = kPass;
      for (const auto& c : cats) {
        const auto row = compare_cf_fibrancy(c, max_dim, fopts, filler_cap);
        rows.push_back(cf_fibrancy_to_json(row));
        s += row.name + ": CF " + (row.cf ? "pass" : "fail") + ", fibrancy " + to_string(row.fibrant) +
             (row.ok() ? "" : "  MISMATCH") + "\n";
        if (row.fibrant == Verdict::Inconclusive && code == kPass) code = kInconclusive;
        if (row.fibrant != Verdict::Inconclusive && !row.ok()) code = kFail;
      }
      out.emit(Json{{"schema", kSchemaVersion}, {"max_dim", max_dim}, {"rows", rows}}, s);
      return code;
    }
    if (*vmain) {
      std::vector<RelStructure> structures;
      if (!relcat_path.empty()) {
        structures.push_back(relcat_from_json(load_json(relcat_path)));
      } else {
        structures.push_back(pmc_from_pullbacks(share(zoo::fi_skeleton(3))));
        structures.push_back(pmc_from_pushouts(share(zoo::boolean_lattice(3))));
      }
      Json runs = Json::array();
      std::string s;
      bool ok = true;
      for (const auto& r : structures) {
        const auto run = run_main_theorem(r, n_max, main_cap, SearchOptions{budget, true}, 3, !no_compare);
        Json j = main_theorem_to_json(run);
        j["category"] = r.ambient->name();
        runs.push_back(j);
        s += r.ambient->name() + ": " + (run.ok() ? "ok" : "FAILED") + "\n";
        for (const auto& h : run.horns)
          s += "  (" + std::to_string(h.n) + "," + std::to_string(h.k) + ") " + std::to_string(h.constructed) + "/" +
               std::to_string(h.boundaries) + " constructed, generic filled " + std::to_string(h.generic_filled) +
               ", exhausted " + std::to_string(h.generic_exhausted) + ", budget " + std::to_string(h.generic_budget) +
               "\n";
        if (run.error) s += "  " + *run.error + "\n";
        ok = ok && run.ok();
      }
      out.emit(Json{{"schema", kSchemaVersion}, {"runs", runs}}, s);
      return ok ? kPass : kFail;
    }
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInput;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFail;
  }
  return kInput;
}
