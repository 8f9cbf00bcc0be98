#include "kanforge/report.hpp"

#include "kanforge/sdposet.hpp"

namespace kanforge {

namespace {

Json names_of(const FinCategory& c, const std::vector<MorId>& ms) {
  Json out = Json::array();
  for (MorId m : ms) out.push_back(m == kNone ? "-" : c.morphism_name(m));
  return out;
}

}  // namespace

Json fibrancy_to_json(const FibrancyReport& rep, const FinCategory& c) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["category"] = c.name();
  j["level"] = rep.level;
  j["max_dim"] = rep.max_dim;
  j["verdict"] = to_string(rep.verdict);
  Json horns = Json::array();
  for (const auto& h : rep.horns) {
    Json e{{"n", h.n}, {"k", h.k}, {"status", to_string(h.verdict)}, {"boundaries", h.boundaries},
           {"nodes", h.nodes}, {"budget_hits", h.budget_hits}};
    if (h.witness) e["witness"] = diagram_to_json(*h.witness);
    if (h.witness0) e["witness"] = functor_to_json(*h.witness0);
    if (h.sample_filler) e["sample_filler"] = diagram_to_json(*h.sample_filler);
    horns.push_back(std::move(e));
  }
  j["horns"] = horns;
  return j;
}

Json cf_to_json(const CfWitness& w) {
  const FinCategory& c = *w.category;
  Json j;
  j["schema"] = kSchemaVersion;
  j["category"] = c.name();
  Json cf1{{"holds", w.cf1_holds()}};
  if (w.cf1_failure) cf1["witness"] = {{"s", c.morphism_name(w.cf1_failure->first)},
                                       {"t", c.morphism_name(w.cf1_failure->second)}};
  Json cf2{{"holds", w.cf2_holds()}};
  if (w.cf2_failure) {
    const auto& t = *w.cf2_failure;
    cf2["witness"] = {{"f", c.morphism_name(t[0])}, {"g", c.morphism_name(t[1])}, {"s", c.morphism_name(t[2])}};
  }
  j["cf1"] = cf1;
  j["cf2"] = cf2;
  return j;
}

Json axiom_to_json(const AxiomCheck& chk, const FinCategory& c) {
  Json j{{"holds", chk.holds}};
  if (!chk.holds) {
    j["axiom"] = chk.axiom;
    j["witness"] = names_of(c, chk.witness);
    j["detail"] = chk.detail;
  }
  return j;
}

Json pmc_search_to_json(const PmcSearchResult& res, const FinCategory& c) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["category"] = c.name();
  j["found"] = res.found.has_value();
  j["candidates"] = res.candidates;
  if (res.found) j["structure"] = relcat_to_json(*res.found);
  Json cert = Json::array();
  for (const auto& f : res.certificate)
    cert.push_back({{"cof", names_of(c, f.cof)}, {"fib", names_of(c, f.fib)}, {"reason", axiom_to_json(f.reason, c)}});
  j["certificate"] = cert;
  return j;
}

CfFibrancyRow compare_cf_fibrancy(const CategoryPtr& c, int max_dim, const FibrancyOptions& opts,
                                  std::uint64_t filler_cap) {
  CfFibrancyRow row;
  row.name = c->name();
  const CfWitness w = check_cf(c);
  row.cf = w.holds();
  row.fibrant = fibrancy_report(c, 1, max_dim, opts).verdict;
  if (!row.cf) return row;
  for (int n = 1; n <= max_dim && !row.filler_error; ++n)
    for (int k = 0; k <= n && !row.filler_error; ++k) {
      const SdPoset horn = sd_horn(n, k, 1);
      enumerate_diagrams(horn.poset, c, EnumOptions{filler_cap, opts.up_to_iso}, [&](const Diagram& b) {
        try {
          construct_horn_filler(w, n, k, b);
          ++row.fillers_checked;
          return true;
        } catch (const Error& e) {
          row.filler_error = "(" + std::to_string(n) + "," + std::to_string(k) + "): " + e.what();
          return false;
        }
      });
    }
  return row;
}

Json cf_fibrancy_to_json(const CfFibrancyRow& row) {
  Json j{{"category", row.name}, {"cf", row.cf}, {"fibrant", to_string(row.fibrant)}, {"agrees", row.agrees()},
         {"fillers_checked", row.fillers_checked}};
  if (row.filler_error) j["filler_error"] = *row.filler_error;
  return j;
}

bool MainTheoremRun::ok() const {
  if (error) return false;
  for (const auto& h : horns)
    if (!h.ok()) return false;
  return true;
}

MainTheoremRun run_main_theorem(const RelStructure& r, int n_max, std::uint64_t cap, const SearchOptions& generic,
                                int n_cap, bool compare) {
  MainTheoremRun run;
  ExtensionFamily fam;
  try {
    fam = build_phi_psi(r, n_max, n_cap);
  } catch (const Error& e) {
    run.error = e.what();
    return run;
  }
  for (int n = 1; n <= n_max; ++n)
    for (int k = 0; k <= n; ++k) {
      MainHornRun h;
      h.n = n;
      h.k = k;
      const SdPoset horn = sd_horn(n, k, 2);
      const SdPoset delta = sd_delta(n, 2);
      auto res = enumerate_diagrams(horn.poset, r.ambient, EnumOptions{cap, true}, [&](const Diagram& b) {
        ++h.boundaries;
        try {
          constructive_filler(fam, n, k, b);
          ++h.constructed;
        } catch (const Error& e) {
          if (!h.error) h.error = e.what();
        }
        if (compare) {
          const auto rep = extend_functor(make_lifting_problem(b, delta.poset, horn.inclusion), generic);
          if (rep.status == LiftStatus::Filled) ++h.generic_filled;
          else if (rep.status == LiftStatus::Exhausted) ++h.generic_exhausted;
          else ++h.generic_budget;
        }
        return true;
      });
      h.truncated = res.truncated;
      run.horns.push_back(std::move(h));
    }
  return run;
}

Json main_theorem_to_json(const MainTheoremRun& run) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["ok"] = run.ok();
  if (run.error) j["error"] = *run.error;
  Json horns = Json::array();
  for (const auto& h : run.horns) {
    Json e{{"n", h.n},
           {"k", h.k},
           {"boundaries", h.boundaries},
           {"constructed", h.constructed},
           {"generic_filled", h.generic_filled},
           {"generic_exhausted", h.generic_exhausted},
           {"generic_budget", h.generic_budget},
           {"truncated", h.truncated}};
    if (h.error) e["error"] = *h.error;
    horns.push_back(std::move(e));
  }
  j["horns"] = horns;
  return j;
}

}  // namespace kanforge
