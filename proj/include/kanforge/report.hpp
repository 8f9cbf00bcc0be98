#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kanforge/extension.hpp"
#include "kanforge/fibrancy.hpp"
#include "kanforge/fractions.hpp"
#include "kanforge/io.hpp"
#include "kanforge/pmc.hpp"

namespace kanforge {

Json fibrancy_to_json(const FibrancyReport& rep, const FinCategory& c);
Json cf_to_json(const CfWitness& w);
Json axiom_to_json(const AxiomCheck& chk, const FinCategory& c);
Json pmc_search_to_json(const PmcSearchResult& res, const FinCategory& c);

// Comparison for one category: CF against level-1
// fibrancy, plus the constructive filler on every enumerated boundary when
// CF holds.
struct CfFibrancyRow {
  std::string name;
  bool cf = false;
  Verdict fibrant = Verdict::Inconclusive;
  std::uint64_t fillers_checked = 0;
  std::optional<std::string> filler_error;
  bool agrees() const { return fibrant != Verdict::Inconclusive && cf == (fibrant == Verdict::Pass); }
  bool ok() const { return agrees() && !filler_error; }
};
CfFibrancyRow compare_cf_fibrancy(const CategoryPtr& c, int max_dim, const FibrancyOptions& opts,
                                  std::uint64_t filler_cap);
Json cf_fibrancy_to_json(const CfFibrancyRow& row);

// Constructive level-2 fillers against the generic solver, per horn.
struct MainHornRun {
  int n = 0;
  int k = 0;
  std::uint64_t boundaries = 0;
  std::uint64_t constructed = 0;
  std::uint64_t generic_filled = 0;
  std::uint64_t generic_exhausted = 0;
  std::uint64_t generic_budget = 0;
  bool truncated = false;
  std::optional<std::string> error;
  bool ok() const { return !error && constructed == boundaries && generic_exhausted == 0; }
};
struct MainTheoremRun {
  std::vector<MainHornRun> horns;
  std::optional<std::string> error;
  bool ok() const;
};
MainTheoremRun run_main_theorem(const RelStructure& r, int n_max, std::uint64_t cap, const SearchOptions& generic,
                                int n_cap = kDefaultExtensionCap, bool compare = true);
Json main_theorem_to_json(const MainTheoremRun& run);

}  // namespace kanforge
