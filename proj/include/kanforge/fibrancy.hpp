#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kanforge/diagram.hpp"
#include "kanforge/fincat.hpp"
#include "kanforge/lifting.hpp"
#include "kanforge/sdposet.hpp"

namespace kanforge {

// Fundamental category of Lambda^k[n], computed from its 1-simplices
// (generators) and 2-simplices (relations). Objects are the vertices that
// lie in the horn; vertex[o] is the vertex of [n] for object o and
// span[f] = (i, j) the image of morphism f in [n].
struct HornCategory {
  int n = 0;
  int k = 0;
  CategoryPtr category;
  std::vector<int> vertex;
  std::vector<std::pair<int, int>> span;
};
HornCategory horn_category(int n, int k);

enum class HornVerdict { AllFilled, Failed, Budget, Truncated };
enum class Verdict { Pass, Fail, Inconclusive };
std::string to_string(HornVerdict v);
std::string to_string(Verdict v);

struct HornResult {
  int n = 0;
  int k = 0;
  HornVerdict verdict = HornVerdict::AllFilled;
  std::uint64_t boundaries = 0;
  // Level 1 only: boundaries not solved because an earlier one had the
  // same data on the faces a filler depends on. Counted in boundaries.
  std::uint64_t equivalent = 0;
  std::uint64_t nodes = 0;
  std::uint64_t budget_hits = 0;
  // First failing (or, failing that, first budget-exceeded) boundary.
  std::optional<Diagram> witness;
  std::optional<Functor> witness0;
  // Filler of the first boundary, when there is one.
  std::optional<Diagram> sample_filler;
};

struct FibrancyOptions {
  std::uint64_t budget = kDefaultBudget;
  std::uint64_t boundary_cap = kDefaultBoundaryCap;
  bool up_to_iso = true;
  // Level 1: solve one boundary per class of equal codimension-2/3 face data.
  bool reuse_equivalent = true;
  bool stop_at_first_failure = true;
  unsigned workers = 1;
};

struct FibrancyReport {
  int level = 0;
  int max_dim = 0;
  Verdict verdict = Verdict::Pass;
  std::vector<HornResult> horns;
};

FibrancyReport fibrancy_report(const CategoryPtr& c, int level, int max_dim, const FibrancyOptions& opts = {});

// One horn (n, k) at level m >= 1.
HornResult check_horn(const CategoryPtr& c, int level, int n, int k, const FibrancyOptions& opts = {});
HornResult check_horn0(const CategoryPtr& c, int n, int k, const FibrancyOptions& opts = {});

// Level-0 lifting of one functor on the horn category to [n].
LiftReport lift_level0(const HornCategory& h, const Functor& f, const SearchOptions& opts = {});

// Lifting for boundary on c Sd^2 Lambda^n[n] against the cone
// K(c Sd^2 Lambda^n[n]) (embedded as P), transported to c Sd^2 Delta[n]
// along the retraction.
LiftReport lift_via_kcone(int n, const Diagram& boundary, const SearchOptions& opts = {});
HornResult rlp_via_kcone(const CategoryPtr& c, int n, const FibrancyOptions& opts = {});

// Boundary on Lambda^i[n] carried to Lambda^n[n] by the horn automorphism.
Diagram conjugate_boundary(int n, int i, const Diagram& boundary, const PosetPtr& target_horn);

}  // namespace kanforge
