#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "kanforge/diagram.hpp"
#include "kanforge/fincat.hpp"
#include "kanforge/limits.hpp"
#include "kanforge/pmc.hpp"
#include "kanforge/sdposet.hpp"

namespace kanforge {

// A construction step that could not be carried out.
class ExtensionError : public Error {
 public:
  ExtensionError(std::string step, const std::string& detail)
      : Error(step + ": " + detail), step_(std::move(step)) {}
  const std::string& step() const { return step_; }

 private:
  std::string step_;
};

using Transcript = std::vector<std::string>;

// A functor on K(B) unpacked: the restriction to B x 0 (lower), the values
// on B x 1 (up), the maps x x (0->1) (vert), the maps (x,1) -> (y,1) for
// x <= y (upper, row-major |B| x |B|) and the apex with its legs.
struct KData {
  Diagram lower;
  std::vector<ObjId> up;
  std::vector<MorId> vert;
  std::vector<MorId> upper;
  ObjId apex = kNone;
  std::vector<MorId> legs;

  MorId up_arrow(int x, int y) const { return upper[static_cast<std::size_t>(x) * up.size() + y]; }
  Diagram upper_diagram(const PosetPtr& base) const;
  Cone cone() const { return Cone{apex, legs}; }
};

KData read_k(const KPoset& kp, const Diagram& d);
// Throws ExtensionError(step) if the assembled data is not a functor.
Diagram assemble_k(const KPoset& kp, const KData& k, const std::string& step);

// Limit of a functor on K(I) from the limits over I x 0 and I x 1 and one
// pullback. The cone has a leg for every element of K(I).
Cone k_limit(const KPoset& kp, const Diagram& beta);

struct ExtensionFunctor {
  std::string name;
  PosetPtr base;
  KPoset cone;
  std::function<Diagram(const Diagram&, Transcript*)> apply;
};

struct ExtensionCheck {
  bool restriction = true;
  bool cof = true;
  bool lim = true;
  std::string detail;
  bool ok() const { return restriction && cof && lim; }
};

// Restriction law, (Cof) and an exhaustive scan for (Lim).
ExtensionCheck check_extension(const RelStructure& r, const KPoset& kp, const Diagram& alpha, const Diagram& out);

struct DoubleK {
  KPoset vertical;  // K_v(K_h(D))
  Diagram out;
  MorId epsilon = kNone;  // apex after the pullback -> apex before it
};

// Extension functor on K_h(D) built from phi on D; alpha is a functor on
// phi.cone.poset.
DoubleK double_k_extend(const ExtensionFunctor& phi, const RelStructure& r, const Diagram& alpha,
                        Transcript* log = nullptr);

inline constexpr int kDefaultExtensionCap = 2;

struct ExtensionFamily {
  std::shared_ptr<const RelStructure> structure;
  int n_max = 0;
  std::vector<ExtensionFunctor> phi;  // indices 1..n_max
  std::vector<ExtensionFunctor> psi;  // indices 0..n_max-1
};

// Phi_n on c Sd^2 Lambda^n[n] and Psi_n on c Sd^2 Delta[n]. Every
// application checks its result and throws ExtensionError naming the step.
// Throws InputError if r fails the axioms or n_max exceeds cap.
ExtensionFamily build_phi_psi(const RelStructure& r, int n_max, int cap = kDefaultExtensionCap);

// Horn filler on c Sd^2 Delta[n] for a boundary on c Sd^2 Lambda^k[n],
// validated as an extension.
Diagram constructive_filler(const ExtensionFamily& fam, int n, int k, const Diagram& boundary,
                            Transcript* log = nullptr);

}  // namespace kanforge
