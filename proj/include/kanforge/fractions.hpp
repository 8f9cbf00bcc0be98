#pragma once

#include <array>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "kanforge/diagram.hpp"
#include "kanforge/fincat.hpp"
#include "kanforge/lifting.hpp"
#include "kanforge/limits.hpp"

namespace kanforge {

// Commuting square for a span s: X->Y, t: X->Z: u∘s == v∘t.
struct Cocone2 {
  MorId u = kNone;
  MorId v = kNone;
};

using Triple = std::array<MorId, 3>;  // (f, g, s) with f∘s == g∘s

struct CfWitness {
  CategoryPtr category;
  // Keyed by (s, t), every span including s == t.
  std::map<std::pair<MorId, MorId>, Cocone2> cf1;
  // Keyed by (f, g, s); the value t satisfies t∘f == t∘g.
  std::map<Triple, MorId> cf2;
  std::optional<std::pair<MorId, MorId>> cf1_failure;
  std::optional<Triple> cf2_failure;

  bool cf1_holds() const { return !cf1_failure; }
  bool cf2_holds() const { return !cf2_failure; }
  bool holds() const { return cf1_holds() && cf2_holds(); }
};

// Lowest (u, v) in id order, if any.
std::optional<Cocone2> cf1_cocone(const FinCategory& c, MorId s, MorId t);
// Lowest t with t∘f == t∘g, if any.
std::optional<MorId> cf2_equalizer(const FinCategory& c, MorId f, MorId g);

// Scans spans in (s, t) order and equalized triples in (f, g, s) order.
CfWitness check_cf(const CategoryPtr& c);

// Throws Error if some stored square or equalizer does not hold.
void verify_witness(const CfWitness& w);

// g_i with g_i∘fs[i] all equal, by induction on the number of morphisms.
std::vector<MorId> common_multiple(const FinCategory& c, const std::vector<MorId>& fs, const CfWitness& w);

// Extends F on c Sd Lambda^k[n] to c Sd Delta[n] using the CF tables.
// The result is validated.
Diagram construct_horn_filler(const CfWitness& w, int n, int k, const Diagram& f);

// CF tables recovered from horn fillers.
struct HornExtraction {
  CfWitness witness;
  // The boundary that could not be filled, when extraction stops early.
  std::optional<Diagram> failed;
  LiftStatus status = LiftStatus::Filled;
};

// Lambda^0[2] boundary of a span and the square read off a filler.
Diagram cf1_horn(const CategoryPtr& c, MorId s, MorId t);
std::optional<Cocone2> cf1_from_filler(const Diagram& filler);
// Lambda^0[3] boundary of an equalized triple and t read off a filler.
Diagram cf2_horn(const CategoryPtr& c, MorId f, MorId g, MorId s);
MorId cf2_from_filler(const Diagram& filler);

HornExtraction cf1_from_horn(const CategoryPtr& c, const SearchOptions& opts = {});
HornExtraction cf2_from_horn(const CategoryPtr& c, const SearchOptions& opts = {});

struct Coequalizer {
  ObjId apex = kNone;
  MorId phi = kNone;
  // Intermediate data of the construction.
  Square b;  // pushout of (alpha, f∘alpha)
  MorId big_f = kNone;
  MorId big_g = kNone;
  Square z;  // pushout of (G, F)
};

// Coequalizer of f, g: X->Y given alpha: A->X with f∘alpha == g∘alpha.
// Throws Error if a pushout is missing or the result fails the check.
Coequalizer coequalizer_from_pushouts(const FinCategory& c, MorId f, MorId g, MorId alpha);

// Exhaustive check that phi: Y->Z coequalizes f, g universally.
bool is_coequalizer(const FinCategory& c, MorId f, MorId g, MorId phi);

}  // namespace kanforge
