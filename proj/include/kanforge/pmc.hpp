#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kanforge/fincat.hpp"

namespace kanforge {

// Morphism of the arrow category of W from w: A->B to w2: A2->B2, given by
// u: A->A2 and v: B->B2 in W with v∘w == w2∘u. Stored as (w, w2, u, v).
using WSquare = std::array<MorId, 4>;

struct Factorization {
  MorId cof = kNone;  // A -> M
  MorId fib = kNone;  // M -> B
};

struct RelStructure {
  CategoryPtr ambient;
  std::vector<char> weq;
  std::vector<char> cof;
  std::vector<char> fib;
  // Indexed by morphism; set for weak equivalences.
  std::vector<Factorization> factor;
  // Middle map for every square of W.
  std::map<WSquare, MorId> mid;
};

// Every square of W, in (w, w2, u, v) id order.
std::vector<WSquare> weq_squares(const FinCategory& c, const std::vector<char>& weq);

// Throws InputError unless W is a subcategory containing every identity,
// C and F are subclasses of W containing the identities, and the tables
// have the right shape.
void validate_structure(const RelStructure& r);

struct AxiomCheck {
  bool holds = true;
  std::string axiom;
  std::vector<MorId> witness;
  std::string detail;
};

// r, s, t composable with s∘r and t∘s in W force r, s, t and t∘s∘r in W.
AxiomCheck check_two_of_six(const FinCategory& c, const std::vector<char>& weq);
AxiomCheck check_two_of_six(const RelStructure& r);
// Pushouts of C-maps along any map exist and some pushout square has its
// new leg in C; dually for F with pullbacks.
AxiomCheck check_cof_closure(const FinCategory& c, const std::vector<char>& cof);
AxiomCheck check_fib_closure(const FinCategory& c, const std::vector<char>& fib);
AxiomCheck check_class_closure(const RelStructure& r);
// fib∘cof == w, classes respected, middle maps commute, lie in W and are
// functorial on squares.
AxiomCheck check_factorization(const RelStructure& r);

// All three checks, first failure reported.
AxiomCheck check_pmc(const RelStructure& r);

// (M, M) with C = identities, F = all and w = w∘id.
RelStructure pmc_from_pullbacks(const CategoryPtr& c);
// (M, M) with C = all, F = identities and w = id∘w.
RelStructure pmc_from_pushouts(const CategoryPtr& c);

inline constexpr std::size_t kDefaultPmcGuard = 12;

struct CandidateFailure {
  std::vector<MorId> cof;  // non-identity members
  std::vector<MorId> fib;
  AxiomCheck reason;
};

struct PmcSearchResult {
  std::optional<RelStructure> found;
  // One entry per rejected candidate, in search order.
  std::vector<CandidateFailure> certificate;
  std::uint64_t candidates = 0;
};

// Exhaustive search for C, F and a functorial factorization with the given
// W. Candidates are ordered by (|C|, C) then (|F|, F), each as sorted lists
// of non-identity weak equivalences. Throws InputError if the ambient
// category has more than max_morphisms morphisms.
PmcSearchResult pmc_search(const CategoryPtr& c, const std::vector<char>& weq,
                           std::size_t max_morphisms = kDefaultPmcGuard);

// Objects connected to some object of seeds by a zig-zag in W.
std::vector<ObjId> weq_component_closure(const RelStructure& r, const std::vector<ObjId>& seeds);

// Restriction to a homotopically full subcategory. Throws InputError if
// the object set is not closed under zig-zags of weak equivalences.
RelStructure restrict_full(const RelStructure& r, const std::vector<ObjId>& objects);

std::vector<char> all_morphisms(const FinCategory& c);
std::vector<char> identities_only(const FinCategory& c);

}  // namespace kanforge
