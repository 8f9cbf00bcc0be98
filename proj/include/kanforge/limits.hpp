#pragma once

#include <optional>
#include <vector>

#include "kanforge/diagram.hpp"
#include "kanforge/fincat.hpp"

namespace kanforge {

// Pushout of a span: apex W with first: Y->W, second: Z->W.
// Pullback of a cospan: apex P with first: P->Y, second: P->Z.
struct Square {
  ObjId apex = kNone;
  MorId first = kNone;
  MorId second = kNone;
};

// Pushout of f: X->Y, g: X->Z. The canonical representative is the first
// universal cocone in (apex id, first id, second id) order.
std::optional<Square> pushout(const FinCategory& c, MorId f, MorId g);
// Pullback of f: Y->X, g: Z->X.
std::optional<Square> pullback(const FinCategory& c, MorId f, MorId g);

// True iff (apex, first, second) is a pushout of (f, g).
bool is_pushout(const FinCategory& c, MorId f, MorId g, const Square& s);
bool is_pullback(const FinCategory& c, MorId f, MorId g, const Square& s);

struct SpanCheck {
  bool holds = true;
  MorId f = kNone;
  MorId g = kNone;
};
SpanCheck has_all_pushouts(const FinCategory& c);
SpanCheck has_all_pullbacks(const FinCategory& c);

struct Cone {
  ObjId apex = kNone;
  std::vector<MorId> legs;
};

// Number of cones over d with apex q.
std::size_t count_cones(const Diagram& d, ObjId q);
std::size_t count_cocones(const Diagram& d, ObjId q);

bool is_limit(const Diagram& d, const Cone& cone);
bool is_colimit(const Diagram& d, const Cone& cocone);

std::optional<Cone> limit_of_diagram(const Diagram& d);
std::optional<Cone> colimit_of_diagram(const Diagram& d);

// All u: s -> cone.apex with legs[x]∘u == maps[x] for every x where
// maps[x] != kNone.
std::vector<MorId> factorizations_through_cone(const FinCategory& c, ObjId s,
                                               const Cone& cone,
                                               const std::vector<MorId>& maps);
std::vector<MorId> factorizations_through_cocone(const FinCategory& c, ObjId t,
                                                 const Cone& cocone,
                                                 const std::vector<MorId>& maps);

}  // namespace kanforge
