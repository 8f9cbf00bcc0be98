#include <doctest.h>

#include "kanforge/limits.hpp"
#include "kanforge/zoo.hpp"
#include "oracles.hpp"

using namespace kanforge;

namespace {

void compare_squares(const FinCategory& c) {
  for (MorId f = 0; f < static_cast<MorId>(c.num_morphisms()); ++f)
    for (MorId g = 0; g < static_cast<MorId>(c.num_morphisms()); ++g) {
      if (c.dom(f) == c.dom(g)) {
        const auto po = pushout(c, f, g);
        CHECK(po.has_value() == oracle::has_pushout(c, f, g));
        if (po) CHECK(oracle::is_pushout(c, f, g, po->apex, po->first, po->second));
      }
      if (c.cod(f) == c.cod(g)) {
        const auto pb = pullback(c, f, g);
        CHECK(pb.has_value() == oracle::has_pullback(c, f, g));
        if (pb) CHECK(oracle::is_pullback(c, f, g, pb->apex, pb->first, pb->second));
      }
    }
}

}  // namespace

TEST_CASE("pushouts and pullbacks agree with the brute-force oracle") {
  for (const auto& c : {zoo::idempotent_monoid(), zoo::parallel_pair(), zoo::boolean_lattice(2), zoo::chain_poset(2),
                        zoo::cyclic_group(3), zoo::walking_iso(), zoo::discrete(2)}) {
    CAPTURE(c.name());
    compare_squares(c);
  }
}

TEST_CASE("FI up to 3 has all pullbacks but not all pushouts") {
  const FinCategory c = zoo::fi_skeleton(3);
  compare_squares(c);
  CHECK(has_all_pullbacks(c).holds);
  const auto po = has_all_pushouts(c);
  CHECK_FALSE(po.holds);
  // The two inclusions of a point into a two-element set.
  const MorId f = *c.find_morphism("1>2:0"), g = *c.find_morphism("1>2:1");
  CHECK_FALSE(pushout(c, f, g));
  CHECK_FALSE(oracle::has_pushout(c, f, g));
}

TEST_CASE("lattices have all pushouts and pullbacks") {
  const FinCategory b = zoo::boolean_lattice(3);
  CHECK(has_all_pushouts(b).holds);
  CHECK(has_all_pullbacks(b).holds);
}

TEST_CASE("limits of poset diagrams") {
  // A cospan in the Boolean lattice on {0,1}: {0} -> {0,1} <- {1}.
  const auto c = share(zoo::boolean_lattice(2));
  const FinPoset shape = FinPoset::from_relations({"a", "b", "t"}, {{0, 2}, {1, 2}});
  Diagram d(share(shape), c);
  const ObjId o0 = *c->find_object("{0}"), o1 = *c->find_object("{1}"), top = *c->find_object("{0,1}");
  d.set_object(0, o0);
  d.set_object(1, o1);
  d.set_object(2, top);
  for (int x = 0; x < 3; ++x) d.set_arrow(x, x, c->identity(d.at(x)));
  d.set_arrow(0, 2, c->hom(o0, top)[0]);
  d.set_arrow(1, 2, c->hom(o1, top)[0]);
  const auto lim = limit_of_diagram(d);
  REQUIRE(lim);
  CHECK(c->object_name(lim->apex) == "{}");
  CHECK(is_limit(d, *lim));
  const auto colim = colimit_of_diagram(d);
  REQUIRE(colim);
  CHECK(colim->apex == top);
  // Any object maps into {0,1} once, so cones with apex {0,1} over the
  // whole diagram are those through the bottom; there are none.
  CHECK(count_cones(d, top) == 0);
  CHECK(count_cones(d, lim->apex) == 1);
}
