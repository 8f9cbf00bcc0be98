#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "kanforge/io.hpp"
#include "kanforge/sdposet.hpp"
#include "kanforge/zoo.hpp"

using namespace kanforge;

TEST_CASE("categories round trip through JSON") {
  for (const auto& c : {zoo::fi_skeleton(3), zoo::idempotent_monoid(), zoo::parallel_pair()}) {
    CAPTURE(c.name());
    const FinCategory back = category_from_json(category_to_json(c));
    REQUIRE(back.num_morphisms() == c.num_morphisms());
    for (MorId f = 0; f < static_cast<MorId>(c.num_morphisms()); ++f) {
      CHECK(back.morphism_name(f) == c.morphism_name(f));
      for (MorId g = 0; g < static_cast<MorId>(c.num_morphisms()); ++g)
        if (c.cod(f) == c.dom(g)) CHECK(back.compose(g, f) == c.compose(g, f));
    }
  }
}

TEST_CASE("structures round trip through JSON") {
  const auto r = pmc_from_pullbacks(share(zoo::fi_skeleton(2)));
  const RelStructure back = relcat_from_json(relcat_to_json(r));
  CHECK(back.weq == r.weq);
  CHECK(back.cof == r.cof);
  CHECK(back.fib == r.fib);
  CHECK(back.mid == r.mid);
}

TEST_CASE("diagrams round trip and may be given on covers") {
  auto c = share(zoo::boolean_lattice(2));
  const SdPoset h = sd_horn(2, 0, 1);
  Diagram d(h.poset, c);
  const ObjId top = *c->find_object("{0,1}");
  for (int x = 0; x < h.size(); ++x) d.set_object(x, top);
  for (int x = 0; x < h.size(); ++x)
    for (int y = 0; y < h.size(); ++y)
      if (h.poset->leq(x, y)) d.set_arrow(x, y, c->identity(top));
  Json j = diagram_to_json(d);
  CHECK(diagram_from_json(j, h.poset, c) == d);
  j["arrows"] = Json::array();
  for (const auto& [x, y] : h.poset->covers())
    j["arrows"].push_back({h.poset->name(x), h.poset->name(y), c->morphism_name(c->identity(top))});
  CHECK(diagram_from_json(j, h.poset, c) == d);
}

TEST_CASE("malformed input is an input error") {
  Json j = category_to_json(zoo::idempotent_monoid());
  SUBCASE("unknown object") { j["morphisms"][1]["dom"] = "nowhere"; }
  SUBCASE("missing composite") { j["compose"].erase(j["compose"].size() - 1); }
  SUBCASE("wrong type") { j["objects"] = 7; }
  CHECK_THROWS_AS(category_from_json(j), InputError);
}

TEST_CASE("files") {
  CHECK_THROWS_AS(load_json("/nonexistent/kanforge.json"), InputError);
  const std::string path = "kanforge_io_test.json";
  {
    std::ofstream out(path);
    out << "{ not json";
  }
  CHECK_THROWS_AS(load_json(path), InputError);
  save_json(path, category_to_json(zoo::chain_poset(1)));
  CHECK(category_from_json(load_json(path)).num_morphisms() == 3);
  std::remove(path.c_str());
}
