#include <doctest.h>

#include "kanforge/limits.hpp"
#include "kanforge/pmc.hpp"
#include "kanforge/zoo.hpp"
#include "oracles.hpp"

using namespace kanforge;

TEST_CASE("2-out-of-6 agrees with the oracle on every subclass of small categories") {
  for (const auto& cat : {zoo::idempotent_monoid(), zoo::chain_poset(2), zoo::parallel_pair(), zoo::cyclic_group(2)}) {
    CAPTURE(cat.name());
    const std::size_t m = cat.num_morphisms();
    REQUIRE(m <= 12);
    for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
      std::vector<char> w(m);
      for (std::size_t i = 0; i < m; ++i) w[i] = (mask >> i) & 1;
      CHECK(check_two_of_six(cat, w).holds == oracle::two_of_six(cat, w));
    }
  }
}

TEST_CASE("trivial structures on categories with pullbacks or pushouts") {
  const auto fi = pmc_from_pullbacks(share(zoo::fi_skeleton(3)));
  CHECK_NOTHROW(validate_structure(fi));
  const auto chk = check_pmc(fi);
  CHECK_MESSAGE(chk.holds, chk.axiom << ": " << chk.detail);

  const auto b3 = pmc_from_pushouts(share(zoo::boolean_lattice(3)));
  CHECK_NOTHROW(validate_structure(b3));
  CHECK(check_pmc(b3).holds);
}

TEST_CASE("cofibration closure needs pushouts") {
  const FinCategory fi = zoo::fi_skeleton(3);
  const auto chk = check_cof_closure(fi, all_morphisms(fi));
  CHECK_FALSE(chk.holds);
  REQUIRE(chk.witness.size() >= 2);
  CHECK_FALSE(pushout(fi, chk.witness[0], chk.witness[1]));
  CHECK(check_fib_closure(fi, all_morphisms(fi)).holds);
}

TEST_CASE("malformed structures are input errors") {
  auto r = pmc_from_pullbacks(share(zoo::chain_poset(2)));
  r.cof.assign(r.cof.size(), 0);
  CHECK_THROWS_AS(validate_structure(r), InputError);
  auto s = pmc_from_pullbacks(share(zoo::chain_poset(2)));
  s.weq.pop_back();
  CHECK_THROWS_AS(validate_structure(s), InputError);
}

TEST_CASE("the idempotent monoid admits no structure with every map a weak equivalence") {
  auto c = share(zoo::idempotent_monoid());
  const MorId a = *c->find_morphism("a");
  CHECK_FALSE(pushout(*c, a, a));
  CHECK_FALSE(pullback(*c, a, a));
  const auto res = pmc_search(c, all_morphisms(*c));
  CHECK_FALSE(res.found);
  CHECK(res.candidates == 4);
  CHECK(res.certificate.size() == res.candidates);
  for (const auto& f : res.certificate) CHECK_FALSE(f.reason.holds);
}

TEST_CASE("search finds a structure when one exists") {
  auto c = share(zoo::chain_poset(2));
  const auto res = pmc_search(c, all_morphisms(*c));
  REQUIRE(res.found);
  CHECK(check_pmc(*res.found).holds);
  CHECK_THROWS_AS(pmc_search(share(zoo::fi_skeleton(3)), all_morphisms(zoo::fi_skeleton(3))), InputError);
}

TEST_CASE("homotopically full subcategories") {
  const auto r = pmc_from_pullbacks(share(zoo::chain_poset(2)));
  const auto closure = weq_component_closure(r, {0});
  CHECK(closure.size() == 3);
  CHECK_THROWS_AS(restrict_full(r, {0, 1}), InputError);
  const auto full = restrict_full(r, closure);
  CHECK(check_pmc(full).holds);

  RelStructure id_only = r;
  id_only.weq = identities_only(*r.ambient);
  id_only.cof = id_only.weq;
  id_only.fib = id_only.weq;
  id_only.factor.assign(id_only.weq.size(), Factorization{});
  id_only.mid.clear();
  for (MorId m = 0; m < static_cast<MorId>(id_only.weq.size()); ++m)
    if (id_only.weq[m]) id_only.factor[m] = Factorization{m, m};
  for (const auto& sq : weq_squares(*r.ambient, id_only.weq)) id_only.mid[sq] = sq[2];
  CHECK(weq_component_closure(id_only, {0}).size() == 1);
  CHECK_NOTHROW(restrict_full(id_only, {1}));
}
