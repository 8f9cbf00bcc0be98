#include <doctest.h>

#include "kanforge/extension.hpp"
#include "kanforge/lifting.hpp"
#include "kanforge/limits.hpp"
#include "kanforge/zoo.hpp"

using namespace kanforge;

namespace {

bool restricts(const Diagram& full, const Diagram& sub, const std::vector<int>& incl) {
  for (int x = 0; x < sub.size(); ++x) {
    if (full.at(incl[x]) != sub.at(x)) return false;
    for (int y = 0; y < sub.size(); ++y)
      if (sub.shape()->leq(x, y) && full.arrow(incl[x], incl[y]) != sub.arrow(x, y)) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("K-cone limits are limits") {
  for (const auto& cat : {zoo::fi_skeleton(3), zoo::boolean_lattice(3)}) {
    auto c = share(cat);
    CAPTURE(c->name());
    const KPoset kp = k_cone(share(FinPoset::from_leq({"0", "1"}, [](int a, int b) { return a <= b; })));
    int seen = 0;
    enumerate_diagrams(kp.poset, c, EnumOptions{300, true}, [&](const Diagram& beta) {
      const auto brute = limit_of_diagram(beta);
      if (!brute) return true;
      const Cone cone = k_limit(kp, beta);
      CHECK(is_limit(beta, cone));
      CHECK(cone.apex == brute->apex);
      ++seen;
      return true;
    });
    CHECK(seen > 0);
  }
}

TEST_CASE("family construction rejects bad input") {
  auto c = share(zoo::fi_skeleton(3));
  CHECK_THROWS_AS(build_phi_psi(pmc_from_pullbacks(c), 3, 2), InputError);
  RelStructure bad = pmc_from_pullbacks(c);
  bad.cof = bad.fib;
  CHECK_THROWS_AS(build_phi_psi(bad, 1), InputError);
}

TEST_CASE("constructive fillers extend their boundaries") {
  const std::vector<RelStructure> structures = {pmc_from_pullbacks(share(zoo::fi_skeleton(3))),
                                                pmc_from_pushouts(share(zoo::boolean_lattice(3)))};
  for (const auto& r : structures) {
    CAPTURE(r.ambient->name());
    const auto fam = build_phi_psi(r, 2);
    for (int n = 1; n <= 2; ++n)
      for (int k = 0; k <= n; ++k) {
        const SdPoset horn = sd_horn(n, k, 2);
        const SdPoset delta = sd_delta(n, 2);
        enumerate_diagrams(horn.poset, r.ambient, EnumOptions{40, true}, [&](const Diagram& b) {
          Transcript log;
          const Diagram f = constructive_filler(fam, n, k, b, &log);
          CHECK(f.complete());
          CHECK_FALSE(f.violation());
          CHECK(restricts(f, b, horn.inclusion));
          CHECK_FALSE(log.empty());
          const auto generic = extend_functor(make_lifting_problem(b, delta.poset, horn.inclusion));
          CHECK(generic.status == LiftStatus::Filled);
          return true;
        });
      }
  }
}

TEST_CASE("a constant boundary gives a constant filler") {
  const auto r = pmc_from_pullbacks(share(zoo::fi_skeleton(3)));
  const auto fam = build_phi_psi(r, 2);
  const SdPoset horn = sd_horn(2, 0, 2);
  const ObjId x = *r.ambient->find_object("{0,1}");
  Diagram b(horn.poset, r.ambient);
  for (int e = 0; e < horn.size(); ++e) b.set_object(e, x);
  for (int e = 0; e < horn.size(); ++e)
    for (int f = 0; f < horn.size(); ++f)
      if (horn.poset->leq(e, f)) b.set_arrow(e, f, r.ambient->identity(x));
  const Diagram out = constructive_filler(fam, 2, 0, b);
  for (int e = 0; e < out.size(); ++e) CHECK(out.at(e) == x);
}

TEST_CASE("the extension functors satisfy their own laws") {
  const auto r = pmc_from_pushouts(share(zoo::boolean_lattice(3)));
  const auto fam = build_phi_psi(r, 2);
  const ExtensionFunctor& phi = fam.phi[2];
  int seen = 0;
  enumerate_diagrams(phi.base, r.ambient, EnumOptions{30, true}, [&](const Diagram& a) {
    const Diagram out = phi.apply(a, nullptr);
    const auto chk = check_extension(r, phi.cone, a, out);
    CHECK_MESSAGE(chk.ok(), chk.detail);
    ++seen;
    return true;
  });
  CHECK(seen > 0);
}
