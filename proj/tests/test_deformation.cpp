#include "cicy/deformation.hpp"

#include <map>
#include <set>

#include "doctest.h"

#include "cicy/enumerate.hpp"

using namespace cicy;

namespace {

FamilyTemplate family(const char* compact) {
  return build_family(parse_config(compact));
}

// Restriction to the base: every auxiliary variable set to zero.
Poly restricted(const FamilyTemplate& tmpl, const std::string& tag) {
  std::map<int, Poly> zero;
  for (int aux : tmpl.aux_vars) zero.emplace(aux, Poly(tmpl.ring));
  return tmpl.block(tag).form.substitute(zero);
}

}  // namespace

TEST_CASE("build_family covers the sixteen types with validated columns") {
  int listed = 0;
  for (const auto& type : expected_catalog_types()) {
    FamilyTemplate tmpl = build_family(type);
    CHECK(tmpl.type_id == type);
    CHECK(tmpl.equations.size() == static_cast<std::size_t>(type.column_count()));
    CHECK(tmpl.fiber_count + static_cast<int>(tmpl.aux_vars.size()) ==
          type.column_count());
    if (tmpl.provenance == Provenance::listed) ++listed;
  }
  CHECK(listed == 7);
  const char* listed_types[] = {"4|41;1|02",  "4|32;1|20",   "4|32;1|02",
                                "5|321;1|002", "5|222;1|200", "5|222;1|110",
                                "7|22211;1|00011"};
  for (const char* s : listed_types)
    CHECK(family(s).provenance == Provenance::listed);
  CHECK(family("4|41;1|11").provenance == Provenance::reconstructed);
  CHECK_THROWS_AS(build_family(parse_config("4|5")), Error);
  CHECK_THROWS_AS(build_family(parse_config("3|3;1|2")), Error);
}

TEST_CASE("listed templates match the worked displays") {
  FamilyTemplate a = family("4|41;1|02");
  REQUIRE(a.equation_display.size() == 2);
  CHECK(a.equation_display[0] == "q0(x0..x3) + x4*c1(x0..x4)");
  CHECK(a.equation_display[1] == "x4*z^2 + l1(x0..x4)*y*z + l2(x0..x4)*y^2");

  FamilyTemplate b = family("5|321;1|002");
  REQUIRE(b.equation_display.size() == 3);
  CHECK(b.equation_display[0] == "k0(x0..x4) + x5*l1(x0..x5)");
  CHECK(b.equation_display[1] == "c0(x0..x4) + x5*k1(x0..x5)");
  CHECK(b.equation_display[2] == "x5*z^2 + l2(x0..x5)*y*z + l3(x0..x5)*y^2");

  FamilyTemplate c = family("7|22211;1|00011");
  REQUIRE(c.equation_display.size() == 5);
  CHECK(c.equation_display[0] ==
        "k01(x0..x5) + x6*l1(x0..x6) + x7*l2(x0..x7)");
  CHECK(c.equation_display[3] == "x6*z + l7(x0..x7)*y");
  CHECK(c.equation_display[4] == "x7*z + l8(x0..x7)*y");

  FamilyTemplate d = family("5|222;1|110");
  CHECK(d.equation_display[0] == "k01(x0..x5)*z + k1(x0..x5)*y");
  CHECK(d.equation_display[1] == "k02(x0..x5)*z + k2(x0..x5)*y");
  CHECK(d.equation_display[2] == "k03(x0..x5)");
}

TEST_CASE("reconstructed templates follow the same block pattern") {
  // The quintic source: rows of the 2x2 block are (q0 + x4*c1, q1) and
  // (x4, l1).
  FamilyTemplate a = family("4|41;1|11");
  REQUIRE(a.equation_display.size() == 2);
  CHECK(a.equation_display[0] == "(q0(x0..x3) + x4*c1(x0..x4))*z + q1(x0..x4)*y");
  CHECK(a.equation_display[1] == "x4*z + l1(x0..x4)*y");

  FamilyTemplate b = family("5|411;1|011");
  REQUIRE(b.equation_display.size() == 3);
  CHECK(b.equation_display[0] ==
        "q0(x0..x3) + x4*c1(x0..x4) + x5*c2(x0..x5)");
  CHECK(b.equation_display[1] == "x4*z + l1(x0..x5)*y");
  CHECK(b.equation_display[2] == "x5*z + l2(x0..x5)*y");

  // The two block entries of the 6|322 source carry the names l1, k1
  // with the auxiliary equation using l4.
  FamilyTemplate c = family("6|2221;1|0011");
  REQUIRE(c.equation_display.size() == 4);
  CHECK(c.equation_display[0] == "(k01(x0..x5) + x6*l1(x0..x6))*z + k1(x0..x6)*y");
  CHECK(c.equation_display[1] == "k02(x0..x5) + x6*l2(x0..x6)");
  CHECK(c.equation_display[2] == "k03(x0..x5) + x6*l3(x0..x6)");
  CHECK(c.equation_display[3] == "x6*z + l4(x0..x6)*y");
}

TEST_CASE("special_fiber recovers the fiber polynomials") {
  FamilyTemplate g1 = family("4|41;1|02");
  auto f1 = special_fiber(g1);
  REQUIRE(f1.size() == 1);
  CHECK(f1[0] == g1.block("q0").form);

  FamilyTemplate g2 = family("5|321;1|002");
  auto f2 = special_fiber(g2);
  REQUIRE(f2.size() == 2);
  CHECK(f2[0] == g2.block("k0").form);
  CHECK(f2[1] == g2.block("c0").form);

  FamilyTemplate g3 = family("5|222;1|200");
  auto f3 = special_fiber(g3);
  REQUIRE(f3.size() == 3);
  CHECK(f3[0] == g3.block("k01").form);
  CHECK(f3[1] == g3.block("k02").form);
  CHECK(f3[2] == g3.block("k03").form);
}

TEST_CASE("first_order matches the transcribed deformations, with signs") {
  SUBCASE("quartic fibration with a (1,2) column") {
    FamilyTemplate tmpl = family("4|41;1|02");
    DeformationReport rep = first_order(tmpl);
    REQUIRE(rep.first_order.size() == 1);
    Poly golden = -(restricted(tmpl, "l1") * restricted(tmpl, "c1"));
    CHECK(rep.first_order[0].first == tmpl.block("q0").form);
    CHECK(rep.first_order[0].second == golden);
    CHECK(rep.first_order[0].second.str() == golden.str());

    // The auxiliary coordinate moves as x4 = -t * l1(x0..x3, 0).
    int x4 = tmpl.ring->var("x4");
    REQUIRE(rep.aux_solutions.count(x4));
    CHECK(rep.aux_solutions.at(x4) ==
          -(Poly::variable(tmpl.ring, tmpl.t_var) * restricted(tmpl, "l1")));
  }

  SUBCASE("quadric+cubic fibrations without auxiliaries") {
    FamilyTemplate a = family("4|32;1|20");
    DeformationReport ra = first_order(a);
    REQUIRE(ra.first_order.size() == 2);
    CHECK(ra.first_order[0].first == a.block("k0").form);
    CHECK(ra.first_order[0].second.is_zero());
    CHECK(ra.first_order[1].first == a.block("c0").form);
    CHECK(ra.first_order[1].second == a.block("c1").form);

    FamilyTemplate b = family("4|32;1|02");
    DeformationReport rb = first_order(b);
    CHECK(rb.first_order[0].second == b.block("k1").form);
    CHECK(rb.first_order[1].second.is_zero());
  }

  SUBCASE("quadric+cubic fibration with one auxiliary") {
    FamilyTemplate tmpl = family("5|321;1|002");
    DeformationReport rep = first_order(tmpl);
    Poly l1 = restricted(tmpl, "l1"), k1 = restricted(tmpl, "k1"),
         l2 = restricted(tmpl, "l2");
    CHECK(rep.first_order[0].second == -(l2 * l1));
    CHECK(rep.first_order[1].second == -(l2 * k1));
    CHECK(rep.first_order[0].second.str() == (-(l2 * l1)).str());
    CHECK(rep.first_order[1].second.str() == (-(l2 * k1)).str());
  }

  SUBCASE("quadric-triple fibrations") {
    FamilyTemplate a = family("5|222;1|200");
    DeformationReport ra = first_order(a);
    CHECK(ra.first_order[0].second == a.block("k1").form);
    CHECK(ra.first_order[1].second.is_zero());
    CHECK(ra.first_order[2].second.is_zero());

    FamilyTemplate b = family("5|222;1|110");
    DeformationReport rb = first_order(b);
    CHECK(rb.first_order[0].second == b.block("k1").form);
    CHECK(rb.first_order[1].second == b.block("k2").form);
    CHECK(rb.first_order[2].second.is_zero());
  }

  SUBCASE("quadric triple over P^7 with two auxiliaries") {
    FamilyTemplate tmpl = family("7|22211;1|00011");
    DeformationReport rep = first_order(tmpl);
    Poly l7 = restricted(tmpl, "l7"), l8 = restricted(tmpl, "l8");
    const char* odd[] = {"l1", "l3", "l5"};
    const char* even[] = {"l2", "l4", "l6"};
    for (int i = 0; i < 3; ++i) {
      Poly golden = -(l7 * restricted(tmpl, odd[i])) -
                    (l8 * restricted(tmpl, even[i]));
      CHECK(rep.first_order[i].second == golden);
      CHECK(rep.first_order[i].second.str() == golden.str());
    }
  }
}

TEST_CASE("back-substitution vanishes mod t^2 for all sixteen templates") {
  for (const auto& type : expected_catalog_types()) {
    FamilyTemplate tmpl = build_family(type);
    DeformationReport rep = first_order(tmpl);

    std::map<int, Poly> reduce;
    reduce.emplace(tmpl.z_var, Poly::constant(tmpl.ring, Rational(1)));
    reduce.emplace(tmpl.y_var, Poly::variable(tmpl.ring, tmpl.t_var));
    for (const auto& [aux, sol] : rep.aux_solutions) reduce.emplace(aux, sol);

    Poly t = Poly::variable(tmpl.ring, tmpl.t_var);
    for (std::size_t e = 0; e < tmpl.equations.size(); ++e) {
      Poly value = tmpl.equations[e].substitute(reduce).truncate_t(2);
      if (e < static_cast<std::size_t>(tmpl.fiber_count)) {
        const auto& [g0, g1] = rep.first_order[e];
        CHECK((value - g0 - t * g1).is_zero());
      } else {
        CHECK(value.is_zero());
      }
    }
    // t = 0 reproduces the special fiber.
    auto fiber = special_fiber(tmpl);
    for (int e = 0; e < tmpl.fiber_count; ++e)
      CHECK(rep.first_order[e].first == fiber[e]);
  }
}

TEST_CASE("span dimensions of the worked cases") {
  struct Want {
    int group, index, span;
  };
  const Want want[] = {
      {1, 1, 35}, {2, 1, 35}, {2, 2, 15}, {2, 3, 50},
      {3, 1, 21}, {3, 2, 42}, {3, 3, 63},
  };
  const auto& cases = span_cases();
  REQUIRE(cases.size() == 7);
  for (std::size_t i = 0; i < cases.size(); ++i) {
    CHECK(cases[i].group == want[i].group);
    CHECK(cases[i].index == want[i].index);
    DeformationReport rep = first_order(build_family(cases[i].type));
    CHECK(rep.subset.span_dim == want[i].span);
    int expected_ambient = cases[i].group == 1 ? 35 : cases[i].group == 2 ? 50 : 63;
    CHECK(rep.subset.ambient_dim == expected_ambient);
  }
}

TEST_CASE("span dimensions across the whole catalog") {
  const std::map<std::string, int> expected = {
      {"3|4;1|2", 35},        {"4|41;1|02", 35},     {"4|41;1|11", 35},
      {"5|411;1|011", 35},    {"4|32;1|20", 35},     {"4|32;1|02", 15},
      {"4|32;1|11", 50},      {"5|321;1|002", 50},   {"5|321;1|011", 50},
      {"5|321;1|101", 50},    {"6|3211;1|0011", 50}, {"5|222;1|200", 21},
      {"5|222;1|110", 42},    {"6|2221;1|0002", 63}, {"6|2221;1|1001", 63},
      {"7|22211;1|00011", 63},
  };
  for (const auto& type : expected_catalog_types()) {
    DeformationReport rep = first_order(build_family(type));
    CHECK(rep.subset.span_dim <= rep.subset.ambient_dim);
    CHECK(rep.subset.span_dim == expected.at(to_compact(type)));
  }
}

TEST_CASE("prime-field rank agrees with the rational rank on the span cases") {
  for (const auto& c : span_cases()) {
    FamilyTemplate tmpl = build_family(c.type);
    DeformationReport rep = first_order(tmpl);
    auto rows = span_generator_rows(rep.subset.generators, tmpl.blocks);
    CHECK(coeff_rank_mod_p(rows, rep.subset.pieces, 32003) ==
          rep.subset.span_dim);
  }
}

TEST_CASE("w_dim") {
  WSpace w3 = w_dim(3);
  CHECK(w3.component_dims == std::vector<int>{35});
  CHECK(w3.total == 35);
  WSpace w4 = w_dim(4);
  CHECK(w4.component_dims == std::vector<int>{15, 35});
  CHECK(w4.total == 50);
  WSpace w5 = w_dim(5);
  CHECK(w5.component_dims == std::vector<int>{21, 21, 21});
  CHECK(w5.total == 63);
  CHECK_THROWS_AS(w_dim(2), Error);
  CHECK_THROWS_AS(w_dim(6), Error);
}

TEST_CASE("span_dim rejects non-multilinear generators") {
  RingPtr ring = Ring::create();
  int x0 = ring->add_var("x0", VarClass::geometric);
  int x1 = ring->add_var("x1", VarClass::geometric);
  Poly l = generic_form(ring, 1, {x0, x1}, "l");
  GenericBlockInfo info{"l", 1, {x0, x1}, l};
  CHECK(span_dim({l}, {{1, {x0, x1}}}, {info}) == 2);
  CHECK_THROWS_AS(span_dim({l * l}, {{2, {x0, x1}}}, {info}), Error);
  Poly atom_free = Poly::variable(ring, x0) * Poly::variable(ring, x1);
  CHECK_THROWS_AS(span_dim({atom_free}, {{2, {x0, x1}}}, {info}), Error);
}
