#include "cicy/config.hpp"

#include <algorithm>
#include <random>

#include "doctest.h"

#include "cicy/enumerate.hpp"

using namespace cicy;

namespace {

// Independent equivalence oracle: try every row permutation and compare
// column multisets (which is exactly an exhaustive column-permutation
// search). Deliberately shares nothing with canonical_form.
bool oracle_same_type(const ConfigMatrix& a, const ConfigMatrix& b) {
  if (a.dims.size() != b.dims.size() || a.cols.size() != b.cols.size())
    return false;
  const int k = a.factors();
  std::vector<int> perm(k);
  for (int i = 0; i < k; ++i) perm[i] = i;
  std::sort(perm.begin(), perm.end());
  do {
    bool dims_match = true;
    for (int i = 0; i < k; ++i) {
      if (a.dims[perm[i]] != b.dims[i]) dims_match = false;
    }
    if (!dims_match) continue;
    std::vector<std::vector<int>> pa, pb = b.cols;
    for (const auto& col : a.cols) {
      std::vector<int> c(k);
      for (int i = 0; i < k; ++i) c[i] = col[perm[i]];
      pa.push_back(std::move(c));
    }
    std::sort(pa.begin(), pa.end());
    std::sort(pb.begin(), pb.end());
    if (pa == pb) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

ConfigMatrix random_matrix(std::mt19937& rng) {
  for (;;) {
    int k = 1 + static_cast<int>(rng() % 3);
    int m = 1 + static_cast<int>(rng() % 6);
    std::vector<int> dims(k);
    for (int& d : dims) d = 1 + static_cast<int>(rng() % 5);
    std::vector<std::vector<int>> cols(m, std::vector<int>(k, 0));
    for (auto& col : cols) {
      for (int& g : col) g = static_cast<int>(rng() % 4);
      if (std::all_of(col.begin(), col.end(), [](int g) { return g == 0; }))
        col[rng() % k] = 1 + static_cast<int>(rng() % 3);
    }
    int total = 0;
    for (int d : dims) total += d;
    if (total < m) continue;
    return make_config(std::move(dims), std::move(cols));
  }
}

ConfigMatrix shuffled_copy(const ConfigMatrix& a, std::mt19937& rng) {
  const int k = a.factors();
  std::vector<int> perm(k);
  for (int i = 0; i < k; ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<int> dims(k);
  for (int i = 0; i < k; ++i) dims[i] = a.dims[perm[i]];
  std::vector<std::vector<int>> cols;
  for (const auto& col : a.cols) {
    std::vector<int> c(k);
    for (int i = 0; i < k; ++i) c[i] = col[perm[i]];
    cols.push_back(std::move(c));
  }
  std::shuffle(cols.begin(), cols.end(), rng);
  return make_config(std::move(dims), std::move(cols));
}

}  // namespace

TEST_CASE("parse_config handles compact and structured forms") {
  ConfigMatrix a = parse_config("3|4;1|2");
  CHECK(a.dims == std::vector<int>{3, 1});
  CHECK(a.cols == std::vector<std::vector<int>>{{4, 2}});

  ConfigMatrix b = parse_config("4|41;1|11");
  CHECK(b.dims == std::vector<int>{4, 1});
  CHECK(b.cols == std::vector<std::vector<int>>{{4, 1}, {1, 1}});

  ConfigMatrix c = parse_config("2|3");
  CHECK(c.dims == std::vector<int>{2});
  CHECK(c.cols == std::vector<std::vector<int>>{{3}});

  ConfigMatrix d = parse_config("dims 4 1\ncol 4 1\ncol 1 1\n");
  CHECK(d == b);
  CHECK(parse_config(to_structured(b)) == b);
  CHECK(to_compact(b) == "4|41;1|11");

  // The structured form has no digit restriction; the compact renderer
  // refuses what it cannot express.
  ConfigMatrix wide = parse_config("dims 10\ncol 11\n");
  CHECK(wide.cols == std::vector<std::vector<int>>{{11}});
  CHECK_THROWS_AS(to_compact(wide), Error);
  CHECK(parse_config(to_structured(wide)) == wide);

  CHECK_THROWS_AS(parse_config("4|4x;1|11"), Error);
  CHECK_THROWS_AS(parse_config("4|41 1|11"), Error);
  CHECK_THROWS_AS(parse_config("2|00"), Error);     // zero column
  CHECK_THROWS_AS(parse_config("2|111"), Error);    // negative dimension
  CHECK_THROWS_AS(parse_config("4|41;1|1"), Error); // ragged rows
  CHECK_THROWS_AS(parse_config("dims 2\ncol 0\n"), Error);
}

TEST_CASE("cy_defect spots the Calabi-Yau condition") {
  CHECK(cy_defect(parse_config("4|5")) == std::vector<int>{0});
  CHECK(cy_defect(parse_config("3|4;1|2")) == std::vector<int>{0, 0});
  CHECK(cy_defect(parse_config("3|3;1|2")) == std::vector<int>{1, 0});
  CHECK(is_cy(parse_config("3|4;1|2")));
  CHECK_FALSE(is_cy(parse_config("3|3;1|2")));
  // Degenerate: the ambient space itself is never CY.
  ConfigMatrix ambient = make_config({2}, {});
  CHECK(cy_defect(ambient) == std::vector<int>{3});
  CHECK_FALSE(is_cy(ambient));
}

TEST_CASE("dimension") {
  CHECK(dimension(parse_config("3|4;1|2")) == 3);
  CHECK(dimension(parse_config("7|22211;1|00011")) == 3);
  CHECK(dimension(parse_config("4|5")) == 3);
  CHECK(dimension(make_config({2}, {})) == 2);
}

TEST_CASE("cy_defect is invariant under column order and tracks row swaps") {
  std::mt19937 rng(101);
  for (int i = 0; i < 50; ++i) {
    ConfigMatrix a = random_matrix(rng);
    ConfigMatrix b = shuffled_copy(a, rng);
    auto da = cy_defect(a), db = cy_defect(b);
    std::sort(da.begin(), da.end());
    std::sort(db.begin(), db.end());
    CHECK(da == db);
  }
}

TEST_CASE("canonical_form identifies the aliased catalog type") {
  // The same type appears with column orders 0011 and 1001.
  ConfigMatrix a = parse_config("6|2221;1|0011");
  ConfigMatrix b = parse_config("6|2221;1|1001");
  CHECK(canonical_form(a) == canonical_form(b));
  CHECK(same_type(a, b));
  // 0002 is a genuinely different type.
  CHECK_FALSE(same_type(a, parse_config("6|2221;1|0002")));
}

TEST_CASE("canonical_form is idempotent and permutation-invariant") {
  std::mt19937 rng(202);
  for (int i = 0; i < 100; ++i) {
    ConfigMatrix a = random_matrix(rng);
    ConfigMatrix c = canonical_form(a);
    CHECK(canonical_form(c) == c);
    CHECK(canonical_form(shuffled_copy(a, rng)) == c);
  }
}

TEST_CASE("same_type distinguishes aliased and distinct forms") {
  CHECK(same_type(parse_config("5|321;1|011"), parse_config("5|231;1|101")));
  CHECK_FALSE(same_type(parse_config("5|321;1|011"), parse_config("5|321;1|101")));
  ConfigMatrix x = parse_config("4|41;1|02");
  CHECK(same_type(x, x));
}

TEST_CASE("same_type agrees with the exhaustive permutation oracle") {
  // Catalog pairs.
  auto catalog = expected_catalog_types();
  for (const auto& a : catalog) {
    for (const auto& b : catalog) {
      CHECK(same_type(a, b) == oracle_same_type(a, b));
    }
  }
  // 100 seeded random matrices (<= 3 rows, <= 6 columns).
  std::mt19937 rng(303);
  std::vector<ConfigMatrix> pool;
  for (int i = 0; i < 100; ++i) pool.push_back(random_matrix(rng));
  for (std::size_t i = 0; i < pool.size(); ++i) {
    ConfigMatrix twin = shuffled_copy(pool[i], rng);
    CHECK(same_type(pool[i], twin));
    CHECK(oracle_same_type(pool[i], twin));
    const ConfigMatrix& other = pool[(i + 1) % pool.size()];
    CHECK(same_type(pool[i], other) == oracle_same_type(pool[i], other));
  }
}

TEST_CASE("classify_columns") {
  auto tags = [](const ConfigMatrix& cfg) {
    std::vector<ColumnTag> out;
    for (const auto& cc : classify_columns(cfg)) out.push_back(cc.tag);
    return out;
  };
  CHECK(tags(parse_config("4|41;1|02")) ==
        std::vector<ColumnTag>{ColumnTag::base_pure, ColumnTag::mixed});
  CHECK(tags(make_config({1, 1}, {{2, 0}, {0, 2}})) ==
        std::vector<ColumnTag>{ColumnTag::base_pure, ColumnTag::fiber_collapsing});
  CHECK(tags(make_config({2, 1}, {{1, 0}, {2, 2}})) ==
        std::vector<ColumnTag>{ColumnTag::mixed, ColumnTag::hyperplane_reducible});
  CHECK(tags(make_config({2, 1}, {{0, 1}, {3, 1}})) ==
        std::vector<ColumnTag>{ColumnTag::mixed, ColumnTag::hyperplane_reducible});
}

TEST_CASE("generic_fiber reduces to the minimal fiber type") {
  CHECK(canonical_form(generic_fiber(parse_config("7|22211;1|00011"), 1)) ==
        canonical_form(parse_config("5|222")));
  CHECK(canonical_form(generic_fiber(parse_config("4|41;1|02"), 1)) ==
        canonical_form(parse_config("3|4")));
  CHECK(canonical_form(generic_fiber(parse_config("5|321;1|002"), 1)) ==
        canonical_form(parse_config("4|32")));

  CHECK_THROWS_AS(generic_fiber(parse_config("3|4;1|2"), 0), Error);  // not P^1
  CHECK_THROWS_AS(generic_fiber(make_config({1, 1}, {{0, 2}, {2, 0}}), 1),
                  Error);  // not surjective
  CHECK_THROWS_AS(generic_fiber(parse_config("3|3;1|2"), 1), Error);  // not CY
}

TEST_CASE("generic_fiber preserves CY and drops dimension by one on the catalog") {
  for (const auto& type : expected_catalog_types()) {
    ConfigMatrix fiber = generic_fiber(type, 1);
    CHECK(is_cy(fiber));
    CHECK(dimension(fiber) == dimension(type) - 1);
    CHECK(dimension(fiber) == 2);
  }
}

TEST_CASE("k3_group on representative types") {
  CHECK(k3_group(parse_config("3|4;1|2")) == K3Group::group1);
  CHECK(k3_group(parse_config("6|3211;1|0011")) == K3Group::group2);
  CHECK(k3_group(parse_config("5|222;1|110")) == K3Group::group3);
  CHECK_THROWS_AS(k3_group(parse_config("2|21;1|11")), Error);
}
