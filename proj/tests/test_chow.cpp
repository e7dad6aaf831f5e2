#include "cicy/chow.hpp"

#include <random>

#include "doctest.h"

using namespace cicy;

namespace {

ChowClass random_class(std::mt19937& rng, const std::vector<int>& ambient) {
  ChowClass c = ChowClass::zero(ambient);
  int terms = 1 + static_cast<int>(rng() % 4);
  for (int i = 0; i < terms; ++i) {
    ChowClass mono = ChowClass::unit(ambient);
    for (std::size_t f = 0; f < ambient.size(); ++f) {
      int e = static_cast<int>(rng() % (ambient[f] + 1));
      mono = mono * ChowClass::hyperplane(ambient, static_cast<int>(f)).pow(e);
    }
    int coeff = static_cast<int>(rng() % 7) - 3;
    ChowClass scaled = ChowClass::zero(ambient);
    for (int j = 0; j < std::abs(coeff); ++j)
      scaled = coeff > 0 ? scaled + mono : scaled - mono;
    c = c + scaled;
  }
  return c;
}

}  // namespace

TEST_CASE("class_of_multidegree") {
  ChowClass a = ChowClass::of_multidegree({4}, {5});
  CHECK(a.str() == "5*H");
  ChowClass b = ChowClass::of_multidegree({3, 1}, {4, 2});
  CHECK(b.str() == "4*H1 + 2*H2");
  CHECK(ChowClass::of_multidegree({3, 1}, {0, 0}).is_zero());
  CHECK_THROWS_AS(ChowClass::of_multidegree({3, 1}, {1}), Error);
}

TEST_CASE("multiplication truncates at H^(n+1)") {
  ChowClass h3 = ChowClass::hyperplane({3}, 0);
  CHECK((h3 * h3.pow(3)).is_zero());
  ChowClass p4 = ChowClass::of_multidegree({4}, {2}) * ChowClass::of_multidegree({4}, {3});
  CHECK(p4.str() == "6*H^2");
  ChowClass h1 = ChowClass::hyperplane({1, 1}, 0);
  ChowClass h2 = ChowClass::hyperplane({1, 1}, 1);
  ChowClass sq = (h1 + h2) * (h1 + h2);
  CHECK(sq == h1 * h2 + h1 * h2);
  CHECK(sq.point_count() == BigInt(2));
  CHECK_THROWS_AS(h3 * h1, Error);
}

TEST_CASE("point_count matches the worked singular-locus products") {
  auto product = [](const std::vector<int>& ambient, const std::vector<int>& degrees) {
    ChowClass p = ChowClass::unit(ambient);
    for (int d : degrees) p = p * ChowClass::of_multidegree(ambient, {d});
    return p.point_count();
  };
  CHECK(product({4}, {4, 1, 4, 1}) == BigInt(16));
  CHECK(product({7}, {2, 2, 2, 1, 1, 1, 1}) == BigInt(8));
  CHECK(product({5}, {2, 2, 2}) == BigInt(0));  // codimension 3, not top
}

TEST_CASE("ci_degree") {
  CHECK(ci_degree(parse_config("4|5")) == BigInt(5));
  CHECK(ci_degree(parse_config("5|222")) == BigInt(8));
  // (2,2,2) fourfold in P^7; oracle: (2H)^3 * H^4 = 8H^7 by direct
  // single-variable expansion.
  long long coeff[8] = {0};
  coeff[0] = 1;
  for (int d : {2, 2, 2, 1, 1, 1, 1}) {
    long long next[8] = {0};
    for (int i = 0; i < 7; ++i) next[i + 1] = coeff[i] * d;
    for (int i = 0; i < 8; ++i) coeff[i] = next[i];
  }
  CHECK(coeff[7] == 8);
  CHECK(ci_degree(parse_config("7|222")) == BigInt(coeff[7]));
  // Degenerate: degree of the ambient space itself is 1.
  CHECK(ci_degree(make_config({4}, {})) == BigInt(1));
}

TEST_CASE("bi-projective hypersurface degree matches the binomial formula") {
  // Degree of a (a,b) hypersurface in P^m x P^n under the sum-of-
  // hyperplanes polarization: the top coefficient of
  // (a*H1 + b*H2)(H1 + H2)^(m+n-1), which expands to
  // a*C(m+n-1, m-1) + b*C(m+n-1, m).
  auto binom = [](int n, int k) {
    if (k < 0 || k > n) return 0ll;
    long long r = 1;
    for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
  };
  std::mt19937 rng(53);
  for (int i = 0; i < 50; ++i) {
    int m = 1 + static_cast<int>(rng() % 4);
    int n = 1 + static_cast<int>(rng() % 3);
    int a = 1 + static_cast<int>(rng() % 4);
    int b = static_cast<int>(rng() % 4);
    ConfigMatrix cfg = make_config({m, n}, {{a, b}});
    long long expect = a * binom(m + n - 1, m - 1) + b * binom(m + n - 1, m);
    CHECK(ci_degree(cfg) == BigInt(expect));
  }
}

TEST_CASE("Bezout in a single projective space") {
  std::mt19937 rng(41);
  for (int i = 0; i < 200; ++i) {
    int n = 2 + static_cast<int>(rng() % 5);
    ChowClass p = ChowClass::unit({n});
    long long expect = 1;
    for (int j = 0; j < n; ++j) {
      int d = 1 + static_cast<int>(rng() % 5);
      expect *= d;
      p = p * ChowClass::of_multidegree({n}, {d});
    }
    CHECK(p.point_count() == BigInt(expect));
  }
}

TEST_CASE("ring axioms on random classes") {
  std::mt19937 rng(43);
  for (int i = 0; i < 100; ++i) {
    std::vector<int> ambient;
    int k = 1 + static_cast<int>(rng() % 2);
    for (int f = 0; f < k; ++f) ambient.push_back(1 + static_cast<int>(rng() % 4));
    ChowClass a = random_class(rng, ambient);
    ChowClass b = random_class(rng, ambient);
    ChowClass c = random_class(rng, ambient);
    CHECK(a * b == b * a);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    for (int f = 0; f < k; ++f) {
      CHECK((ChowClass::hyperplane(ambient, f).pow(ambient[f] + 1)).is_zero());
    }
  }
}

TEST_CASE("point_count is multilinear in each factor class") {
  std::mt19937 rng(47);
  for (int i = 0; i < 50; ++i) {
    std::vector<int> ambient = {2 + static_cast<int>(rng() % 3),
                                1 + static_cast<int>(rng() % 2)};
    ChowClass a = random_class(rng, ambient);
    ChowClass b = random_class(rng, ambient);
    ChowClass rest = random_class(rng, ambient);
    CHECK(((a + b) * rest).point_count() ==
          (a * rest).point_count() + (b * rest).point_count());
  }
}
