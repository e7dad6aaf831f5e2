#pragma once

#include <map>
#include <string>
#include <vector>

#include "cicy/bigint.hpp"
#include "cicy/config.hpp"

namespace cicy {

// Element of Z[H_1..H_k]/(H_i^(n_i+1)), the intersection ring of
// P^(n_1) x ... x P^(n_k). Exponent vectors are truncated on
// construction and multiplication; zero coefficients are never stored.
class ChowClass {
 public:
  explicit ChowClass(std::vector<int> ambient);

  const std::vector<int>& ambient() const { return ambient_; }
  const std::map<std::vector<int>, BigInt>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  static ChowClass zero(std::vector<int> ambient);
  static ChowClass unit(std::vector<int> ambient);
  static ChowClass hyperplane(std::vector<int> ambient, int factor);
  // sum_i d_i H_i for a multidegree vector d.
  static ChowClass of_multidegree(std::vector<int> ambient,
                                  const std::vector<int>& d);

  ChowClass operator+(const ChowClass& o) const;
  ChowClass operator-(const ChowClass& o) const;
  ChowClass operator*(const ChowClass& o) const;
  ChowClass pow(int e) const;
  bool operator==(const ChowClass& o) const {
    return ambient_ == o.ambient_ && terms_ == o.terms_;
  }

  // Coefficient of prod_i H_i^(n_i): the number of points of a
  // zero-dimensional cycle (0 when the top term is absent).
  BigInt point_count() const;

  std::string str() const;

 private:
  std::vector<int> ambient_;
  std::map<std::vector<int>, BigInt> terms_;

  void add_term(const std::vector<int>& expo, const BigInt& coeff);
  void require_same_ambient(const ChowClass& o) const;
};

// Degree of the complete intersection cut out by cfg's columns under the
// sum-of-hyperplanes polarization: point_count of
// prod_j class(col_j) * (H_1 + ... + H_k)^dim. For one factor this is
// the classical degree.
BigInt ci_degree(const ConfigMatrix& cfg);

}  // namespace cicy
