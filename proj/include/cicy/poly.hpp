#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cicy/bigint.hpp"

namespace cicy {

enum class VarClass { geometric, coefficient_atom, deformation };

struct Variable {
  std::string name;
  VarClass cls;
};

// Append-only variable table shared by the polynomials of one
// computation. Growing the table never invalidates existing polynomials;
// at most one deformation variable is allowed.
class Ring {
 public:
  static std::shared_ptr<Ring> create();

  int add_var(const std::string& name, VarClass cls);
  int var(const std::string& name) const;  // throws if absent
  std::optional<int> find(const std::string& name) const;
  const Variable& at(int idx) const;
  int size() const { return static_cast<int>(vars_.size()); }
  std::optional<int> deformation_var() const { return t_; }

 private:
  Ring() = default;
  std::vector<Variable> vars_;
  std::map<std::string, int> index_;
  std::optional<int> t_;
};

using RingPtr = std::shared_ptr<Ring>;

// Exponent vector over ring indices, trailing zeros trimmed.
using Monomial = std::vector<int>;

int total_degree(const Monomial& m);

// Degree first, then lexicographic on exponents with variable 0 most
// significant. Canonical printing walks this order downwards.
struct DegLexLess {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

// Sparse multivariate polynomial with exact rational coefficients.
class Poly {
 public:
  using TermMap = std::map<Monomial, Rational, DegLexLess>;

  explicit Poly(RingPtr ring);
  static Poly constant(RingPtr ring, Rational value);
  static Poly variable(RingPtr ring, int idx);
  static Poly monomial(RingPtr ring, Monomial m, Rational coeff);

  const RingPtr& ring() const { return ring_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Poly operator-() const;
  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  Poly scaled(const Rational& c) const;
  Poly pow(int e) const;
  bool operator==(const Poly& o) const;
  bool operator!=(const Poly& o) const { return !(*this == o); }

  // Simultaneous substitution; a ring homomorphism.
  Poly substitute(const std::map<int, Poly>& bindings) const;

  // Drops terms whose deformation-variable exponent is >= order.
  Poly truncate_t(int order) const;
  // Terms with exponent exactly k in var, with var^k divided out.
  Poly coeff_of_power(int var, int k) const;

  Rational coeff(const Monomial& m) const;
  int degree_in_var(int var) const;
  // Common degree of all terms counting only the listed variables;
  // nullopt when the polynomial is not homogeneous there (zero counts as
  // any degree and returns 0).
  std::optional<int> homogeneous_degree_in(const std::vector<int>& vars) const;
  // True when every variable occurring belongs to the list.
  bool supported_on(const std::vector<int>& vars) const;

  std::string str() const;

 private:
  RingPtr ring_;
  TermMap terms_;

  void add_term(Monomial m, const Rational& c);
  void require_same_ring(const Poly& o) const;
  friend Poly generic_form(const RingPtr&, int, const std::vector<int>&,
                           const std::string&);
};

// All monomials of the given degree in the given variables, descending
// deglex.
std::vector<Monomial> monomials_of_degree(int degree, const std::vector<int>& vars);

// Registers one fresh coefficient atom "tag_k" per degree-d monomial in
// vars and returns sum_k tag_k * monomial_k. The atom count is
// C(|vars| - 1 + degree, degree).
Poly generic_form(const RingPtr& ring, int degree, const std::vector<int>& vars,
                  const std::string& tag);

// A graded piece: homogeneous forms of one degree in one variable set.
struct GradedPiece {
  int degree;
  std::vector<int> vars;
};

int graded_piece_dim(const GradedPiece& piece);

// Rank over the rationals of the matrix whose rows are the
// monomial-coefficient expansions of the given vectors against the
// product of graded pieces. Components must be homogeneous of the stated
// degree and supported on the stated variables.
int coeff_rank(const std::vector<std::vector<Poly>>& vectors,
               const std::vector<GradedPiece>& pieces);

// Same rank over the prime field F_p; fast cross-check only, never the
// authority.
int coeff_rank_mod_p(const std::vector<std::vector<Poly>>& vectors,
                     const std::vector<GradedPiece>& pieces, int p);

// Fraction-free Gaussian elimination (Bareiss) rank of an integer matrix.
int bareiss_rank(std::vector<std::vector<BigInt>> m);

}  // namespace cicy
