#include "cicy/poly.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

namespace cicy {

std::shared_ptr<Ring> Ring::create() {
  return std::shared_ptr<Ring>(new Ring());
}

int Ring::add_var(const std::string& name, VarClass cls) {
  if (name.empty()) throw Error("ring: empty variable name");
  if (index_.count(name)) throw Error("ring: duplicate variable '" + name + "'");
  if (cls == VarClass::deformation) {
    if (t_) throw Error("ring: a deformation variable already exists");
    t_ = static_cast<int>(vars_.size());
  }
  index_[name] = static_cast<int>(vars_.size());
  vars_.push_back({name, cls});
  return static_cast<int>(vars_.size()) - 1;
}

int Ring::var(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) throw Error("ring: unknown variable '" + name + "'");
  return it->second;
}

std::optional<int> Ring::find(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

const Variable& Ring::at(int idx) const {
  if (idx < 0 || idx >= size()) throw Error("ring: variable index out of range");
  return vars_[idx];
}

int total_degree(const Monomial& m) {
  return std::accumulate(m.begin(), m.end(), 0);
}

bool DegLexLess::operator()(const Monomial& a, const Monomial& b) const {
  int da = total_degree(a), db = total_degree(b);
  if (da != db) return da < db;
  std::size_t n = std::max(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    int ea = i < a.size() ? a[i] : 0;
    int eb = i < b.size() ? b[i] : 0;
    if (ea != eb) return ea < eb;
  }
  return false;
}

namespace {

void trim_monomial(Monomial& m) {
  while (!m.empty() && m.back() == 0) m.pop_back();
}

Monomial mul_monomial(const Monomial& a, const Monomial& b) {
  Monomial r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  trim_monomial(r);
  return r;
}

}  // namespace

Poly::Poly(RingPtr ring) : ring_(std::move(ring)) {
  if (!ring_) throw Error("poly: null ring");
}

Poly Poly::constant(RingPtr ring, Rational value) {
  Poly p(std::move(ring));
  p.add_term({}, value);
  return p;
}

Poly Poly::variable(RingPtr ring, int idx) {
  Poly p(std::move(ring));
  p.ring_->at(idx);  // bounds check
  Monomial m(idx + 1, 0);
  m[idx] = 1;
  p.add_term(std::move(m), Rational(1));
  return p;
}

Poly Poly::monomial(RingPtr ring, Monomial m, Rational coeff) {
  Poly p(std::move(ring));
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] < 0) throw Error("poly: negative exponent");
    if (m[i] > 0) p.ring_->at(static_cast<int>(i));  // bounds check
  }
  p.add_term(std::move(m), coeff);
  return p;
}

void Poly::add_term(Monomial m, const Rational& c) {
  if (c.is_zero()) return;
  trim_monomial(m);
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(std::move(m), c);
  } else {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void Poly::require_same_ring(const Poly& o) const {
  if (ring_ != o.ring_) throw Error("poly: ring mismatch");
}

Poly Poly::operator-() const {
  Poly r(ring_);
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
  return r;
}

Poly Poly::operator+(const Poly& o) const {
  require_same_ring(o);
  Poly r = *this;
  for (const auto& [m, c] : o.terms_) r.add_term(m, c);
  return r;
}

Poly Poly::operator-(const Poly& o) const {
  require_same_ring(o);
  Poly r = *this;
  for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
  return r;
}

Poly Poly::operator*(const Poly& o) const {
  require_same_ring(o);
  Poly r(ring_);
  for (const auto& [ma, ca] : terms_) {
    for (const auto& [mb, cb] : o.terms_) {
      r.add_term(mul_monomial(ma, mb), ca * cb);
    }
  }
  return r;
}

Poly Poly::scaled(const Rational& c) const {
  Poly r(ring_);
  if (c.is_zero()) return r;
  for (const auto& [m, v] : terms_) r.terms_.emplace(m, v * c);
  return r;
}

Poly Poly::pow(int e) const {
  if (e < 0) throw Error("poly: negative power");
  Poly r = constant(ring_, Rational(1));
  for (int i = 0; i < e; ++i) r = r * *this;
  return r;
}

bool Poly::operator==(const Poly& o) const {
  return ring_ == o.ring_ && terms_ == o.terms_;
}

Poly Poly::substitute(const std::map<int, Poly>& bindings) const {
  for (const auto& [v, p] : bindings) {
    ring_->at(v);
    if (p.ring_ != ring_) throw Error("poly: substitution ring mismatch");
  }
  Poly result(ring_);
  for (const auto& [m, c] : terms_) {
    Poly term = Poly::constant(ring_, c);
    Monomial passthrough;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      auto it = bindings.find(static_cast<int>(i));
      if (it == bindings.end()) {
        if (passthrough.size() <= i) passthrough.resize(i + 1, 0);
        passthrough[i] = m[i];
      } else {
        term = term * it->second.pow(m[i]);
      }
    }
    if (total_degree(passthrough) > 0) {
      Poly mono(ring_);
      mono.add_term(std::move(passthrough), Rational(1));
      term = term * mono;
    }
    result += term;
  }
  return result;
}

Poly Poly::truncate_t(int order) const {
  if (order < 0) throw Error("poly: negative truncation order");
  auto t = ring_->deformation_var();
  if (!t) throw Error("poly: ring has no deformation variable");
  Poly r(ring_);
  for (const auto& [m, c] : terms_) {
    int e = static_cast<std::size_t>(*t) < m.size() ? m[*t] : 0;
    if (e < order) r.terms_.emplace(m, c);
  }
  return r;
}

Poly Poly::coeff_of_power(int var, int k) const {
  ring_->at(var);
  Poly r(ring_);
  for (const auto& [m, c] : terms_) {
    int e = static_cast<std::size_t>(var) < m.size() ? m[var] : 0;
    if (e != k) continue;
    Monomial rest = m;
    if (static_cast<std::size_t>(var) < rest.size()) rest[var] = 0;
    trim_monomial(rest);
    r.add_term(std::move(rest), c);
  }
  return r;
}

Rational Poly::coeff(const Monomial& m) const {
  Monomial key = m;
  trim_monomial(key);
  auto it = terms_.find(key);
  return it == terms_.end() ? Rational(0) : it->second;
}

int Poly::degree_in_var(int var) const {
  int deg = 0;
  for (const auto& [m, c] : terms_) {
    if (static_cast<std::size_t>(var) < m.size()) deg = std::max(deg, m[var]);
  }
  return deg;
}

std::optional<int> Poly::homogeneous_degree_in(const std::vector<int>& vars) const {
  std::optional<int> deg;
  for (const auto& [m, c] : terms_) {
    int d = 0;
    for (int v : vars) {
      if (static_cast<std::size_t>(v) < m.size()) d += m[v];
    }
    if (!deg) {
      deg = d;
    } else if (*deg != d) {
      return std::nullopt;
    }
  }
  return deg ? deg : std::optional<int>(0);
}

bool Poly::supported_on(const std::vector<int>& vars) const {
  std::vector<bool> ok(ring_->size(), false);
  for (int v : vars) ok[v] = true;
  for (const auto& [m, c] : terms_) {
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] != 0 && !ok[i]) return false;
    }
  }
  return true;
}

std::string Poly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    // Atoms print first (they play the role of coefficients), then the
    // remaining variables, all in ring order.
    std::string mono;
    auto emit = [&](std::size_t i) {
      if (!mono.empty()) mono += "*";
      mono += ring_->at(static_cast<int>(i)).name;
      if (m[i] > 1) mono += "^" + std::to_string(m[i]);
    };
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] > 0 && ring_->at(static_cast<int>(i)).cls == VarClass::coefficient_atom)
        emit(i);
    }
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] > 0 && ring_->at(static_cast<int>(i)).cls != VarClass::coefficient_atom)
        emit(i);
    }
    Rational a = c.num().is_negative() ? -c : c;
    bool negative = c.num().is_negative();
    if (first) {
      if (negative) out << "-";
      first = false;
    } else {
      out << (negative ? " - " : " + ");
    }
    if (mono.empty()) {
      out << a.to_string();
    } else {
      if (a != Rational(1)) out << a.to_string() << "*";
      out << mono;
    }
  }
  return out.str();
}

std::vector<Monomial> monomials_of_degree(int degree, const std::vector<int>& vars) {
  if (degree < 0) throw Error("poly: negative degree");
  std::vector<Monomial> out;
  Monomial cur;
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int rem) {
    if (i + 1 == vars.size()) {
      Monomial m = cur;
      if (static_cast<std::size_t>(vars[i]) >= m.size()) m.resize(vars[i] + 1, 0);
      m[vars[i]] = rem;
      trim_monomial(m);
      out.push_back(std::move(m));
      return;
    }
    for (int e = rem; e >= 0; --e) {
      Monomial saved = cur;
      if (static_cast<std::size_t>(vars[i]) >= cur.size()) cur.resize(vars[i] + 1, 0);
      cur[vars[i]] = e;
      rec(i + 1, rem - e);
      cur = std::move(saved);
    }
  };
  if (vars.empty()) {
    if (degree == 0) out.push_back({});
    return out;
  }
  rec(0, degree);
  return out;
}

Poly generic_form(const RingPtr& ring, int degree, const std::vector<int>& vars,
                  const std::string& tag) {
  for (int v : vars) {
    if (ring->at(v).cls != VarClass::geometric)
      throw Error("generic_form: variables must be geometric");
  }
  auto monos = monomials_of_degree(degree, vars);
  Poly p(ring);
  for (std::size_t k = 0; k < monos.size(); ++k) {
    int atom = ring->add_var(tag + "_" + std::to_string(k), VarClass::coefficient_atom);
    Monomial m = monos[k];
    if (static_cast<std::size_t>(atom) >= m.size()) m.resize(atom + 1, 0);
    m[atom] = 1;
    p.add_term(std::move(m), Rational(1));
  }
  return p;
}

int graded_piece_dim(const GradedPiece& piece) {
  return static_cast<int>(monomials_of_degree(piece.degree, piece.vars).size());
}

namespace {

std::vector<std::vector<Rational>> coefficient_matrix(
    const std::vector<std::vector<Poly>>& vectors,
    const std::vector<GradedPiece>& pieces) {
  std::vector<std::vector<Monomial>> bases;
  std::size_t width = 0;
  for (const auto& piece : pieces) {
    bases.push_back(monomials_of_degree(piece.degree, piece.vars));
    width += bases.back().size();
  }
  std::vector<std::vector<Rational>> matrix;
  for (const auto& vec : vectors) {
    if (vec.size() != pieces.size())
      throw Error("coeff_rank: vector component count mismatch");
    std::vector<Rational> row;
    row.reserve(width);
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      const Poly& comp = vec[i];
      if (!comp.supported_on(pieces[i].vars))
        throw Error("coeff_rank: component uses variables outside its piece");
      auto deg = comp.homogeneous_degree_in(pieces[i].vars);
      if (!comp.is_zero() && (!deg || *deg != pieces[i].degree))
        throw Error("coeff_rank: component degree mismatch");
      for (const auto& m : bases[i]) row.push_back(comp.coeff(m));
    }
    matrix.push_back(std::move(row));
  }
  return matrix;
}

std::vector<std::vector<BigInt>> cleared(const std::vector<std::vector<Rational>>& m) {
  std::vector<std::vector<BigInt>> out;
  for (const auto& row : m) {
    BigInt lcm(1);
    for (const auto& r : row) {
      if (r.is_zero()) continue;
      lcm = BigInt::divexact(lcm * r.den(), BigInt::gcd(lcm, r.den()));
    }
    std::vector<BigInt> cleared_row;
    cleared_row.reserve(row.size());
    for (const auto& r : row)
      cleared_row.push_back(r.num() * BigInt::divexact(lcm, r.den()));
    out.push_back(std::move(cleared_row));
  }
  return out;
}

}  // namespace

int bareiss_rank(std::vector<std::vector<BigInt>> m) {
  if (m.empty()) return 0;
  const std::size_t rows = m.size(), cols = m[0].size();
  for (const auto& row : m) {
    if (row.size() != cols) throw Error("bareiss: ragged matrix");
  }
  BigInt prev(1);
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rank;
    while (pivot < rows && m[pivot][c].is_zero()) ++pivot;
    if (pivot == rows) continue;
    std::swap(m[pivot], m[rank]);
    for (std::size_t i = rank + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        m[i][j] = BigInt::divexact(m[rank][c] * m[i][j] - m[i][c] * m[rank][j], prev);
      }
      m[i][c] = BigInt(0);
    }
    prev = m[rank][c];
    ++rank;
  }
  return static_cast<int>(rank);
}

int coeff_rank(const std::vector<std::vector<Poly>>& vectors,
               const std::vector<GradedPiece>& pieces) {
  return bareiss_rank(cleared(coefficient_matrix(vectors, pieces)));
}

int coeff_rank_mod_p(const std::vector<std::vector<Poly>>& vectors,
                     const std::vector<GradedPiece>& pieces, int p) {
  if (p < 2) throw Error("coeff_rank_mod_p: bad modulus");
  auto rows = cleared(coefficient_matrix(vectors, pieces));
  const BigInt bp(p);
  std::vector<std::vector<long long>> m;
  for (const auto& row : rows) {
    std::vector<long long> r;
    for (const auto& v : row) {
      long long x = (v % bp).to_int64();
      if (x < 0) x += p;
      r.push_back(x);
    }
    m.push_back(std::move(r));
  }
  if (m.empty()) return 0;
  const std::size_t nrows = m.size(), ncols = m[0].size();
  auto inv_mod = [&](long long a) {
    long long t = 0, newt = 1, r = p, newr = a % p;
    while (newr != 0) {
      long long q = r / newr;
      std::swap(t -= q * newt, newt);
      std::swap(r -= q * newr, newr);
    }
    return (t % p + p) % p;
  };
  std::size_t rank = 0;
  for (std::size_t c = 0; c < ncols && rank < nrows; ++c) {
    std::size_t pivot = rank;
    while (pivot < nrows && m[pivot][c] == 0) ++pivot;
    if (pivot == nrows) continue;
    std::swap(m[pivot], m[rank]);
    long long inv = inv_mod(m[rank][c]);
    for (std::size_t i = rank + 1; i < nrows; ++i) {
      if (m[i][c] == 0) continue;
      long long f = m[i][c] * inv % p;
      for (std::size_t j = c; j < ncols; ++j)
        m[i][j] = ((m[i][j] - f * m[rank][j]) % p + p) % p;
    }
    ++rank;
  }
  return static_cast<int>(rank);
}

}  // namespace cicy
