#include "cicy/chow.hpp"

#include <algorithm>
#include <sstream>

namespace cicy {

ChowClass::ChowClass(std::vector<int> ambient) : ambient_(std::move(ambient)) {
  for (int n : ambient_) {
    if (n < 0) throw Error("chow: negative factor dimension");
  }
}

ChowClass ChowClass::zero(std::vector<int> ambient) {
  return ChowClass(std::move(ambient));
}

ChowClass ChowClass::unit(std::vector<int> ambient) {
  ChowClass c(std::move(ambient));
  c.add_term(std::vector<int>(c.ambient_.size(), 0), BigInt(1));
  return c;
}

ChowClass ChowClass::hyperplane(std::vector<int> ambient, int factor) {
  ChowClass c(std::move(ambient));
  if (factor < 0 || factor >= static_cast<int>(c.ambient_.size()))
    throw Error("chow: factor index out of range");
  std::vector<int> e(c.ambient_.size(), 0);
  e[factor] = 1;
  c.add_term(e, BigInt(1));
  return c;
}

ChowClass ChowClass::of_multidegree(std::vector<int> ambient,
                                    const std::vector<int>& d) {
  ChowClass c(std::move(ambient));
  if (d.size() != c.ambient_.size())
    throw Error("chow: multidegree length does not match ambient");
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i] < 0) throw Error("chow: negative multidegree entry");
    if (d[i] == 0) continue;
    std::vector<int> e(c.ambient_.size(), 0);
    e[i] = 1;
    c.add_term(e, BigInt(d[i]));
  }
  return c;
}

void ChowClass::add_term(const std::vector<int>& expo, const BigInt& coeff) {
  if (coeff.is_zero()) return;
  for (std::size_t i = 0; i < expo.size(); ++i) {
    if (expo[i] > ambient_[i]) return;  // truncation H_i^(n_i+1) = 0
  }
  auto it = terms_.find(expo);
  if (it == terms_.end()) {
    terms_.emplace(expo, coeff);
  } else {
    it->second += coeff;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void ChowClass::require_same_ambient(const ChowClass& o) const {
  if (ambient_ != o.ambient_) throw Error("chow: ambient mismatch");
}

ChowClass ChowClass::operator+(const ChowClass& o) const {
  require_same_ambient(o);
  ChowClass r = *this;
  for (const auto& [e, c] : o.terms_) r.add_term(e, c);
  return r;
}

ChowClass ChowClass::operator-(const ChowClass& o) const {
  require_same_ambient(o);
  ChowClass r = *this;
  for (const auto& [e, c] : o.terms_) r.add_term(e, -c);
  return r;
}

ChowClass ChowClass::operator*(const ChowClass& o) const {
  require_same_ambient(o);
  ChowClass r(ambient_);
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : o.terms_) {
      std::vector<int> e(ambient_.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  }
  return r;
}

ChowClass ChowClass::pow(int e) const {
  if (e < 0) throw Error("chow: negative power");
  ChowClass r = unit(ambient_);
  for (int i = 0; i < e; ++i) r = r * *this;
  return r;
}

BigInt ChowClass::point_count() const {
  auto it = terms_.find(ambient_);  // exponent vector (n_1..n_k)
  return it == terms_.end() ? BigInt(0) : it->second;
}

std::string ChowClass::str() const {
  if (terms_.empty()) return "0";
  // Print in descending degree, then descending exponents.
  std::vector<std::pair<std::vector<int>, BigInt>> ordered(terms_.begin(),
                                                           terms_.end());
  std::sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
    int da = 0, db = 0;
    for (int e : a.first) da += e;
    for (int e : b.first) db += e;
    if (da != db) return da > db;
    return a.first > b.first;
  });
  std::ostringstream out;
  bool first = true;
  for (const auto& [e, c] : ordered) {
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += ambient_.size() == 1 ? "H" : "H" + std::to_string(i + 1);
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    BigInt a = c.abs();
    if (first) {
      if (c.is_negative()) out << "-";
      first = false;
    } else {
      out << (c.is_negative() ? " - " : " + ");
    }
    if (mono.empty()) {
      out << a.to_string();
    } else {
      if (a != BigInt(1)) out << a.to_string() << "*";
      out << mono;
    }
  }
  return out.str();
}

BigInt ci_degree(const ConfigMatrix& cfg) {
  int d = dimension(cfg);
  if (d < 0) throw Error("ci_degree: negative dimension");
  ChowClass prod = ChowClass::unit(cfg.dims);
  for (const auto& col : cfg.cols)
    prod = prod * ChowClass::of_multidegree(cfg.dims, col);
  ChowClass h = ChowClass::zero(cfg.dims);
  for (int i = 0; i < cfg.factors(); ++i)
    h = h + ChowClass::hyperplane(cfg.dims, i);
  return (prod * h.pow(d)).point_count();
}

}  // namespace cicy
