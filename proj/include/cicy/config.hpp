#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cicy/bigint.hpp"

namespace cicy {

// A configuration matrix: the dimensions n_1..n_k of the projective
// factors together with the multidegree columns of the defining
// polynomials. Columns are kept in a fixed storage order (descending
// lexicographic), so equality is plain structural equality. The type
// itself is only defined up to row and column permutation; use
// canonical_form / same_type for that notion.
struct ConfigMatrix {
  std::vector<int> dims;                // n_1..n_k
  std::vector<std::vector<int>> cols;   // sorted descending lex, each non-zero

  int factors() const { return static_cast<int>(dims.size()); }
  int column_count() const { return static_cast<int>(cols.size()); }

  bool operator==(const ConfigMatrix& o) const {
    return dims == o.dims && cols == o.cols;
  }
  bool operator!=(const ConfigMatrix& o) const { return !(*this == o); }
  // Total order (dims, then columns, lexicographic); used for stable output.
  bool operator<(const ConfigMatrix& o) const {
    if (dims != o.dims) return dims < o.dims;
    return cols < o.cols;
  }
};

// Catalog presentation order: ascending factor dimensions, then
// descending column list.
bool catalog_less(const ConfigMatrix& a, const ConfigMatrix& b);

// Validates and normalizes column storage order. Throws Error on a zero
// column, a length mismatch, negative entries, or negative dimension
// sum(n_i) - m.
ConfigMatrix make_config(std::vector<int> dims,
                         std::vector<std::vector<int>> columns);

// Accepts the compact form "n1|d1d2..;n2|e1e2.." (single-digit degrees)
// or the structured form ("dims ..." line plus "col ..." lines).
ConfigMatrix parse_config(const std::string& text);

// Compact rendering; throws if some degree needs more than one digit.
std::string to_compact(const ConfigMatrix& cfg);
// Structured rendering, parseable by parse_config.
std::string to_structured(const ConfigMatrix& cfg);

// Entry i is n_i + 1 - sum_j g_ij; all zeros iff the type is Calabi-Yau.
std::vector<int> cy_defect(const ConfigMatrix& cfg);
bool is_cy(const ConfigMatrix& cfg);

// sum(n_i) - m.
int dimension(const ConfigMatrix& cfg);

// Distinguished representative of the row/column-permutation class.
// Idempotent; two matrices are equivalent iff canonical forms are equal.
ConfigMatrix canonical_form(const ConfigMatrix& cfg);
bool same_type(const ConfigMatrix& a, const ConfigMatrix& b);

enum class ColumnTag {
  hyperplane_reducible,  // exactly one entry 1, rest 0
  fiber_collapsing,      // (0, b>=1) against a P^1 second factor
  base_pure,             // second entry 0
  mixed,                 // both entries positive
};
const char* to_string(ColumnTag tag);

struct ColumnClass {
  ColumnTag tag;
  std::vector<int> column;
};

// One tag per column. The fiber_collapsing tag only applies to two-factor
// matrices whose second factor is a P^1.
std::vector<ColumnClass> classify_columns(const ConfigMatrix& cfg);

// Deletes the given one-dimensional factor's row and then strips
// degree-one columns (each strip drops the matching factor dimension by
// one) until none remain: the minimal complete-intersection type of the
// fiber over a generic point of that factor.
ConfigMatrix generic_fiber(const ConfigMatrix& cfg, int factor);

enum class K3Group { group1 = 1, group2 = 2, group3 = 3 };

// Group of a P^1-surjective CY threefold type by its generic K3 fiber:
// quartic in P^3, (3,2) in P^4, or (2,2,2) in P^5.
K3Group k3_group(const ConfigMatrix& cfg);

}  // namespace cicy
