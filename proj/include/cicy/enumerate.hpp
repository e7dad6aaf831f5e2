#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "cicy/config.hpp"
#include "cicy/contraction.hpp"

namespace cicy {

enum class RejectReason { hyperplane_column, not_p1_surjective };
const char* to_string(RejectReason reason);

struct EnumerationReport {
  int target_dim = 3;
  int n_min = 0;
  int n_max = 0;  // derived admissibility bound on n_1
  std::vector<ConfigMatrix> accepted;  // canonical, catalog order
  std::vector<std::pair<ConfigMatrix, RejectReason>> rejected;  // capped
  long long rejected_hyperplane = 0;
  long long rejected_not_surjective = 0;

  static constexpr std::size_t kRejectedCap = 10000;
};

// All P^1-surjective Calabi-Yau complete-intersection types of the given
// dimension in P^n x P^1. Visits every multiset of m = n + 1 - target_dim
// non-zero columns with row sums (n + 1, 2); candidates containing a
// hyperplane column or a column supported only on the P^1 go to the
// rejection report. The n range is derived: a column with first entry 1
// needs a positive P^1 entry, and the P^1 row sums to 2, so at most two
// such columns exist and n + 1 >= 2(m - 2) + 2, i.e. n <= 2*target_dim + 1.
EnumerationReport enumerate_pn_p1(int target_dim);

// Same search restricted to a single n (probe; n may exceed the bound).
EnumerationReport enumerate_pn_p1_at(int target_dim, int n);

struct CatalogEntry {
  ConfigMatrix type;  // canonical
  K3Group group;
};

// The fixed 16-type golden catalog with group labels, used to cross-check
// the enumerator.
const std::vector<CatalogEntry>& expected_catalog();
std::vector<ConfigMatrix> expected_catalog_types();

struct SurveyRow {
  ConfigMatrix type;  // canonical
  K3Group group;
  bool contractible = false;
  std::optional<ConfigMatrix> target;
  std::optional<BigInt> singular_points;
};

// One row per accepted type, joining group and contraction data.
std::vector<SurveyRow> survey(const EnumerationReport& report);

}  // namespace cicy
