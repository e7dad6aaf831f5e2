#pragma once

#include <optional>
#include <vector>

#include "cicy/bigint.hpp"
#include "cicy/chow.hpp"
#include "cicy/config.hpp"

namespace cicy {

// A factor whose row consists of exactly n+1 ones (zeros elsewhere): the
// corresponding equations are linear in that factor's coordinates and can
// be written as a square matrix A acting on them.
struct ContractionBlock {
  int factor = 0;                               // contracted factor, dim n
  std::vector<int> block_columns;               // n+1 indices into cfg.cols
  std::vector<std::vector<int>> row_degrees;    // a_0..a_n over remaining factors
};

// Rank-drop stratum of the block matrix: where rank falls by r, cut out
// by the (n-r+2)-minors; fibers of the contraction over its open part are
// P^(r-1).
struct StratumInfo {
  int r = 1;
  int minor_order = 0;  // n - r + 2
  int fiber_dim = 0;    // r - 1
};

struct ContractionResult {
  ConfigMatrix source;
  ConfigMatrix target;                 // factor row and block columns removed,
                                       // one det-multidegree column appended
  std::vector<int> det_multidegree;    // sum of the block row degrees
  std::vector<StratumInfo> strata;     // r = 1..n+1
  std::optional<BigInt> singular_points;  // filled for 2x2 blocks
};

// All determinantal blocks of cfg, one candidate per factor.
std::vector<ContractionBlock> find_blocks(const ConfigMatrix& cfg);

ContractionResult contract(const ConfigMatrix& cfg, const ContractionBlock& block);

// Point count of the rank-0 locus of a 2x2 block inside the remaining
// complete intersection, computed in the intersection ring:
// class(a_0)^2 * class(a_1)^2 * prod(non-block columns). Requires the
// expected dimension to be zero.
BigInt singular_count(const ConfigMatrix& cfg, const ContractionBlock& block);

// Same number via the closed form s^2 t^2 deg(V) for a 2x2 block over a
// single remaining factor, with V the complete intersection of the
// non-block columns. Independent route used to cross-check singular_count.
BigInt singular_count_closed_form(const ConfigMatrix& cfg,
                                  const ContractionBlock& block);

struct ContractionSurveyRow {
  ConfigMatrix type;                     // canonical
  K3Group group;
  bool contractible = false;
  std::optional<ConfigMatrix> target;    // canonical
  std::optional<BigInt> singular_points;
};

struct ContractionSurvey {
  std::vector<ContractionSurveyRow> rows;
  int contractible_count = 0;
  // Canonical target types with multiplicities, in catalog order.
  std::vector<std::pair<ConfigMatrix, int>> targets;
};

ContractionSurvey contraction_survey(const std::vector<ConfigMatrix>& types);

}  // namespace cicy
