#include "cicy/contraction.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace cicy {

std::vector<ContractionBlock> find_blocks(const ConfigMatrix& cfg) {
  std::vector<ContractionBlock> blocks;
  for (int factor = 0; factor < cfg.factors(); ++factor) {
    const int n = cfg.dims[factor];
    int ones = 0;
    bool only_unit_entries = true;
    for (const auto& col : cfg.cols) {
      if (col[factor] == 1) {
        ++ones;
      } else if (col[factor] != 0) {
        only_unit_entries = false;
        break;
      }
    }
    if (!only_unit_entries || ones != n + 1) continue;
    ContractionBlock b;
    b.factor = factor;
    for (int j = 0; j < cfg.column_count(); ++j) {
      if (cfg.cols[j][factor] != 1) continue;
      b.block_columns.push_back(j);
      std::vector<int> a = cfg.cols[j];
      a.erase(a.begin() + factor);
      b.row_degrees.push_back(std::move(a));
    }
    blocks.push_back(std::move(b));
  }
  return blocks;
}

namespace {

void check_block(const ConfigMatrix& cfg, const ContractionBlock& block) {
  if (block.factor < 0 || block.factor >= cfg.factors())
    throw Error("contract: block factor out of range");
  const int n = cfg.dims[block.factor];
  if (static_cast<int>(block.block_columns.size()) != n + 1 ||
      block.row_degrees.size() != block.block_columns.size())
    throw Error("contract: block does not match factor dimension");
  std::vector<bool> in_block(cfg.cols.size(), false);
  for (std::size_t i = 0; i < block.block_columns.size(); ++i) {
    int j = block.block_columns[i];
    if (j < 0 || j >= cfg.column_count())
      throw Error("contract: block column index out of range");
    if (in_block[j]) throw Error("contract: repeated block column");
    in_block[j] = true;
    if (cfg.cols[j][block.factor] != 1)
      throw Error("contract: block column lacks a unit entry in the factor row");
    std::vector<int> a = cfg.cols[j];
    a.erase(a.begin() + block.factor);
    if (a != block.row_degrees[i])
      throw Error("contract: block row degrees disagree with the matrix");
  }
  for (int j = 0; j < cfg.column_count(); ++j) {
    if (!in_block[j] && cfg.cols[j][block.factor] != 0)
      throw Error("contract: non-block column meets the factor row");
  }
}

std::vector<int> remaining_dims(const ConfigMatrix& cfg, int factor) {
  std::vector<int> dims = cfg.dims;
  dims.erase(dims.begin() + factor);
  return dims;
}

}  // namespace

ContractionResult contract(const ConfigMatrix& cfg, const ContractionBlock& block) {
  check_block(cfg, block);
  const int n = cfg.dims[block.factor];

  ContractionResult res;
  res.source = cfg;
  res.det_multidegree.assign(cfg.factors() - 1, 0);
  for (const auto& a : block.row_degrees) {
    for (std::size_t i = 0; i < a.size(); ++i) res.det_multidegree[i] += a[i];
  }

  std::vector<std::vector<int>> cols;
  std::vector<bool> in_block(cfg.cols.size(), false);
  for (int j : block.block_columns) in_block[j] = true;
  for (int j = 0; j < cfg.column_count(); ++j) {
    if (in_block[j]) continue;
    std::vector<int> c = cfg.cols[j];
    c.erase(c.begin() + block.factor);
    cols.push_back(std::move(c));
  }
  cols.push_back(res.det_multidegree);
  res.target = make_config(remaining_dims(cfg, block.factor), std::move(cols));

  for (int r = 1; r <= n + 1; ++r)
    res.strata.push_back({r, n - r + 2, r - 1});

  if (n == 1) {
    try {
      res.singular_points = singular_count(cfg, block);
    } catch (const Error&) {
      // Expected dimension not zero: leave the count absent.
    }
  }
  return res;
}

BigInt singular_count(const ConfigMatrix& cfg, const ContractionBlock& block) {
  check_block(cfg, block);
  const int n = cfg.dims[block.factor];
  if (n != 1)
    throw Error("singular_count: only 2x2 blocks are in scope (factor dim 1)");

  std::vector<int> ambient = remaining_dims(cfg, block.factor);
  const int ambient_dim = std::accumulate(ambient.begin(), ambient.end(), 0);
  const int conditions = 4 + (cfg.column_count() - 2);
  if (conditions != ambient_dim)
    throw Error("singular_count: expected dimension is not zero");

  // Each of the four matrix entries vanishes: the two row classes enter
  // squared, then the rest of the complete intersection.
  ChowClass prod = ChowClass::unit(ambient);
  for (const auto& a : block.row_degrees)
    prod = prod * ChowClass::of_multidegree(ambient, a).pow(2);
  std::vector<bool> in_block(cfg.cols.size(), false);
  for (int j : block.block_columns) in_block[j] = true;
  for (int j = 0; j < cfg.column_count(); ++j) {
    if (in_block[j]) continue;
    std::vector<int> c = cfg.cols[j];
    c.erase(c.begin() + block.factor);
    prod = prod * ChowClass::of_multidegree(ambient, c);
  }
  return prod.point_count();
}

BigInt singular_count_closed_form(const ConfigMatrix& cfg,
                                  const ContractionBlock& block) {
  check_block(cfg, block);
  if (cfg.dims[block.factor] != 1)
    throw Error("singular_count: only 2x2 blocks are in scope (factor dim 1)");
  std::vector<int> ambient = remaining_dims(cfg, block.factor);
  if (ambient.size() != 1)
    throw Error("singular_count: closed form needs a single remaining factor");
  const int ambient_dim = ambient[0];
  if (4 + (cfg.column_count() - 2) != ambient_dim)
    throw Error("singular_count: expected dimension is not zero");

  const BigInt s(block.row_degrees[0][0]);
  const BigInt t(block.row_degrees[1][0]);
  std::vector<std::vector<int>> rest;
  std::vector<bool> in_block(cfg.cols.size(), false);
  for (int j : block.block_columns) in_block[j] = true;
  for (int j = 0; j < cfg.column_count(); ++j) {
    if (in_block[j]) continue;
    rest.push_back({cfg.cols[j][1 - block.factor]});
  }
  BigInt deg_v = ci_degree(make_config(ambient, std::move(rest)));
  return s * s * t * t * deg_v;
}

ContractionSurvey contraction_survey(const std::vector<ConfigMatrix>& types) {
  ContractionSurvey survey;
  std::map<ConfigMatrix, int> target_counts;
  for (const auto& type : types) {
    ContractionSurveyRow row;
    row.type = canonical_form(type);
    row.group = k3_group(row.type);
    auto blocks = find_blocks(row.type);
    if (!blocks.empty()) {
      row.contractible = true;
      ContractionResult res = contract(row.type, blocks.front());
      row.target = canonical_form(res.target);
      row.singular_points = res.singular_points;
      ++target_counts[*row.target];
      ++survey.contractible_count;
    }
    survey.rows.push_back(std::move(row));
  }
  for (const auto& [target, count] : target_counts)
    survey.targets.emplace_back(target, count);
  std::sort(survey.targets.begin(), survey.targets.end(),
            [](const auto& a, const auto& b) { return catalog_less(a.first, b.first); });
  return survey;
}

}  // namespace cicy
