#include "cicy/enumerate.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace cicy {

const char* to_string(RejectReason reason) {
  switch (reason) {
    case RejectReason::hyperplane_column: return "hyperplane_column";
    case RejectReason::not_p1_surjective: return "not_p1_surjective";
  }
  return "?";
}

namespace {

void record_rejection(EnumerationReport& report, ConfigMatrix candidate,
                      RejectReason reason) {
  if (reason == RejectReason::hyperplane_column) {
    ++report.rejected_hyperplane;
  } else {
    ++report.rejected_not_surjective;
  }
  if (report.rejected.size() < EnumerationReport::kRejectedCap)
    report.rejected.emplace_back(std::move(candidate), reason);
}

// Enumerates multisets of m non-zero columns (a, b) with sum(a) = n + 1 and
// sum(b) = 2, in non-increasing column order so each multiset is visited
// exactly once.
void enumerate_at(int n, int target_dim, EnumerationReport& report,
                  std::set<ConfigMatrix>& seen) {
  const int m = n + 1 - target_dim;
  if (m < 1) return;

  std::vector<std::vector<int>> cols;
  std::function<void(int, int, int, std::pair<int, int>)> rec =
      [&](int slot, int rem_a, int rem_b, std::pair<int, int> limit) {
        if (slot == m) {
          if (rem_a != 0 || rem_b != 0) return;
          ConfigMatrix candidate = make_config({n, 1}, cols);
          bool hyperplane = false, collapsing = false;
          for (const auto& cc : classify_columns(candidate)) {
            if (cc.tag == ColumnTag::hyperplane_reducible) hyperplane = true;
            if (cc.tag == ColumnTag::fiber_collapsing) collapsing = true;
          }
          if (hyperplane) {
            record_rejection(report, std::move(candidate),
                             RejectReason::hyperplane_column);
          } else if (collapsing) {
            record_rejection(report, std::move(candidate),
                             RejectReason::not_p1_surjective);
          } else {
            ConfigMatrix canon = canonical_form(candidate);
            if (seen.insert(canon).second)
              report.accepted.push_back(std::move(canon));
          }
          return;
        }
        for (int a = std::min(rem_a, limit.first); a >= 0; --a) {
          int b_max = a < limit.first ? 2 : limit.second;
          for (int b = std::min(rem_b, b_max); b >= 0; --b) {
            if (a == 0 && b == 0) continue;
            // Remaining slots must be fillable by non-zero columns.
            if (rem_a - a + rem_b - b < m - slot - 1) continue;
            cols.push_back({a, b});
            rec(slot + 1, rem_a - a, rem_b - b, {a, b});
            cols.pop_back();
          }
        }
      };
  rec(0, n + 1, 2, {n + 1, 2});
}

void sort_accepted(EnumerationReport& report) {
  std::sort(report.accepted.begin(), report.accepted.end(), catalog_less);
}

}  // namespace

EnumerationReport enumerate_pn_p1(int target_dim) {
  if (target_dim < 1) throw Error("enumerate: target dimension must be positive");
  EnumerationReport report;
  report.target_dim = target_dim;
  report.n_min = target_dim;          // m = n + 1 - target_dim >= 1
  report.n_max = 2 * target_dim + 1;  // derived bound, see header
  std::set<ConfigMatrix> seen;
  for (int n = report.n_min; n <= report.n_max; ++n)
    enumerate_at(n, target_dim, report, seen);
  sort_accepted(report);
  return report;
}

EnumerationReport enumerate_pn_p1_at(int target_dim, int n) {
  if (target_dim < 1) throw Error("enumerate: target dimension must be positive");
  if (n < 1) throw Error("enumerate: n must be positive");
  EnumerationReport report;
  report.target_dim = target_dim;
  report.n_min = n;
  report.n_max = n;
  std::set<ConfigMatrix> seen;
  enumerate_at(n, target_dim, report, seen);
  sort_accepted(report);
  return report;
}

const std::vector<CatalogEntry>& expected_catalog() {
  static const std::vector<CatalogEntry> catalog = [] {
    struct Raw {
      const char* compact;
      K3Group group;
    };
    static const Raw raw[] = {
        {"3|4;1|2", K3Group::group1},
        {"4|41;1|02", K3Group::group1},
        {"4|41;1|11", K3Group::group1},
        {"5|411;1|011", K3Group::group1},
        {"4|32;1|20", K3Group::group2},
        {"4|32;1|02", K3Group::group2},
        {"4|32;1|11", K3Group::group2},
        {"5|321;1|002", K3Group::group2},
        {"5|321;1|011", K3Group::group2},
        {"5|321;1|101", K3Group::group2},
        {"6|3211;1|0011", K3Group::group2},
        {"5|222;1|200", K3Group::group3},
        {"5|222;1|110", K3Group::group3},
        {"6|2221;1|0002", K3Group::group3},
        {"6|2221;1|0011", K3Group::group3},
        {"7|22211;1|00011", K3Group::group3},
    };
    std::vector<CatalogEntry> entries;
    for (const auto& r : raw)
      entries.push_back({canonical_form(parse_config(r.compact)), r.group});
    std::sort(entries.begin(), entries.end(),
              [](const CatalogEntry& a, const CatalogEntry& b) {
                return catalog_less(a.type, b.type);
              });
    return entries;
  }();
  return catalog;
}

std::vector<ConfigMatrix> expected_catalog_types() {
  std::vector<ConfigMatrix> types;
  for (const auto& entry : expected_catalog()) types.push_back(entry.type);
  return types;
}

std::vector<SurveyRow> survey(const EnumerationReport& report) {
  std::vector<SurveyRow> rows;
  for (const auto& type : report.accepted) {
    SurveyRow row;
    row.type = type;
    row.group = k3_group(type);
    auto blocks = find_blocks(type);
    if (!blocks.empty()) {
      row.contractible = true;
      ContractionResult res = contract(type, blocks.front());
      row.target = canonical_form(res.target);
      row.singular_points = res.singular_points;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace cicy
