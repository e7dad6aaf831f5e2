#include "cicy/config.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <numeric>
#include <sstream>

namespace cicy {

namespace {

bool col_desc(const std::vector<int>& a, const std::vector<int>& b) {
  return a > b;  // descending lexicographic
}

std::string describe(const std::vector<int>& col) {
  std::string s = "(";
  for (std::size_t i = 0; i < col.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(col[i]);
  }
  return s + ")";
}

}  // namespace

bool catalog_less(const ConfigMatrix& a, const ConfigMatrix& b) {
  if (a.dims != b.dims) return a.dims < b.dims;
  return a.cols > b.cols;
}

ConfigMatrix make_config(std::vector<int> dims,
                         std::vector<std::vector<int>> columns) {
  for (int n : dims) {
    if (n < 0) throw Error("config: negative factor dimension");
  }
  for (const auto& col : columns) {
    if (col.size() != dims.size())
      throw Error("config: column " + describe(col) + " has wrong length");
    bool nonzero = false;
    for (int g : col) {
      if (g < 0) throw Error("config: negative degree in column " + describe(col));
      if (g > 0) nonzero = true;
    }
    if (!nonzero) throw Error("config: zero column");
  }
  ConfigMatrix cfg{std::move(dims), std::move(columns)};
  if (dimension(cfg) < 0) throw Error("config: more columns than ambient dimension");
  std::sort(cfg.cols.begin(), cfg.cols.end(), col_desc);
  return cfg;
}

ConfigMatrix parse_config(const std::string& text) {
  // Structured form if a "dims" token is present.
  if (text.find("dims") != std::string::npos) {
    std::istringstream in(text);
    std::string line;
    std::vector<int> dims;
    std::vector<std::vector<int>> cols;
    bool saw_dims = false;
    while (std::getline(in, line)) {
      std::istringstream ls(line);
      std::string head;
      if (!(ls >> head) || head[0] == '#') continue;
      std::vector<int> nums;
      int v;
      while (ls >> v) nums.push_back(v);
      if (ls.fail() && !ls.eof()) throw Error("config: bad integer on line '" + line + "'");
      if (head == "dims") {
        if (saw_dims) throw Error("config: duplicate dims line");
        if (nums.empty()) throw Error("config: empty dims line");
        dims = nums;
        saw_dims = true;
      } else if (head == "col") {
        cols.push_back(nums);
      } else {
        throw Error("config: unknown line '" + head + "'");
      }
    }
    if (!saw_dims) throw Error("config: missing dims line");
    return make_config(std::move(dims), std::move(cols));
  }

  // Compact form "n1|d1d2..;n2|e1e2.." (',' accepted for ';' since both
  // '|' and ';' are shell metacharacters).
  std::vector<int> dims;
  std::vector<std::string> degree_rows;
  std::string normalized = text;
  std::replace(normalized.begin(), normalized.end(), ',', ';');
  std::istringstream in(normalized);
  std::string part;
  while (std::getline(in, part, ';')) {
    auto bar = part.find('|');
    if (bar == std::string::npos)
      throw Error("config: compact row '" + part + "' is missing '|'");
    std::string dim_str = part.substr(0, bar);
    std::string degs = part.substr(bar + 1);
    // Trim surrounding whitespace.
    auto strip = [](std::string& s) {
      while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
      while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
    };
    strip(dim_str);
    strip(degs);
    if (dim_str.empty()) throw Error("config: missing dimension in '" + part + "'");
    for (char c : dim_str) {
      if (!std::isdigit(static_cast<unsigned char>(c)))
        throw Error("config: bad dimension '" + dim_str + "'");
    }
    dims.push_back(std::stoi(dim_str));
    for (char c : degs) {
      if (!std::isdigit(static_cast<unsigned char>(c)))
        throw Error("config: bad degree character '" + std::string(1, c) +
                    "' (compact form takes single digits)");
    }
    degree_rows.push_back(degs);
  }
  if (dims.empty()) throw Error("config: empty input");
  std::size_t m = degree_rows[0].size();
  for (const auto& row : degree_rows) {
    if (row.size() != m)
      throw Error("config: compact rows differ in column count");
  }
  std::vector<std::vector<int>> cols(m, std::vector<int>(dims.size(), 0));
  for (std::size_t i = 0; i < dims.size(); ++i) {
    for (std::size_t j = 0; j < m; ++j) cols[j][i] = degree_rows[i][j] - '0';
  }
  return make_config(std::move(dims), std::move(cols));
}

std::string to_compact(const ConfigMatrix& cfg) {
  std::string out;
  for (int i = 0; i < cfg.factors(); ++i) {
    if (i) out += ";";
    out += std::to_string(cfg.dims[i]);
    out += "|";
    for (const auto& col : cfg.cols) {
      if (col[i] > 9) throw Error("config: degree too large for compact form");
      out += static_cast<char>('0' + col[i]);
    }
  }
  return out;
}

std::string to_structured(const ConfigMatrix& cfg) {
  std::ostringstream out;
  out << "dims";
  for (int n : cfg.dims) out << " " << n;
  out << "\n";
  for (const auto& col : cfg.cols) {
    out << "col";
    for (int g : col) out << " " << g;
    out << "\n";
  }
  return out.str();
}

std::vector<int> cy_defect(const ConfigMatrix& cfg) {
  std::vector<int> defect(cfg.dims.size());
  for (std::size_t i = 0; i < cfg.dims.size(); ++i) {
    int row_sum = 0;
    for (const auto& col : cfg.cols) row_sum += col[i];
    defect[i] = cfg.dims[i] + 1 - row_sum;
  }
  return defect;
}

bool is_cy(const ConfigMatrix& cfg) {
  auto d = cy_defect(cfg);
  return std::all_of(d.begin(), d.end(), [](int v) { return v == 0; });
}

int dimension(const ConfigMatrix& cfg) {
  return std::accumulate(cfg.dims.begin(), cfg.dims.end(), 0) - cfg.column_count();
}

ConfigMatrix canonical_form(const ConfigMatrix& cfg) {
  const int k = cfg.factors();
  // Row key: (n_i, multiset of the row's entries, descending). Both parts
  // are invariant under column permutation, so sorting rows by key is a
  // class invariant; residual ties are broken exhaustively below.
  struct RowKey {
    int dim;
    std::vector<int> sorted_row;
  };
  std::vector<RowKey> keys(k);
  for (int i = 0; i < k; ++i) {
    keys[i].dim = cfg.dims[i];
    for (const auto& col : cfg.cols) keys[i].sorted_row.push_back(col[i]);
    std::sort(keys[i].sorted_row.rbegin(), keys[i].sorted_row.rend());
  }
  std::vector<int> order(k);
  std::iota(order.begin(), order.end(), 0);
  auto key_greater = [&](int a, int b) {
    if (keys[a].dim != keys[b].dim) return keys[a].dim > keys[b].dim;
    return keys[a].sorted_row > keys[b].sorted_row;
  };
  std::sort(order.begin(), order.end(), key_greater);

  // Tie groups: maximal runs of equal keys.
  auto key_equal = [&](int a, int b) {
    return keys[a].dim == keys[b].dim && keys[a].sorted_row == keys[b].sorted_row;
  };
  std::vector<std::pair<int, int>> groups;  // [begin, end) into order
  for (int i = 0; i < k;) {
    int j = i + 1;
    while (j < k && key_equal(order[i], order[j])) ++j;
    groups.emplace_back(i, j);
    i = j;
  }

  auto columns_for = [&](const std::vector<int>& row_order) {
    std::vector<std::vector<int>> cols;
    cols.reserve(cfg.cols.size());
    for (const auto& col : cfg.cols) {
      std::vector<int> c(k);
      for (int i = 0; i < k; ++i) c[i] = col[row_order[i]];
      cols.push_back(std::move(c));
    }
    std::sort(cols.begin(), cols.end(), col_desc);
    return cols;
  };

  // Exhaustive minimization over permutations within each tie group.
  std::vector<std::vector<int>> best = columns_for(order);
  std::function<void(std::size_t, std::vector<int>&)> visit =
      [&](std::size_t gi, std::vector<int>& cur) {
        if (gi == groups.size()) {
          auto cand = columns_for(cur);
          if (cand < best) best = std::move(cand);
          return;
        }
        auto [b, e] = groups[gi];
        std::vector<int> slice(cur.begin() + b, cur.begin() + e);
        std::sort(slice.begin(), slice.end());
        do {
          std::copy(slice.begin(), slice.end(), cur.begin() + b);
          visit(gi + 1, cur);
        } while (std::next_permutation(slice.begin(), slice.end()));
        std::sort(cur.begin() + b, cur.begin() + e);
      };
  bool has_tie = std::any_of(groups.begin(), groups.end(),
                             [](auto g) { return g.second - g.first > 1; });
  if (has_tie) {
    std::vector<int> cur = order;
    visit(0, cur);
  }

  ConfigMatrix out;
  out.dims.resize(k);
  for (int i = 0; i < k; ++i) out.dims[i] = cfg.dims[order[i]];
  out.cols = std::move(best);
  return out;
}

bool same_type(const ConfigMatrix& a, const ConfigMatrix& b) {
  return canonical_form(a) == canonical_form(b);
}

const char* to_string(ColumnTag tag) {
  switch (tag) {
    case ColumnTag::hyperplane_reducible: return "hyperplane_reducible";
    case ColumnTag::fiber_collapsing: return "fiber_collapsing";
    case ColumnTag::base_pure: return "base_pure";
    case ColumnTag::mixed: return "mixed";
  }
  return "?";
}

std::vector<ColumnClass> classify_columns(const ConfigMatrix& cfg) {
  std::vector<ColumnClass> out;
  const bool p1_second = cfg.factors() == 2 && cfg.dims[1] == 1;
  for (const auto& col : cfg.cols) {
    int ones = 0, nonzero = 0;
    for (int g : col) {
      if (g == 1) ++ones;
      if (g != 0) ++nonzero;
    }
    ColumnTag tag;
    if (ones == 1 && nonzero == 1) {
      tag = ColumnTag::hyperplane_reducible;
    } else if (p1_second && col[0] == 0 && col[1] >= 1) {
      tag = ColumnTag::fiber_collapsing;
    } else if (cfg.factors() >= 2 ? col.back() == 0
                                  : true) {
      // Degenerate single-factor case: everything non-hyperplane counts
      // as pure in the base.
      tag = ColumnTag::base_pure;
    } else {
      tag = ColumnTag::mixed;
    }
    out.push_back({tag, col});
  }
  return out;
}

ConfigMatrix generic_fiber(const ConfigMatrix& cfg, int factor) {
  if (factor < 0 || factor >= cfg.factors())
    throw Error("generic_fiber: factor index out of range");
  if (cfg.dims[factor] != 1)
    throw Error("generic_fiber: factor is not one-dimensional");
  for (const auto& col : cfg.cols) {
    bool support_in_factor_only = col[factor] >= 1;
    for (int i = 0; i < cfg.factors(); ++i) {
      if (i != factor && col[i] != 0) support_in_factor_only = false;
    }
    if (support_in_factor_only)
      throw Error("generic_fiber: not surjective over that factor (column " +
                  describe(col) + ")");
  }
  if (!is_cy(cfg)) throw Error("generic_fiber: configuration is not Calabi-Yau");

  std::vector<int> dims = cfg.dims;
  dims.erase(dims.begin() + factor);
  std::vector<std::vector<int>> cols;
  for (const auto& col : cfg.cols) {
    std::vector<int> c = col;
    c.erase(c.begin() + factor);
    cols.push_back(std::move(c));
  }
  // Strip hyperplane columns; each strip drops the matching dimension.
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t j = 0; j < cols.size(); ++j) {
      int ones = 0, nonzero = 0, where = -1;
      for (std::size_t i = 0; i < cols[j].size(); ++i) {
        if (cols[j][i] == 1) {
          ++ones;
          where = static_cast<int>(i);
        }
        if (cols[j][i] != 0) ++nonzero;
      }
      if (ones == 1 && nonzero == 1) {
        dims[where] -= 1;
        cols.erase(cols.begin() + j);
        changed = true;
        break;
      }
    }
  }
  return make_config(std::move(dims), std::move(cols));
}

K3Group k3_group(const ConfigMatrix& cfg) {
  static const char* kFibers[3] = {"3|4", "4|32", "5|222"};
  for (int factor = 0; factor < cfg.factors(); ++factor) {
    if (cfg.dims[factor] != 1) continue;
    ConfigMatrix fiber;
    try {
      fiber = generic_fiber(cfg, factor);
    } catch (const Error&) {
      continue;
    }
    ConfigMatrix canon = canonical_form(fiber);
    for (int g = 0; g < 3; ++g) {
      if (canon == canonical_form(parse_config(kFibers[g])))
        return static_cast<K3Group>(g + 1);
    }
  }
  throw Error("k3_group: generic fiber is not a K3 complete intersection type");
}

}  // namespace cicy
