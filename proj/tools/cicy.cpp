// Command-line front end: type enumeration, classification, determinantal
// contractions, intersection-ring point counts, first-order deformation
// reports, and span computations, with stable text output and a --json
// mode for machine consumption.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#ifdef _WIN32
#include <io.h>
#define CICY_ISATTY _isatty(1)
#else
#include <unistd.h>
#define CICY_ISATTY isatty(1)
#endif

#include "CLI11.hpp"
#include "json.hpp"

#include "cicy/chow.hpp"
#include "cicy/config.hpp"
#include "cicy/contraction.hpp"
#include "cicy/deformation.hpp"
#include "cicy/enumerate.hpp"
#include "cicy/poly.hpp"

using json = nlohmann::json;
using namespace cicy;

namespace {

constexpr const char* kVersion = "0.1.0";

std::string fnv1a_digest(const std::vector<std::string>& argv) {
  std::uint64_t h = 1469598103934665603ull;
  for (const auto& arg : argv) {
    for (char c : arg) {
      h ^= static_cast<unsigned char>(c);
      h *= 1099511628211ull;
    }
    h ^= 0x1f;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

struct Output {
  bool use_json = false;
  std::string command;
  std::vector<std::string> argv;
  json result;
  std::ostringstream text;

  bool styled() const {
    return !use_json && CICY_ISATTY && std::getenv("CICY_NO_COLOR") == nullptr;
  }
  std::string ok(const std::string& s) const {
    return styled() ? "\033[32m" + s + "\033[0m" : s;
  }
  std::string bad(const std::string& s) const {
    return styled() ? "\033[31m" + s + "\033[0m" : s;
  }

  void flush() {
    if (use_json) {
      json envelope = {{"tool", "cicy"},
                       {"version", kVersion},
                       {"command", command},
                       {"argv", argv},
                       {"digest", fnv1a_digest(argv)},
                       {"result", result}};
      std::cout << envelope.dump(2) << "\n";
    } else {
      std::cout << text.str();
      std::cout << "# cicy " << kVersion << " | ";
      for (std::size_t i = 0; i < argv.size(); ++i)
        std::cout << (i ? " " : "") << argv[i];
      std::cout << " | digest " << fnv1a_digest(argv) << "\n";
    }
  }
};

json to_json(const ConfigMatrix& cfg) {
  return {{"dims", cfg.dims}, {"cols", cfg.cols}};
}

std::string column_str(const std::vector<int>& col) {
  std::string s = "(";
  for (std::size_t i = 0; i < col.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(col[i]);
  }
  return s + ")";
}

ConfigMatrix load_matrix(const std::string& arg) {
  if (!arg.empty() && arg[0] == '@') {
    std::ifstream in(arg.substr(1));
    if (!in) throw Error("cannot open '" + arg.substr(1) + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
  }
  return parse_config(arg);
}

std::string pad(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

// ---------------------------------------------------------------- enumerate

void run_enumerate(Output& out, int dim, std::optional<int> n, bool rejected) {
  EnumerationReport report = n ? enumerate_pn_p1_at(dim, *n) : enumerate_pn_p1(dim);
  auto group_of = [&](const ConfigMatrix& t) -> std::optional<K3Group> {
    try {
      return k3_group(t);
    } catch (const Error&) {
      return std::nullopt;
    }
  };
  if (out.use_json) {
    json types = json::array();
    for (const auto& t : report.accepted) {
      json entry = to_json(t);
      entry["compact"] = to_compact(t);
      if (auto g = group_of(t)) entry["group"] = static_cast<int>(*g);
      types.push_back(entry);
    }
    out.result = {{"target_dim", report.target_dim},
                  {"n_min", report.n_min},
                  {"n_max", report.n_max},
                  {"accepted", types},
                  {"rejected_summary",
                   {{"hyperplane_column", report.rejected_hyperplane},
                    {"not_p1_surjective", report.rejected_not_surjective}}}};
    if (rejected) {
      json rej = json::array();
      for (const auto& [cfg, reason] : report.rejected)
        rej.push_back({{"matrix", to_json(cfg)}, {"reason", to_string(reason)}});
      out.result["rejected"] = rej;
    }
    return;
  }
  out.text << "P^1-surjective CICY types, dimension " << report.target_dim
           << " (n = " << report.n_min << ".." << report.n_max << ")\n";
  out.text << "idx  " << pad("type", 17) << "n  cols  group\n";
  for (std::size_t i = 0; i < report.accepted.size(); ++i) {
    const auto& t = report.accepted[i];
    std::ostringstream idx;
    idx.width(3);
    idx << i + 1;
    auto g = group_of(t);
    out.text << idx.str() << "  " << pad(to_compact(t), 17) << t.dims[0] << "  "
             << pad(std::to_string(t.column_count()), 4) << "  "
             << (g ? std::to_string(static_cast<int>(*g)) : "-") << "\n";
  }
  out.text << "accepted " << report.accepted.size() << ", rejected "
           << report.rejected_hyperplane + report.rejected_not_surjective
           << " (hyperplane " << report.rejected_hyperplane
           << ", fiber-collapsing " << report.rejected_not_surjective << ")\n";
  if (rejected) {
    for (const auto& [cfg, reason] : report.rejected)
      out.text << "  rejected " << to_compact(cfg) << "  " << to_string(reason)
               << "\n";
  }
}

// ----------------------------------------------------------------- classify

void run_classify(Output& out, const std::string& matrix_arg) {
  ConfigMatrix cfg = load_matrix(matrix_arg);
  ConfigMatrix canon = canonical_form(cfg);
  auto defect = cy_defect(cfg);
  auto classes = classify_columns(cfg);
  std::optional<K3Group> group;
  std::optional<ConfigMatrix> fiber;
  for (int f = 0; f < cfg.factors() && !group; ++f) {
    if (cfg.dims[f] != 1) continue;
    try {
      ConfigMatrix gf = generic_fiber(cfg, f);
      group = k3_group(cfg);
      fiber = canonical_form(gf);
    } catch (const Error&) {
    }
  }
  if (out.use_json) {
    out.result = {{"matrix", to_json(cfg)},
                  {"canonical", to_json(canon)},
                  {"canonical_compact", to_compact(canon)},
                  {"dimension", dimension(cfg)},
                  {"cy_defect", defect},
                  {"calabi_yau", is_cy(cfg)}};
    json cols = json::array();
    for (const auto& cc : classes)
      cols.push_back({{"column", cc.column}, {"tag", to_string(cc.tag)}});
    out.result["columns"] = cols;
    if (group) {
      out.result["k3_group"] = static_cast<int>(*group);
      out.result["generic_fiber"] = to_json(*fiber);
    }
    return;
  }
  out.text << "type " << to_compact(cfg) << " (canonical " << to_compact(canon)
           << ")\n";
  out.text << "dims:";
  for (int d : cfg.dims) out.text << " " << d;
  out.text << "\ndimension: " << dimension(cfg) << "\ncy-defect:";
  for (int d : defect) out.text << " " << d;
  out.text << (is_cy(cfg) ? " (calabi-yau)" : " (not calabi-yau)") << "\n";
  out.text << "columns:\n";
  for (const auto& cc : classes)
    out.text << "  " << pad(column_str(cc.column), 10) << to_string(cc.tag)
             << "\n";
  if (group) {
    out.text << "k3 group: " << static_cast<int>(*group) << " (generic fiber "
             << to_compact(*fiber) << ")\n";
  }
}

// ----------------------------------------------------------------- contract

void run_contract(Output& out, const std::string& matrix_arg) {
  ConfigMatrix cfg = canonical_form(load_matrix(matrix_arg));
  auto blocks = find_blocks(cfg);
  auto closed_form = [&](const ContractionBlock& block) -> std::optional<BigInt> {
    try {
      return singular_count_closed_form(cfg, block);
    } catch (const Error&) {
      return std::nullopt;
    }
  };
  if (out.use_json) {
    out.result = {{"matrix", to_json(cfg)}, {"blocks", json::array()}};
    for (const auto& block : blocks) {
      ContractionResult res = contract(cfg, block);
      json strata = json::array();
      for (const auto& s : res.strata)
        strata.push_back(
            {{"r", s.r}, {"minor_order", s.minor_order}, {"fiber_dim", s.fiber_dim}});
      json entry = {{"factor", block.factor + 1},
                    {"row_degrees", block.row_degrees},
                    {"det_multidegree", res.det_multidegree},
                    {"target", to_json(canonical_form(res.target))},
                    {"target_compact", to_compact(canonical_form(res.target))},
                    {"strata", strata}};
      if (res.singular_points) {
        entry["singular_points"] = res.singular_points->to_string();
        if (auto cf = closed_form(block))
          entry["singular_points_closed_form"] = cf->to_string();
      }
      out.result["blocks"].push_back(entry);
    }
    return;
  }
  out.text << "type " << to_compact(cfg) << "\n";
  out.text << "blocks: " << blocks.size() << "\n";
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const auto& block = blocks[i];
    ContractionResult res = contract(cfg, block);
    out.text << "block " << i + 1 << ": factor " << block.factor + 1 << " (dim "
             << cfg.dims[block.factor] << ")\n";
    out.text << "  block columns:";
    for (int j : block.block_columns) out.text << " " << column_str(cfg.cols[j]);
    out.text << "\n  row degrees:";
    for (const auto& a : block.row_degrees) out.text << " " << column_str(a);
    out.text << "\n  det multidegree: " << column_str(res.det_multidegree) << "\n";
    out.text << "  target: " << to_compact(canonical_form(res.target)) << "\n";
    out.text << "  strata:";
    for (const auto& s : res.strata)
      out.text << " (r=" << s.r << " minors=" << s.minor_order << " fiber=P^"
               << s.fiber_dim << ")";
    out.text << "\n";
    if (res.singular_points) {
      out.text << "  singular points: " << res.singular_points->to_string();
      if (auto cf = closed_form(block))
        out.text << " (closed form " << cf->to_string() << ")";
      out.text << "\n";
    } else if (cfg.dims[block.factor] > 1) {
      out.text << "  singular points: n/a (block larger than 2x2)\n";
    } else {
      out.text << "  singular points: n/a (expected dimension is not zero)\n";
    }
  }
}

// ------------------------------------------------------------------- survey

void run_survey(Output& out) {
  // Survey the freshly enumerated types; the catalog test pins that these
  // equal the expected sixteen.
  ContractionSurvey s = contraction_survey(enumerate_pn_p1(3).accepted);
  bool checks_ok = s.contractible_count == 9 && s.targets.size() == 5;
  if (out.use_json) {
    json rows = json::array();
    for (const auto& row : s.rows) {
      json entry = {{"type", to_compact(row.type)},
                    {"group", static_cast<int>(row.group)},
                    {"contractible", row.contractible}};
      if (row.target) entry["target"] = to_compact(*row.target);
      if (row.singular_points)
        entry["singular_points"] = row.singular_points->to_string();
      rows.push_back(entry);
    }
    json targets = json::array();
    for (const auto& [t, mult] : s.targets)
      targets.push_back({{"type", to_compact(t)}, {"multiplicity", mult}});
    out.result = {{"rows", rows},
                  {"contractible", s.contractible_count},
                  {"targets", targets},
                  {"checks_ok", checks_ok}};
  } else {
    out.text << pad("type", 17) << "group  contractible  " << pad("target", 8)
             << "singular-points\n";
    for (const auto& row : s.rows) {
      out.text << pad(to_compact(row.type), 17) << "    "
               << static_cast<int>(row.group) << "  "
               << pad(row.contractible ? "yes" : "no", 14)
               << pad(row.target ? to_compact(*row.target) : "-", 8)
               << (row.singular_points ? row.singular_points->to_string() : "-")
               << "\n";
    }
    out.text << "contractible: " << s.contractible_count << " of "
             << s.rows.size() << "\ntargets:";
    for (std::size_t i = 0; i < s.targets.size(); ++i)
      out.text << (i ? ", " : " ") << to_compact(s.targets[i].first) << " x"
               << s.targets[i].second;
    out.text << " (" << s.targets.size() << " distinct)\n";
    out.text << "checks: contractible-count=9 "
             << (s.contractible_count == 9 ? "ok" : "FAIL")
             << "; distinct-targets=5 " << (s.targets.size() == 5 ? "ok" : "FAIL")
             << "\n";
  }
  if (!checks_ok) throw Error("survey: expected 9 contractible types and 5 targets");
}

// -------------------------------------------------------------------- count

void run_count(Output& out, const std::string& ambient_arg,
               const std::string& degrees_arg) {
  auto parse_ints = [](const std::string& s, char sep) {
    std::vector<int> v;
    std::istringstream in(s);
    std::string piece;
    while (std::getline(in, piece, sep)) {
      if (piece.empty()) throw Error("count: empty entry in '" + s + "'");
      std::size_t used = 0;
      int value = std::stoi(piece, &used);
      if (used != piece.size()) throw Error("count: bad integer '" + piece + "'");
      v.push_back(value);
    }
    if (v.empty()) throw Error("count: no entries in '" + s + "'");
    return v;
  };
  std::vector<int> ambient = parse_ints(ambient_arg, ',');
  ChowClass product = ChowClass::unit(ambient);
  std::istringstream in(degrees_arg);
  std::string column;
  while (std::getline(in, column, ',')) {
    std::vector<int> d = parse_ints(column, ':');
    if (d.size() != ambient.size())
      throw Error("count: degree " + column + " does not match the ambient");
    product = product * ChowClass::of_multidegree(ambient, d);
  }
  BigInt points = product.point_count();
  if (out.use_json) {
    out.result = {{"ambient", ambient},
                  {"class", product.str()},
                  {"points", points.to_string()}};
  } else {
    out.text << points.to_string() << "\n";
  }
}

// ------------------------------------------------------------------- deform

void deform_one(Output& out, const ConfigMatrix& type) {
  FamilyTemplate tmpl = build_family(type);
  DeformationReport rep = first_order(tmpl);

  if (out.use_json) {
    json eqs = json::array();
    for (std::size_t e = 0; e < tmpl.equations.size(); ++e)
      eqs.push_back({{"multidegree", tmpl.equation_degrees[e]},
                     {"display", tmpl.equation_display[e]}});
    json pairs = json::array();
    for (std::size_t i = 0; i < rep.first_order.size(); ++i)
      pairs.push_back({{"g0", tmpl.fiber_tags[i]},
                       {"g1", rep.first_order[i].second.str()}});
    json aux = json::array();
    for (const auto& [var, sol] : rep.aux_solutions)
      aux.push_back({{"var", tmpl.ring->at(var).name}, {"value", sol.str()}});
    out.result["reports"].push_back(
        {{"type", to_compact(tmpl.type_id)},
         {"group", static_cast<int>(tmpl.group)},
         {"provenance", to_string(tmpl.provenance)},
         {"family", eqs},
         {"first_order", pairs},
         {"aux_solutions", aux},
         {"span",
          {{"w", rep.subset.w_index},
           {"components", rep.subset.component_dims},
           {"ambient", rep.subset.ambient_dim},
           {"span", rep.subset.span_dim}}}});
    return;
  }
  out.text << "type " << to_compact(tmpl.type_id) << " (group "
           << static_cast<int>(tmpl.group) << ", " << to_string(tmpl.provenance)
           << ")\n";
  out.text << "family:\n";
  for (std::size_t e = 0; e < tmpl.equations.size(); ++e)
    out.text << "  " << column_str(tmpl.equation_degrees[e]) << "  "
             << tmpl.equation_display[e] << " = 0\n";
  out.text << "special fiber at (y:z) = (0:1): ";
  for (int i = 0; i < tmpl.fiber_count; ++i)
    out.text << (i ? ", " : "") << tmpl.fiber_tags[i] << " = 0";
  out.text << "\n";
  if (!rep.aux_solutions.empty()) {
    out.text << "aux solutions (mod t^2):\n";
    for (const auto& [var, sol] : rep.aux_solutions)
      out.text << "  " << tmpl.ring->at(var).name << " = " << sol.str() << "\n";
  }
  out.text << "first order (mod t^2):\n";
  for (std::size_t i = 0; i < rep.first_order.size(); ++i) {
    out.text << "  g0 = " << tmpl.fiber_tags[i] << "\n";
    out.text << "  g1 = " << rep.first_order[i].second.str() << "\n";
  }
  out.text << "span subset in W_" << rep.subset.w_index << ": ambient "
           << rep.subset.ambient_dim << " = ";
  for (std::size_t i = 0; i < rep.subset.component_dims.size(); ++i)
    out.text << (i ? " + " : "") << rep.subset.component_dims[i];
  out.text << ", span " << rep.subset.span_dim << "\n";
}

void run_deform(Output& out, const std::string& type_arg, bool all) {
  if (out.use_json) out.result["reports"] = json::array();
  if (all) {
    for (const auto& type : expected_catalog_types()) {
      deform_one(out, type);
      if (!out.use_json) out.text << "\n";
    }
  } else {
    deform_one(out, load_matrix(type_arg));
  }
}

// --------------------------------------------------------------------- span

void run_span(Output& out, const std::string& case_arg, bool all) {
  std::vector<SpanCase> selected;
  if (all) {
    selected = span_cases();
  } else {
    auto dot = case_arg.find('.');
    if (dot == std::string::npos)
      throw Error("span: case must look like 2.3 (group.index)");
    int group = std::stoi(case_arg.substr(0, dot));
    int index = std::stoi(case_arg.substr(dot + 1));
    for (const auto& c : span_cases()) {
      if (c.group == group && c.index == index) selected.push_back(c);
    }
    if (selected.empty()) throw Error("span: no case " + case_arg);
  }
  if (out.use_json) {
    out.result["cases"] = json::array();
  } else {
    out.text << "case  " << pad("type", 17) << "W    ambient  "
             << pad("components", 12) << "span\n";
  }
  for (const auto& c : selected) {
    DeformationReport rep = first_order(build_family(c.type));
    std::string components;
    for (std::size_t i = 0; i < rep.subset.component_dims.size(); ++i)
      components += (i ? "+" : "") + std::to_string(rep.subset.component_dims[i]);
    if (out.use_json) {
      out.result["cases"].push_back(
          {{"case", std::to_string(c.group) + "." + std::to_string(c.index)},
           {"type", to_compact(c.type)},
           {"w", rep.subset.w_index},
           {"ambient", rep.subset.ambient_dim},
           {"components", rep.subset.component_dims},
           {"span", rep.subset.span_dim}});
    } else {
      out.text << c.group << "." << c.index << "   " << pad(to_compact(c.type), 17)
               << "W_" << rep.subset.w_index << "  "
               << pad(std::to_string(rep.subset.ambient_dim), 9)
               << pad(components, 12) << rep.subset.span_dim << "\n";
    }
  }
}

// ----------------------------------------------------------------- selftest

// Independent equivalence oracle (exhaustive row permutations plus column
// multiset comparison), duplicated from the test suite on purpose: the
// self-test must not trust canonical_form.
bool oracle_same_type(const ConfigMatrix& a, const ConfigMatrix& b) {
  if (a.dims.size() != b.dims.size() || a.cols.size() != b.cols.size())
    return false;
  const int k = a.factors();
  std::vector<int> perm(k);
  for (int i = 0; i < k; ++i) perm[i] = i;
  std::sort(perm.begin(), perm.end());
  do {
    bool dims_match = true;
    for (int i = 0; i < k; ++i) {
      if (a.dims[perm[i]] != b.dims[i]) dims_match = false;
    }
    if (!dims_match) continue;
    std::vector<std::vector<int>> pa, pb = b.cols;
    for (const auto& col : a.cols) {
      std::vector<int> c(k);
      for (int i = 0; i < k; ++i) c[i] = col[perm[i]];
      pa.push_back(std::move(c));
    }
    std::sort(pa.begin(), pa.end());
    std::sort(pb.begin(), pb.end());
    if (pa == pb) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

void run_selftest(Output& out, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  int oracle_total = 0, oracle_ok = 0;

  auto random_matrix = [&]() {
    for (;;) {
      int k = 1 + static_cast<int>(rng() % 3);
      int m = 1 + static_cast<int>(rng() % 6);
      std::vector<int> dims(k);
      for (int& d : dims) d = 1 + static_cast<int>(rng() % 5);
      int total = 0;
      for (int d : dims) total += d;
      if (total < m) continue;
      std::vector<std::vector<int>> cols(m, std::vector<int>(k, 0));
      for (auto& col : cols) {
        for (int& g : col) g = static_cast<int>(rng() % 4);
        bool zero = true;
        for (int g : col) {
          if (g) zero = false;
        }
        if (zero) col[rng() % k] = 1 + static_cast<int>(rng() % 3);
      }
      return make_config(std::move(dims), std::move(cols));
    }
  };
  auto shuffled = [&](const ConfigMatrix& a) {
    std::vector<int> perm(a.factors());
    for (int i = 0; i < a.factors(); ++i) perm[i] = i;
    for (int i = a.factors() - 1; i > 0; --i)
      std::swap(perm[i], perm[rng() % (i + 1)]);
    std::vector<int> dims(a.factors());
    std::vector<std::vector<int>> cols;
    for (int i = 0; i < a.factors(); ++i) dims[i] = a.dims[perm[i]];
    for (const auto& col : a.cols) {
      std::vector<int> c(a.factors());
      for (int i = 0; i < a.factors(); ++i) c[i] = col[perm[i]];
      cols.push_back(std::move(c));
    }
    return make_config(std::move(dims), std::move(cols));
  };

  std::vector<ConfigMatrix> pool;
  for (int i = 0; i < 100; ++i) pool.push_back(random_matrix());
  for (std::size_t i = 0; i < pool.size(); ++i) {
    ConfigMatrix twin = shuffled(pool[i]);
    ++oracle_total;
    if (same_type(pool[i], twin) && oracle_same_type(pool[i], twin)) ++oracle_ok;
    const ConfigMatrix& other = pool[(i + 1) % pool.size()];
    ++oracle_total;
    if (same_type(pool[i], other) == oracle_same_type(pool[i], other)) ++oracle_ok;
  }
  for (const auto& a : expected_catalog_types()) {
    for (const auto& b : expected_catalog_types()) {
      ++oracle_total;
      if (same_type(a, b) == oracle_same_type(a, b)) ++oracle_ok;
    }
  }

  int chow_total = 0, chow_ok = 0;
  auto random_class = [&](const std::vector<int>& ambient) {
    ChowClass c = ChowClass::zero(ambient);
    int terms = 1 + static_cast<int>(rng() % 4);
    for (int i = 0; i < terms; ++i) {
      ChowClass mono = ChowClass::unit(ambient);
      for (std::size_t f = 0; f < ambient.size(); ++f) {
        int e = static_cast<int>(rng() % (ambient[f] + 1));
        mono = mono * ChowClass::hyperplane(ambient, static_cast<int>(f)).pow(e);
      }
      int coeff = static_cast<int>(rng() % 7) - 3;
      for (int j = 0; j < (coeff < 0 ? -coeff : coeff); ++j)
        c = coeff > 0 ? c + mono : c - mono;
    }
    return c;
  };
  for (int i = 0; i < 200; ++i) {
    std::vector<int> ambient;
    int k = 1 + static_cast<int>(rng() % 2);
    for (int f = 0; f < k; ++f) ambient.push_back(1 + static_cast<int>(rng() % 4));
    ChowClass a = random_class(ambient), b = random_class(ambient),
              c = random_class(ambient);
    bool good = a * b == b * a && (a * b) * c == a * (b * c) &&
                a * (b + c) == a * b + a * c;
    for (int f = 0; f < k && good; ++f)
      good = ChowClass::hyperplane(ambient, f).pow(ambient[f] + 1).is_zero();
    ++chow_total;
    if (good) ++chow_ok;
  }

  int back_total = 0, back_ok = 0;
  for (const auto& type : expected_catalog_types()) {
    ++back_total;
    FamilyTemplate tmpl = build_family(type);
    DeformationReport rep = first_order(tmpl);
    std::map<int, Poly> reduce;
    reduce.emplace(tmpl.z_var, Poly::constant(tmpl.ring, Rational(1)));
    reduce.emplace(tmpl.y_var, Poly::variable(tmpl.ring, tmpl.t_var));
    for (const auto& [aux, sol] : rep.aux_solutions) reduce.emplace(aux, sol);
    Poly t = Poly::variable(tmpl.ring, tmpl.t_var);
    bool good = true;
    for (std::size_t e = 0; e < tmpl.equations.size(); ++e) {
      Poly value = tmpl.equations[e].substitute(reduce).truncate_t(2);
      if (e < static_cast<std::size_t>(tmpl.fiber_count)) {
        const auto& [g0, g1] = rep.first_order[e];
        good = good && (value - g0 - t * g1).is_zero();
      } else {
        good = good && value.is_zero();
      }
    }
    if (good) ++back_ok;
  }

  bool all_ok =
      oracle_ok == oracle_total && chow_ok == chow_total && back_ok == back_total;
  if (out.use_json) {
    out.result = {
        {"seed", seed},
        {"permutation_oracle", {{"ok", oracle_ok}, {"total", oracle_total}}},
        {"chow_axioms", {{"ok", chow_ok}, {"total", chow_total}}},
        {"back_substitution", {{"ok", back_ok}, {"total", back_total}}},
        {"passed", all_ok}};
  } else {
    out.text << "permutation-oracle: " << oracle_ok << "/" << oracle_total
             << (oracle_ok == oracle_total ? " ok" : " FAIL") << "\n";
    out.text << "chow-axioms: " << chow_ok << "/" << chow_total
             << (chow_ok == chow_total ? " ok" : " FAIL") << "\n";
    out.text << "back-substitution: " << back_ok << "/" << back_total
             << (back_ok == back_total ? " ok" : " FAIL") << "\n";
    out.text << (all_ok ? out.ok("selftest passed") : out.bad("selftest FAILED"))
             << " (seed " << seed << ")\n";
  }
  if (!all_ok) throw Error("selftest failed");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact-arithmetic toolkit for K3-fibered CICY types in P^n x P^1"};
  app.require_subcommand(1);
  bool use_json = false;
  app.add_flag("--json", use_json, "emit one JSON document instead of text");
  app.fallthrough();

  int dim = 3;
  std::optional<int> probe_n;
  bool show_rejected = false;
  auto* cmd_enumerate =
      app.add_subcommand("enumerate", "list all types of a dimension");
  cmd_enumerate->add_option("--dim", dim, "target dimension")->capture_default_str();
  cmd_enumerate->add_option("--n", probe_n, "restrict to a single n");
  cmd_enumerate->add_flag("--rejected", show_rejected, "list rejected candidates");

  std::string classify_matrix;
  auto* cmd_classify =
      app.add_subcommand("classify", "classify a configuration matrix");
  cmd_classify->add_option("matrix", classify_matrix, "compact form or @file")
      ->required();

  std::string contract_matrix;
  auto* cmd_contract = app.add_subcommand("contract", "determinantal contractions");
  cmd_contract->add_option("matrix", contract_matrix, "compact form or @file")
      ->required();

  auto* cmd_survey =
      app.add_subcommand("survey", "contraction survey of the 16 types");

  std::string ambient_arg, degrees_arg;
  auto* cmd_count = app.add_subcommand("count", "intersection-ring point count");
  cmd_count->add_option("--ambient", ambient_arg, "factor dims, e.g. 7 or 3,1")
      ->required();
  cmd_count
      ->add_option("--degrees", degrees_arg,
                   "columns, ','-separated; entries ':'-separated for products")
      ->required();

  std::string deform_type;
  bool deform_all = false;
  auto* cmd_deform =
      app.add_subcommand("deform", "first-order deformation report");
  cmd_deform->add_option("--type", deform_type, "compact form or @file");
  cmd_deform->add_flag("--all", deform_all, "all 16 types");

  std::string span_case;
  bool span_all = false;
  auto* cmd_span =
      app.add_subcommand("span", "span dimensions of the worked subsets");
  cmd_span->add_option("--case", span_case, "group.index, e.g. 2.3");
  cmd_span->add_flag("--all", span_all, "all worked cases");

  std::uint64_t seed = 0;
  auto* cmd_selftest =
      app.add_subcommand("selftest", "run the built-in check suites");
  cmd_selftest->add_option("--seed", seed, "seed for randomized checks")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 2;
  }

  Output out;
  out.use_json = use_json;
  for (int i = 1; i < argc; ++i) out.argv.push_back(argv[i]);

  try {
    if (*cmd_enumerate) {
      out.command = "enumerate";
      run_enumerate(out, dim, probe_n, show_rejected);
    } else if (*cmd_classify) {
      out.command = "classify";
      run_classify(out, classify_matrix);
    } else if (*cmd_contract) {
      out.command = "contract";
      run_contract(out, contract_matrix);
    } else if (*cmd_survey) {
      out.command = "survey";
      run_survey(out);
    } else if (*cmd_count) {
      out.command = "count";
      run_count(out, ambient_arg, degrees_arg);
    } else if (*cmd_deform) {
      out.command = "deform";
      if (!deform_all && deform_type.empty())
        throw Error("deform: pass --type <matrix> or --all");
      run_deform(out, deform_type, deform_all);
    } else if (*cmd_span) {
      out.command = "span";
      if (!span_all && span_case.empty())
        throw Error("span: pass --case g.i or --all");
      run_span(out, span_case, span_all);
    } else if (*cmd_selftest) {
      out.command = "selftest";
      run_selftest(out, seed);
    }
  } catch (const Error& e) {
    if (use_json) {
      json err = {{"tool", "cicy"},
                  {"version", kVersion},
                  {"error", {{"kind", "domain"}, {"message", e.what()}}}};
      std::cout << err.dump(2) << "\n";
    } else {
      std::cerr << "error: " << e.what() << "\n";
    }
    return 1;
  }
  out.flush();
  return 0;
}
