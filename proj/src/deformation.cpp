#include "cicy/deformation.hpp"

#include <algorithm>
#include <set>

namespace cicy {

const char* to_string(Provenance p) {
  return p == Provenance::listed ? "listed" : "reconstructed";
}

const GenericBlockInfo& FamilyTemplate::block(const std::string& tag) const {
  for (const auto& b : blocks) {
    if (b.tag == tag) return b;
  }
  throw Error("family: no block named '" + tag + "'");
}

namespace {

const std::set<std::string>& listed_types() {
  static const std::set<std::string> set = {
      "4|41;1|02",  "4|32;1|20",  "4|32;1|02",      "5|321;1|002",
      "5|222;1|200", "5|222;1|110", "7|22211;1|00011",
  };
  return set;
}

char degree_letter(int degree) {
  switch (degree) {
    case 1: return 'l';
    case 2: return 'k';
    case 3: return 'c';
    case 4: return 'q';
  }
  throw Error("family: no letter for degree " + std::to_string(degree));
}

struct Builder {
  FamilyTemplate tmpl;
  std::map<char, int> counters;

  std::string var_range(const std::vector<int>& vars) const {
    // Contiguous x-prefix by construction.
    return "x0.." + tmpl.ring->at(vars.back()).name;
  }

  // Registers a generic block and returns its form.
  Poly fresh_block(int degree, const std::vector<int>& vars, std::string tag) {
    Poly form = generic_form(tmpl.ring, degree, vars, tag);
    tmpl.blocks.push_back({tag, degree, vars, form});
    return form;
  }

  Poly numbered_block(int degree, const std::vector<int>& vars, std::string* name) {
    char letter = degree_letter(degree);
    int idx = ++counters[letter];
    std::string tag = std::string(1, letter) + std::to_string(idx);
    if (name) *name = tag + "(" + var_range(vars) + ")";
    return fresh_block(degree, vars, tag);
  }

  // f0 plus sum of aux*general completions: a general degree-a form whose
  // restriction to the base is f0.
  Poly completed_fiber_form(const Poly& f0, const std::string& f0_tag, int a,
                            std::string* display) {
    Poly main = f0;
    std::string disp = f0_tag + "(" + var_range(tmpl.base_vars) + ")";
    for (int aux : tmpl.aux_vars) {
      std::vector<int> upto(tmpl.x_vars.begin(),
                            tmpl.x_vars.begin() + (aux + 1));
      std::string name;
      Poly mult = numbered_block(a - 1, upto, &name);
      main += Poly::variable(tmpl.ring, aux) * mult;
      disp += " + " + tmpl.ring->at(aux).name + "*" + name;
    }
    if (display) *display = disp;
    return main;
  }

  Poly y() const { return Poly::variable(tmpl.ring, tmpl.y_var); }
  Poly z() const { return Poly::variable(tmpl.ring, tmpl.z_var); }

  void push_equation(Poly eq, std::string display, int a, int b) {
    tmpl.equations.push_back(std::move(eq));
    tmpl.equation_display.push_back(std::move(display));
    tmpl.equation_degrees.push_back({a, b});
  }

  // Equation of multidegree (a, b) hosting the fiber polynomial f0.
  void fiber_equation(const Poly& f0, const std::string& f0_tag, int a, int b) {
    std::string main_disp;
    Poly main = completed_fiber_form(f0, f0_tag, a, &main_disp);
    if (b == 0) {
      push_equation(main, main_disp, a, b);
      return;
    }
    bool composite = main_disp.find('+') != std::string::npos;
    std::string disp = composite ? "(" + main_disp + ")" : main_disp;
    if (b == 1) {
      std::string name;
      Poly g = numbered_block(a, tmpl.x_vars, &name);
      push_equation(main * z() + g * y(), disp + "*z + " + name + "*y", a, b);
    } else if (b == 2) {
      std::string n1, n2;
      Poly g1 = numbered_block(a, tmpl.x_vars, &n1);
      Poly g2 = numbered_block(a, tmpl.x_vars, &n2);
      push_equation(main * z().pow(2) + g1 * y() * z() + g2 * y().pow(2),
                    disp + "*z^2 + " + n1 + "*y*z + " + n2 + "*y^2", a, b);
    } else {
      throw Error("family: unexpected P^1 degree " + std::to_string(b));
    }
  }

  // Equation x_aux * z^b + ... of multidegree (1, b).
  void aux_equation(int aux, int b) {
    Poly xa = Poly::variable(tmpl.ring, aux);
    const std::string xname = tmpl.ring->at(aux).name;
    if (b == 1) {
      std::string name;
      Poly l = numbered_block(1, tmpl.x_vars, &name);
      push_equation(xa * z() + l * y(), xname + "*z + " + name + "*y", 1, b);
    } else if (b == 2) {
      std::string n1, n2;
      Poly l1 = numbered_block(1, tmpl.x_vars, &n1);
      Poly l2 = numbered_block(1, tmpl.x_vars, &n2);
      push_equation(xa * z().pow(2) + l1 * y() * z() + l2 * y().pow(2),
                    xname + "*z^2 + " + n1 + "*y*z + " + n2 + "*y^2", 1, b);
    } else {
      throw Error("family: auxiliary column with P^1 degree " + std::to_string(b));
    }
  }
};

}  // namespace

FamilyTemplate build_family(const ConfigMatrix& type) {
  ConfigMatrix canon = canonical_form(type);
  static const auto catalog = [] {
    std::set<ConfigMatrix> set;
    for (const char* s :
         {"3|4;1|2", "4|41;1|02", "4|41;1|11", "5|411;1|011", "4|32;1|20",
          "4|32;1|02", "4|32;1|11", "5|321;1|002", "5|321;1|011", "5|321;1|101",
          "6|3211;1|0011", "5|222;1|200", "5|222;1|110", "6|2221;1|0002",
          "6|2221;1|0011", "7|22211;1|00011"})
      set.insert(canonical_form(parse_config(s)));
    return set;
  }();
  if (!catalog.count(canon))
    throw Error("family: '" + to_compact(type) + "' is not one of the 16 types");

  Builder b;
  b.tmpl.type_id = canon;
  b.tmpl.group = k3_group(canon);
  b.tmpl.provenance = listed_types().count(to_compact(canon))
                          ? Provenance::listed
                          : Provenance::reconstructed;
  b.tmpl.ring = Ring::create();

  const int n = canon.dims[0];
  const int base_count = 4 + (static_cast<int>(b.tmpl.group) - 1);  // 4, 5, 6
  for (int i = 0; i <= n; ++i)
    b.tmpl.x_vars.push_back(
        b.tmpl.ring->add_var("x" + std::to_string(i), VarClass::geometric));
  b.tmpl.y_var = b.tmpl.ring->add_var("y", VarClass::geometric);
  b.tmpl.z_var = b.tmpl.ring->add_var("z", VarClass::geometric);
  b.tmpl.t_var = b.tmpl.ring->add_var("t", VarClass::deformation);
  b.tmpl.base_vars.assign(b.tmpl.x_vars.begin(),
                          b.tmpl.x_vars.begin() + base_count);
  b.tmpl.aux_vars.assign(b.tmpl.x_vars.begin() + base_count,
                         b.tmpl.x_vars.end());

  // Split columns: auxiliary columns are the degree-(1, b) ones, each
  // consuming one auxiliary variable; fiber columns host the special
  // fiber polynomials, highest P^1 degree first.
  std::vector<std::vector<int>> fiber_cols, aux_cols;
  for (const auto& col : canon.cols) {
    (col[0] == 1 ? aux_cols : fiber_cols).push_back(col);
  }
  if (static_cast<int>(aux_cols.size()) != n - base_count + 1)
    throw Error("family: auxiliary column count mismatch");
  std::stable_sort(fiber_cols.begin(), fiber_cols.end(),
                   [](const auto& a, const auto& c) { return a[1] > c[1]; });

  switch (b.tmpl.group) {
    case K3Group::group1: {
      Poly q0 = b.fresh_block(4, b.tmpl.base_vars, "q0");
      b.fiber_equation(q0, "q0", 4, fiber_cols[0][1]);
      b.tmpl.fiber_tags = {"q0"};
      break;
    }
    case K3Group::group2: {
      // Quadric equation first, then the cubic, matching the W_4 order.
      std::vector<int> kcol, ccol;
      for (const auto& col : fiber_cols) (col[0] == 2 ? kcol : ccol) = col;
      if (kcol.empty() || ccol.empty())
        throw Error("family: fiber columns do not match the (2,3) pattern");
      Poly k0 = b.fresh_block(2, b.tmpl.base_vars, "k0");
      b.fiber_equation(k0, "k0", 2, kcol[1]);
      Poly c0 = b.fresh_block(3, b.tmpl.base_vars, "c0");
      b.fiber_equation(c0, "c0", 3, ccol[1]);
      b.tmpl.fiber_tags = {"k0", "c0"};
      break;
    }
    case K3Group::group3: {
      for (int i = 0; i < 3; ++i) {
        std::string tag = "k0" + std::to_string(i + 1);
        Poly f0 = b.fresh_block(2, b.tmpl.base_vars, tag);
        b.fiber_equation(f0, tag, 2, fiber_cols[i][1]);
        b.tmpl.fiber_tags.push_back(tag);
      }
      break;
    }
  }
  b.tmpl.fiber_count = static_cast<int>(b.tmpl.fiber_tags.size());
  for (std::size_t i = 0; i < aux_cols.size(); ++i)
    b.aux_equation(b.tmpl.aux_vars[i], aux_cols[i][1]);

  // Every equation must realize its column's multidegree, and the
  // multidegrees must exhaust the type's columns.
  for (std::size_t e = 0; e < b.tmpl.equations.size(); ++e) {
    auto dx = b.tmpl.equations[e].homogeneous_degree_in(b.tmpl.x_vars);
    auto dyz = b.tmpl.equations[e].homogeneous_degree_in(
        {b.tmpl.y_var, b.tmpl.z_var});
    if (!dx || !dyz || *dx != b.tmpl.equation_degrees[e][0] ||
        *dyz != b.tmpl.equation_degrees[e][1])
      throw Error("family: equation multidegree mismatch");
  }
  std::vector<std::vector<int>> realized = b.tmpl.equation_degrees;
  std::vector<std::vector<int>> expected = canon.cols;
  std::sort(realized.begin(), realized.end());
  std::sort(expected.begin(), expected.end());
  if (realized != expected)
    throw Error("family: equations do not exhaust the type's columns");
  return b.tmpl;
}

std::vector<Poly> special_fiber(const FamilyTemplate& tmpl) {
  std::map<int, Poly> at_fiber;
  at_fiber.emplace(tmpl.y_var, Poly(tmpl.ring));
  at_fiber.emplace(tmpl.z_var, Poly::constant(tmpl.ring, Rational(1)));
  for (int aux : tmpl.aux_vars) at_fiber.emplace(aux, Poly(tmpl.ring));
  std::vector<Poly> out;
  for (int e = 0; e < tmpl.fiber_count; ++e) {
    Poly f = tmpl.equations[e].substitute(at_fiber);
    auto deg = f.homogeneous_degree_in(tmpl.base_vars);
    if (!deg || *deg != tmpl.equation_degrees[e][0])
      throw Error("special_fiber: substitution left an equation of wrong degree");
    out.push_back(std::move(f));
  }
  return out;
}

namespace {

std::vector<GradedPiece> w_pieces(const FamilyTemplate& tmpl) {
  switch (tmpl.group) {
    case K3Group::group1:
      return {{4, tmpl.base_vars}};
    case K3Group::group2:
      return {{2, tmpl.base_vars}, {3, tmpl.base_vars}};
    case K3Group::group3:
      return {{2, tmpl.base_vars}, {2, tmpl.base_vars}, {2, tmpl.base_vars}};
  }
  throw Error("family: bad group");
}

}  // namespace

DeformationReport first_order(const FamilyTemplate& tmpl) {
  DeformationReport report;
  report.tmpl = tmpl;

  std::map<int, Poly> local;  // z = 1, y = t
  local.emplace(tmpl.z_var, Poly::constant(tmpl.ring, Rational(1)));
  local.emplace(tmpl.y_var, Poly::variable(tmpl.ring, tmpl.t_var));

  // Fixpoint forms x_a = F_a, from the auxiliary equations.
  std::map<int, Poly> fixpoint;
  for (std::size_t i = 0; i < tmpl.aux_vars.size(); ++i) {
    int aux = tmpl.aux_vars[i];
    Poly e = tmpl.equations[tmpl.fiber_count + i].substitute(local).truncate_t(2);
    if (e.coeff_of_power(aux, 1).truncate_t(1) !=
        Poly::constant(tmpl.ring, Rational(1)))
      throw Error("first_order: non-unit auxiliary leading coefficient");
    if (e.truncate_t(1) != Poly::variable(tmpl.ring, aux))
      throw Error("first_order: auxiliary equation is not x + O(t) at the fiber");
    fixpoint.emplace(aux, (Poly::variable(tmpl.ring, aux) - e).truncate_t(2));
  }

  // Iterate substitution to a fixpoint mod t^2.
  std::map<int, Poly> sol = fixpoint;
  const int max_passes = static_cast<int>(tmpl.aux_vars.size()) + 1;
  bool settled = tmpl.aux_vars.empty();
  for (int pass = 0; pass < max_passes && !settled; ++pass) {
    std::map<int, Poly> next;
    for (const auto& [aux, f] : fixpoint)
      next.emplace(aux, f.substitute(sol).truncate_t(2));
    settled = next == sol;
    sol = std::move(next);
  }
  if (!settled) throw Error("first_order: auxiliary fixpoint not reached");
  report.aux_solutions = sol;

  std::map<int, Poly> reduce = local;
  for (const auto& [aux, s] : sol) reduce.emplace(aux, s);
  for (int e = 0; e < tmpl.fiber_count; ++e) {
    Poly g = tmpl.equations[e].substitute(reduce).truncate_t(2);
    Poly g0 = g.coeff_of_power(tmpl.t_var, 0);
    Poly g1 = g.coeff_of_power(tmpl.t_var, 1);
    if (g0 != tmpl.block(tmpl.fiber_tags[e]).form)
      throw Error("first_order: constant term is not the fiber polynomial");
    report.fiber_equations.push_back(g0);
    report.first_order.emplace_back(std::move(g0), std::move(g1));
  }

  SpanSubset subset;
  subset.w_index = 3 + (static_cast<int>(tmpl.group) - 1);
  subset.pieces = w_pieces(tmpl);
  for (const auto& piece : subset.pieces)
    subset.component_dims.push_back(graded_piece_dim(piece));
  subset.ambient_dim = 0;
  for (int d : subset.component_dims) subset.ambient_dim += d;
  for (const auto& [g0, g1] : report.first_order) subset.generators.push_back(g1);
  subset.span_dim = span_dim(subset.generators, subset.pieces, tmpl.blocks);
  report.subset = subset;
  return report;
}

std::vector<std::vector<Poly>> span_generator_rows(
    const std::vector<Poly>& generators,
    const std::vector<GenericBlockInfo>& blocks) {
  if (generators.empty()) return {};
  const RingPtr& ring = generators.front().ring();
  std::map<int, std::size_t> block_of_atom;
  for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
    for (const auto& [m, c] : blocks[bi].form.terms()) {
      for (std::size_t v = 0; v < m.size(); ++v) {
        if (m[v] > 0 && ring->at(static_cast<int>(v)).cls == VarClass::coefficient_atom)
          block_of_atom[static_cast<int>(v)] = bi;
      }
    }
  }

  // Split each term into atom monomial and geometric monomial, checking
  // multilinearity: per block at most degree one, and no atom-free term
  // (a multilinear map has no constant part).
  std::map<Monomial, std::vector<Poly>, DegLexLess> rows_by_atom;
  for (std::size_t gi = 0; gi < generators.size(); ++gi) {
    const Poly& g = generators[gi];
    if (g.ring() != ring) throw Error("span: generator ring mismatch");
    for (const auto& [m, c] : g.terms()) {
      Monomial atom_part(m.size(), 0), geom_part(m.size(), 0);
      std::map<std::size_t, int> block_degree;
      int atom_total = 0;
      for (std::size_t v = 0; v < m.size(); ++v) {
        if (m[v] == 0) continue;
        if (ring->at(static_cast<int>(v)).cls == VarClass::coefficient_atom) {
          auto it = block_of_atom.find(static_cast<int>(v));
          if (it == block_of_atom.end())
            throw Error("span: atom outside every named block");
          block_degree[it->second] += m[v];
          atom_part[v] = m[v];
          atom_total += m[v];
        } else {
          geom_part[v] = m[v];
        }
      }
      if (atom_total == 0) throw Error("span: non-multilinear generator (constant term)");
      for (const auto& [bi, d] : block_degree) {
        if (d > 1) throw Error("span: non-multilinear generator (block degree > 1)");
      }
      while (!atom_part.empty() && atom_part.back() == 0) atom_part.pop_back();
      while (!geom_part.empty() && geom_part.back() == 0) geom_part.pop_back();
      auto [it, fresh] = rows_by_atom.try_emplace(
          atom_part, std::vector<Poly>(generators.size(), Poly(ring)));
      it->second[gi] += Poly::monomial(ring, geom_part, c);
    }
  }

  std::vector<std::vector<Poly>> rows;
  rows.reserve(rows_by_atom.size());
  for (auto& [atom, row] : rows_by_atom) rows.push_back(row);
  return rows;
}

int span_dim(const std::vector<Poly>& generators,
             const std::vector<GradedPiece>& pieces,
             const std::vector<GenericBlockInfo>& blocks) {
  auto rows = span_generator_rows(generators, blocks);
  if (rows.empty()) return 0;
  return coeff_rank(rows, pieces);
}

WSpace w_dim(int n) {
  if (n < 3 || n > 5) throw Error("w_dim: n must be 3, 4, or 5");
  auto count = [](int degree, int nvars) {
    std::vector<int> vars(nvars);
    for (int i = 0; i < nvars; ++i) vars[i] = i;
    return static_cast<int>(monomials_of_degree(degree, vars).size());
  };
  WSpace w;
  w.n = n;
  if (n == 3) {
    w.component_dims = {count(4, 4)};
  } else if (n == 4) {
    w.component_dims = {count(2, 5), count(3, 5)};
  } else {
    w.component_dims = {count(2, 6), count(2, 6), count(2, 6)};
  }
  for (int d : w.component_dims) w.total += d;
  return w;
}

const std::vector<SpanCase>& span_cases() {
  static const std::vector<SpanCase> cases = [] {
    std::vector<SpanCase> v;
    auto add = [&](int group, int index, const char* compact) {
      v.push_back({group, index, canonical_form(parse_config(compact))});
    };
    add(1, 1, "4|41;1|02");
    add(2, 1, "4|32;1|20");
    add(2, 2, "4|32;1|02");
    add(2, 3, "5|321;1|002");
    add(3, 1, "5|222;1|200");
    add(3, 2, "5|222;1|110");
    add(3, 3, "7|22211;1|00011");
    return v;
  }();
  return cases;
}

}  // namespace cicy
