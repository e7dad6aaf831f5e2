#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cicy/config.hpp"
#include "cicy/poly.hpp"

namespace cicy {

enum class Provenance { listed, reconstructed };
const char* to_string(Provenance p);

struct GenericBlockInfo {
  std::string tag;        // q0, c1, l1, ...
  int degree;
  std::vector<int> vars;  // geometric variables the block ranges over
  Poly form;              // sum of atom * monomial
};

// Polynomial family over P^n x P^1 realizing one of the sixteen types,
// with the special K3 fiber at (y:z) = (0:1). Fiber equations come first
// (quartic / quadric,cubic / three quadrics), then one equation per
// auxiliary variable, each linear in it with unit coefficient at the
// fiber.
struct FamilyTemplate {
  ConfigMatrix type_id;  // canonical
  K3Group group;
  RingPtr ring;
  std::vector<int> x_vars;     // x0..xn
  std::vector<int> base_vars;  // coordinates of the fiber's P^3/P^4/P^5
  std::vector<int> aux_vars;   // remaining x's, eliminated at the fiber
  int y_var = -1, z_var = -1, t_var = -1;
  std::vector<Poly> equations;
  std::vector<std::string> equation_display;       // block-level rendering
  std::vector<std::vector<int>> equation_degrees;  // (a, b) per equation
  int fiber_count = 0;
  std::vector<std::string> fiber_tags;  // q0 / k0, c0 / k01, k02, k03
  std::vector<GenericBlockInfo> blocks;
  Provenance provenance = Provenance::reconstructed;

  const GenericBlockInfo& block(const std::string& tag) const;
};

// The family for one of the sixteen types; throws on anything else.
FamilyTemplate build_family(const ConfigMatrix& type);

// y = 0, z = 1, auxiliary variables = 0: the generic fiber equations.
std::vector<Poly> special_fiber(const FamilyTemplate& tmpl);

// The perturbation tuple g_1 of the fiber equations, viewed inside the
// parameter space W_n, together with its computed linear-span dimension.
struct SpanSubset {
  int w_index = 0;                  // 3, 4, or 5
  std::vector<int> component_dims;  // (35), (15, 35), (21, 21, 21)
  int ambient_dim = 0;
  std::vector<Poly> generators;     // the g_1 tuple
  std::vector<GradedPiece> pieces;  // target grading
  int span_dim = 0;
};

struct DeformationReport {
  FamilyTemplate tmpl;
  std::vector<Poly> fiber_equations;                 // the g_0 list
  std::vector<std::pair<Poly, Poly>> first_order;    // (g_0, g_1) per fiber eq
  std::map<int, Poly> aux_solutions;                 // aux var -> order-t value
  SpanSubset subset;
};

// Substitutes z = 1, y = t, solves the auxiliary equations mod t^2 by
// iterated substitution, and reduces each fiber equation to g_0 + t*g_1.
DeformationReport first_order(const FamilyTemplate& tmpl);

// One spanning vector per atom monomial of the generator tuple. Requires
// atom-multilinearity (per block at most degree one, no atom-free term);
// in characteristic 0 these vectors span exactly the span of the image.
std::vector<std::vector<Poly>> span_generator_rows(
    const std::vector<Poly>& generators,
    const std::vector<GenericBlockInfo>& blocks);

// Dimension of the linear span of the image of the (multilinear)
// generator tuple inside W_n: exact rational rank of the rows above.
int span_dim(const std::vector<Poly>& generators,
             const std::vector<GradedPiece>& pieces,
             const std::vector<GenericBlockInfo>& blocks);

struct WSpace {
  int n = 0;
  std::vector<int> component_dims;
  int total = 0;
};

// W_3 = quartics in 4 variables (35), W_4 = quadric+cubic pairs in 5
// variables (15 + 35), W_5 = quadric triples in 6 variables (3 x 21).
WSpace w_dim(int n);

struct SpanCase {
  int group = 0;
  int index = 0;          // position within the group's worked families
  ConfigMatrix type;      // the family the subset comes from
};

// The worked span computations, one per family treated in detail: case
// g.i is the i-th detailed family of group g.
const std::vector<SpanCase>& span_cases();

}  // namespace cicy
