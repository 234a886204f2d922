#include "hessrank/apex.hpp"

#include <map>
#include <stdexcept>

#include "hessrank/relations.hpp"

namespace hessrank {

namespace {

void check_length(const PolyMap& map, std::size_t len) {
  if (len != map.size()) throw std::invalid_argument("apex candidate length differs from map size");
}

std::vector<std::size_t> differentiation_vars(const PolyMap& map, Base base, bool with_t) {
  std::vector<std::size_t> wrt = base == Base::K ? map.all_vars() : map.main_vars();
  if (with_t) wrt.push_back(map.arity());
  return wrt;
}

// trdeg over the chosen base of the components in an arity extended by t.
std::size_t extended_trdeg(const PolyMap& map, const RfVector& comps, Base base) {
  const auto wrt = differentiation_vars(map, base, true);
  return trdeg(comps, wrt);
}

std::size_t base_trdeg(const PolyMap& map, Base base) {
  const auto wrt = differentiation_vars(map, base, false);
  if (wrt.empty() || map.size() == 0) return 0;
  return rank(jacobian(map, wrt));
}

RfVector lift(std::span<const RationalFunction> v, std::size_t arity) {
  RfVector out;
  out.reserve(v.size());
  for (const auto& f : v) {
    if (f.arity() > arity) throw std::invalid_argument("apex candidate arity exceeds map arity");
    out.push_back(f.with_arity(arity));
  }
  return out;
}

struct ConstraintSystem {
  RationalMatrix lhs;
  RationalVector rhs;
};

// Expands sum_i G_i * unknown_i = sum_i G_i * target_i over monomials, for every
// left-kernel generator G. Without a target the right-hand side is zero.
ConstraintSystem expand_constraints(const std::vector<PolyVector>& kernel, std::size_t m,
                                    const std::vector<Polynomial>* target) {
  std::vector<RationalVector> rows;
  RationalVector rhs;
  for (const auto& g : kernel) {
    std::map<Monomial, std::size_t, GrlexGreater> index;
    for (const auto& gi : g) {
      for (const auto& [mono, c] : gi.terms()) index.try_emplace(mono, 0);
    }
    Polynomial image(g.front().arity());
    if (target) {
      for (std::size_t i = 0; i < m; ++i) {
        if (!g[i].is_zero() && !(*target)[i].is_zero()) image += g[i] * (*target)[i];
      }
      for (const auto& [mono, c] : image.terms()) index.try_emplace(mono, 0);
    }
    for (const auto& [mono, unused] : index) {
      RationalVector row(m, Rational(0));
      for (std::size_t i = 0; i < m; ++i) row[i] = g[i].coefficient(mono);
      rows.push_back(std::move(row));
      rhs.push_back(image.coefficient(mono));
    }
  }
  return {RationalMatrix::from_rows(rows, m), std::move(rhs)};
}

std::vector<RationalVector> standard_basis(std::size_t m) {
  std::vector<RationalVector> out;
  for (std::size_t i = 0; i < m; ++i) {
    RationalVector e(m, Rational(0));
    e[i] = 1;
    out.push_back(std::move(e));
  }
  return out;
}

// Generators G of the left kernel of the full Jacobian; in zero variables the
// Jacobian is empty and every unit vector is a generator.
std::vector<PolyVector> jacobian_left_kernel(const PolyMap& map) {
  if (map.arity() > 0) return left_kernel(jacobian(map, map.all_vars()));
  std::vector<PolyVector> kernel;
  for (std::size_t i = 0; i < map.size(); ++i) {
    PolyVector g(map.size(), Polynomial(0));
    g[i] = Polynomial::constant(0, 1);
    kernel.push_back(std::move(g));
  }
  return kernel;
}

}  // namespace

RfVector to_rf_vector(std::span<const Rational> v, std::size_t arity) {
  RfVector out;
  out.reserve(v.size());
  for (const auto& c : v) out.push_back(RationalFunction::constant(arity, c));
  return out;
}

bool is_projective_image_apex(const PolyMap& map, std::span<const RationalFunction> p, Base base) {
  check_length(map, p.size());
  bool all_zero = true;
  for (const auto& f : p) all_zero = all_zero && f.is_zero();
  if (all_zero) throw std::invalid_argument("projective apex candidate must be nonzero");
  const std::size_t n = map.arity();
  const RfVector lifted = lift(p, n + 1);
  const RationalFunction t(Polynomial::variable(n + 1, n));
  RfVector comps;
  for (std::size_t i = 0; i < map.size(); ++i) {
    comps.push_back(RationalFunction(map[i].with_arity(n + 1)) + t * lifted[i]);
  }
  return extended_trdeg(map, comps, base) == base_trdeg(map, base);
}

bool is_projective_image_apex(const PolyMap& map, std::span<const Rational> p, Base base) {
  const RfVector v = to_rf_vector(p, map.arity());
  return is_projective_image_apex(map, v, base);
}

bool is_image_apex(const PolyMap& map, std::span<const RationalFunction> a, Base base) {
  check_length(map, a.size());
  const std::size_t n = map.arity();
  const RfVector lifted = lift(a, n + 1);
  const RationalFunction t(Polynomial::variable(n + 1, n));
  const RationalFunction one_minus_t = RationalFunction::constant(n + 1, 1) - t;
  RfVector comps;
  for (std::size_t i = 0; i < map.size(); ++i) {
    comps.push_back(one_minus_t * RationalFunction(map[i].with_arity(n + 1)) + t * lifted[i]);
  }
  return extended_trdeg(map, comps, base) == base_trdeg(map, base);
}

bool is_image_apex(const PolyMap& map, std::span<const Rational> a, Base base) {
  const RfVector v = to_rf_vector(a, map.arity());
  return is_image_apex(map, v, base);
}

bool in_jacobian_column_space(const PolyMap& map, std::span<const RationalFunction> p, Base base) {
  check_length(map, p.size());
  const auto wrt = differentiation_vars(map, base, false);
  const RfVector lifted = lift(p, map.arity());
  const std::vector<Polynomial> cleared = clear_denominators(lifted);
  if (wrt.empty()) {
    for (const auto& c : cleared) {
      if (!c.is_zero()) return false;
    }
    return true;
  }
  return in_column_space(jacobian(map, wrt), cleared);
}

std::vector<RationalVector> projective_apex_space(const PolyMap& map) {
  const std::size_t m = map.size();
  if (m == 0) return {};
  const auto kernel = jacobian_left_kernel(map);
  if (kernel.empty()) return standard_basis(m);
  const ConstraintSystem sys = expand_constraints(kernel, m, nullptr);
  return canonical_basis(nullspace(sys.lhs), m);
}

std::optional<ImageApexSet> image_apex_affine(const PolyMap& map) {
  const std::size_t m = map.size();
  ImageApexSet out;
  out.point.assign(m, Rational(0));
  if (m == 0) return out;
  const auto kernel = jacobian_left_kernel(map);
  if (kernel.empty()) {
    out.directions = standard_basis(m);
    return out;
  }
  const ConstraintSystem sys = expand_constraints(kernel, m, &map.components());
  const auto sol = solve(sys.lhs, sys.rhs);
  if (!sol) return std::nullopt;
  out.directions = canonical_basis(sol->directions, m);
  out.point = sol->particular;
  // Canonical representative: zero at the pivot coordinates of the directions.
  for (const auto& d : out.directions) {
    std::size_t pivot = 0;
    while (sgn(d[pivot]) == 0) ++pivot;
    const Rational f = out.point[pivot] / d[pivot];
    if (sgn(f) == 0) continue;
    for (std::size_t i = 0; i < m; ++i) out.point[i] -= f * d[i];
  }
  return out;
}

ApexReport apex_report(const PolyMap& map) {
  ApexReport out;
  out.base = Base::K;
  out.projective_basis = projective_apex_space(map);
  out.image_apex_set = image_apex_affine(map);
  return out;
}

PolyMap homogenize_map(const PolyMap& map) {
  const std::size_t n = map.arity();
  const Polynomial t = Polynomial::variable(n + 1, n);
  std::vector<Polynomial> comps;
  for (const auto& c : map.components()) comps.push_back(t * c.with_arity(n + 1));
  comps.push_back(t);
  std::vector<std::size_t> main = map.main_vars();
  main.push_back(n);
  return PolyMap(std::move(comps), n + 1, std::move(main));
}

PlanStatus plan_status(const PolyMap& map) {
  PlanStatus out;
  const std::size_t m = map.size();
  out.r = trdeg(map, Base::K);
  out.s = projective_apex_space(map).size();
  out.has_K_image_apex = image_apex_affine(map).has_value();
  const std::size_t linear_relations = relations_over_K(map.components(), 1).size();
  out.linear_ideal_generated = linear_relations == m - out.r;

  const bool c1 = out.r <= out.s;
  const bool c2 = out.r <= out.s + 1 && out.s <= out.r && out.has_K_image_apex;
  const bool c3 = out.linear_ideal_generated;
  if (c1 != c2 || c2 != c3) {
    throw std::logic_error("inconsistent apex plan conditions");
  }
  const std::vector<std::size_t> main = map.main_vars();
  RfVector constant_part;
  for (const auto& c : map.components()) constant_part.emplace_back(c.zero_out(main));
  out.constant_part_is_apex = m == 0 || is_image_apex(map, constant_part, Base::K);
  if (c1 && !out.constant_part_is_apex) {
    throw std::logic_error("constant part is not an image apex although the plan conditions hold");
  }
  return out;
}

}  // namespace hessrank
