#pragma once

#include <optional>
#include <span>
#include <vector>

#include "hessrank/diffcalc.hpp"
#include "hessrank/linalg.hpp"

namespace hessrank {

/// Affine set of image apices: point + span(directions).
struct ImageApexSet {
  RationalVector point;
  std::vector<RationalVector> directions;
};

struct ApexReport {
  std::vector<RationalVector> projective_basis;
  std::optional<ImageApexSet> image_apex_set;
  Base base = Base::K;

  std::size_t s() const { return projective_basis.size(); }
};

/// trdeg(H + t p) == trdeg(H) with t a fresh variable appended after the
/// existing ones. Entries of p may involve any variables of H.
bool is_projective_image_apex(const PolyMap& map, std::span<const RationalFunction> p, Base base);
bool is_projective_image_apex(const PolyMap& map, std::span<const Rational> p, Base base);

/// trdeg((1 - t) H + t a) == trdeg(H).
bool is_image_apex(const PolyMap& map, std::span<const RationalFunction> a, Base base);
bool is_image_apex(const PolyMap& map, std::span<const Rational> a, Base base);

/// Column-space route: p lies in the column space of the Jacobian of H with
/// respect to the base's differentiation variables.
bool in_jacobian_column_space(const PolyMap& map, std::span<const RationalFunction> p, Base base);

/// Canonical basis of the rational projective image apices (plus zero), from
/// the constraints G^T p = 0 for the left kernel of the full Jacobian.
std::vector<RationalVector> projective_apex_space(const PolyMap& map);

/// Rational image apices from the constraints G^T a = G^T H; nullopt when
/// there are none.
std::optional<ImageApexSet> image_apex_affine(const PolyMap& map);

ApexReport apex_report(const PolyMap& map);

/// (t H_1, ..., t H_m, t) with t a fresh main variable appended after the
/// existing ones.
PolyMap homogenize_map(const PolyMap& map);

struct PlanStatus {
  std::size_t r = 0;
  std::size_t s = 0;
  bool has_K_image_apex = false;
  bool linear_ideal_generated = false;
  bool constant_part_is_apex = false;
};

/// Checks the three equivalent conditions relating r, s, rational image
/// apices and degree-one relations. Throws std::logic_error when they disagree.
PlanStatus plan_status(const PolyMap& map);

/// Helpers shared with classification code.
RfVector to_rf_vector(std::span<const Rational> v, std::size_t arity);

}  // namespace hessrank
