#pragma once

#include <span>
#include <vector>

#include "hessrank/matrix.hpp"
#include "hessrank/rational_function.hpp"

namespace hessrank {

/// Tuple of polynomials of a common arity, with the variables split into main
/// variables (differentiated for the L-base) and parameters (generating R).
class PolyMap {
 public:
  PolyMap() = default;
  /// Main variables are x1..x_main_count.
  PolyMap(std::vector<Polynomial> components, std::size_t arity, std::size_t main_count);
  PolyMap(std::vector<Polynomial> components, std::size_t arity, std::vector<std::size_t> main_vars);

  std::size_t size() const { return components_.size(); }
  std::size_t arity() const { return arity_; }
  const std::vector<Polynomial>& components() const { return components_; }
  const Polynomial& operator[](std::size_t i) const { return components_[i]; }
  const std::vector<std::size_t>& main_vars() const { return main_; }
  std::vector<std::size_t> parameter_vars() const;
  std::vector<std::size_t> all_vars() const;

 private:
  std::vector<Polynomial> components_;
  std::size_t arity_ = 0;
  std::vector<std::size_t> main_;
};

enum class Base { K, L };

struct RankProfile {
  std::size_t r_hessian = 0;
  std::size_t trdeg_over_K = 0;
  std::size_t trdeg_over_L = 0;
};

/// Partial derivatives of h with respect to x1..x_main_count.
PolyMap gradient(const Polynomial& h, std::size_t main_count);
SymMatrix jacobian(const PolyMap& map, std::span<const std::size_t> wrt);
SymMatrix jacobian(std::span<const Polynomial> components, std::span<const std::size_t> wrt);
/// Matrix with rows (N'D - ND') for each N/D; same rank as the Jacobian of the
/// rational functions.
SymMatrix jacobian_numerators(std::span<const RationalFunction> components,
                              std::span<const std::size_t> wrt);
/// Second partials over the main variables; symmetry is asserted.
SymMatrix hessian(const Polynomial& h, std::size_t main_count);

/// Jacobian rank: with respect to all variables for K, main variables for L.
std::size_t trdeg(const PolyMap& map, Base base);
std::size_t trdeg(std::span<const RationalFunction> components, std::span<const std::size_t> wrt);
std::size_t hessian_rank(const Polynomial& h, std::size_t main_count);
RankProfile rank_profile(const Polynomial& h, std::size_t main_count);

}  // namespace hessrank
