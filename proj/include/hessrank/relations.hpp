#pragma once

#include <span>
#include <vector>

#include "hessrank/linalg.hpp"

namespace hessrank {

/// H^alpha for every exponent vector alpha of total degree <= degree, in the
/// grlex order of monomials_up_to.
std::vector<Polynomial> power_products(std::span<const Polynomial> map, unsigned degree);

/// Coefficient matrix of the power products over Q: rows are monomials, columns
/// are the exponents alpha. Its right kernel is the space of relations f with
/// deg f <= degree and f(H) = 0.
RationalMatrix relation_matrix(std::span<const Polynomial> map, unsigned degree);

/// Basis of the relations of degree <= degree with rational coefficients,
/// expressed in the monomial order of monomials_up_to(map.size(), degree).
std::vector<RationalVector> relations_over_K(std::span<const Polynomial> map, unsigned degree);

/// Whether two maps of equal length and arity satisfy exactly the same
/// relations with rational coefficients up to the given degree.
bool same_relations_over_K(std::span<const Polynomial> a, std::span<const Polynomial> b,
                           unsigned degree);

/// Same question with coefficients in the fraction field of the polynomial ring
/// in the variables outside `main_vars`.
bool same_relations_over_L(std::span<const Polynomial> a, std::span<const Polynomial> b,
                           unsigned degree, std::span<const std::size_t> main_vars);

}  // namespace hessrank
