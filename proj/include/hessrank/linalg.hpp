#pragma once

#include <optional>
#include <span>
#include <vector>

#include "hessrank/matrix.hpp"

namespace hessrank {

/// Outcome of fraction-free elimination: the rank and the original row and
/// column indices of the pivots. The minor on those rows and columns is
/// nonsingular.
struct Elimination {
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_rows;
  std::vector<std::size_t> pivot_cols;
};

/// Bareiss elimination over the rational function field, choosing at each step
/// the remaining nonzero entry with the fewest terms as pivot.
Elimination eliminate(const SymMatrix& m);
std::size_t rank(const SymMatrix& m);
Polynomial determinant(const SymMatrix& m);

/// Basis of {v : M v = 0}; one vector per non-pivot column, denominators
/// cleared, content removed, first nonzero entry with positive leading
/// coefficient.
std::vector<PolyVector> right_kernel(const SymMatrix& m);
/// Basis of {G : G^T M = 0}, normalized as right_kernel.
std::vector<PolyVector> left_kernel(const SymMatrix& m);

bool in_column_space(const SymMatrix& m, std::span<const Polynomial> v);

/// Divides out the polynomial and rational content of a nonzero vector and
/// fixes the sign of the leading coefficient of its first nonzero entry.
PolyVector normalize_vector(PolyVector v);

/// Reduced row echelon form over Q.
struct Rref {
  RationalMatrix matrix;
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

Rref rref(RationalMatrix m);
std::size_t rank(const RationalMatrix& m);
/// Basis of {v : M v = 0}, one vector per free column with a 1 there.
std::vector<RationalVector> nullspace(const RationalMatrix& m);

struct AffineSolution {
  RationalVector particular;
  std::vector<RationalVector> directions;
};
/// Solution set of M v = b, or nullopt when inconsistent.
std::optional<AffineSolution> solve(const RationalMatrix& m, std::span<const Rational> b);

/// Throws std::domain_error when singular.
RationalMatrix inverse(const RationalMatrix& m);
RfMatrix inverse(const RfMatrix& m);

/// Scales each vector to coprime integer entries with a positive first
/// nonzero entry, after reducing the list to row echelon form. Produces a
/// canonical basis of the span.
std::vector<RationalVector> canonical_basis(const std::vector<RationalVector>& vectors,
                                            std::size_t dim);

/// Scales a nonzero rational vector to coprime integers with positive first nonzero entry.
RationalVector primitive_integer(RationalVector v);

}  // namespace hessrank
