#include "hessrank/relations.hpp"

#include <map>
#include <stdexcept>

namespace hessrank {

namespace {

void check_compatible(std::span<const Polynomial> a, std::span<const Polynomial> b) {
  if (a.size() != b.size()) throw std::invalid_argument("maps have different lengths");
  if (!a.empty() && a.front().arity() != b.front().arity()) {
    throw std::invalid_argument("maps have different arities");
  }
}

using RowIndex = std::map<Monomial, std::size_t, GrlexGreater>;

void index_rows(const std::vector<Polynomial>& images, RowIndex& rows) {
  for (const auto& img : images) {
    for (const auto& [m, c] : img.terms()) rows.try_emplace(m, 0);
  }
}

RationalMatrix fill(const std::vector<Polynomial>& images, RowIndex& rows) {
  std::size_t next = 0;
  for (auto& [m, idx] : rows) idx = next++;
  RationalMatrix out(rows.size(), images.size());
  for (std::size_t j = 0; j < images.size(); ++j) {
    for (const auto& [m, c] : images[j].terms()) out(rows.at(m), j) = c;
  }
  return out;
}

// Splits each image into coefficients of monomials in the main variables; the
// coefficients live in the parameter ring.
SymMatrix fill_over_L(const std::vector<std::vector<Polynomial>>& images_list,
                      std::span<const std::size_t> main_vars, std::size_t arity) {
  std::vector<bool> is_main(arity, false);
  for (std::size_t v : main_vars) is_main[v] = true;
  std::map<Monomial, std::size_t, GrlexGreater> rows;
  std::vector<std::vector<std::map<Monomial, Polynomial, GrlexGreater>>> split(images_list.size());
  for (std::size_t b = 0; b < images_list.size(); ++b) {
    for (const auto& img : images_list[b]) {
      std::map<Monomial, Polynomial, GrlexGreater> parts;
      for (const auto& [m, c] : img.terms()) {
        Monomial outer;
        Monomial inner;
        for (std::size_t v = 0; v < arity; ++v) {
          if (is_main[v]) outer.set(v, m[v]); else inner.set(v, m[v]);
        }
        auto [it, inserted] = parts.try_emplace(outer, Polynomial(arity));
        it->second.add_term(inner, c);
        rows.try_emplace(outer, 0);
      }
      split[b].push_back(std::move(parts));
    }
  }
  std::size_t next = 0;
  for (auto& [m, idx] : rows) idx = next++;
  const std::size_t cols = images_list.front().size();
  SymMatrix out(rows.size() * images_list.size(), cols, arity);
  for (std::size_t b = 0; b < images_list.size(); ++b) {
    for (std::size_t j = 0; j < cols; ++j) {
      for (const auto& [outer, coeff] : split[b][j]) {
        out(b * rows.size() + rows.at(outer), j) = coeff;
      }
    }
  }
  return out;
}

SymMatrix block(const SymMatrix& m, std::size_t index, std::size_t blocks) {
  const std::size_t rows = m.rows() / blocks;
  std::vector<std::size_t> r(rows);
  std::vector<std::size_t> c(m.cols());
  for (std::size_t i = 0; i < rows; ++i) r[i] = index * rows + i;
  for (std::size_t j = 0; j < m.cols(); ++j) c[j] = j;
  return m.select(r, c);
}

}  // namespace

std::vector<Polynomial> power_products(std::span<const Polynomial> map, unsigned degree) {
  if (map.empty()) return {};
  const std::size_t arity = map.front().arity();
  const auto alphas = monomials_up_to(map.size(), degree);
  std::vector<std::vector<Polynomial>> powers(map.size());
  for (std::size_t i = 0; i < map.size(); ++i) {
    powers[i].push_back(Polynomial::constant(arity, 1));
    for (unsigned e = 1; e <= degree; ++e) powers[i].push_back(powers[i].back() * map[i]);
  }
  std::vector<Polynomial> out;
  out.reserve(alphas.size());
  for (const auto& alpha : alphas) {
    Polynomial v = Polynomial::constant(arity, 1);
    for (std::size_t i = 0; i < map.size(); ++i) {
      if (alpha[i] > 0) v *= powers[i][alpha[i]];
    }
    out.push_back(std::move(v));
  }
  return out;
}

RationalMatrix relation_matrix(std::span<const Polynomial> map, unsigned degree) {
  const auto images = power_products(map, degree);
  RowIndex rows;
  index_rows(images, rows);
  return fill(images, rows);
}

std::vector<RationalVector> relations_over_K(std::span<const Polynomial> map, unsigned degree) {
  return nullspace(relation_matrix(map, degree));
}

bool same_relations_over_K(std::span<const Polynomial> a, std::span<const Polynomial> b,
                           unsigned degree) {
  check_compatible(a, b);
  if (a.empty()) return true;
  const auto ia = power_products(a, degree);
  const auto ib = power_products(b, degree);
  RowIndex rows_a;
  RowIndex rows_b;
  index_rows(ia, rows_a);
  index_rows(ib, rows_b);
  const RationalMatrix ma = fill(ia, rows_a);
  const RationalMatrix mb = fill(ib, rows_b);
  const std::size_t ra = rank(ma);
  if (ra != rank(mb)) return false;
  RationalMatrix stacked(ma.rows() + mb.rows(), ma.cols());
  for (std::size_t i = 0; i < ma.rows(); ++i)
    for (std::size_t j = 0; j < ma.cols(); ++j) stacked(i, j) = ma(i, j);
  for (std::size_t i = 0; i < mb.rows(); ++i)
    for (std::size_t j = 0; j < mb.cols(); ++j) stacked(ma.rows() + i, j) = mb(i, j);
  return rank(stacked) == ra;
}

bool same_relations_over_L(std::span<const Polynomial> a, std::span<const Polynomial> b,
                           unsigned degree, std::span<const std::size_t> main_vars) {
  check_compatible(a, b);
  if (a.empty()) return true;
  const std::size_t arity = a.front().arity();
  const SymMatrix both = fill_over_L({power_products(a, degree), power_products(b, degree)},
                                     main_vars, arity);
  const std::size_t ra = rank(block(both, 0, 2));
  if (ra != rank(block(both, 1, 2))) return false;
  return rank(both) == ra;
}

}  // namespace hessrank
