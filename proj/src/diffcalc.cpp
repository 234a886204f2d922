#include "hessrank/diffcalc.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "hessrank/linalg.hpp"

namespace hessrank {

PolyMap::PolyMap(std::vector<Polynomial> components, std::size_t arity, std::size_t main_count)
    : components_(std::move(components)), arity_(arity), main_(main_count) {
  if (main_count > arity) throw std::out_of_range("main variable count exceeds arity");
  std::iota(main_.begin(), main_.end(), 0);
  for (const auto& c : components_) {
    if (c.arity() != arity) throw std::invalid_argument("map component arity mismatch");
  }
}

PolyMap::PolyMap(std::vector<Polynomial> components, std::size_t arity,
                 std::vector<std::size_t> main_vars)
    : components_(std::move(components)), arity_(arity), main_(std::move(main_vars)) {
  std::sort(main_.begin(), main_.end());
  main_.erase(std::unique(main_.begin(), main_.end()), main_.end());
  if (!main_.empty() && main_.back() >= arity) throw std::out_of_range("main variable out of range");
  for (const auto& c : components_) {
    if (c.arity() != arity) throw std::invalid_argument("map component arity mismatch");
  }
}

std::vector<std::size_t> PolyMap::parameter_vars() const {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < arity_; ++v) {
    if (!std::binary_search(main_.begin(), main_.end(), v)) out.push_back(v);
  }
  return out;
}

std::vector<std::size_t> PolyMap::all_vars() const {
  std::vector<std::size_t> out(arity_);
  std::iota(out.begin(), out.end(), 0);
  return out;
}

PolyMap gradient(const Polynomial& h, std::size_t main_count) {
  if (main_count > h.arity()) throw std::out_of_range("main variable count exceeds arity");
  std::vector<Polynomial> comps;
  comps.reserve(main_count);
  for (std::size_t i = 0; i < main_count; ++i) comps.push_back(h.derivative(i));
  return PolyMap(std::move(comps), h.arity(), main_count);
}

SymMatrix jacobian(std::span<const Polynomial> components, std::span<const std::size_t> wrt) {
  if (wrt.empty()) throw std::invalid_argument("jacobian needs at least one variable");
  const std::size_t arity = components.empty() ? 0 : components.front().arity();
  SymMatrix out(components.size(), wrt.size(), arity);
  for (std::size_t i = 0; i < components.size(); ++i) {
    for (std::size_t j = 0; j < wrt.size(); ++j) out(i, j) = components[i].derivative(wrt[j]);
  }
  return out;
}

SymMatrix jacobian(const PolyMap& map, std::span<const std::size_t> wrt) {
  if (wrt.empty()) throw std::invalid_argument("jacobian needs at least one variable");
  SymMatrix out(map.size(), wrt.size(), map.arity());
  for (std::size_t i = 0; i < map.size(); ++i) {
    for (std::size_t j = 0; j < wrt.size(); ++j) out(i, j) = map[i].derivative(wrt[j]);
  }
  return out;
}

SymMatrix jacobian_numerators(std::span<const RationalFunction> components,
                              std::span<const std::size_t> wrt) {
  if (wrt.empty()) throw std::invalid_argument("jacobian needs at least one variable");
  const std::size_t arity = components.empty() ? 0 : components.front().arity();
  SymMatrix out(components.size(), wrt.size(), arity);
  for (std::size_t i = 0; i < components.size(); ++i) {
    for (std::size_t j = 0; j < wrt.size(); ++j) {
      out(i, j) = components[i].derivative_numerator(wrt[j]);
    }
  }
  return out;
}

SymMatrix hessian(const Polynomial& h, std::size_t main_count) {
  if (main_count > h.arity()) throw std::out_of_range("main variable count exceeds arity");
  SymMatrix out(main_count, main_count, h.arity());
  for (std::size_t i = 0; i < main_count; ++i) {
    const Polynomial di = h.derivative(i);
    for (std::size_t j = 0; j < main_count; ++j) out(i, j) = di.derivative(j);
  }
  for (std::size_t i = 0; i < main_count; ++i) {
    for (std::size_t j = i + 1; j < main_count; ++j) {
      if (!(out(i, j) == out(j, i))) throw std::logic_error("hessian is not symmetric");
    }
  }
  return out;
}

std::size_t trdeg(const PolyMap& map, Base base) {
  if (map.size() == 0) return 0;
  const std::vector<std::size_t> wrt = base == Base::K ? map.all_vars() : map.main_vars();
  if (wrt.empty()) return 0;
  return rank(jacobian(map, wrt));
}

std::size_t trdeg(std::span<const RationalFunction> components, std::span<const std::size_t> wrt) {
  if (components.empty() || wrt.empty()) return 0;
  return rank(jacobian_numerators(components, wrt));
}

std::size_t hessian_rank(const Polynomial& h, std::size_t main_count) {
  if (main_count == 0) return 0;
  return rank(hessian(h, main_count));
}

RankProfile rank_profile(const Polynomial& h, std::size_t main_count) {
  const PolyMap grad = gradient(h, main_count);
  RankProfile out;
  out.r_hessian = hessian_rank(h, main_count);
  out.trdeg_over_K = trdeg(grad, Base::K);
  out.trdeg_over_L = trdeg(grad, Base::L);
  return out;
}

}  // namespace hessrank
