// Coefficients of F_{lambda,w} as counts of selections from the sets A_l(w),
// their polytope reading, and the order-by-order approximation of key
// polynomial coefficients through P_w.
#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "keyseries/bounded_sequences.hpp"
#include "keyseries/key_series.hpp"
#include "keyseries/multiplicity.hpp"
#include "keyseries/multiset.hpp"
#include "keyseries/permutation.hpp"
#include "keyseries/poly.hpp"

namespace keyseries {

using GapVector = std::vector<int>;

namespace detail {

struct SelectionBlock {
  const std::vector<AscSeq>* seqs;
  int h;
};

inline void count_selections(const std::vector<SelectionBlock>& blocks, std::size_t b, std::size_t a, int left,
                             std::array<int, kMaxVars + 1>& rest, Integer& total) {
  if (b == blocks.size()) {
    for (int j = 1; j <= kMaxVars; ++j)
      if (rest[j]) return;
    total += 1;
    return;
  }
  const auto& seqs = *blocks[b].seqs;
  if (left == 0) {
    std::size_t nb = b + 1;
    count_selections(blocks, nb, 0, nb < blocks.size() ? blocks[nb].h : 0, rest, total);
    return;
  }
  if (a == seqs.size()) return;
  if (a + 1 == seqs.size()) {
    // The last sequence takes everything that is left.
    auto e = seqs[a].entries();
    bool ok = true;
    for (int v : e) ok = ok && rest[v] >= left;
    if (!ok) return;
    for (int v : e) rest[v] -= left;
    std::size_t nb = b + 1;
    count_selections(blocks, nb, 0, nb < blocks.size() ? blocks[nb].h : 0, rest, total);
    for (int v : e) rest[v] += left;
    return;
  }
  auto e = seqs[a].entries();
  int g = 0;
  while (true) {
    count_selections(blocks, b, a + 1, left - g, rest, total);
    if (g == left) break;
    bool ok = true;
    for (int v : e) ok = ok && rest[v] > 0;
    if (!ok) break;
    for (int v : e) --rest[v];
    ++g;
  }
  for (int v : e) rest[v] += g;
}

inline int ambient_rank(const Permutation& w, const GapVector& h, const Monomial& mu) {
  int n = std::max<int>(w.n(), static_cast<int>(h.size()));
  return std::max(n, mu.max_x_index());
}

}  // namespace detail

// Gap vector h_l = lambda_l - lambda_{l+1}, l = 1..n.
inline GapVector gap_vector(const Partition& lambda, int n) { return lambda.gaps(n); }

// Number of families (g_alpha) with sum_{alpha in A_l(w)} g_alpha = h_l for
// every l and sum g_alpha alpha = mu.
inline Integer F_coefficient_gaps(const Permutation& w, const GapVector& h, const Monomial& mu) {
  for (int v : h)
    if (v < 0) return 0;
  if (mu.T_degree() != 0 || mu.xi() != 0) throw std::invalid_argument("mu must be an x-monomial");
  int n = detail::ambient_rank(w, h, mu);
  Permutation we = w.extended(n);
  std::vector<detail::SelectionBlock> blocks;
  for (std::size_t l = 1; l <= h.size(); ++l)
    if (h[l - 1] > 0) blocks.push_back({&enum_A(we, static_cast<int>(l)), h[l - 1]});
  std::array<int, kMaxVars + 1> rest{};
  for (int j = 1; j <= kMaxVars; ++j) rest[j] = mu.x(j);
  Integer total = 0;
  detail::count_selections(blocks, 0, 0, blocks.empty() ? 0 : blocks[0].h, rest, total);
  return total;
}

inline Integer F_coefficient(const Partition& lambda, const Permutation& w, const Monomial& mu) {
  int n = std::max({w.n(), lambda.length(), mu.max_x_index()});
  return F_coefficient_gaps(w, lambda.gaps(n), mu);
}

// The same coefficient read off the expansion of 1 / prod_l prod_{alpha} (1 - x^alpha T_l).
inline Integer F_series_coefficient(const Partition& lambda, const Permutation& w, const Monomial& mu) {
  int n = std::max({w.n(), lambda.length(), mu.max_x_index()});
  GapVector h = lambda.gaps(n);
  Permutation we = w.extended(n);
  std::vector<Monomial> factors;
  int D = 0;
  for (int l = 1; l <= n; ++l) {
    if (h[l - 1] == 0) continue;
    D += h[l - 1];
    for (const auto& a : enum_A(we, l)) factors.push_back(MultiSet::from_seq(a).monomial() * Monomial::make_T(l));
  }
  if (factors.empty()) return mu == Monomial::one() ? 1 : 0;
  Poly F = series_inverse_product(factors, D);
  return F.coefficient(mu * lambda.T_monomial());
}

struct PolytopeCount {
  Integer count;
  int dimension = 0;
};

// Integral points of prod_l Delta(h_l, A_l(w)) on the hyperplane sum g alpha = mu.
inline PolytopeCount polytope_point_count(const Permutation& w, const GapVector& h, const Monomial& mu) {
  PolytopeCount r{F_coefficient_gaps(w, h, mu), 0};
  int n = detail::ambient_rank(w, h, mu);
  Permutation we = w.extended(n);
  for (std::size_t l = 1; l <= h.size(); ++l)
    if (h[l - 1] > 0) r.dimension += static_cast<int>(enum_A(we, static_cast<int>(l)).size()) - 1;
  return r;
}

// Lower h by one at each listed block index; an index may repeat.
inline GapVector lowered(GapVector h, const std::vector<int>& blocks) {
  for (int b : blocks) {
    if (b < 1) throw std::out_of_range("block index");
    if (b > static_cast<int>(h.size())) h.resize(b, 0);
    --h[b - 1];
  }
  return h;
}

inline bool admissible(const GapVector& h) {
  for (int v : h)
    if (v < 0) return false;
  return true;
}

// Coefficient of x^mu in K_{lambda,w} approximated through the T-degree
// `order` part of P_w. Order 1 agrees with order 0.
inline Integer approx_coefficient(const Partition& lambda, const Permutation& w, const Monomial& mu, int order) {
  if (order < 0 || order > 3) throw std::invalid_argument("order must be 0, 1, 2 or 3");
  int n = std::max({w.n(), lambda.length(), mu.max_x_index()});
  GapVector h = lambda.gaps(n);
  Integer total = F_coefficient_gaps(w, h, mu);
  if (order < 2) return total;
  Permutation we = w.extended(n);
  Poly P = numerator_P(we, false, order);
  for (int l = 1; l <= n; ++l)
    for (int k = 1; k <= l; ++k) {
      GapVector hk = lowered(h, {k, l});
      if (!admissible(hk)) continue;
      for (const auto& eta : enum_B(we, k, l)) {
        Monomial em = eta.monomial();
        if (!em.divides(mu)) continue;
        Integer m = multiplicity2(P, k, l, eta);
        if (m != 0) total -= m * F_coefficient_gaps(w, hk, em.cofactor(mu));
      }
    }
  if (order < 3) return total;
  Poly cubic = P.graded_part(3);
  for (const auto& [mono, c] : cubic.terms()) {
    GapVector hk = lowered(h, T_blocks(mono));
    if (!admissible(hk)) continue;
    Monomial tau = mono.x_part();
    if (!tau.divides(mu)) continue;
    total += c * F_coefficient_gaps(w, hk, tau.cofactor(mu));
  }
  return total;
}

// K_{lambda,w} coefficient as the full sum over the terms of P_w.
inline Integer exact_coefficient_via_P(const Partition& lambda, const Permutation& w, const Monomial& mu) {
  int n = std::max({w.n(), lambda.length(), mu.max_x_index()});
  GapVector h = lambda.gaps(n);
  Poly P = numerator_P(w.extended(n));
  Integer total = 0;
  for (const auto& [mono, c] : P.terms()) {
    GapVector hk = lowered(h, T_blocks(mono));
    if (!admissible(hk)) continue;
    Monomial nu = mono.x_part();
    if (!nu.divides(mu)) continue;
    total += c * F_coefficient_gaps(w, hk, nu.cofactor(mu));
  }
  return total;
}

}  // namespace keyseries
