// Quadratic and cubic multiplicities read off P_w, the closed forms for the
// strata r = 1 and r = 2, the transfer rules under w -> s_i w, presentation
// posets and the conjecture scanners.
#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "keyseries/bounded_sequences.hpp"
#include "keyseries/key_series.hpp"
#include "keyseries/multiset.hpp"
#include "keyseries/permutation.hpp"
#include "keyseries/poly.hpp"

namespace keyseries {

struct Counterexample {
  std::string w;
  int p = 0, k = 0, l = 0;
  std::string eta;
  std::string detail;
};

struct CheckReport {
  std::vector<Counterexample> violations;
  std::map<std::string, long long> stats;
  bool ok() const { return violations.empty(); }
  void merge(const CheckReport& o) {
    violations.insert(violations.end(), o.violations.begin(), o.violations.end());
    for (const auto& [key, v] : o.stats) stats[key] += v;
  }
  void fail(const Permutation& w, int k, int l, const MultiSet& eta, std::string detail, int p = 0) {
    violations.push_back({w.to_string(), p, k, l, eta.to_string(), std::move(detail)});
  }
};

inline Monomial block_monomial(const MultiSet& eta, std::initializer_list<int> blocks) {
  Monomial m = eta.monomial();
  for (int b : blocks) m = m * Monomial::make_T(b);
  return m;
}

// m^{k,l}_eta: the term appears in P_w as -m x^eta T_k T_l.
inline Integer multiplicity2(const Poly& P, int k, int l, const MultiSet& eta) {
  check_size(k, l, eta);
  return -P.coefficient(block_monomial(eta, {k, l}));
}
inline Integer multiplicity2(const Permutation& w, int k, int l, const MultiSet& eta) {
  return multiplicity2(numerator_P(w, false, 2), k, l, eta);
}

// m^{p,k,l}_tau: the term appears in P_w as +m x^tau T_p T_k T_l.
inline Integer multiplicity3(const Poly& P, int p, int k, int l, const MultiSet& tau) {
  if (tau.size() != p + k + l) throw std::invalid_argument("multiset size does not match p + k + l");
  return P.coefficient(block_monomial(tau, {p, k, l}));
}
inline Integer multiplicity3(const Permutation& w, int p, int k, int l, const MultiSet& tau) {
  return multiplicity3(numerator_P(w, false, 3), p, k, l, tau);
}

// Block indices of a T-monomial in increasing order, e.g. T1^2 T2 -> (1,1,2).
inline std::vector<int> T_blocks(const Monomial& m) {
  std::vector<int> out;
  for (int l = 1; l <= kMaxVars; ++l)
    for (int e = 0; e < m.T(l); ++e) out.push_back(l);
  return out;
}

struct MultiplicityRecord {
  int k = 0, l = 0;
  MultiSet eta;
  Integer m;
  bool in_B = false;
  int r = 0;
};

inline std::vector<MultiplicityRecord> quadratic_records(const Permutation& w, const Poly& P) {
  std::vector<MultiplicityRecord> out;
  for (const auto& [mono, c] : P.terms()) {
    if (mono.T_degree() != 2 || mono.xi() != 0) continue;
    auto b = T_blocks(mono);
    MultiSet eta = MultiSet::from_monomial(mono);
    MultiplicityRecord rec{b[0], b[1], eta, -c, false, 0};
    rec.in_B = eta.max_multiplicity() <= 2 && is_in_B(w, b[0], b[1], eta);
    rec.r = b[0] - kronecker(b[0], b[1]) - std::popcount(eta.eta2());
    out.push_back(rec);
  }
  return out;
}

inline Poly N_quadratic(const Permutation& w, int i) {
  if (!w.is_ascent(i)) throw std::invalid_argument("not an ascent");
  return N_factor(w, i, 2).graded_part(2);
}

inline int rank_r(int k, int l, const MultiSet& eta) {
  return k - kronecker(k, l) - std::popcount(eta.eta2());
}

// On the strata l > k = |eta2| + 1 and l = k = |eta2| + 2 the
// multiplicity is 1 on B and 0 elsewhere.
inline CheckReport check_diff1(const Permutation& w, const Poly& P) {
  CheckReport rep;
  int n = w.n();
  auto in_stratum = [](int k, int l, const MultiSet& eta) {
    int e2 = std::popcount(eta.eta2());
    return (l > k && k == e2 + 1) || (l == k && k == e2 + 2);
  };
  for (int l = 1; l <= n; ++l)
    for (int k = 1; k <= l; ++k)
      for (const auto& eta : enum_Btilde(w, k, l)) {
        if (!in_stratum(k, l, eta)) continue;
        bool inB = is_in_B(w, k, l, eta);
        Integer m = multiplicity2(P, k, l, eta);
        ++rep.stats["checked"];
        if (inB) ++rep.stats["in_B"];
        if (m != (inB ? 1 : 0))
          rep.fail(w, k, l, eta, "multiplicity " + m.str() + ", expected " + (inB ? "1" : "0"));
      }
  for (const auto& rec : quadratic_records(w, P))
    if (in_stratum(rec.k, rec.l, rec.eta) && !in_Btilde(w, rec.k, rec.l, rec.eta))
      rep.fail(w, rec.k, rec.l, rec.eta, "nonzero multiplicity outside B~");
  return rep;
}

// 1-based positions in gamma = sorted eta1 of the entries of s.
inline std::vector<int> positions_in_eta1(const MultiSet& eta, const AscSeq& s) {
  std::vector<int> out;
  auto g = AscSeq(eta.eta1()).entries();
  for (std::size_t j = 0; j < g.size(); ++j)
    if (s.contains(g[j])) out.push_back(static_cast<int>(j) + 1);
  return out;
}

inline long long diff2_formula(int a, int b, int c, int d) {
  int eps = b > c ? 1 : 0;
  return d - a + 1 - eps * (b - c);
}

// For l > k = |eta2| + 2 and eta in B the multiplicity is
// d - a + 1 - eps (b - c), and it lies in [3, l - k + 4].
inline CheckReport check_diff2(const Permutation& w, const Poly& P) {
  CheckReport rep;
  int n = w.n();
  for (int l = 1; l <= n; ++l)
    for (int k = 2; k < l; ++k)
      for (const auto& eta : enum_B(w, k, l)) {
        if (std::popcount(eta.eta2()) != k - 2) continue;
        auto ex = extremal_presentation(w, k, l, eta);
        auto mn = positions_in_eta1(eta, ex->beta_min);
        auto mx = positions_in_eta1(eta, ex->beta_max);
        Integer m = multiplicity2(P, k, l, eta);
        ++rep.stats["checked"];
        if (mn.size() != 2 || mx.size() != 2) {
          rep.fail(w, k, l, eta, "extremal elements do not meet eta1 in two entries");
          continue;
        }
        long long f = diff2_formula(mn[0], mn[1], mx[0], mx[1]);
        ++rep.stats["value_" + std::to_string(f)];
        if (m != f)
          rep.fail(w, k, l, eta, "multiplicity " + m.str() + ", closed form " + std::to_string(f));
        if (m < 3 || m > l - k + 4)
          rep.fail(w, k, l, eta, "multiplicity " + m.str() + " outside [3, l-k+4]");
      }
  return rep;
}

// The five index patterns of (beta_min cap eta1 / beta_max cap eta1) for
// l = k = |eta2| + 3, with their multiplicities.
inline int lketa23_pattern(const std::vector<int>& mn) {
  static const std::vector<std::vector<int>> patterns = {
      {1, 3, 5}, {1, 3, 4}, {1, 2, 5}, {1, 2, 4}, {1, 2, 3}};
  for (std::size_t j = 0; j < patterns.size(); ++j)
    if (mn == patterns[j]) return static_cast<int>(j) + 1;
  return 0;
}
inline int lketa23_expected(int pattern) {
  static const int values[] = {0, 3, 4, 4, 5, 5};
  return values[pattern];
}
inline long long lketa23_unified(const std::vector<int>& mn, const std::vector<int>& mx) {
  int a = mn[0], b = mn[1], c = mn[2], d = mx[0], e = mx[1], f = mx[2];
  int eps = b > d ? 1 : 0, del = c > e ? 1 : 0;
  return f - a - eps * (b - d) - del * (c - e);
}

inline CheckReport check_lketa23(const Permutation& w, const Poly& P) {
  CheckReport rep;
  int n = w.n();
  for (int k = 3; k <= n; ++k)
    for (const auto& eta : enum_B(w, k, k)) {
      if (std::popcount(eta.eta2()) != k - 3) continue;
      auto ex = extremal_presentation(w, k, k, eta);
      auto mn = positions_in_eta1(eta, ex->beta_min);
      auto mx = positions_in_eta1(eta, ex->beta_max);
      Integer m = multiplicity2(P, k, k, eta);
      ++rep.stats["checked"];
      int pat = mn.size() == 3 && mx.size() == 3 ? lketa23_pattern(mn) : 0;
      if (pat == 0) {
        rep.fail(w, k, k, eta, "unclassifiable pattern");
        continue;
      }
      ++rep.stats["pattern_" + std::to_string(pat)];
      if (m != lketa23_expected(pat))
        rep.fail(w, k, k, eta, "pattern " + std::to_string(pat) + " multiplicity " + m.str());
      if (m != lketa23_unified(mn, mx))
        rep.fail(w, k, k, eta, "unified form disagrees with multiplicity " + m.str());
    }
  return rep;
}

// Lower bounds 2^r - 1 for r <= 2 and the range for l = k = |eta2|+3.
inline CheckReport check_bounds(const Permutation& w, const Poly& P) {
  CheckReport rep;
  for (const auto& rec : quadratic_records(w, P)) {
    ++rep.stats["terms"];
    if (rec.m != 0 && !rec.in_B) rep.fail(w, rec.k, rec.l, rec.eta, "nonzero multiplicity outside B");
  }
  for (int l = 1; l <= w.n(); ++l)
    for (int k = 1; k <= l; ++k)
      for (const auto& eta : enum_B(w, k, l)) {
        int r = rank_r(k, l, eta);
        Integer m = multiplicity2(P, k, l, eta);
        ++rep.stats["in_B"];
        if (r <= 2 && m < (1 << r) - 1)
          rep.fail(w, k, l, eta, "multiplicity " + m.str() + " below 2^r - 1");
        if (k == l && r == 2 && (m < 3 || m > 5))
          rep.fail(w, k, l, eta, "multiplicity " + m.str() + " outside [3, 5]");
      }
  return rep;
}

// Monotonicity m(s_i w) >= m(w) on the strata r <= 2.
inline CheckReport check_lowbdr2_monotone(const Permutation& w, const Poly& Pw, const Permutation& siw,
                                          const Poly& Psiw) {
  CheckReport rep;
  for (const auto& rec : quadratic_records(w, Pw)) {
    if (rec.r > 2) continue;
    Integer after = multiplicity2(Psiw, rec.k, rec.l, rec.eta);
    ++rep.stats["monotone_checked"];
    if (after < rec.m)
      rep.fail(w, rec.k, rec.l, rec.eta,
               "m(s_i w)=" + after.str() + " < m(w)=" + rec.m.str() + " for s_i w=" + siw.to_string());
  }
  return rep;
}

// Exponent pattern (a, b) of x_i, x_{i+1} in a multiset.
inline std::pair<int, int> pair_type(const MultiSet& eta, int i) {
  return {eta.multiplicity(i), eta.multiplicity(i + 1)};
}

inline MultiSet with_pair_type(const MultiSet& eta, int i, int a, int b) {
  MultiSet base;
  for (int e : eta.elements())
    if (e != i && e != i + 1) base.add_element(e);
  for (int j = 0; j < a; ++j) base.add_element(i);
  for (int j = 0; j < b; ++j) base.add_element(i + 1);
  return base;
}

// Q_{ab}: the coefficient polynomial of x_i^a x_{i+1}^b.
inline Poly pair_slice(const Poly& P, int i, int a, int b) {
  std::vector<Poly::Term> raw;
  for (const auto& [m, c] : P.terms())
    if (m.x(i) == a && m.x(i + 1) == b) {
      Monomial r = m;
      r.set_x(i, 0);
      r.set_x(i + 1, 0);
      raw.emplace_back(r, c);
    }
  return Poly::from_terms(std::move(raw));
}

// The components P^{ab} of a quadratic part in the basis
// x_i, x_i + x_{i+1}, x_i^2, x_i x_{i+1}, x_i^2 + x_i x_{i+1} + x_{i+1}^2, ...
inline Poly decomposition_part(const Poly& P2, int i, int a, int b) {
  if (a == 1 && b == 0) return pair_slice(P2, i, 1, 0) - pair_slice(P2, i, 0, 1);
  if (a == 2 && b == 0) return pair_slice(P2, i, 2, 0) - pair_slice(P2, i, 0, 2);
  if (a == 1 && b == 1) return pair_slice(P2, i, 1, 1) - pair_slice(P2, i, 0, 2);
  if (a == 2 && b == 1) return pair_slice(P2, i, 2, 1) - pair_slice(P2, i, 1, 2);
  return pair_slice(P2, i, a, b);
}

// Multisets of the given block sizes reachable by changing the (x_i, x_{i+1})
// exponents of any term of the given polynomials.
inline std::vector<MultiSet> type_closure(const std::vector<const Poly*>& polys, int tdeg,
                                          const std::vector<int>& blocks, int i, int max_mult) {
  std::set<std::vector<int>> seen;
  std::vector<MultiSet> out;
  for (const Poly* P : polys)
    for (const auto& [m, c] : P->terms()) {
      if (m.T_degree() != tdeg || T_blocks(m) != blocks) continue;
      MultiSet eta = MultiSet::from_monomial(m);
      if (eta.max_multiplicity() > max_mult) continue;
      auto [a, b] = pair_type(eta, i);
      for (int c2 = 0; c2 <= max_mult; ++c2) {
        int d2 = a + b - c2;
        if (d2 < 0 || d2 > max_mult) continue;
        MultiSet v = with_pair_type(eta, i, c2, d2);
        if (seen.insert(v.elements()).second) out.push_back(v);
      }
    }
  return out;
}

// Transfer rules for quadratic multiplicities under w -> s_i w, the
// equivalence (i) <=> (v) for m_{eta^02}(N^(2)) and the corollary formula.
inline CheckReport check_multsiw(const Permutation& w, int i, const Poly& Pw, const Poly& Psiw) {
  CheckReport rep;
  Permutation siw = w.left_multiply(i);
  Poly N2 = N_quadratic(w, i);
  int n = w.n();
  for (int l = 1; l <= n; ++l)
    for (int k = 1; k <= l; ++k) {
      auto cands = type_closure({&Pw, &Psiw, &N2}, 2, {k, l}, i, 2);
      for (const auto& eta : cands) {
        auto [a, b] = pair_type(eta, i);
        Integer lhs = multiplicity2(Psiw, k, l, eta);
        Integer rhs;
        ++rep.stats["checked"];
        auto m = [&](int c, int d) { return multiplicity2(Pw, k, l, with_pair_type(eta, i, c, d)); };
        if (a + b == 0 || (a == 2 && b == 2)) rhs = m(a, b);
        else if (a == 1 && b == 1) {
          Integer n02 = N2.coefficient(block_monomial(with_pair_type(eta, i, 0, 2), {k, l}));
          rhs = m(1, 1) + (m(2, 0) - m(0, 2)) + n02;
          bool in_new = is_in_B(siw, k, l, eta) && !is_in_B(w, k, l, eta);
          if ((n02 > 0) != in_new)
            rep.fail(w, k, l, eta, "N^(2) positivity disagrees with B(s_i w) \\ B(w), i=" + std::to_string(i));
          Integer cor = in_new ? Integer(m(2, 0) + n02) : Integer(m(1, 1) + m(2, 0) - m(0, 2));
          if (cor != lhs)
            rep.fail(w, k, l, eta, "corollary formula gives " + cor.str() + ", i=" + std::to_string(i));
        } else if (a > b) rhs = m(a, b);
        else rhs = m(b, a);
        if (lhs != rhs)
          rep.fail(w, k, l, eta,
                   "type " + std::to_string(a) + std::to_string(b) + ": m(s_i w)=" + lhs.str() +
                       " but rule gives " + rhs.str() + ", i=" + std::to_string(i));
      }
    }
  return rep;
}

// Cubic transfer rules together with the identity
// P_{s_i w,3} = pi_i(P_{w,3}) - pi_i(P_{w,2} N^(1)) + pi_i(N^(3)).
inline CheckReport check_siwmults(const Permutation& w, int i, const Poly& Pw, const Poly& Psiw) {
  CheckReport rep;
  Poly N = N_factor(w, i, 3);
  Poly N1 = N.graded_part(1), N3 = N.graded_part(3);
  Poly P2 = -Pw.graded_part(2), P3 = Pw.graded_part(3);
  Poly lhs_poly = Psiw.graded_part(3);
  Poly rhs_poly = P3.pi(i) - (P2 * N1).pi(i) + N3.pi(i);
  if (lhs_poly != rhs_poly) rep.fail(w, 0, 0, MultiSet(), "cubic induction identity fails, i=" + std::to_string(i));

  Poly Npos1 = -N1;
  Poly xi = Poly::x(i);
  Poly aux11 = xi * decomposition_part(P2, i, 1, 0) * Npos1;
  Poly aux22 = Poly::monomial(Monomial::make_x(i, 2) * Monomial::make_x(i + 1)) * decomposition_part(P2, i, 2, 1) * Npos1;
  Poly aux21 = Poly::x(i, 2) * decomposition_part(P2, i, 2, 0) * Npos1;
  Poly negN3 = -N3;
  int n = w.n();
  for (int l = 1; l <= n; ++l)
    for (int k = 1; k <= l; ++k)
      for (int p = 1; p <= k; ++p) {
        auto cands = type_closure({&Pw, &Psiw, &aux11, &aux22, &aux21, &negN3}, 3, {p, k, l}, i, 3);
        for (const auto& tau : cands) {
          auto [a, b] = pair_type(tau, i);
          auto m = [&](const Poly& P, int c, int d) {
            return multiplicity3(P, p, k, l, with_pair_type(tau, i, c, d));
          };
          Integer lhs = m(Psiw, a, b), rhs;
          ++rep.stats["checked"];
          if ((a == 1 && b == 1))
            rhs = m(Pw, 1, 1) + m(Pw, 2, 0) - m(Pw, 0, 2) + m(aux11, 1, 1);
          else if (a == 2 && b == 2)
            rhs = m(Pw, 2, 2) + m(Pw, 3, 1) - m(Pw, 1, 3) + m(aux22, 2, 2);
          else if ((a == 2 && b == 1) || (a == 1 && b == 2))
            rhs = m(Pw, 2, 1) + m(Pw, 3, 0) - m(Pw, 0, 3) + m(aux21, 2, 1) + m(negN3, 0, 3);
          else if (a >= b) rhs = m(Pw, a, b);
          else rhs = m(Pw, b, a);
          if (lhs != rhs)
            rep.fail(w, k, l, tau,
                     "type " + std::to_string(a) + std::to_string(b) + ": m(s_i w)=" + lhs.str() +
                         " but rule gives " + rhs.str() + ", i=" + std::to_string(i),
                     p);
        }
      }
  return rep;
}

// For eta = eta^{11} in B~_{k,l}(w): three equivalent conditions each for
// the variants eta^{20} and eta^{02} to fall outside B~_{k,l}(w).
struct EtaLemmaPredicates {
  bool eta20_i, eta20_ii, eta20_iii, eta02_i, eta02_ii, eta02_iii;
};

inline int count_below(const AscSeq& s, int bound, bool inclusive) {
  int c = 0;
  for (int e : s.entries()) c += inclusive ? e <= bound : e < bound;
  return c;
}
inline int count_above(const AscSeq& s, int bound, bool inclusive) {
  int c = 0;
  for (int e : s.entries()) c += inclusive ? e >= bound : e > bound;
  return c;
}

inline EtaLemmaPredicates eta_lemma_predicates(const Permutation& w, int i, int k, int l,
                                               const MultiSet& eta) {
  auto ex = extremal_presentation(w, k, l, eta);
  if (!ex) throw std::invalid_argument("eta not in B~");
  const AscSeq &bmin = ex->beta_min, &bmax = ex->beta_max, &amin = ex->alpha_min, &amax = ex->alpha_max;
  EtaLemmaPredicates r{};
  r.eta20_ii = r.eta02_ii = true;
  for (const auto& a : enum_A(w, l))
    for (const auto& b : enum_A(w, k)) {
      if (sum_seqs(a, b) != eta) continue;
      if (!(a.contains(i) && a.contains(i + 1))) r.eta20_ii = false;
      if (a.contains(i) != a.contains(i + 1)) {
        const AscSeq& holder = a.contains(i) ? a : b;
        int size = a.contains(i) ? l : k;
        if (in_A(w, size, si_image(holder, i))) r.eta02_ii = false;
      }
    }
  r.eta20_i = !in_Btilde(w, k, l, with_pair_type(eta, i, 2, 0));
  r.eta02_i = !in_Btilde(w, k, l, with_pair_type(eta, i, 0, 2));
  bool none = !bmin.contains(i) && !bmin.contains(i + 1) && !bmax.contains(i) && !bmax.contains(i + 1);
  r.eta20_iii = none && count_below(bmin, i, false) == count_below(bmax, i, false) &&
                count_above(bmin, i + 1, false) == count_above(bmax, i + 1, false) &&
                count_below(amin, i, false) == count_below(amax, i, false) &&
                count_above(amin, i + 1, true) == count_above(amax, i + 1, true);
  r.eta02_iii = count_below(bmin, i, true) == count_below(bmax, i, true) &&
                count_above(bmin, i + 1, true) == count_above(bmax, i + 1, true) &&
                count_below(amin, i, true) == count_below(amax, i, true) &&
                count_above(amin, i + 1, true) == count_above(amax, i + 1, true);
  return r;
}

// Presentation posets.

struct PresentationPoset {
  std::vector<AscSeq> elements;       // beta-side, sorted
  std::vector<std::vector<bool>> leq;  // leq[a][b]: elements[a] <= elements[b]
  std::string canonical_form;          // invariant key; see PosetClassifier
};

inline PresentationPoset presentation_poset(const Permutation& w, int k, int l, const MultiSet& eta) {
  auto ps = presentations(w, k, l, eta);
  if (ps.pairs.empty()) throw std::invalid_argument("eta has no presentation");
  PresentationPoset P;
  int marker = eta.eta1() ? std::countr_zero(eta.eta1()) : 0;
  for (const auto& pr : ps.pairs) {
    if (k == l && marker && pr.alpha.contains(marker)) P.elements.push_back(pr.alpha);
    else P.elements.push_back(pr.beta);
  }
  std::sort(P.elements.begin(), P.elements.end());
  std::size_t s = P.elements.size();
  P.leq.assign(s, std::vector<bool>(s, false));
  for (std::size_t a = 0; a < s; ++a)
    for (std::size_t b = 0; b < s; ++b) P.leq[a][b] = P.elements[a].entrywise_leq(P.elements[b]);
  return P;
}

// Colour refinement invariant of a finite poset.
inline std::string poset_invariant(const std::vector<std::vector<bool>>& leq) {
  std::size_t s = leq.size();
  std::vector<std::uint64_t> colour(s, 0);
  for (std::size_t a = 0; a < s; ++a) {
    std::uint64_t up = 0, down = 0;
    for (std::size_t b = 0; b < s; ++b) {
      up += leq[a][b];
      down += leq[b][a];
    }
    colour[a] = up * 1000 + down;
  }
  for (std::size_t round = 0; round < s; ++round) {
    std::vector<std::uint64_t> next(s);
    for (std::size_t a = 0; a < s; ++a) {
      std::vector<std::uint64_t> ups, downs;
      for (std::size_t b = 0; b < s; ++b) {
        if (a == b) continue;
        if (leq[a][b]) ups.push_back(colour[b]);
        if (leq[b][a]) downs.push_back(colour[b]);
      }
      std::sort(ups.begin(), ups.end());
      std::sort(downs.begin(), downs.end());
      std::uint64_t h = colour[a] * 0x9e3779b97f4a7c15ULL;
      for (auto v : ups) h = (h ^ v) * 0x100000001b3ULL + 1;
      h ^= 0xabcdefULL;
      for (auto v : downs) h = (h ^ v) * 0x100000001b3ULL + 7;
      next[a] = h;
    }
    colour = next;
  }
  std::sort(colour.begin(), colour.end());
  std::ostringstream os;
  os << s;
  for (auto c : colour) os << ':' << std::hex << c;
  return os.str();
}

namespace detail {

// Backtracking search for an injective map f with x <= y iff f(x) <= f(y).
inline bool embed_search(const std::vector<std::vector<bool>>& P, const std::vector<std::vector<bool>>& Q,
                         std::vector<int>& f, std::vector<bool>& used, std::size_t pos, bool bijective,
                         long long& budget) {
  if (pos == P.size()) return true;
  if (--budget < 0) return false;
  for (std::size_t q = 0; q < Q.size(); ++q) {
    if (used[q]) continue;
    bool ok = true;
    for (std::size_t a = 0; a < pos && ok; ++a)
      ok = P[a][pos] == Q[f[a]][q] && P[pos][a] == Q[q][f[a]];
    if (!ok) continue;
    f[pos] = static_cast<int>(q);
    used[q] = true;
    if (embed_search(P, Q, f, used, pos + 1, bijective, budget)) return true;
    used[q] = false;
  }
  return false;
}

}  // namespace detail

inline bool poset_embeds(const std::vector<std::vector<bool>>& P, const std::vector<std::vector<bool>>& Q,
                         long long budget = 2000000) {
  if (P.size() > Q.size()) return false;
  std::vector<int> f(P.size(), -1);
  std::vector<bool> used(Q.size(), false);
  return detail::embed_search(P, Q, f, used, 0, P.size() == Q.size(), budget);
}
inline bool poset_isomorphic(const std::vector<std::vector<bool>>& P, const std::vector<std::vector<bool>>& Q) {
  return P.size() == Q.size() && poset_embeds(P, Q, 50000000);
}

// Assigns canonical class labels: equal invariants are split further by
// explicit isomorphism tests.
class PosetClassifier {
 public:
  std::string classify(PresentationPoset& P) {
    std::string inv = poset_invariant(P.leq);
    auto& reps = reps_[inv];
    for (std::size_t j = 0; j < reps.size(); ++j)
      if (poset_isomorphic(P.leq, reps[j])) return P.canonical_form = inv + "#" + std::to_string(j);
    reps.push_back(P.leq);
    return P.canonical_form = inv + "#" + std::to_string(reps.size() - 1);
  }
  const std::vector<std::vector<bool>>& representative(const std::string& form) const {
    auto cut = form.rfind('#');
    return reps_.at(form.substr(0, cut)).at(std::stoul(form.substr(cut + 1)));
  }

 private:
  std::map<std::string, std::vector<std::vector<std::vector<bool>>>> reps_;
};

// Conjecture scanners.

struct ScanReport {
  std::string scan;
  int n = 0;
  std::vector<Counterexample> counterexamples;
  std::vector<Counterexample> findings;  // reported separately, never fatal
  std::map<std::string, long long> stats;
  bool conditional = false;
};

inline ScanReport scan_siinc(int n, const NumeratorTable& table) {
  ScanReport rep{"siinc", n, {}, {}, {}, false};
  for (const auto& w : all_permutations(n)) {
    const Poly& P = table.at(w);
    for (int i = 1; i < n; ++i) {
      if (!w.is_ascent(i)) continue;
      for (const auto& rec : quadratic_records(w, P)) {
        auto [a, b] = pair_type(rec.eta, i);
        if (!((a == 0 && b == 1) || (a == 0 && b == 2) || (a == 1 && b == 2))) continue;
        Integer other = multiplicity2(P, rec.k, rec.l, rec.eta.swapped(i));
        ++rep.stats["checked"];
        if (rec.m > other)
          rep.counterexamples.push_back({w.to_string(), 0, rec.k, rec.l, rec.eta.to_string(),
                                         "i=" + std::to_string(i) + ": m=" + rec.m.str() +
                                             " > m(s_i eta)=" + other.str()});
      }
    }
  }
  return rep;
}

inline ScanReport scan_formpw2bound(int n, const NumeratorTable& table) {
  ScanReport rep{"formpw2bound", n, {}, {}, {}, true};
  for (const auto& w : all_permutations(n)) {
    const Poly& P = table.at(w);
    for (int l = 1; l <= n; ++l)
      for (int k = 1; k <= l; ++k)
        for (const auto& eta : enum_B(w, k, l)) {
          int r = rank_r(k, l, eta);
          Integer m = multiplicity2(P, k, l, eta);
          ++rep.stats["in_B"];
          if (m < (Integer(1) << r) - 1 || m <= 0)
            rep.counterexamples.push_back({w.to_string(), 0, k, l, eta.to_string(),
                                           "m=" + m.str() + " below 2^r-1 with r=" + std::to_string(r)});
        }
    for (const auto& rec : quadratic_records(w, P))
      if (!rec.in_B)
        rep.counterexamples.push_back({w.to_string(), 0, rec.k, rec.l, rec.eta.to_string(), "term outside B"});
    for (int i = 1; i < n; ++i) {
      if (!w.is_ascent(i)) continue;
      const Poly& Q = table.at(w.left_multiply(i));
      for (const auto& rec : quadratic_records(w, P)) {
        Integer after = multiplicity2(Q, rec.k, rec.l, rec.eta);
        ++rep.stats["monotone_checked"];
        if (after < rec.m)
          rep.counterexamples.push_back({w.to_string(), 0, rec.k, rec.l, rec.eta.to_string(),
                                         "i=" + std::to_string(i) + ": m(s_i w)=" + after.str() +
                                             " < m(w)=" + rec.m.str()});
      }
    }
  }
  return rep;
}

inline ScanReport scan_formpw3(int n, const NumeratorTable& table) {
  ScanReport rep{"formpw3", n, {}, {}, {}, false};
  for (const auto& w : all_permutations(n)) {
    const Poly& P = table.at(w);
    std::map<std::vector<int>, std::vector<MultiSet>> cache;
    auto C_of = [&](const std::vector<int>& b) -> const std::vector<MultiSet>& {
      auto it = cache.find(b);
      if (it == cache.end()) it = cache.emplace(b, enum_C(w, b[0], b[1], b[2]).c).first;
      return it->second;
    };
    std::set<std::vector<int>> block_triples;
    for (const auto& [mono, c] : P.terms()) {
      if (mono.T_degree() != 3) continue;
      auto b = T_blocks(mono);
      block_triples.insert(b);
      MultiSet tau = MultiSet::from_monomial(mono);
      const auto& C = C_of(b);
      ++rep.stats["support_terms"];
      std::string label = std::to_string(b[0]) + "," + std::to_string(b[1]) + "," + std::to_string(b[2]);
      if (!std::binary_search(C.begin(), C.end(), tau))
        rep.counterexamples.push_back({w.to_string(), b[0], b[1], b[2], tau.to_string(),
                                       "term of P_{w,3} at T-blocks (" + label + ") outside C"});
      if (c <= 0)
        rep.findings.push_back({w.to_string(), b[0], b[1], b[2], tau.to_string(),
                                "non-positive coefficient " + c.str()});
    }
    for (int l = 1; l <= n; ++l)
      for (int k = 1; k <= l; ++k)
        for (int p = 1; p <= k; ++p) {
          for (const auto& tau : C_of({p, k, l})) {
            ++rep.stats["C_elements"];
            if (multiplicity3(P, p, k, l, tau) <= 0)
              rep.findings.push_back({w.to_string(), p, k, l, tau.to_string(), "element of C with zero multiplicity"});
          }
        }
  }
  rep.stats["positivity_findings"] = static_cast<long long>(rep.findings.size());
  return rep;
}

inline ScanReport scan_poset(int n, const NumeratorTable& table, std::size_t max_pairs = 4000) {
  ScanReport rep{"poset", n, {}, {}, {}, false};
  PosetClassifier classifier;
  struct Group {
    std::set<std::string> values;
    std::string example;
    Integer min_m, max_m;
    bool seen = false;
  };
  std::map<std::string, Group> groups;
  for (const auto& w : all_permutations(n)) {
    const Poly& P = table.at(w);
    for (int l = 1; l <= n; ++l)
      for (int k = 1; k <= l; ++k)
        for (const auto& eta : enum_Btilde(w, k, l)) {
          auto poset = presentation_poset(w, k, l, eta);
          std::string form = classifier.classify(poset);
          Integer m = multiplicity2(P, k, l, eta);
          Group& g = groups[form];
          std::string desc = w.to_string() + " k=" + std::to_string(k) + " l=" + std::to_string(l) +
                             " eta=" + eta.to_string() + " m=" + m.str();
          if (!g.seen) {
            g.seen = true;
            g.min_m = g.max_m = m;
            g.example = desc;
          } else if (g.values.count(m.str()) == 0) {
            rep.counterexamples.push_back({w.to_string(), 0, k, l, eta.to_string(),
                                           "poset class with multiplicity " + m.str() + " also has " +
                                               g.example});
          }
          g.values.insert(m.str());
          if (m < g.min_m) g.min_m = m;
          if (m > g.max_m) g.max_m = m;
          ++rep.stats["instances"];
        }
  }
  rep.stats["classes"] = static_cast<long long>(groups.size());
  // Embedding monotonicity on pairs of classes with a single multiplicity.
  std::vector<std::string> forms;
  for (const auto& [form, g] : groups)
    if (g.values.size() == 1) forms.push_back(form);
  std::size_t pairs = 0;
  for (std::size_t a = 0; a < forms.size() && pairs < max_pairs; ++a)
    for (std::size_t b = 0; b < forms.size() && pairs < max_pairs; ++b) {
      if (a == b) continue;
      const auto& P = classifier.representative(forms[a]);
      const auto& Q = classifier.representative(forms[b]);
      if (P.size() > Q.size()) continue;
      ++pairs;
      if (!poset_embeds(P, Q)) continue;
      ++rep.stats["embeddings"];
      const Group& ga = groups[forms[a]];
      const Group& gb = groups[forms[b]];
      if (ga.max_m > gb.min_m)
        rep.counterexamples.push_back({"", 0, 0, 0, "",
                                       "embedding decreases multiplicity: " + ga.example + " embeds in " +
                                           gb.example});
    }
  rep.stats["embedding_pairs_checked"] = static_cast<long long>(pairs);
  return rep;
}

}  // namespace keyseries
