// Key and Lascoux polynomials, the numerator polynomials P_w of the
// generating series, and the truncated form of the series identity.
#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "keyseries/bounded_sequences.hpp"
#include "keyseries/multiset.hpp"
#include "keyseries/permutation.hpp"
#include "keyseries/poly.hpp"

namespace keyseries {

class Partition {
 public:
  Partition() = default;
  explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) {
    for (std::size_t j = 0; j < parts_.size(); ++j) {
      if (parts_[j] < 0) throw std::invalid_argument("negative part");
      if (j && parts_[j] > parts_[j - 1]) throw std::invalid_argument("parts must not increase");
    }
    while (!parts_.empty() && parts_.back() == 0) parts_.pop_back();
  }
  static Partition parse(const std::string& text) { return Partition(parse_list(text)); }

  // lambda_i = sum_{l >= i} h_l.
  static Partition from_gaps(const std::vector<int>& h) {
    std::vector<int> p(h.size());
    int acc = 0;
    for (int j = static_cast<int>(h.size()) - 1; j >= 0; --j) p[j] = acc += h[j];
    return Partition(std::move(p));
  }

  int length() const { return static_cast<int>(parts_.size()); }
  int size() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }
  int operator[](int j) const { return j >= 1 && j <= length() ? parts_[j - 1] : 0; }
  const std::vector<int>& parts() const { return parts_; }

  // h_l = lambda_l - lambda_{l+1} for l = 1..n.
  std::vector<int> gaps(int n) const {
    std::vector<int> h(n);
    for (int l = 1; l <= n; ++l) h[l - 1] = (*this)[l] - (*this)[l + 1];
    return h;
  }

  Monomial x_monomial() const {
    Monomial m;
    for (int j = 1; j <= length(); ++j) m.set_x(j, parts_[j - 1]);
    return m;
  }
  // t^lambda written in the block variables: prod_l T_l^{h_l}.
  Monomial T_monomial() const {
    Monomial m;
    auto h = gaps(length());
    for (int l = 1; l <= length(); ++l) m.set_T(l, h[l - 1]);
    return m;
  }

  std::string to_string() const {
    std::string s;
    for (std::size_t j = 0; j < parts_.size(); ++j) s += (j ? "," : "") + std::to_string(parts_[j]);
    return s;
  }

  static std::vector<int> parse_list(const std::string& text) {
    std::vector<int> v;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) v.push_back(std::stoi(item));
    return v;
  }

 private:
  std::vector<int> parts_;
};

using WeakComposition = std::vector<int>;

inline void check_partition_fits(const Partition& lambda, const Permutation& w) {
  if (lambda.length() > w.n() || w.n() > kMaxVars)
    throw std::invalid_argument("partition " + lambda.to_string() + " has more parts than n=" + std::to_string(w.n()));
}

inline Poly key_polynomial(const Partition& lambda, const Permutation& w) {
  check_partition_fits(lambda, w);
  return pi_word(w.reduced_word(), Poly::monomial(lambda.x_monomial()));
}

inline Poly lascoux_polynomial(const Partition& lambda, const Permutation& w) {
  check_partition_fits(lambda, w);
  return pi_word(w.reduced_word(), Poly::monomial(lambda.x_monomial()), true);
}

// Shortest permutation sorting nu into a partition: w(lambda) = nu.
inline std::pair<Partition, Permutation> sort_composition(const WeakComposition& nu) {
  int n = std::max<int>(1, static_cast<int>(nu.size()));
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::vector<int> padded = nu;
  padded.resize(n, 0);
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return padded[a] > padded[b]; });
  std::vector<int> parts(n), w(n);
  for (int j = 0; j < n; ++j) {
    parts[j] = padded[idx[j]];
    w[j] = idx[j] + 1;
  }
  return {Partition(parts), Permutation(w)};
}

// K_nu = pi_w(x^lambda) with lambda the sorted nu and w(lambda) = nu; the
// permutation w sends position j of lambda to position w(j) of nu.
inline Poly key_by_composition(const WeakComposition& nu) {
  auto [lambda, w] = sort_composition(nu);
  return key_polynomial(lambda, w);
}

// N_{w,i} = prod_l prod_{alpha in A_{l,i}(w)} (1 - x^{s_i alpha} T_l).
inline Poly N_factor(const Permutation& w, int i, int max_tdeg = -1) {
  Poly acc(1);
  for (int l = 1; l < w.n(); ++l)
    for (const auto& a : moved_A(w, l, i)) {
      Monomial m = MultiSet::from_seq(si_image(a, i)).monomial() * Monomial::make_T(l);
      acc = acc.multiply(Poly(1) - Poly::monomial(m), max_tdeg);
    }
  return acc;
}

// P_w along the reduced word (i_1, ..., i_r): starting from P_Id = 1, each
// step u -> s_i u replaces P by pi_i(P N_{u,i}). Terms of T-degree above
// max_tdeg are discarded when max_tdeg >= 0 (pi_i does not touch T).
inline Poly numerator_P_word(const std::vector<int>& word, int n, bool xi_mode = false,
                             int max_tdeg = -1) {
  Permutation u = Permutation::identity(n);
  Poly P(1);
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    int i = *it;
    if (!u.is_ascent(i)) throw std::invalid_argument("word is not reduced");
    Poly prod = P.multiply(N_factor(u, i, max_tdeg), max_tdeg);
    P = xi_mode ? prod.pi_xi(i) : prod.pi(i);
    u = u.left_multiply(i);
  }
  return P;
}

inline Poly numerator_P(const Permutation& w, bool xi_mode = false, int max_tdeg = -1) {
  Permutation v = w.rank() >= 1 ? Permutation(w.trimmed()) : Permutation::identity(1);
  return numerator_P_word(v.reduced_word(), v.n(), xi_mode, max_tdeg);
}

inline Poly graded_part(const Poly& P, int d) { return P.graded_part(d); }

// P_w for every w in S_n, built along canonical reduced words so that each
// entry reuses the entry of s_i w.
class NumeratorTable {
 public:
  NumeratorTable(int n, int max_tdeg, bool xi_mode = false)
      : n_(n), max_tdeg_(max_tdeg), xi_(xi_mode) {
    auto perms = all_permutations(n);
    std::stable_sort(perms.begin(), perms.end(),
                     [](const Permutation& a, const Permutation& b) { return a.length() < b.length(); });
    for (const auto& w : perms) {
      if (w.length() == 0) {
        table_.emplace(w.values(), Poly(1));
        continue;
      }
      int i = w.reduced_word().front();
      Permutation u = w.left_multiply(i);
      const Poly& Pu = table_.at(u.values());
      Poly prod = Pu.multiply(N_factor(u, i, max_tdeg_), max_tdeg_);
      table_.emplace(w.values(), xi_ ? prod.pi_xi(i) : prod.pi(i));
    }
  }
  const Poly& at(const Permutation& w) const { return table_.at(w.extended(n_).values()); }
  int n() const { return n_; }
  int max_tdeg() const { return max_tdeg_; }

 private:
  int n_, max_tdeg_;
  bool xi_;
  std::map<std::vector<int>, Poly> table_;
};

// Denominator monomials x^alpha T_l for alpha in A_l(w), l <= n.
inline std::vector<Monomial> denominator_factors(const Permutation& w, int n) {
  std::vector<Monomial> out;
  Permutation v = w.extended(std::max(n, w.n()));
  for (int l = 1; l <= n; ++l)
    for (const auto& a : enum_A(v, l)) out.push_back(MultiSet::from_seq(a).monomial() * Monomial::make_T(l));
  return out;
}

// Sum over partitions with l(lambda) <= n of x^lambda prod T_l^{h_l}, truncated.
inline Poly identity_series(int n, int D) {
  std::vector<Monomial> f;
  for (int l = 1; l <= n; ++l) {
    Monomial m = Monomial::make_T(l);
    for (int j = 1; j <= l; ++j) m.set_x(j, 1);
    f.push_back(m);
  }
  return series_inverse_product(f, D);
}

// Sum_lambda K_{lambda,w} prod T_l^{h_l} truncated at T-degree D, with the
// partitions enumerated through their gap vectors.
inline Poly series_Kw_direct(const Permutation& w, int D, int n = 0, bool xi_mode = false,
                             const std::vector<int>* word = nullptr) {
  if (n == 0) n = w.n();
  std::vector<int> rw = word ? *word : w.reduced_word();
  std::vector<Poly::Term> raw;
  std::vector<int> h(n, 0);
  // Odometer over gap vectors with sum <= D.
  while (true) {
    Partition lambda = Partition::from_gaps(h);
    Poly K = pi_word(rw, Poly::monomial(lambda.x_monomial()), xi_mode);
    Monomial tb;
    for (int l = 1; l <= n; ++l) tb.set_T(l, h[l - 1]);
    for (const auto& t : K.terms()) raw.emplace_back(t.first * tb, t.second);
    int pos = 0;
    int total = std::accumulate(h.begin(), h.end(), 0);
    while (pos < n) {
      if (total < D) {
        ++h[pos];
        break;
      }
      total -= h[pos];
      h[pos] = 0;
      ++pos;
    }
    if (pos == n) break;
  }
  return Poly::from_terms(std::move(raw));
}

struct FormMismatch {
  Monomial monomial;
  Integer direct, product;
};

struct FormReport {
  bool ok = true;
  std::size_t terms = 0;
  std::vector<FormMismatch> mismatches;  // at most 20
};

inline FormReport compare_series(const Poly& direct, const Poly& product) {
  FormReport r;
  r.terms = direct.size();
  Poly diff = direct - product;
  r.ok = diff.is_zero();
  for (const auto& t : diff.terms()) {
    if (r.mismatches.size() >= 20) break;
    r.mismatches.push_back({t.first, direct.coefficient(t.first), product.coefficient(t.first)});
  }
  return r;
}

// Checks series_Kw_direct(w, D) = P_w * prod 1/(1 - x^alpha T_l) up to T-degree D.
inline FormReport verify_form(const Permutation& w, int D, bool xi_mode = false,
                              const std::vector<int>* word = nullptr) {
  int n = w.n();
  std::vector<int> rw = word ? *word : w.reduced_word();
  Poly direct = series_Kw_direct(w, D, n, xi_mode, &rw);
  Poly P = numerator_P_word(rw, n, xi_mode, D);
  Poly inv = series_inverse_product(denominator_factors(w, n), D);
  return compare_series(direct, P.multiply(inv, D));
}

// Faster direct side: pi_w applied to the whole identity series at once.
inline Poly series_Kw_operator(const Permutation& w, int D, const std::vector<int>& word,
                               bool xi_mode = false) {
  return pi_word(word, identity_series(w.n(), D), xi_mode);
}

struct LinearPartReport {
  Poly induction;    // xi^1 T^1 slice of P^(xi)_w
  Poly closed_form;  // sum over A_l^{(+1)}(w) of m x^alpha T_l
  bool ok() const { return induction == closed_form; }
};

// The multiplicity uses |{j : alpha \ {j} in A_l(w)}| - 1.
inline LinearPartReport lascoux_linear_part(const Permutation& w) {
  int n = std::max(w.n(), 1);
  LinearPartReport r;
  Poly P = numerator_P(w.extended(n), true, 1);
  r.induction = P.filter([](const Monomial& m) { return m.xi() == 1 && m.T_degree() == 1; });
  std::vector<Poly::Term> raw;
  for (int l = 1; l < n; ++l) {
    std::vector<AscSeq> plus;
    for (const auto& a : enum_A(w, l))
      for (int e = 1; e <= n + 1; ++e)
        if (!a.contains(e)) plus.push_back(AscSeq(a.mask() | (1u << e)));
    std::sort(plus.begin(), plus.end());
    plus.erase(std::unique(plus.begin(), plus.end()), plus.end());
    for (const auto& alpha : plus) {
      int count = 0;
      for (int j : alpha.entries())
        if (in_A(w.extended(n + 1), l, AscSeq(alpha.mask() & ~(1u << j)))) ++count;
      if (count - 1 == 0) continue;
      Monomial m = MultiSet::from_seq(alpha).monomial() * Monomial::make_T(l) * Monomial::make_xi();
      raw.emplace_back(m, Integer(count - 1));
    }
  }
  r.closed_form = Poly::from_terms(std::move(raw));
  return r;
}

// Formal elements sum_v f_v eps_v of the twisted Demazure algebra with
// polynomial coefficients.
class DemazureElement {
 public:
  std::map<std::vector<int>, Poly> coeffs;

  void add(const Permutation& v, const Poly& f) {
    auto& slot = coeffs[v.values()];
    slot += f;
  }
  // eps_i eps_v = eps_{s_i v} when s_i v is longer, and -eps_v otherwise.
  DemazureElement left_generator(int i) const {
    DemazureElement out;
    for (const auto& [vals, f] : coeffs) {
      Permutation v(vals);
      if (v.is_ascent(i)) out.add(v.left_multiply(i), f);
      else out.add(v, -f);
    }
    out.prune();
    return out;
  }
  DemazureElement plus(const DemazureElement& o) const {
    DemazureElement out = *this;
    for (const auto& [vals, f] : o.coeffs) out.add(Permutation(vals), f);
    out.prune();
    return out;
  }
  DemazureElement apply_pi(int i) const {
    DemazureElement out;
    for (const auto& [vals, f] : coeffs) out.add(Permutation(vals), f.pi(i));
    out.prune();
    return out;
  }
  bool operator==(const DemazureElement& o) const { return coeffs == o.coeffs; }

  void prune() {
    for (auto it = coeffs.begin(); it != coeffs.end();)
      it = it->second.is_zero() ? coeffs.erase(it) : std::next(it);
  }
};

// sum_w K_w eps_{w w0} with each K_w truncated at T-degree D.
inline DemazureElement generating_element(int n, int D) {
  DemazureElement e;
  Permutation w0 = Permutation::longest(n);
  for (const auto& w : all_permutations(n)) e.add(w.compose(w0), series_Kw_direct(w, D, n));
  e.prune();
  return e;
}

}  // namespace keyseries
