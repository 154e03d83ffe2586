// Multi-sets eta = eta1 + 2 eta2 (and tau with multiplicity up to 3), the
// sum sets B~, B, C~, C and the presentations of a multi-set as a sum.
#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "keyseries/bounded_sequences.hpp"
#include "keyseries/poly.hpp"

namespace keyseries {

// Elements 1..31 with multiplicity 1, 2 or 3, stored as one bit set per
// multiplicity.
class MultiSet {
 public:
  MultiSet() = default;
  MultiSet(std::uint32_t once, std::uint32_t twice, std::uint32_t thrice = 0)
      : m1_(once), m2_(twice), m3_(thrice) {
    if ((m1_ & m2_) || (m1_ & m3_) || (m2_ & m3_) || ((m1_ | m2_ | m3_) & 1u))
      throw std::invalid_argument("inconsistent multiset masks");
  }

  static MultiSet from_seq(const AscSeq& a) { return MultiSet(a.mask(), 0); }

  // "11234" or "1,1,2,3,4".
  static MultiSet parse(const std::string& text) {
    std::vector<int> v;
    if (text.find(',') != std::string::npos) {
      std::size_t pos = 0;
      while (pos <= text.size()) {
        std::size_t next = text.find(',', pos);
        if (next == std::string::npos) next = text.size();
        v.push_back(std::stoi(text.substr(pos, next - pos)));
        pos = next + 1;
      }
    } else {
      for (char c : text) {
        if (c < '0' || c > '9') throw std::invalid_argument("bad multiset text: " + text);
        v.push_back(c - '0');
      }
    }
    MultiSet m;
    for (int e : v) m.add_element(e);
    return m;
  }

  void add_element(int e) {
    if (e < 1 || e > 31) throw std::out_of_range("multiset element out of range");
    std::uint32_t b = 1u << e;
    if (m3_ & b) throw std::overflow_error("multiplicity above 3");
    if (m2_ & b) { m2_ &= ~b; m3_ |= b; }
    else if (m1_ & b) { m1_ &= ~b; m2_ |= b; }
    else m1_ |= b;
  }

  MultiSet operator+(const AscSeq& a) const {
    std::uint32_t s = a.mask();
    if (m3_ & s) throw std::overflow_error("multiplicity above 3");
    MultiSet r;
    r.m3_ = m3_ | (m2_ & s);
    r.m2_ = (m2_ & ~s) | (m1_ & s);
    r.m1_ = (m1_ & ~s) | (s & ~m1_ & ~m2_);
    return r;
  }
  MultiSet operator+(const MultiSet& o) const {
    MultiSet r = *this;
    for (int e : o.elements()) r.add_element(e);
    return r;
  }

  // Removes one copy of each entry of a; requires a to be contained.
  MultiSet minus(const AscSeq& a) const {
    std::uint32_t s = a.mask();
    if (s & ~support()) throw std::invalid_argument("sequence not contained in multiset");
    MultiSet r;
    r.m1_ = (m1_ & ~s) | (m2_ & s);
    r.m2_ = (m2_ & ~s) | (m3_ & s);
    r.m3_ = m3_ & ~s;
    return r;
  }

  std::uint32_t eta1() const { return m1_; }
  std::uint32_t eta2() const { return m2_; }
  std::uint32_t eta3() const { return m3_; }
  std::uint32_t support() const { return m1_ | m2_ | m3_; }
  int multiplicity(int e) const {
    std::uint32_t b = 1u << e;
    return (m1_ & b) ? 1 : (m2_ & b) ? 2 : (m3_ & b) ? 3 : 0;
  }
  int size() const {
    return std::popcount(m1_) + 2 * std::popcount(m2_) + 3 * std::popcount(m3_);
  }
  int max_multiplicity() const { return m3_ ? 3 : m2_ ? 2 : m1_ ? 1 : 0; }

  std::vector<int> elements() const {
    std::vector<int> out;
    for (int e = 1; e <= 31; ++e)
      for (int k = 0; k < multiplicity(e); ++k) out.push_back(e);
    return out;
  }
  std::vector<int> support_list() const { return AscSeq(support()).entries(); }
  std::vector<int> mult_list() const {
    std::vector<int> out;
    for (int e : support_list()) out.push_back(multiplicity(e));
    return out;
  }

  // A sequence beta with eta2 within beta within the support of eta.
  bool contains_seq(const AscSeq& a) const { return (a.mask() & ~support()) == 0; }

  Monomial monomial() const {
    Monomial m;
    for (int e : support_list()) m.set_x(e, multiplicity(e));
    return m;
  }
  static MultiSet from_monomial(const Monomial& m) {
    MultiSet r;
    for (int j = 1; j <= kMaxVars; ++j)
      for (int k = 0; k < m.x(j); ++k) r.add_element(j);
    return r;
  }

  // s_i applied to the elements.
  MultiSet swapped(int i) const {
    auto sw = [i](std::uint32_t m) {
      std::uint32_t bi = (m >> i) & 1u, bj = (m >> (i + 1)) & 1u;
      m &= ~((1u << i) | (1u << (i + 1)));
      return m | (bj << i) | (bi << (i + 1));
    };
    return MultiSet(sw(m1_), sw(m2_), sw(m3_));
  }

  bool operator==(const MultiSet& o) const {
    return m1_ == o.m1_ && m2_ == o.m2_ && m3_ == o.m3_;
  }
  bool operator!=(const MultiSet& o) const { return !(*this == o); }
  bool operator<(const MultiSet& o) const { return elements() < o.elements(); }

  std::uint64_t key() const {
    return static_cast<std::uint64_t>(m1_) | (static_cast<std::uint64_t>(m2_) << 32) ^
                                                 (static_cast<std::uint64_t>(m3_) * 0x9e3779b97f4a7c15ULL);
  }

  std::string to_string() const {
    auto e = elements();
    bool small = e.empty() || e.back() <= 9;
    std::string s;
    for (std::size_t j = 0; j < e.size(); ++j) {
      if (!small && j) s += ',';
      s += std::to_string(e[j]);
    }
    return s;
  }

 private:
  std::uint32_t m1_ = 0, m2_ = 0, m3_ = 0;
};

struct MultiSetHash {
  std::size_t operator()(const MultiSet& m) const {
    return std::hash<std::uint64_t>{}(m.key());
  }
};

inline MultiSet sum_seqs(const AscSeq& a, const AscSeq& b) { return MultiSet::from_seq(a) + b; }

inline int kronecker(int a, int b) { return a == b ? 1 : 0; }

// B~_{k,l}(w), sorted.
inline std::vector<MultiSet> enum_Btilde(const Permutation& w, int k, int l) {
  if (k > l) throw std::invalid_argument("expected k <= l");
  std::unordered_set<MultiSet, MultiSetHash> seen;
  for (const auto& a : enum_A(w, l))
    for (const auto& b : enum_A(w, k)) seen.insert(sum_seqs(a, b));
  std::vector<MultiSet> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end());
  return out;
}

inline void check_size(int k, int l, const MultiSet& eta) {
  if (eta.size() != k + l || eta.max_multiplicity() > 2)
    throw std::invalid_argument("multiset size does not match k + l");
}

// A_l^eta(w) = {alpha in A_l(w) : eta2 within alpha within eta}.
inline std::vector<AscSeq> restricted_A(const Permutation& w, int l, const MultiSet& eta) {
  std::vector<AscSeq> out;
  for (const auto& a : enum_A(w, l))
    if ((eta.eta2() & ~a.mask()) == 0 && eta.contains_seq(a)) out.push_back(a);
  return out;
}

// The entrywise maximum of a set known to have one.
inline std::optional<AscSeq> entrywise_max(const std::vector<AscSeq>& s) {
  if (s.empty()) return std::nullopt;
  AscSeq best = s.front();
  for (const auto& a : s)
    if (best.entrywise_leq(a)) best = a;
  for (const auto& a : s)
    if (!a.entrywise_leq(best)) throw std::logic_error("restricted set has no maximum");
  return best;
}

// Complement of a in eta as an ascending sequence; requires multiplicities <= 2.
inline AscSeq complement(const MultiSet& eta, const AscSeq& a) {
  MultiSet rest = eta.minus(a);
  if (rest.eta2() || rest.eta3()) throw std::invalid_argument("complement is not a set");
  return AscSeq(rest.eta1());
}

struct Extremal {
  AscSeq alpha_max, beta_min, beta_max, alpha_min;
};

inline std::optional<Extremal> extremal_presentation(const Permutation& w, int k, int l,
                                                     const MultiSet& eta) {
  check_size(k, l, eta);
  auto am = entrywise_max(restricted_A(w, l, eta));
  auto bm = entrywise_max(restricted_A(w, k, eta));
  if (!am || !bm) return std::nullopt;
  return Extremal{*am, complement(eta, *am), *bm, complement(eta, *bm)};
}

struct Presentation {
  AscSeq alpha, beta;
  bool operator==(const Presentation& o) const { return alpha == o.alpha && beta == o.beta; }
  bool operator<(const Presentation& o) const {
    return alpha < o.alpha || (alpha == o.alpha && beta < o.beta);
  }
};

struct PresentationSet {
  MultiSet eta;
  int k = 0, l = 0;
  std::vector<Presentation> pairs;
};

// All presentations by direct enumeration over A_l(w) x A_k(w).
inline PresentationSet presentations_bruteforce(const Permutation& w, int k, int l,
                                                const MultiSet& eta) {
  check_size(k, l, eta);
  PresentationSet ps{eta, k, l, {}};
  for (const auto& a : enum_A(w, l))
    for (const auto& b : enum_A(w, k)) {
      if (sum_seqs(a, b) != eta) continue;
      if (k == l && a < b) continue;
      ps.pairs.push_back({a, b});
    }
  std::sort(ps.pairs.begin(), ps.pairs.end());
  return ps;
}

// Presentations via the beta-interval [beta_min, beta_max].
inline PresentationSet presentations(const Permutation& w, int k, int l, const MultiSet& eta) {
  check_size(k, l, eta);
  PresentationSet ps{eta, k, l, {}};
  auto ex = extremal_presentation(w, k, l, eta);
  if (!ex || !in_A(w, k, ex->beta_min)) return ps;
  std::uint32_t free = eta.eta1();
  int need = k - std::popcount(eta.eta2());
  if (need < 0) return ps;
  // Choose which need elements of eta1 go into beta.
  std::vector<int> pool = AscSeq(free).entries();
  int m = static_cast<int>(pool.size());
  std::vector<int> pick(m, 0);
  std::fill(pick.end() - std::min(need, m), pick.end(), 1);
  if (need > m) return ps;
  do {
    std::uint32_t bm = eta.eta2();
    for (int j = 0; j < m; ++j)
      if (pick[j]) bm |= 1u << pool[j];
    AscSeq beta(bm);
    if (!ex->beta_min.entrywise_leq(beta) || !beta.entrywise_leq(ex->beta_max)) continue;
    AscSeq alpha = complement(eta, beta);
    if (k == l && alpha < beta) continue;
    ps.pairs.push_back({alpha, beta});
  } while (std::next_permutation(pick.begin(), pick.end()));
  std::sort(ps.pairs.begin(), ps.pairs.end());
  return ps;
}

inline bool in_Btilde(const Permutation& w, int k, int l, const MultiSet& eta) {
  auto ex = extremal_presentation(w, k, l, eta);
  return ex && in_A(w, k, ex->beta_min);
}

// The uniform criterion: in B~ and |eta2| < k - delta_{k,l}.
inline bool is_in_B(const Permutation& w, int k, int l, const MultiSet& eta) {
  check_size(k, l, eta);
  return std::popcount(eta.eta2()) < k - kronecker(k, l) && in_Btilde(w, k, l, eta);
}

// Definition: at least two essentially distinct presentations.
inline bool is_in_B_direct(const Permutation& w, int k, int l, const MultiSet& eta) {
  return presentations_bruteforce(w, k, l, eta).pairs.size() >= 2;
}

inline std::vector<MultiSet> enum_B(const Permutation& w, int k, int l) {
  std::vector<MultiSet> out;
  for (const auto& eta : enum_Btilde(w, k, l))
    if (std::popcount(eta.eta2()) < k - kronecker(k, l)) out.push_back(eta);
  return out;
}

struct CSets {
  std::vector<MultiSet> c_tilde;
  std::vector<MultiSet> c;
};

// C~_{p,k,l}(w) and C_{p,k,l}(w).
inline CSets enum_C(const Permutation& w, int p, int k, int l) {
  if (!(p <= k && k <= l)) throw std::invalid_argument("expected p <= k <= l");
  struct Flags { bool kl = false, pl = false, pk = false; };
  std::vector<std::pair<MultiSet, Flags>> found;
  std::unordered_map<MultiSet, std::size_t, MultiSetHash> index;
  const auto& Al = enum_A(w, l);
  const auto& Ak = enum_A(w, k);
  const auto& Ap = enum_A(w, p);
  for (const auto& a : Al)
    for (const auto& b : Ak) {
      MultiSet ab = sum_seqs(a, b);
      bool kl = is_in_B(w, k, l, ab);
      for (const auto& g : Ap) {
        MultiSet tau = ab + g;
        auto [it, fresh] = index.try_emplace(tau, found.size());
        if (fresh) found.push_back({tau, {}});
        Flags& f = found[it->second].second;
        if (kl) f.kl = true;
        if (!f.pl && is_in_B(w, p, l, sum_seqs(a, g))) f.pl = true;
        if (!f.pk && is_in_B(w, p, k, sum_seqs(b, g))) f.pk = true;
      }
    }
  CSets out;
  for (auto& [tau, f] : found) {
    out.c_tilde.push_back(tau);
    if (f.kl && f.pl && f.pk) out.c.push_back(tau);
  }
  std::sort(out.c_tilde.begin(), out.c_tilde.end());
  std::sort(out.c.begin(), out.c.end());
  return out;
}

}  // namespace keyseries
