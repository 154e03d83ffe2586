// Sparse integer polynomials in x_1..x_16, block variables T_1..T_16 and xi,
// together with the divided difference operators acting on the x-variables.
#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstring>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace keyseries {

using Integer = boost::multiprecision::cpp_int;

inline constexpr int kMaxVars = 16;

class Monomial {
 public:
  Monomial() { bytes_.fill(0); }

  static Monomial one() { return Monomial{}; }
  static Monomial make_x(int idx, int e = 1) {
    Monomial m;
    m.set_x(idx, e);
    return m;
  }
  static Monomial make_T(int idx, int e = 1) {
    Monomial m;
    m.set_T(idx, e);
    return m;
  }
  static Monomial make_xi(int e = 1) {
    Monomial m;
    m.set_xi(e);
    return m;
  }

  // Variable indices are 1-based as in x1, T1.
  int x(int idx) const { return bytes_[check(idx) - 1]; }
  int T(int idx) const { return bytes_[kMaxVars + check(idx) - 1]; }
  int xi() const { return bytes_[kXiSlot]; }
  int x_degree() const { return bytes_[kXDegSlot] | (bytes_[kXDegSlot + 1] << 8); }
  int T_degree() const { return bytes_[kTDegSlot]; }

  void set_x(int idx, int e) { set_slot(check(idx) - 1, e); }
  void set_T(int idx, int e) { set_slot(kMaxVars + check(idx) - 1, e); }
  void set_xi(int e) { set_slot(kXiSlot, e); }

  Monomial operator*(const Monomial& o) const {
    Monomial r;
    for (int s = 0; s <= kXiSlot; ++s) {
      int e = bytes_[s] + o.bytes_[s];
      if (e > 255) throw std::overflow_error("monomial exponent overflow");
      r.bytes_[s] = static_cast<std::uint8_t>(e);
    }
    r.set_degrees(x_degree() + o.x_degree(), T_degree() + o.T_degree());
    return r;
  }

  bool divides(const Monomial& o) const {
    for (int s = 0; s <= kXiSlot; ++s)
      if (bytes_[s] > o.bytes_[s]) return false;
    return true;
  }

  // Quotient o / *this; requires divides(o).
  Monomial cofactor(const Monomial& o) const {
    Monomial r;
    for (int s = 0; s <= kXiSlot; ++s) r.bytes_[s] = o.bytes_[s] - bytes_[s];
    r.set_degrees(o.x_degree() - x_degree(), o.T_degree() - T_degree());
    return r;
  }

  // The T and xi part with all x exponents cleared.
  Monomial without_x() const {
    Monomial r = *this;
    for (int s = 0; s < kMaxVars; ++s) r.bytes_[s] = 0;
    r.set_degrees(0, T_degree());
    return r;
  }
  Monomial x_part() const {
    Monomial r;
    for (int s = 0; s < kMaxVars; ++s) r.bytes_[s] = bytes_[s];
    r.set_degrees(x_degree(), 0);
    return r;
  }

  Monomial swapped(int i) const {
    Monomial r = *this;
    std::swap(r.bytes_[i - 1], r.bytes_[i]);
    return r;
  }

  int max_x_index() const {
    for (int s = kMaxVars - 1; s >= 0; --s)
      if (bytes_[s]) return s + 1;
    return 0;
  }
  int max_T_index() const {
    for (int s = kMaxVars - 1; s >= 0; --s)
      if (bytes_[kMaxVars + s]) return s + 1;
    return 0;
  }

  bool operator==(const Monomial& o) const { return bytes_ == o.bytes_; }
  bool operator<(const Monomial& o) const { return bytes_ < o.bytes_; }

  std::size_t hash() const {
    std::uint64_t w[5];
    std::memcpy(w, bytes_.data(), sizeof w);
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (auto v : w) {
      h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
      h *= 0xff51afd7ed558ccdULL;
    }
    return static_cast<std::size_t>(h ^ (h >> 32));
  }

  // Display order: xi-degree, then T-degree, then T exponents (T1 first),
  // then x-degree, then x exponents (x1 first).
  static bool display_less(const Monomial& a, const Monomial& b) {
    if (a.xi() != b.xi()) return a.xi() < b.xi();
    if (a.T_degree() != b.T_degree()) return a.T_degree() < b.T_degree();
    for (int s = kMaxVars; s < 2 * kMaxVars; ++s)
      if (a.bytes_[s] != b.bytes_[s]) return a.bytes_[s] > b.bytes_[s];
    if (a.x_degree() != b.x_degree()) return a.x_degree() < b.x_degree();
    for (int s = 0; s < kMaxVars; ++s)
      if (a.bytes_[s] != b.bytes_[s]) return a.bytes_[s] > b.bytes_[s];
    return false;
  }

  std::string to_string() const {
    std::string out;
    auto emit = [&](const std::string& name, int e) {
      if (e == 0) return;
      if (!out.empty()) out += '*';
      out += name;
      if (e > 1) out += '^' + std::to_string(e);
    };
    emit("xi", xi());
    for (int i = 1; i <= kMaxVars; ++i) emit("x" + std::to_string(i), x(i));
    for (int i = 1; i <= kMaxVars; ++i) emit("T" + std::to_string(i), T(i));
    return out.empty() ? "1" : out;
  }

 private:
  static constexpr int kXiSlot = 2 * kMaxVars;
  static constexpr int kTDegSlot = kXiSlot + 1;
  static constexpr int kXDegSlot = kXiSlot + 2;

  static int check(int idx) {
    if (idx < 1 || idx > kMaxVars) throw std::out_of_range("variable index out of range");
    return idx;
  }
  void set_degrees(int xd, int td) {
    bytes_[kTDegSlot] = static_cast<std::uint8_t>(td);
    bytes_[kXDegSlot] = static_cast<std::uint8_t>(xd & 0xff);
    bytes_[kXDegSlot + 1] = static_cast<std::uint8_t>(xd >> 8);
  }
  void set_slot(int s, int e) {
    if (e < 0 || e > 255) throw std::overflow_error("monomial exponent out of range");
    int xd = x_degree(), td = T_degree();
    if (s < kMaxVars) xd += e - bytes_[s];
    else if (s < kXiSlot) td += e - bytes_[s];
    if (td > 255) throw std::overflow_error("T-degree overflow");
    bytes_[s] = static_cast<std::uint8_t>(e);
    set_degrees(xd, td);
  }

  std::array<std::uint8_t, 40> bytes_;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

template <class Coeff>
class BasicPoly {
 public:
  using Term = std::pair<Monomial, Coeff>;

  BasicPoly() = default;
  BasicPoly(long long c) {  // NOLINT: implicit constants are convenient
    if (c != 0) terms_.emplace_back(Monomial::one(), Coeff(c));
  }
  static BasicPoly monomial(const Monomial& m, Coeff c = Coeff(1)) {
    BasicPoly p;
    if (c != 0) p.terms_.emplace_back(m, std::move(c));
    return p;
  }
  static BasicPoly x(int idx, int e = 1) { return monomial(Monomial::make_x(idx, e)); }
  static BasicPoly T(int idx, int e = 1) { return monomial(Monomial::make_T(idx, e)); }
  static BasicPoly xi(int e = 1) { return monomial(Monomial::make_xi(e)); }

  // Builds a canonical polynomial from arbitrary (possibly repeated) terms.
  static BasicPoly from_terms(std::vector<Term> raw) {
    std::sort(raw.begin(), raw.end(),
              [](const Term& a, const Term& b) { return a.first < b.first; });
    BasicPoly p;
    for (auto& t : raw) {
      if (!p.terms_.empty() && p.terms_.back().first == t.first) {
        p.terms_.back().second += t.second;
      } else {
        if (!p.terms_.empty() && p.terms_.back().second == 0) p.terms_.pop_back();
        p.terms_.push_back(std::move(t));
      }
    }
    if (!p.terms_.empty() && p.terms_.back().second == 0) p.terms_.pop_back();
    return p;
  }
  static BasicPoly from_map(std::unordered_map<Monomial, Coeff, MonomialHash>&& acc) {
    std::vector<Term> raw;
    raw.reserve(acc.size());
    for (auto& [m, c] : acc)
      if (c != 0) raw.emplace_back(m, std::move(c));
    std::sort(raw.begin(), raw.end(),
              [](const Term& a, const Term& b) { return a.first < b.first; });
    BasicPoly p;
    p.terms_ = std::move(raw);
    return p;
  }

  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool operator==(const BasicPoly& o) const { return terms_ == o.terms_; }
  bool operator!=(const BasicPoly& o) const { return !(*this == o); }

  Coeff coefficient(const Monomial& m) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                               [](const Term& t, const Monomial& k) { return t.first < k; });
    if (it != terms_.end() && it->first == m) return it->second;
    return Coeff(0);
  }

  int max_T_degree() const {
    int d = 0;
    for (const auto& t : terms_) d = std::max(d, t.first.T_degree());
    return d;
  }
  int max_xi_degree() const {
    int d = 0;
    for (const auto& t : terms_) d = std::max(d, t.first.xi());
    return d;
  }

  BasicPoly operator+(const BasicPoly& o) const { return merge(o, false); }
  BasicPoly operator-(const BasicPoly& o) const { return merge(o, true); }
  BasicPoly operator-() const {
    BasicPoly r = *this;
    for (auto& t : r.terms_) t.second = -t.second;
    return r;
  }
  BasicPoly& operator+=(const BasicPoly& o) { return *this = *this + o; }
  BasicPoly& operator-=(const BasicPoly& o) { return *this = *this - o; }

  BasicPoly operator*(const BasicPoly& o) const { return multiply(o, -1); }
  BasicPoly& operator*=(const BasicPoly& o) { return *this = *this * o; }

  BasicPoly scaled(const Coeff& c) const {
    if (c == 0) return {};
    BasicPoly r = *this;
    for (auto& t : r.terms_) t.second *= c;
    return r;
  }
  BasicPoly times_monomial(const Monomial& m) const {
    BasicPoly r;
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.emplace_back(t.first * m, t.second);
    return r;  // multiplication by a monomial preserves the byte order
  }

  // Product keeping only terms of T-degree <= max_tdeg (negative: no truncation).
  BasicPoly multiply(const BasicPoly& o, int max_tdeg) const {
    if (terms_.empty() || o.terms_.empty()) return {};
    if (o.terms_.size() == 1 && o.terms_[0].second == 1 &&
        (max_tdeg < 0 || max_T_degree() + o.terms_[0].first.T_degree() <= max_tdeg))
      return times_monomial(o.terms_[0].first);
    std::unordered_map<Monomial, Coeff, MonomialHash> acc;
    acc.reserve(terms_.size() * o.terms_.size() / 2 + 16);
    for (const auto& a : terms_) {
      int ta = a.first.T_degree();
      for (const auto& b : o.terms_) {
        if (max_tdeg >= 0 && ta + b.first.T_degree() > max_tdeg) continue;
        acc[a.first * b.first] += a.second * b.second;
      }
    }
    return from_map(std::move(acc));
  }

  BasicPoly filter(const std::function<bool(const Monomial&)>& keep) const {
    BasicPoly r;
    for (const auto& t : terms_)
      if (keep(t.first)) r.terms_.push_back(t);
    return r;
  }
  BasicPoly truncated(int max_tdeg) const {
    return filter([&](const Monomial& m) { return m.T_degree() <= max_tdeg; });
  }
  BasicPoly graded_part(int d) const {
    return filter([&](const Monomial& m) { return m.T_degree() == d; });
  }
  BasicPoly xi_part(int e) const {
    return filter([&](const Monomial& m) { return m.xi() == e; });
  }

  // s_i acting on the x-variables: exchanges x_i and x_{i+1}.
  BasicPoly swapped(int i) const {
    check_index(i);
    std::vector<Term> raw;
    raw.reserve(terms_.size());
    for (const auto& t : terms_) raw.emplace_back(t.first.swapped(i), t.second);
    return from_terms(std::move(raw));
  }

  // Divided difference, computed termwise from
  // (x_i^a x_{i+1}^b - x_i^b x_{i+1}^a)/(x_i - x_{i+1}).
  BasicPoly divided_difference(int i) const { return apply_pair_operator(i, 0); }

  // pi_i(f) = del_i(x_i f).
  BasicPoly pi(int i) const { return apply_pair_operator(i, 1); }

  // pi_i^(xi)(f) = pi_i((1 + xi x_{i+1}) f).
  BasicPoly pi_xi(int i) const {
    check_index(i);
    BasicPoly shifted = times_monomial(Monomial::make_xi() * Monomial::make_x(i + 1));
    return (*this + shifted).pi(i);
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::vector<const Term*> order;
    for (const auto& t : terms_) order.push_back(&t);
    std::sort(order.begin(), order.end(), [](const Term* a, const Term* b) {
      return Monomial::display_less(a->first, b->first);
    });
    std::ostringstream os;
    bool first = true;
    for (const Term* t : order) {
      Coeff c = t->second;
      bool neg = c < 0;
      if (neg) c = -c;
      if (first) os << (neg ? "-" : "");
      else os << (neg ? " - " : " + ");
      first = false;
      bool is_one = t->first == Monomial::one();
      if (is_one) os << c;
      else if (c == 1) os << t->first.to_string();
      else os << c << '*' << t->first.to_string();
    }
    return os.str();
  }

  std::vector<Term> display_terms() const {
    std::vector<Term> out = terms_;
    std::sort(out.begin(), out.end(), [](const Term& a, const Term& b) {
      return Monomial::display_less(a.first, b.first);
    });
    return out;
  }

 private:
  static void check_index(int i) {
    if (i < 1 || i >= kMaxVars) throw std::out_of_range("operator index out of range");
  }

  BasicPoly merge(const BasicPoly& o, bool negate) const {
    BasicPoly r;
    r.terms_.reserve(terms_.size() + o.terms_.size());
    auto a = terms_.begin(), b = o.terms_.begin();
    while (a != terms_.end() || b != o.terms_.end()) {
      if (b == o.terms_.end() || (a != terms_.end() && a->first < b->first)) {
        r.terms_.push_back(*a++);
      } else if (a == terms_.end() || b->first < a->first) {
        r.terms_.emplace_back(b->first, negate ? Coeff(-b->second) : b->second);
        ++b;
      } else {
        Coeff c = negate ? Coeff(a->second - b->second) : Coeff(a->second + b->second);
        if (c != 0) r.terms_.emplace_back(a->first, std::move(c));
        ++a;
        ++b;
      }
    }
    return r;
  }

  // shift = 0 gives del_i, shift = 1 gives pi_i.
  BasicPoly apply_pair_operator(int i, int shift) const {
    check_index(i);
    std::vector<Term> raw;
    raw.reserve(terms_.size() * 2);
    for (const auto& t : terms_) {
      int a = t.first.x(i) + shift;
      int b = t.first.x(i + 1);
      if (a == b) continue;
      bool neg = a < b;
      int lo = neg ? a : b;
      int hi = neg ? b : a;
      Monomial base = t.first;
      for (int j = 0; j < hi - lo; ++j) {
        base.set_x(i, lo + (hi - lo - 1 - j));
        base.set_x(i + 1, lo + j);
        raw.emplace_back(base, neg ? Coeff(-t.second) : t.second);
      }
    }
    return from_terms(std::move(raw));
  }

  std::vector<Term> terms_;
};

using Poly = BasicPoly<Integer>;

template <class C>
BasicPoly<C> pi_word(const std::vector<int>& word, BasicPoly<C> f, bool xi_mode = false) {
  for (auto it = word.rbegin(); it != word.rend(); ++it) f = xi_mode ? f.pi_xi(*it) : f.pi(*it);
  return f;
}

template <class C>
BasicPoly<C> divided_difference(int i, const BasicPoly<C>& f) { return f.divided_difference(i); }
template <class C>
BasicPoly<C> pi(int i, const BasicPoly<C>& f) { return f.pi(i); }
template <class C>
BasicPoly<C> pi_xi(int i, const BasicPoly<C>& f) { return f.pi_xi(i); }

// Truncation to T-degree <= D of prod_m 1/(1 - m).
template <class C = Integer>
BasicPoly<C> series_inverse_product(const std::vector<Monomial>& factors, int D) {
  BasicPoly<C> acc(1);
  for (const auto& m : factors) {
    if (m.T_degree() < 1)
      throw std::invalid_argument("series factor must have positive T-degree");
    BasicPoly<C> cur = acc;
    while (true) {
      cur = cur.times_monomial(m).truncated(D);
      if (cur.is_zero()) break;
      acc += cur;
    }
  }
  return acc;
}

}  // namespace keyseries
