// Ascending sequences bounded by w^l, the sets A_l(w), and their behaviour
// under simple transpositions.
#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include "keyseries/permutation.hpp"

namespace keyseries {

// A strictly increasing sequence of integers in 1..31, stored as a bit set.
class AscSeq {
 public:
  constexpr AscSeq() = default;
  explicit constexpr AscSeq(std::uint32_t mask) : mask_(mask) {
    if (mask & 1u) throw std::invalid_argument("entries must be positive");
  }
  static AscSeq from_entries(const std::vector<int>& entries) {
    std::uint32_t m = 0;
    int prev = 0;
    for (int e : entries) {
      if (e <= prev || e > 31) throw std::invalid_argument("not an ascending sequence");
      m |= 1u << e;
      prev = e;
    }
    return AscSeq(m);
  }
  static AscSeq range(int lo, int hi) {
    std::uint32_t m = 0;
    for (int e = lo; e <= hi; ++e) m |= 1u << e;
    return AscSeq(m);
  }
  // "245" or "2,4,5".
  static AscSeq parse(const std::string& text) {
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
        if (c < '0' || c > '9') throw std::invalid_argument("bad sequence text: " + text);
        v.push_back(c - '0');
      }
    }
    return from_entries(v);
  }

  std::uint32_t mask() const { return mask_; }
  int size() const { return std::popcount(mask_); }
  bool contains(int v) const { return v >= 1 && v <= 31 && (mask_ >> v) & 1u; }
  std::vector<int> entries() const {
    std::vector<int> out;
    for (std::uint32_t m = mask_; m; m &= m - 1) out.push_back(std::countr_zero(m));
    return out;
  }
  // 1-based entry access.
  int operator[](int j) const {
    std::uint32_t m = mask_;
    for (int k = 1; k < j; ++k) m &= m - 1;
    if (!m) throw std::out_of_range("sequence index out of range");
    return std::countr_zero(m);
  }
  int max_entry() const { return mask_ ? 31 - std::countl_zero(mask_) : 0; }

  bool subset_of(const AscSeq& o) const { return (mask_ & ~o.mask_) == 0; }

  // Entrywise comparison for sequences of equal length.
  bool entrywise_leq(const AscSeq& o) const {
    if (size() != o.size()) return false;
    // alpha <= gamma entrywise iff every prefix {1..t} holds at least as many
    // entries of alpha as of gamma.
    int ca = 0, cg = 0;
    std::uint32_t all = mask_ | o.mask_;
    for (std::uint32_t m = all; m; m &= m - 1) {
      int t = std::countr_zero(m);
      ca += (mask_ >> t) & 1u;
      cg += (o.mask_ >> t) & 1u;
      if (ca < cg) return false;
    }
    return true;
  }

  bool operator==(const AscSeq& o) const { return mask_ == o.mask_; }
  bool operator!=(const AscSeq& o) const { return mask_ != o.mask_; }
  // Lexicographic order on the entry lists. Below the smallest element t of
  // the symmetric difference both lists agree; the side holding t is smaller
  // unless the other side has no entries past t.
  bool operator<(const AscSeq& o) const {
    if (mask_ == o.mask_) return false;
    int t = std::countr_zero(mask_ ^ o.mask_);
    std::uint32_t above = ~((2u << t) - 1);
    if ((mask_ >> t) & 1u) return (o.mask_ & above) != 0;
    return (mask_ & above) == 0;
  }

  std::string to_string() const {
    auto e = entries();
    bool small = e.empty() || e.back() <= 9;
    std::string s;
    for (std::size_t j = 0; j < e.size(); ++j) {
      if (!small && j) s += ',';
      s += std::to_string(e[j]);
    }
    return s;
  }

 private:
  std::uint32_t mask_ = 0;
};

inline AscSeq w_upper(const Permutation& w, int l) {
  if (l < 1) throw std::out_of_range("l out of range");
  std::uint32_t m = 0;
  for (int j = 1; j <= l; ++j) m |= 1u << (j <= w.n() ? w(j) : j);
  return AscSeq(m);
}

inline AscSeq si_image(const AscSeq& a, int i) {
  bool hi = a.contains(i), hj = a.contains(i + 1);
  if (hi == hj) return a;
  std::uint32_t m = a.mask() ^ (1u << i) ^ (1u << (i + 1));
  return AscSeq(m);
}

// R_{j,r}(alpha): replace the j-th entry by r and re-sort.
inline AscSeq replace(const AscSeq& a, int j, int r) {
  if (a.contains(r)) throw std::invalid_argument("replacement value already present");
  if (j < 1 || j > a.size()) throw std::out_of_range("replacement index out of range");
  if (r < 1 || r > 31) throw std::out_of_range("replacement value out of range");
  return AscSeq((a.mask() & ~(1u << a[j])) | (1u << r));
}

namespace detail {

inline void enumerate_bounded(const std::vector<int>& bound, std::size_t pos, int prev,
                              std::uint32_t acc, std::vector<AscSeq>& out) {
  if (pos == bound.size()) {
    out.emplace_back(acc);
    return;
  }
  for (int v = prev + 1; v <= bound[pos]; ++v)
    enumerate_bounded(bound, pos + 1, v, acc | (1u << v), out);
}

class AsetCache {
 public:
  static AsetCache& instance() {
    static AsetCache cache;
    return cache;
  }
  const std::vector<AscSeq>& get(std::uint32_t upper_mask) {
    {
      std::shared_lock lock(mu_);
      auto it = map_.find(upper_mask);
      if (it != map_.end()) return it->second;
    }
    std::vector<AscSeq> out;
    enumerate_bounded(AscSeq(upper_mask).entries(), 0, 0, 0, out);
    std::sort(out.begin(), out.end());
    std::unique_lock lock(mu_);
    return map_.try_emplace(upper_mask, std::move(out)).first->second;
  }

 private:
  std::shared_mutex mu_;
  std::map<std::uint32_t, std::vector<AscSeq>> map_;
};

}  // namespace detail

// A_l(w), sorted lexicographically.
inline const std::vector<AscSeq>& enum_A(const Permutation& w, int l) {
  return detail::AsetCache::instance().get(w_upper(w, l).mask());
}

inline bool in_A(const Permutation& w, int l, const AscSeq& a) {
  return a.entrywise_leq(w_upper(w, l));
}

struct SplitA {
  std::vector<AscSeq> fixed_part;
  std::vector<AscSeq> moved_part;
};

inline SplitA split_A(const Permutation& w, int l, int i) {
  if (i < 1 || i >= std::max(w.n(), 2)) throw std::out_of_range("index out of range");
  SplitA s;
  for (const auto& a : enum_A(w, l)) {
    if (in_A(w, l, si_image(a, i))) s.fixed_part.push_back(a);
    else s.moved_part.push_back(a);
  }
  return s;
}

// A_{l,i}(w).
inline std::vector<AscSeq> moved_A(const Permutation& w, int l, int i) {
  return split_A(w, l, i).moved_part;
}

}  // namespace keyseries
