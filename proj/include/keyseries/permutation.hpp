// Permutations in one-line notation, with the embedding S_n into S_{n+1}
// handled by comparing after trimming trailing fixed points.
#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace keyseries {

class Permutation {
 public:
  Permutation() = default;

  explicit Permutation(std::vector<int> values) : values_(std::move(values)) {
    std::vector<bool> seen(values_.size() + 1, false);
    for (int v : values_) {
      if (v < 1 || v > static_cast<int>(values_.size()) || seen[v])
        throw std::invalid_argument("not a permutation in one-line notation");
      seen[v] = true;
    }
  }

  static Permutation identity(int n) {
    std::vector<int> v(n);
    std::iota(v.begin(), v.end(), 1);
    return Permutation(std::move(v));
  }
  static Permutation longest(int n) {
    std::vector<int> v(n);
    for (int j = 0; j < n; ++j) v[j] = n - j;
    return Permutation(std::move(v));
  }
  static Permutation simple(int i, int n) { return identity(n).left_multiply(i); }

  // Accepts "42531" (single digits) or "4,2,5,3,1".
  static Permutation parse(const std::string& text) {
    std::vector<int> v;
    if (text.find(',') != std::string::npos) {
      std::stringstream ss(text);
      std::string item;
      while (std::getline(ss, item, ',')) {
        if (item.empty()) throw std::invalid_argument("empty entry in permutation");
        v.push_back(std::stoi(item));
      }
    } else {
      for (char c : text) {
        if (c < '0' || c > '9') throw std::invalid_argument("bad permutation text: " + text);
        v.push_back(c - '0');
      }
    }
    if (v.empty()) throw std::invalid_argument("empty permutation");
    return Permutation(std::move(v));
  }

  int n() const { return static_cast<int>(values_.size()); }
  // Smallest rank m with w fixing everything above m.
  int rank() const {
    int m = n();
    while (m > 0 && values_[m - 1] == m) --m;
    return m;
  }
  const std::vector<int>& values() const { return values_; }
  int operator()(int j) const { return values_.at(j - 1); }

  Permutation extended(int m) const {
    if (m < n()) throw std::invalid_argument("cannot shrink ambient rank");
    std::vector<int> v = values_;
    for (int j = n() + 1; j <= m; ++j) v.push_back(j);
    return Permutation(std::move(v));
  }

  Permutation inverse() const {
    std::vector<int> v(values_.size());
    for (int j = 0; j < n(); ++j) v[values_[j] - 1] = j + 1;
    return Permutation(std::move(v));
  }
  int position_of(int value) const {
    for (int j = 0; j < n(); ++j)
      if (values_[j] == value) return j + 1;
    return value;  // fixed beyond the ambient rank
  }

  int length() const {
    int inv = 0;
    for (int a = 0; a < n(); ++a)
      for (int b = a + 1; b < n(); ++b) inv += values_[a] > values_[b];
    return inv;
  }

  // s_i * w: exchange the values i and i+1.
  Permutation left_multiply(int i) const {
    check_index(i);
    Permutation r = *this;
    for (int& v : r.values_) {
      if (v == i) v = i + 1;
      else if (v == i + 1) v = i;
    }
    return r;
  }
  // w * s_i: exchange the positions i and i+1.
  Permutation right_multiply(int i) const {
    check_index(i);
    Permutation r = *this;
    std::swap(r.values_[i - 1], r.values_[i]);
    return r;
  }

  // (w * u)(j) = w(u(j)).
  Permutation compose(const Permutation& u) const {
    int m = std::max(n(), u.n());
    Permutation a = extended(m), b = u.extended(m);
    std::vector<int> v(m);
    for (int j = 0; j < m; ++j) v[j] = a.values_[b.values_[j] - 1];
    return Permutation(std::move(v));
  }

  bool is_ascent(int i) const {
    check_index(i);
    bool before = position_of(i) < position_of(i + 1);
    assert(before == (inverse()(i) < inverse()(i + 1)));
    assert(before == (left_multiply(i).length() == length() + 1));
    return before;
  }
  bool is_left_descent(int i) const { return !is_ascent(i); }

  // Built by repeatedly stripping the smallest left descent.
  std::vector<int> reduced_word() const {
    std::vector<int> word;
    Permutation cur = *this;
    while (true) {
      int found = 0;
      for (int i = 1; i < cur.n(); ++i)
        if (cur.is_left_descent(i)) {
          found = i;
          break;
        }
      if (!found) break;
      word.push_back(found);
      cur = cur.left_multiply(found);
    }
    return word;
  }
  // A second deterministic reduced word, stripping the largest left descent.
  std::vector<int> reduced_word_largest() const {
    std::vector<int> word;
    Permutation cur = *this;
    while (true) {
      int found = 0;
      for (int i = cur.n() - 1; i >= 1; --i)
        if (cur.is_left_descent(i)) {
          found = i;
          break;
        }
      if (!found) break;
      word.push_back(found);
      cur = cur.left_multiply(found);
    }
    return word;
  }

  static Permutation from_word(const std::vector<int>& word, int n) {
    Permutation w = identity(n);
    for (auto it = word.rbegin(); it != word.rend(); ++it) w = w.left_multiply(*it);
    return w;
  }

  std::string to_string() const {
    std::string s;
    bool small = n() <= 9;
    for (int j = 0; j < n(); ++j) {
      if (!small && j) s += ',';
      s += std::to_string(values_[j]);
    }
    return s;
  }

  bool operator==(const Permutation& o) const { return trimmed() == o.trimmed(); }
  bool operator!=(const Permutation& o) const { return !(*this == o); }
  bool operator<(const Permutation& o) const { return trimmed() < o.trimmed(); }

  std::vector<int> trimmed() const {
    return std::vector<int>(values_.begin(), values_.begin() + rank());
  }

 private:
  void check_index(int i) const {
    if (i < 1 || i >= n()) throw std::out_of_range("simple transposition index out of range");
  }
  std::vector<int> values_;
};

struct PermutationHash {
  std::size_t operator()(const Permutation& w) const {
    std::size_t h = 1469598103934665603ULL;
    for (int v : w.trimmed()) h = (h ^ static_cast<std::size_t>(v)) * 1099511628211ULL;
    return h;
  }
};

inline std::vector<Permutation> all_permutations(int n) {
  if (n < 1) throw std::invalid_argument("n must be positive");
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 1);
  std::vector<Permutation> out;
  do {
    out.emplace_back(v);
  } while (std::next_permutation(v.begin(), v.end()));
  return out;
}

}  // namespace keyseries
