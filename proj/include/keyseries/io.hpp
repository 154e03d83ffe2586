// Text and JSON forms of polynomials, sets and multisets.
#pragma once

#include <cctype>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "keyseries/bounded_sequences.hpp"
#include "keyseries/multiset.hpp"
#include "keyseries/poly.hpp"

namespace keyseries {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

class PolyLexer {
 public:
  explicit PolyLexer(const std::string& s) : s_(s) {}

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool done() {
    skip();
    return pos_ == s_.size();
  }
  char peek() {
    skip();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  bool accept_word(const std::string& w) {
    skip();
    if (s_.compare(pos_, w.size(), w) != 0) return false;
    pos_ += w.size();
    return true;
  }
  std::string digits() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a number");
    return s_.substr(start, pos_ - start);
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at offset " + std::to_string(pos_) + " in \"" + s_ + "\"");
  }

 private:
  const std::string& s_;
  std::size_t pos_ = 0;
};

inline int parse_exponent(PolyLexer& lx) {
  if (!lx.accept('^')) return 1;
  return std::stoi(lx.digits());
}

// factor := number | x<idx>[^e] | T<idx>[^e] | xi[^e]
inline void parse_factor(PolyLexer& lx, Integer& coeff, Monomial& mono) {
  char c = lx.peek();
  if (std::isdigit(static_cast<unsigned char>(c))) {
    coeff *= Integer(lx.digits());
    return;
  }
  if (lx.accept_word("xi")) {
    mono = mono * Monomial::make_xi(parse_exponent(lx));
    return;
  }
  if (lx.accept('x')) {
    int idx = std::stoi(lx.digits());
    if (idx < 1 || idx > kMaxVars) lx.fail("variable index out of range");
    mono = mono * Monomial::make_x(idx, parse_exponent(lx));
    return;
  }
  if (lx.accept('T')) {
    int idx = std::stoi(lx.digits());
    if (idx < 1 || idx > kMaxVars) lx.fail("variable index out of range");
    mono = mono * Monomial::make_T(idx, parse_exponent(lx));
    return;
  }
  lx.fail("unexpected character");
}

}  // namespace detail

// Accepts the output of Poly::to_string, e.g. "1 - x1*x2*x3*T1*T2 + 2*xi*x1^2*T1".
inline Poly parse_poly(const std::string& text) {
  detail::PolyLexer lx(text);
  std::vector<Poly::Term> raw;
  bool first = true;
  while (!lx.done()) {
    int sign = 1;
    if (lx.accept('+')) sign = 1;
    else if (lx.accept('-')) sign = -1;
    else if (!first) lx.fail("expected + or -");
    first = false;
    Integer coeff = sign;
    Monomial mono;
    detail::parse_factor(lx, coeff, mono);
    while (lx.accept('*')) detail::parse_factor(lx, coeff, mono);
    raw.emplace_back(mono, coeff);
  }
  return Poly::from_terms(std::move(raw));
}

// {"x": {"1": 2, "3": 1}, "T": {"2": 1}, "xi": 1}; zero exponents are omitted.
inline nlohmann::json monomial_to_json(const Monomial& m) {
  nlohmann::json x = nlohmann::json::object(), T = nlohmann::json::object();
  for (int j = 1; j <= m.max_x_index(); ++j)
    if (m.x(j)) x[std::to_string(j)] = m.x(j);
  for (int j = 1; j <= m.max_T_index(); ++j)
    if (m.T(j)) T[std::to_string(j)] = m.T(j);
  return {{"x", x}, {"T", T}, {"xi", m.xi()}};
}

inline Monomial monomial_from_json(const nlohmann::json& j) {
  auto index = [](const std::string& key) {
    int idx = 0;
    try {
      idx = std::stoi(key);
    } catch (const std::exception&) {
      throw ParseError("bad variable index \"" + key + "\"");
    }
    if (idx < 1 || idx > kMaxVars) throw ParseError("variable index out of range: " + key);
    return idx;
  };
  Monomial m;
  if (j.contains("x"))
    for (const auto& [key, e] : j.at("x").items())
      if (e.get<int>()) m = m * Monomial::make_x(index(key), e.get<int>());
  if (j.contains("T"))
    for (const auto& [key, e] : j.at("T").items())
      if (e.get<int>()) m = m * Monomial::make_T(index(key), e.get<int>());
  if (j.value("xi", 0)) m = m * Monomial::make_xi(j.value("xi", 0));
  return m;
}

// Coefficients are decimal strings so that big integers survive a round trip.
inline nlohmann::json poly_to_json(const Poly& p) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [m, c] : p.display_terms()) {
    nlohmann::json t = monomial_to_json(m);
    t["coeff"] = c.str();
    terms.push_back(t);
  }
  return {{"text", p.to_string()}, {"terms", terms}};
}

// Accepts either {"terms": [...]} or a bare term list; coefficients may be strings or integers.
inline Poly poly_from_json(const nlohmann::json& j) {
  std::vector<Poly::Term> raw;
  const auto& terms = j.is_array() ? j : j.at("terms");
  for (const auto& t : terms) {
    const auto& c = t.at("coeff");
    raw.emplace_back(monomial_from_json(t), c.is_string() ? Integer(c.get<std::string>()) : Integer(c.get<long long>()));
  }
  return Poly::from_terms(std::move(raw));
}

}  // namespace keyseries
