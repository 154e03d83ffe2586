// Acceptance run: one PASS/FAIL line per criterion. Pass --slow for the
// larger sweeps. Exit status is 1 when a criterion fails on a claim that
// is expected to hold; recorded conjecture counterexamples do not count.

#include <chrono>
#include <cstring>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "keyseries/io.hpp"
#include "keyseries/key_series.hpp"
#include "keyseries/lattice_counts.hpp"
#include "keyseries/multiplicity.hpp"
#include "keyseries/multiset.hpp"
#include "keyseries/report.hpp"

using namespace keyseries;

namespace {

struct Outcome {
  bool pass = true;
  bool fatal = true;
  std::string note;
};

class Checker {
 public:
  explicit Checker(Outcome& o) : o_(o) {}
  void expect(bool ok, const std::string& what) {
    if (ok) return;
    o_.pass = false;
    if (++failures_ <= 3) o_.note += (o_.note.empty() ? "" : "; ") + what;
  }
  void report(const Report& r) {
    expect(r.ok(), r.name + " n=" + std::to_string(r.n) + ": " + std::to_string(r.counterexamples.size()) +
                       " counterexamples");
  }

 private:
  Outcome& o_;
  int failures_ = 0;
};

Poly poly(const char* text) { return parse_poly(text); }
Poly P(const char* w, int tdeg = -1) { return numerator_P(Permutation::parse(w), false, tdeg); }

std::vector<std::string> strings(const std::vector<AscSeq>& v) {
  std::vector<std::string> out;
  for (const auto& a : v) out.push_back(a.to_string());
  return out;
}

std::vector<std::string> strings(const std::vector<MultiSet>& v) {
  std::vector<std::string> out;
  for (const auto& a : v) out.push_back(a.to_string());
  return out;
}

Outcome golden_sets() {
  Outcome o;
  Checker c(o);
  auto w = Permutation::parse("42531");
  c.expect(strings(enum_A(w, 3)) ==
               std::vector<std::string>{"123", "124", "125", "134", "135", "145", "234", "235", "245"},
           "A_3 differs");
  c.expect(strings(moved_A(w, 3, 2)) == std::vector<std::string>{"245"}, "moved part of A_3 differs");
  auto B = strings(enum_B(w, 2, 3));
  c.expect(B == std::vector<std::string>{"11234", "11235", "11245", "11345", "12234", "12235", "12245", "12334",
                                          "12335", "12344", "12345", "12445", "22345"},
           "B_{2,3} differs");
  std::set<std::string> Bs(B.begin(), B.end()), extra;
  for (const auto& s : strings(enum_Btilde(w, 2, 3)))
    if (!Bs.count(s)) extra.insert(s);
  c.expect(extra == std::set<std::string>{"11223", "11224", "11225", "11233", "11244", "11334", "11335", "11344",
                                          "11445", "12233", "12244", "22334", "22335", "22344", "22445"},
           "Btilde minus B differs");
  return o;
}

Outcome golden_polynomials() {
  Outcome o;
  Checker c(o);
  c.expect(P("31425") == poly("1 - x1*x2*x3*T1*T2 - x1*x2*x3*x4*T1*T3 - x1^2*x2*x3*x4*T2*T3"
                              " + x1^2*x2^2*x3*x4*T1*T2*T3 + x1^2*x2*x3^2*x4*T1*T2*T3"),
           "P_31425 differs");
  Poly p = P("14253");
  c.expect(p.graded_part(2) == -(poly("x1^2*x2*x3*x4") * poly("T2*T3 + x5*T2*T4 + x2*x5*T3*T4")),
           "P_14253 quadratic part differs");
  c.expect(p.graded_part(3) == poly("x1^3*x2^2*x5") * poly("x3^2*x4 + x3*x4^2") * poly("T2*T3*T4"),
           "P_14253 cubic part differs");
  c.expect(p.max_T_degree() == 3, "P_14253 has terms above degree 3");
  for (const char* w : {"12345", "21345", "13245", "12435", "12354", "21435", "21354", "13254"})
    c.expect(P(w) == Poly(1), std::string("P_") + w + " is not 1");
  for (int i = 1; i <= 6; ++i) c.expect(numerator_P(Permutation::simple(i, 7)) == Poly(1), "P_{s_i} is not 1");
  c.expect(P("4123").graded_part(3) ==
               poly("x1*x2*x3*x4*T1^2*T2 + x1^2*x2*x3*x4*T1*T2^2") +
                   poly("x1^2*x2^2*x3*x4 + x1^2*x2*x3^2*x4 + x1^2*x2*x3*x4^2") * poly("T1*T2*T3"),
           "P_4123 cubic part differs");
  o.note = o.pass ? "P_14253 cubic checked in its corrected form x1^3 x2^2 x5 (x3^2 x4 + x3 x4^2) T2T3T4" : o.note;
  return o;
}

Outcome master_identity(const RunConfig& cfg) {
  Outcome o;
  Checker c(o);
  Report r4 = run_suite("formofkw", 4, 5, cfg);
  Report r5 = run_suite("formofkw", 5, 4, cfg);
  c.report(r4);
  c.report(r5);
  if (o.pass)
    o.note = std::to_string(r4.stats["forms_checked"] + r5.stats["forms_checked"]) + " forms, two reduced words each";
  return o;
}

Outcome single_suite(const RunConfig& cfg, const std::string& name, int n, int tdeg = 0) {
  Outcome o;
  Checker c(o);
  Report r = run_suite(name, n, tdeg, cfg);
  c.report(r);
  if (o.pass) o.note = name + " over S" + std::to_string(n) + ", " + std::to_string(r.stats["checked"]) + " cases";
  return o;
}

Outcome diff2(const RunConfig& cfg, bool slow) {
  Outcome o;
  Checker c(o);
  long long cases = 0;
  for (int n = 5; n <= (slow ? 6 : 5); ++n) {
    Report d = run_suite("diff2", n, 0, cfg);
    Report b = run_suite("bounds", n, 0, cfg);
    c.report(d);
    c.report(b);
    cases += d.stats["checked"];
  }
  if (o.pass) o.note = std::to_string(cases) + " cases through S" + std::string(slow ? "6" : "5");
  return o;
}

Outcome lketa23(const RunConfig& cfg, bool slow) {
  Outcome o;
  Checker c(o);
  Report r = run_suite("lketa23", slow ? 7 : 6, 0, cfg);
  c.report(r);
  std::string witnessed;
  for (int p = 1; p <= 5; ++p)
    if (r.stats.count("pattern_" + std::to_string(p))) witnessed += std::to_string(p);
  o.note += (o.note.empty() ? "" : "; ") + std::to_string(r.stats["checked"]) + " cases over S" +
            std::to_string(r.n) + ", patterns witnessed: " + (witnessed.empty() ? "none" : witnessed);
  return o;
}

Outcome worked_coefficient() {
  Outcome o;
  Checker c(o);
  auto w = Permutation::parse("321");
  Partition lambda({4, 2});
  Monomial mu = Monomial::make_x(1, 2) * Monomial::make_x(2, 2) * Monomial::make_x(3, 2);
  c.expect(key_polynomial(lambda, w).coefficient(mu) == 3, "key coefficient is not 3");
  c.expect(F_coefficient(lambda, w, mu) == 6, "F coefficient is not 6");
  c.expect(approx_coefficient(lambda, w, mu, 2) == 3, "second order approximation is not 3");
  return o;
}

Outcome lascoux(const RunConfig& cfg) {
  Outcome o;
  Checker c(o);
  for (const auto& w : all_permutations(3))
    for (const auto& lambda : small_partitions(3, 4))
      c.expect(lascoux_polynomial(lambda, w).xi_part(0) == key_polynomial(lambda, w),
               "xi^0 slice differs for w=" + w.to_string() + " lambda=" + lambda.to_string());
  c.report(run_suite("pxiw1", 4, 0, cfg));
  return o;
}

Poly random_poly(std::mt19937& rng) {
  std::uniform_int_distribution<int> nterms(1, 6), coeff(-5, 5), var(1, 5), deg(0, 6);
  std::vector<Poly::Term> raw;
  for (int t = nterms(rng); t > 0; --t) {
    Monomial m;
    for (int budget = deg(rng); budget > 0; --budget) {
      int v = var(rng);
      m.set_x(v, m.x(v) + 1);
    }
    if (rng() % 3 == 0) m = m * Monomial::make_T(1 + static_cast<int>(rng() % 3));
    if (rng() % 4 == 0) m = m * Monomial::make_xi();
    if (int cf = coeff(rng)) raw.emplace_back(m, Integer(cf));
  }
  return Poly::from_terms(std::move(raw));
}

Outcome operators() {
  Outcome o;
  Checker c(o);
  std::mt19937 rng(2024);
  const std::vector<int> a = {1, 2, 1, 3, 2, 1}, b = {3, 2, 3, 1, 2, 3};
  for (int t = 0; t < 120; ++t) {
    Poly f = random_poly(rng);
    for (bool xi : {false, true}) {
      auto op = [xi](const Poly& g, int i) { return xi ? g.pi_xi(i) : g.pi(i); };
      for (int i = 1; i <= 4; ++i) {
        c.expect(op(op(f, i), i) == op(f, i), "idempotence");
        if (i <= 3) c.expect(op(op(op(f, i), i + 1), i) == op(op(op(f, i + 1), i), i + 1), "braid relation");
        for (int j = i + 2; j <= 4; ++j) c.expect(op(op(f, i), j) == op(op(f, j), i), "commutation");
      }
      c.expect(pi_word(a, f, xi) == pi_word(b, f, xi), "reduced word independence");
    }
  }
  for (const auto& w : all_permutations(4)) {
    Poly K = series_Kw_direct(w, 4);
    for (int i = 1; i < 4; ++i) {
      Poly expected = w.is_ascent(i) ? series_Kw_direct(w.left_multiply(i), 4, 4) : K;
      c.expect(K.pi(i) == expected, "pi_i K_w differs for w=" + w.to_string());
    }
  }
  auto E = generating_element(3, 3);
  for (int i = 1; i <= 2; ++i) c.expect(E.apply_pi(i) == E.left_generator(i).plus(E), "generating element identity");
  if (o.pass) o.note = "120 random polynomials, both operators";
  return o;
}

Outcome oracles(const RunConfig& cfg) {
  Outcome o;
  Checker c(o);
  long long cases = 0;
  for (const auto& w : all_permutations(5))
    for (int l = 1; l <= 5; ++l)
      for (int k = 1; k <= l; ++k)
        for (const auto& eta : enum_Btilde(w, k, l)) {
          ++cases;
          c.expect(is_in_B(w, k, l, eta) == is_in_B_direct(w, k, l, eta),
                   "membership criterion differs at " + w.to_string() + " " + eta.to_string());
          c.expect(presentations(w, k, l, eta).pairs == presentations_bruteforce(w, k, l, eta).pairs,
                   "presentations differ at " + w.to_string() + " " + eta.to_string());
        }
  Report f = run_suite("fcoeff", 3, 6, cfg);
  c.report(f);
  if (o.pass)
    o.note = std::to_string(cases) + " multisets over S5, " + std::to_string(f.stats["coefficients"]) +
             " F coefficients";
  return o;
}

Outcome scans(const RunConfig& cfg, bool slow) {
  Outcome o;
  o.fatal = false;
  Checker c(o);
  std::string summary;
  for (int n = 4; n <= (slow ? 5 : 4); ++n)
    for (const auto& name : scan_names()) {
      Report r = run_scan(name, n, cfg);
      c.report(r);
      if (!r.ok() && r.fatal) o.fatal = true;
      summary += (summary.empty() ? "" : ", ") + name + "@" + std::to_string(n) + "=" +
                 std::to_string(r.counterexamples.size());
    }
  o.note = "counterexamples " + summary;
  if (!o.pass && !o.fatal) o.note += " (conjecture status, recorded without failing the run)";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  bool slow = false;
  for (int j = 1; j < argc; ++j) {
    if (std::strcmp(argv[j], "--slow") == 0) {
      slow = true;
    } else {
      std::cerr << "usage: acceptance [--slow]\n";
      return 2;
    }
  }
  RunConfig cfg = load_config("");

  std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"golden sets", golden_sets},
      {"golden polynomials", golden_polynomials},
      {"master identity", [&] { return master_identity(cfg); }},
      {"first differences", [&] { return single_suite(cfg, "diff1", 5); }},
      {"second differences and bounds", [&] { return diff2(cfg, slow); }},
      {"equal strips of size three", [&] { return lketa23(cfg, slow); }},
      {"worked coefficient", worked_coefficient},
      {"Lascoux", [&] { return lascoux(cfg); }},
      {"operator properties", operators},
      {"oracle equivalences", [&] { return oracles(cfg); }},
      {"conjecture scans", [&] { return scans(cfg, slow); }},
  };

  int status = 0;
  for (std::size_t j = 0; j < criteria.size(); ++j) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[j].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.note = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::ostringstream line;
    line.precision(2);
    line << std::fixed << "criterion " << (j + 1) << " " << (o.pass ? "PASS" : "FAIL") << " " << criteria[j].first
         << " [" << secs << " s]";
    if (!o.note.empty()) line << ": " << o.note;
    std::cout << line.str() << std::endl;
    if (!o.pass && o.fatal) status = 1;
  }
  return status;
}
