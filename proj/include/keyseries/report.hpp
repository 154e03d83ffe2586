// Verification suites and conjecture scans as structured reports, run
// configuration, and replayable run manifests.
#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "keyseries/io.hpp"
#include "keyseries/key_series.hpp"
#include "keyseries/lattice_counts.hpp"
#include "keyseries/multiplicity.hpp"

#ifndef KEYSERIES_VERSION
#define KEYSERIES_VERSION "0.0.0"
#endif

namespace keyseries {

inline constexpr int kHardMaxN = 9;

struct RunConfig {
  int max_n = 7;
  int max_tdeg = 8;
  int threads = 0;  // 0: hardware concurrency

  int thread_count() const {
    int t = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
    return std::max(t, 1);
  }
};

class ResourceCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// key=value lines; '#' starts a comment. Unknown keys are rejected.
inline RunConfig parse_config(std::istream& in) {
  RunConfig c;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    auto trim = [](std::string s) {
      s.erase(0, s.find_first_not_of(" \t\r"));
      s.erase(s.find_last_not_of(" \t\r") + 1);
      return s;
    };
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key=value");
    std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    int v = std::stoi(value);
    if (key == "max_n") c.max_n = v;
    else if (key == "max_tdeg") c.max_tdeg = v;
    else if (key == "threads") c.threads = v;
    else throw std::invalid_argument("config line " + std::to_string(lineno) + ": unknown key " + key);
  }
  if (c.max_n > kHardMaxN) c.max_n = kHardMaxN;
  return c;
}

inline RunConfig load_config(const std::string& path) {
  RunConfig c;
  if (!path.empty()) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file " + path);
    c = parse_config(in);
  }
  if (const char* env = std::getenv("KEYSERIES_THREADS")) c.threads = std::atoi(env);
  return c;
}

inline void enforce_caps(const RunConfig& c, int n, int tdeg = 0) {
  if (n > c.max_n) throw ResourceCapExceeded("n=" + std::to_string(n) + " exceeds max_n=" + std::to_string(c.max_n));
  if (tdeg > c.max_tdeg)
    throw ResourceCapExceeded("tdeg=" + std::to_string(tdeg) + " exceeds max_tdeg=" + std::to_string(c.max_tdeg));
}

// Runs f on every item with up to `threads` workers; results come back in
// input order so reports are deterministic.
template <class Item, class F>
auto parallel_map(const std::vector<Item>& items, int threads, F f) {
  using R = decltype(f(items.front()));
  std::vector<R> out(items.size());
  std::size_t workers = std::min<std::size_t>(std::max(threads, 1), items.size());
  if (workers <= 1) {
    for (std::size_t j = 0; j < items.size(); ++j) out[j] = f(items[j]);
    return out;
  }
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < workers; ++t)
    pool.emplace_back([&, t] {
      for (std::size_t j = t; j < items.size(); j += workers) out[j] = f(items[j]);
    });
  for (auto& th : pool) th.join();
  return out;
}

struct Report {
  std::string kind;  // "verify" or "scan"
  std::string name;
  int n = 0;
  nlohmann::json params = nlohmann::json::object();
  std::vector<Counterexample> counterexamples;
  std::vector<Counterexample> findings;
  std::map<std::string, long long> stats;
  bool conditional = false;
  bool fatal = true;  // whether counterexamples mean exit status 1
  double elapsed_ms = 0;

  bool ok() const { return counterexamples.empty(); }
};

inline nlohmann::json counterexample_json(const Counterexample& c) {
  nlohmann::json j = {{"w", c.w}, {"k", c.k}, {"l", c.l}, {"eta", c.eta}, {"detail", c.detail}};
  if (c.p) j["p"] = c.p;
  return j;
}

// The deterministic part of a report.
inline nlohmann::json report_body(const Report& r) {
  nlohmann::json j;
  j[r.kind == "scan" ? "scan" : "suite"] = r.name;
  j["n"] = r.n;
  j["params"] = r.params;
  j["ok"] = r.ok();
  j["counterexamples"] = nlohmann::json::array();
  for (const auto& c : r.counterexamples) j["counterexamples"].push_back(counterexample_json(c));
  if (!r.findings.empty() || r.name == "formpw3") {
    j["findings"] = nlohmann::json::array();
    for (const auto& c : r.findings) j["findings"].push_back(counterexample_json(c));
  }
  j["stats"] = r.stats;
  if (r.conditional) j["status"] = "conditional";
  j["fatal"] = r.fatal;
  return j;
}

inline nlohmann::json report_json(const Report& r) {
  nlohmann::json j = report_body(r);
  j["elapsed_ms"] = r.elapsed_ms;
  return j;
}

// FNV-1a, used only to fingerprint canonical JSON text in manifests.
inline std::string fingerprint(const std::string& s) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : s) h = (h ^ c) * 1099511628211ULL;
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

struct RunManifest {
  std::string command;
  nlohmann::json params;
  std::string timestamp;
  std::string input_hash;
  std::string result_hash;
  nlohmann::json result_summary;
  int exit_status = 0;

  nlohmann::json to_json() const {
    return {{"command", command},         {"params", params},           {"version", KEYSERIES_VERSION},
            {"timestamp", timestamp},     {"input_hash", input_hash},   {"result_hash", result_hash},
            {"result_summary", result_summary}, {"exit_status", exit_status}};
  }
};

inline std::string utc_timestamp() {
  std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

inline RunManifest make_manifest(const std::string& command, const Report& r, int exit_status) {
  RunManifest m;
  m.command = command;
  m.params = {{"name", r.name}, {"n", r.n}, {"params", r.params}};
  m.timestamp = utc_timestamp();
  m.input_hash = fingerprint(m.params.dump());
  m.result_hash = fingerprint(report_body(r).dump());
  m.result_summary = {{"ok", r.ok()},
                      {"counterexamples", r.counterexamples.size()},
                      {"findings", r.findings.size()}};
  m.exit_status = exit_status;
  return m;
}

namespace detail {

template <class F>
Report timed(Report r, F body) {
  auto t0 = std::chrono::steady_clock::now();
  body(r);
  r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

inline void absorb(Report& r, const CheckReport& c) {
  r.counterexamples.insert(r.counterexamples.end(), c.violations.begin(), c.violations.end());
  for (const auto& [k, v] : c.stats) r.stats[k] += v;
}

inline void absorb(Report& r, const ScanReport& s) {
  r.counterexamples = s.counterexamples;
  r.findings = s.findings;
  r.stats = s.stats;
  r.conditional = s.conditional;
}

template <class F>
void per_permutation(Report& r, int n, int threads, F check) {
  auto results = parallel_map(all_permutations(n), threads, check);
  for (const auto& c : results) absorb(r, c);
  r.stats["permutations"] = static_cast<long long>(results.size());
}

}  // namespace detail

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"formofkw", "diff1",   "diff2", "lketa23",
                                                 "bounds",   "multsiw", "pxiw1", "fcoeff"};
  return names;
}
inline const std::vector<std::string>& scan_names() {
  static const std::vector<std::string> names = {"siinc", "poset", "formpw3", "formpw2bound"};
  return names;
}

inline Integer binomial(int a, int b) {
  Integer r = 1;
  for (int j = 1; j <= b; ++j) r = r * (a - b + j) / j;
  return r;
}

// Partitions with at most `parts` parts and size at most `max_size`.
inline std::vector<Partition> small_partitions(int parts, int max_size) {
  std::vector<Partition> out;
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int left, int cap) {
    out.emplace_back(cur);
    if (static_cast<int>(cur.size()) == parts) return;
    for (int v = std::min(left, cap); v >= 1; --v) {
      cur.push_back(v);
      rec(left - v, v);
      cur.pop_back();
    }
  };
  rec(max_size, max_size);
  return out;
}

inline Report run_suite(const std::string& name, int n, int tdeg, const RunConfig& cfg) {
  enforce_caps(cfg, n, tdeg);
  Report base;
  base.kind = "verify";
  base.name = name;
  base.n = n;
  base.params = {{"tdeg", tdeg}};
  int threads = cfg.thread_count();
  if (name == "formofkw") {
    return detail::timed(base, [&](Report& r) {
      detail::per_permutation(r, n, threads, [&](const Permutation& w) {
        CheckReport c;
        std::vector<std::vector<int>> words = {w.reduced_word(), w.reduced_word_largest()};
        for (std::size_t k = 0; k < words.size(); ++k) {
          auto fr = verify_form(w, tdeg, false, &words[k]);
          ++c.stats["forms_checked"];
          c.stats["series_terms"] += static_cast<long long>(fr.terms);
          if (!fr.ok) c.fail(w, 0, 0, MultiSet(), "series mismatch for reduced word " + std::to_string(k + 1));
        }
        return c;
      });
    });
  }
  if (name == "diff1" || name == "diff2" || name == "lketa23" || name == "bounds") {
    return detail::timed(base, [&](Report& r) {
      NumeratorTable table(n, 2);
      detail::per_permutation(r, n, threads, [&](const Permutation& w) {
        const Poly& P = table.at(w);
        if (name == "diff1") return check_diff1(w, P);
        if (name == "diff2") return check_diff2(w, P);
        if (name == "lketa23") return check_lketa23(w, P);
        CheckReport c = check_bounds(w, P);
        for (int i = 1; i < n; ++i)
          if (w.is_ascent(i)) {
            auto siw = w.left_multiply(i);
            c.merge(check_lowbdr2_monotone(w, P, siw, table.at(siw)));
          }
        return c;
      });
    });
  }
  if (name == "multsiw") {
    return detail::timed(base, [&](Report& r) {
      NumeratorTable table(n, 3);
      detail::per_permutation(r, n, threads, [&](const Permutation& w) {
        CheckReport c;
        for (int i = 1; i < n; ++i) {
          if (!w.is_ascent(i)) continue;
          auto siw = w.left_multiply(i);
          c.merge(check_multsiw(w, i, table.at(w), table.at(siw)));
          c.merge(check_siwmults(w, i, table.at(w), table.at(siw)));
          for (int l = 1; l <= n; ++l)
            for (int k = 1; k <= l; ++k)
              for (const auto& eta : enum_Btilde(w, k, l)) {
                auto [a, b] = pair_type(eta, i);
                if (a != 1 || b != 1) continue;
                auto p = eta_lemma_predicates(w, i, k, l, eta);
                ++c.stats["eta11_lemma_instances"];
                if (p.eta20_i != p.eta20_ii || p.eta20_i != p.eta20_iii)
                  c.fail(w, k, l, eta, "eta20 conditions disagree, i=" + std::to_string(i));
                if (p.eta02_i != p.eta02_ii || p.eta02_i != p.eta02_iii)
                  c.fail(w, k, l, eta, "eta02 conditions disagree, i=" + std::to_string(i));
              }
        }
        return c;
      });
    });
  }
  if (name == "pxiw1") {
    return detail::timed(base, [&](Report& r) {
      detail::per_permutation(r, n, threads, [&](const Permutation& w) {
        CheckReport c;
        auto lp = lascoux_linear_part(w);
        ++c.stats["checked"];
        c.stats["linear_terms"] += static_cast<long long>(lp.induction.size());
        if (!lp.ok()) c.fail(w, 0, 0, MultiSet(), "closed form " + lp.closed_form.to_string() + " vs " + lp.induction.to_string());
        return c;
      });
    });
  }
  if (name == "fcoeff") {
    base.params["max_size"] = tdeg;
    return detail::timed(base, [&](Report& r) {
      detail::per_permutation(r, n, threads, [&](const Permutation& w) {
        CheckReport c;
        for (const auto& lambda : small_partitions(n, tdeg)) {
          if (lambda.size() > tdeg) continue;
          // Every mu in the support of the series is compared, and the
          // counts must add up to the number of unconstrained selections.
          GapVector h = lambda.gaps(n);
          int D = 0;
          Integer selections = 1;
          std::vector<Monomial> factors;
          for (int l = 1; l <= n; ++l) {
            if (h[l - 1] == 0) continue;
            D += h[l - 1];
            const auto& A = enum_A(w, l);
            selections *= binomial(static_cast<int>(A.size()) + h[l - 1] - 1, h[l - 1]);
            for (const auto& a : A) factors.push_back(MultiSet::from_seq(a).monomial() * Monomial::make_T(l));
          }
          Poly F = factors.empty() ? Poly(1) : series_inverse_product(factors, D);
          Monomial tb = lambda.T_monomial();
          Integer sum = 0;
          for (const auto& [m, coef] : F.terms()) {
            if (m.without_x() != tb) continue;
            Monomial mu = m.x_part();
            Integer comb = F_coefficient(lambda, w, mu);
            sum += comb;
            ++c.stats["coefficients"];
            if (comb != coef)
              c.fail(w, 0, 0, MultiSet::from_monomial(mu),
                     "lambda=" + lambda.to_string() + ": count " + comb.str() + " vs series " + coef.str());
          }
          if (sum != selections)
            c.fail(w, 0, 0, MultiSet(), "lambda=" + lambda.to_string() + ": counts add up to " + sum.str() +
                                            ", expected " + selections.str());
        }
        return c;
      });
    });
  }
  throw std::invalid_argument("unknown suite " + name);
}

inline Report run_scan(const std::string& name, int n, const RunConfig& cfg) {
  enforce_caps(cfg, n);
  Report base;
  base.kind = "scan";
  base.name = name;
  base.n = n;
  base.params = nlohmann::json::object();
  // Pure conjectures record counterexamples without failing the run;
  // the formpw2 bound is a theorem once siinc holds at the same n.
  base.fatal = false;
  if (name == "siinc")
    return detail::timed(base, [&](Report& r) { detail::absorb(r, scan_siinc(n, NumeratorTable(n, 2))); });
  if (name == "formpw2bound")
    return detail::timed(base, [&](Report& r) {
      NumeratorTable t(n, 2);
      detail::absorb(r, scan_formpw2bound(n, t));
      bool siinc_holds = scan_siinc(n, t).counterexamples.empty();
      r.params["siinc_holds"] = siinc_holds;
      r.fatal = siinc_holds;
    });
  if (name == "formpw3")
    return detail::timed(base, [&](Report& r) { detail::absorb(r, scan_formpw3(n, NumeratorTable(n, 3))); });
  if (name == "poset") {
    base.params["max_embedding_pairs"] = 4000;
    return detail::timed(base, [&](Report& r) { detail::absorb(r, scan_poset(n, NumeratorTable(n, 2))); });
  }
  throw std::invalid_argument("unknown conjecture " + name);
}

}  // namespace keyseries
