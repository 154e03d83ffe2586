// keyseries: command-line access to key polynomials, P_w, the sets A/B/C,
// verification suites and conjecture scans.
//
// Exit status: 0 pass, 1 counterexample or mismatch, 2 usage error,
// 3 resource cap exceeded.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "keyseries/io.hpp"
#include "keyseries/key_series.hpp"
#include "keyseries/multiset.hpp"
#include "keyseries/report.hpp"

namespace ks = keyseries;
using nlohmann::json;

namespace {

enum Exit { kPass = 0, kMismatch = 1, kUsage = 2, kCap = 3 };

std::vector<int> parse_ints(const std::string& text) {
  std::vector<int> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) v.push_back(std::stoi(item));
  return v;
}

void print_poly(const ks::Poly& p, const std::string& format, json meta) {
  if (format == "json") {
    meta["poly"] = ks::poly_to_json(p);
    std::cout << meta.dump(2) << "\n";
  } else {
    std::cout << p.to_string() << "\n";
  }
}

void write_json(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write " + path);
  out << j.dump(2) << "\n";
}

int finish_report(const std::string& command, const ks::Report& r, const std::string& out_path,
                  const std::string& manifest_path, const std::string& format) {
  int status = r.ok() || !r.fatal ? kPass : kMismatch;
  json j = ks::report_json(r);
  if (!out_path.empty()) write_json(out_path, j);
  if (!manifest_path.empty()) write_json(manifest_path, ks::make_manifest(command, r, status).to_json());
  if (format == "json") {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << r.name << " n=" << r.n << ": " << (r.ok() ? "pass" : "FAIL") << " ("
              << r.counterexamples.size() << " counterexamples";
    if (!r.findings.empty()) std::cout << ", " << r.findings.size() << " findings";
    std::cout << ")";
    for (const auto& [k, v] : r.stats) std::cout << " " << k << "=" << v;
    std::cout << "\n";
    for (std::size_t i = 0; i < r.counterexamples.size() && i < 10; ++i) {
      const auto& c = r.counterexamples[i];
      std::cout << "  w=" << c.w << " k=" << c.k << " l=" << c.l << " eta=" << c.eta << ": " << c.detail << "\n";
    }
    if (r.conditional) std::cout << "  (conditional claim; fatal=" << (r.fatal ? "yes" : "no") << ")\n";
  }
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generating series of key polynomials: computations and checks"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "text", config_path;
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--config", config_path, "key=value file with max_n, max_tdeg, threads");
  app.set_version_flag("--version", KEYSERIES_VERSION);

  auto* key = app.add_subcommand("key", "Key (or Lascoux, with --xi) polynomial");
  std::string key_w, key_lambda, key_nu;
  bool key_xi = false;
  key->add_option("--w", key_w, "Permutation in one-line notation");
  key->add_option("--lambda", key_lambda, "Partition, comma separated");
  key->add_option("--nu", key_nu, "Weak composition, comma separated");
  key->add_flag("--xi", key_xi, "Lascoux polynomial");

  auto* pw = app.add_subcommand("pw", "Numerator polynomial P_w");
  std::string pw_w;
  bool pw_xi = false;
  int pw_grade = -1, pw_tdeg = -1;
  pw->add_option("--w", pw_w, "Permutation")->required();
  pw->add_flag("--xi", pw_xi, "Lascoux version P_w^(xi)");
  pw->add_option("--grade", pw_grade, "Only the part of this T-degree");
  pw->add_option("--tdeg", pw_tdeg, "Truncate above this T-degree");

  auto* sets = app.add_subcommand("sets", "List A_l(w), B_{k,l}(w), B~_{k,l}(w) or C_{p,k,l}(w)");
  std::string sets_w, sets_A, sets_B, sets_Bt, sets_C;
  sets->add_option("--w", sets_w, "Permutation")->required();
  auto* oA = sets->add_option("--A", sets_A, "l");
  auto* oB = sets->add_option("--B", sets_B, "k,l");
  auto* oBt = sets->add_option("--Btilde", sets_Bt, "k,l");
  auto* oC = sets->add_option("--C", sets_C, "p,k,l");
  oA->excludes(oB)->excludes(oBt)->excludes(oC);
  oB->excludes(oBt)->excludes(oC);
  oBt->excludes(oC);

  auto* verify = app.add_subcommand("verify", "Run a verification suite over S_n");
  std::string suite, v_out, v_manifest;
  int v_n = 4, v_tdeg = 0;
  verify->add_option("--suite", suite, "Suite")->required()->check(CLI::IsMember(ks::suite_names()));
  verify->add_option("--n", v_n, "Rank")->check(CLI::Range(1, 64));
  verify->add_option("--tdeg", v_tdeg, "T-degree bound (formofkw) or max |lambda| (fcoeff)");
  verify->add_option("--out", v_out, "Write the JSON report here");
  verify->add_option("--manifest", v_manifest, "Write the run manifest here");

  auto* scan = app.add_subcommand("scan", "Scan S_n for counterexamples to a conjecture");
  std::string conj, s_out, s_manifest;
  int s_n = 4;
  scan->add_option("--conjecture", conj, "Conjecture")->required()->check(CLI::IsMember(ks::scan_names()));
  scan->add_option("--n", s_n, "Rank")->check(CLI::Range(1, 64));
  scan->add_option("--out", s_out, "Write the JSON report here");
  scan->add_option("--manifest", s_manifest, "Write the run manifest here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    ks::RunConfig cfg = ks::load_config(config_path);

    if (*key) {
      ks::Poly result;
      json meta;
      if (!key_nu.empty()) {
        if (!key_w.empty() || !key_lambda.empty()) throw std::invalid_argument("--nu excludes --w and --lambda");
        auto nu = ks::Partition::parse_list(key_nu);
        auto [lambda, w] = ks::sort_composition(nu);
        result = key_xi ? ks::lascoux_polynomial(lambda, w) : ks::key_polynomial(lambda, w);
        meta = {{"nu", nu}, {"lambda", lambda.parts()}, {"w", w.to_string()}};
      } else {
        if (key_w.empty() || key_lambda.empty()) throw std::invalid_argument("need --w and --lambda, or --nu");
        auto w = ks::Permutation::parse(key_w);
        auto lambda = ks::Partition::parse(key_lambda);
        result = key_xi ? ks::lascoux_polynomial(lambda, w) : ks::key_polynomial(lambda, w);
        meta = {{"lambda", lambda.parts()}, {"w", w.to_string()}};
      }
      meta["xi"] = key_xi;
      print_poly(result, format, meta);
      return kPass;
    }

    if (*pw) {
      auto w = ks::Permutation::parse(pw_w);
      ks::enforce_caps(cfg, w.rank(), 0);
      int trunc = pw_tdeg;
      if (pw_grade >= 0 && (trunc < 0 || trunc > pw_grade)) trunc = pw_grade;
      ks::Poly P = ks::numerator_P(w, pw_xi, trunc);
      if (pw_grade >= 0) P = P.graded_part(pw_grade);
      print_poly(P, format, {{"w", w.to_string()}, {"xi", pw_xi}, {"grade", pw_grade}});
      return kPass;
    }

    if (*sets) {
      auto w = ks::Permutation::parse(sets_w);
      std::vector<std::string> items;
      json meta = {{"w", w.to_string()}};
      if (!sets_A.empty()) {
        int l = std::stoi(sets_A);
        if (l < 1) throw std::invalid_argument("l must be positive");
        for (const auto& a : ks::enum_A(w.extended(std::max(l, w.n())), l)) items.push_back(a.to_string());
        meta["set"] = "A";
        meta["l"] = l;
      } else if (!sets_B.empty() || !sets_Bt.empty()) {
        auto kl = parse_ints(sets_B.empty() ? sets_Bt : sets_B);
        if (kl.size() != 2 || kl[0] < 1 || kl[0] > kl[1]) throw std::invalid_argument("expected k,l with 1 <= k <= l");
        auto we = w.extended(std::max(kl[1], w.n()));
        auto list = sets_B.empty() ? ks::enum_Btilde(we, kl[0], kl[1]) : ks::enum_B(we, kl[0], kl[1]);
        for (const auto& e : list) items.push_back(e.to_string());
        meta["set"] = sets_B.empty() ? "Btilde" : "B";
        meta["k"] = kl[0];
        meta["l"] = kl[1];
      } else if (!sets_C.empty()) {
        auto pkl = parse_ints(sets_C);
        if (pkl.size() != 3 || pkl[0] < 1 || pkl[0] > pkl[1] || pkl[1] > pkl[2])
          throw std::invalid_argument("expected p,k,l with 1 <= p <= k <= l");
        auto we = w.extended(std::max(pkl[2], w.n()));
        for (const auto& e : ks::enum_C(we, pkl[0], pkl[1], pkl[2]).c) items.push_back(e.to_string());
        meta["set"] = "C";
        meta["p"] = pkl[0];
        meta["k"] = pkl[1];
        meta["l"] = pkl[2];
      } else {
        throw std::invalid_argument("one of --A, --B, --Btilde, --C is required");
      }
      if (format == "json") {
        meta["elements"] = items;
        meta["count"] = items.size();
        std::cout << meta.dump(2) << "\n";
      } else {
        for (const auto& s : items) std::cout << s << "\n";
      }
      return kPass;
    }

    if (*verify) {
      int tdeg = v_tdeg;
      if (tdeg == 0) tdeg = suite == "fcoeff" ? 6 : suite == "formofkw" ? 4 : 2;
      auto r = ks::run_suite(suite, v_n, tdeg, cfg);
      return finish_report("verify", r, v_out, v_manifest, format);
    }

    if (*scan) {
      auto r = ks::run_scan(conj, s_n, cfg);
      return finish_report("scan", r, s_out, s_manifest, format);
    }
  } catch (const ks::ResourceCapExceeded& e) {
    std::cerr << "resource cap: " << e.what() << "\n";
    return kCap;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
