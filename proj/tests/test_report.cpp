#include "keyseries/report.hpp"

#include <cstdlib>
#include <sstream>

#include "gtest/gtest.h"

namespace keyseries {
namespace {

RunConfig single_thread() {
  RunConfig c;
  c.threads = 1;
  return c;
}

TEST(Config, Parse) {
  std::istringstream in("# limits\nmax_n = 6\n\nmax_tdeg=5  # inline\nthreads=2\n");
  RunConfig c = parse_config(in);
  EXPECT_EQ(c.max_n, 6);
  EXPECT_EQ(c.max_tdeg, 5);
  EXPECT_EQ(c.threads, 2);
  EXPECT_EQ(c.thread_count(), 2);
}

TEST(Config, Rejects) {
  std::istringstream unknown("max_m=3\n");
  EXPECT_THROW(parse_config(unknown), std::invalid_argument);
  std::istringstream no_eq("max_n 3\n");
  EXPECT_THROW(parse_config(no_eq), std::invalid_argument);
  std::istringstream big("max_n=40\n");
  EXPECT_EQ(parse_config(big).max_n, kHardMaxN);
  EXPECT_THROW(load_config("/nonexistent/keyseries.conf"), std::invalid_argument);
}

TEST(Config, ThreadsFromEnvironment) {
  setenv("KEYSERIES_THREADS", "3", 1);
  EXPECT_EQ(load_config("").threads, 3);
  unsetenv("KEYSERIES_THREADS");
  EXPECT_EQ(load_config("").threads, 0);
  EXPECT_GE(RunConfig{}.thread_count(), 1);
}

TEST(Config, Caps) {
  RunConfig c;
  EXPECT_NO_THROW(enforce_caps(c, 7, 8));
  EXPECT_THROW(enforce_caps(c, 8), ResourceCapExceeded);
  EXPECT_THROW(enforce_caps(c, 4, 9), ResourceCapExceeded);
  EXPECT_THROW(run_suite("diff1", 8, 0, c), ResourceCapExceeded);
  EXPECT_THROW(run_scan("siinc", 8, c), ResourceCapExceeded);
}

TEST(ParallelMap, KeepsOrder) {
  std::vector<int> items(1000);
  for (int j = 0; j < 1000; ++j) items[j] = j;
  for (int threads : {1, 3, 8}) {
    auto out = parallel_map(items, threads, [](int v) { return v * v; });
    for (int j = 0; j < 1000; ++j) ASSERT_EQ(out[j], j * j);
  }
  EXPECT_TRUE(parallel_map(std::vector<int>{}, 4, [](int v) { return v; }).empty());
}

TEST(Suites, AllPassAtSmallSize) {
  for (const auto& name : suite_names()) {
    Report r = run_suite(name, 4, 3, single_thread());
    EXPECT_TRUE(r.ok()) << name << " " << report_body(r).dump();
    EXPECT_EQ(r.kind, "verify");
    EXPECT_EQ(r.name, name);
  }
  EXPECT_THROW(run_suite("nope", 3, 2, single_thread()), std::invalid_argument);
  EXPECT_THROW(run_scan("nope", 3, single_thread()), std::invalid_argument);
}

TEST(Suites, Deterministic) {
  RunConfig many = single_thread();
  many.threads = 4;
  Report a = run_suite("diff2", 4, 0, single_thread());
  Report b = run_suite("diff2", 4, 0, many);
  EXPECT_EQ(report_body(a).dump(), report_body(b).dump());
  EXPECT_EQ(make_manifest("verify", a, 0).result_hash, make_manifest("verify", b, 0).result_hash);
}

TEST(Reports, JsonShape) {
  Report r = run_suite("bounds", 4, 0, single_thread());
  auto j = report_json(r);
  for (const char* key : {"suite", "n", "params", "ok", "counterexamples", "stats", "fatal", "elapsed_ms"})
    EXPECT_TRUE(j.contains(key)) << key;
  EXPECT_FALSE(report_body(r).contains("elapsed_ms"));

  Report s = run_scan("siinc", 4, single_thread());
  auto js = report_json(s);
  EXPECT_EQ(js["scan"], "siinc");
  EXPECT_EQ(js["counterexamples"].size(), 0u);
  EXPECT_FALSE(js["fatal"].get<bool>());
}

TEST(Reports, Manifest) {
  Report r = run_suite("diff1", 4, 0, single_thread());
  auto m = make_manifest("keyseries verify --suite diff1 --n 4", r, 0).to_json();
  for (const char* key : {"command", "params", "version", "timestamp", "input_hash", "result_hash", "result_summary",
                          "exit_status"})
    EXPECT_TRUE(m.contains(key)) << key;
  EXPECT_EQ(m["result_hash"].get<std::string>().size(), 16u);
  EXPECT_EQ(m["result_summary"]["ok"], true);
  EXPECT_EQ(m["timestamp"].get<std::string>().back(), 'Z');
  EXPECT_EQ(fingerprint(""), "cbf29ce484222325");
  EXPECT_NE(fingerprint("a"), fingerprint("b"));
}

TEST(Scans, FormPw3IsNonFatal) {
  Report r = run_scan("formpw3", 4, single_thread());
  EXPECT_EQ(r.counterexamples.size(), 26u);
  EXPECT_EQ(r.findings.size(), 44u);
  EXPECT_FALSE(r.fatal);
  EXPECT_TRUE(report_body(r).contains("findings"));
}

TEST(Scans, FormPw2BoundIsConditional) {
  Report r = run_scan("formpw2bound", 4, single_thread());
  EXPECT_TRUE(r.ok());
  EXPECT_TRUE(r.conditional);
  EXPECT_EQ(report_body(r)["status"], "conditional");
  EXPECT_EQ(r.params["siinc_holds"], true);
}

TEST(Scans, PosetClasses) {
  Report r = run_scan("poset", 4, single_thread());
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(r.params["max_embedding_pairs"], 4000);
}

TEST(Helpers, Binomial) {
  EXPECT_EQ(binomial(5, 2), 10);
  EXPECT_EQ(binomial(4, 0), 1);
  EXPECT_EQ(binomial(2, 3), 0);
  EXPECT_EQ(small_partitions(2, 2).size(), 4u);  // 0, 1, 2, 11
}

}  // namespace
}  // namespace keyseries
