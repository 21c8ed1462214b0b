#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <string>

#include "adl/config.hpp"
#include "adl/error.hpp"

using namespace adl;

TEST_CASE("key=value lines parse with trimming") {
  const RunConfig cfg = parse_run_config(
      "alpha = 0.25\n"
      "  preset=deep  \n"
      "out_dir = runs/out\n");
  CHECK(cfg.values().size() == 3);
  CHECK(cfg.get("alpha") == "0.25");
  CHECK(cfg.get("preset") == "deep");
  CHECK(cfg.get("out_dir") == "runs/out");
}

TEST_CASE("comments and blank lines are skipped") {
  const RunConfig cfg = parse_run_config(
      "# run settings\n"
      "\n"
      "   \n"
      "seed = 9\n"
      "# trailing note\n");
  CHECK(cfg.values().size() == 1);
  CHECK(cfg.get_uint("seed") == 9);
}

TEST_CASE("later duplicates win") {
  const RunConfig cfg = parse_run_config("budget = 10\nbudget = 20\n");
  CHECK(cfg.get_int("budget") == 20);
}

TEST_CASE("unknown keys are rejected with the offending line") {
  try {
    parse_run_config("alpha = 0.1\nalfa = 0.2\n");
    FAIL("expected BadConfig");
  } catch (const Error& e) {
    CHECK(e.kind() == Errc::BadConfig);
    CHECK(e.line() == 2);
  }
}

TEST_CASE("lines without an equals sign are rejected") {
  try {
    parse_run_config("# ok\njust some words\n");
    FAIL("expected BadConfig");
  } catch (const Error& e) {
    CHECK(e.kind() == Errc::BadConfig);
    CHECK(e.line() == 2);
  }
}

TEST_CASE("an empty key is rejected") {
  try {
    parse_run_config(" = 3\n");
    FAIL("expected BadConfig");
  } catch (const Error& e) {
    CHECK(e.kind() == Errc::BadConfig);
    CHECK(e.line() == 1);
  }
}

TEST_CASE("a final line without a newline still parses") {
  const RunConfig cfg = parse_run_config("jobs = 4");
  CHECK(cfg.get_int("jobs") == 4);
}

TEST_CASE("typed getters parse their values") {
  const RunConfig cfg = parse_run_config(
      "alpha = 0.125\n"
      "budget = -3\n"
      "seed = 18446744073709551615\n");
  CHECK(cfg.get_double("alpha") == 0.125);
  CHECK(cfg.get_int("budget") == -3);
  CHECK(cfg.get_uint("seed") == 18446744073709551615ull);
}

TEST_CASE("typed getters return nullopt for absent keys") {
  const RunConfig cfg = parse_run_config("alpha = 0.1\n");
  CHECK(!cfg.get("budget").has_value());
  CHECK(!cfg.get_double("peak_floor").has_value());
  CHECK(!cfg.get_int("jobs").has_value());
  CHECK(!cfg.get_uint("seed").has_value());
  CHECK(!cfg.has("budget"));
  CHECK(cfg.has("alpha"));
}

TEST_CASE("non-numeric text surfaces as BadConfig at access") {
  const RunConfig cfg = parse_run_config(
      "alpha = fast\n"
      "budget = 1e3\n"
      "seed = -1\n");
  for (auto probe : {+[](const RunConfig& c) { (void)c.get_double("alpha"); },
                     +[](const RunConfig& c) { (void)c.get_int("budget"); },
                     +[](const RunConfig& c) { (void)c.get_uint("seed"); }}) {
    try {
      probe(cfg);
      FAIL("expected BadConfig");
    } catch (const Error& e) {
      CHECK(e.kind() == Errc::BadConfig);
    }
  }
}

TEST_CASE("the key allowlist matches the documented settings") {
  for (const char* key :
       {"corpus_dir", "features", "model", "out_dir", "alpha",
        "peak_separation_ms", "peak_floor", "variant", "preset", "norm",
        "budget", "budgets", "seed", "test_fraction", "per_class", "jobs",
        "presets", "variants", "arms", "lr_mlp_bp", "lr_ff_bp", "lr_deep",
        "l2_lambda", "mlp_hidden", "ff_hidden", "deep_hidden", "trials"})
    CHECK(is_known_config_key(key));
  CHECK(!is_known_config_key("alfa"));
  CHECK(!is_known_config_key(""));
  CHECK(!is_known_config_key("Seed"));
}

TEST_CASE("configs load from disk and missing files fail cleanly") {
  const std::string path = "/tmp/adl_test_config.cfg";
  {
    std::ofstream out(path, std::ios::binary);
    out << "per_class = 12\n# comment\ntrials = 50\n";
  }
  const RunConfig cfg = load_run_config(path);
  CHECK(cfg.get_int("per_class") == 12);
  CHECK(cfg.get_int("trials") == 50);
  std::remove(path.c_str());

  try {
    load_run_config("/tmp/adl_test_config_missing.cfg");
    FAIL("expected IoError");
  } catch (const Error& e) {
    CHECK(e.kind() == Errc::IoError);
  }
}
