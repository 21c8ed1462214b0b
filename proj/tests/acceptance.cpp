// Acceptance suite: one PASS/FAIL line per criterion; the exit code is the
// number of failed criteria.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "adl/dsp.hpp"
#include "adl/error.hpp"
#include "adl/experiment.hpp"
#include "adl/features.hpp"
#include "adl/ingest.hpp"
#include "adl/nn.hpp"
#include "adl/rng.hpp"
#include "adl/synth.hpp"
#include "adl/types.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;
using namespace adl;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;
int g_criterion = 0;

void report_line(bool ok, const std::string& name) {
  ++g_criterion;
  std::printf("%s %d. %s\n", ok ? "PASS" : "FAIL", g_criterion, name.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

// --- 1. gradient correctness -----------------------------------------------

void criterion_gradients() {
  // Same trial derivation as the gradcheck subcommand with its default seed.
  const auto t0 = Clock::now();
  const std::uint64_t seed = 1;
  double worst = 0.0;
  for (Preset preset : all_presets()) {
    for (int trial = 0; trial < 100; ++trial) {
      const DatasetVariant variant = all_variants()[std::size_t(trial) % 5];
      const int arity = variant_arity(variant);
      const NetworkSpec spec =
          make_spec(preset, arity, mix64(seed, std::uint64_t(trial) * 3));

      ScalerParams identity;
      identity.kind = ScalerKind::Identity;
      identity.a.assign(std::size_t(arity), 0.0);
      identity.b.assign(std::size_t(arity), 1.0);
      const Model m = init_model(spec, variant, identity);

      std::mt19937_64 rng(mix64(seed, std::uint64_t(trial) * 3 + 1));
      std::vector<double> x(std::size_t(arity), 0.0);
      for (double& v : x) v = normal01(rng);
      const AdlLabel y = *label_from_code(int(rng() % kNumClasses));

      worst = std::max(worst, grad_check(m, x, y, 1e-5).worst_rel_error);
    }
  }
  const double elapsed = seconds_since(t0);
  report_line(worst < 1e-4 && elapsed < 30.0,
              "analytic gradients match central differences on 100 triples "
              "per preset (worst " +
                  fmt(worst) + ", " + fmt(elapsed) + " s)");
}

// --- 2. dsp oracles ---------------------------------------------------------

void criterion_dsp() {
  bool ok = true;
  std::string detail;

  std::mt19937_64 rng(0xACC2);
  for (int trial = 0; trial < 50 && ok; ++trial) {
    const double c = 20.0 * uniform01(rng) - 10.0;
    const double alpha = 0.01 + 0.99 * uniform01(rng);
    const ScalarSeries y =
        lowpass(ScalarSeries{100.0, std::vector<double>(64, c)}, alpha);
    for (double v : y.values)
      if (std::fabs(v - c) > 1e-9) {
        ok = false;
        detail = "DC gain off by " + fmt(std::fabs(v - c));
      }
  }

  for (double alpha : {0.05, 0.1, 0.3, 0.9}) {
    for (double freq : {1.0, 5.0, 10.0, 20.0}) {
      if (!ok) break;
      ScalarSeries s;
      s.rate_hz = 100.0;
      for (int i = 0; i < 1000; ++i)
        s.values.push_back(std::sin(2.0 * 3.14159265358979323846 * freq *
                                    double(i) / 100.0));
      const double measured = oracle::demod_amplitude(
          lowpass(s, alpha).values, freq, 100.0, 600, 400);
      const double expected = oracle::lowpass_gain(alpha, freq, 100.0);
      if (std::fabs(measured - expected) > 1e-3) {
        ok = false;
        detail = "sine gain off by " + fmt(std::fabs(measured - expected));
      }
    }
  }

  const oracle::SeriesMode modes[] = {oracle::SeriesMode::Smooth,
                                      oracle::SeriesMode::Quantized,
                                      oracle::SeriesMode::Spiky};
  int matched = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 20 + rng() % 300;
    const ScalarSeries s =
        oracle::random_series(rng, n, modes[std::size_t(trial) % 3]);
    const double sep = double(rng() % 40) * 10.0;
    const double floor_sd = double(rng() % 4) * 0.5;
    const PeakSet got = detect_peaks(s, sep, floor_sd);
    const PeakSet want = oracle::naive_peaks(s, sep, floor_sd);
    if (got.indices == want.indices && got.values == want.values) ++matched;
  }
  if (matched != 1000) {
    ok = false;
    detail = "peak oracle matched " + std::to_string(matched) + "/1000";
  }

  report_line(ok, "low-pass DC gain, analytic sine attenuation and the "
                  "exhaustive peak oracle all agree" +
                      (detail.empty() ? "" : " (" + detail + ")"));
}

// --- 3. feature oracle ------------------------------------------------------

void criterion_features() {
  bool ok = true;
  std::mt19937_64 rng(0xACC3);
  const oracle::SeriesMode modes[] = {oracle::SeriesMode::Smooth,
                                      oracle::SeriesMode::Quantized,
                                      oracle::SeriesMode::Spiky};
  int matched = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 10 + rng() % 400;
    const ScalarSeries s =
        oracle::random_series(rng, n, modes[std::size_t(trial) % 3]);
    const double sep = double(rng() % 30) * 10.0;
    const PeakSet p = detect_peaks(s, sep, 0.0);
    const AdlLabel label = *label_from_code(int(rng() % kNumClasses));
    const FeatureVector got = extract_features(s, p, label);
    const FeatureVector want = oracle::naive_features(s, p, label);
    const auto gv = got.values();
    const auto wv = want.values();
    bool all = got.label == want.label;
    for (int i = 0; i < kFeatureCount; ++i)
      all = all && oracle::close_rel(gv[std::size_t(i)], wv[std::size_t(i)], 1e-9);
    if (all) ++matched;
  }
  if (matched != 1000) ok = false;

  const int expected_arity[] = {15, 10, 6, 4, 2};
  FeatureVector probe;
  for (std::size_t i = 0; i < 5; ++i) {
    const DatasetVariant v = all_variants()[i];
    if (variant_arity(v) != expected_arity[i]) ok = false;
    if (project(probe, v).size() != std::size_t(expected_arity[i])) ok = false;
  }

  report_line(ok, "features match the naive recomputation (" +
                      std::to_string(matched) +
                      "/1000) and variant arities are 15/10/6/4/2");
}

// --- shared desk corpus for 4 and 5 ----------------------------------------

std::vector<FeatureVector> desk_rows() {
  const auto corpus = generate_corpus(200, SynthParams::defaults(), 1);
  std::vector<FeatureVector> rows;
  rows.reserve(corpus.size());
  for (const Capture& c : corpus) {
    const ScalarSeries cleaned = lowpass(magnitude(c), kDefaultAlpha);
    const PeakSet peaks =
        detect_peaks(cleaned, kDefaultPeakSeparationMs, kDefaultPeakFloor);
    rows.push_back(extract_features(cleaned, peaks, c.label));
  }
  return rows;
}

// --- 4. desk-scale headline accuracy ----------------------------------------

void criterion_headline(std::span<const FeatureVector> rows) {
  const auto t0 = Clock::now();
  GridConfig cfg;
  cfg.presets = {Preset::Deep};
  cfg.variants = {DatasetVariant::D1};
  cfg.arms = {NormArm::Normalized};
  cfg.budgets = {40000};
  cfg.master_seed = 1;
  cfg.jobs = 1;
  const GridResult g = run_grid(cfg, rows);
  const double elapsed = seconds_since(t0);

  const bool has = g.cells.size() == 1 && g.cells[0].result.has_value();
  const double acc = has ? g.cells[0].result->accuracy : 0.0;
  report_line(has && acc >= 0.80 && elapsed < 300.0,
              "deep/d1/normalized at 40k updates reaches held-out accuracy >= "
              "0.80 on 200 captures per class (" +
                  fmt(acc) + ", " + fmt(elapsed) + " s)");
}

// --- 5. qualitative ordering -----------------------------------------------

void criterion_ordering(std::span<const FeatureVector> rows) {
  GridConfig cfg;
  cfg.master_seed = 1;
  cfg.jobs = 2;
  const GridResult g = run_grid(cfg, rows);

  bool all_ran = g.cells.size() == 90;
  double best_deep_norm = -1.0;
  double best_shallow = -1.0;
  std::string shallow_at;
  for (const GridCell& c : g.cells) {
    if (!c.result) {
      all_ran = false;
      continue;
    }
    const double acc = c.result->accuracy;
    if (c.preset == Preset::Deep && c.arm == NormArm::Normalized)
      best_deep_norm = std::max(best_deep_norm, acc);
    if (c.preset != Preset::Deep && acc > best_shallow) {
      best_shallow = acc;
      shallow_at = std::string(preset_name(c.preset)) + "/" +
                   std::string(norm_arm_name(c.arm));
    }
  }

  report_line(all_ran && best_deep_norm >= best_shallow,
              "best deep normalized accuracy (" + fmt(best_deep_norm) +
                  ") >= best shallow accuracy (" + fmt(best_shallow) + " at " +
                  shallow_at + ") across the full 90-cell grid");
}

// --- 6. grid determinism through the CLI -------------------------------------

int run_cli(const std::string& args) {
  const std::string cmd = std::string(ADL_CLI_PATH) + " " + args;
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return "<unreadable:" + path.string() + ">";
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void criterion_determinism() {
  const fs::path dir = fs::temp_directory_path() / "adl_acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const fs::path corpus = dir / "corpus";
  const fs::path features = dir / "features.csv";

  bool ok = true;
  std::string detail;
  ok = ok && run_cli("synth --out-dir " + corpus.string() +
                     " --per-class 20 --seed 5 > /dev/null") == 0;
  ok = ok && run_cli("featurize --corpus-dir " + corpus.string() + " --out " +
                     features.string() + " > /dev/null") == 0;
  ok = ok && run_cli("grid --features " + features.string() + " --out-dir " +
                     (dir / "g1").string() + " --seed 5 --jobs 2 > /dev/null") == 0;
  ok = ok && run_cli("grid --features " + features.string() + " --out-dir " +
                     (dir / "g2").string() + " --seed 5 --jobs 3 > /dev/null") == 0;
  if (!ok) detail = "pipeline command failed";

  const char* names[] = {"grid.csv",           "best.csv",
                         "fig1_raw.csv",       "fig1_normalized.csv",
                         "fig2_raw.csv",       "fig2_normalized.csv",
                         "fig3_raw.csv",       "fig3_normalized.csv"};
  for (const char* name : names) {
    if (!ok) break;
    if (slurp(dir / "g1" / name) != slurp(dir / "g2" / name)) {
      ok = false;
      detail = std::string(name) + " differs between runs";
    }
  }

  if (ok) {
    const std::string grid_csv = slurp(dir / "g1" / "grid.csv");
    std::size_t lines = 0;
    for (char c : grid_csv)
      if (c == '\n') ++lines;
    if (lines != 91 || grid_csv.find('#') != std::string::npos) {
      ok = false;
      detail = "expected 90 clean cells, got " + std::to_string(lines) +
               " lines";
    }
  }

  report_line(ok, "two grid runs with one master seed emit byte-identical "
                  "reports over all 90 cells" +
                      (detail.empty() ? "" : " (" + detail + ")"));
}

// --- 7. evaluation sanity ----------------------------------------------------

void criterion_eval_sanity() {
  std::vector<AdlLabel> truth;
  for (AdlLabel label : all_labels())
    truth.insert(truth.end(), 2000, label);

  std::mt19937_64 rng(0xACC7);
  std::vector<AdlLabel> random_preds;
  random_preds.reserve(truth.size());
  for (std::size_t i = 0; i < truth.size(); ++i)
    random_preds.push_back(*label_from_code(int(rng() % kNumClasses)));

  const EvalResult chance = tally_predictions(truth, random_preds);
  bool ok = std::fabs(chance.accuracy - 0.2) <= 0.02;

  const EvalResult perfect = tally_predictions(truth, truth);
  ok = ok && perfect.accuracy == 1.0;
  for (int t = 0; t < kNumClasses; ++t)
    for (int p = 0; p < kNumClasses; ++p)
      ok = ok && perfect.confusion[std::size_t(t)][std::size_t(p)] ==
                     (t == p ? 2000u : 0u);

  report_line(ok, "random predictor scores " + fmt(chance.accuracy) +
                      " (within 0.2 +- 0.02) and the perfect stub scores "
                      "exactly 1.0 with a diagonal confusion matrix");
}

// --- 8. format round-trips ---------------------------------------------------

Capture random_capture(std::mt19937_64& rng) {
  Capture c;
  c.label = *label_from_code(int(rng() % kNumClasses));
  c.rate_hz = 50.0 + 150.0 * uniform01(rng);
  const std::size_t n = 2 + rng() % 200;
  double t = 10.0 * uniform01(rng);
  for (std::size_t i = 0; i < n; ++i) {
    Sample s;
    s.t_ms = t;
    s.x = 30.0 * normal01(rng);
    s.y = 30.0 * normal01(rng);
    s.z = 30.0 * normal01(rng);
    c.samples.push_back(s);
    t += 0.5 + 20.0 * uniform01(rng);
  }
  return c;
}

FeatureVector random_feature_row(std::mt19937_64& rng) {
  std::array<double, kFeatureCount> v{};
  for (double& x : v) {
    const double scale = std::pow(10.0, double(rng() % 7) - 3.0);
    x = scale * normal01(rng);
    if (rng() % 8 == 0) x = 0.0;
  }
  return FeatureVector::from_values(v, *label_from_code(int(rng() % kNumClasses)));
}

void criterion_round_trips() {
  std::mt19937_64 rng(0xACC8);
  bool ok = true;
  std::string detail;

  for (int trial = 0; trial < 100 && ok; ++trial) {
    const Capture c = random_capture(rng);
    const std::string text = serialize_capture(c);
    const Capture back = parse_capture(text);
    if (serialize_capture(back) != text || back.label != c.label ||
        back.samples.size() != c.samples.size()) {
      ok = false;
      detail = "capture round trip";
    }
  }

  for (int trial = 0; trial < 100 && ok; ++trial) {
    std::vector<FeatureVector> rows;
    const std::size_t n = 1 + rng() % 40;
    for (std::size_t i = 0; i < n; ++i) rows.push_back(random_feature_row(rng));
    const std::string text = write_feature_table(rows);
    const std::vector<FeatureVector> back = read_feature_table(text);
    if (back != rows || write_feature_table(back) != text) {
      ok = false;
      detail = "feature table round trip";
    }
  }

  for (int trial = 0; trial < 100 && ok; ++trial) {
    const Preset preset = all_presets()[std::size_t(rng() % 3)];
    const DatasetVariant variant = all_variants()[std::size_t(rng() % 5)];
    const int arity = variant_arity(variant);

    std::vector<std::vector<double>> fit_rows;
    for (int r = 0; r < 8; ++r) {
      std::vector<double> row(std::size_t(arity), 0.0);
      for (double& x : row) x = 5.0 * normal01(rng);
      fit_rows.push_back(std::move(row));
    }
    const ScalerKind kind =
        std::array{ScalerKind::Identity, ScalerKind::MinMax,
                   ScalerKind::ZScore}[rng() % 3];
    Model m = init_model(make_spec(preset, arity, rng()), variant,
                         fit_scaler(kind, fit_rows));
    std::vector<double> x(std::size_t(arity), 0.0);
    for (double& v : x) v = normal01(rng);
    backprop_step(m, x, *label_from_code(int(rng() % kNumClasses)));

    const std::string bytes = save_model(m);
    const Model back = load_model_from_string(bytes);
    if (!(back == m) || save_model(back) != bytes) {
      ok = false;
      detail = "model round trip";
    }
  }

  report_line(ok, "capture, feature-table and model formats round-trip on "
                  "100 randomized instances each" +
                      (detail.empty() ? "" : " (failed: " + detail + ")"));
}

}  // namespace

int main() {
  criterion_gradients();
  criterion_dsp();
  criterion_features();
  const std::vector<FeatureVector> rows = desk_rows();
  criterion_headline(rows);
  criterion_ordering(rows);
  criterion_determinism();
  criterion_eval_sanity();
  criterion_round_trips();
  return g_failures;
}
