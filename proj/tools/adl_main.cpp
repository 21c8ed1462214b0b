#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "adl/config.hpp"
#include "adl/dsp.hpp"
#include "adl/error.hpp"
#include "adl/experiment.hpp"
#include "adl/features.hpp"
#include "adl/ingest.hpp"
#include "adl/nn.hpp"
#include "adl/rng.hpp"
#include "adl/synth.hpp"
#include "adl/textio.hpp"
#include "adl/types.hpp"

namespace {

using namespace adl;

namespace fs = std::filesystem;

bool flag_given(const CLI::Option* opt) { return opt && opt->count() > 0; }

Preset parse_preset(const std::string& name) {
  if (auto p = preset_from_name(name)) return *p;
  throw Error(Errc::InvalidSpec, "unknown preset: " + name);
}

DatasetVariant parse_variant(const std::string& name) {
  if (auto v = variant_from_name(name)) return *v;
  throw Error(Errc::InvalidSpec, "unknown dataset variant: " + name);
}

NormArm parse_arm(const std::string& name) {
  if (auto a = norm_arm_from_name(name)) return *a;
  throw Error(Errc::InvalidSpec, "unknown normalization arm: " + name);
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t next = text.find(',', pos);
    const std::string item{trim(text.substr(
        pos, next == std::string::npos ? std::string::npos : next - pos))};
    if (!item.empty()) out.push_back(item);
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  return out;
}

std::vector<std::uint64_t> parse_uint_list(const std::string& text,
                                           const char* what) {
  std::vector<std::uint64_t> out;
  for (const std::string& item : split_list(text)) {
    const auto v = parse_uint(item);
    if (!v)
      throw Error(Errc::BadConfig,
                  std::string(what) + " entry is not a non-negative integer: " +
                      item);
    out.push_back(*v);
  }
  if (out.empty())
    throw Error(Errc::BadConfig, std::string(what) + " list is empty");
  return out;
}

std::vector<int> parse_int_list(const std::string& text, const char* what) {
  std::vector<int> out;
  for (std::uint64_t v : parse_uint_list(text, what)) out.push_back(int(v));
  return out;
}

void fill_grid_overrides(GridConfig& grid, const RunConfig& cfg) {
  if (auto v = cfg.get_double("lr_mlp_bp")) grid.lr_mlp_bp = *v;
  if (auto v = cfg.get_double("lr_ff_bp")) grid.lr_ff_bp = *v;
  if (auto v = cfg.get_double("lr_deep")) grid.lr_deep = *v;
  if (auto v = cfg.get_double("l2_lambda")) grid.deep_lambda = *v;
  if (auto v = cfg.get("mlp_hidden"))
    grid.mlp_hidden = parse_int_list(*v, "mlp_hidden");
  if (auto v = cfg.get("ff_hidden"))
    grid.ff_hidden = parse_int_list(*v, "ff_hidden");
  if (auto v = cfg.get("deep_hidden"))
    grid.deep_hidden = parse_int_list(*v, "deep_hidden");
}

std::vector<FeatureVector> load_features(const std::string& path) {
  if (path.empty())
    throw Error(Errc::BadConfig, "no feature table given (--features)");
  return read_feature_table_file(path);
}

struct SynthArgs {
  std::string config_path;
  std::string out_dir;
  int per_class = 200;
  std::uint64_t seed = 1;
  CLI::Option* out_dir_opt = nullptr;
  CLI::Option* per_class_opt = nullptr;
  CLI::Option* seed_opt = nullptr;
};

void run_synth(SynthArgs& a) {
  RunConfig cfg;
  if (!a.config_path.empty()) cfg = load_run_config(a.config_path);
  if (!flag_given(a.out_dir_opt))
    if (auto v = cfg.get("out_dir")) a.out_dir = *v;
  if (!flag_given(a.per_class_opt))
    if (auto v = cfg.get_int("per_class")) a.per_class = int(*v);
  if (!flag_given(a.seed_opt))
    if (auto v = cfg.get_uint("seed")) a.seed = *v;
  if (a.out_dir.empty())
    throw Error(Errc::BadConfig, "no output directory given (--out-dir)");

  const auto corpus =
      generate_corpus(a.per_class, SynthParams::defaults(), a.seed);
  std::error_code ec;
  fs::create_directories(a.out_dir, ec);
  if (ec)
    throw Error(Errc::IoError, "cannot create " + a.out_dir + ": " + ec.message());

  std::array<int, kNumClasses> counter{};
  for (const Capture& c : corpus) {
    const int k = counter[std::size_t(label_code(c.label))]++;
    char num[8];
    std::snprintf(num, sizeof(num), "%04d", k);
    const std::string name =
        std::string(label_name(c.label)) + "_" + num + ".txt";
    write_capture_file(a.out_dir + "/" + name, c);
  }
  std::cout << "wrote " << corpus.size() << " captures to " << a.out_dir
            << "\n";
}

struct FeaturizerArgs {
  std::string config_path;
  std::string corpus_dir;
  std::string out_csv;
  double alpha = kDefaultAlpha;
  double separation_ms = kDefaultPeakSeparationMs;
  double floor = kDefaultPeakFloor;
  CLI::Option* corpus_opt = nullptr;
  CLI::Option* out_opt = nullptr;
  CLI::Option* alpha_opt = nullptr;
  CLI::Option* sep_opt = nullptr;
  CLI::Option* floor_opt = nullptr;
};

void run_featurize(FeaturizerArgs& a) {
  RunConfig cfg;
  if (!a.config_path.empty()) cfg = load_run_config(a.config_path);
  if (!flag_given(a.corpus_opt))
    if (auto v = cfg.get("corpus_dir")) a.corpus_dir = *v;
  if (!flag_given(a.out_opt))
    if (auto v = cfg.get("features")) a.out_csv = *v;
  if (!flag_given(a.alpha_opt))
    if (auto v = cfg.get_double("alpha")) a.alpha = *v;
  if (!flag_given(a.sep_opt))
    if (auto v = cfg.get_double("peak_separation_ms")) a.separation_ms = *v;
  if (!flag_given(a.floor_opt))
    if (auto v = cfg.get_double("peak_floor")) a.floor = *v;
  if (a.corpus_dir.empty())
    throw Error(Errc::BadConfig, "no corpus directory given (--corpus-dir)");
  if (a.out_csv.empty())
    throw Error(Errc::BadConfig, "no output file given (--out)");

  std::vector<std::string> paths;
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(a.corpus_dir, ec)) {
    if (entry.is_regular_file()) paths.push_back(entry.path().string());
  }
  if (ec)
    throw Error(Errc::IoError, "cannot list " + a.corpus_dir + ": " + ec.message());
  if (paths.empty())
    throw Error(Errc::IoError, "no capture files in " + a.corpus_dir);
  std::sort(paths.begin(), paths.end());

  std::vector<FeatureVector> rows;
  rows.reserve(paths.size());
  for (const std::string& path : paths) {
    try {
      const Capture c = read_capture_file(path);
      validate_capture(c);
      const ScalarSeries cleaned = lowpass(magnitude(c), a.alpha);
      const PeakSet peaks = detect_peaks(cleaned, a.separation_ms, a.floor);
      rows.push_back(extract_features(cleaned, peaks, c.label));
    } catch (const Error& e) {
      throw Error(e.kind(), path + ": " + e.what(), e.line());
    }
  }
  write_feature_table_file(a.out_csv, rows);
  std::cout << "wrote " << rows.size() << " feature rows to " << a.out_csv
            << "\n";
}

struct TrainArgs {
  std::string config_path;
  std::string features;
  std::string variant = "d1";
  std::string preset = "deep";
  std::string norm = "normalized";
  std::uint64_t budget = 40000;
  std::uint64_t seed = 1;
  std::string out_model;
  std::string loss_out;
  double test_fraction = 0.0;
  std::uint64_t split_seed_value = 1;
  double lr = -1.0;
  double l2 = -1.0;
  std::string hidden;
  CLI::Option* features_opt = nullptr;
  CLI::Option* variant_opt = nullptr;
  CLI::Option* preset_opt = nullptr;
  CLI::Option* norm_opt = nullptr;
  CLI::Option* budget_opt = nullptr;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* out_opt = nullptr;
  CLI::Option* fraction_opt = nullptr;
};

void run_train(TrainArgs& a) {
  RunConfig cfg;
  if (!a.config_path.empty()) cfg = load_run_config(a.config_path);
  if (!flag_given(a.features_opt))
    if (auto v = cfg.get("features")) a.features = *v;
  if (!flag_given(a.variant_opt))
    if (auto v = cfg.get("variant")) a.variant = *v;
  if (!flag_given(a.preset_opt))
    if (auto v = cfg.get("preset")) a.preset = *v;
  if (!flag_given(a.norm_opt))
    if (auto v = cfg.get("norm")) a.norm = *v;
  if (!flag_given(a.budget_opt))
    if (auto v = cfg.get_uint("budget")) a.budget = *v;
  if (!flag_given(a.seed_opt))
    if (auto v = cfg.get_uint("seed")) a.seed = *v;
  if (!flag_given(a.out_opt))
    if (auto v = cfg.get("model")) a.out_model = *v;
  if (!flag_given(a.fraction_opt))
    if (auto v = cfg.get_double("test_fraction")) a.test_fraction = *v;
  if (a.out_model.empty())
    throw Error(Errc::BadConfig, "no model output path given (--out)");

  const auto rows = load_features(a.features);
  const Preset preset = parse_preset(a.preset);
  const DatasetVariant variant = parse_variant(a.variant);
  const NormArm arm = parse_arm(a.norm);

  NetworkSpec spec = make_spec(preset, variant_arity(variant), a.seed);
  if (a.lr >= 0.0) spec.learning_rate = a.lr;
  if (a.l2 >= 0.0) spec.l2_lambda = a.l2;
  if (!a.hidden.empty()) spec.hidden_layers = parse_int_list(a.hidden, "hidden");

  std::span<const FeatureVector> train_rows{rows};
  std::vector<FeatureVector> subset;
  if (a.test_fraction > 0.0) {
    const Split split =
        stratified_split(rows, a.test_fraction, a.split_seed_value);
    subset.reserve(split.train.size());
    for (std::size_t i : split.train) subset.push_back(rows[i]);
    train_rows = subset;
  }

  const TrainResult result =
      train(spec, variant, arm, train_rows, TrainingBudget{a.budget});
  save_model_file(a.out_model, result.model);

  if (!a.loss_out.empty()) {
    std::ofstream out(a.loss_out, std::ios::binary);
    if (!out)
      throw Error(Errc::IoError, "cannot open " + a.loss_out + " for writing");
    out << "step,loss\n";
    for (const auto& [step, loss_value] : result.loss_history)
      out << step << ',' << format_double(loss_value) << '\n';
  }

  const double final_loss = result.loss_history.empty()
                                ? 0.0
                                : result.loss_history.back().second;
  std::cout << "trained " << preset_name(preset) << "/" << variant_name(variant)
            << "/" << norm_arm_name(arm) << " on " << train_rows.size()
            << " rows for " << a.budget << " updates, last sampled loss "
            << format_double(final_loss) << ", model written to " << a.out_model
            << "\n";
}

struct EvalArgs {
  std::string config_path;
  std::string model;
  std::string features;
  double test_fraction = 0.3;
  std::uint64_t seed = 1;
  std::string out_csv;
  CLI::Option* model_opt = nullptr;
  CLI::Option* features_opt = nullptr;
  CLI::Option* fraction_opt = nullptr;
  CLI::Option* seed_opt = nullptr;
};

void run_eval(EvalArgs& a) {
  RunConfig cfg;
  if (!a.config_path.empty()) cfg = load_run_config(a.config_path);
  if (!flag_given(a.model_opt))
    if (auto v = cfg.get("model")) a.model = *v;
  if (!flag_given(a.features_opt))
    if (auto v = cfg.get("features")) a.features = *v;
  if (!flag_given(a.fraction_opt))
    if (auto v = cfg.get_double("test_fraction")) a.test_fraction = *v;
  if (!flag_given(a.seed_opt))
    if (auto v = cfg.get_uint("seed")) a.seed = *v;
  if (a.model.empty())
    throw Error(Errc::BadConfig, "no model path given (--model)");

  const Model m = load_model_file(a.model);
  const auto rows = load_features(a.features);

  std::span<const FeatureVector> eval_rows{rows};
  std::vector<FeatureVector> subset;
  if (a.test_fraction > 0.0) {
    const Split split = stratified_split(rows, a.test_fraction, a.seed);
    subset.reserve(split.test.size());
    for (std::size_t i : split.test) subset.push_back(rows[i]);
    eval_rows = subset;
  }

  const EvalResult r = evaluate(m, eval_rows);
  char acc[32];
  std::snprintf(acc, sizeof(acc), "%.6f", r.accuracy);
  std::cout << "accuracy " << acc << " on " << r.total() << " rows\n";
  std::cout << "confusion (rows = truth):\n";
  for (AdlLabel truth : all_labels()) {
    std::cout << "  " << label_name(truth);
    for (std::size_t i = label_name(truth).size(); i < 18; ++i)
      std::cout << ' ';
    for (AdlLabel pred : all_labels())
      std::cout << ' '
                << r.confusion[std::size_t(label_code(truth))]
                              [std::size_t(label_code(pred))];
    std::cout << "\n";
  }

  if (!a.out_csv.empty()) {
    std::ofstream out(a.out_csv, std::ios::binary);
    if (!out)
      throw Error(Errc::IoError, "cannot open " + a.out_csv + " for writing");
    out << "accuracy," << acc << "\n";
    out << "truth";
    for (AdlLabel pred : all_labels()) out << ',' << label_name(pred);
    out << '\n';
    for (AdlLabel truth : all_labels()) {
      out << label_name(truth);
      for (AdlLabel pred : all_labels())
        out << ','
            << r.confusion[std::size_t(label_code(truth))]
                          [std::size_t(label_code(pred))];
      out << '\n';
    }
  }
}

struct GridArgs {
  std::string config_path;
  std::string features;
  std::string out_dir;
  std::uint64_t seed = 1;
  int jobs = 1;
  double test_fraction = 0.3;
  CLI::Option* features_opt = nullptr;
  CLI::Option* out_dir_opt = nullptr;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* jobs_opt = nullptr;
  CLI::Option* fraction_opt = nullptr;
};

void run_grid_cmd(GridArgs& a) {
  RunConfig cfg;
  if (!a.config_path.empty()) cfg = load_run_config(a.config_path);
  if (!flag_given(a.features_opt))
    if (auto v = cfg.get("features")) a.features = *v;
  if (!flag_given(a.out_dir_opt))
    if (auto v = cfg.get("out_dir")) a.out_dir = *v;
  if (!flag_given(a.seed_opt))
    if (auto v = cfg.get_uint("seed")) a.seed = *v;
  if (!flag_given(a.jobs_opt))
    if (auto v = cfg.get_int("jobs")) a.jobs = int(*v);
  if (!flag_given(a.fraction_opt))
    if (auto v = cfg.get_double("test_fraction")) a.test_fraction = *v;
  if (a.out_dir.empty())
    throw Error(Errc::BadConfig, "no output directory given (--out-dir)");

  GridConfig grid;
  grid.master_seed = a.seed;
  grid.jobs = a.jobs;
  grid.test_fraction = a.test_fraction;
  if (auto v = cfg.get("budgets")) grid.budgets = parse_uint_list(*v, "budgets");
  if (auto v = cfg.get("presets")) {
    grid.presets.clear();
    for (const std::string& name : split_list(*v))
      grid.presets.push_back(parse_preset(name));
  }
  if (auto v = cfg.get("variants")) {
    grid.variants.clear();
    for (const std::string& name : split_list(*v))
      grid.variants.push_back(parse_variant(name));
  }
  if (auto v = cfg.get("arms")) {
    grid.arms.clear();
    for (const std::string& name : split_list(*v))
      grid.arms.push_back(parse_arm(name));
  }
  fill_grid_overrides(grid, cfg);

  const auto rows = load_features(a.features);
  const GridResult result = run_grid(grid, rows);
  write_reports(result, a.out_dir);

  std::size_t failed = 0;
  for (const GridCell& c : result.cells)
    if (!c.result) ++failed;
  std::cout << result.cells.size() << " cells (" << failed
            << " failed), reports written to " << a.out_dir << "\n";
}

struct GradCheckArgs {
  std::string config_path;
  std::string preset = "deep";
  int trials = 100;
  std::uint64_t seed = 1;
  double h = 1e-5;
  double tolerance = 1e-4;
  CLI::Option* preset_opt = nullptr;
  CLI::Option* trials_opt = nullptr;
  CLI::Option* seed_opt = nullptr;
};

int run_gradcheck(GradCheckArgs& a) {
  RunConfig cfg;
  if (!a.config_path.empty()) cfg = load_run_config(a.config_path);
  if (!flag_given(a.preset_opt))
    if (auto v = cfg.get("preset")) a.preset = *v;
  if (!flag_given(a.trials_opt))
    if (auto v = cfg.get_int("trials")) a.trials = int(*v);
  if (!flag_given(a.seed_opt))
    if (auto v = cfg.get_uint("seed")) a.seed = *v;
  if (a.trials < 1)
    throw Error(Errc::InvalidParams, "trials must be >= 1");

  const Preset preset = parse_preset(a.preset);
  double worst = 0.0;
  std::size_t params_checked = 0;
  for (int trial = 0; trial < a.trials; ++trial) {
    const DatasetVariant variant = all_variants()[std::size_t(trial) % 5];
    const int arity = variant_arity(variant);
    const NetworkSpec spec =
        make_spec(preset, arity, mix64(a.seed, std::uint64_t(trial) * 3));
    ScalerParams identity;
    identity.kind = ScalerKind::Identity;
    identity.a.assign(std::size_t(arity), 0.0);
    identity.b.assign(std::size_t(arity), 1.0);
    const Model m = init_model(spec, variant, identity);

    std::mt19937_64 rng(mix64(a.seed, std::uint64_t(trial) * 3 + 1));
    std::vector<double> x(std::size_t(arity), 0.0);
    for (double& v : x) v = normal01(rng);
    const AdlLabel y = *label_from_code(int(rng() % kNumClasses));

    const GradCheckResult r = grad_check(m, x, y, a.h);
    worst = std::max(worst, r.worst_rel_error);
    params_checked += r.parameters_checked;
  }

  std::cout << "worst relative error " << format_double(worst) << " over "
            << a.trials << " trials (" << params_checked << " parameters)\n";
  return worst < a.tolerance ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"activity-recognition pipeline: synthesize captures, extract "
               "features, train and evaluate networks"};
  app.require_subcommand(1);
  int exit_code = 0;

  SynthArgs synth_args;
  CLI::App* synth = app.add_subcommand(
      "synth", "generate a labeled synthetic capture corpus");
  synth->add_option("--config", synth_args.config_path, "key=value config file");
  synth_args.out_dir_opt =
      synth->add_option("--out-dir", synth_args.out_dir, "output directory");
  synth_args.per_class_opt = synth->add_option(
      "--per-class", synth_args.per_class, "captures per activity class");
  synth_args.seed_opt =
      synth->add_option("--seed", synth_args.seed, "master seed");
  synth->callback([&] { run_synth(synth_args); });

  FeaturizerArgs feat_args;
  CLI::App* featurize = app.add_subcommand(
      "featurize", "extract feature rows from a capture directory");
  featurize->add_option("--config", feat_args.config_path, "key=value config file");
  feat_args.corpus_opt = featurize->add_option(
      "--corpus-dir", feat_args.corpus_dir, "directory of capture files");
  feat_args.out_opt =
      featurize->add_option("--out", feat_args.out_csv, "output feature CSV");
  feat_args.alpha_opt = featurize->add_option(
      "--alpha", feat_args.alpha, "low-pass smoothing factor in (0, 1]");
  feat_args.sep_opt = featurize->add_option(
      "--peak-separation-ms", feat_args.separation_ms,
      "minimum distance between kept peaks");
  feat_args.floor_opt = featurize->add_option(
      "--peak-floor", feat_args.floor,
      "peak threshold in standard deviations above the mean");
  featurize->callback([&] { run_featurize(feat_args); });

  TrainArgs train_args;
  CLI::App* train_cmd =
      app.add_subcommand("train", "train one network on a feature table");
  train_cmd->add_option("--config", train_args.config_path, "key=value config file");
  train_args.features_opt = train_cmd->add_option(
      "--features", train_args.features, "feature CSV path");
  train_args.variant_opt = train_cmd->add_option(
      "--variant", train_args.variant, "dataset variant d1..d5");
  train_args.preset_opt = train_cmd->add_option(
      "--preset", train_args.preset, "network preset mlp_bp|ff_bp|deep");
  train_args.norm_opt = train_cmd->add_option(
      "--norm", train_args.norm, "normalization arm raw|normalized");
  train_args.budget_opt = train_cmd->add_option(
      "--budget", train_args.budget, "number of SGD updates");
  train_args.seed_opt =
      train_cmd->add_option("--seed", train_args.seed, "network seed");
  train_args.out_opt =
      train_cmd->add_option("--out", train_args.out_model, "model output path");
  train_cmd->add_option("--loss-out", train_args.loss_out,
                        "optional CSV of sampled training losses");
  train_args.fraction_opt = train_cmd->add_option(
      "--test-fraction", train_args.test_fraction,
      "hold out this fraction (train side only; 0 trains on all rows)");
  train_cmd->add_option("--split-seed", train_args.split_seed_value,
                        "seed for the hold-out split");
  train_cmd->add_option("--lr", train_args.lr, "learning-rate override");
  train_cmd->add_option("--l2", train_args.l2, "L2 penalty override (deep only)");
  train_cmd->add_option("--hidden", train_args.hidden,
                        "hidden layer widths override, e.g. 32,16,8");
  train_cmd->callback([&] { run_train(train_args); });

  EvalArgs eval_args;
  CLI::App* eval_cmd = app.add_subcommand(
      "eval", "evaluate a saved model on the held-out split of a feature table");
  eval_cmd->add_option("--config", eval_args.config_path, "key=value config file");
  eval_args.model_opt =
      eval_cmd->add_option("--model", eval_args.model, "model file");
  eval_args.features_opt =
      eval_cmd->add_option("--features", eval_args.features, "feature CSV path");
  eval_args.fraction_opt = eval_cmd->add_option(
      "--test-fraction", eval_args.test_fraction,
      "evaluate on this held-out fraction (0 evaluates on all rows)");
  eval_args.seed_opt = eval_cmd->add_option("--seed", eval_args.seed,
                                            "seed for the hold-out split");
  eval_cmd->add_option("--out", eval_args.out_csv,
                       "optional CSV with accuracy and confusion matrix");
  eval_cmd->callback([&] { run_eval(eval_args); });

  GridArgs grid_args;
  CLI::App* grid_cmd = app.add_subcommand(
      "grid", "train and evaluate the full preset/variant/arm/budget grid");
  grid_cmd->add_option("--config", grid_args.config_path, "key=value config file");
  grid_args.features_opt = grid_cmd->add_option(
      "--features", grid_args.features, "feature CSV path");
  grid_args.out_dir_opt = grid_cmd->add_option(
      "--out-dir", grid_args.out_dir, "directory for grid.csv/best.csv/figures");
  grid_args.seed_opt =
      grid_cmd->add_option("--seed", grid_args.seed, "master seed");
  grid_args.jobs_opt =
      grid_cmd->add_option("--jobs", grid_args.jobs, "parallel cell workers");
  grid_args.fraction_opt = grid_cmd->add_option(
      "--test-fraction", grid_args.test_fraction, "held-out fraction");
  grid_cmd->callback([&] { run_grid_cmd(grid_args); });

  GradCheckArgs gc_args;
  CLI::App* gradcheck = app.add_subcommand(
      "gradcheck", "compare analytic gradients against finite differences");
  gradcheck->add_option("--config", gc_args.config_path, "key=value config file");
  gc_args.preset_opt = gradcheck->add_option(
      "--preset", gc_args.preset, "network preset mlp_bp|ff_bp|deep");
  gc_args.trials_opt =
      gradcheck->add_option("--trials", gc_args.trials, "random trials to run");
  gc_args.seed_opt = gradcheck->add_option("--seed", gc_args.seed, "seed");
  gradcheck->add_option("--step", gc_args.h, "finite-difference step");
  gradcheck->add_option("--tolerance", gc_args.tolerance,
                        "worst relative error allowed before exit 2");
  gradcheck->callback([&] { exit_code = run_gradcheck(gc_args); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.kind() == Errc::NonFiniteLoss ? 2 : 1;
  }
  return exit_code;
}
