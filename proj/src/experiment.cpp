#include "adl/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <thread>

#include "adl/error.hpp"
#include "adl/rng.hpp"

namespace adl {

std::string_view norm_arm_name(NormArm a) {
  return a == NormArm::Raw ? "raw" : "normalized";
}

std::optional<NormArm> norm_arm_from_name(std::string_view name) {
  for (NormArm a : all_norm_arms()) {
    if (norm_arm_name(a) == name) return a;
  }
  return std::nullopt;
}

ScalerKind scaler_for(Preset preset, NormArm arm) {
  if (arm == NormArm::Raw) return ScalerKind::Identity;
  return preset == Preset::Deep ? ScalerKind::ZScore : ScalerKind::MinMax;
}

bool uses_l2_rows(Preset preset) { return preset == Preset::Deep; }

std::uint64_t EvalResult::total() const {
  std::uint64_t n = 0;
  for (const auto& row : confusion)
    for (std::uint64_t v : row) n += v;
  return n;
}

EvalResult tally_predictions(std::span<const AdlLabel> truth,
                             std::span<const AdlLabel> predicted) {
  if (truth.size() != predicted.size())
    throw Error(Errc::ArityMismatch, "truth and prediction counts differ");
  EvalResult r;
  std::uint64_t hits = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const int t = label_code(truth[i]);
    const int p = label_code(predicted[i]);
    ++r.confusion[std::size_t(t)][std::size_t(p)];
    if (t == p) ++hits;
  }
  r.accuracy = truth.empty() ? 0.0 : double(hits) / double(truth.size());
  return r;
}

Split stratified_split(std::span<const FeatureVector> rows,
                       double test_fraction, std::uint64_t seed) {
  if (!(test_fraction > 0.0) || !(test_fraction < 1.0))
    throw Error(Errc::InvalidParams, "test_fraction must lie in (0, 1)");

  std::array<std::vector<std::size_t>, kNumClasses> by_class;
  for (std::size_t i = 0; i < rows.size(); ++i)
    by_class[std::size_t(label_code(rows[i].label))].push_back(i);

  Split split;
  for (AdlLabel label : all_labels()) {
    auto& members = by_class[std::size_t(label_code(label))];
    if (members.empty()) continue;
    if (members.size() < 2)
      throw Error(Errc::ClassTooSmall,
                  std::string("class ") + std::string(label_name(label)) +
                      " has fewer than 2 rows");
    std::mt19937_64 rng(mix64(seed, std::uint64_t(label_code(label)) + 1));
    deterministic_shuffle(members, rng);
    auto n_test = std::size_t(std::lround(double(members.size()) * test_fraction));
    n_test = std::clamp<std::size_t>(n_test, 1, members.size() - 1);
    split.test.insert(split.test.end(), members.begin(), members.begin() + long(n_test));
    split.train.insert(split.train.end(), members.begin() + long(n_test), members.end());
  }
  std::sort(split.train.begin(), split.train.end());
  std::sort(split.test.begin(), split.test.end());
  return split;
}

namespace {

void l2_normalize(std::vector<double>& row) {
  double sq = 0.0;
  for (double v : row) sq += v * v;
  if (sq == 0.0) return;
  const double inv = 1.0 / std::sqrt(sq);
  for (double& v : row) v *= inv;
}

std::vector<double> preprocess(const Model& m, const FeatureVector& row) {
  std::vector<double> x = project(row, m.variant);
  if (uses_l2_rows(m.spec.preset)) l2_normalize(x);
  return apply_scaler(m.scaler, x);
}

}  // namespace

TrainResult train(const NetworkSpec& spec, DatasetVariant variant, NormArm arm,
                  std::span<const FeatureVector> rows, TrainingBudget budget) {
  if (budget.max_updates < 1)
    throw Error(Errc::InvalidSpec, "training budget must be >= 1 update");
  if (spec.input_arity != variant_arity(variant))
    throw Error(Errc::InvalidSpec,
                "spec arity " + std::to_string(spec.input_arity) +
                    " does not match variant arity " +
                    std::to_string(variant_arity(variant)));

  std::vector<std::vector<double>> inputs;
  inputs.reserve(rows.size());
  for (const FeatureVector& row : rows) {
    inputs.push_back(project(row, variant));
    if (uses_l2_rows(spec.preset)) l2_normalize(inputs.back());
  }

  ScalerParams scaler = fit_scaler(scaler_for(spec.preset, arm), inputs);
  for (auto& x : inputs) x = apply_scaler(scaler, x);

  TrainResult out;
  out.model = init_model(spec, variant, std::move(scaler));

  std::vector<std::size_t> order(rows.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::mt19937_64 shuffle_rng(mix64(spec.seed, 0x6f72646572));

  const std::uint64_t every = std::max<std::uint64_t>(1, budget.max_updates / 1000);
  std::size_t cursor = order.size();
  for (std::uint64_t step = 1; step <= budget.max_updates; ++step) {
    if (cursor == order.size()) {
      deterministic_shuffle(order, shuffle_rng);
      cursor = 0;
    }
    const std::size_t i = order[cursor++];
    const double l = backprop_step(out.model, inputs[i], rows[i].label);
    if (step % every == 0) out.loss_history.emplace_back(step, l);
  }

  for (const Mat& w : out.model.weights)
    for (double v : w.data)
      if (!std::isfinite(v))
        throw Error(Errc::NonFiniteLoss, "trained weights are non-finite");
  for (const auto& b : out.model.biases)
    for (double v : b)
      if (!std::isfinite(v))
        throw Error(Errc::NonFiniteLoss, "trained biases are non-finite");
  return out;
}

EvalResult evaluate(const Model& m, std::span<const FeatureVector> rows) {
  std::vector<AdlLabel> truth;
  std::vector<AdlLabel> predicted;
  truth.reserve(rows.size());
  predicted.reserve(rows.size());
  for (const FeatureVector& row : rows) {
    truth.push_back(row.label);
    predicted.push_back(predict(m, preprocess(m, row)));
  }
  return tally_predictions(truth, predicted);
}

std::uint64_t split_seed(std::uint64_t master_seed) {
  return mix64(master_seed, 0x73706c6974);
}

std::uint64_t cell_seed(std::uint64_t master_seed, Preset preset,
                        DatasetVariant variant, NormArm arm,
                        std::uint64_t budget) {
  std::uint64_t s = mix64(master_seed, 0x63656c6c);
  s = mix64(s, std::uint64_t(preset));
  s = mix64(s, std::uint64_t(variant));
  s = mix64(s, std::uint64_t(arm));
  s = mix64(s, budget);
  return s;
}

namespace {

NetworkSpec cell_spec(const GridConfig& cfg, Preset preset,
                      DatasetVariant variant, std::uint64_t seed) {
  NetworkSpec spec = make_spec(preset, variant_arity(variant), seed);
  switch (preset) {
    case Preset::MlpBp:
      if (cfg.lr_mlp_bp) spec.learning_rate = *cfg.lr_mlp_bp;
      if (cfg.mlp_hidden) spec.hidden_layers = *cfg.mlp_hidden;
      break;
    case Preset::FfBp:
      if (cfg.lr_ff_bp) spec.learning_rate = *cfg.lr_ff_bp;
      if (cfg.ff_hidden) spec.hidden_layers = *cfg.ff_hidden;
      break;
    case Preset::Deep:
      if (cfg.lr_deep) spec.learning_rate = *cfg.lr_deep;
      if (cfg.deep_hidden) spec.hidden_layers = *cfg.deep_hidden;
      if (cfg.deep_lambda) spec.l2_lambda = *cfg.deep_lambda;
      break;
  }
  return spec;
}

}  // namespace

GridResult run_grid(const GridConfig& cfg, std::span<const FeatureVector> rows) {
  GridResult out;
  out.config = cfg;

  const Split split =
      stratified_split(rows, cfg.test_fraction, split_seed(cfg.master_seed));
  std::vector<FeatureVector> train_rows;
  std::vector<FeatureVector> test_rows;
  train_rows.reserve(split.train.size());
  test_rows.reserve(split.test.size());
  for (std::size_t i : split.train) train_rows.push_back(rows[i]);
  for (std::size_t i : split.test) test_rows.push_back(rows[i]);

  for (Preset preset : cfg.presets)
    for (DatasetVariant variant : cfg.variants)
      for (NormArm arm : cfg.arms)
        for (std::uint64_t budget : cfg.budgets) {
          GridCell cell;
          cell.preset = preset;
          cell.variant = variant;
          cell.arm = arm;
          cell.budget = budget;
          cell.seed = cell_seed(cfg.master_seed, preset, variant, arm, budget);
          out.cells.push_back(cell);
        }

  auto run_cell = [&](GridCell& cell) {
    try {
      const NetworkSpec spec =
          cell_spec(cfg, cell.preset, cell.variant, cell.seed);
      TrainResult tr = train(spec, cell.variant, cell.arm, train_rows,
                             TrainingBudget{cell.budget});
      cell.result = evaluate(tr.model, test_rows);
    } catch (const Error& e) {
      cell.error = e.what();
    }
  };

  const int jobs = std::max(1, cfg.jobs);
  if (jobs == 1 || out.cells.size() < 2) {
    for (GridCell& cell : out.cells) run_cell(cell);
  } else {
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= out.cells.size()) return;
        run_cell(out.cells[i]);
      }
    };
    std::vector<std::thread> pool;
    const std::size_t n =
        std::min<std::size_t>(std::size_t(jobs), out.cells.size());
    pool.reserve(n);
    for (std::size_t i = 0; i < n; ++i) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  return out;
}

namespace {

std::string format_accuracy(double accuracy) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", accuracy);
  return buf;
}

std::string cell_key(const GridCell& c) {
  std::string s{preset_name(c.preset)};
  s += ',';
  s += variant_name(c.variant);
  s += ',';
  s += norm_arm_name(c.arm);
  s += ',';
  s += std::to_string(c.budget);
  return s;
}

}  // namespace

ReportFiles report(const GridResult& g) {
  ReportFiles files;

  std::size_t failed = 0;
  for (const GridCell& c : g.cells)
    if (!c.result) ++failed;

  std::string& grid = files.grid_csv;
  if (failed > 0) {
    grid += "# IncompleteGrid: " + std::to_string(failed) + " of " +
            std::to_string(g.cells.size()) + " cells failed\n";
    for (const GridCell& c : g.cells)
      if (!c.result) grid += "# failed: " + cell_key(c) + ": " + c.error + "\n";
  }
  grid += "preset,variant,normalization,budget,accuracy,seed\n";
  for (const GridCell& c : g.cells) {
    if (!c.result) continue;
    grid += cell_key(c);
    grid += ',';
    grid += format_accuracy(c.result->accuracy);
    grid += ',';
    grid += std::to_string(c.seed);
    grid += '\n';
  }

  std::string& best = files.best_csv;
  best += "normalization,preset,variant,budget,accuracy\n";
  for (NormArm arm : g.config.arms) {
    for (Preset preset : g.config.presets) {
      const GridCell* winner = nullptr;
      for (const GridCell& c : g.cells) {
        if (c.arm != arm || c.preset != preset || !c.result) continue;
        if (!winner) {
          winner = &c;
          continue;
        }
        const double a = c.result->accuracy;
        const double wa = winner->result->accuracy;
        if (a > wa ||
            (a == wa && (c.budget < winner->budget ||
                         (c.budget == winner->budget &&
                          int(c.variant) < int(winner->variant)))))
          winner = &c;
      }
      if (!winner) {
        best += std::string("# no successful cells for ") +
                std::string(norm_arm_name(arm)) + "," +
                std::string(preset_name(preset)) + "\n";
        continue;
      }
      best += std::string(norm_arm_name(arm)) + "," +
              std::string(preset_name(preset)) + "," +
              std::string(variant_name(winner->variant)) + "," +
              std::to_string(winner->budget) + "," +
              format_accuracy(winner->result->accuracy) + "\n";
    }
  }

  for (std::size_t pi = 0; pi < g.config.presets.size(); ++pi) {
    const Preset preset = g.config.presets[pi];
    for (NormArm arm : g.config.arms) {
      std::string name = "fig" + std::to_string(pi + 1) + "_" +
                         std::string(norm_arm_name(arm)) + ".csv";
      std::string body = "# preset: " + std::string(preset_name(preset)) + "\n";
      body += "variant";
      for (std::uint64_t b : g.config.budgets)
        body += ",iters_" + std::to_string(b);
      body += '\n';
      for (DatasetVariant variant : g.config.variants) {
        body += variant_name(variant);
        for (std::uint64_t budget : g.config.budgets) {
          body += ',';
          for (const GridCell& c : g.cells) {
            if (c.preset == preset && c.variant == variant && c.arm == arm &&
                c.budget == budget && c.result) {
              body += format_accuracy(c.result->accuracy);
              break;
            }
          }
        }
        body += '\n';
      }
      files.figures.emplace_back(std::move(name), std::move(body));
    }
  }
  return files;
}

void write_reports(const GridResult& g, const std::string& dir) {
  const ReportFiles files = report(g);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(Errc::IoError, "cannot create " + dir + ": " + ec.message());

  auto write = [&](const std::string& name, const std::string& content) {
    const std::string path = dir + "/" + name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(Errc::IoError, "cannot open " + path + " for writing");
    out.write(content.data(), std::streamsize(content.size()));
    if (!out) throw Error(Errc::IoError, "failed to write " + path);
  };
  write("grid.csv", files.grid_csv);
  write("best.csv", files.best_csv);
  for (const auto& [name, content] : files.figures) write(name, content);
}

}  // namespace adl
