/*
 * Copyright 2026 The swarmnet Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "swarmnet/commands.hpp"

#include <fmt/format.h>

#include <filesystem>
#include <fstream>
#include <ostream>
#include <random>

#include "swarmnet/errors.hpp"
#include "swarmnet/feature_select.hpp"
#include "swarmnet/model_io.hpp"

namespace swarmnet {
namespace {

void WriteText(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw DataError("failed writing '" + path + "'");
}

nlohmann::json ReadJson(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw DataError("malformed JSON in '" + path + "': " + e.what());
  }
}

std::string ClassDistribution(const Dataset& dataset) {
  const auto counts = dataset.class_counts();
  std::string out;
  for (Grade g : kAllGrades) {
    out += fmt::format("{}{}={}", out.empty() ? "" : " ", grade_letter(g),
                       counts[class_index(g)]);
  }
  return out;
}

void WriteTrace(const std::string& path, const std::vector<double>& trace,
                int first_epoch) {
  std::string text = "epoch,error\n";
  for (std::size_t i = 0; i < trace.size(); ++i) {
    text += fmt::format("{},{:.17g}\n", first_epoch + static_cast<int>(i), trace[i]);
  }
  WriteText(path, text);
}

std::vector<std::string> NamesOf(const Dataset& dataset, const std::vector<int>& indices) {
  std::vector<std::string> names;
  for (int i : indices) names.push_back(dataset.feature_names[i]);
  return names;
}

// Normalized, imputed copy used only for correlation analysis.
Dataset AnalysisCopy(const Dataset& raw) {
  return impute_mean(normalize_minmax(raw).dataset);
}

struct Selection {
  std::vector<std::string> names;
  nlohmann::ordered_json report;
};

Selection SelectColumns(const Dataset& raw, bool use_cfs, const std::string& preset) {
  Selection sel;
  nlohmann::ordered_json& report = sel.report;
  if (use_cfs) {
    const Dataset analysis = AnalysisCopy(raw);
    const FeatureSubset subset = select_features(analysis);
    sel.names = NamesOf(raw, subset.indices);
    report["method"] = "cfs";
    report["indices"] = subset.indices;
    report["names"] = sel.names;
    report["merit"] = subset.merit;
    nlohmann::ordered_json trace = nlohmann::ordered_json::array();
    for (const auto& step : subset.trace) {
      nlohmann::ordered_json s;
      s["expanded"] = NamesOf(raw, step.expanded);
      s["best"] = NamesOf(raw, step.best);
      s["best_merit"] = step.best_merit;
      trace.push_back(std::move(s));
    }
    report["search_trace"] = std::move(trace);
    return sel;
  }
  if (preset != "table3") throw ConfigError("unknown feature preset '" + preset + "'");
  sel.names = reference_preset();
  std::vector<int> indices;
  for (const auto& name : sel.names) {
    const int index = raw.column_index(name);
    if (index < 0) {
      throw DataError("preset table3: dataset has no column '" + name + "'");
    }
    indices.push_back(index);
  }
  report["method"] = "preset";
  report["preset"] = preset;
  report["indices"] = indices;
  report["names"] = sel.names;
  if (raw.size() >= 2) {
    const Dataset analysis = AnalysisCopy(raw);
    report["merit"] = merit(indices, CorrelationTable::Build(analysis.features,
                                                             analysis.class_codes()));
  }
  return sel;
}

Topology TopologyFor(const Dataset& data, const std::vector<int>& hidden) {
  return Topology(static_cast<int>(data.feature_count()), hidden, 1);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t master, std::uint32_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(master),
                    static_cast<std::uint32_t>(master >> 32), stream, 0x5eedu};
  std::uint32_t words[2];
  seq.generate(words, words + 2);
  return (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
}

void run_generate(const GenerateOptions& options, std::ostream& log) {
  const Dataset data = synthesize(options.generator);
  save_csv(data, options.out_path);
  log << fmt::format("wrote {} samples x {} features to {}\n", data.size(),
                     data.feature_count(), options.out_path);
  log << "class distribution: " << ClassDistribution(data) << '\n';
}

void run_select(const SelectOptions& options, std::ostream& log) {
  const Dataset raw = load_csv(options.dataset_path);
  const Selection sel = SelectColumns(raw, options.use_cfs, options.preset);
  const Dataset reduced = raw.select_columns(sel.names);
  if (!options.out_csv.empty()) save_csv(reduced, options.out_csv);
  if (!options.report_path.empty()) WriteText(options.report_path, sel.report.dump(2) + "\n");
  std::string joined;
  for (const auto& n : sel.names) joined += (joined.empty() ? "" : ",") + n;
  log << fmt::format("selected {} of {} features: {}\n", sel.names.size(),
                     raw.feature_count(), joined);
}

Preprocessed preprocess(const Dataset& raw, const PipelineOptions& options,
                        std::uint64_t seed) {
  NormalizeResult normalized = normalize_minmax(raw);
  Preprocessed out;
  out.stats = std::move(normalized.stats);
  out.stats.mean = column_means(normalized.dataset);
  const Dataset complete = impute_with(normalized.dataset, out.stats.mean);

  int total = options.balance_total;
  if (total == 0) {
    const auto counts = complete.class_counts();
    total = kClassCount * *std::max_element(counts.begin(), counts.end());
  }
  const Dataset balanced =
      balance_oversample(complete, total, derive_seed(seed, seed_stream::kBalance));
  SplitResult parts =
      split(balanced, options.train_fraction, derive_seed(seed, seed_stream::kSplit));
  out.train = std::move(parts.train);
  out.test = std::move(parts.test);
  out.warnings = std::move(parts.warnings);
  return out;
}

TrainOutcome train_network(const Dataset& raw, const TrainOptions& options) {
  Preprocessed data = preprocess(raw, options.pipeline, options.seed);
  const Topology topology = TopologyFor(data.train, options.hidden);
  const TrainingSet set = data.train.to_training_set();

  if (options.trainer == Trainer::kPso) {
    PsoConfig pso = options.pso;
    pso.seed = derive_seed(options.seed, seed_stream::kSwarm);
    NetworkPsoResult result = pso_train(set, topology, pso);
    Network<double> network = decode(result.best);
    std::vector<double> trace = std::move(result.trace);
    if (options.refine_epochs > 0) {
      BpConfig bp = options.bp;
      bp.max_epochs = options.refine_epochs;
      bp.seed = derive_seed(options.seed, seed_stream::kShuffle);
      auto refined = train_bp(std::move(network), set, bp);
      network = std::move(refined.first);
      trace.insert(trace.end(), refined.second.mse.begin(), refined.second.mse.end());
    }
    return TrainOutcome{std::move(network), std::move(trace), std::move(data)};
  }

  std::mt19937_64 init_rng(derive_seed(options.seed, seed_stream::kInit));
  BpConfig bp = options.bp;
  bp.seed = derive_seed(options.seed, seed_stream::kShuffle);
  auto [network, trace] = train_bp(random_network(topology, init_rng), set, bp);
  return TrainOutcome{std::move(network), std::move(trace.mse), std::move(data)};
}

void run_train(const TrainOptions& options, std::ostream& log) {
  const Dataset raw = load_csv(options.dataset_path);
  const TrainOutcome outcome = train_network(raw, options);
  for (const auto& w : outcome.data.warnings) log << "warning: " << w << '\n';
  if (!options.model_out.empty()) save_model(options.model_out, outcome.network);
  if (!options.trace_out.empty()) {
    WriteTrace(options.trace_out, outcome.trace, options.trainer == Trainer::kPso ? 0 : 1);
  }
  if (!options.stats_out.empty()) save_stats(outcome.data.stats, options.stats_out);
  if (!options.train_out.empty()) save_csv(outcome.data.train, options.train_out);
  if (!options.test_out.empty()) save_csv(outcome.data.test, options.test_out);
  log << fmt::format("trained {} network {} ({} weights) on {} samples, {} held out\n",
                     options.trainer == Trainer::kPso ? "pso" : "bp",
                     outcome.network.topology().ToString(),
                     outcome.network.parameter_count(), outcome.data.train.size(),
                     outcome.data.test.size());
  if (!outcome.trace.empty()) {
    log << fmt::format("final training error {:.6g}\n", outcome.trace.back());
  }
}

void run_evaluate(const EvaluateOptions& options, std::ostream& log) {
  const Network<double> network = load_model(options.model_path);
  Dataset data = load_csv(options.dataset_path);
  if (!options.stats_path.empty()) {
    const ColumnStats stats = load_stats(options.stats_path);
    data = data.select_columns(stats.names);
    data = apply_minmax(data, stats);
    data = stats.mean.size() == data.feature_count() ? impute_with(data, stats.mean)
                                                     : impute_mean(data);
  }
  if (data.feature_count() != network.topology().input_count()) {
    throw DimensionError(fmt::format(
        "dataset has {} features but model {} expects {}", data.feature_count(),
        network.topology().ToString(), network.topology().input_count()));
  }
  const bool want_strict = options.mode == "strict" || options.mode == "both";
  const bool want_tolerant = options.mode == "tolerant" || options.mode == "both";
  if (!want_strict && !want_tolerant) {
    throw ConfigError("unknown mode '" + options.mode + "' (strict|tolerant|both)");
  }

  nlohmann::ordered_json doc;
  std::vector<std::pair<std::string, EvaluationReport>> rows;
  std::optional<EvaluationReport> strict, tolerant;
  if (want_strict) {
    strict = evaluate(network, data, ScoringMode::kStrict);
    doc["strict"] = to_json(*strict);
    rows.emplace_back("strict", *strict);
  }
  if (want_tolerant) {
    tolerant = evaluate(network, data, ScoringMode::kTolerant);
    doc["tolerant"] = to_json(*tolerant);
    rows.emplace_back("tolerant", *tolerant);
  }
  if (strict && tolerant) doc["comparison"] = to_json(compare_models(*strict, *tolerant));
  if (!options.report_out.empty()) WriteText(options.report_out, doc.dump(2) + "\n");

  log << format_results_table(rows);
  for (const auto& [name, report] : rows) {
    log << '\n' << name << " confusion matrix\n" << format_confusion_matrix(report.matrix);
  }
}

void run_compare(const CompareOptions& options, std::ostream& log) {
  auto load = [](const std::string& path, const char* key) {
    const nlohmann::json doc = ReadJson(path);
    return report_from_json(doc.contains(key) ? doc.at(key) : doc);
  };
  const EvaluationReport strict = load(options.strict_report, "strict");
  const EvaluationReport tolerant = load(options.tolerant_report, "tolerant");
  const ModelComparison c = compare_models(strict, tolerant);
  if (!options.out_path.empty()) WriteText(options.out_path, to_json(c).dump(2) + "\n");
  log << fmt::format("strict {:.2f}%  tolerant {:.2f}%  difference {:+.2f} points ({} samples)\n",
                     c.strict_accuracy, c.tolerant_accuracy, c.difference, c.sample_count);
}

ReproduceResult run_reproduce(const ReproduceOptions& options, std::ostream& log) {
  namespace fs = std::filesystem;
  fs::create_directories(options.out_dir);
  const auto path = [&](const char* name) { return (fs::path(options.out_dir) / name).string(); };

  GeneratorConfig gen = options.generator;
  gen.seed = derive_seed(options.seed, seed_stream::kGenerate);
  const Dataset raw = synthesize(gen);
  save_csv(raw, path("dataset.csv"));

  const Selection sel = SelectColumns(raw, options.use_cfs, "table3");
  const Dataset reduced = raw.select_columns(sel.names);
  WriteText(path("selection.json"), sel.report.dump(2) + "\n");

  TrainOptions train;
  train.trainer = Trainer::kPso;
  train.hidden = options.hidden;
  train.pso = options.pso;
  train.pipeline.balance_total = options.balance_total;
  train.pipeline.train_fraction = options.train_fraction;
  train.refine_epochs = options.refine_epochs;
  train.seed = options.seed;
  const TrainOutcome outcome = train_network(reduced, train);
  save_model(path("model.txt"), outcome.network);
  WriteTrace(path("trace.csv"), outcome.trace, 0);
  save_stats(outcome.data.stats, path("stats.json"));

  ReproduceResult r;
  r.train_strict = evaluate(outcome.network, outcome.data.train, ScoringMode::kStrict);
  r.train_tolerant = evaluate(outcome.network, outcome.data.train, ScoringMode::kTolerant);
  r.test_strict = evaluate(outcome.network, outcome.data.test, ScoringMode::kStrict);
  r.test_tolerant = evaluate(outcome.network, outcome.data.test, ScoringMode::kTolerant);
  r.test_comparison = compare_models(r.test_strict, r.test_tolerant);
  r.test_predictions = predict(outcome.network, outcome.data.test);

  nlohmann::ordered_json doc;
  doc["data"] = "synthetic";
  doc["topology"] = outcome.network.topology().ToString();
  doc["features"] = sel.names;
  doc["samples"] = {{"generated", raw.size()},
                    {"train", outcome.data.train.size()},
                    {"test", outcome.data.test.size()}};
  doc["pso"] = {{"inertia", options.pso.inertia},   {"c1", options.pso.c1},
                {"c2", options.pso.c2},             {"particles", options.pso.particle_count},
                {"epochs", options.pso.max_epochs}, {"final_mse", outcome.trace.back()}};
  doc["model1_strict"] = {{"training", to_json(r.train_strict)},
                          {"testing", to_json(r.test_strict)}};
  doc["model2_tolerant"] = {{"training", to_json(r.train_tolerant)},
                            {"testing", to_json(r.test_tolerant)}};
  doc["comparison_testing"] = to_json(r.test_comparison);
  r.report_json_path = path("report.json");
  WriteText(r.report_json_path, doc.dump(2) + "\n");

  std::string text =
      "SYNTHETIC DATA - these figures come from generated data, not the original "
      "lecturer records.\n\n";
  text += "Model 1 (strict rounding)\n";
  text += format_results_table({{"Training", r.train_strict}, {"Testing", r.test_strict}});
  text += "\nModel 1 testing confusion matrix\n" + format_confusion_matrix(r.test_strict.matrix);
  text += "\nModel 2 (tolerant +/-0.1 snapping)\n";
  text += format_results_table({{"Training", r.train_tolerant}, {"Testing", r.test_tolerant}});
  text += "\nModel 2 testing confusion matrix\n" +
          format_confusion_matrix(r.test_tolerant.matrix);
  text += fmt::format(
      "\nTesting accuracy: strict {:.2f}%, tolerant {:.2f}% (difference {:+.2f})\n",
      r.test_comparison.strict_accuracy, r.test_comparison.tolerant_accuracy,
      r.test_comparison.difference);
  text += "Note: tolerant scoring consults the true label; it is a scoring rule, not a "
          "classifier.\n";
  r.report_text_path = path("report.txt");
  WriteText(r.report_text_path, text);
  log << text;
  return r;
}

}  // namespace swarmnet
