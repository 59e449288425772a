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

// End-to-end pipeline steps behind the `swarmnet` command line tool.

#ifndef SWARMNET_COMMANDS_HPP_
#define SWARMNET_COMMANDS_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "swarmnet/backprop.hpp"
#include "swarmnet/dataset.hpp"
#include "swarmnet/evaluation.hpp"
#include "swarmnet/pso.hpp"

namespace swarmnet {

// Independent sub-seed for one pipeline stage.
std::uint64_t derive_seed(std::uint64_t master, std::uint32_t stream);

namespace seed_stream {
inline constexpr std::uint32_t kGenerate = 1;
inline constexpr std::uint32_t kBalance = 2;
inline constexpr std::uint32_t kSplit = 3;
inline constexpr std::uint32_t kInit = 4;
inline constexpr std::uint32_t kSwarm = 5;
inline constexpr std::uint32_t kShuffle = 6;
}  // namespace seed_stream

struct GenerateOptions {
  GeneratorConfig generator;
  std::string out_path;
};

void run_generate(const GenerateOptions& options, std::ostream& log);

struct SelectOptions {
  std::string dataset_path;
  bool use_cfs = false;
  std::string preset = "table3";
  std::string out_csv;
  std::string report_path;
};

void run_select(const SelectOptions& options, std::ostream& log);

enum class Trainer { kPso, kBp };

struct PipelineOptions {
  // 0 equalizes every class to the largest class count.
  int balance_total = 0;
  double train_fraction = 0.9;
};

struct TrainOptions {
  std::string dataset_path;
  Trainer trainer = Trainer::kPso;
  std::vector<int> hidden = {12, 8};
  BpConfig bp;
  PsoConfig pso;
  PipelineOptions pipeline;
  // Backprop epochs applied to the swarm's best network; 0 disables.
  int refine_epochs = 0;
  std::uint64_t seed = 1;
  std::string model_out;
  std::string trace_out;
  std::string stats_out;
  std::string train_out;
  std::string test_out;
};

struct Preprocessed {
  ColumnStats stats;
  Dataset train;
  Dataset test;
  std::vector<std::string> warnings;
};

// normalize -> impute -> balance -> stratified split.
Preprocessed preprocess(const Dataset& raw, const PipelineOptions& options,
                        std::uint64_t seed);

struct TrainOutcome {
  Network<double> network;
  std::vector<double> trace;
  Preprocessed data;
};

TrainOutcome train_network(const Dataset& raw, const TrainOptions& options);
void run_train(const TrainOptions& options, std::ostream& log);

struct EvaluateOptions {
  std::string model_path;
  std::string dataset_path;
  // strict, tolerant or both.
  std::string mode = "both";
  // Applies recorded normalization and imputation to raw data when set.
  std::string stats_path;
  std::string report_out;
};

void run_evaluate(const EvaluateOptions& options, std::ostream& log);

struct CompareOptions {
  std::string strict_report;
  std::string tolerant_report;
  std::string out_path;
};

void run_compare(const CompareOptions& options, std::ostream& log);

struct ReproduceOptions {
  // The generator seed is derived from `seed`.
  GeneratorConfig generator = [] {
    GeneratorConfig g;
    g.count = 313;
    g.noise_level = 0.05;
    return g;
  }();
  int balance_total = 580;
  double train_fraction = 0.9;
  bool use_cfs = false;
  std::vector<int> hidden = {12, 8};
  PsoConfig pso;
  int refine_epochs = 0;
  std::uint64_t seed = 7;
  std::string out_dir = "reproduce-out";
};

struct ReproduceResult {
  EvaluationReport train_strict;
  EvaluationReport train_tolerant;
  EvaluationReport test_strict;
  EvaluationReport test_tolerant;
  ModelComparison test_comparison;
  std::vector<Prediction> test_predictions;
  std::string report_json_path;
  std::string report_text_path;
};

// generate -> select -> preprocess -> PSO -> evaluate both scoring modes.
ReproduceResult run_reproduce(const ReproduceOptions& options, std::ostream& log);

}  // namespace swarmnet

#endif  // SWARMNET_COMMANDS_HPP_
