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

// swarmnet: generate data, select features, train networks with PSO or
// backpropagation and score them.

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "swarmnet/commands.hpp"
#include "swarmnet/errors.hpp"

namespace {

using swarmnet::PsoConfig;

// Seed precedence: flag, then config file, then SWARMNET_SEED, then default.
std::uint64_t ResolveSeed(const CLI::Option* option, std::uint64_t value) {
  if (option->count() > 0) return value;
  if (const char* env = std::getenv("SWARMNET_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw swarmnet::ConfigError(std::string("SWARMNET_SEED is not an integer: ") + env);
    }
  }
  return value;
}

// CLI11 only reads config files for the top-level app, so subcommands load
// their key=value file here. Keys name long options without the dashes;
// options already given on the command line win.
void ApplyConfigFile(CLI::App* cmd, const std::string& path) {
  if (path.empty()) return;
  std::vector<CLI::ConfigItem> items;
  try {
    items = CLI::ConfigINI().from_file(path);
  } catch (const CLI::Error& e) {
    throw swarmnet::ConfigError("config file '" + path + "': " + e.what());
  }
  for (const CLI::ConfigItem& item : items) {
    if (item.name == "++" || item.name == "--") continue;  // section markers
    if (!item.parents.empty()) {
      throw swarmnet::ConfigError("config file '" + path + "': sections are not supported");
    }
    CLI::Option* option = cmd->get_option_no_throw("--" + item.name);
    if (option == nullptr || item.name == "config") {
      throw swarmnet::ConfigError("config file '" + path + "': unknown key '" + item.name +
                                  "' for " + cmd->get_name());
    }
    if (option->count() > 0) continue;
    option->add_result(item.inputs);
    try {
      option->run_callback();
    } catch (const CLI::Error& e) {
      throw swarmnet::ConfigError("config file '" + path + "': " + item.name + ": " + e.what());
    }
  }
}

void AddPsoOptions(CLI::App* cmd, PsoConfig& pso) {
  cmd->add_option("--inertia", pso.inertia, "PSO inertia weight w")->capture_default_str();
  cmd->add_option("--c1", pso.c1, "cognitive coefficient")->capture_default_str();
  cmd->add_option("--c2", pso.c2, "social coefficient")->capture_default_str();
  cmd->add_option("--particles", pso.particle_count, "swarm size")->capture_default_str();
  cmd->add_option("--epochs", pso.max_epochs, "maximum PSO epochs")->capture_default_str();
  cmd->add_option("--exit-error", pso.exit_error, "stop when best MSE falls below")
      ->capture_default_str();
  cmd->add_option("--velocity-clamp", pso.velocity_clamp, "per-dimension velocity limit")
      ->capture_default_str();
  cmd->add_option("--position-low", pso.position_init.low)->capture_default_str();
  cmd->add_option("--position-high", pso.position_init.high)->capture_default_str();
  cmd->add_option("--velocity-low", pso.velocity_init.low)->capture_default_str();
  cmd->add_option("--velocity-high", pso.velocity_init.high)->capture_default_str();
  cmd->add_flag("--scalar-r", pso.scalar_r, "draw one r1/r2 per update instead of per dimension");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"swarmnet: feedforward networks trained by particle swarm or backpropagation"};
  app.require_subcommand(1);

  // generate
  swarmnet::GenerateOptions gen;
  std::uint64_t gen_seed = 1;
  auto* generate = app.add_subcommand("generate", "write a synthetic lecturer dataset");
  std::string gen_config;
  generate->add_option("--config", gen_config, "key=value config file");
  generate->add_option("--count", gen.generator.count, "number of samples (>= 10)")
      ->capture_default_str();
  auto* gen_seed_opt = generate->add_option("--seed", gen_seed, "random seed")->capture_default_str();
  generate->add_option("--noise,--noise_level", gen.generator.noise_level, "feature noise sd")
      ->capture_default_str();
  generate->add_option("--missing-rate,--missing_rate", gen.generator.missing_rate,
                       "probability of blanking a cell")
      ->capture_default_str();
  generate->add_option("--out,-o", gen.out_path, "output CSV")->required();

  // select
  swarmnet::SelectOptions sel;
  auto* select = app.add_subcommand("select", "reduce a dataset to a feature subset");
  select->add_option("--dataset,-d", sel.dataset_path, "input CSV")->required();
  auto* preset_opt = select->add_option("--preset", sel.preset, "named feature preset (table3)");
  auto* cfs_opt = select->add_flag("--cfs", sel.use_cfs, "run correlation-based selection");
  preset_opt->excludes(cfs_opt);
  select->add_option("--out,-o", sel.out_csv, "reduced CSV");
  select->add_option("--report", sel.report_path, "selection report (JSON)");

  // train
  swarmnet::TrainOptions train;
  std::string trainer = "pso";
  std::string hidden = "12,8";
  auto* train_cmd = app.add_subcommand("train", "preprocess, split and train a network");
  std::string train_config;
  train_cmd->add_option("--config", train_config, "key=value config file");
  train_cmd->add_option("--dataset,-d", train.dataset_path, "input CSV")->required();
  train_cmd->add_option("--trainer", trainer, "pso or bp")
      ->check(CLI::IsMember({"pso", "bp"}))
      ->capture_default_str();
  train_cmd->add_option("--hidden", hidden, "hidden layer sizes, comma separated")
      ->capture_default_str();
  AddPsoOptions(train_cmd, train.pso);
  train_cmd->add_option("--lr", train.bp.learning_rate, "backprop learning rate")
      ->capture_default_str();
  train_cmd->add_option("--momentum", train.bp.momentum, "backprop momentum")
      ->capture_default_str();
  train_cmd->add_option("--bp-epochs", train.bp.max_epochs, "backprop epochs")
      ->capture_default_str();
  train_cmd->add_option("--target-error", train.bp.target_error, "backprop stop MSE")
      ->capture_default_str();
  train_cmd->add_option("--refine-epochs", train.refine_epochs,
                        "backprop epochs after PSO (0 = off)")
      ->capture_default_str();
  train_cmd->add_option("--balance-total", train.pipeline.balance_total,
                        "samples after oversampling (0 = equalize to largest class)")
      ->capture_default_str();
  train_cmd->add_option("--train-fraction", train.pipeline.train_fraction)->capture_default_str();
  auto* train_seed_opt = train_cmd->add_option("--seed", train.seed, "master seed")
                              ->capture_default_str();
  train_cmd->add_option("--model-out,-o", train.model_out, "model file")->required();
  train_cmd->add_option("--trace-out", train.trace_out, "per-epoch error CSV");
  train_cmd->add_option("--stats-out", train.stats_out, "normalization statistics (JSON)");
  train_cmd->add_option("--train-out", train.train_out, "preprocessed training split CSV");
  train_cmd->add_option("--test-out", train.test_out, "preprocessed test split CSV");

  // evaluate
  swarmnet::EvaluateOptions eval;
  auto* evaluate = app.add_subcommand("evaluate", "score a model on a dataset");
  evaluate->add_option("--model,-m", eval.model_path, "model file")->required();
  evaluate->add_option("--dataset,-d", eval.dataset_path, "CSV to score")->required();
  evaluate->add_option("--mode", eval.mode, "strict, tolerant or both")
      ->check(CLI::IsMember({"strict", "tolerant", "both"}))
      ->capture_default_str();
  evaluate->add_option("--stats", eval.stats_path, "statistics to normalize raw data");
  evaluate->add_option("--report,-o", eval.report_out, "report (JSON)");

  // compare
  swarmnet::CompareOptions cmp;
  auto* compare = app.add_subcommand("compare", "compare strict and tolerant reports");
  compare->add_option("--strict", cmp.strict_report, "strict report JSON")->required();
  compare->add_option("--tolerant", cmp.tolerant_report, "tolerant report JSON")->required();
  compare->add_option("--out,-o", cmp.out_path, "comparison JSON");

  // reproduce-paper
  swarmnet::ReproduceOptions rep;
  std::string rep_hidden = "12,8";
  std::string selection = "preset";
  auto* reproduce = app.add_subcommand(
      "reproduce-paper", "full pipeline on synthetic data with the reference configuration");
  std::string rep_config;
  reproduce->add_option("--config", rep_config, "key=value config file");
  reproduce->add_option("--count", rep.generator.count, "generated samples")->capture_default_str();
  reproduce->add_option("--noise,--noise_level", rep.generator.noise_level)->capture_default_str();
  reproduce->add_option("--missing-rate,--missing_rate", rep.generator.missing_rate)
      ->capture_default_str();
  reproduce->add_option("--balance-total", rep.balance_total)->capture_default_str();
  reproduce->add_option("--selection", selection, "preset or cfs")
      ->check(CLI::IsMember({"preset", "cfs"}))
      ->capture_default_str();
  reproduce->add_option("--hidden", rep_hidden)->capture_default_str();
  AddPsoOptions(reproduce, rep.pso);
  reproduce->add_option("--refine-epochs", rep.refine_epochs)->capture_default_str();
  auto* rep_seed_opt = reproduce->add_option("--seed", rep.seed, "master seed")->capture_default_str();
  reproduce->add_option("--out-dir", rep.out_dir, "output directory")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (generate->parsed()) {
      ApplyConfigFile(generate, gen_config);
      gen.generator.seed = ResolveSeed(gen_seed_opt, gen_seed);
      swarmnet::run_generate(gen, std::cout);
    } else if (select->parsed()) {
      swarmnet::run_select(sel, std::cout);
    } else if (train_cmd->parsed()) {
      ApplyConfigFile(train_cmd, train_config);
      train.trainer = trainer == "bp" ? swarmnet::Trainer::kBp : swarmnet::Trainer::kPso;
      train.hidden = swarmnet::Topology::Parse("1," + hidden + ",1").hidden_sizes();
      train.seed = ResolveSeed(train_seed_opt, train.seed);
      swarmnet::run_train(train, std::cout);
    } else if (evaluate->parsed()) {
      swarmnet::run_evaluate(eval, std::cout);
    } else if (compare->parsed()) {
      swarmnet::run_compare(cmp, std::cout);
    } else if (reproduce->parsed()) {
      ApplyConfigFile(reproduce, rep_config);
      rep.use_cfs = selection == "cfs";
      rep.hidden = swarmnet::Topology::Parse("1," + rep_hidden + ",1").hidden_sizes();
      rep.seed = ResolveSeed(rep_seed_opt, rep.seed);
      swarmnet::run_reproduce(rep, std::cout);
    }
  } catch (const std::exception& e) {
    std::cerr << "swarmnet: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
