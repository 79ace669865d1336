// docforest: generate corpora, train the matcher, predict and evaluate
// document hierarchies.

#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "docforest/docforest.hpp"

namespace {

using namespace docforest;

enum ExitCode { kOk = 0, kUsage = 1, kDataError = 2, kInternalError = 3 };

std::set<std::string> split_list(const std::string& s) {
  std::set<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.insert(item);
  }
  return out;
}

std::optional<EmbeddingTable> load_embeddings(const std::string& path, std::size_t dim) {
  if (path.empty()) return std::nullopt;
  auto table = read_embeddings_file(path);
  table.check_dim(dim);
  return table;
}

struct GenArgs {
  std::string config;
  std::string out;
};

int run_gen(const GenArgs& a) {
  std::ifstream in(a.config);
  if (!in) throw ParseError("cannot open " + a.config);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(a.config + ": " + e.what());
  }
  GenConfig cfg = gen_config_from_json(j);
  auto split = generate_corpus(cfg);
  write_corpus_dir(a.out, cfg, split);
  std::cerr << "wrote " << split.train.size() << "/" << split.val.size() << "/" << split.test.size()
            << " train/val/test documents to " << a.out << "\n";
  return kOk;
}

struct TrainArgs {
  std::string corpus;
  std::string out;
  double s = 16.0;
  double m = 0.2;
  std::size_t emb_dim = 64;
  std::size_t hidden_dim = 128;
  std::size_t hash_dim = 64;
  int epochs = 30;
  double lr = 1e-3;
  std::uint64_t seed = 42;
  std::string embeddings;
};

int run_train(const TrainArgs& a) {
  auto corpus = read_corpus_dir(a.corpus);
  FeatureConfig fc;
  fc.text_hash_dim = a.hash_dim;
  auto external = load_embeddings(a.embeddings, fc.text_hash_dim);
  auto init = make_model(fc, {a.hidden_dim, a.emb_dim}, a.s, a.m, a.seed);
  TrainOptions opts;
  opts.epochs = a.epochs;
  opts.learning_rate = a.lr;
  opts.seed = a.seed;
  TrainLog log;
  auto model = train(corpus.train, init, opts, &log, external ? &*external : nullptr);
  std::cerr << "training on " << log.documents_used << " documents, " << log.pairs << " pairs\n";
  for (std::size_t e = 0; e < log.epoch_loss.size(); ++e) {
    std::cerr << "epoch " << (e + 1) << " loss " << log.epoch_loss[e] << "\n";
  }
  save_model(model, a.out);
  return kOk;
}

struct PredictArgs {
  std::string model;
  std::string input;
  std::string out;
  bool no_rules = false;
  std::string embeddings;
};

int run_predict(const PredictArgs& a) {
  auto model = load_model(a.model);
  auto docs = read_corpus_file(a.input);
  auto external = load_embeddings(a.embeddings, model.features.text_hash_dim);
  std::ofstream out(a.out);
  if (!out) throw ParseError("cannot write " + a.out);
  ParseOptions opts{!a.no_rules, external ? &*external : nullptr};
  for (const auto& d : docs) write_predictions(out, d, parse_hierarchy(d, model, opts));
  return kOk;
}

struct EvalArgs {
  std::string preds;
  std::string gold;
  std::string scored;
};

int run_eval(const EvalArgs& a) {
  std::ifstream in(a.preds);
  if (!in) throw ParseError("cannot open " + a.preds);
  auto preds = group_predictions(read_predictions(in));
  auto gold = read_corpus_file(a.gold);
  EntityFilter filter;
  if (!a.scored.empty()) filter = category_filter(split_list(a.scored));
  auto r = accuracy_counts(preds, gold, filter);
  nlohmann::json j{{"accuracy", r.value()}, {"correct", r.correct}, {"total", r.total}};
  std::cout << j.dump() << "\n";
  return kOk;
}

struct CompareArgs {
  std::string corpus;
  std::string model;
  std::string json_out;
  std::string scored;
  std::string embeddings;
};

int run_compare(const CompareArgs& a) {
  auto corpus = read_corpus_dir(a.corpus);
  auto model = load_model(a.model);
  auto external = load_embeddings(a.embeddings, model.features.text_hash_dim);
  EntityFilter filter;
  if (!a.scored.empty()) filter = category_filter(split_list(a.scored));
  auto report = compare_methods(corpus, model, filter, external ? &*external : nullptr);
  std::cout << format_table(report);
  std::cout << to_json(report).dump() << "\n";
  if (!a.json_out.empty()) {
    std::ofstream out(a.json_out);
    out << to_json(report).dump(2) << "\n";
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Parent-child structure parsing for visually rich documents"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a labeled synthetic corpus");
  gen_cmd->add_option("--config", gen.config, "Generator config (JSON)")->required();
  gen_cmd->add_option("--out", gen.out, "Output directory")->required();

  TrainArgs tr;
  auto* train_cmd = app.add_subcommand("train", "Train the matching model");
  train_cmd->add_option("--corpus", tr.corpus, "Corpus directory (reads train.jsonl)")->required();
  train_cmd->add_option("--out", tr.out, "Model file to write")->required();
  train_cmd->add_option("--s", tr.s, "Logit scale")->check(CLI::PositiveNumber);
  train_cmd->add_option("--m", tr.m, "Angular margin in radians")->check(CLI::Range(0.0, 1.5707963267948));
  train_cmd->add_option("--emb-dim", tr.emb_dim, "Embedding dimension")->check(CLI::PositiveNumber);
  train_cmd->add_option("--hidden-dim", tr.hidden_dim, "Hidden layer width")->check(CLI::PositiveNumber);
  train_cmd->add_option("--hash-dim", tr.hash_dim, "Text hash buckets")->check(CLI::PositiveNumber);
  train_cmd->add_option("--epochs", tr.epochs, "Training epochs")->check(CLI::NonNegativeNumber);
  train_cmd->add_option("--lr", tr.lr, "Learning rate")->check(CLI::PositiveNumber);
  train_cmd->add_option("--seed", tr.seed, "Seed for initialization and document order");
  train_cmd->add_option("--embeddings", tr.embeddings, "External text embeddings (JSONL)");

  PredictArgs pr;
  auto* predict_cmd = app.add_subcommand("predict", "Predict parents for every entity");
  predict_cmd->add_option("--model", pr.model, "Model file")->required();
  predict_cmd->add_option("--input", pr.input, "Documents (JSONL)")->required();
  predict_cmd->add_option("--out", pr.out, "Prediction file (JSONL)")->required();
  predict_cmd->add_flag("--no-rules", pr.no_rules, "Matcher only (loss-only configuration)");
  predict_cmd->add_option("--embeddings", pr.embeddings, "External text embeddings (JSONL)");

  EvalArgs ev;
  auto* eval_cmd = app.add_subcommand("eval", "Score predictions against gold labels");
  eval_cmd->add_option("--preds", ev.preds, "Prediction file (JSONL)")->required();
  eval_cmd->add_option("--gold", ev.gold, "Labeled documents (JSONL)")->required();
  eval_cmd->add_option("--scored-categories", ev.scored, "Comma-separated categories to score (default: all)");

  CompareArgs cmp;
  auto* compare_cmd = app.add_subcommand("compare", "Loss-only vs loss+greedy accuracy on val and test");
  compare_cmd->add_option("--corpus", cmp.corpus, "Corpus directory")->required();
  compare_cmd->add_option("--model", cmp.model, "Model file")->required();
  compare_cmd->add_option("--json", cmp.json_out, "Also write the report here");
  compare_cmd->add_option("--scored-categories", cmp.scored, "Comma-separated categories to score (default: all)");
  compare_cmd->add_option("--embeddings", cmp.embeddings, "External text embeddings (JSONL)");

  bool dump = false;
  auto* rules_cmd = app.add_subcommand("rules", "Inspect the rule configuration");
  rules_cmd->add_flag("--dump", dump, "Print the rule configuration as JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*gen_cmd) return run_gen(gen);
    if (*train_cmd) return run_train(tr);
    if (*predict_cmd) return run_predict(pr);
    if (*eval_cmd) return run_eval(ev);
    if (*compare_cmd) return run_compare(cmp);
    if (*rules_cmd) {
      std::cout << to_json(default_rule_config()).dump(2) << "\n";
      return kOk;
    }
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDataError;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDataError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDataError;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInternalError;
  } catch (const ConsistencyError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternalError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternalError;
  }
  return kUsage;
}
