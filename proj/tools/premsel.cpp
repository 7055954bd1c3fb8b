// premsel: premise selection from proof dependencies.
//
//   premsel eval  --formulas f.p --deps deps.txt --ranker nb --out-dir out/
//   premsel rank  --formulas f.p --deps deps.txt --conjecture t42 -n 10
//   premsel emit  --formulas f.p --deps deps.txt --mode bushy --out-dir problems/
//   premsel minimize --ids a,b,c --oracle-cmd ./check.sh

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>
#include <thread>
#include <string>
#include <vector>

#include "premsel/corpus.hpp"
#include "premsel/eval.hpp"
#include "premsel/minimize.hpp"
#include "premsel/mor.hpp"
#include "premsel/naive_bayes.hpp"
#include "premsel/text_io.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

enum ExitCode : int {
  kOk = 0,
  kConfigError = 2,
  kInputError = 3,
  kRuntimeError = 4,
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string subcommand;
  std::vector<std::string> formulas;
  std::string deps;
  std::string rows = "theorems";
  std::string conjecture_list;
  std::string out_dir = ".";
  std::uint64_t seed = 0;
  unsigned jobs = 0;

  std::string ranker = "nb";
  std::string kernel = "gaussian";
  std::vector<double> lambda_grid;
  std::vector<double> sigma_grid;
  double split = 0.7;
  std::string split_mode = "shuffle";
  bool grid_per_step = false;

  std::vector<std::size_t> n_values;

  // rank
  std::string conjecture;
  std::string conjecture_file;
  std::size_t top = 10;
  std::string model;
  std::string dictionary;

  // emit
  std::string mode = "bushy";
  std::size_t advised = 0;

  // minimize
  std::vector<std::string> ids;
  std::string start_file;
  std::string oracle_cmd;
  bool batch = false;
  std::vector<std::size_t> schedule;
  std::string order = "given";
  bool assume_monotone = false;
  std::string trace;
};

json echo(const RunConfig& c) {
  json j;
  j["subcommand"] = c.subcommand;
  j["version"] = PREMSEL_VERSION;
  j["seed"] = c.seed;
  j["formulas"] = c.formulas;
  j["deps"] = c.deps;
  j["rows"] = c.rows;
  j["conjectures"] = c.conjecture_list;
  j["ranker"] = c.ranker;
  j["kernel"] = c.kernel;
  const auto defaults = premsel::GridSearchConfig::defaults();
  j["lambda_grid"] = c.lambda_grid.empty() ? defaults.lambdas : c.lambda_grid;
  j["sigma_grid"] = c.sigma_grid.empty() ? defaults.sigmas : c.sigma_grid;
  j["split"] = c.split;
  j["split_mode"] = c.split_mode;
  j["grid_per_step"] = c.grid_per_step;
  j["n"] = c.n_values.empty() ? premsel::default_recall_points() : c.n_values;
  if (c.subcommand == "rank") {
    j["conjecture"] = c.conjecture;
    j["conjecture_file"] = c.conjecture_file;
    j["top"] = c.top;
    j["model"] = c.model;
    j["dictionary"] = c.dictionary;
  }
  if (c.subcommand == "emit") {
    j["mode"] = c.mode;
    j["advised"] = c.advised;
  }
  if (c.subcommand == "minimize") {
    j["ids"] = c.ids;
    j["start_file"] = c.start_file;
    j["oracle_cmd"] = c.oracle_cmd;
    j["batch"] = c.batch;
    j["schedule"] = c.schedule;
    j["order"] = c.order;
    j["assume_monotone"] = c.assume_monotone;
  }
  // --jobs is deliberately absent: output never depends on it.
  return j;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw std::runtime_error("error writing '" + path.string() + "'");
}

void write_metadata(const RunConfig& c, json extra) {
  fs::create_directories(c.out_dir);
  json j = echo(c);
  for (auto& [k, v] : extra.items()) j[k] = v;
  write_file(fs::path(c.out_dir) / "run.json", j.dump(2) + "\n");
}

void validate(const RunConfig& c) {
  if (c.split <= 0.0 || c.split >= 1.0)
    throw ConfigError("--split must lie strictly between 0 and 1");
  for (double l : c.lambda_grid)
    if (!(l > 0)) throw ConfigError("--lambda-grid values must be positive");
  for (double s : c.sigma_grid)
    if (!(s > 0)) throw ConfigError("--sigma-grid values must be positive");
  for (auto n : c.n_values)
    if (n == 0) throw ConfigError("--n values must be positive");
  if (c.top == 0) throw ConfigError("-n must be positive");
  auto need = [](const std::string& path, const char* flag) {
    if (!path.empty() && !fs::exists(path))
      throw ConfigError(std::string(flag) + ": no such file '" + path + "'");
  };
  for (const auto& f : c.formulas) need(f, "--formulas");
  need(c.deps, "--deps");
  need(c.conjecture_list, "--conjectures");
  need(c.conjecture_file, "--conjecture-file");
  need(c.model, "--model");
  need(c.dictionary, "--dictionary");
  need(c.start_file, "--start-file");
}

premsel::RowPolicy row_policy(const RunConfig& c) {
  return c.rows == "all" ? premsel::RowPolicy::AllItems : premsel::RowPolicy::TheoremsOnly;
}

premsel::RankerConfig ranker_config(const RunConfig& c) {
  if (c.ranker == "nb") return premsel::NbRankerConfig{row_policy(c)};
  premsel::MorRankerConfig m;
  auto defaults = premsel::GridSearchConfig::defaults();
  m.grid.lambdas = c.lambda_grid.empty() ? defaults.lambdas : c.lambda_grid;
  m.grid.sigmas = c.sigma_grid.empty() ? defaults.sigmas : c.sigma_grid;
  m.grid.split = c.split;
  m.grid.seed = c.seed;
  m.grid.kernel = c.kernel == "linear" ? premsel::KernelKind::Linear : premsel::KernelKind::Gaussian;
  m.grid.mode = c.split_mode == "chronological" ? premsel::SplitMode::Chronological
                                                : premsel::SplitMode::Shuffle;
  m.search_per_step = c.grid_per_step;
  m.rows = row_policy(c);
  return m;
}

std::vector<std::string> read_id_list(const std::string& path) {
  std::vector<std::string> ids;
  std::istringstream in(premsel::read_file(path));
  std::string line;
  while (std::getline(in, line)) {
    if (auto pct = line.find('%'); pct != std::string::npos) line.resize(pct);
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.pop_back();
    std::size_t b = 0;
    while (b < line.size() && std::isspace(static_cast<unsigned char>(line[b]))) ++b;
    if (b < line.size()) ids.push_back(line.substr(b));
  }
  return ids;
}

premsel::Corpus load(const RunConfig& c) {
  if (c.formulas.empty()) throw ConfigError("--formulas is required");
  std::vector<fs::path> files(c.formulas.begin(), c.formulas.end());
  std::optional<fs::path> deps;
  if (!c.deps.empty()) deps = c.deps;
  return premsel::load_corpus(files, deps);
}

std::vector<std::size_t> conjectures(const RunConfig& c, const premsel::Corpus& corpus) {
  std::optional<std::vector<std::string>> ids;
  if (!c.conjecture_list.empty()) ids = read_id_list(c.conjecture_list);
  return premsel::select_conjectures(corpus, ids);
}

json tuning_json(const premsel::TuningInfo& t) {
  json j;
  j["searched"] = t.searched;
  j["tuning_position"] = t.position ? json(*t.position) : json(nullptr);
  j["lambda"] = t.lambda;
  j["sigma"] = t.sigma;
  return j;
}

std::string loss_table_text(const std::vector<premsel::GridPoint>& table) {
  std::ostringstream out;
  premsel::write_loss_table(out, table);
  return out.str();
}

int cmd_eval(const RunConfig& c) {
  auto corpus = load(c);
  premsel::EvalConfig cfg;
  cfg.ranker = ranker_config(c);
  cfg.conjectures = conjectures(c, corpus);
  if (!c.n_values.empty()) cfg.points = c.n_values;
  cfg.jobs = c.jobs == 0 ? std::max(1u, std::thread::hardware_concurrency()) : c.jobs;
  auto report = premsel::run_incremental(corpus, cfg);

  fs::create_directories(c.out_dir);
  std::ostringstream per, agg;
  premsel::write_report_csv(per, report);
  premsel::write_aggregate_csv(agg, report);
  write_file(fs::path(c.out_dir) / "per_conjecture.csv", per.str());
  write_file(fs::path(c.out_dir) / "aggregate.csv", agg.str());
  if (report.tuning.searched)
    write_file(fs::path(c.out_dir) / "loss_table.csv", loss_table_text(report.tuning.table));

  json extra;
  if (c.ranker == "mor") extra["tuning"] = tuning_json(report.tuning);
  extra["averaged"] = report.averaged;
  extra["no_dependencies"] = report.no_dependencies;
  extra["fallbacks"] = report.fallbacks;
  extra["errors"] = report.errors;
  write_metadata(c, extra);

  std::cout << "evaluated " << report.steps.size() << " conjectures (" << report.averaged
            << " averaged, " << report.no_dependencies << " without dependencies, "
            << report.errors << " errors)\n";
  for (std::size_t k = 0; k < report.points.size() && !report.average.empty(); ++k)
    std::cout << "recall@" << report.points[k] << " " << premsel::format_double(report.average[k])
              << '\n';
  return kOk;
}

struct Scored {
  std::string id;
  std::size_t position;
  double score;
};

void print_ranking(std::vector<Scored> scored, std::size_t top) {
  std::stable_sort(scored.begin(), scored.end(), [](const Scored& a, const Scored& b) {
    return a.score != b.score ? a.score > b.score : a.position < b.position;
  });
  if (top > scored.size()) {
    std::cerr << "warning: requested " << top << " premises but the pool has only "
              << scored.size() << "; returning the whole pool\n";
    top = scored.size();
  }
  for (std::size_t k = 0; k < top; ++k)
    std::cout << k + 1 << ' ' << scored[k].id << ' ' << premsel::format_double(scored[k].score)
              << '\n';
}

premsel::FeatureVector model_conjecture(const RunConfig& c, const premsel::FeatureDictionary& dict,
                                        const premsel::Corpus* corpus,
                                        std::optional<std::size_t>* position) {
  if (!c.conjecture_file.empty()) {
    premsel::NamedItem item;
    try {
      item = premsel::parse_item(premsel::read_file(c.conjecture_file));
    } catch (const premsel::ParseError& e) {
      throw e.in_source(c.conjecture_file);
    }
    return premsel::vectorize(item.formula, dict);
  }
  if (!corpus) throw ConfigError("--model needs --conjecture-file or a corpus with --conjecture");
  auto pos = corpus->position(c.conjecture);
  if (!pos) throw InputError("unknown conjecture identifier '" + c.conjecture + "'");
  *position = pos;
  return premsel::vectorize(corpus->entry(*pos).item.formula, dict);
}

int cmd_rank(const RunConfig& c) {
  if (c.model.empty()) {
    if (c.conjecture.empty()) throw ConfigError("rank needs --conjecture (or --model)");
    auto corpus = load(c);
    auto pos = corpus.position(c.conjecture);
    if (!pos) throw InputError("unknown conjecture identifier '" + c.conjecture + "'");
    std::vector<std::size_t> at{*pos};
    premsel::TuningInfo tuning;
    auto ranker = premsel::prepare_ranker(corpus, ranker_config(c), at, &tuning);
    auto advice = ranker.advise(corpus.training_view(*pos));
    std::vector<Scored> scored;
    for (std::size_t k = 0; k < advice.size(); ++k)
      scored.push_back({advice.ids[k], advice.premises[k], advice.scores[k]});
    if (advice.fallback) std::cerr << "warning: pool too small to train; chronological order\n";
    print_ranking(std::move(scored), c.top);
    json extra;
    if (c.ranker == "mor") extra["tuning"] = tuning_json(tuning);
    write_metadata(c, extra);
    return kOk;
  }

  std::optional<premsel::Corpus> corpus;
  if (!c.formulas.empty()) corpus = load(c);
  premsel::FeatureDictionary dict;
  if (!c.dictionary.empty()) {
    std::ifstream in(c.dictionary);
    dict = premsel::FeatureDictionary::load(in);
  } else if (corpus) {
    dict = corpus->dictionary();
  } else {
    throw ConfigError("--model needs --dictionary or --formulas");
  }

  std::ifstream in(c.model);
  std::string header;
  std::getline(in, header);
  in.seekg(0);
  std::vector<Scored> scored;
  std::optional<std::size_t> position;
  auto check_dict = [&](std::size_t size, std::uint64_t fp) {
    if (size != dict.size() || fp != dict.fingerprint())
      throw InputError("model was trained with a different feature dictionary");
  };
  if (header.rfind("premsel-nb", 0) == 0) {
    auto model = premsel::NbModel::load(in);
    check_dict(model.dictionary_size(), model.dictionary_fingerprint());
    auto x = model_conjecture(c, dict, corpus ? &*corpus : nullptr, &position);
    auto s = model.score(x);
    for (std::size_t k = 0; k < s.size(); ++k)
      scored.push_back({model.premise(k).id, model.premise(k).position, s[k]});
  } else if (header.rfind("premsel-mor", 0) == 0) {
    auto model = premsel::MorModel::load(in);
    check_dict(model.dictionary_size, model.dictionary_fingerprint);
    auto x = model_conjecture(c, dict, corpus ? &*corpus : nullptr, &position);
    Eigen::VectorXd s = model.score(x);
    for (std::size_t k = 0; k < model.premise_ids.size(); ++k)
      scored.push_back({model.premise_ids[k], model.premise_positions[k], s(static_cast<Eigen::Index>(k))});
  } else {
    throw InputError("'" + c.model + "' is not a premsel model file");
  }
  if (position)
    std::erase_if(scored, [&](const Scored& s) { return s.position >= *position; });
  print_ranking(std::move(scored), c.top);
  write_metadata(c, json::object());
  return kOk;
}

int cmd_train(const RunConfig& c) {
  auto corpus = load(c);
  auto view = corpus.full_view();
  fs::create_directories(c.out_dir);
  std::ostringstream dict, model;
  corpus.dictionary().save(dict);
  json extra;
  if (c.ranker == "nb") {
    premsel::nb_train(view, row_policy(c)).save(model);
  } else {
    auto cfg = std::get<premsel::MorRankerConfig>(ranker_config(c));
    cfg.grid.validate();
    premsel::MorModel m;
    if (cfg.grid.lambdas.size() == 1 &&
        (cfg.grid.kernel == premsel::KernelKind::Linear || cfg.grid.sigmas.size() == 1)) {
      auto spec = cfg.grid.kernel == premsel::KernelKind::Linear
                      ? premsel::KernelSpec<double>::linear()
                      : premsel::KernelSpec<double>::gaussian(cfg.grid.sigmas.front());
      m = premsel::mor_train(view, spec, cfg.grid.lambdas.front(), cfg.rows);
    } else {
      auto result = premsel::grid_search(view, cfg.grid, cfg.rows);
      write_file(fs::path(c.out_dir) / "loss_table.csv", loss_table_text(result.table));
      m = std::move(result.model);
    }
    extra["lambda"] = m.lambda;
    extra["sigma"] = m.kernel.kind == premsel::KernelKind::Linear ? 0.0 : m.kernel.sigma;
    extra["residual"] = m.residual;
    m.save(model);
  }
  write_file(fs::path(c.out_dir) / "dictionary.txt", dict.str());
  write_file(fs::path(c.out_dir) / "model.txt", model.str());
  write_metadata(c, extra);
  std::cout << "trained " << c.ranker << " on " << corpus.size() << " items\n";
  return kOk;
}

int cmd_features(const RunConfig& c) {
  auto corpus = load(c);
  fs::create_directories(c.out_dir);
  std::ostringstream dict;
  corpus.dictionary().save(dict);
  write_file(fs::path(c.out_dir) / "dictionary.txt", dict.str());
  write_metadata(c, json::object());
  std::cout << corpus.dictionary().size() << " features\n";
  return kOk;
}

int cmd_emit(const RunConfig& c) {
  auto corpus = load(c);
  premsel::EmitConfig cfg;
  cfg.conjectures = conjectures(c, corpus);
  if (c.mode == "bushy") cfg.mode = premsel::EmitMode::Bushy;
  else if (c.mode == "chainy") cfg.mode = premsel::EmitMode::Chainy;
  else {
    if (c.advised == 0) throw ConfigError("--mode advised needs --advised N");
    cfg.mode = premsel::EmitMode::Advised;
    cfg.advised = c.advised;
    cfg.ranker = premsel::prepare_ranker(corpus, ranker_config(c), cfg.conjectures);
  }
  auto problems = premsel::emit_problems(corpus, cfg, c.out_dir);
  std::size_t axioms = 0;
  for (const auto& p : problems) axioms += p.axioms.size();
  json extra;
  extra["problems"] = problems.size();
  extra["axioms"] = axioms;
  write_metadata(c, extra);
  std::cout << "wrote " << problems.size() << " problems";
  if (!problems.empty())
    std::cout << ", average " << premsel::format_double(static_cast<double>(axioms) /
                                                      static_cast<double>(problems.size()))
              << " axioms";
  std::cout << '\n';
  return kOk;
}

int cmd_minimize(const RunConfig& c) {
  if (c.oracle_cmd.empty()) throw ConfigError("minimize needs --oracle-cmd");
  premsel::IdSet start = c.ids;
  if (!c.start_file.empty()) {
    auto more = read_id_list(c.start_file);
    start.insert(start.end(), more.begin(), more.end());
  }
  if (c.order == "chronological-reverse") {
    auto corpus = load(c);
    for (const auto& id : start)
      if (!corpus.position(id)) throw InputError("unknown identifier '" + id + "'");
    start = premsel::chronological_reverse(start, [&](const std::string& id) {
      return *corpus.position(id);
    });
  }
  premsel::SubprocessOracle oracle(c.oracle_cmd, c.assume_monotone);
  auto result = c.batch ? premsel::batch_minimize(start, oracle,
                                                  c.schedule.empty()
                                                      ? premsel::halving_schedule(start.size())
                                                      : c.schedule)
                        : premsel::greedy_minimize(start, oracle);
  if (!c.trace.empty()) {
    std::ostringstream t;
    premsel::write_trace_csv(t, result);
    write_file(c.trace, t.str());
  }
  json extra;
  extra["oracle_calls"] = result.oracle_calls;
  extra["minimal"] = result.minimal;
  write_metadata(c, extra);
  for (const auto& id : result.minimal) std::cout << id << '\n';
  std::cerr << result.oracle_calls << " oracle calls\n";
  return kOk;
}

void add_corpus_options(CLI::App* sub, RunConfig& c, bool required) {
  auto* f = sub->add_option("--formulas", c.formulas, "FOF formula files, in chronological order");
  if (required) f->required();
  sub->add_option("--deps", c.deps, "dependency file (<id>: <id> ...)");
  sub->add_option("--rows", c.rows, "training rows: theorems | all")
      ->check(CLI::IsMember({"theorems", "all"}));
}

void add_ranker_options(CLI::App* sub, RunConfig& c) {
  sub->add_option("--ranker", c.ranker, "nb | mor")->check(CLI::IsMember({"nb", "mor"}));
  sub->add_option("--kernel", c.kernel, "gaussian | linear")
      ->check(CLI::IsMember({"gaussian", "linear"}));
  sub->add_option("--lambda-grid", c.lambda_grid, "regularization grid")->delimiter(',');
  sub->add_option("--sigma-grid", c.sigma_grid, "Gaussian width grid")->delimiter(',');
  sub->add_option("--split", c.split, "fit fraction of the validation split");
  sub->add_option("--split-mode", c.split_mode, "shuffle | chronological")
      ->check(CLI::IsMember({"shuffle", "chronological"}));
  sub->add_flag("--grid-per-step", c.grid_per_step, "rerun the grid search at every step");
  sub->add_option("--seed", c.seed, "seed for every random choice");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Premise selection from proof dependencies"};
  app.require_subcommand(1);
  app.set_version_flag("--version", PREMSEL_VERSION);
  RunConfig c;

  auto* eval = app.add_subcommand("eval", "chronological recall evaluation");
  add_corpus_options(eval, c, true);
  add_ranker_options(eval, c);
  eval->add_option("--conjectures", c.conjecture_list, "file of conjecture ids to evaluate");
  eval->add_option("--n", c.n_values, "recall points")->delimiter(',');
  eval->add_option("--jobs", c.jobs, "parallel steps (default: all cores)");
  eval->add_option("--out-dir", c.out_dir, "output directory");

  auto* rank = app.add_subcommand("rank", "rank premises for one conjecture");
  add_corpus_options(rank, c, false);
  add_ranker_options(rank, c);
  rank->add_option("--conjecture", c.conjecture, "conjecture id in the corpus");
  rank->add_option("--conjecture-file", c.conjecture_file, "file holding one fof item");
  rank->add_option("-n,--top", c.top, "number of premises to print");
  rank->add_option("--model", c.model, "model file written by 'train'");
  rank->add_option("--dictionary", c.dictionary, "dictionary file written by 'train'");
  rank->add_option("--out-dir", c.out_dir, "directory for run.json");

  auto* train = app.add_subcommand("train", "train a model on the whole corpus");
  add_corpus_options(train, c, true);
  add_ranker_options(train, c);
  train->add_option("--out-dir", c.out_dir, "output directory");

  auto* features = app.add_subcommand("features", "write the feature dictionary");
  add_corpus_options(features, c, true);
  features->add_option("--out-dir", c.out_dir, "output directory");

  auto* emit = app.add_subcommand("emit", "write one ATP problem per conjecture");
  add_corpus_options(emit, c, true);
  add_ranker_options(emit, c);
  emit->add_option("--mode", c.mode, "bushy | chainy | advised")
      ->check(CLI::IsMember({"bushy", "chainy", "advised"}));
  emit->add_option("--advised", c.advised, "premises per advised problem");
  emit->add_option("--conjectures", c.conjecture_list, "file of conjecture ids");
  emit->add_option("--out-dir", c.out_dir, "output directory")->required();

  auto* minimize = app.add_subcommand("minimize", "greedy dependency minimization");
  add_corpus_options(minimize, c, false);
  minimize->add_option("--ids", c.ids, "starting dependency ids")->delimiter(',');
  minimize->add_option("--start-file", c.start_file, "file of starting ids, one per line");
  minimize->add_option("--oracle-cmd", c.oracle_cmd, "sufficiency command (stdin ids, exit 0 = ok)");
  minimize->add_flag("--batch", c.batch, "remove halving chunks before the element pass");
  minimize->add_option("--schedule", c.schedule, "explicit chunk sizes")->delimiter(',');
  minimize->add_option("--order", c.order, "given | chronological-reverse")
      ->check(CLI::IsMember({"given", "chronological-reverse"}));
  minimize->add_flag("--assume-monotone", c.assume_monotone,
                     "skip re-checking kept elements (oracle is monotone)");
  minimize->add_option("--trace", c.trace, "write the removal trace CSV here");
  minimize->add_option("--out-dir", c.out_dir, "directory for run.json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  }

  for (auto* sub : app.get_subcommands()) c.subcommand = sub->get_name();
  try {
    validate(c);
    if (c.subcommand == "eval") return cmd_eval(c);
    if (c.subcommand == "rank") return cmd_rank(c);
    if (c.subcommand == "train") return cmd_train(c);
    if (c.subcommand == "features") return cmd_features(c);
    if (c.subcommand == "emit") return cmd_emit(c);
    if (c.subcommand == "minimize") return cmd_minimize(c);
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kConfigError;
  } catch (const premsel::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kInputError;
  } catch (const premsel::CorpusError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRuntimeError;
  }
  return kConfigError;
}
