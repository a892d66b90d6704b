// Copyright 2026 The zgptda Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "zgptda/augment.hpp"
#include "zgptda/compare.hpp"
#include "zgptda/corpus.hpp"
#include "zgptda/errors.hpp"
#include "zgptda/hashing.hpp"
#include "zgptda/io.hpp"
#include "zgptda/report.hpp"
#include "zgptda/transport.hpp"

#ifndef ZGPTDA_VERSION
#define ZGPTDA_VERSION "0.0.0"
#endif

namespace zgptda::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

// Reads flat JSON objects: {"flag": value, ...}. Arrays give repeated values.
class JsonConfig : public CLI::Config {
 public:
  std::string to_config(const CLI::App* app, bool default_also, bool,
                        std::string) const override {
    json out = json::object();
    for (const CLI::Option* opt : app->get_options()) {
      if (opt->get_lnames().empty() || !opt->get_configurable()) continue;
      const std::string name = opt->get_lnames().front();
      if (opt->count() > 0) {
        const auto& results = opt->results();
        out[name] = results.size() == 1 ? json(results.front()) : json(results);
      } else if (default_also && !opt->get_default_str().empty()) {
        out[name] = opt->get_default_str();
      }
    }
    return out.dump(2);
  }

  std::vector<CLI::ConfigItem> from_config(std::istream& in) const override {
    json doc;
    try {
      doc = json::parse(in);
    } catch (const json::parse_error& e) {
      throw CLI::ConversionError(std::string("config is not valid JSON: ") +
                                 e.what());
    }
    if (!doc.is_object()) {
      throw CLI::ConversionError("config must be a JSON object");
    }
    std::vector<CLI::ConfigItem> items;
    for (const auto& [key, value] : doc.items()) {
      CLI::ConfigItem item;
      item.name = key;
      const auto scalar = [&](const json& v) -> std::string {
        if (v.is_string()) return v.get<std::string>();
        if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
        if (v.is_number()) return v.dump();
        throw CLI::ConversionError("config value for \"" + key +
                                   "\" must be a scalar or an array");
      };
      if (value.is_array()) {
        for (const auto& v : value) item.inputs.push_back(scalar(v));
      } else {
        item.inputs.push_back(scalar(value));
      }
      items.push_back(std::move(item));
    }
    return items;
  }
};

// CLI11 only reads config files attached to the top-level app, so the
// per-command --config is applied by hand. Flags given on the command line
// win over the file.
void apply_config(CLI::App* cmd) {
  const CLI::Option* cfg = cmd->get_config_ptr();
  if (cfg == nullptr || cfg->count() == 0) return;
  const auto path = cfg->as<std::string>();
  for (const auto& item : JsonConfig().from_file(path)) {
    CLI::Option* opt = cmd->get_option_no_throw("--" + item.name);
    if (opt == nullptr) opt = cmd->get_option_no_throw(item.name);
    if (opt == nullptr || opt == cfg) {
      throw CLI::ConversionError("config key \"" + item.name +
                                 "\" is not an option of " + cmd->get_name());
    }
    if (opt->count() > 0) continue;
    opt->add_result(item.inputs);
    opt->run_callback();
  }
}

std::string utc_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Collects what every command records in its manifest.
class Manifest {
 public:
  explicit Manifest(std::string command)
      : command_(std::move(command)),
        started_(utc_now()),
        clock_(std::chrono::steady_clock::now()) {}

  void input(const fs::path& path) {
    inputs_.push_back(
        {{"path", path.string()}, {"sha256", hashing::sha256_file(path)}});
  }
  void output(const fs::path& path) { outputs_.push_back(path.string()); }
  json& config() { return config_; }
  void seed(std::uint64_t s) { seed_ = s; }

  void write(const fs::path& path) const {
    const double seconds = std::chrono::duration<double>(
                               std::chrono::steady_clock::now() - clock_)
                               .count();
    const json doc = {{"schema_version", report::kSchemaVersion},
                      {"command", command_},
                      {"tool_version", ZGPTDA_VERSION},
                      {"config", config_},
                      {"inputs", inputs_},
                      {"outputs", outputs_},
                      {"seed", seed_},
                      {"started_at", started_},
                      {"finished_at", utc_now()},
                      {"wall_clock_seconds", seconds}};
    io::write_atomic(path, doc.dump(2) + "\n");
  }

 private:
  std::string command_;
  std::string started_;
  std::chrono::steady_clock::time_point clock_;
  json config_ = json::object();
  json inputs_ = json::array();
  json outputs_ = json::array();
  std::uint64_t seed_ = 0;
};

fs::path manifest_path(const fs::path& out) {
  fs::path p = out;
  p += ".manifest.json";
  return p;
}

// Options shared by every analysis command.
struct AnalysisFlags {
  std::string unit = "auto";
  std::string embeddings;
  int order = 1;
  double q_ref = 2.0;
  std::size_t taylor_segment = 100;
  std::size_t hilberg_max = 6;
  std::uint64_t seed = 0;

  void add_to(CLI::App* app) {
    app->add_option("--unit", unit, "MFDFA series unit")
        ->check(CLI::IsMember({"auto", "sentence", "word"}))
        ->capture_default_str();
    app->add_option("--embeddings", embeddings,
                    "JSON Lines file of precomputed unit vectors "
                    "(default: built-in hashed trigram embedder)");
    app->add_option("--order", order, "MFDFA detrending order")
        ->check(CLI::Range(1, 3))
        ->capture_default_str();
    app->add_option("--q-ref", q_ref, "q used for the Mandelbrot fit")
        ->capture_default_str();
    app->add_option("--taylor-segment", taylor_segment,
                    "Taylor segment length in words")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app->add_option("--hilberg-max", hilberg_max, "largest Hilberg block")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app->add_option("--seed", seed, "seed for every random component")
        ->capture_default_str();
  }

  compare::AnalysisParams params() const {
    compare::AnalysisParams p;
    p.laws.taylor_segment_len = taylor_segment;
    p.laws.hilberg_max_block = hilberg_max;
    p.mfdfa.order = order;
    p.mfdfa.q_ref = q_ref;
    p.unit_policy = unit == "sentence" ? mfdfa::UnitPolicy::kSentence
                    : unit == "word"
                        ? mfdfa::UnitPolicy::kWord
                        : mfdfa::UnitPolicy::kSentenceWithWordFallback;
    if (!embeddings.empty()) {
      p.provider = std::make_shared<embedding::FileEmbeddings>(
          embedding::FileEmbeddings::load(embeddings));
    }
    return p;
  }

  void record(Manifest& m) const {
    m.config()["unit"] = unit;
    m.config()["embeddings"] = embeddings.empty() ? json(nullptr)
                                                  : json(embeddings);
    m.config()["order"] = order;
    m.config()["q_ref"] = q_ref;
    m.config()["taylor_segment"] = taylor_segment;
    m.config()["hilberg_max"] = hilberg_max;
    m.seed(seed);
    if (!embeddings.empty()) m.input(embeddings);
  }
};

void warn_unfittable(const compare::Evaluation& ev, const std::string& name,
                     std::ostream& err) {
  for (const auto& r : ev.reports) {
    if (!r.fittable()) {
      err << "warning: " << name << ": " << fitkit::law_name(r.law)
          << " not fittable: " << r.reason << "\n";
    }
  }
}

std::string fmt_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

void write_series_csv(const compare::Evaluation& ev, const fs::path& dir) {
  fs::create_directories(dir);
  for (const auto& r : ev.reports) {
    std::string body = "x,y,fitted_y\n";
    for (std::size_t i = 0; i < r.series.size(); ++i) {
      body += fmt_double(r.series.x[i]) + "," + fmt_double(r.series.y[i]) +
              "," + (r.fit ? fmt_double(r.fit->fitted_y[i]) : "") + "\n";
    }
    io::write_atomic(dir / (std::string(fitkit::law_name(r.law)) + ".csv"),
                     body);
  }
  if (!ev.mandelbrot.fluctuation) return;
  const auto& fl = *ev.mandelbrot.fluctuation;
  for (std::size_t i = 0; i < fl.q_grid.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "fq_q%+.1f.csv", fl.q_grid[i]);
    std::string body = "s,F\n";
    for (std::size_t j = 0; j < fl.scales.size(); ++j) {
      body += std::to_string(fl.scales[j]) + "," + fmt_double(fl.f[i][j]) +
              "\n";
    }
    io::write_atomic(dir / name, body);
  }
}

int cmd_analyze(const std::string& input, const std::string& out_path,
                const std::string& series_dir, const AnalysisFlags& flags,
                std::ostream& out, std::ostream& err) {
  Manifest manifest("analyze");
  flags.record(manifest);
  manifest.config()["series_csv"] =
      series_dir.empty() ? json(nullptr) : json(series_dir);

  const auto docs = corpus::load_jsonl(input);
  manifest.input(input);
  const auto params = flags.params();
  const auto ev = compare::evaluate(docs, params);
  warn_unfittable(ev, input, err);

  json doc = {{"schema_version", report::kSchemaVersion},
              {"input", fs::path(input).filename().string()},
              {"corpus", report::evaluation_json(ev)},
              {"embedding_provider", params.embedder().id()},
              {"fuzzy", report::fuzzy_config_json()}};
  io::write_atomic(out_path, doc.dump(2) + "\n");
  manifest.output(out_path);
  if (!series_dir.empty()) {
    write_series_csv(ev, series_dir);
    manifest.output(series_dir);
  }
  manifest.write(manifest_path(out_path));
  out << "wrote " << out_path << "\n";
  return kSuccess;
}

int cmd_compare(const std::string& a, const std::string& b,
                const std::string& out_path, const std::string& csv_path,
                const AnalysisFlags& flags, std::ostream& out,
                std::ostream& err) {
  Manifest manifest("compare");
  flags.record(manifest);
  manifest.config()["csv"] = csv_path.empty() ? json(nullptr) : json(csv_path);

  const auto docs_a = corpus::load_jsonl(a);
  const auto docs_b = corpus::load_jsonl(b);
  manifest.input(a);
  manifest.input(b);
  const auto cr = compare::compare_corpora(docs_a, docs_b, flags.params());
  // Column names: the file stems, disambiguated if they collide.
  std::string name_a = fs::path(a).stem().string();
  std::string name_b = fs::path(b).stem().string();
  if (name_a == name_b) {
    name_a += "_a";
    name_b += "_b";
  }
  warn_unfittable(cr.a, name_a, err);
  warn_unfittable(cr.b, name_b, err);

  const json doc = report::comparison_json(cr, name_a, name_b);
  io::write_atomic(out_path, doc.dump(2) + "\n");
  manifest.output(out_path);
  if (!csv_path.empty()) {
    std::string body = "law,metric," + name_a + "," + name_b + "\n";
    for (std::size_t i = 0; i < cr.a.reports.size(); ++i) {
      const auto& ra = cr.a.reports[i];
      const auto& rb = cr.b.reports[i];
      const auto cell = [](const laws::LawReport& r, int k) -> std::string {
        if (!r.fit) return "";
        const auto& m = r.fit->metrics;
        const double v[] = {m.r2, m.kl, m.js, m.mape, r.fit->exponent};
        return fmt_double(v[k]);
      };
      const char* names[] = {"r2", "kl", "js", "mape", "exponent"};
      for (int k = 0; k < 5; ++k) {
        body += std::string(fitkit::law_name(ra.law)) + "," + names[k] + "," +
                cell(ra, k) + "," + cell(rb, k) + "\n";
      }
    }
    io::write_atomic(csv_path, body);
    manifest.output(csv_path);
  }
  manifest.write(manifest_path(out_path));
  out << "wrote " << out_path << "\n";
  return kSuccess;
}

struct AugmentFlags {
  std::string transport = "mock";
  std::string replay_file;
  std::string record_file;
  std::string endpoint = transport::HttpConfig{}.endpoint;
  std::string prompt_file;
  std::string scores;
  bool keep_partial = false;
  augment::GenerationConfig cfg;
  int timeout_s = 60;
};

std::unique_ptr<transport::Transport> make_transport(const AugmentFlags& f) {
  if (f.transport == "mock") {
    return std::make_unique<transport::MockTransport>(f.cfg.seed);
  }
  if (f.transport == "replay") {
    if (f.replay_file.empty()) {
      throw std::invalid_argument("--transport replay needs --replay-file");
    }
    return transport::ReplayTransport::load(f.replay_file);
  }
  const char* key = std::getenv(transport::kApiKeyEnv);
  return std::make_unique<transport::HttpTransport>(transport::HttpConfig{
      .endpoint = f.endpoint,
      .api_key = key ? key : "",
      .timeout = std::chrono::seconds(f.timeout_s)});
}

int cmd_augment(const std::string& input, const std::string& out_path,
                AugmentFlags flags, const AnalysisFlags& analysis,
                std::ostream& out, std::ostream& err) {
  Manifest manifest("augment");
  analysis.record(manifest);
  flags.cfg.seed = analysis.seed;
  if (!flags.prompt_file.empty()) {
    std::ifstream in(flags.prompt_file, std::ios::binary);
    if (!in) throw LoadError("cannot open prompt file " + flags.prompt_file);
    std::ostringstream ss;
    ss << in.rdbuf();
    flags.cfg.prompt_template = ss.str();
    manifest.input(flags.prompt_file);
  }
  flags.cfg.validate();
  manifest.config()["transport"] = flags.transport;
  manifest.config()["generation"] = report::generation_config_json(flags.cfg);
  manifest.config()["keep_partial"] = flags.keep_partial;
  if (flags.transport == "live") manifest.config()["endpoint"] = flags.endpoint;

  const auto raws = corpus::load_jsonl(input);
  manifest.input(input);
  if (!flags.replay_file.empty() && flags.transport == "replay") {
    manifest.input(flags.replay_file);
  }
  const auto params = analysis.params();
  auto base = make_transport(flags);
  std::optional<transport::RecordingTransport> recorder;
  transport::Transport* tr = base.get();
  if (!flags.record_file.empty()) {
    recorder.emplace(*base);
    tr = &*recorder;
  }

  const fs::path scores_path =
      flags.scores.empty() ? fs::path(out_path + ".scores.json")
                           : fs::path(flags.scores);
  const auto write_outputs = [&](std::span<const augment::AugmentationRun> runs,
                                 bool partial) {
    augment::emit_dataset(raws, runs, out_path);
    manifest.output(out_path);
    const json scores = {{"schema_version", report::kSchemaVersion},
                         {"partial", partial},
                         {"embedding_provider", params.embedder().id()},
                         {"generation", report::generation_config_json(flags.cfg)},
                         {"fuzzy", report::fuzzy_config_json()},
                         {"runs", report::runs_json(runs)}};
    io::write_atomic(scores_path, scores.dump(2) + "\n");
    manifest.output(scores_path);
    if (recorder) {
      recorder->save(flags.record_file);
      manifest.output(flags.record_file);
    }
    manifest.config()["partial"] = partial;
    manifest.write(manifest_path(out_path));
  };

  std::vector<augment::AugmentationRun> runs;
  try {
    runs = augment::augment_all(raws, flags.cfg, *tr, params);
  } catch (const augment::PartialAugmentation& e) {
    err << "error: " << e.what() << "\n";
    if (flags.keep_partial) {
      write_outputs(e.completed(), true);
      err << "kept " << e.completed().size() << " completed runs in "
          << out_path << "\n";
    }
    return kTransportError;
  }
  std::size_t selected = 0;
  for (const auto& run : runs) {
    for (const auto& w : run.warnings) err << "warning: " << w << "\n";
    for (const auto& inst : run.instances) {
      if (!inst.z) {
        err << "warning: " << inst.instance.id
            << ": no law fittable, suitability 0\n";
      }
    }
    selected += run.selected_count;
  }
  write_outputs(runs, false);
  out << "wrote " << out_path << " (" << raws.size() << " raw + " << selected
      << " augmented records)\n";
  return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Scaling-law analysis and suitability-filtered augmentation "
               "of text corpora",
               "zgptda"};
  app.config_formatter(std::make_shared<JsonConfig>());
  app.set_version_flag("--version", std::string(ZGPTDA_VERSION));
  app.require_subcommand(1);

  AnalysisFlags analysis;

  auto* analyze = app.add_subcommand("analyze", "Fit all eight laws to a corpus");
  std::string analyze_input;
  std::string analyze_out = "report.json";
  std::string series_dir;
  analyze->set_config("--config", "", "JSON file mirroring the flags");
  analyze->add_option("input", analyze_input, "JSON Lines dataset")->required();
  analyze->add_option("--out", analyze_out, "report path")->capture_default_str();
  analyze->add_option("--series-csv", series_dir,
                      "directory for per-law series and F_q(s) CSV files");
  analysis.add_to(analyze);

  auto* cmp = app.add_subcommand("compare", "Compare two corpora law by law");
  std::string cmp_a;
  std::string cmp_b;
  std::string cmp_out = "comparison.json";
  std::string cmp_csv;
  cmp->set_config("--config", "", "JSON file mirroring the flags");
  cmp->add_option("a", cmp_a, "first dataset")->required();
  cmp->add_option("b", cmp_b, "second dataset")->required();
  cmp->add_option("--out", cmp_out, "report path")->capture_default_str();
  cmp->add_option("--csv", cmp_csv, "also write the grid as CSV");
  AnalysisFlags cmp_analysis;
  cmp_analysis.add_to(cmp);

  auto* aug = app.add_subcommand("augment",
                                 "Generate, score and select paraphrases");
  std::string aug_input;
  std::string aug_out = "augmented.jsonl";
  AugmentFlags aug_flags;
  AnalysisFlags aug_analysis;
  aug->set_config("--config", "", "JSON file mirroring the flags");
  aug->add_option("input", aug_input, "JSON Lines dataset of raw examples")
      ->required();
  aug->add_option("--out", aug_out, "augmented dataset path")
      ->capture_default_str();
  aug->add_option("--scores", aug_flags.scores,
                  "score report path (default: <out>.scores.json)");
  aug->add_option("--transport", aug_flags.transport, "completion source")
      ->check(CLI::IsMember({"mock", "replay", "live"}))
      ->capture_default_str();
  aug->add_option("--replay-file", aug_flags.replay_file,
                  "recorded completions for --transport replay");
  aug->add_option("--record-file", aug_flags.record_file,
                  "save every completion as a replay file");
  aug->add_option("--endpoint", aug_flags.endpoint, "live endpoint URL")
      ->capture_default_str();
  aug->add_option("--model", aug_flags.cfg.model)->capture_default_str();
  aug->add_option("--temperature", aug_flags.cfg.temperature)
      ->capture_default_str();
  aug->add_option("--timeout", aug_flags.timeout_s, "live request timeout (s)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  aug->add_option("--n", aug_flags.cfg.n_instances, "instances per raw example")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  aug->add_option("--fraction", aug_flags.cfg.top_fraction,
                  "fraction of instances kept")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  aug->add_option("--max-in-flight", aug_flags.cfg.max_in_flight,
                  "concurrent transport requests")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  aug->add_option("--retries", aug_flags.cfg.retry.max_attempts,
                  "attempts per request")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  aug->add_option("--prompt-file", aug_flags.prompt_file,
                  "prompt template with {n} and {text} placeholders");
  aug->add_flag("--keep-partial", aug_flags.keep_partial,
                "write completed runs when generation fails");
  aug_analysis.add_to(aug);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
    for (CLI::App* cmd : {analyze, cmp, aug}) {
      if (cmd->parsed()) apply_config(cmd);
    }
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kInputError;
  }

  try {
    if (analyze->parsed()) {
      return cmd_analyze(analyze_input, analyze_out, series_dir, analysis, out,
                         err);
    }
    if (cmp->parsed()) {
      return cmd_compare(cmp_a, cmp_b, cmp_out, cmp_csv, cmp_analysis, out,
                         err);
    }
    return cmd_augment(aug_input, aug_out, aug_flags, aug_analysis, out, err);
  } catch (const transport::TransportError& e) {
    err << "error: " << e.what() << "\n";
    return kTransportError;
  } catch (const ProviderError& e) {
    err << "error: " << e.what() << "\n";
    return kTransportError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
}

}  // namespace zgptda::cli
