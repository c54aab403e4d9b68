// Copyright 2026 The Entity Pulse Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "entity_pulse/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <json.hpp>
#include <sstream>

#include "entity_pulse/corpus.hpp"
#include "entity_pulse/entity_index.hpp"
#include "entity_pulse/io.hpp"
#include "entity_pulse/measures.hpp"
#include "entity_pulse/output.hpp"
#include "entity_pulse/relations.hpp"
#include "entity_pulse/spam_filter.hpp"
#include "entity_pulse/synth.hpp"

namespace entity_pulse::cli {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

// Bad flag values found after CLI11 has accepted the command line.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Diagnostics {
 public:
  explicit Diagnostics(std::ostream& stream) : stream_(stream) {}

  void emit(std::string_view level, std::string_view code, std::string_view message) {
    json line = json::object();
    line["level"] = level;
    line["code"] = code;
    line["message"] = message;
    stream_ << line.dump() << '\n';
  }
  void warning(std::string_view code, std::string_view message) { emit("warning", code, message); }
  void error(std::string_view code, std::string_view message) { emit("error", code, message); }

 private:
  std::ostream& stream_;
};

struct Options {
  std::string input;
  std::string output;
  std::string rejects;
  std::optional<double> min_confidence;
  double alpha = 1.0;
  std::string spam_model;
  std::string granularity;
  double delta = 2.0;
  bool sketch_users = false;
  std::string index;
  std::string entity;
  std::string from;
  std::string to;
  std::string measure = "popularity_cu";
  std::size_t k = 10;
  std::string direction = "high";
  std::string other;
  std::vector<std::string> set;
  std::string period;
  std::string kind = "direct";
  bool literal = false;
  std::string variant = "plain";
  std::uint64_t min_support = 1;
  std::string graph;
  std::string format = "csv";
  std::string spec;
  std::string manifest;
  std::string labeled_output;
  std::size_t labeled_docs = 1000;
  double labeled_overlap = 0.2;
  double labeled_spam_fraction = 0.5;
  std::uint64_t labeled_seed = 1;
  std::string config;
};

void emit(const Options& opt, std::ostream& out, const std::function<void(std::ostream&)>& writer) {
  if (opt.output.empty()) {
    writer(out);
  } else {
    write_file_atomic(opt.output, writer);
  }
}

std::string read_text_file(const fs::path& path) {
  auto in = open_input(path);
  std::ostringstream buf;
  buf << in->rdbuf();
  if (in->bad()) throw IoError("cannot read " + path.string());
  return buf.str();
}

OutputFormat output_format(const Options& opt) {
  auto f = parse_output_format(opt.format);
  if (!f) throw UsageError("--format must be csv or json");
  return *f;
}

Measure measure_of(const Options& opt) {
  auto m = parse_measure(opt.measure);
  if (!m) throw UsageError("unknown measure '" + opt.measure + "'");
  return *m;
}

EntityIndex load_index(const Options& opt) {
  EntityIndex index = EntityIndex::load(opt.index);
  if (!opt.granularity.empty()) {
    auto g = parse_granularity(opt.granularity);
    if (!g) throw UsageError("unknown granularity '" + opt.granularity + "'");
    if (*g != index.granularity()) {
      throw std::invalid_argument("index is partitioned by " +
                                  std::string(to_string(index.granularity())) + ", not " +
                                  opt.granularity);
    }
  }
  return index;
}

Timestamp period_start(std::string_view text, Granularity g, std::string_view flag) {
  auto t = parse_date_prefix(text);
  if (!t) throw UsageError(std::string(flag) + " expects YYYY, YYYY-MM or YYYY-MM-DD");
  return assign(*t, g).start;
}

// --from and --to name periods; --to is the first period left out. Missing
// bounds default to the indexed span.
TimeWindow query_window(const Options& opt, const EntityIndex& index) {
  const Granularity g = index.granularity();
  TimeWindow w{};
  const auto slices = index.slices();
  if (!slices.empty()) w = {slices.front().period.start, slices.back().period.end};
  if (!opt.from.empty()) w.from = period_start(opt.from, g, "--from");
  if (!opt.to.empty()) w.to = period_start(opt.to, g, "--to");
  if (w.to < w.from) throw UsageError("--to precedes --from");
  return w;
}

Period query_period(const Options& opt, const EntityIndex& index) {
  if (opt.period.empty()) throw UsageError("--period is required");
  auto t = parse_date_prefix(opt.period);
  if (!t) throw UsageError("--period expects YYYY, YYYY-MM or YYYY-MM-DD");
  return assign(*t, index.granularity());
}

void warn_unknown(const EntityIndex& index, std::string_view entity, Diagnostics& diag) {
  if (!index.find_entity(entity)) {
    diag.warning("unknown_entity", "entity '" + std::string(entity) + "' is not in the index");
  }
}

IngestResult ingest_input(const Options& opt, Diagnostics& diag) {
  IngestOptions io;
  io.min_confidence = opt.min_confidence;
  IngestResult result = ingest_file(opt.input, io);
  if (!result.rejections.empty()) {
    diag.warning("rejected_rows",
                 std::to_string(result.rejections.size()) + " malformed rows rejected");
  }
  if (!opt.rejects.empty()) {
    write_file_atomic(opt.rejects,
                      [&](std::ostream& os) { write_rejections(os, result.rejections); });
  }
  return result;
}

Corpus apply_spam_model(Corpus corpus, const std::string& model_path, Diagnostics& diag) {
  if (model_path.empty()) return corpus;
  const auto model = NaiveBayesModel::from_json(read_text_file(model_path));
  FilterResult filtered = filter_corpus(corpus, model);
  if (!filtered.applied) {
    diag.warning("no_text", "corpus carries no text column; spam filter skipped");
    return corpus;
  }
  diag.emit("info", "spam_removed", std::to_string(filtered.removed_count) + " texts removed");
  return std::move(filtered.corpus);
}

int cmd_ingest(const Options& opt, std::ostream& out, Diagnostics& diag) {
  IngestResult result = ingest_input(opt, diag);
  if (!opt.output.empty()) {
    write_file_atomic(opt.output, [&](std::ostream& os) { write_corpus(os, result.corpus); });
  }
  out << stats_json(result.stats) << '\n';
  return kOk;
}

int cmd_train_spam(const Options& opt, std::ostream& out, Diagnostics&) {
  auto in = open_input(opt.input);
  const auto examples = read_labeled_csv(*in);
  const auto model = NaiveBayesModel::train(examples, opt.alpha);
  const std::string text = model.to_json();
  emit(opt, out, [&](std::ostream& os) { os << text << '\n'; });
  return kOk;
}

int cmd_filter(const Options& opt, std::ostream& out, Diagnostics& diag) {
  IngestResult result = ingest_input(opt, diag);
  const auto model = NaiveBayesModel::from_json(read_text_file(opt.spam_model));
  FilterResult filtered = filter_corpus(result.corpus, model);
  if (!filtered.applied) {
    diag.warning("no_text", "corpus carries no text column; nothing filtered");
  }
  const Corpus& kept = filtered.applied ? filtered.corpus : result.corpus;
  emit(opt, out, [&](std::ostream& os) { write_corpus(os, kept); });
  json summary = {{"kept", kept.size()}, {"removed", filtered.removed_count},
                  {"applied", filtered.applied}};
  diag.emit("info", "filter_summary", summary.dump());
  return kOk;
}

int cmd_index(const Options& opt, std::ostream& out, Diagnostics& diag) {
  BuildOptions build;
  if (!opt.granularity.empty()) {
    auto g = parse_granularity(opt.granularity);
    if (!g) throw UsageError("unknown granularity '" + opt.granularity + "'");
    build.granularity = *g;
  }
  build.delta = opt.delta;
  build.sketch_users = opt.sketch_users;
  IngestResult result = ingest_input(opt, diag);
  const Corpus corpus = apply_spam_model(std::move(result.corpus), opt.spam_model, diag);
  const EntityIndex index = EntityIndex::build(corpus, build);
  index.save(opt.output);
  out << stats_json(corpus.stats(result.rejections.size())) << '\n';
  return kOk;
}

int cmd_inspect(const Options& opt, std::ostream& out, Diagnostics&) {
  const EntityIndex index = EntityIndex::load(opt.index);
  const std::string doc = inspect_json(index, fs::file_size(opt.index));
  emit(opt, out, [&](std::ostream& os) { os << doc << '\n'; });
  return kOk;
}

int cmd_series(const Options& opt, std::ostream& out, Diagnostics& diag) {
  const OutputFormat format = output_format(opt);
  const Measure measure = measure_of(opt);
  const EntityIndex index = load_index(opt);
  const TimeWindow window = query_window(opt, index);
  warn_unknown(index, opt.entity, diag);
  const auto points = series(index, opt.entity, window, measure);
  emit(opt, out, [&](std::ostream& os) { write_series(os, points, measure, format); });
  return kOk;
}

int cmd_topk(const Options& opt, std::ostream& out, Diagnostics& diag) {
  const OutputFormat format = output_format(opt);
  const Measure measure = measure_of(opt);
  auto direction = parse_direction(opt.direction);
  if (!direction) throw UsageError("--direction must be high or low");
  const EntityIndex index = load_index(opt);
  const TimeWindow window = query_window(opt, index);
  warn_unknown(index, opt.entity, diag);
  const auto ranked = top_k_periods(index, opt.entity, window, measure, opt.k, *direction);
  emit(opt, out, [&](std::ostream& os) { write_ranked_periods(os, ranked, format); });
  return kOk;
}

int cmd_connectedness(const Options& opt, std::ostream& out, Diagnostics& diag) {
  const OutputFormat format = output_format(opt);
  if (opt.other.empty() == opt.set.empty()) {
    throw UsageError("give exactly one of --other or --set");
  }
  if (opt.kind != "direct" && opt.kind != "indirect") {
    throw UsageError("--kind must be direct or indirect");
  }
  const EntityIndex index = load_index(opt);
  const Period period = query_period(opt, index);
  warn_unknown(index, opt.entity, diag);

  ConnectednessRow row;
  row.entity = opt.entity;
  row.period = period;
  if (!opt.set.empty()) {
    for (const auto& member : opt.set) warn_unknown(index, member, diag);
    for (std::size_t i = 0; i < opt.set.size(); ++i) {
      if (i) row.other += ';';
      row.other += opt.set[i];
    }
    row.kind = "set";
    row.value = connectedness_to_set(index, opt.entity, opt.set, period);
  } else {
    warn_unknown(index, opt.other, diag);
    row.other = opt.other;
    if (opt.kind == "direct") {
      row.kind = "direct";
      row.value = direct_connectedness(index, opt.entity, opt.other, period);
    } else {
      row.kind = opt.literal ? "indirect-literal" : "indirect";
      row.value = indirect_connectedness(
          index, opt.entity, opt.other, period,
          opt.literal ? NeighborMode::kLiteral : NeighborMode::kExcludeQueryPair);
    }
  }
  emit(opt, out, [&](std::ostream& os) { write_connectedness(os, row, format); });
  return kOk;
}

int cmd_network(const Options& opt, std::ostream& out, Diagnostics& diag) {
  const OutputFormat format = output_format(opt);
  auto variant = parse_network_variant(opt.variant);
  if (!variant) throw UsageError("--variant must be plain, positive or negative");
  const EntityIndex index = load_index(opt);
  const Period period = query_period(opt, index);
  warn_unknown(index, opt.entity, diag);
  RankedNetwork network;
  if (*variant == NetworkVariant::kPlain) {
    network = k_network(index, opt.entity, period, opt.k);
  } else {
    SignedNetworkOptions signed_opts;
    signed_opts.delta = opt.delta;
    signed_opts.min_support = opt.min_support;
    network = signed_k_network(index, opt.entity, period, opt.k, *variant, signed_opts);
  }
  if (!opt.graph.empty()) {
    write_file_atomic(opt.graph + ".nodes.csv",
                      [&](std::ostream& os) { write_network_nodes(os, network); });
    write_file_atomic(opt.graph + ".edges.csv",
                      [&](std::ostream& os) { write_network_edges(os, network); });
  }
  emit(opt, out, [&](std::ostream& os) { write_network(os, network, format); });
  return kOk;
}

int cmd_generate(const Options& opt, std::ostream& out, Diagnostics&) {
  if (opt.spec.empty() && opt.labeled_output.empty()) {
    throw UsageError("give --spec and/or --labeled-output");
  }
  if (!opt.spec.empty()) {
    const ScenarioSpec spec = parse_scenario(read_text_file(opt.spec));
    const GeneratedScenario scenario = generate(spec);
    emit(opt, out, [&](std::ostream& os) { write_records(os, scenario.records); });
    if (!opt.manifest.empty()) {
      write_file_atomic(opt.manifest,
                        [&](std::ostream& os) { os << scenario.manifest_json << '\n'; });
    }
  }
  if (!opt.labeled_output.empty()) {
    LabeledCorpusSpec labeled;
    labeled.seed = opt.labeled_seed;
    labeled.documents = opt.labeled_docs;
    labeled.overlap = opt.labeled_overlap;
    labeled.spam_fraction = opt.labeled_spam_fraction;
    if (!(labeled.overlap >= 0.0 && labeled.overlap < 1.0)) {
      throw UsageError("--labeled-overlap must lie in [0, 1)");
    }
    if (!(labeled.spam_fraction >= 0.0 && labeled.spam_fraction <= 1.0)) {
      throw UsageError("--labeled-spam-fraction must lie in [0, 1]");
    }
    const auto docs = generate_labeled(labeled);
    write_file_atomic(opt.labeled_output,
                      [&](std::ostream& os) { write_labeled_csv(os, docs); });
  }
  return kOk;
}

struct Command {
  CLI::App* app;
  std::function<int(const Options&, std::ostream&, Diagnostics&)> fn;
};

void add_output(CLI::App* sub, Options& opt) {
  sub->add_option("--output,-o", opt.output, "Output file (default: standard output)");
}
void add_format(CLI::App* sub, Options& opt) {
  sub->add_option("--format", opt.format, "csv or json")->capture_default_str();
}
void add_index(CLI::App* sub, Options& opt) {
  sub->add_option("--index", opt.index, "Index file")->required();
  sub->add_option("--granularity", opt.granularity,
                  "Expected index granularity (checked against the index)");
}
void add_ingest_inputs(CLI::App* sub, Options& opt) {
  sub->add_option("--input,-i", opt.input, "Annotated corpus CSV (.gz accepted)")->required();
  sub->add_option("--rejects", opt.rejects, "Write rejected rows here");
  sub->add_option("--min-confidence", opt.min_confidence,
                  "Drop mentions with confidence below this value");
}

const CLI::Validator kAtLeastOne(
    [](std::string& value) -> std::string {
      std::uint64_t n = 0;
      if (!CLI::detail::lexical_cast(value, n) || n == 0) return "must be a positive integer";
      return {};
    },
    "INT>=1");

// Appends config-file values for flags the command line did not set.
void merge_config(std::vector<std::string>& args, const CLI::App& sub, Diagnostics& diag) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].starts_with("--config=")) path = args[i].substr(9);
  }
  if (path.empty()) return;
  json doc;
  try {
    doc = json::parse(read_text_file(path));
  } catch (const json::exception& e) {
    throw UsageError("config " + path + ": " + e.what());
  }
  if (!doc.is_object()) throw UsageError("config " + path + ": expected a JSON object");

  auto present = [&](const std::string& flag) {
    return std::any_of(args.begin(), args.end(), [&](const std::string& a) {
      return a == flag || a.starts_with(flag + "=");
    });
  };
  auto scalar = [&](const std::string& key, const json& v) -> std::string {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number() || v.is_boolean()) return v.dump();
    throw UsageError("config key '" + key + "' has an unsupported value");
  };

  std::vector<std::string> extra;
  for (const auto& [key, value] : doc.items()) {
    const std::string flag = "--" + key;
    const CLI::Option* option = sub.get_option_no_throw(flag);
    if (option == nullptr || key == "config") {
      diag.warning("config_ignored", "config key '" + key + "' does not apply to " + sub.get_name());
      continue;
    }
    if (present(flag)) continue;
    if (option->get_type_size() == 0) {
      if (value.is_boolean() && value.get<bool>()) extra.push_back(flag);
      continue;
    }
    extra.push_back(flag);
    if (value.is_array()) {
      for (const auto& item : value) extra.push_back(scalar(key, item));
    } else {
      extra.push_back(scalar(key, value));
    }
  }
  args.insert(args.end(), extra.begin(), extra.end());
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& diag_stream) {
  Diagnostics diag(diag_stream);
  Options opt;
  CLI::App app{"Entity-centric temporal analytics over annotated short-text archives", "epx"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  std::vector<Command> commands;
  auto add = [&](const char* name, const char* about, auto fn) {
    CLI::App* sub = app.add_subcommand(name, about);
    sub->add_option("--config", opt.config, "JSON file of flag defaults (flags win)");
    commands.push_back({sub, fn});
    return sub;
  };

  {
    auto* sub = add("ingest", "Validate and normalise an annotated corpus", cmd_ingest);
    add_ingest_inputs(sub, opt);
    sub->add_option("--output,-o", opt.output, "Write the canonical corpus CSV here");
  }
  {
    auto* sub = add("train-spam", "Train the spam classifier on label,text CSV", cmd_train_spam);
    sub->add_option("--input,-i", opt.input, "Labeled CSV")->required();
    sub->add_option("--alpha", opt.alpha, "Laplace smoothing")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    add_output(sub, opt);
  }
  {
    auto* sub = add("filter", "Remove texts the spam model labels spam", cmd_filter);
    add_ingest_inputs(sub, opt);
    sub->add_option("--spam-model", opt.spam_model, "Model JSON from train-spam")->required();
    add_output(sub, opt);
  }
  {
    auto* sub = add("index", "Build the time-partitioned entity index", cmd_index);
    add_ingest_inputs(sub, opt);
    sub->add_option("--output,-o", opt.output, "Index file to write")->required();
    sub->add_option("--granularity", opt.granularity, "day, week, month or year (default month)");
    sub->add_option("--delta", opt.delta, "Strong-attitude threshold")
        ->capture_default_str()
        ->check(CLI::Range(0.0, 4.0));
    sub->add_flag("--sketch-users", opt.sketch_users,
                  "Approximate distinct users with HyperLogLog");
    sub->add_option("--spam-model", opt.spam_model, "Filter spam before indexing");
  }
  {
    auto* sub = add("inspect", "Print index section statistics as JSON", cmd_inspect);
    sub->add_option("--index", opt.index, "Index file")->required();
    add_output(sub, opt);
  }
  {
    auto* sub = add("series", "Measure time series of one entity", cmd_series);
    add_index(sub, opt);
    sub->add_option("--entity,-e", opt.entity, "Entity id")->required();
    sub->add_option("--from", opt.from, "First period (default: start of index)");
    sub->add_option("--to", opt.to, "First period not included (default: end of index)");
    sub->add_option("--measure,-m", opt.measure, "Measure name")->capture_default_str();
    add_format(sub, opt);
    add_output(sub, opt);
  }
  {
    auto* sub = add("topk", "Top-k periods of an entity under a measure", cmd_topk);
    add_index(sub, opt);
    sub->add_option("--entity,-e", opt.entity, "Entity id")->required();
    sub->add_option("--from", opt.from, "First period (default: start of index)");
    sub->add_option("--to", opt.to, "First period not included (default: end of index)");
    sub->add_option("--measure,-m", opt.measure, "Measure name")->capture_default_str();
    sub->add_option("--k,-k", opt.k, "Number of periods")
        ->capture_default_str()
        ->check(kAtLeastOne);
    sub->add_option("--direction", opt.direction, "high or low")->capture_default_str();
    add_format(sub, opt);
    add_output(sub, opt);
  }
  {
    auto* sub = add("connectedness", "Connectedness of an entity to another or to a set",
                    cmd_connectedness);
    add_index(sub, opt);
    sub->add_option("--entity,-e", opt.entity, "Source entity id")->required();
    sub->add_option("--other", opt.other, "Target entity id");
    sub->add_option("--set", opt.set, "Target entity ids (direct connectedness to the set)")
        ->expected(1, CLI::detail::expected_max_vector_size);
    sub->add_option("--period", opt.period, "Period (YYYY, YYYY-MM or YYYY-MM-DD)")->required();
    sub->add_option("--kind", opt.kind, "direct or indirect")->capture_default_str();
    sub->add_flag("--literal", opt.literal,
                  "Indirect: keep the two query entities in the neighbour sets");
    add_format(sub, opt);
    add_output(sub, opt);
  }
  {
    auto* sub = add("network", "k-network of an entity in a period", cmd_network);
    add_index(sub, opt);
    sub->add_option("--entity,-e", opt.entity, "Entity id")->required();
    sub->add_option("--period", opt.period, "Period (YYYY, YYYY-MM or YYYY-MM-DD)")->required();
    sub->add_option("--k,-k", opt.k, "Network size")
        ->capture_default_str()
        ->check(kAtLeastOne);
    sub->add_option("--variant", opt.variant, "plain, positive or negative")
        ->capture_default_str();
    sub->add_option("--delta", opt.delta, "Mean pair attitude threshold for signed variants")
        ->capture_default_str()
        ->check(CLI::Range(0.0, 4.0));
    sub->add_option("--min-support", opt.min_support, "Shared texts required per candidate")
        ->capture_default_str()
        ->check(kAtLeastOne);
    sub->add_option("--graph", opt.graph, "Also write PREFIX.nodes.csv and PREFIX.edges.csv");
    add_format(sub, opt);
    add_output(sub, opt);
  }
  {
    auto* sub = add("generate", "Generate a synthetic corpus with planted events", cmd_generate);
    sub->add_option("--spec", opt.spec, "Scenario JSON");
    sub->add_option("--output,-o", opt.output, "Corpus CSV (default: standard output)");
    sub->add_option("--manifest", opt.manifest, "Write the planted-event manifest here");
    sub->add_option("--labeled-output", opt.labeled_output, "Write a labeled spam/ham CSV here");
    sub->add_option("--labeled-docs", opt.labeled_docs, "Labeled documents")
        ->capture_default_str()
        ->check(kAtLeastOne);
    sub->add_option("--labeled-overlap", opt.labeled_overlap, "Shared vocabulary fraction")
        ->capture_default_str();
    sub->add_option("--labeled-spam-fraction", opt.labeled_spam_fraction, "Share of spam documents")
        ->capture_default_str();
    sub->add_option("--labeled-seed", opt.labeled_seed, "Labeled corpus seed")
        ->capture_default_str();
  }

  std::vector<std::string> argv(args.begin() + (args.empty() ? 0 : 1), args.end());
  try {
    if (!argv.empty()) {
      for (const auto& c : commands) {
        if (c.app->get_name() == argv.front()) {
          merge_config(argv, *c.app, diag);
          break;
        }
      }
    }
    std::reverse(argv.begin(), argv.end());
    app.parse(argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    for (const auto* sub : app.get_subcommands()) out << sub->help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    diag.error("usage", e.what());
    return kUsage;
  } catch (const UsageError& e) {
    diag.error("usage", e.what());
    return kUsage;
  } catch (const std::exception& e) {
    diag.error("config", e.what());
    return kUsage;
  }

  for (const auto& c : commands) {
    if (!c.app->parsed()) continue;
    try {
      return c.fn(opt, out, diag);
    } catch (const UsageError& e) {
      diag.error("usage", e.what());
      return kUsage;
    } catch (const SpecError& e) {
      for (const auto& d : e.diagnostics()) diag.error("invalid_spec", d);
      return kFailure;
    } catch (const IngestError& e) {
      diag.error("ingest", std::string(e.what()) + " (line " + std::to_string(e.line()) +
                               ", byte " + std::to_string(e.offset()) + ")");
      return kFailure;
    } catch (const IndexFormatError& e) {
      diag.error("index_format", e.what());
      return kFailure;
    } catch (const ModelFormatError& e) {
      diag.error("model_format", e.what());
      return kFailure;
    } catch (const IoError& e) {
      diag.error("io", e.what());
      return kFailure;
    } catch (const std::exception& e) {
      diag.error("failed", e.what());
      return kFailure;
    }
  }
  return kUsage;
}

}  // namespace entity_pulse::cli
