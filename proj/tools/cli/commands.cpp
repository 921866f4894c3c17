#include "cli/commands.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "tagtime/ingestion.hpp"
#include "tagtime/recommenders.hpp"
#include "tagtime/report.hpp"
#include "tagtime/split.hpp"

namespace tagtime::cli {

namespace fs = std::filesystem;

int exit_code_for(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::kConfig: return kExitConfig;
    case ErrorKind::kEmptyDataset:
    case ErrorKind::kFormat:
    case ErrorKind::kNoProfile: return kExitData;
    case ErrorKind::kIo: return kExitIo;
  }
  return kExitUnexpected;
}

namespace {

std::ofstream open_output(const fs::path& path) {
  std::error_code ec;
  if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::kIo, "cannot write '" + path.string() + "'");
  return out;
}

void finish(std::ofstream& out, const fs::path& path) {
  out.flush();
  if (!out) throw Error(ErrorKind::kIo, "failed writing '" + path.string() + "'");
}

std::string format_score(double score) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", score);
  return buf;
}

void write_recommendations(const fs::path& path, const RunConfig& config,
                           const Folksonomy& train, const std::string& fingerprint,
                           std::span<const RankedList> lists) {
  auto out = open_output(path);
  write_provenance(out, config.hash(), fingerprint);
  out << "user\titem\trank\tscore\n";
  const auto& v = train.vocabulary();
  for (const auto& list : lists) {
    for (std::size_t r = 0; r < list.items.size(); ++r) {
      out << v.users.name(list.user) << '\t' << v.items.name(list.items[r].item) << '\t'
          << r + 1 << '\t' << format_score(list.items[r].score) << '\n';
    }
  }
  finish(out, path);
}

}  // namespace

IngestResult cmd_ingest(const RunConfig& config, const fs::path& out_dir) {
  config.validate();
  const auto pre = preprocess(config.dataset);
  IngestResult result;
  result.stats = pre.folksonomy.stats();
  result.fingerprint = pre.folksonomy.fingerprint();
  result.snapshot = out_dir / "snapshot.tsv";
  auto out = open_output(result.snapshot);
  out << "# config_hash=" << config.hash() << '\n';
  write_snapshot(out, pre.folksonomy);
  finish(out, result.snapshot);
  return result;
}

SplitResult cmd_split(const RunConfig& config, const fs::path& out_dir) {
  config.validate();
  const auto pre = preprocess(config.dataset);
  const auto fingerprint = pre.folksonomy.fingerprint();
  auto split = chronological_split(pre.folksonomy, config.test_fraction);
  const auto hash = config.hash();
  const auto& v = split.train.vocabulary();

  {
    const auto path = out_dir / "train.tsv";
    auto out = open_output(path);
    out << "# config_hash=" << hash << '\n';
    out << "# dataset_fingerprint=" << fingerprint << '\n';
    write_snapshot(out, split.train);
    finish(out, path);
  }
  {
    const auto path = out_dir / "test.tsv";
    auto out = open_output(path);
    write_provenance(out, hash, fingerprint);
    out << "user\titem\n";
    for (UserId u = 0; u < split.test.size(); ++u)
      for (auto item : split.test[u]) out << v.users.name(u) << '\t' << v.items.name(item) << '\n';
    finish(out, path);
  }
  {
    const auto path = out_dir / "tref.tsv";
    auto out = open_output(path);
    write_provenance(out, hash, fingerprint);
    out << "user\treference_time\n";
    for (UserId u = 0; u < split.reference_time.size(); ++u)
      if (split.reference_time[u] >= 0)
        out << v.users.name(u) << '\t' << split.reference_time[u] << '\n';
    finish(out, path);
  }
  return split;
}

EvalReport cmd_run(const RunConfig& config, const fs::path& out_dir) {
  config.validate();
  const auto pre = preprocess(config.dataset);
  const auto split = chronological_split(pre.folksonomy, config.test_fraction);
  const auto users = split.evaluable_users();

  EvalReport report;
  report.dataset_fingerprint = pre.folksonomy.fingerprint();
  report.config_hash = config.hash();
  report.config_echo = config.echo();
  report.seed = config.seed;

  EvalOptions options;
  options.workers = config.workers;
  options.unservable = config.unservable;
  for (const auto& rc : config.algorithms) {
    const auto recommender = make_recommender(split.train, rc);
    const auto lists = recommend_all(*recommender, users, kMaxCutoff, config.workers);
    report.algorithms.push_back(evaluate_lists(rc.algorithm, lists, split, options));
    write_recommendations(
        out_dir / ("recommendations_" + std::string(to_string(rc.algorithm)) + ".tsv"), config,
        split.train, report.dataset_fingerprint, lists);
  }

  const std::pair<const char*, void (*)(std::ostream&, const EvalReport&)> files[] = {
      {"report.txt", write_table},
      {"metrics.csv", write_metrics_csv},
      {"summary.csv", write_summary_csv},
  };
  for (const auto& [name, writer] : files) {
    const auto path = out_dir / name;
    auto out = open_output(path);
    writer(out, report);
    finish(out, path);
  }
  return report;
}

void cmd_recommend(const RunConfig& config, const fs::path& out_dir) {
  config.validate();
  const auto pre = preprocess(config.dataset);
  const auto& f = pre.folksonomy;
  std::vector<UserId> users;
  for (UserId u = 0; u < f.user_space(); ++u)
    if (!f.user_posts(u).empty()) users.push_back(u);
  for (const auto& rc : config.algorithms) {
    const auto recommender = make_recommender(f, rc);
    const auto lists = recommend_all(*recommender, users, rc.list_length, config.workers);
    write_recommendations(
        out_dir / ("recommendations_" + std::string(to_string(rc.algorithm)) + ".tsv"), config,
        f, f.fingerprint(), lists);
  }
}

std::vector<fs::path> cmd_plotdata(const fs::path& report, const fs::path& out_dir) {
  const auto path = fs::is_directory(report) ? report / "metrics.csv" : report;
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIo, "cannot read report '" + path.string() + "'");
  return write_plot_series(read_metrics_csv(in), out_dir);
}

void cmd_synth(const SyntheticSpec& spec, const fs::path& out_file) {
  const auto rows = generate_synthetic(spec);
  auto out = open_output(out_file);
  out << "# synthetic folksonomy seed=" << spec.seed << " users=" << spec.users
      << " items=" << spec.items << " tags=" << spec.tags << '\n';
  for (const auto& r : rows)
    out << r.user << '\t' << r.item << '\t' << r.tag << '\t' << r.timestamp << '\n';
  finish(out, out_file);
}

namespace {

struct CommonOptions {
  std::string config;
  std::string input;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> workers;
};

void add_common(CLI::App& cmd, CommonOptions& o, bool with_workers) {
  auto* config = cmd.add_option("--config", o.config, "Run configuration (JSON)");
  auto* input = cmd.add_option("--input", o.input, "Tag-assignment file, default format");
  config->excludes(input);
  cmd.add_option("--out", o.out, "Output directory");
  cmd.add_option("--seed", o.seed, "RNG seed (overrides the config)");
  if (with_workers) cmd.add_option("--workers", o.workers, "Worker threads");
}

RunConfig resolve(const CommonOptions& o) {
  if (o.config.empty() && o.input.empty())
    throw Error(ErrorKind::kConfig, "either --config or --input is required");
  auto cfg = o.config.empty() ? default_run_config(o.input) : load_run_config(o.config);
  if (o.seed) {
    cfg.seed = *o.seed;
    cfg.dataset.seed = *o.seed;
  }
  if (o.workers) cfg.workers = *o.workers;
  if (!o.out.empty()) cfg.output_dir = o.out;
  return cfg;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Tag- and time-aware item recommendation toolkit"};
  app.require_subcommand(1);

  CommonOptions ingest_opts, split_opts, run_opts, rec_opts;
  std::vector<std::string> rec_algorithms;
  auto* ingest = app.add_subcommand("ingest", "Preprocess a dump and write a snapshot");
  add_common(*ingest, ingest_opts, false);
  auto* split = app.add_subcommand("split", "Write the chronological train/test split");
  add_common(*split, split_opts, false);
  auto* run = app.add_subcommand("run", "Run and evaluate every configured algorithm");
  add_common(*run, run_opts, true);
  auto* recommend = app.add_subcommand("recommend", "Recommend for every user");
  add_common(*recommend, rec_opts, true);
  recommend->add_option("--algorithm", rec_algorithms, "Restrict to these algorithms");

  std::string report_path, plot_out = "plots";
  auto* plotdata = app.add_subcommand("plotdata", "Emit per-k series for plotting");
  plotdata->add_option("--report", report_path, "Run directory or metrics.csv")->required();
  plotdata->add_option("--out", plot_out, "Output directory for series files");

  SyntheticSpec synth_spec;
  std::string synth_out;
  auto* synth = app.add_subcommand("synth", "Generate a synthetic folksonomy");
  synth->add_option("--users", synth_spec.users);
  synth->add_option("--items", synth_spec.items);
  synth->add_option("--tags", synth_spec.tags);
  synth->add_option("--topics", synth_spec.topics);
  synth->add_option("--seed", synth_spec.seed);
  synth->add_option("--out", synth_out, "Output file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*ingest) {
      const auto cfg = resolve(ingest_opts);
      const auto result = cmd_ingest(cfg, cfg.output_dir);
      out << result.stats.to_string() << '\n';
      out << "fingerprint " << result.fingerprint << '\n';
    } else if (*split) {
      const auto cfg = resolve(split_opts);
      const auto result = cmd_split(cfg, cfg.output_dir);
      out << "evaluable users " << result.evaluable_users().size() << '\n';
    } else if (*run) {
      const auto cfg = resolve(run_opts);
      const auto report = cmd_run(cfg, cfg.output_dir);
      write_table(out, report);
    } else if (*recommend) {
      auto cfg = resolve(rec_opts);
      if (!rec_algorithms.empty()) {
        std::vector<RecommenderConfig> chosen;
        for (const auto& name : rec_algorithms) {
          const auto algo = parse_algorithm(name);
          if (!algo) throw Error(ErrorKind::kConfig, "unknown algorithm '" + name + "'");
          auto it = std::find_if(cfg.algorithms.begin(), cfg.algorithms.end(),
                                 [&](const RecommenderConfig& rc) { return rc.algorithm == *algo; });
          RecommenderConfig rc;
          rc.algorithm = *algo;
          chosen.push_back(it != cfg.algorithms.end() ? *it : rc);
        }
        cfg.algorithms = std::move(chosen);
      }
      cmd_recommend(cfg, cfg.output_dir);
    } else if (*plotdata) {
      for (const auto& p : cmd_plotdata(report_path, plot_out)) out << p.string() << '\n';
    } else if (*synth) {
      cmd_synth(synth_spec, synth_out);
    }
  } catch (const Error& e) {
    err << "error: " << to_string(e.kind()) << ": " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUnexpected;
  }
  return kExitOk;
}

}  // namespace tagtime::cli
