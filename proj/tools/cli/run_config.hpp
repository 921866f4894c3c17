#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "tagtime/eval.hpp"
#include "tagtime/ingestion.hpp"
#include "tagtime/recommenders.hpp"

namespace tagtime::cli {

/// Declarative description of one experiment, loaded from a JSON file.
///
/// Example:
///
///     {
///       "dataset": {"path": "data/mini.tsv", "tag_blacklist": ["bibtex-import"]},
///       "split": {"test_fraction": 0.2},
///       "defaults": {"neighbors": 20, "bll_decay": 0.5},
///       "algorithms": ["MP", "CF_B", {"name": "Z", "zheng_timescale_days": 50}],
///       "seed": 42,
///       "workers": 4,
///       "output": "out"
///     }
///
/// Unknown keys are rejected so typos cannot silently fall back to defaults.
struct RunConfig {
  DatasetSpec dataset;
  /// Path as written in the config file; echoed instead of the resolved one
  /// so reports do not depend on where the checkout lives.
  std::string dataset_path_as_written;
  double test_fraction = 0.2;
  std::vector<RecommenderConfig> algorithms;
  UnservablePolicy unservable = UnservablePolicy::kCountAsZero;
  std::uint64_t seed = 42;
  unsigned workers = 1;
  std::filesystem::path output_dir = "out";

  /// Throws Error(kConfig) on invalid values or a missing dataset file.
  void validate() const;

  /// Canonical JSON of every setting that can influence results. Worker
  /// count and output directory are left out.
  std::string echo() const;

  /// FNV-1a digest of echo().
  std::string hash() const;
};

/// Parses config text; relative paths resolve against `base_dir`. Throws
/// Error(kConfig) on syntax errors, unknown keys or unknown algorithms.
RunConfig parse_run_config(std::string_view text, const std::filesystem::path& base_dir);

/// Throws Error(kIo) if the file cannot be read.
RunConfig load_run_config(const std::filesystem::path& path);

/// A config with the default dataset format, all six algorithms and the
/// given input file.
RunConfig default_run_config(const std::filesystem::path& input);

}  // namespace tagtime::cli
