#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "cli/run_config.hpp"
#include "tagtime/error.hpp"
#include "tagtime/eval.hpp"
#include "tagtime/synthetic.hpp"

namespace tagtime::cli {

/// Process exit codes.
enum ExitCode : int {
  kExitOk = 0,
  kExitUnexpected = 1,
  kExitConfig = 2,
  kExitData = 3,
  kExitIo = 4,
};

int exit_code_for(ErrorKind kind) noexcept;

struct IngestResult {
  DatasetStats stats;
  std::string fingerprint;
  std::filesystem::path snapshot;
};

/// Preprocesses the dataset and writes `snapshot.tsv` into `out_dir`.
IngestResult cmd_ingest(const RunConfig& config, const std::filesystem::path& out_dir);

/// Writes `train.tsv` (snapshot format), `test.tsv` (`user item`) and
/// `tref.tsv` (`user reference_time`) into `out_dir`.
SplitResult cmd_split(const RunConfig& config, const std::filesystem::path& out_dir);

/// Full experiment: preprocess, split, every configured algorithm, metrics.
/// Writes `report.txt`, `metrics.csv`, `summary.csv` and one
/// `recommendations_<ALG>.tsv` per algorithm.
EvalReport cmd_run(const RunConfig& config, const std::filesystem::path& out_dir);

/// Trains on the whole preprocessed dataset and writes
/// `recommendations_<ALG>.tsv` (`user item rank score`) for every user.
void cmd_recommend(const RunConfig& config, const std::filesystem::path& out_dir);

/// Reads `metrics.csv` (or a directory holding one) and writes one series
/// file per (algorithm, metric) into `out_dir`.
std::vector<std::filesystem::path> cmd_plotdata(const std::filesystem::path& report,
                                                const std::filesystem::path& out_dir);

/// Writes a generated folksonomy as `user item tag timestamp` rows.
void cmd_synth(const SyntheticSpec& spec, const std::filesystem::path& out_file);

/// Entry point shared by the executable and the tests.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tagtime::cli
