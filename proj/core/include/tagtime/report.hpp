#pragma once

#include <filesystem>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "tagtime/eval.hpp"

namespace tagtime {

/// Metric values are always written with six decimals.
std::string format_metric(double value);

/// Leaderboard: one row per metric (nDCG@20, MAP@20, R@20, D, UC), one
/// column per algorithm.
void write_table(std::ostream& out, const EvalReport& report);

/// `algorithm,k,ndcg,map,recall`, k = 1..20, after provenance comments.
void write_metrics_csv(std::ostream& out, const EvalReport& report);

/// `algorithm,diversity,user_coverage,evaluated_users,covered_users` after
/// provenance comments that include the config echo.
void write_summary_csv(std::ostream& out, const EvalReport& report);

/// Reads a metrics CSV back. Fills provenance and the per-k arrays; other
/// fields stay default. Throws Error(kFormat) on malformed content.
EvalReport read_metrics_csv(std::istream& in);

/// One `k,value` file per (algorithm, metric) under `dir`, named
/// `<algorithm>_<metric>.csv`. Returns the written paths in order.
std::vector<std::filesystem::path> write_plot_series(const EvalReport& report,
                                                     const std::filesystem::path& dir);

/// `# config_hash=...` and `# dataset_fingerprint=...` lines.
void write_provenance(std::ostream& out, const std::string& config_hash,
                      const std::string& dataset_fingerprint);

}  // namespace tagtime
