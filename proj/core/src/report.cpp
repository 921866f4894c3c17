#include "tagtime/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "tagtime/error.hpp"

namespace tagtime {

std::string format_metric(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", value);
  return buf;
}

void write_provenance(std::ostream& out, const std::string& config_hash,
                      const std::string& dataset_fingerprint) {
  out << "# config_hash=" << config_hash << '\n';
  out << "# dataset_fingerprint=" << dataset_fingerprint << '\n';
}

namespace {

std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

}  // namespace

void write_table(std::ostream& out, const EvalReport& report) {
  write_provenance(out, report.config_hash, report.dataset_fingerprint);
  out << "# seed=" << report.seed << '\n';
  constexpr std::size_t kWidth = 10;
  auto emit = [&](std::string line) {
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out << line << '\n';
  };
  std::string header = pad("Metric", kWidth);
  for (const auto& a : report.algorithms) header += pad(a.algorithm, kWidth);
  emit(header);
  auto row = [&](const std::string& name, auto value_of) {
    std::string line = pad(name, kWidth);
    for (const auto& a : report.algorithms) line += pad(format_metric(value_of(a)), kWidth);
    emit(line);
  };
  constexpr auto last = kMaxCutoff - 1;
  row("nDCG@20", [](const AlgorithmReport& a) { return a.ndcg[last]; });
  row("MAP@20", [](const AlgorithmReport& a) { return a.map[last]; });
  row("R@20", [](const AlgorithmReport& a) { return a.recall[last]; });
  row("D", [](const AlgorithmReport& a) { return a.diversity; });
  row("UC", [](const AlgorithmReport& a) { return a.user_coverage; });
}

void write_metrics_csv(std::ostream& out, const EvalReport& report) {
  write_provenance(out, report.config_hash, report.dataset_fingerprint);
  out << "algorithm,k,ndcg,map,recall\n";
  for (const auto& a : report.algorithms) {
    for (std::size_t k = 1; k <= kMaxCutoff; ++k) {
      out << a.algorithm << ',' << k << ',' << format_metric(a.ndcg[k - 1]) << ','
          << format_metric(a.map[k - 1]) << ',' << format_metric(a.recall[k - 1]) << '\n';
    }
  }
}

void write_summary_csv(std::ostream& out, const EvalReport& report) {
  write_provenance(out, report.config_hash, report.dataset_fingerprint);
  out << "# seed=" << report.seed << '\n';
  out << "# config=" << report.config_echo << '\n';
  out << "algorithm,diversity,user_coverage,evaluated_users,covered_users\n";
  for (const auto& a : report.algorithms) {
    out << a.algorithm << ',' << format_metric(a.diversity) << ','
        << format_metric(a.user_coverage) << ',' << a.evaluated_users << ','
        << a.covered_users << '\n';
  }
}

EvalReport read_metrics_csv(std::istream& in) {
  EvalReport report;
  std::string line;
  bool header_seen = false;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& what) {
    throw Error(ErrorKind::kFormat, "metrics CSV line " + std::to_string(line_no) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line.front() == '#') {
      constexpr std::string_view kHash = "# config_hash=";
      constexpr std::string_view kPrint = "# dataset_fingerprint=";
      if (line.starts_with(kHash)) report.config_hash = line.substr(kHash.size());
      if (line.starts_with(kPrint)) report.dataset_fingerprint = line.substr(kPrint.size());
      continue;
    }
    if (!header_seen) {
      if (line != "algorithm,k,ndcg,map,recall") fail("unexpected header");
      header_seen = true;
      continue;
    }
    std::istringstream row(line);
    std::string name, field;
    std::getline(row, name, ',');
    std::size_t k = 0;
    double ndcg = 0, map = 0, recall = 0;
    char c1 = 0, c2 = 0, c3 = 0;
    if (!(row >> k >> c1 >> ndcg >> c2 >> map >> c3 >> recall) || c1 != ',' || c2 != ',' ||
        c3 != ',' || k < 1 || k > kMaxCutoff)
      fail("malformed row");
    if (report.algorithms.empty() || report.algorithms.back().algorithm != name) {
      if (k != 1) fail("series must start at k=1");
      report.algorithms.push_back({});
      report.algorithms.back().algorithm = name;
    }
    auto& a = report.algorithms.back();
    a.ndcg[k - 1] = ndcg;
    a.map[k - 1] = map;
    a.recall[k - 1] = recall;
  }
  if (!header_seen) fail("missing header");
  return report;
}

std::vector<std::filesystem::path> write_plot_series(const EvalReport& report,
                                                     const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::kIo, "cannot create directory '" + dir.string() + "'");
  std::vector<std::filesystem::path> written;
  for (const auto& a : report.algorithms) {
    const std::pair<const char*, const std::array<double, kMaxCutoff>*> series[] = {
        {"ndcg", &a.ndcg}, {"map", &a.map}, {"recall", &a.recall}};
    for (const auto& [metric, values] : series) {
      const auto path = dir / (a.algorithm + "_" + metric + ".csv");
      std::ofstream out(path, std::ios::binary);
      if (!out) throw Error(ErrorKind::kIo, "cannot write '" + path.string() + "'");
      write_provenance(out, report.config_hash, report.dataset_fingerprint);
      out << "k," << metric << '\n';
      for (std::size_t k = 1; k <= kMaxCutoff; ++k)
        out << k << ',' << format_metric((*values)[k - 1]) << '\n';
      written.push_back(path);
    }
  }
  return written;
}

}  // namespace tagtime
