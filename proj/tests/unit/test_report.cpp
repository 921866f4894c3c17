#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "tagtime/error.hpp"
#include "tagtime/report.hpp"

namespace tagtime {
namespace {

EvalReport sample_report() {
  EvalReport r;
  r.dataset_fingerprint = "00112233aabbccdd";
  r.config_hash = "feedfacecafebeef";
  r.config_echo = "{\"seed\":1}";
  r.seed = 1;
  for (const char* name : {"MP", "CIRTT"}) {
    AlgorithmReport a;
    a.algorithm = name;
    for (std::size_t k = 0; k < kMaxCutoff; ++k) {
      a.ndcg[k] = 0.01 * static_cast<double>(k) + (name[0] == 'M' ? 0.0 : 0.3);
      a.map[k] = 0.005 * static_cast<double>(k);
      a.recall[k] = 0.04 * static_cast<double>(k + 1);
    }
    a.diversity = 0.75;
    a.user_coverage = 1.0;
    a.evaluated_users = 10;
    a.covered_users = 10;
    r.algorithms.push_back(a);
  }
  return r;
}

TEST(Report, SixDecimalFormatting) {
  EXPECT_EQ(format_metric(0.5), "0.500000");
  EXPECT_EQ(format_metric(1.0 / 3.0), "0.333333");
  EXPECT_EQ(format_metric(0.0), "0.000000");
}

TEST(Report, TableLayout) {
  std::ostringstream out;
  write_table(out, sample_report());
  const auto text = out.str();
  EXPECT_NE(text.find("# config_hash=feedfacecafebeef\n"), std::string::npos);
  EXPECT_NE(text.find("# dataset_fingerprint=00112233aabbccdd\n"), std::string::npos);
  EXPECT_NE(text.find("Metric    MP        CIRTT\n"), std::string::npos);
  EXPECT_NE(text.find("nDCG@20   0.190000  0.490000\n"), std::string::npos);
  EXPECT_NE(text.find("UC        1.000000  1.000000\n"), std::string::npos);
}

TEST(Report, MetricsCsvRoundTrip) {
  const auto report = sample_report();
  std::ostringstream out;
  write_metrics_csv(out, report);
  std::istringstream in(out.str());
  const auto back = read_metrics_csv(in);
  EXPECT_EQ(back.config_hash, report.config_hash);
  EXPECT_EQ(back.dataset_fingerprint, report.dataset_fingerprint);
  ASSERT_EQ(back.algorithms.size(), 2u);
  for (std::size_t a = 0; a < 2; ++a) {
    EXPECT_EQ(back.algorithms[a].algorithm, report.algorithms[a].algorithm);
    for (std::size_t k = 0; k < kMaxCutoff; ++k) {
      EXPECT_EQ(format_metric(back.algorithms[a].ndcg[k]), format_metric(report.algorithms[a].ndcg[k]));
      EXPECT_EQ(format_metric(back.algorithms[a].recall[k]),
                format_metric(report.algorithms[a].recall[k]));
    }
  }
}

TEST(Report, MalformedMetricsCsv) {
  std::istringstream bad("algorithm,k,ndcg,map,recall\nMP,x,1,2,3\n");
  EXPECT_THROW((void)read_metrics_csv(bad), Error);
  std::istringstream headerless("MP,1,0.1,0.1,0.1\n");
  EXPECT_THROW((void)read_metrics_csv(headerless), Error);
}

TEST(Report, SummaryCarriesConfigEcho) {
  std::ostringstream out;
  write_summary_csv(out, sample_report());
  const auto text = out.str();
  EXPECT_NE(text.find("# config={\"seed\":1}\n"), std::string::npos);
  EXPECT_NE(text.find("MP,0.750000,1.000000,10,10\n"), std::string::npos);
}

TEST(Report, PlotSeries) {
  const auto dir = std::filesystem::path(::testing::TempDir()) / "tagtime_plot_series";
  std::filesystem::remove_all(dir);
  const auto files = write_plot_series(sample_report(), dir);
  ASSERT_EQ(files.size(), 6u);
  EXPECT_EQ(files[0].filename(), "MP_ndcg.csv");
  EXPECT_EQ(files[5].filename(), "CIRTT_recall.csv");
  std::ifstream in(files[2]);
  std::string line;
  std::vector<std::string> rows;
  while (std::getline(in, line))
    if (!line.starts_with("#")) rows.push_back(line);
  ASSERT_EQ(rows.size(), 21u);
  EXPECT_EQ(rows[0], "k,recall");
  EXPECT_EQ(rows[1], "1,0.040000");
  EXPECT_EQ(rows[20], "20,0.800000");
}

}  // namespace
}  // namespace tagtime
