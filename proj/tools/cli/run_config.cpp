#include "cli/run_config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "tagtime/error.hpp"

namespace tagtime::cli {

using nlohmann::json;

namespace {

[[noreturn]] void config_error(const std::string& message) {
  throw Error(ErrorKind::kConfig, message);
}

void reject_unknown_keys(const json& object, const std::set<std::string>& allowed,
                         const std::string& where) {
  if (!object.is_object()) config_error(where + " must be a JSON object");
  for (const auto& [key, _] : object.items())
    if (!allowed.contains(key)) config_error("unknown key '" + key + "' in " + where);
}

template <typename T>
T get_as(const json& value, const std::string& key) {
  try {
    return value.get<T>();
  } catch (const json::exception&) {
    config_error("wrong type for '" + key + "'");
  }
}

const std::set<std::string> kRecommenderKeys = {
    "neighbors",        "list_length",         "bll_decay",
    "bll_normalization", "cirtt_item_similarity", "zheng_timescale_days",
    "zheng_timescale_seconds", "huang_floor",
};

void apply_recommender_keys(const json& object, RecommenderConfig& config) {
  for (const auto& [key, value] : object.items()) {
    if (key == "neighbors") {
      config.neighbors = get_as<std::size_t>(value, key);
    } else if (key == "list_length") {
      config.list_length = get_as<std::size_t>(value, key);
    } else if (key == "bll_decay") {
      config.bll.decay = get_as<double>(value, key);
    } else if (key == "bll_normalization") {
      const auto name = get_as<std::string>(value, key);
      if (name == "softmax") {
        config.bll_normalization = BllNormalization::kSoftmax;
      } else if (name == "minmax") {
        config.bll_normalization = BllNormalization::kMinMax;
      } else {
        config_error("bll_normalization must be \"softmax\" or \"minmax\"");
      }
    } else if (key == "cirtt_item_similarity") {
      const auto name = get_as<std::string>(value, key);
      if (name == "binary_taggers") {
        config.cirtt_item_similarity = ItemSimilarity::kBinaryTaggers;
      } else if (name == "tag_vectors") {
        config.cirtt_item_similarity = ItemSimilarity::kTagVectors;
      } else {
        config_error("cirtt_item_similarity must be \"binary_taggers\" or \"tag_vectors\"");
      }
    } else if (key == "zheng_timescale_days") {
      config.zheng_timescale = get_as<double>(value, key) * 86400.0;
    } else if (key == "zheng_timescale_seconds") {
      config.zheng_timescale = get_as<double>(value, key);
    } else if (key == "huang_floor") {
      config.huang_floor = get_as<double>(value, key);
    }
  }
}

std::string normalization_name(BllNormalization n) {
  return n == BllNormalization::kSoftmax ? "softmax" : "minmax";
}

std::string item_similarity_name(ItemSimilarity s) {
  return s == ItemSimilarity::kBinaryTaggers ? "binary_taggers" : "tag_vectors";
}

}  // namespace

void RunConfig::validate() const {
  dataset.validate();
  if (!(test_fraction > 0.0 && test_fraction < 1.0))
    config_error("split.test_fraction must lie in (0, 1)");
  if (algorithms.empty()) config_error("no algorithms configured");
  for (const auto& a : algorithms) a.validate();
  if (workers < 1) config_error("workers must be at least 1");
  std::error_code ec;
  if (!std::filesystem::is_regular_file(dataset.path, ec))
    config_error("dataset file '" + dataset.path + "' does not exist");
}

std::string RunConfig::echo() const {
  json algos = json::array();
  for (const auto& a : algorithms) {
    algos.push_back({
        {"name", std::string(to_string(a.algorithm))},
        {"neighbors", a.neighbors},
        {"list_length", a.list_length},
        {"bll_decay", a.bll.decay},
        {"bll_normalization", normalization_name(a.bll_normalization)},
        {"cirtt_item_similarity", item_similarity_name(a.cirtt_item_similarity)},
        {"zheng_timescale_seconds", a.zheng_timescale},
        {"huang_floor", a.huang_floor},
    });
  }
  const json doc = {
      {"dataset",
       {
           {"path", dataset_path_as_written},
           {"columns",
            {dataset.columns.user, dataset.columns.item, dataset.columns.tag,
             dataset.columns.timestamp}},
           {"delimiter", std::string(1, dataset.delimiter)},
           {"timestamp_format",
            dataset.timestamp_format == TimestampFormat::kEpochSeconds ? "epoch" : "iso8601"},
           {"tag_blacklist", dataset.tag_blacklist},
           {"sample_fraction", dataset.sample_fraction},
       }},
      {"split", {{"test_fraction", test_fraction}}},
      {"algorithms", algos},
      {"evaluation",
       {{"unservable", unservable == UnservablePolicy::kCountAsZero ? "zero" : "exclude"}}},
      {"seed", seed},
  };
  return doc.dump();
}

std::string RunConfig::hash() const {
  Fnv1a h;
  h.update(echo());
  return h.hex();
}

RunConfig parse_run_config(std::string_view text, const std::filesystem::path& base_dir) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    config_error(std::string("config is not valid JSON: ") + e.what());
  }
  reject_unknown_keys(doc,
                      {"dataset", "split", "defaults", "algorithms", "evaluation", "seed",
                       "workers", "output"},
                      "config");

  RunConfig cfg;
  if (!doc.contains("dataset")) config_error("config needs a \"dataset\" section");
  const auto& ds = doc["dataset"];
  reject_unknown_keys(ds,
                      {"path", "columns", "delimiter", "timestamp_format", "tag_blacklist",
                       "sample_fraction"},
                      "dataset");
  if (!ds.contains("path")) config_error("dataset.path is required");
  cfg.dataset_path_as_written = get_as<std::string>(ds["path"], "dataset.path");
  std::filesystem::path data_path = cfg.dataset_path_as_written;
  if (data_path.is_relative()) data_path = base_dir / data_path;
  cfg.dataset.path = data_path.lexically_normal().string();
  if (ds.contains("columns")) {
    const auto& c = ds["columns"];
    reject_unknown_keys(c, {"user", "item", "tag", "timestamp"}, "dataset.columns");
    if (c.contains("user")) cfg.dataset.columns.user = get_as<std::size_t>(c["user"], "user");
    if (c.contains("item")) cfg.dataset.columns.item = get_as<std::size_t>(c["item"], "item");
    if (c.contains("tag")) cfg.dataset.columns.tag = get_as<std::size_t>(c["tag"], "tag");
    if (c.contains("timestamp"))
      cfg.dataset.columns.timestamp = get_as<std::size_t>(c["timestamp"], "timestamp");
  }
  if (ds.contains("delimiter")) {
    const auto d = get_as<std::string>(ds["delimiter"], "dataset.delimiter");
    if (d.size() != 1) config_error("dataset.delimiter must be a single character");
    cfg.dataset.delimiter = d.front();
  }
  if (ds.contains("timestamp_format")) {
    const auto f = get_as<std::string>(ds["timestamp_format"], "dataset.timestamp_format");
    if (f == "epoch") {
      cfg.dataset.timestamp_format = TimestampFormat::kEpochSeconds;
    } else if (f == "iso8601") {
      cfg.dataset.timestamp_format = TimestampFormat::kIso8601;
    } else {
      config_error("dataset.timestamp_format must be \"epoch\" or \"iso8601\"");
    }
  }
  if (ds.contains("tag_blacklist"))
    cfg.dataset.tag_blacklist =
        get_as<std::vector<std::string>>(ds["tag_blacklist"], "dataset.tag_blacklist");
  if (ds.contains("sample_fraction"))
    cfg.dataset.sample_fraction = get_as<double>(ds["sample_fraction"], "dataset.sample_fraction");

  if (doc.contains("split")) {
    reject_unknown_keys(doc["split"], {"test_fraction"}, "split");
    if (doc["split"].contains("test_fraction"))
      cfg.test_fraction = get_as<double>(doc["split"]["test_fraction"], "split.test_fraction");
  }

  RecommenderConfig defaults;
  if (doc.contains("defaults")) {
    reject_unknown_keys(doc["defaults"], kRecommenderKeys, "defaults");
    apply_recommender_keys(doc["defaults"], defaults);
  }

  if (doc.contains("algorithms")) {
    const auto& list = doc["algorithms"];
    if (!list.is_array()) config_error("algorithms must be an array");
    for (const auto& entry : list) {
      RecommenderConfig rc = defaults;
      std::string name;
      if (entry.is_string()) {
        name = entry.get<std::string>();
      } else if (entry.is_object()) {
        auto keys = kRecommenderKeys;
        keys.insert("name");
        reject_unknown_keys(entry, keys, "algorithm entry");
        if (!entry.contains("name")) config_error("algorithm entry without \"name\"");
        name = get_as<std::string>(entry["name"], "name");
        apply_recommender_keys(entry, rc);
      } else {
        config_error("algorithm entries must be names or objects");
      }
      const auto algo = parse_algorithm(name);
      if (!algo) config_error("unknown algorithm '" + name + "'");
      rc.algorithm = *algo;
      cfg.algorithms.push_back(rc);
    }
  } else {
    for (auto a : all_algorithms()) {
      RecommenderConfig rc = defaults;
      rc.algorithm = a;
      cfg.algorithms.push_back(rc);
    }
  }

  if (doc.contains("evaluation")) {
    reject_unknown_keys(doc["evaluation"], {"unservable"}, "evaluation");
    if (doc["evaluation"].contains("unservable")) {
      const auto p = get_as<std::string>(doc["evaluation"]["unservable"], "evaluation.unservable");
      if (p == "zero") {
        cfg.unservable = UnservablePolicy::kCountAsZero;
      } else if (p == "exclude") {
        cfg.unservable = UnservablePolicy::kExclude;
      } else {
        config_error("evaluation.unservable must be \"zero\" or \"exclude\"");
      }
    }
  }
  if (doc.contains("seed")) cfg.seed = get_as<std::uint64_t>(doc["seed"], "seed");
  cfg.dataset.seed = cfg.seed;
  if (doc.contains("workers")) cfg.workers = get_as<unsigned>(doc["workers"], "workers");
  if (doc.contains("output")) {
    std::filesystem::path out = get_as<std::string>(doc["output"], "output");
    cfg.output_dir = out.is_relative() ? base_dir / out : out;
  }
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIo, "cannot read config '" + path.string() + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_run_config(text.str(), path.parent_path());
}

RunConfig default_run_config(const std::filesystem::path& input) {
  RunConfig cfg;
  cfg.dataset.path = input.string();
  cfg.dataset_path_as_written = input.filename().string();
  for (auto a : all_algorithms()) {
    RecommenderConfig rc;
    rc.algorithm = a;
    cfg.algorithms.push_back(rc);
  }
  return cfg;
}

}  // namespace tagtime::cli
