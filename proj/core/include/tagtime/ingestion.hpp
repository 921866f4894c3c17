#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "tagtime/folksonomy.hpp"

namespace tagtime {

enum class TimestampFormat {
  kEpochSeconds,
  kIso8601,
};

struct ColumnMapping {
  std::size_t user = 0;
  std::size_t item = 1;
  std::size_t tag = 2;
  std::size_t timestamp = 3;
};

/// Tags produced by import tools rather than people.
std::vector<std::string> default_tag_blacklist();

/// Where a tag-assignment dump lives and how to read and preprocess it.
struct DatasetSpec {
  std::string path;
  ColumnMapping columns;
  char delimiter = '\t';
  TimestampFormat timestamp_format = TimestampFormat::kEpochSeconds;
  std::vector<std::string> tag_blacklist = default_tag_blacklist();
  double sample_fraction = 1.0;  // in (0, 1]
  std::uint64_t seed = 42;

  /// Throws Error(kConfig) on a fraction outside (0, 1] or colliding columns.
  void validate() const;
};

struct ParseResult {
  Vocabulary vocab;
  std::vector<TagAssignment> rows;
  std::size_t data_lines = 0;
  std::size_t malformed_lines = 0;
  /// 1-based line numbers of the first malformed rows (capped).
  std::vector<std::size_t> malformed_examples;
};

/// Lowercases ASCII and trims surrounding whitespace.
std::string normalize_tag(std::string_view tag);

/// Parses "YYYY-MM-DD[T ]hh:mm:ss[.fff][Z|+hh:mm|-hh:mm]" into epoch
/// seconds, truncating fractions. Returns false on malformed input.
bool parse_iso8601(std::string_view text, Timestamp& out);

/// Reads one assignment per row, skipping blank and '#' lines. Malformed
/// rows are counted; more than half malformed raises Error(kFormat).
ParseResult parse(std::istream& in, const DatasetSpec& spec);

/// File variant. Throws Error(kIo) when the file cannot be opened.
ParseResult parse(const DatasetSpec& spec);

/// Case-insensitive glob match supporting '*' and '?'.
bool glob_match(std::string_view pattern, std::string_view text);

/// Drops every assignment whose tag matches one of `patterns`.
std::vector<TagAssignment> filter_blacklisted_tags(std::vector<TagAssignment> rows,
                                                   const Interner& tags,
                                                   const std::vector<std::string>& patterns);

/// Removes every item bookmarked by exactly one user, in a single pass.
/// Throws Error(kEmptyDataset) if nothing is left.
Folksonomy remove_unique_resources(const Folksonomy& f);

/// Keeps ceil(fraction * |U|) users drawn uniformly without replacement.
/// Deterministic for a fixed seed on every platform.
Folksonomy sample_users(const Folksonomy& f, double fraction, std::uint64_t seed);

struct PreprocessResult {
  Folksonomy folksonomy;
  std::size_t data_lines = 0;
  std::size_t malformed_lines = 0;
  std::size_t blacklisted_assignments = 0;
};

/// parse -> blacklist -> build -> sample users -> remove unique resources.
PreprocessResult preprocess(std::istream& in, const DatasetSpec& spec);
PreprocessResult preprocess(const DatasetSpec& spec);

/// Writes the canonical text snapshot: provenance comment lines followed by
/// `user<TAB>item<TAB>tag<TAB>timestamp` rows in name order. The output is a
/// valid input for parse() with the default spec.
void write_snapshot(std::ostream& out, const Folksonomy& f);

}  // namespace tagtime
