#include "tagtime/ingestion.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>
#include <tuple>

#include "tagtime/error.hpp"
#include "tagtime/stable_random.hpp"

namespace tagtime {

std::vector<std::string> default_tag_blacklist() { return {"bibtex-import"}; }

void DatasetSpec::validate() const {
  if (!(sample_fraction > 0.0 && sample_fraction <= 1.0))
    throw Error(ErrorKind::kConfig, "sample fraction must lie in (0, 1]");
  const std::size_t cols[] = {columns.user, columns.item, columns.tag, columns.timestamp};
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b)
      if (cols[a] == cols[b]) throw Error(ErrorKind::kConfig, "column positions must be distinct");
}

namespace {

std::string_view trim(std::string_view s) {
  auto is_space = [](unsigned char c) { return std::isspace(c) != 0; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

char lower(char c) { return static_cast<char>(std::tolower(static_cast<unsigned char>(c))); }

template <typename Int>
bool parse_int(std::string_view s, Int& out) {
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

// Epoch seconds, optionally with a fractional part that is truncated.
bool parse_epoch(std::string_view s, Timestamp& out) {
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    const auto frac = s.substr(dot + 1);
    if (frac.empty() || !std::all_of(frac.begin(), frac.end(),
                                     [](unsigned char c) { return std::isdigit(c); }))
      return false;
    s = s.substr(0, dot);
  }
  return parse_int(s, out) && out >= 0;
}

constexpr std::size_t kMaxMalformedExamples = 10;

}  // namespace

std::string normalize_tag(std::string_view tag) {
  tag = trim(tag);
  std::string out(tag);
  std::transform(out.begin(), out.end(), out.begin(), lower);
  return out;
}

bool parse_iso8601(std::string_view text, Timestamp& out) {
  text = trim(text);
  if (text.size() < 19) return false;
  int year = 0;
  unsigned month = 0, day = 0, hour = 0, minute = 0, second = 0;
  if (text[4] != '-' || text[7] != '-' || (text[10] != 'T' && text[10] != ' ') ||
      text[13] != ':' || text[16] != ':')
    return false;
  if (!parse_int(text.substr(0, 4), year) || !parse_int(text.substr(5, 2), month) ||
      !parse_int(text.substr(8, 2), day) || !parse_int(text.substr(11, 2), hour) ||
      !parse_int(text.substr(14, 2), minute) || !parse_int(text.substr(17, 2), second))
    return false;
  if (hour > 23 || minute > 59 || second > 60) return false;

  namespace chr = std::chrono;
  const chr::year_month_day ymd{chr::year{year}, chr::month{month}, chr::day{day}};
  if (!ymd.ok()) return false;

  auto rest = text.substr(19);
  if (!rest.empty() && rest.front() == '.') {
    std::size_t n = 1;
    while (n < rest.size() && std::isdigit(static_cast<unsigned char>(rest[n]))) ++n;
    if (n == 1) return false;
    rest.remove_prefix(n);
  }
  std::int64_t offset = 0;
  if (rest == "Z" || rest.empty()) {
    offset = 0;
  } else if ((rest.front() == '+' || rest.front() == '-') &&
             (rest.size() == 6 || rest.size() == 5)) {
    unsigned oh = 0, om = 0;
    const auto hh = rest.substr(1, 2);
    const auto mm = rest.size() == 6 ? rest.substr(4, 2) : rest.substr(3, 2);
    if (rest.size() == 6 && rest[3] != ':') return false;
    if (!parse_int(hh, oh) || !parse_int(mm, om) || oh > 23 || om > 59) return false;
    offset = (rest.front() == '+' ? 1 : -1) * static_cast<std::int64_t>(oh * 3600 + om * 60);
  } else {
    return false;
  }

  const auto days = chr::sys_days{ymd}.time_since_epoch().count();
  out = static_cast<Timestamp>(days) * 86400 + hour * 3600 + minute * 60 + second - offset;
  return out >= 0;
}

ParseResult parse(std::istream& in, const DatasetSpec& spec) {
  spec.validate();
  ParseResult result;
  const auto& cols = spec.columns;
  const std::size_t needed =
      std::max({cols.user, cols.item, cols.tag, cols.timestamp}) + 1;

  std::string line;
  std::vector<std::string_view> fields;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto view = trim(line);
    if (view.empty() || view.front() == '#') continue;
    ++result.data_lines;

    fields.clear();
    std::string_view rest = line;
    for (;;) {
      const auto pos = rest.find(spec.delimiter);
      fields.push_back(rest.substr(0, pos));
      if (pos == std::string_view::npos) break;
      rest.remove_prefix(pos + 1);
    }

    auto malformed = [&] {
      ++result.malformed_lines;
      if (result.malformed_examples.size() < kMaxMalformedExamples)
        result.malformed_examples.push_back(line_no);
    };
    if (fields.size() < needed) {
      malformed();
      continue;
    }
    const auto user = trim(fields[cols.user]);
    const auto item = trim(fields[cols.item]);
    const auto tag = normalize_tag(fields[cols.tag]);
    Timestamp ts = 0;
    const bool ts_ok = spec.timestamp_format == TimestampFormat::kEpochSeconds
                           ? parse_epoch(trim(fields[cols.timestamp]), ts)
                           : parse_iso8601(fields[cols.timestamp], ts);
    if (user.empty() || item.empty() || tag.empty() || !ts_ok) {
      malformed();
      continue;
    }
    result.rows.push_back({result.vocab.users.intern(user), result.vocab.items.intern(item),
                           result.vocab.tags.intern(tag), ts});
  }

  if (result.data_lines > 0 && 2 * result.malformed_lines > result.data_lines) {
    std::ostringstream msg;
    msg << result.malformed_lines << " of " << result.data_lines
        << " rows are malformed (check the column mapping); first bad lines:";
    for (auto n : result.malformed_examples) msg << ' ' << n;
    throw Error(ErrorKind::kFormat, msg.str());
  }
  return result;
}

ParseResult parse(const DatasetSpec& spec) {
  std::ifstream in(spec.path);
  if (!in) throw Error(ErrorKind::kIo, "cannot open dataset file '" + spec.path + "'");
  return parse(in, spec);
}

bool glob_match(std::string_view pattern, std::string_view text) {
  // Iterative matcher with single-star backtracking.
  std::size_t p = 0, t = 0, star = std::string_view::npos, mark = 0;
  while (t < text.size()) {
    if (p < pattern.size() && pattern[p] == '*') {
      star = p++;
      mark = t;
    } else if (p < pattern.size() &&
               (pattern[p] == '?' || lower(pattern[p]) == lower(text[t]))) {
      ++p;
      ++t;
    } else if (star != std::string_view::npos) {
      p = star + 1;
      t = ++mark;
    } else {
      return false;
    }
  }
  while (p < pattern.size() && pattern[p] == '*') ++p;
  return p == pattern.size();
}

std::vector<TagAssignment> filter_blacklisted_tags(std::vector<TagAssignment> rows,
                                                   const Interner& tags,
                                                   const std::vector<std::string>& patterns) {
  if (patterns.empty()) return rows;
  std::vector<char> banned(tags.size(), 0);
  for (std::size_t id = 0; id < tags.size(); ++id) {
    for (const auto& pat : patterns) {
      if (glob_match(trim(pat), tags.name(static_cast<TagId>(id)))) {
        banned[id] = 1;
        break;
      }
    }
  }
  std::erase_if(rows, [&](const TagAssignment& a) { return banned.at(a.tag) != 0; });
  return rows;
}

Folksonomy remove_unique_resources(const Folksonomy& f) {
  // Counts come from the input only, so removals never cascade.
  std::vector<std::size_t> taggers(f.item_space());
  for (ItemId i = 0; i < f.item_space(); ++i) taggers[i] = f.item_posts(i).size();
  bool any = false;
  for (const auto& p : f.posts()) any = any || taggers[p.item] >= 2;
  if (!any) throw Error(ErrorKind::kEmptyDataset, "no resource is shared by two or more users");
  return f.filter_posts([&](const Post& p) { return taggers[p.item] >= 2; },
                        VocabularyMode::kCompact);
}

Folksonomy sample_users(const Folksonomy& f, double fraction, std::uint64_t seed) {
  if (!(fraction > 0.0 && fraction <= 1.0))
    throw Error(ErrorKind::kConfig, "sample fraction must lie in (0, 1]");

  std::vector<UserId> users;
  for (UserId u = 0; u < f.user_space(); ++u)
    if (!f.user_posts(u).empty()) users.push_back(u);
  // The epsilon guards products such as 0.1 * 30 = 3.0000000000000004.
  const auto keep = std::min<std::size_t>(
      users.size(),
      static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(users.size()) - 1e-9)));
  if (keep == users.size()) return f;

  // Partial Fisher-Yates over the id-ordered user list.
  StableRandom rng(seed);
  for (std::size_t i = 0; i < keep; ++i) {
    const auto j = i + rng.below(users.size() - i);
    std::swap(users[i], users[j]);
  }
  std::vector<char> selected(f.user_space(), 0);
  for (std::size_t i = 0; i < keep; ++i) selected[users[i]] = 1;
  return f.filter_posts([&](const Post& p) { return selected[p.user] != 0; },
                        VocabularyMode::kCompact);
}

PreprocessResult preprocess(std::istream& in, const DatasetSpec& spec) {
  auto parsed = parse(in, spec);
  PreprocessResult out;
  out.data_lines = parsed.data_lines;
  out.malformed_lines = parsed.malformed_lines;
  const auto before = parsed.rows.size();
  auto rows = filter_blacklisted_tags(std::move(parsed.rows), parsed.vocab.tags,
                                      spec.tag_blacklist);
  out.blacklisted_assignments = before - rows.size();
  auto f = Folksonomy::build(std::move(rows), std::move(parsed.vocab));
  f = sample_users(f, spec.sample_fraction, spec.seed);
  out.folksonomy = remove_unique_resources(f);
  return out;
}

PreprocessResult preprocess(const DatasetSpec& spec) {
  std::ifstream in(spec.path);
  if (!in) throw Error(ErrorKind::kIo, "cannot open dataset file '" + spec.path + "'");
  return preprocess(in, spec);
}

void write_snapshot(std::ostream& out, const Folksonomy& f) {
  const auto& v = f.vocabulary();
  out << "# tagtime snapshot v1\n";
  out << "# fingerprint " << f.fingerprint() << '\n';
  out << "# " << f.stats().to_string() << '\n';
  std::vector<const TagAssignment*> rows;
  for (const auto& a : f.assignments()) rows.push_back(&a);
  std::sort(rows.begin(), rows.end(), [&](const TagAssignment* a, const TagAssignment* b) {
    return std::forward_as_tuple(v.users.name(a->user), v.items.name(a->item),
                                 v.tags.name(a->tag)) <
           std::forward_as_tuple(v.users.name(b->user), v.items.name(b->item),
                                 v.tags.name(b->tag));
  });
  for (const auto* a : rows) {
    out << v.users.name(a->user) << '\t' << v.items.name(a->item) << '\t'
        << v.tags.name(a->tag) << '\t' << a->timestamp << '\n';
  }
}

}  // namespace tagtime
