#pragma once

#include <string>
#include <vector>

#include "tagtime/folksonomy.hpp"

namespace tagtime::fixture {

inline Folksonomy make(const std::vector<RawAssignment>& rows) {
  return Folksonomy::from_raw(rows);
}

inline UserId uid(const Folksonomy& f, const std::string& name) {
  return *f.vocabulary().users.find(name);
}
inline ItemId iid(const Folksonomy& f, const std::string& name) {
  return *f.vocabulary().items.find(name);
}
inline TagId tid(const Folksonomy& f, const std::string& name) {
  return *f.vocabulary().tags.find(name);
}

inline std::string data_file(const std::string& name) {
  return std::string(TAGTIME_TEST_DATA) + "/" + name;
}

constexpr Timestamp kDay = 86400;

}  // namespace tagtime::fixture
