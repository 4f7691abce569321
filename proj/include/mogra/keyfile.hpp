#pragma once

#include <map>
#include <string>
#include <vector>

namespace mogra {

// Minimal sectioned key-value text format shared by the task files:
//   # comment
//   key = value
//   [section]
//   key = value
// Sections may repeat; order is preserved. Values are verbatim (trimmed).
struct KeySection {
  std::string name;
  int line = 0;
  std::map<std::string, std::string> entries;

  const std::string& require(const std::string& key) const;
  bool has(const std::string& key) const { return entries.count(key) > 0; }
};

struct KeyFile {
  KeySection top;  // entries before the first section header
  std::vector<KeySection> sections;

  std::vector<const KeySection*> sections_named(const std::string& name) const;
};

KeyFile parse_keyfile_text(const std::string& text, const std::string& origin = "<memory>");
KeyFile load_keyfile(const std::string& path);

}  // namespace mogra
