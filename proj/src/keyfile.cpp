#include "mogra/keyfile.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace mogra {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

const std::string& KeySection::require(const std::string& key) const {
  auto it = entries.find(key);
  if (it == entries.end()) {
    throw std::invalid_argument("section [" + name + "] (line " + std::to_string(line) +
                                "): missing key '" + key + "'");
  }
  return it->second;
}

std::vector<const KeySection*> KeyFile::sections_named(const std::string& name) const {
  std::vector<const KeySection*> out;
  for (const auto& s : sections) {
    if (s.name == name) out.push_back(&s);
  }
  return out;
}

KeyFile parse_keyfile_text(const std::string& text, const std::string& origin) {
  KeyFile file;
  KeySection* current = &file.top;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw std::invalid_argument(origin + ":" + std::to_string(lineno) + ": unterminated section header");
      }
      KeySection s;
      s.name = trim(line.substr(1, line.size() - 2));
      s.line = lineno;
      if (s.name.empty()) {
        throw std::invalid_argument(origin + ":" + std::to_string(lineno) + ": empty section name");
      }
      file.sections.push_back(std::move(s));
      current = &file.sections.back();
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument(origin + ":" + std::to_string(lineno) + ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      throw std::invalid_argument(origin + ":" + std::to_string(lineno) + ": empty key");
    }
    if (!current->entries.emplace(key, value).second) {
      throw std::invalid_argument(origin + ":" + std::to_string(lineno) + ": duplicate key '" + key + "'");
    }
  }
  return file;
}

KeyFile load_keyfile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_keyfile_text(buf.str(), path);
}

}  // namespace mogra
