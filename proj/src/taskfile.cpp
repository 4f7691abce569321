#include "mogra/taskfile.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "mogra/keyfile.hpp"
#include "mogra/util.hpp"

namespace mogra {

namespace {

std::vector<std::string> split_words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

int parse_direction(const std::string& s) {
  if (s == "+1" || s == "1") return +1;
  if (s == "-1") return -1;
  throw std::invalid_argument("direction must be +1 or -1, got '" + s + "'");
}

}  // namespace

TaskSuite parse_task_text(const std::string& text, const std::string& origin) {
  const KeyFile kf = parse_keyfile_text(text, origin);
  TaskSuite suite;

  if (kf.top.has("content_symbols")) {
    suite.vocab = Vocabulary(split_words(kf.top.entries.at("content_symbols")));
  }
  if (!kf.top.has("max_len")) throw std::invalid_argument(origin + ": missing max_len");
  suite.max_len = static_cast<int>(parse_double(kf.top.entries.at("max_len")));
  if (suite.max_len < 1) throw std::invalid_argument(origin + ": max_len must be >= 1");

  suite.registry = builtin_registry(suite.vocab, suite.max_len);

  for (const auto* sec : kf.sections_named("property")) {
    PropertySpec spec;
    spec.name = sec->require("name");
    spec.direction = parse_direction(sec->require("direction"));
    spec.delta = parse_double(sec->require("delta"));
    spec.theta = parse_double(sec->require("theta"));
    spec.oracle_id = sec->require("oracle");
    spec.validate();
    if (!suite.registry.contains(spec.oracle_id)) {
      throw std::invalid_argument(origin + ": property '" + spec.name + "' uses unresolved oracle '" +
                                  spec.oracle_id + "'");
    }
    for (const auto& prev : suite.property_specs) {
      if (prev.name == spec.name) {
        throw std::invalid_argument(origin + ": duplicate property '" + spec.name + "'");
      }
    }
    suite.property_specs.push_back(std::move(spec));
  }
  if (suite.property_specs.empty()) {
    throw std::invalid_argument(origin + ": a task file needs at least one [property]");
  }

  for (const auto* sec : kf.sections_named("source")) {
    std::vector<int> tokens;
    for (const auto& w : split_words(sec->require("tokens"))) {
      const int id = suite.vocab.id_of(w);
      if (!suite.vocab.is_content(id)) {
        throw std::invalid_argument(origin + ": source contains non-content symbol '" + w + "'");
      }
      tokens.push_back(id);
    }
    suite.tasks.push_back(make_task(Candidate::from_tokens(std::move(tokens)), suite.property_specs,
                                    suite.registry, suite.max_len));
  }
  if (suite.tasks.empty()) {
    throw std::invalid_argument(origin + ": a task file needs at least one [source]");
  }
  return suite;
}

TaskSuite load_task_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open task file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_task_text(buf.str(), path);
}

}  // namespace mogra
