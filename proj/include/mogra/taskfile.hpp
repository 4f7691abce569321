#pragma once

#include <memory>
#include <string>
#include <vector>

#include "mogra/oracle.hpp"
#include "mogra/property.hpp"
#include "mogra/vocab.hpp"

namespace mogra {

// A loaded task file: the alphabet, the oracle registry bound to it, the
// property table, and one TaskSpec per source sequence.
//
// File format (see tasks/ for commented examples):
//   max_len = 24
//   content_symbols = a b c d e f g h i j     # optional, this is the default
//   [property]
//   name = ...      direction = +1|-1   delta = ...   theta = ...   oracle = ...
//   [source]
//   tokens = a a b c ...
struct TaskSuite {
  Vocabulary vocab = Vocabulary::standard();
  int max_len = 0;
  OracleRegistry registry;
  std::vector<PropertySpec> property_specs;
  std::vector<TaskSpec> tasks;  // one per [source] section
};

TaskSuite load_task_file(const std::string& path);
TaskSuite parse_task_text(const std::string& text, const std::string& origin = "<memory>");

}  // namespace mogra
