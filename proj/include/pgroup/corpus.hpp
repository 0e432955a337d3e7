#pragma once

// Built-in regression fixtures: presentations validated against the
// consistency checker plus expected structural profiles and the criterion
// each group settles on.

#include <string>
#include <vector>

#include "pgroup/group.hpp"

namespace pgroup {

struct CorpusEntry {
  std::string name;
  std::string text;  // presentation source, same bytes as corpus/<name>.pc
  std::int64_t order = 0;
  int cls = 0;
  int d = 0;
  int d_center = 0;
  std::string expected_criterion;
};

const std::vector<CorpusEntry>& builtin_corpus();

PcGroup corpus_group(const CorpusEntry& entry);

}  // namespace pgroup
