#pragma once

#include "skelcalc/radius.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace skc {

// Flat key -> value table of everything both sides compute. Keys look like
// "lap H2 v0", "lin1 counts", "row <id> <i> <locus> <quantity>", "rows <id> <i> <quantity>".
using Facts = std::map<std::string, std::string>;

// Recomputation straight from the instance data. Uses none of the traversal,
// PL or graph code of the library; only the data types and rational printing.
Facts oracle_facts(const Instance& I);

// The same table read off the library pipeline.
Facts pipeline_facts(const Analysis& A);

std::vector<std::string> diff_facts(const Facts& pipeline, const Facts& oracle);
std::vector<std::string> oracle_verify(const Instance& I);

struct MutationRun {
  int total = 0, killed = 0;
  std::vector<std::string> survivors;
};
// Corrupts one intermediate of the pipeline per mutant and checks that the oracle notices.
MutationRun mutation_run(const std::vector<Instance>& pool, int count, std::uint64_t seed);

}  // namespace skc
