#pragma once

// Scores change-region approaches against the reachability oracle, one
// decision per reachable marking of the old net.

#include <string>
#include <vector>

#include "migra/ecws.hpp"
#include "migra/regions.hpp"
#include "migra/sese.hpp"
#include "migra/wfnet.hpp"

namespace migra::compare {

struct CompareRow {
  std::string approach;  // PSCR, SCR or SESE
  std::size_t total = 0;
  std::size_t correct = 0;
  std::size_t false_negatives = 0;  // migratable, flagged non-migratable
  std::size_t false_positives = 0;  // non-migratable, flagged migratable
  std::size_t unknowns = 0;

  double accuracy() const { return total == 0 ? 1.0 : static_cast<double>(correct) / static_cast<double>(total); }
};

struct Comparison {
  wfnet::OracleReport oracle;
  regions::AnalysisReport analysis;
  sese::SeseRegion sese;
  std::vector<CompareRow> rows;  // structural row first, then SESE
};

Comparison run(const ecws::BlockTree& old_tree, const ecws::BlockTree& new_tree,
               std::size_t cap = wfnet::kDefaultStateCap);

}  // namespace migra::compare
