#include "migra/compare.hpp"

namespace migra::compare {

namespace {

void tally(CompareRow& row, regions::Decision d, bool migratable) {
  ++row.total;
  if (d == regions::Decision::Unknown) ++row.unknowns;
  else if ((d == regions::Decision::Migratable) == migratable) ++row.correct;
  else if (migratable) ++row.false_negatives;
  else ++row.false_positives;
}

}  // namespace

Comparison run(const ecws::BlockTree& old_tree, const ecws::BlockTree& new_tree, std::size_t cap) {
  Comparison c;
  c.oracle = wfnet::oracle_classify(ecws::build_net(old_tree), ecws::build_net(new_tree), cap);
  c.analysis = regions::analyze(old_tree, new_tree);
  c.sese = sese::compute(old_tree, new_tree);

  CompareRow structural{c.analysis.pscr_exists ? "PSCR" : "SCR"};
  CompareRow baseline{"SESE"};
  for (const auto& m : c.oracle.reachable_old) {
    bool migratable = c.oracle.reachable_new.count(m) > 0;
    tally(structural, regions::decide_marking(m, c.analysis), migratable);
    tally(baseline,
          sese::flags_non_migratable(m, c.sese) ? regions::Decision::NonMigratable : regions::Decision::Migratable,
          migratable);
  }
  c.rows = {structural, baseline};
  return c;
}

}  // namespace migra::compare
