#include "migra/report_json.hpp"

namespace migra::report {

namespace {

json classes(const std::map<Label, wfnet::PlaceClass>& m) {
  json out = json::object();
  for (const auto& [p, c] : m) out[p] = std::string(wfnet::to_string(c));
  return out;
}

json optional_labels(const std::optional<std::set<Label>>& s) { return s ? labels(*s) : json(nullptr); }

}  // namespace

json labels(const std::set<Label>& s) {
  json out = json::array();
  for (const auto& l : s) out.push_back(l);
  return out;
}

json to_json(const regions::AnalysisReport& r) {
  const auto& cs = r.change_sets;
  return json{{"cr_r", labels(cs.cr_r)},   {"cr_lc", labels(cs.cr_lc)},   {"cr_ac", labels(cs.cr_ac)},
              {"cr_wrc", labels(cs.cr_wrc)}, {"cr_src", labels(cs.cr_src)}, {"over", labels(r.over)},
              {"perf", labels(r.perf)},      {"scr", labels(r.scr)},        {"pscr_exists", r.pscr_exists},
              {"pscr", optional_labels(r.pscr)}, {"per_place", classes(r.per_place)}};
}

json to_json(const sese::SeseRegion& r) {
  return json{{"static", labels(r.static_nodes)},
              {"dynamic", labels(r.dynamic_places)},
              {"improved", labels(r.improved_places)}};
}

json to_json(const wfnet::OracleReport& o, const regions::AnalysisReport& s) {
  json non_migratable = json::array();
  for (const auto& m : o.non_migratable) non_migratable.push_back(m.str());
  json mismatched = json::array();
  for (const auto& [p, c] : o.per_place) {
    auto it = s.per_place.find(p);
    if (it == s.per_place.end() || it->second != c) mismatched.push_back(p);
  }
  bool scr = o.scr == s.scr;
  bool exists = o.pscr_exists == s.pscr_exists;
  bool pscr = o.pscr == s.pscr;
  json agreement{{"scr", scr},
                 {"pscr_exists", exists},
                 {"pscr", pscr},
                 {"per_place", mismatched.empty()},
                 {"mismatched_places", mismatched},
                 {"structural_pscr_exists", s.pscr_exists},
                 {"all", scr && exists && pscr && mismatched.empty()}};
  return json{{"reachable_old", o.reachable_old.size()},
              {"reachable_new", o.reachable_new.size()},
              {"non_migratable", non_migratable},
              {"per_place", classes(o.per_place)},
              {"scr", labels(o.scr)},
              {"pscr_exists", o.pscr_exists},
              {"pscr", optional_labels(o.pscr)},
              {"agreement", agreement}};
}

json to_json(const compare::CompareRow& row) {
  return json{{"approach", row.approach},
              {"total", row.total},
              {"correct", row.correct},
              {"false_negatives", row.false_negatives},
              {"false_positives", row.false_positives},
              {"unknowns", row.unknowns},
              {"accuracy", row.accuracy()}};
}

}  // namespace migra::report
