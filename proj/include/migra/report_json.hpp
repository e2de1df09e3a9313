#pragma once

// Stable JSON documents for the command-line front end. Keys are sorted and
// label arrays are sorted, so equal inputs give byte-identical output.

#include <json.hpp>

#include "migra/compare.hpp"
#include "migra/regions.hpp"
#include "migra/sese.hpp"
#include "migra/wfnet.hpp"

namespace migra::report {

using nlohmann::json;

json labels(const std::set<Label>& s);

json to_json(const regions::AnalysisReport& r);

json to_json(const sese::SeseRegion& r);

/// Oracle ground truth plus an `agreement` block against the structural analysis.
json to_json(const wfnet::OracleReport& o, const regions::AnalysisReport& structural);

json to_json(const compare::CompareRow& row);

}  // namespace migra::report
