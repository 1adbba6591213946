#pragma once

// JSON views of core results. Complex numbers become {"re", "im"} objects;
// non-finite doubles become null.

#include <json.hpp>

#include "slalom/amplitude.hpp"
#include "slalom/branch_cuts.hpp"
#include "slalom/classical.hpp"

namespace slalom::frontend {

using json = nlohmann::json;

json to_json(cplx z);
/// Accepts {"re": x, "im": y} or [x, y]; throws json::exception otherwise.
cplx complex_from_json(const json& j);

json to_json(const FieldParams& fp);
json to_json(const Momentum& p);
json to_json(const SaddleSolution& s);
json to_json(const SoftRecollision& sr);
json to_json(const CAPoint& c);
json to_json(const std::vector<CAPoint>& cs);
json to_json(const ContourPath& path);
json to_json(const ValidationReport& r);
json to_json(const AmplitudeBreakdown& a);
json to_json(const BranchPoint& b);
json to_json(const CutCurve& c);
json to_json(const TopologyReport& r);
json to_json(const TimeWindow& w);
/// Real and imaginary parts as flat row-major arrays, plus the cut flags.
json to_json(const DistanceField& f);

}  // namespace slalom::frontend
