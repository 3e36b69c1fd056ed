#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "hypercrit/cylinder.hpp"
#include "hypercrit/density.hpp"
#include "hypercrit/irs.hpp"
#include "hypercrit/plane.hpp"
#include "hypercrit/series.hpp"
#include "hypercrit/subgroup.hpp"

namespace hypercrit {

using Json = nlohmann::ordered_json;

/// Fixed report float formatting: 12 significant digits.
double round12(double v);
std::string format12(double v);

/// Subgroup description files:
///   {"type":"fullGroup","rank":k}
///   {"type":"stallings","rank":k,"generators":["aa","ab"]}
///   {"type":"cosetStabilizer","rank":k,"perms":[[..],..],"point":p}
///   {"type":"kernelFinite","rank":k,"images":[[..],..]}
///   {"type":"kernelAbelian","rank":k,"images":[[..],..]}
/// Unknown keys are rejected. A rank supplied by the caller must agree
/// with the file when both are present.
SubgroupHandle subgroup_from_json(const Json& j, std::optional<int> rank_hint = std::nullopt);
Json subgroup_to_json(const SubgroupHandle& h);

/// IRS description files: either an explicit weighted support
///   {"schemaVersion":1,"rank":k,"support":[{"weight":w,"subgroup":{..}},..]}
/// or a constructor form
///   {"schemaVersion":1,"construct":"finiteIndexOrbit"|"diracNormal","subgroup":{..}}.
FiniteIrs irs_from_json(const Json& j, std::optional<int> rank_hint = std::nullopt);
Json irs_to_json(const FiniteIrs& mu);

Json plane_isometry_to_json(const PlaneIsometry& g);
PlaneIsometry plane_isometry_from_json(const Json& j);

Json series_to_json(const SeriesEstimate& e);
Json exponent_to_json(const ExponentEstimate& e);
Json divergence_to_json(const DivergenceReport& r);
Json coornaert_to_json(const CoornaertReport& r);
Json shadow_to_json(const Shadow& s);
Json cover_to_json(const ShadowCoverReport& r);
Json busemann_bounds_to_json(const BusemannShadowReport& r);
Json orbit_measure_to_json(const OrbitMeasure& m);
Json cylinder_measure_to_json(const CylinderMeasure& m);
Json shadow_lemma_to_json(const ShadowLemmaReport& r);
Json half_exponent_to_json(const HalfExponentReport& r);
Json shortest_element_to_json(const ShortestElementReport& r);
Json recurrence_to_json(const RecurrenceReport& r);
Json pipeline_to_json(const PipelineReport& r);
Json expected_exponent_to_json(const ExpectedExponentReport& r);
Json theorem_one_to_json(const TheoremOneReport& r);
Json summed_cocycle_to_json(const SummedCocycleReport& r);

/// CSV writers (stable column order, 12-significant-digit floats).
std::string growth_csv(const std::vector<BigInt>& counts);
std::string series_csv(const std::vector<BigInt>& counts, const SeriesEstimate& e);
std::string coornaert_csv(const CoornaertReport& r);
std::string recurrence_csv(const RecurrenceReport& r);

}  // namespace hypercrit
