#include "hypercrit/json_io.hpp"

#include <cstdio>
#include <set>

#include "hypercrit/errors.hpp"

namespace hypercrit {

double round12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return std::strtod(buf, nullptr);
}

std::string format12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

namespace {

void require_keys(const Json& j, const std::set<std::string>& allowed,
                  const std::string& what) {
    if (!j.is_object()) throw InvalidInputError(what + ": expected a JSON object");
    for (const auto& [key, _] : j.items())
        if (!allowed.contains(key))
            throw InvalidInputError(what + ": unknown key '" + key + "'");
}

int resolve_rank(const Json& j, std::optional<int> hint, const std::string& what) {
    if (j.contains("rank")) {
        int r = j.at("rank").get<int>();
        if (hint && *hint != r)
            throw InvalidInputError(what + ": rank " + std::to_string(r) +
                                    " conflicts with requested rank " + std::to_string(*hint));
        return r;
    }
    if (!hint) throw InvalidInputError(what + ": rank missing");
    return *hint;
}

std::vector<std::vector<int>> int_matrix(const Json& j) {
    std::vector<std::vector<int>> m;
    for (const auto& row : j) m.push_back(row.get<std::vector<int>>());
    return m;
}

Json big_to_json(const BigInt& b) {
    if (b.fits_int64()) return Json(b.to_int64());
    return Json(b.to_string());
}

}  // namespace

SubgroupHandle subgroup_from_json(const Json& j, std::optional<int> rank_hint) {
    if (!j.is_object() || !j.contains("type"))
        throw InvalidInputError("subgroup description: missing 'type'");
    std::string type = j.at("type").get<std::string>();
    if (type == "fullGroup") {
        require_keys(j, {"type", "rank"}, "fullGroup");
        return SubgroupHandle::full_group(resolve_rank(j, rank_hint, "fullGroup"));
    }
    if (type == "stallings") {
        require_keys(j, {"type", "rank", "generators"}, "stallings");
        int rank = resolve_rank(j, rank_hint, "stallings");
        std::vector<Word> gens;
        for (const auto& s : j.at("generators"))
            gens.push_back(Word::parse(s.get<std::string>(), rank));
        return SubgroupHandle::stallings(rank, gens);
    }
    if (type == "cosetStabilizer") {
        require_keys(j, {"type", "rank", "perms", "point"}, "cosetStabilizer");
        int rank = resolve_rank(j, rank_hint, "cosetStabilizer");
        PermutationAction a = PermutationAction::make(rank, int_matrix(j.at("perms")));
        return SubgroupHandle::coset_stabilizer(a, j.at("point").get<int>());
    }
    if (type == "kernelFinite") {
        require_keys(j, {"type", "rank", "images"}, "kernelFinite");
        int rank = resolve_rank(j, rank_hint, "kernelFinite");
        return SubgroupHandle::kernel_finite(rank, int_matrix(j.at("images")));
    }
    if (type == "kernelAbelian") {
        require_keys(j, {"type", "rank", "images"}, "kernelAbelian");
        int rank = resolve_rank(j, rank_hint, "kernelAbelian");
        std::vector<std::vector<long long>> images;
        for (const auto& row : j.at("images")) images.push_back(row.get<std::vector<long long>>());
        return SubgroupHandle::kernel_abelian(rank, images);
    }
    throw InvalidInputError("subgroup description: unknown type '" + type + "'");
}

Json subgroup_to_json(const SubgroupHandle& h) {
    Json j;
    switch (h.kind()) {
        case SubgroupHandle::Kind::Stallings: {
            j["type"] = "stallings";
            j["rank"] = h.rank();
            Json gens = Json::array();
            for (const Word& w : h.generators()) gens.push_back(w.str());
            j["generators"] = gens;
            return j;
        }
        case SubgroupHandle::Kind::CosetStabilizer: {
            j["type"] = "cosetStabilizer";
            j["rank"] = h.rank();
            j["perms"] = h.action().perms();
            j["point"] = h.stabilized_point();
            return j;
        }
        case SubgroupHandle::Kind::KernelFinite: {
            j["type"] = "kernelFinite";
            j["rank"] = h.rank();
            j["images"] = h.finite_images();
            return j;
        }
        case SubgroupHandle::Kind::KernelAbelian: {
            j["type"] = "kernelAbelian";
            j["rank"] = h.rank();
            j["images"] = h.abelian_images();
            return j;
        }
    }
    throw InvariantViolationError("unknown subgroup kind");
}

FiniteIrs irs_from_json(const Json& j, std::optional<int> rank_hint) {
    if (!j.is_object()) throw InvalidInputError("IRS description: expected a JSON object");
    if (j.contains("construct")) {
        require_keys(j, {"schemaVersion", "construct", "subgroup", "rank"}, "IRS description");
        std::string c = j.at("construct").get<std::string>();
        std::optional<int> hint = rank_hint;
        if (j.contains("rank")) hint = resolve_rank(j, rank_hint, "IRS description");
        SubgroupHandle h = subgroup_from_json(j.at("subgroup"), hint);
        if (c == "finiteIndexOrbit") return irs_from_finite_index(h);
        if (c == "diracNormal") return irs_from_normal(h);
        throw InvalidInputError("IRS description: unknown construct '" + c + "'");
    }
    require_keys(j, {"schemaVersion", "rank", "support"}, "IRS description");
    int rank = resolve_rank(j, rank_hint, "IRS description");
    std::vector<FiniteIrs::Member> support;
    for (const auto& entry : j.at("support")) {
        require_keys(entry, {"weight", "subgroup"}, "IRS support entry");
        support.push_back({subgroup_from_json(entry.at("subgroup"), rank),
                           entry.at("weight").get<double>()});
    }
    return FiniteIrs::make(rank, std::move(support));
}

Json irs_to_json(const FiniteIrs& mu) {
    Json j;
    j["schemaVersion"] = 1;
    j["rank"] = mu.rank();
    Json support = Json::array();
    for (const auto& m : mu.support()) {
        Json e;
        e["weight"] = round12(m.weight);
        e["subgroup"] = subgroup_to_json(m.subgroup);
        support.push_back(e);
    }
    j["support"] = support;
    return j;
}

Json plane_isometry_to_json(const PlaneIsometry& g) {
    return Json::array({round12(g.a()), round12(g.b()), round12(g.c()), round12(g.d())});
}

PlaneIsometry plane_isometry_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 4)
        throw InvalidInputError("plane isometry: expected a 4-tuple [a,b,c,d]");
    return PlaneIsometry(j[0].get<double>(), j[1].get<double>(), j[2].get<double>(),
                         j[3].get<double>());
}

Json series_to_json(const SeriesEstimate& e) {
    Json j;
    j["schemaVersion"] = 1;
    j["exponent"] = round12(e.exponent);
    j["truncationRadius"] = e.truncation_radius;
    j["partialSum"] = round12(e.partial_sum);
    Json terms = Json::array();
    for (double t : e.per_sphere_terms) terms.push_back(round12(t));
    j["perSphereTerms"] = terms;
    if (e.tail_bound)
        j["tailBound"] = round12(*e.tail_bound);
    else
        j["tailBound"] = nullptr;
    return j;
}

Json exponent_to_json(const ExponentEstimate& e) {
    Json j;
    j["schemaVersion"] = 1;
    j["radii"] = e.radii;
    Json logs = Json::array();
    for (double v : e.log_counts) logs.push_back(round12(v));
    j["logCounts"] = logs;
    Json diffs = Json::array();
    for (const auto& [r, d] : e.difference_estimates)
        diffs.push_back(Json{{"radius", r}, {"difference", round12(d)}});
    j["differenceEstimates"] = diffs;
    j["slopeEstimate"] = round12(e.slope);
    j["bracket"] = Json::array({round12(e.bracket.first), round12(e.bracket.second)});
    j["finiteGroup"] = e.finite_group;
    j["exactRatio"] = e.exact_ratio;
    return j;
}

Json divergence_to_json(const DivergenceReport& r) {
    Json j;
    j["schemaVersion"] = 1;
    j["exponent"] = round12(r.exponent);
    j["truncationRadius"] = r.truncation_radius;
    Json sums = Json::array();
    for (double v : r.partial_sums) sums.push_back(round12(v));
    j["partialSums"] = sums;
    j["classification"] = growth_class_name(r.classification);
    j["note"] = "classification from truncated data; divergence type is not decidable";
    return j;
}

Json coornaert_to_json(const CoornaertReport& r) {
    Json j;
    j["schemaVersion"] = 1;
    j["window"] = r.window;
    j["deltaHat"] = round12(r.delta_hat);
    Json rows = Json::array();
    for (const auto& row : r.rows)
        rows.push_back(Json{{"r", row.r}, {"count", big_to_json(row.count)},
                            {"ratio", round12(row.ratio)}});
    j["rows"] = rows;
    j["minRatio"] = round12(r.min_ratio);
    j["maxRatio"] = round12(r.max_ratio);
    return j;
}

Json shadow_to_json(const Shadow& s) {
    Json j;
    j["schemaVersion"] = 1;
    j["x"] = s.x.str();
    j["y"] = s.y.str();
    j["radius"] = s.radius;
    j["full"] = s.set.full;
    Json stems = Json::array();
    for (const Word& w : s.set.stems) stems.push_back(w.str());
    j["stems"] = stems;
    return j;
}

Json cover_to_json(const ShadowCoverReport& r) {
    Json j;
    j["schemaVersion"] = 1;
    j["covered"] = r.covered;
    j["maxMultiplicity"] = r.max_multiplicity;
    j["minMultiplicity"] = r.min_multiplicity;
    j["depth"] = r.depth;
    j["shadows"] = r.shadows;
    return j;
}

Json busemann_bounds_to_json(const BusemannShadowReport& r) {
    Json j;
    j["schemaVersion"] = 1;
    j["samples"] = r.samples;
    j["minBeta"] = r.min_beta;
    j["maxBeta"] = r.max_beta;
    j["dist"] = r.dist;
    j["radius"] = r.radius;
    j["violation"] = r.violation;
    return j;
}

Json orbit_measure_to_json(const OrbitMeasure& m) {
    Json j;
    j["schemaVersion"] = 1;
    j["subgroup"] = m.subgroup_key;
    j["s"] = round12(m.s);
    j["radius"] = m.radius;
    j["degenerate"] = m.degenerate;
    Json atoms = Json::array();
    for (const auto& [w, wt] : m.atoms)
        atoms.push_back(Json{{"word", w.str()}, {"weight", round12(wt)}});
    j["atoms"] = atoms;
    return j;
}

Json cylinder_measure_to_json(const CylinderMeasure& m) {
    Json j;
    j["schemaVersion"] = 1;
    j["depth"] = m.depth();
    j["exact"] = m.is_exact();
    j["totalMass"] = round12(m.total());
    Json masses = Json::object();
    for (const auto& [stem, mass] : m.masses()) {
        if (mass.exact)
            masses[stem.str()] = mass.exact->to_string();
        else
            masses[stem.str()] = round12(mass.value);
    }
    j["masses"] = masses;
    return j;
}

Json shadow_lemma_to_json(const ShadowLemmaReport& r) {
    Json j;
    j["schemaVersion"] = 1;
    j["radius"] = r.radius;
    j["deltaHat"] = round12(r.delta_hat);
    j["allExact"] = r.all_exact;
    Json rows = Json::array();
    for (const auto& row : r.rows) {
        Json e{{"g", row.g.str()}, {"ratio", round12(row.ratio)}};
        if (row.exact) e["exactRatio"] = row.exact->to_string();
        rows.push_back(e);
    }
    j["rows"] = rows;
    j["minRatio"] = round12(r.min_ratio);
    j["maxRatio"] = round12(r.max_ratio);
    return j;
}

Json half_exponent_to_json(const HalfExponentReport& r) {
    Json j;
    j["schemaVersion"] = 1;
    j["checked"] = r.checked;
    j["beta"] = round12(r.beta);
    j["worstSlack"] = round12(r.worst_slack);
    j["worstGamma"] = r.worst_gamma ? Json(r.worst_gamma->str()) : Json(nullptr);
    j["violation"] = r.violation;
    return j;
}

Json shortest_element_to_json(const ShortestElementReport& r) {
    Json j;
    j["schemaVersion"] = 1;
    j["gammaH"] = r.gamma_h.str();
    j["seriesValue"] = round12(r.series_value);
    j["boundValue"] = round12(r.bound_value);
    j["alpha"] = round12(r.alpha);
    j["axisDistance"] = r.axis_distance;
    j["multiplicity"] = round12(r.multiplicity);
    j["enumerated"] = r.enumerated;
    return j;
}

Json recurrence_to_json(const RecurrenceReport& r) {
    Json j;
    j["schemaVersion"] = 1;
    j["x"] = r.x;
    j["U"] = r.U;
    j["window"] = r.window;
    j["deltaHat"] = round12(r.delta_hat);
    j["muU"] = round12(r.mu_U);
    Json rows = Json::array();
    for (const auto& row : r.rows)
        rows.push_back(Json{{"r", row.r}, {"count", big_to_json(row.count)},
                            {"normalized", round12(row.normalized)}});
    j["rows"] = rows;
    j["infimum"] = round12(r.infimum);
    j["kappaHat"] = round12(r.kappa_hat);
    j["measureMargin"] = round12(r.measure_margin);
    return j;
}

Json pipeline_to_json(const PipelineReport& r) {
    Json j;
    j["schemaVersion"] = 1;
    j["exponent"] = round12(r.exponent);
    j["radius"] = r.radius;
    j["hRadius"] = r.h_radius;
    j["alpha"] = round12(r.alpha);
    j["beta"] = round12(r.beta);
    j["hCount"] = r.h_count;
    j["q1"] = round12(r.q1);
    j["q2"] = round12(r.q2);
    j["q3"] = round12(r.q3);
    j["ineq1"] = r.ineq1;
    j["ineq2"] = r.ineq2;
    j["emptyChain"] = r.empty_chain;
    return j;
}

Json expected_exponent_to_json(const ExpectedExponentReport& r) {
    Json j;
    j["schemaVersion"] = 1;
    j["expectedExponent"] = round12(r.value);
    Json rows = Json::array();
    for (const auto& row : r.rows) {
        Json e;
        e["subgroup"] = row.key;
        e["weight"] = round12(row.weight);
        e["slope"] = round12(row.estimate.slope);
        e["bracket"] = Json::array(
            {round12(row.estimate.bracket.first), round12(row.estimate.bracket.second)});
        rows.push_back(e);
    }
    j["members"] = rows;
    return j;
}

Json theorem_one_to_json(const TheoremOneReport& r) {
    Json j;
    j["schemaVersion"] = 1;
    j["threshold"] = round12(r.threshold);
    Json rows = Json::array();
    for (const auto& row : r.rows) {
        Json e;
        e["subgroup"] = row.key;
        e["weight"] = round12(row.weight);
        e["bracket"] = Json::array({round12(row.bracket.first), round12(row.bracket.second)});
        e["verdict"] = theorem_verdict_name(row.verdict);
        rows.push_back(e);
    }
    j["members"] = rows;
    j["allPass"] = r.all_pass;
    return j;
}

Json summed_cocycle_to_json(const SummedCocycleReport& r) {
    Json j;
    j["schemaVersion"] = 1;
    j["deltaHat"] = round12(r.delta_hat);
    j["window"] = r.window;
    j["shadowRadius"] = r.shadow_radius;
    j["c"] = round12(r.c_const);
    j["p"] = round12(r.p_mult);
    j["cPrime"] = round12(r.c_prime);
    Json rows = Json::array();
    for (const auto& row : r.rows)
        rows.push_back(Json{{"r", row.r},
                            {"sumPi", round12(row.sum_pi)},
                            {"bound", round12(row.bound)},
                            {"margin1", round12(row.margin1)},
                            {"countE", round12(row.count_e)},
                            {"rhs2", round12(row.rhs2)},
                            {"margin2", round12(row.margin2)}});
    j["rows"] = rows;
    j["allOk"] = r.all_ok;
    if (r.uncontrolled_approximation)
        j["note"] = "uncontrolled approximation: projected densities carry no error bound";
    return j;
}

std::string growth_csv(const std::vector<BigInt>& counts) {
    std::string s = "n,count\n";
    for (std::size_t n = 0; n < counts.size(); ++n)
        s += std::to_string(n) + "," + counts[n].to_string() + "\n";
    return s;
}

std::string series_csv(const std::vector<BigInt>& counts, const SeriesEstimate& e) {
    std::string s = "n,count,term,cumulative\n";
    double acc = 0;
    for (std::size_t n = 0; n < counts.size(); ++n) {
        acc += e.per_sphere_terms[n];
        s += std::to_string(n) + "," + counts[n].to_string() + "," +
             format12(e.per_sphere_terms[n]) + "," + format12(acc) + "\n";
    }
    return s;
}

std::string coornaert_csv(const CoornaertReport& r) {
    std::string s = "r,count,ratio\n";
    for (const auto& row : r.rows)
        s += std::to_string(row.r) + "," + row.count.to_string() + "," + format12(row.ratio) +
             "\n";
    return s;
}

std::string recurrence_csv(const RecurrenceReport& r) {
    std::string s = "r,count,normalized\n";
    for (const auto& row : r.rows)
        s += std::to_string(row.r) + "," + row.count.to_string() + "," +
             format12(row.normalized) + "\n";
    return s;
}

}  // namespace hypercrit
