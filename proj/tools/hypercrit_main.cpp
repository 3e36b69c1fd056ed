// hypercrit: desk-scale computations on free-group Cayley trees and the
// hyperbolic plane: growth, Poincare series, critical exponents, shadows,
// conformal densities, invariant random subgroups.

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "hypercrit/conjugacy.hpp"
#include "hypercrit/counting.hpp"
#include "hypercrit/cylinder.hpp"
#include "hypercrit/density.hpp"
#include "hypercrit/errors.hpp"
#include "hypercrit/irs.hpp"
#include "hypercrit/json_io.hpp"
#include "hypercrit/series.hpp"

using namespace hypercrit;

namespace {

struct Output {
    std::string path;  // empty = stdout
    void write(const std::string& text) const {
        if (path.empty()) {
            std::cout << text;
            if (text.empty() || text.back() != '\n') std::cout << '\n';
            return;
        }
        std::ofstream f(path);
        if (!f) throw InvalidInputError("cannot open output file " + path);
        f << text;
        if (text.empty() || text.back() != '\n') f << '\n';
    }
    void write_json(const Json& j) const { write(j.dump(2)); }
};

Json load_json(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw InvalidInputError("cannot open " + path);
    Json j;
    try {
        f >> j;
    } catch (const std::exception& e) {
        throw InvalidInputError(std::string("malformed JSON in ") + path + ": " + e.what());
    }
    return j;
}

SubgroupHandle load_subgroup(const std::string& path, int rank) {
    return subgroup_from_json(load_json(path), rank);
}

double default_delta_hat(int rank) { return std::log(static_cast<double>(2 * rank - 1)); }

bool approx(double a, double b, double tol = 1e-9) { return std::abs(a - b) <= tol; }

int selftest_growth() {
    auto counts = sphere_counts(SubgroupHandle::full_group(2), 5);
    std::vector<long long> expect{1, 4, 12, 36, 108, 324};
    for (int n = 0; n <= 5; ++n)
        if (counts[static_cast<std::size_t>(n)] != BigInt(expect[static_cast<std::size_t>(n)]))
            return 1;
    if (sphere_count(SubgroupHandle::stallings(2, {Word::parse("a", 2)}), 5) != BigInt(2))
        return 1;
    if (sphere_count(SubgroupHandle::kernel_abelian(2, {{1, 0}, {0, 1}}), 4) != BigInt(8))
        return 1;
    return 0;
}

int selftest_delta() {
    ExponentEstimate e = critical_exponent_estimate(SubgroupHandle::full_group(2), 20);
    if (!e.exact_ratio || e.slope != std::log(3.0)) return 1;
    if (critical_exponent_estimate(SubgroupHandle::stallings(2, {Word::parse("a", 2)}), 20)
            .slope != 0.0)
        return 1;
    ExponentEstimate c =
        critical_exponent_estimate(SubgroupHandle::kernel_abelian(2, {{1, 0}, {0, 1}}), 40);
    return (c.slope >= 0.95 && c.slope <= 1.0987) ? 0 : 1;
}

int selftest_poincare() {
    SeriesEstimate e = poincare_partial(SubgroupHandle::full_group(2), std::log(3.0), 10);
    if (!approx(e.partial_sum, 1.0 + 40.0 / 3.0, 1e-9)) return 1;
    SeriesEstimate conv = poincare_partial(SubgroupHandle::full_group(2), std::log(4.0), 20);
    if (!conv.tail_bound) return 1;
    if (!approx(conv.partial_sum + *conv.tail_bound, 5.0, 1e-3)) return 1;
    DivergenceReport d =
        divergence_diagnostic(SubgroupHandle::full_group(2), std::log(3.0), 20);
    return d.classification == GrowthClass::LinearOrFaster ? 0 : 1;
}

int selftest_conj_series() {
    double s = 1.0;
    SubgroupHandle full2 = SubgroupHandle::full_group(2);
    SeriesEstimate cz = conjugation_series(full2, Word::parse("a", 2), {Word::parse("a", 2)}, s, 5);
    double expect = 1;
    for (int n = 1; n <= 5; ++n) expect += 2 * std::exp(-s * n);
    if (!approx(cz.partial_sum, expect)) return 1;
    SeriesEstimate coset =
        conjugation_series(full2, Word::parse("a", 2), {Word::parse("baB", 2)}, s, 5);
    double expect2 = 0;
    for (int n = -4; n <= 4; ++n) expect2 += std::exp(-s * (std::abs(n) + 1));
    if (!approx(coset.partial_sum, expect2)) return 1;
    SeriesEstimate empty =
        conjugation_series(full2, Word::parse("ab", 2), {Word::parse("aa", 2)}, s, 6);
    return empty.partial_sum == 0.0 ? 0 : 1;
}

int selftest_shadow() {
    Shadow s0 = shadow(2, Word(), Word::parse("ab", 2), 0);
    if (s0.set.full || s0.set.stems.size() != 1 || s0.set.stems[0].str() != "ab") return 1;
    Shadow s1 = shadow(2, Word(), Word::parse("ab", 2), 1);
    if (s1.set.stems.size() != 1 || s1.set.stems[0].str() != "a") return 1;
    if (!shadow(2, Word(), Word(), 1).set.full) return 1;
    ShadowCoverReport cover = shadow_cover_check(SubgroupHandle::full_group(2), 0, 0, 3);
    if (!cover.covered || cover.max_multiplicity != 1) return 1;
    BusemannShadowReport b = busemann_shadow_bounds_check(2, Word(), Word::parse("ab", 2), 1, 5);
    return (!b.violation && b.min_beta == 0 && b.max_beta == 2) ? 0 : 1;
}

int selftest_ps_measure() {
    OrbitMeasure m = ws_measure(SubgroupHandle::full_group(2), std::log(4.0), 2);
    if (m.atoms.empty() || !m.atoms[0].first.is_identity()) return 1;
    if (!approx(m.atoms[0].second, 1.0 / 2.75, 1e-9)) return 1;
    CylinderMeasure nu = boundary_project(m, 1);
    if (!approx(nu.mass(Word::parse("a", 2)).value, 0.25, 1e-9)) return 1;
    CylinderMeasure exact = exact_conformal_density(2, Word::parse("a", 2), 2);
    if (exact.mass(Word::parse("a", 2)).exact->to_string() != "3/4") return 1;
    return exact.total_mass().exact->to_string() == "1" ? 0 : 1;
}

int selftest_shadow_lemma() {
    CylinderMeasure nu = exact_conformal_density(2, Word(), 8);
    ShadowLemmaReport r0 =
        shadow_lemma_check(SubgroupHandle::full_group(2), std::log(3.0), 3, 0, 8, nu);
    if (!r0.all_exact) return 1;
    for (const auto& row : r0.rows)
        if (!row.exact || row.exact->to_string() != "3/4") return 1;
    ShadowLemmaReport r1 =
        shadow_lemma_check(SubgroupHandle::full_group(2), std::log(3.0), 3, 1, 8, nu);
    return (r1.min_ratio >= 0.75 - 1e-12 && r1.max_ratio <= 3.0 + 1e-12) ? 0 : 1;
}

int selftest_recurrence() {
    PermutationAction a = PermutationAction::make(2, {{1, 2, 0}, {1, 0, 2}});
    RecurrenceReport rep = recurrence_counts(2, a, 0, {0, 1}, 1, 12, std::log(3.0));
    if (rep.infimum <= 0) return 1;
    PermutationAction one = PermutationAction::make(2, {{0}, {0}});
    RecurrenceReport r1 = recurrence_counts(2, one, 0, {0}, 1, 8, std::log(3.0));
    for (const auto& row : r1.rows) {
        BigInt annulus = annulus_count(SubgroupHandle::full_group(2), row.r, row.r + 1).count;
        if (row.count != annulus) return 1;
    }
    RecurrenceReport r2 = recurrence_counts(2, a, 0, {}, 1, 6, std::log(3.0));
    return r2.infimum == 0.0 ? 0 : 1;
}

int selftest_irs_report() {
    FiniteIrs dirac = irs_from_finite_index(SubgroupHandle::full_group(2));
    if (!approx(expected_critical_exponent(dirac, 20).value, std::log(3.0), 1e-12)) return 1;
    PermutationAction s3 = PermutationAction::make(2, {{1, 2, 0}, {1, 0, 2}});
    FiniteIrs orbit = irs_from_finite_index(SubgroupHandle::coset_stabilizer(s3, 0));
    if (orbit.support().size() != 3) return 1;
    if (!theorem_one_check(orbit, 14).all_pass) return 1;
    FiniteIrs comm = irs_from_normal(SubgroupHandle::kernel_abelian(2, {{1, 0}, {0, 1}}));
    TheoremOneReport rep = theorem_one_check(comm, 40);
    if (rep.rows[0].verdict != TheoremVerdict::Pass) return 1;
    try {
        irs_from_normal(SubgroupHandle::stallings(2, {Word::parse("a", 2)}));
        return 1;
    } catch (const InvalidInputError&) {
    }
    return 0;
}

int selftest_pipeline() {
    PipelineReport rep = divergence_pipeline(
        SubgroupHandle::kernel_finite(2, {{1, 0}, {0, 1}}), {Word::parse("aa", 2)}, 8);
    if (rep.empty_chain || !rep.ineq1 || !rep.ineq2) return 1;
    PipelineReport rep2 = divergence_pipeline(
        SubgroupHandle::kernel_abelian(2, {{1, 0}, {0, 1}}), {Word::parse("abAB", 2)}, 6);
    if (!rep2.ineq1 || !rep2.ineq2) return 1;
    PipelineReport rep3 = divergence_pipeline(
        SubgroupHandle::kernel_abelian(2, {{1, 0}, {0, 1}}), {Word::parse("a", 2)}, 5);
    return rep3.empty_chain ? 0 : 1;
}

int selftest_lambda0() {
    if (lambda0_from_delta(2.0, 2.0) != 0.0) return 1;
    if (lambda0_from_delta(0.5, 2.0) != 1.0) return 1;
    if (lambda0_from_delta(1.5, 2.0) != 0.75) return 1;
    return approx(lambda0_from_delta(1.0, 2.0), 1.0, 1e-12) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hypercrit: growth, Poincare series, densities and invariant random subgroups "
                 "on free-group Cayley trees and the hyperbolic plane"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "hypercrit 0.1.0");
    bool json_errors = false;
    app.add_flag("--json-errors", json_errors, "emit errors as JSON on stderr");

    // Shared option storage; each subcommand registers what it documents.
    int rank = 2;
    std::string subgroup_path, irs_path, action_path, out_path, csv_path;
    std::string word_x, word_y, word_h;
    std::vector<std::string> word_set;
    std::vector<int> subset;
    int rmax = 10, radius = 0, window = 1, depth = 3, point = 0;
    double s_exp = 0, delta_opt = -1, dim = 2, delta_in = 0;
    bool selftest = false, as_json = false;

    auto add_common = [&](CLI::App* cmd, bool with_subgroup) {
        cmd->add_flag("--selftest", selftest, "run this subcommand's example table and exit");
        cmd->add_flag("--json-errors", json_errors, "emit errors as JSON on stderr");
        cmd->add_option("--out", out_path, "output path (default stdout)");
        if (with_subgroup) {
            cmd->add_option("--rank", rank, "free group rank k >= 2")->check(CLI::Range(2, 26));
            cmd->add_option("--subgroup", subgroup_path, "subgroup description JSON file");
        }
        return cmd;
    };

    auto* growth = add_common(app.add_subcommand("growth", "sphere counts (CSV: n,count)"), true);
    growth->add_option("--rmax", rmax, "largest radius");
    growth->add_flag("--json", as_json, "emit JSON instead of CSV");

    auto* delta = add_common(app.add_subcommand("delta", "critical exponent estimate"), true);
    delta->add_option("--rmax", rmax, "largest radius");
    delta->add_option("--window", window, "annulus window for the ratio table");
    delta->add_option("--coornaert-csv", csv_path,
                      "also write the annulus ratio table |A[r,r+window]| e^(-slope r) as CSV");

    auto* poincare = add_common(
        app.add_subcommand("poincare", "truncated Poincare series and divergence diagnostic"),
        true);
    poincare->add_option("--s", s_exp, "exponent s >= 0");
    poincare->add_option("--rmax", rmax, "truncation radius");
    poincare->add_option("--csv-out", csv_path, "also write the per-sphere table as CSV");

    auto* conj = add_common(
        app.add_subcommand("conj-series", "partial Poincare series over conjugators"), true);
    conj->add_option("--base", word_h, "base word h");
    conj->add_option("--target", word_set, "members of the target set V");
    conj->add_option("--s", s_exp, "exponent");
    conj->add_option("--rmax", rmax, "truncation radius");

    auto* shadow_cmd = add_common(app.add_subcommand("shadow", "shadow S_R(x, y)"), true);
    shadow_cmd->add_option("--x", word_x, "source point (word)");
    shadow_cmd->add_option("--y", word_y, "target point (word)");
    shadow_cmd->add_option("--radius", radius, "ball radius R");

    auto* psm = add_common(
        app.add_subcommand("ps-measure", "W_s orbit measures projected to the boundary "
                                         "over the epsilon ladder"),
        true);
    psm->add_option("--delta-hat", delta_opt, "reference exponent (default: estimated)");
    psm->add_option("--rmax", rmax, "orbit truncation radius");
    psm->add_option("--depth", depth, "cylinder depth");

    auto* slem = add_common(
        app.add_subcommand("shadow-lemma", "shadow lemma ratio table against the exact "
                                           "full-group density"),
        true);
    slem->add_option("--radius", radius, "shadow radius R");
    slem->add_option("--rmax", rmax, "largest |g|");

    auto* rec = add_common(app.add_subcommand("recurrence", "quantitative recurrence counts"),
                           true);
    rec->add_option("--action", action_path, "action JSON file {rank, perms}");
    rec->add_option("--x", point, "base point");
    rec->add_option("--u", subset, "members of U");
    rec->add_option("--window", window, "annulus window k");
    rec->add_option("--rmax", rmax, "largest r");
    rec->add_option("--delta-hat", delta_opt, "normalization exponent (default ln(2k-1))");
    rec->add_option("--csv-out", csv_path, "also write the per-r table as CSV");

    auto* irs = add_common(app.add_subcommand("irs-report", "expected critical exponent and "
                                                            "main-theorem verdicts"),
                           true);
    irs->add_option("--irs", irs_path, "IRS description JSON file");
    irs->add_option("--rmax", rmax, "largest radius");

    auto* pipe = add_common(
        app.add_subcommand("pipeline", "truncated inequality chain of the divergence "
                                       "theorem"),
        true);
    pipe->add_option("--v", word_set, "hyperbolic target set V");
    pipe->add_option("--radius", radius, "conjugator ball radius");

    auto* lam = add_common(app.add_subcommand("lambda0", "Laplacian bottom from the critical "
                                                         "exponent"),
                           false);
    lam->add_option("--delta", delta_in, "critical exponent");
    lam->add_option("--dim", dim, "boundary dimension");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    Output out{out_path};
    try {
        if (growth->parsed()) {
            if (selftest) return selftest_growth();
            SubgroupHandle H = subgroup_path.empty() ? SubgroupHandle::full_group(rank)
                                                     : load_subgroup(subgroup_path, rank);
            auto counts = sphere_counts(H, rmax);
            if (as_json) {
                Json j;
                j["schemaVersion"] = 1;
                Json rows = Json::array();
                for (std::size_t n = 0; n < counts.size(); ++n) {
                    Json row;
                    row["n"] = n;
                    row["count"] = counts[n].fits_int64() ? Json(counts[n].to_int64())
                                                          : Json(counts[n].to_string());
                    rows.push_back(row);
                }
                j["rows"] = rows;
                out.write_json(j);
            } else {
                out.write(growth_csv(counts));
            }
        } else if (delta->parsed()) {
            if (selftest) return selftest_delta();
            SubgroupHandle H = subgroup_path.empty() ? SubgroupHandle::full_group(rank)
                                                     : load_subgroup(subgroup_path, rank);
            ExponentEstimate est = critical_exponent_estimate(H, rmax);
            out.write_json(exponent_to_json(est));
            if (!csv_path.empty())
                Output{csv_path}.write(coornaert_csv(
                    coornaert_ratios(H, window, std::max(0, rmax - window), est.slope)));
        } else if (poincare->parsed()) {
            if (selftest) return selftest_poincare();
            if (poincare->count("--s") == 0) throw InvalidInputError("--s is required");
            SubgroupHandle H = subgroup_path.empty() ? SubgroupHandle::full_group(rank)
                                                     : load_subgroup(subgroup_path, rank);
            auto counts = sphere_counts(H, rmax);
            SeriesEstimate e = series_from_counts(counts, s_exp);
            Json j = series_to_json(e);
            j["divergence"] = divergence_to_json(divergence_diagnostic(H, s_exp, rmax));
            out.write_json(j);
            if (!csv_path.empty()) Output{csv_path}.write(series_csv(counts, e));
        } else if (conj->parsed()) {
            if (selftest) return selftest_conj_series();
            Word h = Word::parse(word_h, rank);
            std::vector<Word> V;
            for (const auto& w : word_set) V.push_back(Word::parse(w, rank));
            SubgroupHandle G = subgroup_path.empty() ? SubgroupHandle::full_group(rank)
                                                     : load_subgroup(subgroup_path, rank);
            out.write_json(series_to_json(conjugation_series(G, h, V, s_exp, rmax)));
        } else if (shadow_cmd->parsed()) {
            if (selftest) return selftest_shadow();
            Shadow s = shadow(rank, Word::parse(word_x, rank), Word::parse(word_y, rank), radius);
            out.write_json(shadow_to_json(s));
        } else if (psm->parsed()) {
            if (selftest) return selftest_ps_measure();
            SubgroupHandle H = subgroup_path.empty() ? SubgroupHandle::full_group(rank)
                                                     : load_subgroup(subgroup_path, rank);
            double dh = delta_opt >= 0 ? delta_opt
                                       : critical_exponent_estimate(H, std::max(2, rmax)).slope;
            Json j;
            j["schemaVersion"] = 1;
            j["deltaHat"] = round12(dh);
            j["note"] = "uncontrolled approximation: truncated orbit measures carry no rate";
            Json rungs = Json::array();
            for (const auto& rung : density_ladder(H, dh, rmax, depth)) {
                Json r;
                r["epsilon"] = rung.epsilon;
                r["s"] = round12(rung.s);
                r["orbitAtoms"] = rung.orbit.atoms.size();
                r["projected"] = cylinder_measure_to_json(rung.projected);
                rungs.push_back(r);
            }
            j["ladder"] = rungs;
            out.write_json(j);
        } else if (slem->parsed()) {
            if (selftest) return selftest_shadow_lemma();
            SubgroupHandle H = subgroup_path.empty() ? SubgroupHandle::full_group(rank)
                                                     : load_subgroup(subgroup_path, rank);
            CylinderMeasure nu = exact_conformal_density(rank, Word(), std::max(1, rmax - radius));
            ShadowLemmaReport rep = shadow_lemma_check(H, default_delta_hat(rank), 2 * rank - 1,
                                                       radius, rmax, nu);
            out.write_json(shadow_lemma_to_json(rep));
        } else if (rec->parsed()) {
            if (selftest) return selftest_recurrence();
            if (action_path.empty()) throw InvalidInputError("--action file required");
            Json aj = load_json(action_path);
            if (!aj.contains("rank") || !aj.contains("perms"))
                throw InvalidInputError("action file needs {rank, perms}");
            std::vector<std::vector<int>> perms;
            for (const auto& row : aj.at("perms")) perms.push_back(row.get<std::vector<int>>());
            PermutationAction act = PermutationAction::make(aj.at("rank").get<int>(), perms);
            double dh = delta_opt >= 0 ? delta_opt : default_delta_hat(act.rank());
            RecurrenceReport rep = recurrence_counts(act.rank(), act, point, subset, window,
                                                     rmax, dh);
            out.write_json(recurrence_to_json(rep));
            if (!csv_path.empty()) Output{csv_path}.write(recurrence_csv(rep));
        } else if (irs->parsed()) {
            if (selftest) return selftest_irs_report();
            if (irs_path.empty()) throw InvalidInputError("--irs file required");
            FiniteIrs mu = irs_from_json(load_json(irs_path), rank);
            Json j;
            j["schemaVersion"] = 1;
            j["expected"] = expected_exponent_to_json(expected_critical_exponent(mu, rmax));
            j["theoremOne"] = theorem_one_to_json(theorem_one_check(mu, rmax));
            out.write_json(j);
        } else if (pipe->parsed()) {
            if (selftest) return selftest_pipeline();
            if (subgroup_path.empty()) throw InvalidInputError("--subgroup file required");
            SubgroupHandle Delta = load_subgroup(subgroup_path, rank);
            std::vector<Word> V;
            for (const auto& w : word_set) V.push_back(Word::parse(w, rank));
            PipelineReport rep = divergence_pipeline(Delta, V, radius);
            out.write_json(pipeline_to_json(rep));
            if (rep.empty_chain) return 3;
        } else if (lam->parsed()) {
            if (selftest) return selftest_lambda0();
            double v = lambda0_from_delta(delta_in, dim);
            Json j;
            j["schemaVersion"] = 1;
            j["delta"] = round12(delta_in);
            j["dim"] = round12(dim);
            j["lambda0"] = round12(v);
            out.write_json(j);
        }
    } catch (const InvalidInputError& e) {
        if (json_errors)
            std::cerr << Json{{"error", "invalid-input"}, {"message", e.what()}}.dump() << "\n";
        else
            std::cerr << "invalid input: " << e.what() << "\n";
        return 2;
    } catch (const NotFoundError& e) {
        if (json_errors)
            std::cerr << Json{{"error", "not-found"}, {"message", e.what()}}.dump() << "\n";
        else
            std::cerr << "not found: " << e.what() << "\n";
        return 3;
    } catch (const UnsupportedOperationError& e) {
        if (json_errors)
            std::cerr << Json{{"error", "unsupported"}, {"message", e.what()}}.dump() << "\n";
        else
            std::cerr << "unsupported: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        if (json_errors)
            std::cerr << Json{{"error", "internal"}, {"message", e.what()}}.dump() << "\n";
        else
            std::cerr << "internal error: " << e.what() << "\n";
        return 4;
    }
    return 0;
}
