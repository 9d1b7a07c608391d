#include "reports.hpp"

#include <cmath>

namespace dtlure::tools {

double round_angle(double theta) { return std::round(theta * 1e9) / 1e9; }

ordered_json validation_json(const TransferFunction& tf) {
    ordered_json j;
    j["valid"] = tf.valid();
    j["n"] = tf.n();
    j["m"] = tf.m();
    ordered_json checks = ordered_json::array();
    for (const auto& c : tf.validation().checks) {
        ordered_json jc;
        jc["name"] = c.name;
        jc["passed"] = c.passed;
        jc["measured"] = c.measured;
        jc["detail"] = c.detail;
        checks.push_back(std::move(jc));
    }
    j["checks"] = std::move(checks);
    ordered_json failures = ordered_json::array();
    for (auto f : tf.validation().failures) failures.push_back(to_string(f));
    j["failures"] = std::move(failures);
    j["warnings"] = tf.validation().warnings;
    return j;
}

ordered_json crossing_json(const CrossingSet& cs, const RootCensus& census, double alpha) {
    ordered_json j;
    ordered_json tn = ordered_json::array(), tp = ordered_json::array();
    for (double t : cs.theta_n) tn.push_back(round_angle(t));
    for (double t : cs.theta_p) tp.push_back(round_angle(t));
    j["theta_n"] = std::move(tn);
    j["theta_p"] = std::move(tp);
    ordered_json gains = ordered_json::array();
    for (const auto& [theta, gain] : cs.gains) {
        ordered_json g;
        g["theta"] = round_angle(theta);
        g["gain"] = gain;
        gains.push_back(std::move(g));
    }
    j["gains"] = std::move(gains);
    if (cs.alpha_n) j["alpha_n"] = *cs.alpha_n;
    else j["alpha_n"] = nullptr;
    if (cs.alpha_p) j["alpha_p"] = *cs.alpha_p;
    else j["alpha_p"] = nullptr;
    j["theta_n_empty"] = cs.theta_n_empty();
    j["theta_p_empty"] = cs.theta_p_empty();

    ordered_json cj;
    cj["alpha"] = alpha;
    cj["roots_outside_unit_circle"] = census.count_outside;
    cj["all_simple"] = census.all_simple;
    j["census"] = std::move(cj);

    ordered_json diags = ordered_json::array();
    for (const auto& d : cs.diagnostics) {
        ordered_json dj;
        dj["theta"] = round_angle(d.theta);
        dj["z"] = {d.z.real(), d.z.imag()};
        dj["G"] = {d.g_value.real(), d.g_value.imag()};
        dj["reason"] = d.reason;
        diags.push_back(std::move(dj));
    }
    j["diagnostics"] = std::move(diags);
    return j;
}

ordered_json classification_json(const ClassificationReport& rep,
                                 const std::optional<OscillationHypotheses>& hyp,
                                 const Trajectory& traj) {
    ordered_json j;
    j["verdict"] = to_string(rep.verdict);
    if (rep.limit) j["limit"] = *rep.limit;
    if (rep.period) j["period"] = *rep.period;
    j["bounded"] = rep.bounded;
    j["bound"] = rep.bound;
    j["max_abs_y"] = rep.max_abs_y;
    j["final_window_amplitude"] = rep.final_window_amplitude;
    j["mode_census"] = {{"S1", rep.mode_census[0]}, {"S2", rep.mode_census[1]},
                        {"S3", rep.mode_census[2]}};
    if (!rep.note.empty()) j["note"] = rep.note;

    ordered_json tj = ordered_json::array();
    for (const auto& t : traj.transitions) {
        ordered_json e;
        e["k"] = t.k;
        e["from"] = to_string(t.from);
        e["to"] = to_string(t.to);
        tj.push_back(std::move(e));
    }
    j["transitions"] = std::move(tj);

    if (hyp) {
        ordered_json h;
        if (hyp->x0_check) {
            h["x0_check"] = {{"k", hyp->x0_check->k},
                             {"proj_norm", hyp->x0_check->proj},
                             {"threshold", hyp->x0_check->threshold},
                             {"passed", hyp->x0_check->passed}};
        } else {
            h["x0_check"] = "not_applicable";
        }
        ordered_json entries = ordered_json::array();
        for (const auto& e : hyp->reentry_checks)
            entries.push_back({{"k", e.k},
                               {"proj_norm", e.proj},
                               {"threshold", e.threshold},
                               {"passed", e.passed}});
        h["reentry_checks"] = std::move(entries);
        h["all_passed"] = hyp->all_passed();
        j["oscillation_hypotheses"] = std::move(h);
    }

    j["exact"] = traj.exact;
    j["warnings"] = traj.warnings;
    return j;
}

ordered_json census_json(const CensusResult& res, std::uint64_t seed, double box) {
    ordered_json j;
    j["trials"] = res.trials;
    j["self_excited"] = res.self_excited;
    j["convergent"] = res.convergent;
    j["inconclusive"] = res.inconclusive;
    j["fraction_self_excited"] = res.fraction_self_excited;
    j["seed"] = seed;
    j["box_halfwidth"] = box;
    return j;
}

}  // namespace dtlure::tools
