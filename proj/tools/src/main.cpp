#include <clocale>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <dtlure/errors.hpp>
#include <dtlure/exact.hpp>
#include <dtlure/io.hpp>
#include <dtlure/lure.hpp>
#include <dtlure/oracles.hpp>
#include <dtlure/stability.hpp>

#include "CLI11.hpp"
#include "fixtures.hpp"
#include "json.hpp"
#include "reports.hpp"
#include "spec_input.hpp"

namespace {

using dtlure::tools::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitParseError = 1;
constexpr int kExitInvalidSystem = 2;
constexpr int kExitExactUnsupported = 3;

struct CommonOptions {
    std::string input = "-";
    std::string output;  // empty: no files written
    std::string mode;
    std::uint64_t seed = 0;
    std::string alpha_range;
    int horizon = 0;
    int trials = 100;
    double box = 10.0;
};

void write_file(const std::string& dir, const std::string& name, const std::string& content) {
    std::filesystem::create_directories(dir);
    std::ofstream out(std::filesystem::path(dir) / name, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + name + " under " + dir);
    out << content;
}

void emit(const ordered_json& j, const std::string& outdir) {
    const std::string text = j.dump(2) + "\n";
    std::fputs(text.c_str(), stdout);
    if (!outdir.empty()) write_file(outdir, "report.json", text);
}

dtlure::TransferFunction load_system(const CommonOptions& opts,
                                     dtlure::tools::SystemSpec& spec_out) {
    const nlohmann::json doc = nlohmann::json::parse(dtlure::tools::slurp_input(opts.input));
    spec_out = dtlure::tools::parse_system_spec(doc);
    return dtlure::TransferFunction::validate(dtlure::Poly(spec_out.num),
                                              dtlure::Poly(spec_out.den));
}

std::vector<double> parse_alpha_range(const std::string& text) {
    double lo = 0.0, hi = 0.0;
    int steps = 0;
    char extra = 0;
    if (std::sscanf(text.c_str(), "%lf:%lf:%d%c", &lo, &hi, &steps, &extra) != 3 || steps < 2)
        throw std::invalid_argument("--alpha-range must be LO:HI:STEPS with STEPS >= 2");
    return dtlure::linspace(lo, hi, steps);
}

int cmd_validate(const CommonOptions& opts) {
    dtlure::tools::SystemSpec spec;
    const auto tf = load_system(opts, spec);
    emit(dtlure::tools::validation_json(tf), opts.output);
    return tf.valid() ? kExitOk : kExitInvalidSystem;
}

int cmd_analyze(const CommonOptions& opts) {
    dtlure::tools::SystemSpec spec;
    const auto tf = load_system(opts, spec);
    if (!tf.valid()) {
        emit(dtlure::tools::validation_json(tf), opts.output);
        return kExitInvalidSystem;
    }
    const auto cs = dtlure::crossings(tf);
    const auto census = dtlure::unstable_root_census(tf, spec.alpha);
    ordered_json report = dtlure::tools::crossing_json(cs, census, spec.alpha);

    if (!opts.alpha_range.empty()) {
        const auto grid = parse_alpha_range(opts.alpha_range);
        const auto sweep = dtlure::spr_sweep(tf, grid);
        report["sweep"] = {{"points", grid.size()},
                           {"alpha_min", grid.front()},
                           {"alpha_max", grid.back()}};
        if (!opts.output.empty()) {
            write_file(opts.output, "sweep.csv", dtlure::sweep_csv(sweep));
            write_file(opts.output, "rootlocus.csv", dtlure::rootlocus_csv(sweep));
        }
    }
    emit(report, opts.output);
    return kExitOk;
}

int cmd_simulate(const CommonOptions& opts) {
    dtlure::tools::SystemSpec spec;
    const auto tf = load_system(opts, spec);
    if (!tf.valid()) {
        emit(dtlure::tools::validation_json(tf), opts.output);
        return kExitInvalidSystem;
    }
    const auto ss = dtlure::realize(tf);

    const std::string mode = !opts.mode.empty() ? opts.mode : spec.mode;
    if (mode != "float" && mode != "exact")
        throw std::invalid_argument("--mode must be float or exact");
    const int horizon = opts.horizon > 0 ? opts.horizon
                        : spec.horizon   ? *spec.horizon
                                         : 2000;

    dtlure::LureConfig cfg;
    cfg.ss = ss;
    cfg.alpha = spec.alpha;
    cfg.horizon = horizon;
    cfg.tol = spec.tolerances;
    cfg.x0 = Eigen::VectorXd::Zero(ss.n);
    if (spec.x0) {
        if (static_cast<int>(spec.x0->size()) != ss.n)
            throw std::invalid_argument("x0 length does not match the system order");
        for (int i = 0; i < ss.n; ++i) cfg.x0(i) = (*spec.x0)[static_cast<size_t>(i)].value;
    }

    dtlure::Trajectory traj;
    std::optional<dtlure::SpectralSplit> split;

    if (mode == "exact") {
        const long long d =
            spec.exact_d != 0 ? spec.exact_d : dtlure::exact::infer_discriminant(ss, spec.alpha);
        const auto sys = dtlure::exact::make_exact_system(ss, spec.alpha, d);
        const auto esplit = dtlure::exact::exact_split(sys);

        dtlure::exact::ExactVector x0(static_cast<size_t>(ss.n));
        for (int i = 0; i < ss.n; ++i) {
            const size_t ii = static_cast<size_t>(i);
            if (spec.x0 && (*spec.x0)[ii].exact_literal)
                x0[ii] = dtlure::exact::parse_quadrat(*(*spec.x0)[ii].exact_literal, d);
            else
                x0[ii] = dtlure::exact::QuadRat::from_double(cfg.x0(i));
        }
        const auto ex = dtlure::exact::simulate_exact(sys, x0, horizon,
                                                      esplit ? &*esplit : nullptr);
        traj = dtlure::exact::float_view(ex, esplit ? &*esplit : nullptr);
        cfg.horizon = ex.steps();
        if (esplit) split = dtlure::exact::float_split(*esplit, spec.alpha);
    } else {
        const auto found = dtlure::find_simple_unstable(dtlure::closed_loop(ss, spec.alpha),
                                                        spec.alpha);
        if (found.status == dtlure::SplitStatus::Found) split = found.split;
        traj = dtlure::simulate(cfg, split ? &*split : nullptr);
        if (found.status == dtlure::SplitStatus::NearDefective)
            traj.warnings.push_back("unstable eigenvalues exist but none is numerically simple");
    }

    const auto rep = dtlure::classify(traj, cfg);
    std::optional<dtlure::OscillationHypotheses> hyp;
    if (split) hyp = dtlure::check_oscillation_hypotheses(traj, *split, cfg.tol.offX_tol);

    if (!opts.output.empty())
        write_file(opts.output, "trajectory.csv", dtlure::trajectory_csv(traj));
    emit(dtlure::tools::classification_json(rep, hyp, traj), opts.output);
    return kExitOk;
}

int cmd_census(const CommonOptions& opts) {
    dtlure::tools::SystemSpec spec;
    const auto tf = load_system(opts, spec);
    if (!tf.valid()) {
        emit(dtlure::tools::validation_json(tf), opts.output);
        return kExitInvalidSystem;
    }
    dtlure::LureConfig cfg;
    cfg.ss = dtlure::realize(tf);
    cfg.alpha = spec.alpha;
    cfg.horizon = opts.horizon > 0 ? opts.horizon : spec.horizon ? *spec.horizon : 2000;
    cfg.tol = spec.tolerances;
    cfg.x0 = Eigen::VectorXd::Zero(cfg.ss.n);
    const auto res = dtlure::random_x0_census(cfg, opts.trials, opts.seed, opts.box);
    emit(dtlure::tools::census_json(res, opts.seed, opts.box), opts.output);
    return kExitOk;
}

std::complex<double> json_complex(const nlohmann::json& v) {
    if (v.is_number()) return {v.get<double>(), 0.0};
    if (v.is_array() && v.size() == 2) return {v.at(0).get<double>(), v.at(1).get<double>()};
    throw std::invalid_argument("complex values must be numbers or [re, im] pairs");
}

int cmd_oracle(const CommonOptions& opts) {
    const nlohmann::json doc = nlohmann::json::parse(dtlure::tools::slurp_input(opts.input));
    const std::string which = doc.at("oracle").get<std::string>();
    ordered_json out;
    out["oracle"] = which;

    if (which == "limsup") {
        dtlure::oracles::ExponentialSum sum;
        for (const auto& term : doc.at("terms")) {
            dtlure::oracles::ExpTerm t;
            t.base = json_complex(term.at("base"));
            for (const auto& c : term.at("poly")) t.poly.push_back(json_complex(c));
            sum.terms.push_back(std::move(t));
        }
        if (doc.contains("window")) sum.window = doc.at("window").get<int>();
        const auto thresholds = doc.at("thresholds").get<std::vector<double>>();
        const auto res = dtlure::oracles::limsup_probe(sum, thresholds);
        ordered_json crossings = ordered_json::array();
        for (size_t i = 0; i < thresholds.size(); ++i) {
            ordered_json c;
            c["threshold"] = thresholds[i];
            if (res.first_crossing[i]) c["first_crossing"] = *res.first_crossing[i];
            else c["first_crossing"] = nullptr;
            crossings.push_back(std::move(c));
        }
        out["crossings"] = std::move(crossings);
        out["window_used"] = res.window_used;
        out["growth_ratio"] = res.growth_ratio;
        out["all_reached"] = res.all_reached;
    } else if (which == "unit_combo") {
        std::vector<std::complex<double>> a, z;
        for (const auto& v : doc.at("a")) a.push_back(json_complex(v));
        for (const auto& v : doc.at("z")) z.push_back(json_complex(v));
        out["window_max"] = dtlure::oracles::unit_combo_floor(a, z, doc.at("K").get<int>());
    } else if (which == "cayley") {
        const auto rows = doc.at("M").get<std::vector<std::vector<double>>>();
        const int n = static_cast<int>(rows.size());
        Eigen::MatrixXd M(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) M(i, j) = rows[static_cast<size_t>(i)].at(static_cast<size_t>(j));
        const auto xv = doc.at("x").get<std::vector<double>>();
        const auto yv = doc.at("y").get<std::vector<double>>();
        Eigen::VectorXd x = Eigen::Map<const Eigen::VectorXd>(xv.data(), n);
        Eigen::VectorXd y = Eigen::Map<const Eigen::VectorXd>(yv.data(), n);
        const int K = doc.contains("K") ? doc.at("K").get<int>() : 500;
        const auto res = dtlure::oracles::cayley_limit_check(M, x, y, K);
        switch (res.verdict) {
            case dtlure::oracles::CayleyVerdict::ConvergedToZero: out["verdict"] = "converged_to_zero"; break;
            case dtlure::oracles::CayleyVerdict::NonConvergent: out["verdict"] = "non_convergent"; break;
            case dtlure::oracles::CayleyVerdict::LimitNotZero: out["verdict"] = "limit_not_zero"; break;
        }
        out["final_value"] = res.final_value;
        out["cauchy_residual"] = res.cauchy_residual;
    } else {
        throw std::invalid_argument("unknown oracle \"" + which + "\"");
    }
    emit(out, opts.output);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    std::setlocale(LC_ALL, "C");
    CLI::App app{"Analysis and simulation of discrete-time saturated feedback loops"};
    app.require_subcommand(1);

    CommonOptions opts;
    std::string fixture_id;

    const auto add_io = [&opts](CLI::App* sub, bool with_output = true) {
        sub->add_option("--input", opts.input, "Input JSON document (path or - for stdin)");
        if (with_output)
            sub->add_option("--output", opts.output, "Directory for report.json and CSV outputs");
    };

    auto* validate = app.add_subcommand("validate", "Check the standing hypotheses on G = N/D");
    add_io(validate);

    auto* analyze = app.add_subcommand(
        "analyze", "Unit-circle crossings, gain interval and optional spectral-radius sweep");
    add_io(analyze);
    analyze->add_option("--alpha-range", opts.alpha_range, "Sweep grid LO:HI:STEPS");

    auto* simulate = app.add_subcommand("simulate", "Simulate and classify the saturated loop");
    add_io(simulate);
    simulate->add_option("--mode", opts.mode, "Arithmetic mode: float or exact");
    simulate->add_option("--horizon", opts.horizon, "Number of steps to simulate");

    auto* census = app.add_subcommand(
        "census", "Classify trajectories from random initial states");
    add_io(census);
    census->add_option("--trials", opts.trials, "Number of random initial states");
    census->add_option("--seed", opts.seed, "Random seed");
    census->add_option("--box", opts.box, "Half-width of the sampling box");
    census->add_option("--horizon", opts.horizon, "Number of steps per trajectory");

    auto* oracle = app.add_subcommand("oracle", "Run a numerical oracle from a JSON document");
    add_io(oracle);

    auto* reproduce =
        app.add_subcommand("reproduce", "Run a built-in reference system against expected values");
    reproduce->add_option("id", fixture_id, "ex1, ex2, ex3-exact or ex3-perturbed")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitParseError;
    }

    try {
        if (validate->parsed()) return cmd_validate(opts);
        if (analyze->parsed()) return cmd_analyze(opts);
        if (simulate->parsed()) return cmd_simulate(opts);
        if (census->parsed()) return cmd_census(opts);
        if (oracle->parsed()) return cmd_oracle(opts);
        if (reproduce->parsed()) return dtlure::tools::run_fixture(fixture_id) == 0 ? kExitOk : 1;
    } catch (const dtlure::ExactModeUnsupported& e) {
        std::fprintf(stderr, "exact mode unsupported: %s\n", e.what());
        return kExitExactUnsupported;
    } catch (const nlohmann::json::exception& e) {
        std::fprintf(stderr, "input error: %s\n", e.what());
        return kExitParseError;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "input error: %s\n", e.what());
        return kExitParseError;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitParseError;
    }
    return kExitParseError;
}
