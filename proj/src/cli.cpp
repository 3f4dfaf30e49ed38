#include "softextrap/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "softextrap/bounds.hpp"
#include "softextrap/errors.hpp"
#include "softextrap/experiment.hpp"
#include "softextrap/fitting.hpp"
#include "softextrap/io.hpp"
#include "softextrap/scalars.hpp"

namespace softextrap {

std::complex<double> parse_complex(const std::string& text) {
    std::string s;
    for (char c : text)
        if (c != ' ') s += c;
    if (s.empty()) throw DomainError("empty complex number");
    auto to_double = [&](const std::string& part) {
        if (part.empty() || part == "+") return 1.0;
        if (part == "-") return -1.0;
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(part, &used);
        } catch (const std::exception&) {
            throw DomainError("not a complex number: '" + text + "'");
        }
        if (used != part.size()) throw DomainError("not a complex number: '" + text + "'");
        return v;
    };
    const char last = s.back();
    if (last != 'i' && last != 'j') return {to_double(s), 0.0};
    s.pop_back();
    std::size_t split = std::string::npos;
    for (std::size_t k = s.size(); k-- > 1;) {
        if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    if (split == std::string::npos) return {0.0, to_double(s)};
    return {to_double(s.substr(0, split)), to_double(s.substr(split))};
}

namespace {

struct PlanArgs {
    double alpha = 2.0;
    double lambda = 1.0;
    double tau = 1.0;
    std::optional<double> eps;
    std::string pipeline = "generic";
};

void add_plan_options(CLI::App* cmd, PlanArgs& a) {
    cmd->add_option("--alpha", a.alpha, "Window exponent")->capture_default_str();
    cmd->add_option("--lambda", a.lambda, "Order of the function")->capture_default_str();
    cmd->add_option("--tau", a.tau, "Type of the function")->capture_default_str();
    // required, but checked after parsing so that a config file may supply it
    cmd->add_option("--eps", a.eps, "Perturbation level in (0,1) (required)");
    cmd->add_option("--pipeline", a.pipeline, "generic: window exp(-|x|^alpha); hermite: window exp(-x^2/2)")
        ->check(CLI::IsMember({"generic", "hermite"}))
        ->capture_default_str();
}

DegreePlan make_plan(const PlanArgs& a) {
    if (!a.eps) throw CLI::RequiredError("--eps");
    if (a.pipeline == "hermite") {
        if (a.alpha != 2.0 || a.lambda != 1.0) throw DomainError("hermite pipeline requires alpha = 2 and lambda = 1");
        return hermite_plan(a.tau, *a.eps);
    }
    return degree_plan(ProblemParams{a.alpha, a.tau, a.lambda}, *a.eps);
}

Pipeline pipeline_of(const PlanArgs& a) { return a.pipeline == "hermite" ? Pipeline::hermite : Pipeline::generic; }

std::string num(double v) { return format_number(v); }

// writes to path, or to out when path is empty or "-"
void emit(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty() || path == "-")
        out << text;
    else
        write_text_file(path, text);
}

std::vector<std::complex<double>> parse_points(const std::vector<std::string>& tokens) {
    std::vector<std::complex<double>> zs;
    zs.reserve(tokens.size());
    for (const auto& t : tokens) zs.push_back(parse_complex(t));
    return zs;
}

void print_plan(std::ostream& out, const DegreePlan& plan) {
    out << "pipeline         " << (plan.pipeline == Pipeline::hermite ? "hermite" : "generic") << '\n'
        << "alpha            " << num(plan.params.alpha) << '\n'
        << "tau              " << num(plan.params.tau) << '\n'
        << "lambda           " << num(plan.params.lambda) << '\n'
        << "eps              " << num(plan.eps) << '\n'
        << "q                " << num(plan.q) << '\n'
        << "n                " << plan.n << '\n'
        << "a_n              " << num(plan.a_n) << '\n'
        << "r_n              " << num(plan.r_n) << '\n'
        << "window           [" << num(-plan.window_edge()) << ", " << num(plan.window_edge()) << "]\n"
        << "forbidden_radius " << num(plan.forbidden_radius()) << '\n';
}

// Replaces `--config FILE` by the file's key=value pairs as flags, skipping
// keys that also appear on the command line so explicit flags win.
std::vector<std::string> expand_config(std::vector<std::string> args) {
    std::vector<std::string> files;
    std::vector<std::string> kept;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config") {
            if (i + 1 >= args.size()) throw CLI::ArgumentMismatch("--config needs a file name");
            files.push_back(args[++i]);
        } else if (args[i].rfind("--config=", 0) == 0) {
            files.push_back(args[i].substr(9));
        } else {
            kept.push_back(args[i]);
        }
    }
    auto given = [&](const std::string& flag) {
        for (const auto& a : kept)
            if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
        return false;
    };
    CLI::ConfigINI reader;
    for (const auto& file : files) {
        std::ifstream in(file);
        if (!in) throw CLI::FileError::Missing(file);
        for (const CLI::ConfigItem& item : reader.from_config(in)) {
            if (!item.parents.empty() || item.name.empty() || item.name == "++" || item.name == "--") continue;
            const std::string flag = "--" + item.name;
            if (given(flag)) continue;
            if (item.inputs.size() == 1 && (item.inputs[0] == "true" || item.inputs[0] == "false")) {
                if (item.inputs[0] == "true") kept.push_back(flag);
                continue;
            }
            for (const auto& value : item.inputs) {
                kept.push_back(flag);
                kept.push_back(value);
            }
        }
    }
    return kept;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Stable extrapolation of entire functions from windowed noisy samples", "softextrap"};
    app.require_subcommand(1);
    app.failure_message(CLI::FailureMessage::help);
    std::function<void()> action;

    // plan
    PlanArgs plan_args;
    bool plan_json = false;
    auto* plan_cmd = app.add_subcommand("plan", "Degree, MRS number and extrapolation radius for (alpha, tau, lambda, eps)");
    add_plan_options(plan_cmd, plan_args);
    plan_cmd->add_flag("--json", plan_json, "Print the plan as JSON");
    plan_cmd->add_option("--config", "Key-value file (name=value per line) with option values");
    plan_cmd->callback([&] {
        action = [&] {
            const DegreePlan plan = make_plan(plan_args);
            if (plan_json)
                out << plan_to_json(plan) << '\n';
            else
                print_plan(out, plan);
        };
    });

    // fit
    PlanArgs fit_args;
    std::string samples_path, model_out;
    double density_constant = kDefaultDensityConstant;
    bool allow_invalid = false;
    auto* fit_cmd = app.add_subcommand("fit", "Fit the degree-n extrapolant to an x,g sample CSV");
    add_plan_options(fit_cmd, fit_args);
    fit_cmd->add_option("--samples", samples_path, "CSV with header x,g")->required()->check(CLI::ExistingFile);
    fit_cmd->add_option("--density-constant", density_constant, "Grid density constant c1")->capture_default_str();
    fit_cmd->add_flag("--allow-invalid-grid", allow_invalid, "Fit even if the grid fails the extent or density check");
    fit_cmd->add_option("--out", model_out, "Model JSON path (default stdout)");
    fit_cmd->add_option("--config", "Key-value file (name=value per line) with option values");
    fit_cmd->callback([&] {
        action = [&] {
            const SampleSet samples = read_samples_csv_file(samples_path, fit_args.alpha);
            ExtrapolationOptions options;
            options.pipeline = pipeline_of(fit_args);
            options.fit.density_constant = density_constant;
            options.fit.allow_invalid_grid = allow_invalid;
            const ProblemParams params{fit_args.alpha, fit_args.tau, fit_args.lambda};
            if (!fit_args.eps) throw CLI::RequiredError("--eps");
            const ExtrapolationResult result = extrapolate(samples, params, *fit_args.eps, options);
            if (!result.report.ok()) err << "warning: grid fails the extent or density check\n";
            emit(model_out, model_to_json(result.model, &result.report) + "\n", out);
        };
    });

    // eval
    std::string model_path;
    std::vector<std::string> eval_points;
    auto* eval_cmd = app.add_subcommand("eval", "Evaluate a fitted model at points such as 3, -1.5 or 2+0.5i");
    eval_cmd->add_option("--model", model_path, "Model JSON from fit")->required()->check(CLI::ExistingFile);
    eval_cmd->add_option("--z", eval_points, "Evaluation points")->required();
    eval_cmd->add_option("--config", "Key-value file (name=value per line) with option values");
    eval_cmd->callback([&] {
        action = [&] {
            const FittedModel model = model_from_json(read_text_file(model_path));
            out << "z_re,z_im,value_re,value_im\n";
            for (const auto& z : parse_points(eval_points)) {
                const auto v = evaluate(model, z);
                out << num(z.real()) << ',' << num(z.imag()) << ',' << num(v.real()) << ',' << num(v.imag()) << '\n';
            }
        };
    });

    // bound
    PlanArgs bound_args;
    std::vector<std::string> bound_points;
    std::optional<double> bz_min, bz_max;
    int bz_count = 400;
    double bz_im = 0.0;
    std::string bound_out;
    auto* bound_cmd = app.add_subcommand("bound", "Pointwise error envelope as CSV z_re,z_im,region,bound");
    add_plan_options(bound_cmd, bound_args);
    bound_cmd->add_option("--z", bound_points, "Explicit points (otherwise a real grid)");
    bound_cmd->add_option("--z-min", bz_min, "Grid start (default 0)");
    bound_cmd->add_option("--z-max", bz_max, "Grid end (default 1.2 times the forbidden radius)");
    bound_cmd->add_option("--count", bz_count, "Grid points")->capture_default_str();
    bound_cmd->add_option("--im", bz_im, "Imaginary part added to grid points")->capture_default_str();
    bound_cmd->add_option("--out", bound_out, "CSV path (default stdout)");
    bound_cmd->add_option("--config", "Key-value file (name=value per line) with option values");
    bound_cmd->callback([&] {
        action = [&] {
            const BoundProfile profile(make_plan(bound_args));
            std::vector<std::complex<double>> zs;
            if (!bound_points.empty()) {
                zs = parse_points(bound_points);
            } else {
                const ZGrid grid{bz_min.value_or(0.0), bz_max.value_or(1.2 * profile.plan().forbidden_radius()), bz_count};
                for (double x : grid.points()) zs.emplace_back(x, bz_im);
            }
            std::ostringstream csv;
            csv << "z_re,z_im,region,bound\n";
            for (const auto& z : zs) {
                const auto [region, value] = profile.envelope(z);
                csv << num(z.real()) << ',' << num(z.imag()) << ',' << to_string(region) << ',' << num(value) << '\n';
            }
            emit(bound_out, csv.str(), out);
        };
    });

    // thresholds
    double th_tau = 0.15, th_z0 = 4.0;
    auto* th_cmd = app.add_subcommand("thresholds", "Perturbation levels where z0 changes region (window exp(-x^2/2))");
    th_cmd->add_option("--tau", th_tau, "Type of the function")->capture_default_str();
    th_cmd->add_option("--z0", th_z0, "Evaluation point")->capture_default_str();
    th_cmd->add_option("--config", "Key-value file (name=value per line) with option values");
    th_cmd->callback([&] {
        action = [&] {
            const RegionThresholds t = region_thresholds(th_z0, ProblemParams{2.0, th_tau, 1.0});
            auto cell = [](const std::optional<double>& v) { return v ? format_number(*v) : std::string("none"); };
            out << "log_eps_12 " << cell(t.log_eps_12) << '\n'
                << "log_eps_23 " << cell(t.log_eps_23) << '\n'
                << "eps_12     " << cell(t.eps_12()) << '\n'
                << "eps_23     " << cell(t.eps_23()) << '\n';
        };
    });

    // dark
    double dark_tau = 0.3;
    std::optional<double> dark_eps;
    std::optional<int> dark_n;
    std::vector<std::string> dark_points;
    auto* dark_cmd = app.add_subcommand("dark", "Dark object cosh(tau z) minus its Hermite partial sum, with coefficient check");
    dark_cmd->add_option("--tau", dark_tau, "Type in sample coordinates")->capture_default_str();
    auto* dark_eps_opt = dark_cmd->add_option("--eps", dark_eps, "Perturbation level; sets n by the Hermite degree rule");
    dark_cmd->add_option("--n", dark_n, "Degree n directly")->excludes(dark_eps_opt);
    dark_cmd->add_option("--z", dark_points, "Evaluation points");
    dark_cmd->add_option("--config", "Key-value file (name=value per line) with option values");
    dark_cmd->callback([&] {
        action = [&] {
            if (!dark_eps && !dark_n) throw CLI::RequiredError("--eps or --n");
            const DarkObject dark = dark_n ? DarkObject(dark_tau, *dark_n) : DarkObject(dark_tau, hermite_plan(dark_tau, *dark_eps));
            const CoefficientCheck& c = dark.check();
            nlohmann::json j{{"tau", dark.tau()},
                             {"n", dark.degree()},
                             {"coefficient_check",
                              {{"compared", c.compared},
                               {"max_relative_discrepancy", c.max_relative_discrepancy},
                               {"printed_over_projected", c.ratio},
                               {"uses_projection", c.uses_projection}}},
                             {"coefficients", dark.coefficients()}};
            nlohmann::json values = nlohmann::json::array();
            for (const auto& z : parse_points(dark_points)) {
                const auto v = dark(z);
                values.push_back({{"z_re", z.real()}, {"z_im", z.imag()}, {"re", v.real()}, {"im", v.imag()}});
            }
            j["values"] = values;
            out << j.dump(2) << '\n';
        };
    });

    // experiment
    auto* exp_cmd = app.add_subcommand("experiment", "Monte Carlo experiments writing CSV tables");
    exp_cmd->require_subcommand(1);

    ExperimentConfig pw;
    std::optional<double> pz_min, pz_max;
    int pz_count = 400;
    auto* pw_cmd = exp_cmd->add_subcommand("pointwise", "Error envelope over z: z,err_max,err_mean,bound,dark_abs,region");
    pw_cmd->add_option("--tau", pw.tau, "Type in sample coordinates")->capture_default_str();
    pw_cmd->add_option("--eps", pw.eps, "Noise level")->capture_default_str();
    pw_cmd->add_option("--trials", pw.trials, "Noise realizations")->capture_default_str();
    pw_cmd->add_option("--seed", pw.seed, "RNG seed")->envname("SOFTEXTRAP_SEED")->capture_default_str();
    pw_cmd->add_option("--z-min", pz_min, "Grid start (default 0)");
    pw_cmd->add_option("--z-max", pz_max, "Grid end (default 1.2 times the forbidden radius)");
    pw_cmd->add_option("--count", pz_count, "Grid points")->capture_default_str();
    pw_cmd->add_option("--oversampling", pw.oversampling, "Sample nodes per degree")->capture_default_str();
    pw_cmd->add_option("--noise-bound", pw.noise_bound, "Noise amplitude (default eps)");
    pw_cmd->add_option("--out", pw.output_path, "CSV path (default stdout)");
    pw_cmd->add_option("--config", "Key-value file (name=value per line) with option values");
    pw_cmd->callback([&] {
        action = [&] {
            if (pz_min || pz_max || pz_count != 400) {
                const DegreePlan plan = hermite_plan(pw.tau, pw.eps);
                pw.z_grid = ZGrid{pz_min.value_or(0.0), pz_max.value_or(1.2 * plan.forbidden_radius()), pz_count};
            }
            const PointwiseResult result = run_pointwise_experiment(pw);
            std::ostringstream csv;
            write_pointwise_csv(csv, result);
            emit(pw.output_path, csv.str(), out);
            if (result.dark_check.uses_projection)
                err << "note: closed-form dark-object coefficients differ from the projection by a factor "
                    << result.dark_check.ratio << "; projection used\n";
        };
    });

    SweepConfig sw;
    std::vector<double> sw_eps;
    double sw_eps_max = 1e-2, sw_eps_min = 1e-14;
    int sw_per_decade = 4;
    auto* sw_cmd = exp_cmd->add_subcommand("eps-sweep", "Error at z0 against eps: eps,err_max,bound,dark_abs,eps_12,eps_23");
    sw_cmd->add_option("--tau", sw.tau, "Type in sample coordinates")->capture_default_str();
    sw_cmd->add_option("--z0", sw.z0, "Evaluation point")->capture_default_str();
    auto* eps_list_opt = sw_cmd->add_option("--eps", sw_eps, "Explicit decreasing eps values");
    sw_cmd->add_option("--eps-max", sw_eps_max, "Largest eps of the log grid")->capture_default_str()->excludes(eps_list_opt);
    sw_cmd->add_option("--eps-min", sw_eps_min, "Smallest eps of the log grid")->capture_default_str()->excludes(eps_list_opt);
    sw_cmd->add_option("--per-decade", sw_per_decade, "Log grid points per decade")->capture_default_str()->excludes(eps_list_opt);
    sw_cmd->add_option("--trials", sw.trials, "Noise realizations per eps")->capture_default_str();
    sw_cmd->add_option("--seed", sw.seed, "RNG seed")->envname("SOFTEXTRAP_SEED")->capture_default_str();
    sw_cmd->add_option("--oversampling", sw.oversampling, "Sample nodes per degree")->capture_default_str();
    sw_cmd->add_option("--out", sw.output_path, "CSV path (default stdout)");
    sw_cmd->add_option("--config", "Key-value file (name=value per line) with option values");
    sw_cmd->callback([&] {
        action = [&] {
            sw.eps_list = sw_eps.empty() ? log_spaced_eps(sw_eps_max, sw_eps_min, sw_per_decade) : sw_eps;
            std::ostringstream csv;
            write_sweep_csv(csv, run_eps_sweep(sw));
            emit(sw.output_path, csv.str(), out);
        };
    });

    try {
        std::vector<std::string> args(argv + 1, argv + argc);
        args = expand_config(std::move(args));
        std::reverse(args.begin(), args.end());
        app.parse(std::move(args));
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return 0;
    } catch (const CLI::CallForAllHelp& e) {
        app.exit(e, out, err);
        return 0;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 2;
    }

    try {
        if (action) action();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n' << app.help();
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace softextrap
