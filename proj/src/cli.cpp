#include "pii/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <ostream>
#include <random>
#include <variant>

#include <CLI11.hpp>
#include <json.hpp>

#include "pii/blowup.hpp"
#include "pii/oscillation.hpp"
#include "pii/quadrature.hpp"
#include "pii/threshold.hpp"

namespace pii {

namespace {

using Cell = std::variant<std::monostate, double, long long, bool, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    std::vector<std::pair<std::string, double>> meta;
};

std::string format_number(double x, int precision) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", precision, x);
    return buf;
}

void write_csv(const Table& tb, std::ostream& os, int precision) {
    for (const auto& [key, value] : tb.meta)
        os << "# " << key << "=" << format_number(value, precision) << "\n";
    for (std::size_t c = 0; c < tb.columns.size(); ++c)
        os << tb.columns[c] << (c + 1 < tb.columns.size() ? "," : "\n");
    for (const auto& row : tb.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            std::visit(
                [&](const auto& v) {
                    using T = std::decay_t<decltype(v)>;
                    if constexpr (std::is_same_v<T, double>)
                        os << format_number(v, precision);
                    else if constexpr (std::is_same_v<T, long long>)
                        os << v;
                    else if constexpr (std::is_same_v<T, bool>)
                        os << (v ? "pass" : "fail");
                    else if constexpr (std::is_same_v<T, std::string>)
                        os << v;
                },
                row[c]);
            os << (c + 1 < row.size() ? "," : "\n");
        }
    }
}

void write_json(const Table& tb, std::ostream& os, int precision) {
    using json = nlohmann::ordered_json;
    // Numbers are rounded to the configured precision before emission so
    // CSV and JSON carry the same digits.
    auto rounded = [precision](double x) { return std::strtod(format_number(x, precision).c_str(), nullptr); };
    json root = json::object();
    if (!tb.meta.empty()) {
        json meta = json::object();
        for (const auto& [key, value] : tb.meta) meta[key] = rounded(value);
        root["meta"] = meta;
    }
    json rows = json::array();
    for (const auto& row : tb.rows) {
        json obj = json::object();
        for (std::size_t c = 0; c < row.size(); ++c) {
            std::visit(
                [&](const auto& v) {
                    using T = std::decay_t<decltype(v)>;
                    if constexpr (std::is_same_v<T, std::monostate>)
                        obj[tb.columns[c]] = nullptr;
                    else if constexpr (std::is_same_v<T, double>)
                        obj[tb.columns[c]] = rounded(v);
                    else
                        obj[tb.columns[c]] = v;
                },
                row[c]);
        }
        rows.push_back(obj);
    }
    root["rows"] = rows;
    os << root.dump(2) << "\n";
}

void emit(const Table& tb, const RunConfig& rc, std::ostream& os) {
    if (rc.format == OutputFormat::Csv)
        write_csv(tb, os, rc.precision);
    else
        write_json(tb, os, rc.precision);
}

// Uniform in [0, 1) from the raw generator, independent of the standard
// library's distribution implementation so output is reproducible.
double next_uniform(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

struct AirySolutionSet {
    std::vector<std::string> labels;
    std::vector<Vec2> data;
};

AirySolutionSet airy_solutions(int n_random, unsigned long long seed) {
    AirySolutionSet set;
    set.labels = {"basis-1", "basis-2"};
    set.data = {{1.0, 0.0}, {0.0, 1.0}};
    std::mt19937_64 rng(seed);
    for (int k = 0; k < n_random; ++k) {
        const double theta = 2.0 * std::numbers::pi * next_uniform(rng);
        set.labels.push_back("random-" + std::to_string(k + 1));
        set.data.push_back({std::cos(theta), std::sin(theta)});
    }
    return set;
}

int cmd_integrate(const RunConfig& rc, double sigma, Direction dir, double t_end, int samples,
                  std::ostream& os) {
    const Trajectory traj = integrate(Sigma(sigma), dir, t_end, rc.solver);
    const double t_last = traj.path.t_end();
    Table tb;
    tb.columns = {"t", "s", "v"};
    for (int j = 0; j <= samples; ++j) {
        const double t = t_last * j / samples;
        const State st = evaluate_dense(traj, t);
        tb.rows.push_back({Cell{st.t}, Cell{st.s}, Cell{st.v}});
    }
    emit(tb, rc, os);
    return traj.terminal().kind == TerminalKind::StepFailure ? 1 : 0;
}

int cmd_blowup(const RunConfig& rc, const std::vector<double>& grid, Direction dir,
               std::ostream& os) {
    Table tb;
    tb.columns = {"sigma", "t_pole", "lower", "upper", "residue", "flag"};
    for (double sg : grid) {
        const auto pole = estimate_pole(Sigma(sg), dir, rc.solver, rc.horizon);
        std::vector<Cell> row;
        row.emplace_back(sg);
        if (pole) {
            row.emplace_back(pole->t_pole);
            if (pole->analytic_lower > 0.0)
                row.emplace_back(pole->analytic_lower);
            else
                row.emplace_back(std::monostate{});
            if (std::isfinite(pole->analytic_upper))
                row.emplace_back(pole->analytic_upper);
            else
                row.emplace_back(std::monostate{});
            row.emplace_back(pole->residue_slope);
            row.emplace_back(std::string{});
        } else {
            row.emplace_back(std::monostate{});
            row.emplace_back(std::monostate{});
            row.emplace_back(std::monostate{});
            row.emplace_back(std::monostate{});
            row.emplace_back(std::string{"no-blow-up"});
        }
        tb.rows.push_back(std::move(row));
    }
    emit(tb, rc, os);
    return 0;
}

int cmd_threshold(const RunConfig& rc, double lo, double hi, double width_goal,
                  std::ostream& os) {
    const ThresholdBracket bracket = find_threshold(lo, hi, width_goal, rc.horizon, rc.solver);
    Table tb;
    tb.columns = {"lo", "hi", "width", "iterations", "status"};
    const bool converged = bracket.diagnostic.empty() && bracket.hi - bracket.lo <= width_goal;
    tb.rows.push_back({Cell{bracket.lo}, Cell{bracket.hi}, Cell{bracket.hi - bracket.lo},
                       Cell{static_cast<long long>(bracket.iterations)},
                       Cell{converged ? std::string{"converged"} : bracket.diagnostic}});
    emit(tb, rc, os);
    return converged ? 0 : 1;
}

int cmd_sturm(const RunConfig& rc, double sigma, double T, double t_max, int n_random,
              std::ostream& os) {
    const Sigma sg(sigma);
    const AirySolutionSet set = airy_solutions(n_random, rc.seed);

    Table tb;
    tb.columns = {"check", "solution", "a", "b", "result"};

    const ZeroSequence s_zeros = find_zeros(sg, t_max, rc.solver);
    for (std::size_t i = 0; i < set.data.size(); ++i) {
        const AirySpec spec(1.0, set.data[i][0], set.data[i][1], 0.0);
        const SturmReport rep = check_sturm_lower(s_zeros, spec, rc.solver);
        for (const auto& iv : rep.intervals)
            tb.rows.push_back({Cell{std::string{"lower"}}, Cell{set.labels[i]}, Cell{iv.a},
                               Cell{iv.b}, Cell{iv.pass}});
    }

    bool have_meta = false;
    for (std::size_t i = 0; i < set.data.size(); ++i) {
        const SturmReport rep = check_sturm_upper(sg, T, t_max, rc.solver, {set.data[i]});
        if (!have_meta) {
            tb.meta = {{"lambda", *rep.lambda}, {"M", *rep.M}, {"T", *rep.T}};
            have_meta = true;
        }
        for (const auto& iv : rep.intervals)
            tb.rows.push_back({Cell{std::string{"upper"}}, Cell{set.labels[i]}, Cell{iv.a},
                               Cell{iv.b}, Cell{iv.pass}});
    }

    emit(tb, rc, os);
    return 0;
}

int cmd_quadrature(const RunConfig& rc, double sigma, std::ostream& os) {
    const Sigma sg(sigma);
    const QuadResult upper = integral_blowup_upper(sg);
    const QuadResult lower = integral_blowup_lower(sg);
    Table tb;
    tb.columns = {"integral", "value", "error_estimate", "subdivisions"};
    tb.rows.push_back({Cell{std::string{"blowup-upper"}}, Cell{upper.value},
                       Cell{upper.error_estimate}, Cell{static_cast<long long>(upper.subdivisions)}});
    tb.rows.push_back({Cell{std::string{"blowup-lower"}}, Cell{lower.value},
                       Cell{lower.error_estimate}, Cell{static_cast<long long>(lower.subdivisions)}});
    emit(tb, rc, os);
    return 0;
}

std::string check_sigma_string(const std::string& s) {
    try {
        const double v = std::stod(s);
        if (v > 0.0) return {};
        if (v < 0.0)
            return "sigma must be > 0; a negative slope is the positive-slope "
                   "solution under an overall sign change";
        return "sigma must be > 0; the zero slope gives the zero solution";
    } catch (...) {
        return "sigma must be a positive number";
    }
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"homogeneous Painleve II transcendents: blow-up, oscillation and threshold"};
    app.require_subcommand(1);
    app.fallthrough(); // global flags may follow the subcommand name
    app.set_config("--config", "", "flat key=value configuration file");

    RunConfig rc;
    std::string format = "csv";
    std::string out_path;
    app.add_option("--rel-tol", rc.solver.rel_tol, "relative integration tolerance");
    app.add_option("--abs-tol", rc.solver.abs_tol, "absolute integration tolerance");
    app.add_option("--event-tol", rc.solver.event_tol, "event bracket width");
    app.add_option("--horizon", rc.horizon, "search horizon for blow-up/zeros");
    app.add_option("--seed", rc.seed, "seed for randomized comparison solutions");
    app.add_option("--precision", rc.precision, "significant digits in output")
        ->check(CLI::Range(3, 17));
    app.add_option("--format", format, "output format")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--out", out_path, "output path (default: stdout)");

    const CLI::Validator sigma_check(check_sigma_string, "SIGMA>0", "positive sigma");

    double sigma = 1.0, t_end = 1.0, lo = 0.5, hi = 0.9, width_goal = 1e-4;
    double T = 5.0, t_max = 40.0;
    int samples = 100, n_random = 8;
    std::string dir_name = "pos";
    std::vector<double> grid;

    CLI::App* c_int = app.add_subcommand("integrate", "integrate one transcendent");
    c_int->add_option("--sigma", sigma, "initial slope s'(0)")->required()->check(sigma_check);
    c_int->add_option("--dir", dir_name, "time direction")
        ->check(CLI::IsMember({"pos", "neg"}));
    c_int->add_option("--t-end", t_end, "integration end time")->required()
        ->check(CLI::PositiveNumber);
    c_int->add_option("--samples", samples, "number of output intervals")
        ->check(CLI::PositiveNumber);

    CLI::App* c_blow = app.add_subcommand("blowup", "locate poles over a sigma grid");
    c_blow->add_option("--sigma-grid", grid, "sigma values")->required()->delimiter(',');
    c_blow->add_option("--dir", dir_name, "time direction")
        ->check(CLI::IsMember({"pos", "neg"}));

    CLI::App* c_thr = app.add_subcommand("threshold", "bisect the explosive/oscillatory threshold");
    c_thr->add_option("--lo", lo, "oscillatory bracket endpoint")->check(sigma_check);
    c_thr->add_option("--hi", hi, "explosive bracket endpoint")->check(sigma_check);
    c_thr->add_option("--width-goal", width_goal, "bracket width target")
        ->check(CLI::PositiveNumber);

    CLI::App* c_sturm = app.add_subcommand("sturm", "zero-interlacing comparison checks");
    c_sturm->add_option("--sigma", sigma, "initial slope s'(0)")->required()->check(sigma_check);
    c_sturm->add_option("--T", T, "comparison onset time")->check(CLI::PositiveNumber);
    c_sturm->add_option("--t-max", t_max, "search horizon")->check(CLI::PositiveNumber);
    c_sturm->add_option("--random", n_random, "number of random comparison solutions")
        ->check(CLI::NonNegativeNumber);

    CLI::App* c_quad = app.add_subcommand("quadrature", "bound integrals for one sigma");
    c_quad->add_option("--sigma", sigma, "initial slope s'(0)")->required()->check(sigma_check);

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    }

    rc.format = (format == "json") ? OutputFormat::Json : OutputFormat::Csv;
    if (!out_path.empty()) rc.output_path = out_path;

    // Grid values must be positive and deduplicated, in given order.
    for (double g : grid)
        if (!(g > 0.0)) {
            err << "usage error: sigma grid values must be > 0\n";
            return 2;
        }
    std::vector<double> dedup;
    for (double g : grid)
        if (std::find(dedup.begin(), dedup.end(), g) == dedup.end()) dedup.push_back(g);
    rc.sigma_grid = dedup;

    std::ofstream file;
    std::ostream* os = &out;
    if (rc.output_path) {
        file.open(*rc.output_path, std::ios::binary);
        if (!file) {
            err << "error: cannot open output path " << *rc.output_path << "\n";
            return 1;
        }
        os = &file;
    }

    const Direction dir = (dir_name == "neg") ? Direction::NegativeTime
                                              : Direction::PositiveTime;
    try {
        rc.solver.validate();
        if (c_int->parsed()) return cmd_integrate(rc, sigma, dir, t_end, samples, *os);
        if (c_blow->parsed()) return cmd_blowup(rc, rc.sigma_grid, dir, *os);
        if (c_thr->parsed()) return cmd_threshold(rc, lo, hi, width_goal, *os);
        if (c_sturm->parsed()) return cmd_sturm(rc, sigma, T, t_max, n_random, *os);
        if (c_quad->parsed()) return cmd_quadrature(rc, sigma, *os);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    err << "usage error: no subcommand selected\n";
    return 2;
}

} // namespace pii
