#include "mgame/commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include "mgame/csv.hpp"
#include "mgame/master.hpp"
#include "mgame/scenario.hpp"

namespace mgame::cli {

namespace {

struct RunSummary {
    double miss = 0.0;
    double payoff = 0.0;
    std::optional<double> capture_time;
    std::optional<double> min_range;
    std::string csv;
};

RunSummary simulate(const ScenarioFile& file, std::optional<LawHorizon> horizon = std::nullopt) {
    RunSummary s;
    if (is_engagement(file.model())) {
        EngagementParams p = to_engagement_params(file);
        if (horizon) p.horizon = *horizon;
        const Measurement mode =
            file.model() == ModelKind::engagement_perfect ? Measurement::perfect : Measurement::imperfect;
        const EngagementResult r = run_engagement(p, mode);
        s.miss = r.miss;
        s.payoff = r.payoff;
        s.capture_time = r.capture_time;
        s.min_range = r.min_range;
        s.csv = engagement_csv(r);
    } else {
        GameScenario sc = to_game_scenario(file);
        if (horizon) sc.horizon = *horizon;
        const GameResult r = run_game(sc, to_game_model(file.model()));
        s.miss = r.miss;
        s.payoff = r.payoff;
        s.csv = game_csv(r);
    }
    return s;
}

// Runs `body`, mapping exceptions onto exit codes.
template <typename Body>
int guarded(Streams io, Body&& body) {
    try {
        return body();
    } catch (const ScenarioError& e) {
        io.err << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const std::invalid_argument& e) {
        io.err << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const Error& e) {
        io.err << "simulation error: " << e.what() << '\n';
        return kExitRuntime;
    } catch (const std::exception& e) {
        io.err << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
}

std::optional<double> parse_real(std::string_view text) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v)) return std::nullopt;
    return v;
}

}  // namespace

int cmd_run(const std::filesystem::path& scenario, const std::filesystem::path& out_csv, Streams io) {
    return guarded(io, [&] {
        const ScenarioFile file = ScenarioFile::load(scenario);
        const RunSummary s = simulate(file);
        write_file_atomic(out_csv, s.csv);
        io.out << "miss=" << format_number(s.miss) << '\n'
               << "payoff=" << format_number(s.payoff) << '\n'
               << "capture_time=" << format_capture(s.capture_time) << '\n';
        if (s.min_range) io.out << "min_range=" << format_number(*s.min_range) << '\n';
        return kExitOk;
    });
}

int cmd_master(const std::filesystem::path& scenario, const std::filesystem::path& out_csv, Streams io) {
    return guarded(io, [&] {
        const ScenarioFile file = ScenarioFile::load(scenario);
        if (file.model() != ModelKind::example1)
            throw ScenarioError(0, "master needs model = example1, got " + std::string(to_string(file.model())));
        GameScenario sc = to_game_scenario(file);
        sc.noise = {};
        const TimeGrid grid = TimeGrid::make(0.0, sc.T, sc.dt);
        const GameResult ode = run_game(sc, GameModel::example1);
        const LambdaPath path = solve_lambda_path(example1_drift(sc.example1), sc.x0(0), grid, RootConfig{});

        const Eigen::VectorXd x = ode.trajectory.states.col(0);
        const double scale = x.cwiseAbs().maxCoeff();
        const double norm = scale > 0.0 ? scale : 1.0;

        std::string csv = "t,lambda,x_ode,rel_err\n";
        double sup = 0.0;
        std::size_t warnings = 0;
        for (std::size_t k = 0; k < grid.nodes(); ++k) {
            const double xk = x(static_cast<Eigen::Index>(k));
            double lam = std::nan("");
            double rel = std::nan("");
            if (k < path.lambda.size()) {
                lam = path.lambda[k];
                rel = std::abs(lam - xk) / norm;
                sup = std::max(sup, rel);
            } else {
                ++warnings;
            }
            csv += format_number(grid.time(k)) + ',' + format_number(lam) + ',' + format_number(xk) + ',' +
                   format_number(rel) + '\n';
        }
        write_file_atomic(out_csv, csv);
        if (!path.complete()) io.err << "warning: " << path.failure << '\n';
        io.out << "sup_rel_err=" << format_number(sup) << '\n' << "warnings=" << warnings << '\n';
        return kExitOk;
    });
}

unsigned sweep_threads_from_env() {
    if (const char* env = std::getenv("SIM_THREADS")) {
        unsigned n = 0;
        const std::string_view text(env);
        const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), n);
        if (ec == std::errc() && ptr == text.data() + text.size() && n > 0) return n;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

int cmd_sweep(const std::filesystem::path& scenario, const std::string& key, const std::vector<std::string>& values,
              const std::filesystem::path& out_csv, unsigned threads, Streams io) {
    return guarded(io, [&] {
        if (values.empty()) throw ScenarioError(0, "sweep needs at least one value");
        const ScenarioFile base = ScenarioFile::load(scenario);
        std::vector<ScenarioFile> variants;
        std::vector<double> numbers;
        for (const auto& text : values) {
            const auto v = parse_real(text);
            if (!v) throw ScenarioError(0, "sweep value '" + text + "' is not a finite number");
            variants.push_back(base.with(key, *v));
            numbers.push_back(*v);
        }

        struct Row {
            std::optional<RunSummary> summary;
            std::string error;
        };
        std::vector<Row> rows(variants.size());
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (std::size_t i = next++; i < variants.size(); i = next++) {
                try {
                    RunSummary s = simulate(variants[i]);
                    s.csv.clear();
                    rows[i].summary = std::move(s);
                } catch (const std::exception& e) {
                    rows[i].error = e.what();
                }
            }
        };
        const unsigned n_threads =
            std::min<std::size_t>(threads == 0 ? sweep_threads_from_env() : threads, variants.size());
        if (n_threads <= 1) {
            worker();
        } else {
            std::vector<std::jthread> pool;
            for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
        }

        std::string csv = "value,miss,payoff,capture_time,status\n";
        std::size_t ok = 0;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            csv += format_number(numbers[i]) + ',';
            if (rows[i].summary) {
                const RunSummary& s = *rows[i].summary;
                csv += format_number(s.miss) + ',' + format_number(s.payoff) + ',' + format_capture(s.capture_time) +
                       ",ok\n";
                ++ok;
            } else {
                csv += "nan,nan,none,error\n";
                io.err << "row " << i << " (" << key << "=" << values[i] << "): " << rows[i].error << '\n';
            }
        }
        write_file_atomic(out_csv, csv);
        io.out << "rows=" << rows.size() << '\n' << "failed=" << rows.size() - ok << '\n';
        return ok > 0 ? kExitOk : kExitRuntime;
    });
}

int cmd_compare(const std::filesystem::path& scenario, const std::filesystem::path& out_csv, Streams io) {
    return guarded(io, [&] {
        const ScenarioFile file = ScenarioFile::load(scenario);
        if (file.model() == ModelKind::example1)
            throw ScenarioError(0, "compare needs a game or engagement scenario");
        if (file.has("tau") && file.number("tau", 0.0) >= file.number("t1", 0.0))
            io.err << "note: tau >= t1 gives a single sawtooth period; the two laws are not comparable\n";
        const RunSummary theta = simulate(file, LawHorizon::cutting);
        const RunSummary fixed = simulate(file, LawHorizon::fixed);

        std::string csv = "law,miss,payoff,capture_time\n";
        for (const auto& [name, s] : {std::pair{"theta", &theta}, std::pair{"fixed_horizon", &fixed}}) {
            csv += std::string(name) + ',' + format_number(s->miss) + ',' + format_number(s->payoff) + ',' +
                   format_capture(s->capture_time) + '\n';
            io.out << name << ": miss=" << format_number(s->miss) << " payoff=" << format_number(s->payoff)
                   << " capture_time=" << format_capture(s->capture_time) << '\n';
        }
        write_file_atomic(out_csv, csv);
        return kExitOk;
    });
}

int run_cli(int argc, char** argv, Streams io) {
    CLI::App app{"Differential-game guidance simulations"};
    app.require_subcommand(1);

    std::string scenario;
    std::string out;
    std::string key;
    std::string values;

    auto* run = app.add_subcommand("run", "Simulate a scenario and write its trajectory CSV");
    auto* master = app.add_subcommand("master", "Master-equation trajectory estimate for an example1 scenario");
    auto* sweep = app.add_subcommand("sweep", "Re-run a scenario over values of one key");
    auto* compare = app.add_subcommand("compare", "Sawtooth-horizon law against the fixed-horizon law");
    for (auto* sub : {run, master, sweep, compare}) {
        sub->add_option("scenario", scenario, "Scenario file")->required();
        sub->add_option("--out", out, "Output CSV path")->required();
    }
    sweep->add_option("--key", key, "Scenario key to vary")->required();
    sweep->add_option("--values", values, "Comma-separated values")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        io.out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        io.out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        io.err << "error: " << e.what() << '\n';
        return kExitInput;
    }

    if (*run) return cmd_run(scenario, out, io);
    if (*master) return cmd_master(scenario, out, io);
    if (*compare) return cmd_compare(scenario, out, io);

    std::vector<std::string> list;
    std::stringstream ss(values);
    for (std::string item; std::getline(ss, item, ',');) {
        if (!item.empty()) list.push_back(item);
    }
    return cmd_sweep(scenario, key, list, out, 0, io);
}

}  // namespace mgame::cli
