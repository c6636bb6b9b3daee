#include "crackfd/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <map>
#include <ostream>
#include <utility>

#include "crackfd/analytic.hpp"
#include "crackfd/diagnostics.hpp"

namespace crackfd::cli {

namespace {

const std::map<std::string, Subcommand> kSubcommands{
    {"simulate", Subcommand::Simulate},
    {"analytic", Subcommand::Analytic},
    {"compare", Subcommand::Compare},
    {"precision", Subcommand::Precision},
};

// Invariant text from validate() -> flag that controls it.
const std::map<std::string, std::string> kViolationFlags{
    {"alpha finite", "--alpha"}, {"alpha >= 0", "--alpha"},     {"beta finite", "--beta"},
    {"beta > 0", "--beta"},      {"v_sigma finite", "--vsigma"}, {"v_sigma >= 0", "--vsigma"},
    {"dl finite", "--dl"},       {"dl > 0", "--dl"},             {"dt finite", "--dt"},
    {"dt > 0", "--dt"},          {"lmax >= 3", "--lmax"},        {"tmax >= 1", "--tmax"},
    {"stride >= 1", "--stride"}, {"amp >= 0", "--amp"},          {"l_lo >= 0", "--l-lo"},
    {"l_lo < l_hi", "--l-lo/--l-hi"}, {"decay > 0", "--decay"},
    {"step parameters finite", "--amp/--l-lo/--l-hi"},
    {"exponential parameters finite", "--amp/--decay"},
};

std::string join(const std::vector<std::string>& items, const char* sep) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) out += sep;
        out += items[i];
    }
    return out;
}

template <class T>
std::string num(T v) {
    if constexpr (std::is_floating_point_v<T>) {
        return io::format_real(v);
    } else {
        return std::to_string(v);
    }
}

Trajectory<double> analytic_trajectory(const RunConfig& config) {
    const Grid& grid = config.grid;
    Trajectory<double> trajectory;
    trajectory.stride = config.stride;
    const std::size_t last = grid.tmax - 1;
    for (std::size_t n = 0; n <= last; ++n) {
        if (n % config.stride == 0 || n == last) {
            trajectory.snapshots.push_back(analytic_field(n, grid, config.params, config.ic));
        }
    }
    return trajectory;
}

}  // namespace

std::string to_string(Subcommand sub) {
    for (const auto& [name, value] : kSubcommands) {
        if (value == sub) return name;
    }
    return "?";
}

CliInvocation parse_cli(const std::vector<std::string>& args) {
    CLI::App app{"Finite-difference laboratory for microcrack length distributions", "crackfd"};

    std::string command;
    std::string scheme = "ftcs";
    std::string ic_kind;
    double amp = 0.0, l_lo = 0.0, l_hi = 0.0, decay = 0.0;
    RunConfig config;
    std::string precision = "f64";
    std::string out_path;
    std::string surface_path;
    bool compat = false;

    app.add_option("command", command, "simulate | analytic | compare | precision")
        ->required()
        ->check(CLI::IsMember({"simulate", "analytic", "compare", "precision"}));
    auto* scheme_opt = app.add_option("--scheme", scheme, "ftcs | upwind (default ftcs)")
                           ->check(CLI::IsMember({"ftcs", "upwind"}));
    app.add_option("--ic", ic_kind, "step | exp")->required()->check(CLI::IsMember({"step", "exp"}));
    auto* amp_opt = app.add_option("--amp", amp, "initial amplitude");
    auto* lo_opt = app.add_option("--l-lo", l_lo, "step start (inclusive)");
    auto* hi_opt = app.add_option("--l-hi", l_hi, "step end (inclusive)");
    auto* decay_opt = app.add_option("--decay", decay, "exponential decay rate");
    app.add_option("--alpha", config.params.alpha, "crack-resistance coefficient (default 1)");
    app.add_option("--beta", config.params.beta, "growth coefficient (default 1)");
    app.add_option("--vsigma", config.params.v_sigma, "loading speed (default 1)");
    app.add_option("--dl", config.grid.dl, "crack-length step (default 0.05)");
    app.add_option("--dt", config.grid.dt, "time step (default 0.001)");
    app.add_option("--lmax", config.grid.lmax, "length nodes beyond 0 (default 200)");
    app.add_option("--tmax", config.grid.tmax, "time levels (default 3000)");
    app.add_option("--stride", config.stride, "snapshot decimation (default 10)");
    auto* precision_opt = app.add_option("--precision", precision, "f32 | f64 (default f64)")
                              ->check(CLI::IsMember({"f32", "f64"}));
    app.add_option("--out", out_path, "primary output file")->required();
    auto* surface_opt = app.add_option("--surface", surface_path, "surface plot file");
    auto* compat_opt = app.add_flag("--compat-half-coefficient", compat,
                                    "use dt/dl instead of dt/(2 dl) in the centered difference");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        throw HelpRequested(app.help());
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }

    CliInvocation inv;
    inv.subcommand = kSubcommands.at(command);
    inv.out_path = out_path;

    std::vector<std::string> missing;
    std::vector<std::string> stray;
    auto need = [&](CLI::Option* o, const char* flag) {
        if (o->count() == 0) missing.emplace_back(flag);
    };
    auto forbid = [&](CLI::Option* o, const char* flag) {
        if (o->count() != 0) stray.emplace_back(flag);
    };
    need(amp_opt, "--amp");
    if (ic_kind == "step") {
        need(lo_opt, "--l-lo");
        need(hi_opt, "--l-hi");
        forbid(decay_opt, "--decay");
        config.ic = StepWise{amp, l_lo, l_hi};
    } else {
        need(decay_opt, "--decay");
        forbid(lo_opt, "--l-lo");
        forbid(hi_opt, "--l-hi");
        config.ic = Exponential{amp, decay};
    }
    if (!missing.empty()) {
        throw UsageError("--ic " + ic_kind + " requires " + join(missing, ", "));
    }
    if (!stray.empty()) {
        throw UsageError(join(stray, ", ") + " does not apply to --ic " + ic_kind);
    }

    std::vector<std::string> inapplicable;
    if (inv.subcommand == Subcommand::Analytic) {
        if (scheme_opt->count()) inapplicable.emplace_back("--scheme");
        if (precision_opt->count()) inapplicable.emplace_back("--precision");
        if (compat_opt->count()) inapplicable.emplace_back("--compat-half-coefficient");
    }
    if (inv.subcommand == Subcommand::Precision) {
        if (precision_opt->count()) inapplicable.emplace_back("--precision");
        if (surface_opt->count()) inapplicable.emplace_back("--surface");
    }
    if (!inapplicable.empty()) {
        throw UsageError(join(inapplicable, ", ") + " does not apply to the " + command +
                         " subcommand");
    }

    config.scheme = scheme == "upwind" ? SchemeKind::Upwind : SchemeKind::Ftcs;
    config.precision = precision == "f32" ? Precision::Binary32 : Precision::Binary64;
    config.options.half_coefficient_compat = compat;

    if (const auto violations = validate(config); !violations.empty()) {
        std::vector<std::string> described;
        for (const auto& v : violations) {
            const auto it = kViolationFlags.find(v);
            described.push_back(it == kViolationFlags.end() ? v : it->second + ": requires " + v);
        }
        throw UsageError("invalid value: " + join(described, "; "));
    }
    if (inv.subcommand != Subcommand::Simulate && config.params.v_sigma == 0.0) {
        throw UsageError("--vsigma: the closed-form solution requires vsigma > 0");
    }

    inv.config = config;
    if (surface_opt->count()) inv.surface_path = surface_path;
    return inv;
}

std::vector<std::string> canonical_args(const CliInvocation& inv) {
    const RunConfig& c = inv.config;
    std::vector<std::string> a{to_string(inv.subcommand)};
    if (inv.subcommand != Subcommand::Analytic) {
        a.insert(a.end(), {"--scheme", to_string(c.scheme)});
    }
    if (const auto* s = std::get_if<StepWise>(&c.ic)) {
        a.insert(a.end(), {"--ic", "step", "--amp", num(s->amplitude), "--l-lo", num(s->l_lo),
                           "--l-hi", num(s->l_hi)});
    } else {
        const auto& e = std::get<Exponential>(c.ic);
        a.insert(a.end(), {"--ic", "exp", "--amp", num(e.amplitude), "--decay", num(e.decay)});
    }
    a.insert(a.end(), {"--alpha", num(c.params.alpha), "--beta", num(c.params.beta), "--vsigma",
                       num(c.params.v_sigma), "--dl", num(c.grid.dl), "--dt", num(c.grid.dt),
                       "--lmax", num(c.grid.lmax), "--tmax", num(c.grid.tmax), "--stride",
                       num(c.stride)});
    if (inv.subcommand == Subcommand::Simulate || inv.subcommand == Subcommand::Compare) {
        a.insert(a.end(), {"--precision", to_string(c.precision)});
    }
    if (inv.subcommand != Subcommand::Analytic && c.options.half_coefficient_compat) {
        a.emplace_back("--compat-half-coefficient");
    }
    return a;
}

io::Metadata resolved_metadata(const CliInvocation& inv) {
    const RunConfig& c = inv.config;
    io::Metadata m;
    m.push_back("command=" + join(canonical_args(inv), " "));
    m.push_back("subcommand=" + to_string(inv.subcommand));
    m.push_back("scheme=" + to_string(c.scheme));
    if (const auto* s = std::get_if<StepWise>(&c.ic)) {
        m.push_back("ic=step");
        m.push_back("amp=" + num(s->amplitude));
        m.push_back("l_lo=" + num(s->l_lo));
        m.push_back("l_hi=" + num(s->l_hi));
    } else {
        const auto& e = std::get<Exponential>(c.ic);
        m.push_back("ic=exp");
        m.push_back("amp=" + num(e.amplitude));
        m.push_back("decay=" + num(e.decay));
    }
    m.push_back("alpha=" + num(c.params.alpha));
    m.push_back("beta=" + num(c.params.beta));
    m.push_back("vsigma=" + num(c.params.v_sigma));
    m.push_back("dl=" + num(c.grid.dl));
    m.push_back("dt=" + num(c.grid.dt));
    m.push_back("lmax=" + num(c.grid.lmax));
    m.push_back("tmax=" + num(c.grid.tmax));
    m.push_back("stride=" + num(c.stride));
    m.push_back("precision=" + (inv.subcommand == Subcommand::Precision ? std::string("f32+f64")
                                                                         : to_string(c.precision)));
    m.push_back("blowup_threshold=" + num(c.blowup_threshold));
    m.push_back(std::string("compat_half_coefficient=") +
                (c.options.half_coefficient_compat ? "true" : "false"));
    return m;
}

std::string execute(const CliInvocation& inv) {
    const RunConfig& config = inv.config;
    const Grid& grid = config.grid;
    const auto metadata = resolved_metadata(inv);

    switch (inv.subcommand) {
        case Subcommand::Simulate:
        case Subcommand::Compare: {
            const auto trajectory = run(config);
            return std::visit(
                [&](const auto& traj) {
                    if (inv.subcommand == Subcommand::Simulate) {
                        io::write_trajectory_csv(traj, grid, inv.out_path, metadata);
                    } else {
                        io::write_report(compare_trajectory(traj, config), grid, inv.out_path, metadata);
                    }
                    if (inv.surface_path) io::write_surface(traj, grid, *inv.surface_path);
                    return "status=" + to_string(traj.status) + " snapshots=" +
                           std::to_string(traj.snapshots.size()) + " out=" + inv.out_path;
                },
                trajectory);
        }
        case Subcommand::Analytic: {
            const auto trajectory = analytic_trajectory(config);
            io::write_trajectory_csv(trajectory, grid, inv.out_path, metadata);
            if (inv.surface_path) io::write_surface(trajectory, grid, *inv.surface_path);
            return "snapshots=" + std::to_string(trajectory.snapshots.size()) + " out=" + inv.out_path;
        }
        case Subcommand::Precision: {
            const auto report = precision_experiment(config);
            io::write_report(report, grid, inv.out_path, metadata);
            return "status_f32=" + to_string(report.status_f32) +
                   " status_f64=" + to_string(report.status_f64) + " out=" + inv.out_path;
        }
    }
    return {};
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CliInvocation inv;
    try {
        inv = parse_cli(args);
    } catch (const HelpRequested& help) {
        out << help.what();
        return 0;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\nRun with --help for the flag list.\n";
        return 2;
    }
    try {
        out << execute(inv) << '\n';
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

}  // namespace crackfd::cli
