#include "cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "dcrec/asymptotics.hpp"
#include "dcrec/certificate.hpp"
#include "dcrec/characteristic.hpp"
#include "dcrec/evaluator.hpp"
#include "dcrec/parser.hpp"
#include "json_writer.hpp"

namespace dcrec::cli {

namespace {

struct Input {
    std::string path;  // empty or "-" reads stdin
};

struct SolveArgs {
    Input input;
    double tol = 1e-12;
    double tau = kDefaultTau;
    bool json = false;
};

struct EvalArgs {
    Input input;
    std::int64_t max = 0;
    std::string csv;
};

struct FitArgs {
    Input input;
    std::int64_t min = 1024;
    std::int64_t max = 1048576;
    int points = 11;
    double tol = 1e-12;
    double tau = kDefaultTau;
    std::optional<double> assume_r;
};

struct CertifyArgs {
    Input input;
    std::int64_t horizon = 100000;
    double f2 = 1.0;
    double tol = 1e-12;
};

// Raised for problems the user must fix; mapped to exit code 1.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Loaded {
    std::string text;
    RecurrenceSpec spec;
};

Loaded load(const Input& input, std::istream& in) {
    std::string text;
    if (input.path.empty() || input.path == "-") {
        std::ostringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    } else {
        std::ifstream file(input.path, std::ios::binary);
        if (!file) throw UsageError("cannot read input file '" + input.path + "'");
        std::ostringstream ss;
        ss << file.rdbuf();
        text = ss.str();
    }
    try {
        RecurrenceSpec spec = parse(text);
        return {std::move(text), std::move(spec)};
    } catch (const ParseError& e) {
        throw UsageError(e.render(text));
    }
}

EvalOptions eval_options() {
    EvalOptions options;
    if (const char* env = std::getenv(kEvalLimitEnv); env != nullptr && *env != '\0') {
        std::int64_t v = 0;
        std::string_view s(env);
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || ptr != s.data() + s.size() || v < 1)
            throw UsageError(std::string(kEvalLimitEnv) + " must be a positive integer, got '" +
                             env + "'");
        options.limit = v;
    }
    return options;
}

void add_input(CLI::App* cmd, Input& input) {
    cmd->add_option("input", input.path, "Recurrence file (stdin when omitted or '-')");
}

int cmd_solve(const SolveArgs& args, std::istream& in, std::ostream& out) {
    Loaded loaded = load(args.input, in);
    const RecurrenceSpec& spec = loaded.spec;
    RootOptions root_options;
    root_options.tol = args.tol;
    const RootResult root = solve_root(spec, root_options);
    const AsymptoticClass cls = classify(spec, root, args.tau);
    const double g_alpha = g(spec, spec.alpha());
    const std::vector<std::string> warnings = cls.warnings();

    std::ostringstream report;
    if (args.json) {
        JsonObject obj;
        obj.string("spec", canonical(spec))
            .number("r", root.r)
            .number("residual", root.residual)
            .string("branch", to_string(cls.branch))
            .string("theta", cls.theta)
            .number("g_at_alpha", g_alpha)
            .strings("warnings", warnings);
        report << obj.dump() << '\n';
    } else {
        report << std::setprecision(17);
        report << "spec      " << canonical(spec) << '\n'
               << "r         " << root.r << "  (" << to_string(root.method) << ", residual "
               << root.residual << ")\n"
               << "branch    " << to_string(cls.branch) << (cls.exact ? "  (decided exactly)" : "")
               << '\n'
               << "theta     " << cls.theta << '\n'
               << "g(alpha)  " << g_alpha << '\n';
        for (const std::string& w : warnings) report << "warning   " << w << '\n';
    }
    out << report.str();
    return kOk;
}

int cmd_eval(const EvalArgs& args, std::istream& in, std::ostream& out) {
    if (args.max < 1) throw UsageError("--max must be a positive integer");
    Loaded loaded = load(args.input, in);
    const EvalTable table = eval_upto(loaded.spec, args.max, eval_options());
    if (args.csv.empty()) {
        std::ostringstream csv;
        write_csv(table, csv);
        out << csv.str();
    } else {
        std::ofstream file(args.csv, std::ios::binary);
        if (!file) throw UsageError("cannot write '" + args.csv + "'");
        write_csv(table, file);
    }
    return kOk;
}

int cmd_fit(const FitArgs& args, std::istream& in, std::ostream& out) {
    Loaded loaded = load(args.input, in);
    const RecurrenceSpec& spec = loaded.spec;
    if (args.points < 3) throw UsageError("--points must be at least 3");
    if (args.min < spec.n0())
        throw UsageError("--min must be at least n0 = " + std::to_string(spec.n0()));
    if (args.min >= args.max) throw UsageError("--min must be below --max");

    RootOptions root_options;
    root_options.tol = args.tol;
    const RootResult root = solve_root(spec, root_options);
    const AsymptoticClass cls = args.assume_r
                                    ? classify(*args.assume_r, spec.alpha(), spec.beta(), args.tau)
                                    : classify(spec, root, args.tau);
    const EvalTable table = eval_upto(spec, args.max, eval_options());
    const std::vector<Sample> samples = sample_geometric(table, args.min, args.max, args.points);
    const FitResult fit = estimate_exponent(samples);
    const Comparison cmp = compare(cls, fit);

    JsonObject obj;
    obj.string("spec", canonical(spec))
        .string("branch", to_string(cls.branch))
        .string("theta", cls.theta)
        .number("predicted_exponent", cmp.predicted)
        .number("slope", fit.slope)
        .number("intercept", fit.intercept)
        .number("stderr", fit.std_error)
        .integer("points", static_cast<std::int64_t>(fit.points))
        .number("gap", cmp.gap)
        .number("threshold", cmp.threshold)
        .string("verdict", to_string(cmp.verdict));
    out << obj.dump() << '\n';
    return cmp.verdict == Verdict::Consistent ? kOk : kInconsistent;
}

int cmd_certify(const CertifyArgs& args, std::istream& in, std::ostream& out, std::ostream& err) {
    Loaded loaded = load(args.input, in);
    const RecurrenceSpec& spec = loaded.spec;
    if (!(args.f2 > 0.0)) throw UsageError("--f2 must be positive");
    RootOptions root_options;
    root_options.tol = args.tol;
    const RootResult root = solve_root(spec, root_options);
    const EvalOptions options = eval_options();

    Certificate cert;
    try {
        cert = construct(spec, root, args.f2, options);
    } catch (const NotApplicable& e) {
        JsonObject obj;
        obj.string("spec", canonical(spec))
            .string("status", "NOT_APPLICABLE")
            .string("reason", to_string(e.reason()))
            .number("r", root.r);
        out << obj.dump() << '\n';
        err << "certificate not applicable: " << e.what() << '\n';
        return kNotApplicable;
    }
    if (args.horizon < cert.m0_ceil())
        throw UsageError("--horizon must be at least ceil(m0) = " + std::to_string(cert.m0_ceil()));

    const VerificationReport report = verify(cert, spec, args.horizon, options);
    const EvalTable table = eval_upto(spec, args.horizon, options);

    JsonObject cert_json;
    cert_json.number("r", cert.r)
        .number("f1", cert.f1)
        .number("f2", cert.f2)
        .number("f3", cert.f3)
        .number("m0", cert.m0)
        .number("M", cert.M)
        .number("b_min", cert.b_min)
        .number("g_alpha", cert.g_alpha)
        .number("g_r_minus_half", cert.g_half_below);

    JsonObject report_json;
    report_json.integer("N", report.N)
        .boolean("base_ok", report.base.ok)
        .boolean("induction_ok", report.induction.ok)
        .boolean("closing1_ok", report.closing1.ok)
        .boolean("closing2_ok", report.closing2.ok)
        .boolean("T_le_MR_ok", report.t_le_mr.ok)
        .boolean("lower_bound_ok", report.lower_bound.ok);
    if (auto failure = report.first_failure()) {
        JsonObject f;
        f.string("check", failure->check)
            .integer("n", failure->witness.n)
            .number("lhs", failure->witness.lhs)
            .number("rhs", failure->witness.rhs);
        report_json.object("first_failure", f);
    } else {
        report_json.null("first_failure");
    }

    JsonObject bound;
    bound.number("max_T_over_n_r", max_growth_ratio(table, cert.r)).number("M_f1", cert.M * cert.f1);

    JsonObject obj;
    obj.string("spec", canonical(spec))
        .string("status", report.passed() ? "PASS" : "FAIL")
        .object("certificate", cert_json)
        .object("report", report_json)
        .object("bound", bound);
    out << obj.dump() << '\n';
    if (!report.passed()) {
        const auto failure = *report.first_failure();
        err << "verification failed: check " << failure.check << " at n = " << failure.witness.n
            << '\n';
        return kVerificationFailed;
    }
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
    CLI::App app{"Analyze divide-and-conquer recurrences T(n) = c n^a log^b n + sum a_i T(ceil(b_i n))",
                 "dcrec"};
    app.require_subcommand(1);

    SolveArgs solve_args;
    CLI::App* solve = app.add_subcommand("solve", "Solve the characteristic equation and classify growth");
    add_input(solve, solve_args.input);
    solve->add_option("--tol", solve_args.tol, "Root tolerance")->check(CLI::PositiveNumber);
    solve->add_option("--tau", solve_args.tau, "Classification tolerance on |r - alpha|")
        ->check(CLI::PositiveNumber);
    solve->add_flag("--json", solve_args.json, "Print a JSON object");

    EvalArgs eval_args;
    CLI::App* eval = app.add_subcommand("eval", "Evaluate T(1..N) exactly and print CSV");
    add_input(eval, eval_args.input);
    eval->add_option("--max", eval_args.max, "Largest n")->required();
    eval->add_option("--csv", eval_args.csv, "Write CSV to this path instead of stdout");

    FitArgs fit_args;
    CLI::App* fit = app.add_subcommand("fit", "Compare the predicted exponent with a log-log fit");
    add_input(fit, fit_args.input);
    fit->add_option("--min", fit_args.min, "Smallest sampled n")->capture_default_str();
    fit->add_option("--max", fit_args.max, "Largest sampled n")->capture_default_str();
    fit->add_option("--points", fit_args.points, "Number of geometric sample points")->capture_default_str();
    fit->add_option("--tol", fit_args.tol, "Root tolerance")->check(CLI::PositiveNumber);
    fit->add_option("--tau", fit_args.tau, "Classification tolerance")->check(CLI::PositiveNumber);
    fit->add_option("--assume-r", fit_args.assume_r,
                    "Classify with this root instead of solving (diagnostics)");

    CertifyArgs certify_args;
    CLI::App* certify = app.add_subcommand("certify", "Build and verify the O(n^r) witness constants");
    add_input(certify, certify_args.input);
    certify->add_option("--horizon", certify_args.horizon, "Verify up to this n")->capture_default_str();
    certify->add_option("--f2", certify_args.f2, "Free positive constant f2")->capture_default_str();
    certify->add_option("--tol", certify_args.tol, "Root tolerance")->check(CLI::PositiveNumber);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kOk : kInputError;
    }

    try {
        if (solve->parsed()) return cmd_solve(solve_args, in, out);
        if (eval->parsed()) return cmd_eval(eval_args, in, out);
        if (fit->parsed()) return cmd_fit(fit_args, in, out);
        if (certify->parsed()) return cmd_certify(certify_args, in, out, err);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << (std::string_view(e.what()).ends_with('\n') ? "" : "\n");
        return kInputError;
    } catch (const Error& e) {
        err << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
        switch (e.code()) {
            case ErrorCode::LimitExceeded:
            case ErrorCode::Overflow: return kEvalLimit;
            case ErrorCode::Validation:
            case ErrorCode::Precondition: return kInputError;
            default: return kNumericFailure;
        }
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kNumericFailure;
    }
    return kInputError;
}

}  // namespace dcrec::cli
