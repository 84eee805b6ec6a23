// fourbar: division playground, case classification, balance checking,
// design synthesis and trajectory verification.
//
// Exit codes: 0 positive result (divisible / balanced / written),
// 1 negative result, 2 invalid input.

#include "fourbar/fourbar.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace fourbar;

namespace {

constexpr int kPositive = 0;
constexpr int kNegative = 1;
constexpr int kInvalid = 2;

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Output stream for an optional path; "-" or empty selects stdout.
class Output {
public:
    explicit Output(const std::string& path) {
        if (path.empty() || path == "-") return;
        file_.open(path);
        if (!file_) throw InputError("cannot write '" + path + "'");
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

template<RealField R>
LaurentPoly<R> load_poly(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    return read_poly<R>(in, path);
}

template<RealField R>
DesignParams<R> load_valid_params(const std::string& path) {
    auto p = load_params<R>(path);
    validate(p);
    return p;
}

struct DivideOpts {
    std::string f, g, out;
    std::int64_t alpha{DirectionFunctional{}.alpha}, beta{DirectionFunctional{}.beta};
};

template<RealField R>
int run_divide(const DivideOpts& o) {
    auto f = load_poly<R>(o.f);
    auto g = load_poly<R>(o.g);
    if (g.is_zero()) throw InputError("divisor g is the zero polynomial");
    DivisionOptions opt;
    opt.h = {o.alpha, o.beta};
    auto qr = toric_divide(f, g, opt);
    Output out(o.out);
    write_poly(out.stream(), qr.quotient);
    out.stream() << "---\n";
    write_poly(out.stream(), qr.remainder);
    return qr.remainder.is_zero() ? kPositive : kNegative;
}

template<RealField R>
int run_classify(const std::string& params) {
    auto p = load_valid_params<R>(params);
    auto kc = classify_case(p);
    auto dp = derive(p);
    write_classification(std::cout, kc, mode_factors(kc, dp));
    return kPositive;
}

struct CheckOpts {
    std::string params, report;
    bool json{false};
};

template<RealField R>
int run_check(const CheckOpts& o) {
    auto p = load_valid_params<R>(o.params);
    auto r = check_balance(p);
    write_report(std::cout, r);
    if (!o.report.empty()) {
        Output out(o.report);
        if (o.json) out.stream() << report_to_json(r).dump(2) << "\n";
        else write_report(out.stream(), r);
    }
    return r.dynamically_balanced() ? kPositive : kNegative;
}

struct SynthOpts {
    std::string which, l, d, out;
    std::optional<std::string> q3, J3, m3, m1, m2;
    std::uint64_t seed{0};
};

int run_synthesize(const SynthOpts& o) {
    auto rat = [](const std::string& s) { return real_traits<Rational>::parse(s); };
    SynthesisChoices ch;
    if (o.q3) ch.q3 = rat(*o.q3);
    if (o.J3) ch.J3 = rat(*o.J3);
    if (o.m3) ch.m3 = rat(*o.m3);
    if (o.m1) ch.m1 = rat(*o.m1);
    if (o.m2) ch.m2 = rat(*o.m2);
    const Rational l = rat(o.l), d = rat(o.d);
    DesignParams<Rational> p;
    try {
        p = o.which == "IIA" ? synthesize_case_IIA(l, d, ch, o.seed) : synthesize_case_IVA(l, d, ch, o.seed);
    } catch (const InfeasibleError& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return kNegative;
    }
    Output out(o.out);
    out.stream() << params_to_json(p).dump(2) << "\n";
    return kPositive;
}

struct SimOpts {
    std::string params, branch{"A"}, profile{"const"}, out;
    std::size_t samples{720};
    std::uint64_t seed{0};
};

template<RealField R>
int run_simulate(const SimOpts& o) {
    auto p = load_valid_params<R>(o.params);
    try {
        auto model = make_model(p, o.branch);
        RateProfile rate = o.profile == "random" ? random_rate(o.seed, o.samples) : constant_rate();
        std::vector<TrajectorySample> samples;
        auto summary = verify_balanced(model, o.samples, rate, &samples);
        if (!o.out.empty()) {
            Output out(o.out);
            write_csv(out.stream(), samples);
        }
        write_summary(std::cout, summary);
        return summary.balanced() ? kPositive : kNegative;
    } catch (const SimulationError& e) {
        std::cerr << "simulation stopped: " << e.what() << "\n";
        if (e.sample)
            std::cerr << "last good sample: " << (*e.sample == 0 ? std::string("none") : std::to_string(*e.sample - 1))
                      << "\n";
        return kNegative;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Toric division and balance analysis for planar four-bar mechanisms"};
    app.require_subcommand(1);
    bool approx = false;
    app.add_flag("--approx", approx, "Use double-precision coefficients with tolerances");

    DivideOpts dv;
    auto* divide = app.add_subcommand("divide", "Toric division of f by g; prints Q, '---', R");
    divide->add_option("--f", dv.f, "Dividend polynomial file")->required();
    divide->add_option("--g", dv.g, "Divisor polynomial file")->required();
    divide->add_option("--alpha", dv.alpha, "Direction functional, first component");
    divide->add_option("--beta", dv.beta, "Direction functional, second component");
    divide->add_option("--out", dv.out, "Output file (default stdout)");

    std::string classify_params;
    auto* classify = app.add_subcommand("classify", "Kinematic case and mode factors");
    classify->add_option("--params", classify_params, "Design parameter file")->required();

    CheckOpts ck;
    auto* check = app.add_subcommand("check", "Static and dynamic balance in every mode");
    check->add_option("--params", ck.params, "Design parameter file")->required();
    check->add_option("--report", ck.report, "Also write the report to this file");
    check->add_flag("--json", ck.json, "Write the report file as JSON");

    SynthOpts sy;
    auto* synth = app.add_subcommand("synthesize", "Construct a balanced design");
    synth->add_option("--case", sy.which, "Target mode")->required()->check(CLI::IsMember({"IIA", "IVA"}));
    synth->add_option("--l", sy.l, "Crank length l (rational)")->required();
    synth->add_option("--d", sy.d, "Base length d (rational)")->required();
    synth->add_option("--seed", sy.seed, "Seed for unspecified free parameters");
    synth->add_option("--q3", sy.q3, "Coupler mass moment q3");
    synth->add_option("--J3", sy.J3, "Coupler inertia J3");
    synth->add_option("--m3", sy.m3, "Coupler mass m3");
    synth->add_option("--m1", sy.m1, "Link 1 mass m1");
    synth->add_option("--m2", sy.m2, "Link 2 mass m2");
    synth->add_option("--out", sy.out, "Output parameter file (default stdout)");

    SimOpts sm;
    auto* simulate = app.add_subcommand("simulate", "Drive the mechanism and verify balance numerically");
    simulate->add_option("--params", sm.params, "Design parameter file")->required();
    simulate->add_option("--branch", sm.branch, "Mode letter (A, B, C) or full label such as II-A");
    simulate->add_option("--samples", sm.samples, "Number of samples")->check(CLI::Range(2, 100000000));
    simulate->add_option("--rate-profile", sm.profile, "Input rate profile")->check(CLI::IsMember({"const", "random"}));
    simulate->add_option("--seed", sm.seed, "Seed for the random rate profile");
    simulate->add_option("--out", sm.out, "Trajectory CSV file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kInvalid;
    }

    try {
        if (*divide) return approx ? run_divide<double>(dv) : run_divide<Rational>(dv);
        if (*classify) return approx ? run_classify<double>(classify_params) : run_classify<Rational>(classify_params);
        if (*check) return approx ? run_check<double>(ck) : run_check<Rational>(ck);
        if (*synth) return run_synthesize(sy);
        if (*simulate) return approx ? run_simulate<double>(sm) : run_simulate<Rational>(sm);
    } catch (const ValidationError& e) {
        std::cerr << "invalid parameters:\n";
        for (const auto& f : e.failures) std::cerr << "  " << f << "\n";
        return kInvalid;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kInvalid;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInvalid;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInvalid;
    }
    return kInvalid;
}
