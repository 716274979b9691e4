#ifndef BETAFORGE_CLI_HPP
#define BETAFORGE_CLI_HPP

#include <array>
#include <cmath>
#include <cstdlib>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <betaforge/identities.hpp>
#include <betaforge/report_io.hpp>

namespace betaforge::cli
{

enum class OutputFormat { PlainDecimal, ExactPiForm, MachineReport };

enum ExitCode : int {
    kSuccess = 0,
    kUsage = 1,
    kVerificationFailed = 2,
    kNoClosedForm = 3,
};

inline constexpr int kDefaultPrecision = 128;
inline constexpr int kMinPrecision = 32;
inline constexpr int kMaxPrecision = 4096;
inline constexpr int kMaxEulerIndex = 1000;

// Fractional digits printed by default: floor(precision * log10 2) - 4.
inline int default_digits(int precision)
{
    return static_cast<int>(std::floor(precision * 0.30102999566398120)) - 4;
}

// Truncated decimal plus a bound of one unit in the last printed digit.
inline std::string render_decimal(const BallReal &x, int max_digits)
{
    const DecimalText t = format_truncated(x, max_digits);
    if (t.digits < 0) {
        return t.text + " ± " + dyadic_to_decimal(x.rad(), x.precision()) + " (radius)";
    }
    return t.text + " ± 1e-" + std::to_string(t.digits);
}

struct Request {
    OutputFormat format = OutputFormat::PlainDecimal;
    int precision = kDefaultPrecision;
};

inline nlohmann::json ball_json(const BallReal &x)
{
    return {{"ball_precision", x.precision()},
            {"mid", dyadic_to_decimal(x.mid(), x.precision())},
            {"rad", dyadic_to_decimal(x.rad(), x.precision())}};
}

inline int cmd_beta(int s, const Request &req, std::ostream &out, std::ostream &err)
{
    if (s < 1) {
        err << "betaforge beta: s must be a positive integer\n";
        return kUsage;
    }
    if (req.format == OutputFormat::ExactPiForm) {
        if (s % 2 == 0) {
            err << "betaforge beta: no known closed form for beta(" << s << ")\n";
            return kNoClosedForm;
        }
        out << beta_odd_exact((s - 1) / 2).to_string() << '\n';
        return kSuccess;
    }
    const BallReal value = beta_via_polygamma(s, req.precision);
    if (req.format == OutputFormat::MachineReport) {
        nlohmann::json j = ball_json(value);
        j["quantity"] = "beta";
        j["s"] = s;
        j["precision"] = req.precision;
        out << j.dump() << '\n';
        return kSuccess;
    }
    out << render_decimal(value, default_digits(req.precision)) << '\n';
    return kSuccess;
}

inline int cmd_zeta(int s, const Request &req, std::ostream &out, std::ostream &err)
{
    if (s < 2) {
        err << "betaforge zeta: s must be >= 2 (the series diverges at s = 1)\n";
        return kUsage;
    }
    if (req.format == OutputFormat::ExactPiForm) {
        if (s % 2 == 1) {
            err << "betaforge zeta: no known closed form for zeta(" << s << ")\n";
            return kNoClosedForm;
        }
        out << zeta_even_exact(s / 2).to_string() << '\n';
        return kSuccess;
    }
    const BallReal value = zeta_via_polygamma(s, req.precision);
    if (req.format == OutputFormat::MachineReport) {
        nlohmann::json j = ball_json(value);
        j["quantity"] = "zeta";
        j["s"] = s;
        j["precision"] = req.precision;
        out << j.dump() << '\n';
        return kSuccess;
    }
    out << render_decimal(value, default_digits(req.precision)) << '\n';
    return kSuccess;
}

inline int cmd_euler(int two_s, const Request &req, std::ostream &out, std::ostream &err)
{
    if (two_s < 0 || two_s % 2 != 0 || two_s > kMaxEulerIndex) {
        err << "betaforge euler: index must be even and in [0, " << kMaxEulerIndex << "]\n";
        return kUsage;
    }
    const EulerNumber via_beta = euler_via_beta(two_s);
    if (req.format != OutputFormat::MachineReport) {
        out << via_beta.value.str() << '\n';
        return kSuccess;
    }
    const EulerNumber via_recurrence = euler_recurrence(two_s);
    const bool agree = via_beta == via_recurrence;
    nlohmann::json j{{"index", two_s},
                     {"beta_route", via_beta.value.str()},
                     {"recurrence_route", via_recurrence.value.str()},
                     {"agree", agree}};
    out << j.dump() << '\n';
    return agree ? kSuccess : kVerificationFailed;
}

inline int cmd_verify(int max_s, const Request &req, const VerifyOptions &options, std::ostream &out,
                      std::ostream &err)
{
    if (max_s < 1) {
        err << "betaforge verify: --max-s must be >= 1\n";
        return kUsage;
    }
    const auto reports = verify_all(max_s, req.precision, options);
    if (req.format == OutputFormat::MachineReport) {
        out << serialize_reports(reports);
    } else {
        std::size_t passed = 0;
        out << "identity                    s  result  residual\n";
        for (const auto &r : reports) {
            std::string name(to_string(r.id));
            name.resize(std::max<std::size_t>(name.size(), 26), ' ');
            std::string s_col = std::to_string(r.s);
            s_col.insert(0, s_col.size() < 3 ? 3 - s_col.size() : 0, ' ');
            const double log2_res = r.residual == 0 ? -INFINITY
                                                     : detail::log2_of(numerator_of(r.residual))
                                                           - detail::log2_of(denominator_of(r.residual));
            out << name << s_col << "  " << (r.pass ? "pass" : "FAIL") << "    2^" << std::floor(log2_res) + 1
                << '\n';
            passed += r.pass ? 1 : 0;
        }
        out << passed << "/" << reports.size() << " identity checks hold at " << req.precision << " bits\n";
    }
    if (!all_pass(reports)) {
        err << "betaforge verify: at least one identity failed\n";
        return kVerificationFailed;
    }
    return kSuccess;
}

inline int cmd_constants(const Request &req, std::ostream &out)
{
    struct Row {
        int s;
        const char *label;
        int digits;
    };
    // Digit counts follow the classical table of these constants.
    static constexpr std::array<Row, 5> rows{{
        {1, "beta(1) = pi/4 = ", 12},
        {2, "beta(2) = G = ", 12},
        {3, "beta(3) ≈ ", 12},
        {4, "beta(4) ≈ ", 11},
        {5, "beta(5) ≈ ", 12},
    }};
    for (const auto &row : rows) {
        const BallReal value = beta_via_polygamma(row.s, req.precision);
        const int digits = std::min(row.digits, default_digits(req.precision));
        if (req.format == OutputFormat::MachineReport) {
            nlohmann::json j = ball_json(value);
            j["quantity"] = "beta";
            j["s"] = row.s;
            j["decimal"] = format_truncated(value, digits).text;
            out << j.dump() << '\n';
        } else {
            out << row.label << format_truncated(value, digits).text << '\n';
        }
    }
    return kSuccess;
}

// Entry point shared by the executable and the tests. args excludes the
// program name.
inline int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Certified special values of the Dirichlet beta and Riemann zeta functions", "betaforge"};
    app.require_subcommand(1);

    int precision = kDefaultPrecision;
    bool exact = false;
    bool json = false;
    int s_arg = 0;
    int max_s = 12;
    bool uncorrected = false;

    if (const char *env = std::getenv("BETAFORGE_PREC"); env != nullptr && *env != '\0') {
        try {
            std::size_t used = 0;
            precision = std::stoi(env, &used);
            if (used != std::string(env).size()) {
                throw std::invalid_argument("trailing characters");
            }
        } catch (const std::exception &) {
            err << "betaforge: BETAFORGE_PREC is not an integer\n";
            return kUsage;
        }
    }

    auto add_common = [&](CLI::App *sub) {
        sub->add_option("--prec", precision, "Working precision in bits [32, 4096]");
        sub->add_flag("--json", json, "Machine-readable output");
    };

    auto *beta = app.add_subcommand("beta", "Dirichlet beta(s)");
    beta->add_option("s", s_arg, "Argument s >= 1")->required();
    beta->add_flag("--exact", exact, "Exact rational multiple of a power of pi (odd s)");
    add_common(beta);

    auto *zeta = app.add_subcommand("zeta", "Riemann zeta(s)");
    zeta->add_option("s", s_arg, "Argument s >= 2")->required();
    zeta->add_flag("--exact", exact, "Exact rational multiple of a power of pi (even s)");
    add_common(zeta);

    auto *euler = app.add_subcommand("euler", "Even-indexed Euler number E_2s");
    euler->add_option("index", s_arg, "Even index 2s in [0, 1000]")->required();
    add_common(euler);

    auto *verify = app.add_subcommand("verify", "Cross-check every identity");
    verify->add_option("--max-s", max_s, "Largest argument to check");
    verify->add_flag("--uncorrected-zeta-cot", uncorrected)->group("");
    add_common(verify);

    auto *constants = app.add_subcommand("constants", "Table of beta(1)..beta(5)");
    add_common(constants);

    std::vector<const char *> argv{"betaforge"};
    for (const auto &a : args) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::ParseError &e) {
        err << "betaforge: " << e.what() << '\n';
        return kUsage;
    }

    if (precision < kMinPrecision || precision > kMaxPrecision) {
        err << "betaforge: precision must be in [" << kMinPrecision << ", " << kMaxPrecision << "] bits\n";
        return kUsage;
    }

    Request req;
    req.precision = precision;
    if (json) {
        req.format = OutputFormat::MachineReport;
    } else if (exact) {
        req.format = OutputFormat::ExactPiForm;
    }
    if (exact && json) {
        err << "betaforge: --exact and --json are mutually exclusive\n";
        return kUsage;
    }

    if (beta->parsed()) {
        return cmd_beta(s_arg, req, out, err);
    }
    if (zeta->parsed()) {
        return cmd_zeta(s_arg, req, out, err);
    }
    if (euler->parsed()) {
        return cmd_euler(s_arg, req, out, err);
    }
    if (verify->parsed()) {
        VerifyOptions options;
        options.uncorrected_zeta_cot = uncorrected;
        return cmd_verify(max_s, req, options, out, err);
    }
    return cmd_constants(req, out);
}

} // namespace betaforge::cli

#endif
