#ifndef BETAFORGE_REPORT_IO_HPP
#define BETAFORGE_REPORT_IO_HPP

#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include <betaforge/identities.hpp>

namespace betaforge
{

// Line-delimited JSON records. Every number is an exact decimal string of a
// dyadic value at `ball_precision`, so parsing reproduces the report bit for
// bit.
inline nlohmann::json report_to_json(const IdentityReport &r)
{
    const int p = r.left.precision();
    return {
        {"identity", std::string(to_string(r.id))},
        {"s", r.s},
        {"precision", r.precision},
        {"ball_precision", p},
        {"left_mid", dyadic_to_decimal(r.left.mid(), p)},
        {"left_rad", dyadic_to_decimal(r.left.rad(), p)},
        {"right_mid", dyadic_to_decimal(r.right.mid(), p)},
        {"right_rad", dyadic_to_decimal(r.right.rad(), p)},
        {"residual", dyadic_to_decimal(numerator_of(r.residual * Rational(pow2(static_cast<unsigned>(p)))), p)},
        {"pass", r.pass},
    };
}

inline IdentityReport report_from_json(const nlohmann::json &j)
{
    IdentityReport r;
    r.id = identity_from_string(j.at("identity").get<std::string>());
    r.s = j.at("s").get<int>();
    r.precision = j.at("precision").get<int>();
    const int p = j.at("ball_precision").get<int>();
    auto field = [&](const char *key) { return decimal_to_dyadic(j.at(key).get<std::string>(), p); };
    r.left = BallReal(field("left_mid"), field("left_rad"), p);
    r.right = BallReal(field("right_mid"), field("right_rad"), p);
    r.residual = Rational(field("residual"), pow2(static_cast<unsigned>(p)));
    r.pass = j.at("pass").get<bool>();
    return r;
}

inline std::string serialize_reports(const std::vector<IdentityReport> &reports)
{
    std::string out;
    for (const auto &r : reports) {
        out += report_to_json(r).dump();
        out += '\n';
    }
    return out;
}

inline std::vector<IdentityReport> parse_reports(std::istream &in)
{
    std::vector<IdentityReport> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        out.push_back(report_from_json(nlohmann::json::parse(line)));
    }
    return out;
}

inline std::vector<IdentityReport> parse_reports(const std::string &text)
{
    std::istringstream in(text);
    return parse_reports(in);
}

} // namespace betaforge

#endif
