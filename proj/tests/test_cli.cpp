#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include <betaforge/cli.hpp>

using namespace betaforge;

namespace
{

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome run_cli(const std::vector<std::string> &args)
{
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

bool starts_with(const std::string &s, const std::string &prefix)
{
    return s.rfind(prefix, 0) == 0;
}

class CliTest : public ::testing::Test
{
protected:
    void SetUp() override { unsetenv("BETAFORGE_PREC"); }
    void TearDown() override { unsetenv("BETAFORGE_PREC"); }
};

} // namespace

TEST_F(CliTest, BetaDecimal)
{
    const Outcome o = run_cli({"beta", "2"});
    EXPECT_EQ(o.code, 0);
    EXPECT_TRUE(starts_with(o.out, "0.915965594177")) << o.out;
    EXPECT_NE(o.out.find(" ± 1e-"), std::string::npos);
}

TEST_F(CliTest, BetaExact)
{
    const Outcome o = run_cli({"beta", "7", "--exact"});
    EXPECT_EQ(o.code, 0);
    EXPECT_EQ(o.out, "61/184320 * pi^7\n");
    EXPECT_EQ(run_cli({"beta", "2", "--exact"}).code, cli::kNoClosedForm);
    EXPECT_EQ(run_cli({"beta", "0"}).code, cli::kUsage);
}

TEST_F(CliTest, Zeta)
{
    const Outcome exact = run_cli({"zeta", "4", "--exact"});
    EXPECT_EQ(exact.code, 0);
    EXPECT_EQ(exact.out, "1/90 * pi^4\n");
    const Outcome apery = run_cli({"zeta", "3"});
    EXPECT_EQ(apery.code, 0);
    EXPECT_TRUE(starts_with(apery.out, "1.2020569")) << apery.out;
    EXPECT_EQ(run_cli({"zeta", "1"}).code, cli::kUsage);
    EXPECT_EQ(run_cli({"zeta", "3", "--exact"}).code, cli::kNoClosedForm);
}

TEST_F(CliTest, Euler)
{
    EXPECT_EQ(run_cli({"euler", "8"}).out, "1385\n");
    EXPECT_EQ(run_cli({"euler", "6"}).out, "-61\n");
    EXPECT_EQ(run_cli({"euler", "7"}).code, cli::kUsage);
    EXPECT_EQ(run_cli({"euler", "1002"}).code, cli::kUsage);
    const Outcome j = run_cli({"euler", "20", "--json"});
    ASSERT_EQ(j.code, 0);
    const auto parsed = nlohmann::json::parse(j.out);
    EXPECT_TRUE(parsed.at("agree").get<bool>());
    EXPECT_EQ(parsed.at("beta_route").get<std::string>(), "370371188237525");
}

TEST_F(CliTest, Verify)
{
    const Outcome ok = run_cli({"verify", "--max-s", "8", "--prec", "128"});
    EXPECT_EQ(ok.code, 0) << ok.err;
    EXPECT_NE(ok.out.find("identity checks hold at 128 bits"), std::string::npos);
    EXPECT_EQ(ok.out.find("FAIL"), std::string::npos);

    EXPECT_EQ(run_cli({"verify", "--prec", "8"}).code, cli::kUsage);
    EXPECT_EQ(run_cli({"verify", "--max-s", "0"}).code, cli::kUsage);

    const Outcome bad = run_cli({"verify", "--max-s", "4", "--uncorrected-zeta-cot"});
    EXPECT_EQ(bad.code, cli::kVerificationFailed);
    EXPECT_NE(bad.out.find("FAIL"), std::string::npos);
}

TEST_F(CliTest, VerifyJsonRoundTripIsBitIdentical)
{
    const Outcome o = run_cli({"verify", "--max-s", "6", "--prec", "96", "--json"});
    ASSERT_EQ(o.code, 0);
    const auto parsed = parse_reports(o.out);
    const auto direct = verify_all(6, 96);
    ASSERT_EQ(parsed.size(), direct.size());
    for (std::size_t i = 0; i < parsed.size(); ++i) {
        EXPECT_EQ(parsed[i], direct[i]) << i;
    }
}

TEST_F(CliTest, Constants)
{
    const Outcome o = run_cli({"constants"});
    ASSERT_EQ(o.code, 0);
    EXPECT_NE(o.out.find("beta(1) = pi/4 = 0.785398163397\n"), std::string::npos) << o.out;
    EXPECT_NE(o.out.find("beta(2) = G = 0.915965594177\n"), std::string::npos);
    EXPECT_NE(o.out.find("beta(3) ≈ 0.968946146259\n"), std::string::npos);
    EXPECT_NE(o.out.find("beta(4) ≈ 0.98894455174\n"), std::string::npos);
    EXPECT_NE(o.out.find("beta(5) ≈ 0.996157828077\n"), std::string::npos);
}

TEST_F(CliTest, PrecisionFromEnvironment)
{
    setenv("BETAFORGE_PREC", "64", 1);
    const Outcome low = run_cli({"beta", "3"});
    EXPECT_EQ(low.code, 0);
    // 64 bits print floor(64 log10 2) - 4 = 15 digits.
    EXPECT_NE(low.out.find("± 1e-15"), std::string::npos) << low.out;

    // The flag wins over the environment.
    const Outcome flagged = run_cli({"beta", "3", "--prec", "256"});
    EXPECT_NE(flagged.out.find("± 1e-73"), std::string::npos) << flagged.out;

    setenv("BETAFORGE_PREC", "lots", 1);
    EXPECT_EQ(run_cli({"beta", "3"}).code, cli::kUsage);
    setenv("BETAFORGE_PREC", "16", 1);
    EXPECT_EQ(run_cli({"beta", "3"}).code, cli::kUsage);
}

TEST_F(CliTest, PrintedDigitsLieInsideEnclosure)
{
    for (int s = 1; s <= 8; ++s) {
        const Outcome text = run_cli({"beta", std::to_string(s), "--prec", "96"});
        const Outcome json = run_cli({"beta", std::to_string(s), "--prec", "96", "--json"});
        ASSERT_EQ(text.code, 0);
        ASSERT_EQ(json.code, 0);
        const auto j = nlohmann::json::parse(json.out);
        const int p = j.at("ball_precision").get<int>();
        const BallReal ball(decimal_to_dyadic(j.at("mid").get<std::string>(), p),
                            decimal_to_dyadic(j.at("rad").get<std::string>(), p), p);
        const std::string digits = text.out.substr(0, text.out.find(' '));
        const std::size_t dot = digits.find('.');
        ASSERT_NE(dot, std::string::npos);
        const int n = static_cast<int>(digits.size() - dot - 1);
        std::string raw = digits.substr(0, dot) + digits.substr(dot + 1);
        raw.erase(0, std::min(raw.find_first_not_of('0'), raw.size() - 1));
        const Rational printed(Integer(raw), ipow(Integer(10), n));
        const Rational ulp(1, ipow(Integer(10), n));
        // The truncated value and one printed unit above it bracket the ball.
        EXPECT_LE(printed, ball.lower()) << s;
        EXPECT_GE(printed + ulp, ball.upper()) << s;
    }
}

TEST_F(CliTest, UsageErrors)
{
    EXPECT_EQ(run_cli({}).code, cli::kUsage);
    EXPECT_EQ(run_cli({"gamma", "2"}).code, cli::kUsage);
    EXPECT_EQ(run_cli({"beta"}).code, cli::kUsage);
    EXPECT_EQ(run_cli({"beta", "x"}).code, cli::kUsage);
    EXPECT_EQ(run_cli({"beta", "3", "--bogus"}).code, cli::kUsage);
    EXPECT_EQ(run_cli({"beta", "3", "--exact", "--json"}).code, cli::kUsage);
    EXPECT_EQ(run_cli({"--help"}).code, 0);
}
