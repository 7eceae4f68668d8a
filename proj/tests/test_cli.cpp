#include "chyp/cli.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

using namespace chyp;

namespace {

const std::string kData = CHYP_DATA_DIR;

CommandResult run_cli(std::vector<std::string> args) { return run(args); }

std::filesystem::path temp_file(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / "chyp_cli_tests";
    std::filesystem::create_directories(dir);
    return dir / name;
}

void write_text(const std::filesystem::path& p, const std::string& text) {
    std::ofstream out(p);
    out << text;
}

std::string read_text(const std::filesystem::path& p) {
    std::ifstream in(p);
    return std::string(std::istreambuf_iterator<char>(in), {});
}

const std::vector<std::string> kP1 = {"ball: 1,0,1", "ball: i,0,1", "ball: 0,1,1", "ball: 0,i,1", "ball: 0,-i,1"};

}  // namespace

TEST(Cli, CartanExample) {
    CommandResult r = run_cli({"cartan", "ball: 1,0,1", "ball: i,0,1", "ball: 0,1,1"});
    EXPECT_EQ(r.exit_code, 0);
    EXPECT_EQ(r.output, "1/4*pi\n");
    EXPECT_TRUE(r.error.empty());
}

TEST(Cli, CartanDegenerate) {
    CommandResult r = run_cli({"cartan", "ball: 1,0,1", "ball: 1,0,1", "ball: 0,1,1"});
    EXPECT_EQ(r.exit_code, 0);
    EXPECT_EQ(r.output, "degenerate (c_phi = 0)\n");
}

TEST(Cli, CartanInSiegelModelMatchesBall) {
    CommandResult r = run_cli({"cartan", "ball: 1,0,1", "ball: 0,i,1", "ball: 1/2+1/2i,1/2+1/2i,1", "--model", "siegel"});
    EXPECT_EQ(r.exit_code, 0);
    EXPECT_EQ(r.output, "-1/2*pi\n");
}

TEST(Cli, CartanInexactPrintsDecimal) {
    CommandResult r = run_cli({"cartan", "ball: 0.6,0.8,1", "ball: i,0,1", "ball: 0,1,1"});
    EXPECT_EQ(r.exit_code, 0);
    EXPECT_EQ(r.output.find("pi"), std::string::npos);
    EXPECT_NE(r.output.find('.'), std::string::npos);
}

TEST(Cli, CupSquare) {
    std::vector<std::string> args = {"cupsq"};
    args.insert(args.end(), kP1.begin(), kP1.end());
    CommandResult r = run_cli(args);
    EXPECT_EQ(r.exit_code, 0);
    EXPECT_EQ(r.output, "1/6*pi^2\n");
    args.push_back("--oracle");
    EXPECT_EQ(run_cli(args).output, "1/6*pi^2\n");

    CommandResult p2 = run_cli({"cupsq", "ball: 1,0,1", "ball: i,0,1", "ball: 0,1,1", "ball: 0,i,1",
                                "ball: 1/2+1/2i,1/2+1/2i,1"});
    EXPECT_EQ(p2.output, "-1/4*pi^2\n");
}

TEST(Cli, CupSquareRepeatedPointIsZero) {
    CommandResult r = run_cli({"cupsq", "ball: 1,0,1", "ball: 0,i,1", "ball: 0,-i,1", "ball: 0,i,1", "ball: i,0,1"});
    EXPECT_EQ(r.exit_code, 0);
    EXPECT_EQ(r.output, "0\n");
}

TEST(Cli, VerifyAllChecks) {
    CommandResult r = run_cli({"verify-paper"});
    EXPECT_EQ(r.exit_code, 0) << r.output;
    for (const char* needle :
         {"bound: 2/9*pi^2", "2/9*pi^2 <= ||[c_phi cup c_phi]|| <= pi^2", "all checks passed", "erratum:",
          "= 2 b(x+,x_i,y+,y_i)", "simplicial volume: [16/3, 24]", "milnor-wood bound: 3/2"})
        EXPECT_NE(r.output.find(needle), std::string::npos) << needle;
    EXPECT_EQ(r.output.find("FAIL"), std::string::npos);
    EXPECT_EQ(r.output.find("FLAG"), std::string::npos);
}

TEST(Cli, VerifyAllChecksIsByteStable) {
    EXPECT_EQ(run_cli({"verify-paper"}).output, run_cli({"verify-paper"}).output);
}

TEST(Cli, Constants) {
    CommandResult r = run_cli({"constants", "--chi", "1"});
    EXPECT_EQ(r.exit_code, 0);
    EXPECT_EQ(r.output,
              "chi: 1\n"
              "volume: 8/3*pi^2\n"
              "omega norm: [1/9*pi^2, 1/2*pi^2]\n"
              "simplicial volume: [16/3, 24]\n"
              "simplicial volume per chi: [16/3, 24]\n"
              "milnor-wood bound: 3/2\n"
              "cp2: volume 8*pi^2, chi 3\n");
    EXPECT_NE(run_cli({"constants", "--chi", "3"}).output.find("simplicial volume: [16, 72]"), std::string::npos);
}

TEST(Cli, ConstantsRejectsBadChi) {
    EXPECT_EQ(run_cli({"constants", "--chi", "0"}).exit_code, 2);
    EXPECT_EQ(run_cli({"constants", "--chi", "-4"}).exit_code, 2);
    EXPECT_EQ(run_cli({"constants", "--chi", "two"}).exit_code, 2);
    EXPECT_EQ(run_cli({"constants"}).exit_code, 2);
}

TEST(Cli, MalformedLiteralReportsPosition) {
    CommandResult r = run_cli({"cartan", "ball: 1,0,1", "ball: 1/,0,1", "ball: 0,1,1"});
    EXPECT_EQ(r.exit_code, 2);
    EXPECT_NE(r.error.find("point 2"), std::string::npos) << r.error;
    EXPECT_NE(r.error.find("column"), std::string::npos) << r.error;
    EXPECT_TRUE(r.output.empty());
}

TEST(Cli, NonNullPointIsAnInputError) {
    CommandResult r = run_cli({"cartan", "ball: 1,1,1", "ball: i,0,1", "ball: 0,1,1"});
    EXPECT_EQ(r.exit_code, 2);
    EXPECT_NE(r.error.find("not null"), std::string::npos);
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(run_cli({}).exit_code, 2);
    EXPECT_EQ(run_cli({"frobnicate"}).exit_code, 2);
    EXPECT_EQ(run_cli({"cartan", "ball: 1,0,1"}).exit_code, 2);
    EXPECT_EQ(run_cli({"cartan", "ball: 1,0,1", "ball: i,0,1", "ball: 0,1,1", "--model", "disk"}).exit_code, 2);
    EXPECT_EQ(run_cli({"convert", "--to", "klein", "ball: 1,0,1"}).exit_code, 2);
    EXPECT_EQ(run_cli({"check-cert", (temp_file("missing") / "nope.cert").string()}).exit_code, 2);
}

TEST(Cli, HelpExitsZero) {
    CommandResult r = run_cli({"--help"});
    EXPECT_EQ(r.exit_code, 0);
    EXPECT_NE(r.output.find("verify-paper"), std::string::npos);
    EXPECT_EQ(run_cli({"search", "--help"}).exit_code, 0);
}

TEST(Cli, Convert) {
    CommandResult r = run_cli({"convert", "--to", "heis", "ball: 1,0,1"});
    EXPECT_EQ(r.exit_code, 0);
    EXPECT_EQ(r.output, "heis: inf\n");
    EXPECT_EQ(run_cli({"convert", "--to", "siegel", "heis: 0, 0 ; 0"}).output, "siegel: 0, 0, 1\n");
    EXPECT_EQ(run_cli({"convert", "--to", "heis", "heis: 1, 1 ; 1"}).output, "heis: 1, 1 ; 1\n");
    // ball -> heis -> ball returns the same projective point
    const std::string h = run_cli({"convert", "--to", "heis", "ball: 0,i,1"}).output;
    const std::string back = run_cli({"convert", "--to", "ball", h.substr(0, h.size() - 1)}).output;
    CommandResult same = run_cli({"cartan", "ball: 0,i,1", back.substr(0, back.size() - 1), "ball: 1,0,1"});
    EXPECT_EQ(same.output, "degenerate (c_phi = 0)\n");
}

TEST(Cli, ConvertFlagsInexact) {
    CommandResult r = run_cli({"convert", "--to", "heis", "ball: 0.6,0.8,1"});
    EXPECT_EQ(r.exit_code, 0);
    EXPECT_NE(r.output.find("# inexact"), std::string::npos);
    EXPECT_EQ(r.output.find("-0"), std::string::npos) << r.output;
}

TEST(Cli, SearchAndCheckCertRoundTrip) {
    const auto cert = temp_file("six.cert");
    CommandResult s = run_cli({"search", "--points", kData + "/six_points.txt", "--group", kData + "/six_point_group.txt",
                               "--out", cert.string()});
    ASSERT_EQ(s.exit_code, 0) << s.output << s.error;
    EXPECT_NE(s.output.find("bound: 2/9*pi^2"), std::string::npos) << s.output;
    EXPECT_NE(s.output.find("self-check: ok"), std::string::npos);

    CommandResult c = run_cli({"check-cert", cert.string()});
    EXPECT_EQ(c.exit_code, 0) << c.output;
    EXPECT_NE(c.output.find("certificate ok"), std::string::npos);

    // Byte-identical on a second run with more threads.
    const auto cert2 = temp_file("six2.cert");
    CommandResult s2 = run_cli({"search", "--points", kData + "/six_points.txt", "--group",
                                kData + "/six_point_group.txt", "--threads", "3", "--out", cert2.string()});
    EXPECT_EQ(read_text(cert), read_text(cert2));
}

TEST(Cli, CheckCertRejectsTampering) {
    const auto cert = temp_file("tamper.cert");
    ASSERT_EQ(run_cli({"search", "--points", kData + "/six_points.txt", "--group", kData + "/six_point_group.txt",
                       "--out", cert.string()})
                  .exit_code,
              0);
    std::string text = read_text(cert);
    const auto at = text.find("bound: 2/9");
    ASSERT_NE(at, std::string::npos);
    text.replace(at, 10, "bound: 1/3");
    write_text(cert, text);
    CommandResult c = run_cli({"check-cert", cert.string()});
    EXPECT_EQ(c.exit_code, 1);
    EXPECT_NE(c.output.find("certificate INVALID"), std::string::npos);
}

TEST(Cli, CheckCertMalformedIsInputError) {
    const auto cert = temp_file("bad.cert");
    write_text(cert, "certificate v1\nmerge: 0 1 2 3\n");
    CommandResult c = run_cli({"check-cert", cert.string()});
    EXPECT_EQ(c.exit_code, 2);
    EXPECT_NE(c.error.find("line 2"), std::string::npos) << c.error;
}

TEST(Cli, SearchOptionsAreValidated) {
    const std::string pts = kData + "/six_points.txt", grp = kData + "/six_point_group.txt";
    EXPECT_EQ(run_cli({"search", "--points", pts}).exit_code, 2);
    EXPECT_EQ(run_cli({"search", "--points", pts, "--group", grp, "--max-tuples", "0"}).exit_code, 2);
    EXPECT_EQ(run_cli({"search", "--points", pts, "--group", grp, "--word-length", "-1"}).exit_code, 2);
    EXPECT_EQ(run_cli({"search", "--points", pts + ".missing", "--group", grp}).exit_code, 2);
    CommandResult small = run_cli({"search", "--points", pts, "--group", grp, "--word-length", "1"});
    EXPECT_EQ(small.exit_code, 0);
    EXPECT_NE(small.output.find("bound: 2/9*pi^2"), std::string::npos) << small.output;
}
