#include <gtest/gtest.h>

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "hessrank/classify.hpp"
#include "hessrank/cli.hpp"
#include "hessrank/rational_function.hpp"
#include "support.hpp"

using namespace hessrank;
using namespace hessrank::testing;
using Json = nlohmann::json;

namespace {

const std::string kData = HESSRANK_TEST_DATA;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return kData + "/" + name; }

class TempFile {
 public:
  explicit TempFile(const std::string& text) {
    static int counter = 0;
    path_ = (std::filesystem::temp_directory_path() /
             ("hessrank_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++) + ".txt"))
                .string();
    std::ofstream(path_) << text;
  }
  ~TempFile() { std::filesystem::remove(path_); }
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

Polynomial parse_in(const Json& s, std::size_t x_count, std::size_t arity) {
  ParseOptions opt;
  opt.x_count = x_count;
  opt.arity = arity;
  return parse_polynomial(s.get<std::string>(), opt);
}

RationalFunction parse_rf_in(const Json& s, std::size_t x_count, std::size_t arity) {
  ParseOptions opt;
  opt.x_count = x_count;
  opt.arity = arity;
  return parse_rational_function(s.get<std::string>(), opt);
}

/// Rebuilds g(p.x, q.x) + a.x from the report strings alone.
Polynomial reassemble(const Json& d, std::size_t n) {
  const Polynomial g = parse_in(d["g"], n, n + 2);
  const std::size_t m = d["main_count"].get<std::size_t>();
  auto linear = [&](const Json& coeffs) {
    Polynomial out(n);
    for (std::size_t k = 0; k < coeffs.size(); ++k) out += parse_in(coeffs[k], n, n) * Polynomial::variable(n, k);
    return out;
  };
  std::vector<Polynomial> assignment;
  for (std::size_t k = 0; k < n; ++k) assignment.push_back(Polynomial::variable(n, k));
  assignment.push_back(d["p"].is_null() ? Polynomial(n) : linear(d["p"]));
  assignment.push_back(d["q"].is_null() ? Polynomial(n) : linear(d["q"]));
  EXPECT_LE(d["a"].size(), m);
  return compose(g, assignment) + linear(d["a"]);
}

bool flags_all_true(const Json& report) {
  for (const auto& [key, value] : report["verification"].items()) {
    if (!value.get<bool>()) return false;
  }
  return true;
}

}  // namespace

TEST(Cli, AnalyzeQuadric) {
  TempFile f("x1^2+5*x2^2\n");
  const Outcome o = run_cli({"analyze", f.path()});
  ASSERT_EQ(o.code, 0) << o.err;
  const Json r = Json::parse(o.out);
  EXPECT_EQ(r["rank"]["r"], 2);
  EXPECT_EQ(r["apex"]["s"], 2);
  EXPECT_EQ(r["decomposition"]["form"], "i");
  EXPECT_TRUE(r["decomposition"]["verified"].get<bool>());
  EXPECT_TRUE(r["normal_form"].is_null());
  EXPECT_TRUE(r["timing_ms"].is_null());
  EXPECT_EQ(r["request"]["command"], "analyze");
  EXPECT_EQ(r["request"]["vars"], 2);
}

TEST(Cli, DecomposeShiftedSingleForm) {
  const Outcome o = run_cli({"decompose", data("shifted_single_form.txt")});
  ASSERT_EQ(o.code, 0) << o.err;
  const Json r = Json::parse(o.out);
  const Json& d = r["decomposition"];
  ASSERT_FALSE(d.is_null());
  EXPECT_EQ(d["form"], "iv");
  EXPECT_EQ(parse_in(d["g"], 5, 7), parse_in(Json("t^2"), 5, 7));
  const RationalFunction gamma = parse_rf_in(d["gamma"], 5, 5);
  ParseOptions opt;
  opt.x_count = 5;
  const RationalFunction expected_gamma = parse_rational_function("(x4*x5+1)/x5", opt);
  EXPECT_TRUE(gamma == expected_gamma || gamma == expected_gamma.inverse()) << to_string(gamma);
  const RationalFunction lambda = parse_rf_in(d["lambda"], 5, 5);
  const RationalFunction expected_lambda = parse_rational_function("x4^2/(x4*x5+1)", opt);
  EXPECT_TRUE(lambda == expected_lambda || lambda == -expected_lambda) << to_string(lambda);
  EXPECT_FALSE(d["over_L_fallback"].get<bool>());
  EXPECT_TRUE(r["verification"]["relations"].get<bool>());
}

TEST(Cli, SmithPolynomialDomain) {
  const Outcome o = run_cli({"smith", data("smith_polyt.txt"), "--domain", "polyt"});
  ASSERT_EQ(o.code, 0) << o.err;
  const Json r = Json::parse(o.out);
  const Json& nf = r["normal_form"];
  EXPECT_EQ(nf["r"], 1);
  // Q A == P recomputed from the strings.
  const Json& q = nf["Q"];
  const Json& a = nf["A"];
  const char* p[2][2] = {{"t", "t^2"}, {"1", "t"}};
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      Polynomial sum(1);
      for (std::size_t k = 0; k < q[i].size(); ++k) sum += parse_in(q[i][k], 0, 1) * parse_in(a[k][j], 0, 1);
      EXPECT_EQ(sum, parse_in(Json(p[i][j]), 0, 1));
    }
  }
  EXPECT_TRUE(flags_all_true(r));
}

TEST(Cli, SmithVariants) {
  for (const char* v : {"plain", "upper", "leading", "debondt"}) {
    const Outcome o = run_cli({"smith", data("smith_polyt.txt"), "--domain", "polyt", "--variant", v});
    ASSERT_EQ(o.code, 0) << v << ": " << o.err;
    EXPECT_TRUE(flags_all_true(Json::parse(o.out))) << v;
  }
  for (const char* v : {"plain", "upper", "debondt"}) {
    const Outcome o = run_cli({"smith", data("smith_int.txt"), "--domain", "int", "--variant", v});
    ASSERT_EQ(o.code, 0) << v << ": " << o.err;
    const Json r = Json::parse(o.out);
    EXPECT_EQ(r["normal_form"]["r"], 2);
    EXPECT_TRUE(flags_all_true(r)) << v;
  }
}

TEST(Cli, GordanNoetherCoordinates) {
  const Outcome o = run_cli({"decompose", data("gordan_noether.txt")});
  ASSERT_EQ(o.code, 0) << o.err;
  const Json r = Json::parse(o.out);
  EXPECT_EQ(r["rank"]["r"], 4);
  EXPECT_EQ(r["apex"]["s"], 2);
  EXPECT_EQ(r["decomposition"]["form"], "iii");
  EXPECT_EQ(r["coordinates"]["main_count"], 3);
  const Polynomial transformed = parse_in(r["coordinates"]["transformed"], 5, 5);
  EXPECT_EQ(reassemble(r["decomposition"], 5), transformed);
}

TEST(Cli, ApexCommandSkipsDecomposition) {
  const Outcome o = run_cli({"apex", data("gordan_noether.txt")});
  ASSERT_EQ(o.code, 0) << o.err;
  const Json r = Json::parse(o.out);
  EXPECT_EQ(r["apex"]["s"], 2);
  EXPECT_TRUE(r["decomposition"].is_null());
}

TEST(Cli, ReduceKeepsRank) {
  TempFile f("(x1+x2)^2 + (x3+x4)^2\n");
  const Outcome o = run_cli({"reduce", f.path(), "--target", "3", "--seed", "7"});
  ASSERT_EQ(o.code, 0) << o.err;
  const Json r = Json::parse(o.out);
  EXPECT_EQ(r["normal_form"]["target"], 3);
  EXPECT_TRUE(flags_all_true(r));
  const Polynomial reduced = parse_in(r["normal_form"]["h"], 3, 3);
  EXPECT_EQ(numeric_rank(hessian(reduced, 3), 5), 2u);
}

TEST(Cli, ReduceDefaultTarget) {
  TempFile f("x1^2 + (x2+x3)^2\n");
  const Outcome o = run_cli({"reduce", f.path()});
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_EQ(Json::parse(o.out)["normal_form"]["target"], 2);
}

TEST(Cli, DirectiveAndComments) {
  TempFile f("# comment\n\nvars 4 main 2\nx1*x3 + x2*x4\n# trailing\n");
  const Outcome o = run_cli({"analyze", f.path()});
  ASSERT_EQ(o.code, 0) << o.err;
  const Json r = Json::parse(o.out);
  EXPECT_EQ(r["request"]["vars"], 4);
  EXPECT_EQ(r["request"]["main_vars"], 2);
  EXPECT_EQ(r["request"]["line"], 4);
}

TEST(Cli, CommandLineOverridesDirective) {
  TempFile f("vars 4 main 2\nx1*x3 + x2*x4\n");
  const Outcome o = run_cli({"analyze", f.path(), "--vars", "5", "--main-vars", "3"});
  ASSERT_EQ(o.code, 0) << o.err;
  const Json r = Json::parse(o.out);
  EXPECT_EQ(r["request"]["vars"], 5);
  EXPECT_EQ(r["request"]["main_vars"], 3);
}

TEST(Cli, SeveralPolynomialsGiveArrayInOrder) {
  const Outcome o = run_cli({"analyze", data("quadrics.txt"), data("gordan_noether.txt")});
  ASSERT_EQ(o.code, 0) << o.err;
  const Json r = Json::parse(o.out);
  ASSERT_TRUE(r.is_array());
  ASSERT_EQ(r.size(), 3u);
  EXPECT_EQ(r[0]["polynomial"], "x1^2 + 5*x2^2");
  EXPECT_EQ(r[2]["request"]["input"], data("gordan_noether.txt"));
  EXPECT_EQ(r[2]["decomposition"]["form"], "iii");
}

TEST(Cli, TextFormat) {
  TempFile f("x1^2+5*x2^2\n");
  const Outcome o = run_cli({"analyze", f.path(), "--format", "text"});
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_NE(o.out.find("form: i\n"), std::string::npos);
  EXPECT_NE(o.out.find("r: 2\n"), std::string::npos);
}

TEST(Cli, Timing) {
  TempFile f("x1^2\n");
  const Outcome o = run_cli({"analyze", f.path(), "--timing"});
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_TRUE(Json::parse(o.out)["timing_ms"].is_number_integer());
}

TEST(Cli, ParseErrorsExitOne) {
  TempFile t("x1 + t\n");
  Outcome o = run_cli({"analyze", t.path()});
  EXPECT_EQ(o.code, 1);
  EXPECT_NE(o.err.find("line 1, column"), std::string::npos) << o.err;

  TempFile syntax("x1 +\nx2 x3\n");
  o = run_cli({"analyze", syntax.path()});
  EXPECT_EQ(o.code, 1);
  EXPECT_NE(o.err.find("line 1"), std::string::npos) << o.err;

  TempFile index("vars 2 main 2\nx3\n");
  o = run_cli({"analyze", index.path()});
  EXPECT_EQ(o.code, 1);
  EXPECT_NE(o.err.find("line 2"), std::string::npos) << o.err;

  TempFile directive("vars 2\nx1\n");
  EXPECT_EQ(run_cli({"analyze", directive.path()}).code, 1);
}

TEST(Cli, UsageErrorsExitOne) {
  EXPECT_EQ(run_cli({}).code, 1);
  EXPECT_EQ(run_cli({"bogus"}).code, 1);
  EXPECT_EQ(run_cli({"analyze"}).code, 1);
  EXPECT_EQ(run_cli({"analyze", "/nonexistent/file"}).code, 1);
  EXPECT_EQ(run_cli({"smith", data("smith_polyt.txt")}).code, 1);
  EXPECT_EQ(run_cli({"smith", data("smith_polyt.txt"), "--domain", "int"}).code, 1);
  EXPECT_EQ(run_cli({"smith", data("smith_int.txt"), "--domain", "int", "--variant", "leading"}).code, 1);
  EXPECT_EQ(run_cli({"analyze", data("quadrics.txt"), "--format", "yaml"}).code, 1);
  EXPECT_EQ(run_cli({"analyze", data("quadrics.txt"), "--main-vars", "9"}).code, 1);
  EXPECT_EQ(run_cli({"--help"}).code, 0);
}

TEST(Cli, MatrixFileErrors) {
  EXPECT_THROW(cli::parse_matrix_file("2 2 polyt\nt t\n"), ParseError);
  EXPECT_THROW(cli::parse_matrix_file("1 2 int\n1 t\n"), ParseError);
  EXPECT_THROW(cli::parse_matrix_file("1 2 rationals\n1 1\n"), ParseError);
  EXPECT_THROW(cli::parse_matrix_file("1 2 int\n1 2 3\n"), ParseError);
  EXPECT_EQ(cli::parse_matrix_file("# c\n1 2 int\n1 -2\n").matrix(0, 1), parse_in(Json("-2"), 0, 1));
}

class CliLaws : public ::testing::TestWithParam<int> {};

TEST_P(CliLaws, RoundTripAndDeterminism) {
  std::mt19937_64 rng(static_cast<std::uint64_t>(GetParam()));
  const std::size_t n = static_cast<std::size_t>(small_int(rng, 1, 3));
  const Polynomial h = random_polynomial(rng, n, 3, static_cast<std::size_t>(small_int(rng, 1, 4)));
  TempFile f("vars " + std::to_string(n) + " main " + std::to_string(n) + "\n" + to_string(h) + "\n");
  const std::string seed = std::to_string(GetParam());

  const Outcome first = run_cli({"analyze", f.path(), "--seed", seed});
  const Outcome second = run_cli({"analyze", f.path(), "--seed", seed});
  EXPECT_EQ(first.out, second.out);
  EXPECT_EQ(first.code, second.code);
  ASSERT_NE(first.code, 1) << first.err;

  const Json r = Json::parse(first.out);
  EXPECT_EQ(parse_in(r["polynomial"], n, n), h);
  if (first.code == 0) EXPECT_TRUE(flags_all_true(r));
  if (!r["decomposition"].is_null()) {
    const Polynomial transformed = parse_in(r["coordinates"]["transformed"], n, n);
    EXPECT_EQ(reassemble(r["decomposition"], n), transformed);
  }
  for (const auto& v : r["apex"]["projective_basis"]) {
    for (const auto& e : v) EXPECT_NO_THROW(parse_in(e, 0, 0));
  }

  const Outcome red1 = run_cli({"reduce", f.path(), "--seed", seed});
  const Outcome red2 = run_cli({"reduce", f.path(), "--seed", seed});
  EXPECT_EQ(red1.out, red2.out);
  if (red1.code == 0) EXPECT_TRUE(flags_all_true(Json::parse(red1.out)));
}

INSTANTIATE_TEST_SUITE_P(Seeds, CliLaws, ::testing::Range(0, 30));
