#include "ksol/cli.hpp"
#include "ksol/errors.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace ksol;
using nlohmann::json;

namespace {

const json kMixedQuadric = json::parse(R"({
  "epsilon": -1,
  "factors": [{"n": 0, "p": 1, "q": -1}, {"n": 2, "p": 3, "q": 1}, {"n": 2, "p": 3, "q": -2}, {"n": 0, "p": 1, "q": 1}],
  "boundary": {"collapse_at_zero": "circle", "compact_end": {"collapse": "circle"}},
  "kappa1": "solve"
})");

const json kOdd = json::parse(R"({
  "epsilon": -1,
  "factors": [{"n": 0, "p": 1, "q": -1}, {"n": 1, "p": 2, "q": 1}, {"n": 1, "p": 2, "q": -1}, {"n": 0, "p": 1, "q": 1}],
  "boundary": {"collapse_at_zero": "circle", "compact_end": {"collapse": "circle"}},
  "kappa1": 0
})");

const json kBlowdownPair = json::parse(R"({
  "epsilon": -1,
  "factors": [{"n": 1, "p": 2, "q": -1}, {"n": 4, "p": 3, "q": -1}, {"n": 1, "p": 2, "q": 1}],
  "boundary": {"collapse_at_zero": "factor_one", "compact_end": {"collapse": "factor_r"}},
  "kappa1": 0
})");

const json kFlat = json::parse(R"({
  "epsilon": 0,
  "factors": [{"n": 0, "p": 1, "q": -1}, {"n": 0, "p": 1, "q": -1}],
  "boundary": {"collapse_at_zero": "circle"},
  "kappa1": 0
})");

std::string write_temp(const json& j, const std::string& name) {
  const auto path = std::filesystem::temp_directory_path() / ("ksol_test_" + name + ".json");
  std::ofstream(path) << j.dump();
  return path.string();
}

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "ksol");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("rational parsing") {
  CHECK(parse_rational(json(3), "x") == Rational(3));
  CHECK(parse_rational(json(0.25), "x") == Rational(1, 4));
  CHECK(parse_rational(json("-2/6"), "x") == Rational(-1, 3));
  CHECK(parse_rational(json("1.5e-2"), "x") == Rational(3, 200));
  CHECK(parse_rational(json("010/08"), "x") == Rational(5, 4));
  CHECK_THROWS_AS(parse_rational(json("1/0"), "x"), SchemaError);
  CHECK_THROWS_AS(parse_rational(json("one"), "x"), SchemaError);
  CHECK_THROWS_AS(parse_rational(json(true), "x"), SchemaError);
}

TEST_CASE("config parsing") {
  const RunConfig rc = parse_config(kMixedQuadric);
  CHECK(rc.solve_kappa1);
  CHECK(rc.cfg.r() == 4);
  CHECK(rc.cfg.compact());

  json extra = kFlat;
  extra["colour"] = "blue";
  CHECK_THROWS_AS(parse_config(extra), SchemaError);
  json bad_factor = kFlat;
  bad_factor["factors"][0]["m"] = 1;
  CHECK_THROWS_AS(parse_config(bad_factor), SchemaError);
  json missing = kFlat;
  missing.erase("kappa1");
  CHECK_THROWS_AS(parse_config(missing), SchemaError);

  // Only the sign of epsilon enters.
  json scaled = kMixedQuadric;
  scaled["epsilon"] = -2.5;
  const RunConfig rs = parse_config(scaled);
  CHECK(rs.cfg.epsilon == Rational(-1));
  CHECK(rs.epsilon_input == -2.5);
}

TEST_CASE("exit codes") {
  CHECK(run({}).code == kSchema);
  CHECK(run({"solve", "/nonexistent/config.json"}).code == kSchema);
  CHECK(run({"frobnicate"}).code == kSchema);
  CHECK(run({"solve", std::filesystem::temp_directory_path().string()}).code == kSchema);

  json wrong = kFlat;
  wrong["factors"][0]["q"] = 1;
  const Run r = run({"solve", write_temp(wrong, "wrong_q")});
  CHECK(r.code == kInadmissible);
  CHECK(r.err.find("q1 must be -1") != std::string::npos);
  // The report is still written.
  const json rep = json::parse(r.out);
  CHECK_FALSE(rep["validation"]["admissible"].get<bool>());

  json steady_solve = kFlat;
  steady_solve["kappa1"] = "solve";
  CHECK(run({"solve", write_temp(steady_solve, "steady_solve")}).code == kInadmissible);
}

TEST_CASE("solve on the flat steady config") {
  const Run r = run({"solve", write_temp(kFlat, "flat"), "--grid", "50"});
  REQUIRE(r.code == kOk);
  const json rep = json::parse(r.out);
  // Ricci-flat: the steady family with a zero soliton field classifies as Einstein.
  CHECK(rep["derived"]["class"] == "einstein");
  CHECK(rep["derived"]["family"] == "steady");
  CHECK(rep["residuals"]["max_equation"].get<double>() < 1e-12);
  CHECK(rep["residuals"]["pass"].get<bool>());
  CHECK(rep["futaki"].is_null());
}

TEST_CASE("solve resolves kappa1 for the compact mixed quadric") {
  const auto csv = std::filesystem::temp_directory_path() / "ksol_test_mq.csv";
  const Run r = run({"solve", write_temp(kMixedQuadric, "mq"), "--csv", csv.string()});
  REQUIRE(r.code == kOk);
  const json rep = json::parse(r.out);
  const double k = rep["derived"]["kappa1"].get<double>();
  CHECK(k > 0.0);
  CHECK(k < 0.5);
  CHECK(rep["kappa1_solve"]["method"] == "futaki_root");
  CHECK(std::abs(rep["futaki"]["at_kappa1"].get<double>()) < 1e-9);
  CHECK(rep["residuals"]["pass"].get<bool>());

  std::ifstream in(csv);
  std::string header;
  std::getline(in, header);
  CHECK(header == "s,t,alpha,beta_1,beta_2,beta_3,beta_4,f,g_1,g_2,g_3,g_4,u");
  std::string first;
  std::getline(in, first);
  // The default grid starts just inside the collapsing end.
  CHECK(first.rfind("0.001,", 0) == 0);
}

TEST_CASE("futaki sweep") {
  const Run mq = run({"futaki", write_temp(kMixedQuadric, "mq_f"), "--kappa-min", "-1", "--kappa-max", "1",
                      "--steps", "21"});
  REQUIRE(mq.code == kOk);
  CHECK(mq.out.rfind("kappa1,I\n", 0) == 0);
  CHECK(mq.out.find("\n0,7.8\n") != std::string::npos);

  const Run odd = run({"futaki", write_temp(kOdd, "odd"), "--steps", "3"});
  REQUIRE(odd.code == kOk);
  CHECK(odd.out.find("\n0,0\n") != std::string::npos);

  const Run bp = run({"futaki", write_temp(kBlowdownPair, "bp"), "--kappa-min", "0", "--kappa-max", "2",
                      "--steps", "21"});
  REQUIRE(bp.code == kOk);
  CHECK(bp.err.find("sign change") != std::string::npos);

  CHECK(run({"futaki", write_temp(kOdd, "odd2"), "--steps", "1"}).code == kSchema);
  CHECK(run({"futaki", write_temp(kFlat, "flat_f")}).code == kInadmissible);
}

TEST_CASE("find-kappa, reconstruct and flow") {
  const std::string mq = write_temp(kMixedQuadric, "mq_r");
  const Run fk = run({"find-kappa", mq});
  REQUIRE(fk.code == kOk);
  const double k = json::parse(fk.out)["kappa1"].get<double>();
  CHECK(k > 0.0);

  const Run rec = run({"reconstruct", mq, "--t-max", "1", "--points", "5"});
  REQUIRE(rec.code == kOk);
  CHECK(rec.out.rfind("t,s,f,g_1,g_2,g_3,g_4,u\n0,0,", 0) == 0);

  const Run fl = run({"flow", write_temp(kFlat, "flat_flow"), "--tau", "0.3", "--t-max", "2", "--points", "4"});
  REQUIRE(fl.code == kOk);
  // kappa1 = 0: trajectories are the identity.
  CHECK(fl.out == "t,xi\n0.5,0.5\n1,1\n1.5,1.5\n2,2\n");
}

TEST_CASE("solve output is deterministic") {
  const std::string path = write_temp(kMixedQuadric, "mq_det");
  const Run a = run({"solve", path});
  const Run b = run({"solve", path});
  CHECK(a.code == kOk);
  CHECK(a.out == b.out);
}
