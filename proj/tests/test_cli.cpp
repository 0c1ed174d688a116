#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " VARINTERP_CLI " " + args + " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  std::string out;
  char buf[4096];
  while (std::size_t n = std::fread(buf, 1, sizeof buf, p)) out.append(buf, n);
  const int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "varinterp_cli_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST(Cli, InterpolateWritesCsv) {
  const auto path = scratch("aho.csv");
  const auto r = run("interpolate --model aho --alpha-min 0.1 --alpha-max 1000 --points 20 --log --out " + path.string());
  ASSERT_EQ(r.code, 0) << r.out;
  const std::string csv = slurp(path);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "alpha,omega_N,W_N,g,E_exact,ratio");
  EXPECT_EQ(csv.find('\r'), std::string::npos);
  std::size_t lines = 0;
  for (char ch : csv) lines += ch == '\n';
  EXPECT_EQ(lines, 21u);
}

TEST(Cli, InterpolateIsDeterministic) {
  const auto a = run("interpolate --model polaron_mass --alpha-min 0 --alpha-max 5 --points 6");
  const auto b = run("interpolate --model polaron_mass --alpha-min 0 --alpha-max 5 --points 6");
  ASSERT_EQ(a.code, 0) << a.out;
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out.find("\n0,1,1,1,1,"), std::string::npos) << a.out;
}

TEST(Cli, ConfigErrorsExitTwo) {
  EXPECT_EQ(run("interpolate --model nope").code, 2);
  EXPECT_EQ(run("interpolate --model aho --points 1").code, 2);
  EXPECT_EQ(run("interpolate --model aho --alpha-min 0 --log").code, 2);
  EXPECT_EQ(run("interpolate --model aho --model-file x.txt").code, 2);
  EXPECT_EQ(run("interpolate").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("verify --criterion eq99").code, 2);
  EXPECT_EQ(run("infer --model-file /nonexistent").code, 2);
}

TEST(Cli, SolverFailureExitsThree) {
  const auto model = scratch("flat.txt");
  std::ofstream(model) << "name = flat\nweak_coeffs = 1\np = 2\nq = 1\n";
  const auto r = run("interpolate --model-file " + model.string() + " --alpha-min 1 --alpha-max 2 --points 2");
  EXPECT_EQ(r.code, 3) << r.out;
  EXPECT_NE(r.out.find("alpha"), std::string::npos);

  const auto bad = scratch("bad.txt");
  std::ofstream(bad) << "weak_coeffs = 0.5\np = 1\nq = 3\nstrong_targets = -1\n";
  EXPECT_EQ(run("infer --model-file " + bad.string()).code, 3);
}

TEST(Cli, InferWritesLedger) {
  const auto ledger = scratch("ledger.csv");
  std::filesystem::remove(ledger);
  const auto r = run("infer --model polaron_mass", "VARINTERP_LEDGER=" + ledger.string());
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("a3=0.04169292"), std::string::npos) << r.out;
  const std::string csv = slurp(ledger);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "quantity,paper_value,computed_value,source_eq");
  EXPECT_NE(csv.find("polaron_mass.a3,0.041692899999999998,0.04169292"), std::string::npos) << csv;
}

TEST(Cli, InferOscillatorReportsClosedForm) {
  const auto r = run("infer --model aho", "VARINTERP_LEDGER=" + scratch("l2.csv").string());
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("closed form a1"), std::string::npos);
  EXPECT_NE(r.out.find("0.77397"), std::string::npos);
}

TEST(Cli, UserModelFile) {
  const auto model = scratch("osc.txt");
  std::ofstream(model) << "name = osc\nweak_coeffs = 0.5\np = 1\nq = 3\nstrong_targets = 0.667986259155777\n"
                          "prefactor = g/4\n";
  const auto r = run("interpolate --model-file " + model.string() + " --alpha-min 1 --alpha-max 10 --points 3");
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "alpha,omega_N,W_N,weak,strong");
}

TEST(Cli, VerifyFilterAndPerturb) {
  const auto one = run("verify --criterion mass_strong");
  EXPECT_EQ(one.code, 0) << one.out;
  EXPECT_NE(one.out.find("mass_strong"), std::string::npos);
  EXPECT_EQ(one.out.find("reexpansion"), std::string::npos);

  const auto bad = run("verify --criterion 5 --criterion 7 --perturb polaron_mass.a1=1.01");
  EXPECT_NE(bad.code, 0);
  EXPECT_NE(bad.out.find("FAIL]  5"), std::string::npos) << bad.out;
  EXPECT_NE(bad.out.find("PASS]  7"), std::string::npos) << bad.out;
}
