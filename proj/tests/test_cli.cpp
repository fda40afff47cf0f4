// End-to-end checks of the lrp binary: pipelines, exit codes, reproducibility.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <unistd.h>

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  const std::string cmd = std::string(LRP_TOOL_PATH) + " " + args + " 2>/dev/null";
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf;
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() / ("lrp_cli_" + std::to_string(::getpid()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("generate then diameter pipeline prints one integer") {
  TempDir tmp;
  const std::string g = tmp.file("g.lrp");
  CHECK(run("generate --d 1 --n 100 --s 2 --beta 1 --seed 7 --trial 0 --out " + g).exit_code == 0);

  const RunResult diam = run("diameter " + g + " --mode exact");
  CHECK(diam.exit_code == 0);
  const long value = std::stol(diam.out);
  CHECK(value >= 1);
  CHECK(value <= 100);
  CHECK(diam.out == std::to_string(value) + "\n");

  const RunResult est = run("diameter " + g + " --mode estimate --sources 4");
  CHECK(est.exit_code == 0);
  CHECK(std::stol(est.out) <= value);
}

TEST_CASE("generate is reproducible across processes") {
  TempDir tmp;
  const std::string a = tmp.file("a.lrp");
  const std::string b = tmp.file("b.lrp");
  REQUIRE(run("generate --d 1 --n 500 --s 1.5 --beta 1 --seed 11 --trial 3 --out " + a).exit_code ==
          0);
  REQUIRE(run("generate --d 1 --n 500 --s 1.5 --beta 1 --seed 11 --trial 3 --out " + b).exit_code ==
          0);
  const std::string bytes = slurp(a);
  CHECK(bytes == slurp(b));
  CHECK(bytes.rfind("lrp1 d=1 n=500 s=1.5 beta=1 seed=11 trial=3", 0) == 0);
}

TEST_CASE("stats emits the harness CSV schema") {
  TempDir tmp;
  const std::string g = tmp.file("g.lrp");
  REQUIRE(run("generate --d 1 --n 200 --s 2 --beta 0.5 --seed 1 --trial 0 --out " + g).exit_code ==
          0);
  const RunResult stats = run("stats " + g + " --psi 0.4 --histogram " + tmp.file("h.csv"));
  CHECK(stats.exit_code == 0);
  CHECK(stats.out.rfind("d,N,s,beta,trial,edges,diameter,diam_mode,corner_path,cuts,isolated,"
                        "ball2,descent_steps,renorm_valid,tail_sum_psi0.4,wall_ms\n",
                        0) == 0);
  CHECK(slurp(tmp.file("h.csv")).rfind("k,count\n", 0) == 0);
}

TEST_CASE("descent and renorm report structured text") {
  TempDir tmp;
  const std::string g = tmp.file("g.lrp");
  REQUIRE(run("generate --d 1 --n 512 --s 1.2 --beta 2 --seed 5 --trial 0 --out " + g).exit_code ==
          0);
  const RunResult descent = run("descent " + g + " --c 2");
  CHECK(descent.exit_code == 0);
  CHECK(descent.out.rfind("descent start=512", 0) == 0);
  CHECK(descent.out.find("steps_to_threshold=") != std::string::npos);

  const RunResult renorm = run("renorm " + g + " --alpha 0.8 --m 2");
  CHECK(renorm.exit_code == 0);
  CHECK(renorm.out.rfind("renorm alpha=0.8 m=2 valid=", 0) == 0);
  CHECK(renorm.out.find("level 1 ") != std::string::npos);
}

TEST_CASE("experiment reproduces archived CSV byte-identically") {
  TempDir tmp;
  const std::string cfg_path = tmp.file("sweep.json");
  {
    std::ofstream cfg(cfg_path);
    cfg << R"({"dims":[1],"sides":[32,64],"exponents":[1.0],"betas":[1.0],"trials":3,
               "seed":424242,"metrics":{"diameter":"exact","corner_path":true,"structure":true},
               "tail_psi":[0.4],"workers":1,"out":")"
        << tmp.file("r1.csv") << R"("})";
  }
  REQUIRE(run("experiment --config " + cfg_path).exit_code == 0);
  REQUIRE(run("experiment --config " + cfg_path + " --out " + tmp.file("r2.csv") + " --workers 3")
              .exit_code == 0);
  const std::string r1 = slurp(tmp.file("r1.csv"));
  CHECK(!r1.empty());
  CHECK(r1 == slurp(tmp.file("r2.csv")));
  CHECK(slurp(tmp.file("r1.agg.csv")) == slurp(tmp.file("r2.agg.csv")));
}

TEST_CASE("fit recovers a synthetic square-root law from CSV") {
  TempDir tmp;
  const std::string csv = tmp.file("syn.csv");
  {
    std::ofstream out(csv);
    out << "d,N,s,beta,trial,edges,diameter,diam_mode,corner_path,cuts,isolated,ball2,"
           "descent_steps,renorm_valid,wall_ms\n";
    for (long n : {16, 64, 256, 1024}) {
      long diam = 1;
      while (diam * diam < n) ++diam;  // exact sqrt for powers of four
      out << "1," << n << ",2,0.5,0,0," << diam << ",exact,,,,,,,\n";
    }
  }
  const RunResult fit = run("fit --input " + csv + " --regime power --metric diameter");
  CHECK(fit.exit_code == 0);
  CHECK(fit.out.rfind("slope=0.5 ", 0) == 0);
  CHECK(fit.out.find("r2=1 ") != std::string::npos);
}

TEST_CASE("exit codes: usage 1, runtime 2") {
  CHECK(run("bogus-subcommand").exit_code == 1);
  CHECK(run("diameter").exit_code == 1);
  CHECK(run("diameter /nonexistent/file.lrp").exit_code == 2);
  CHECK(run("generate --d 1 --n 0 --s 1 --beta 1 --seed 1 --out -").exit_code == 2);
  CHECK(run("fit --input /nonexistent.csv").exit_code == 2);
}
