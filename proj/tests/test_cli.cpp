#include <catch_amalgamated.hpp>
#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <numbers>
#include <sstream>
#include <sys/wait.h>
#include <unistd.h>

#include "estail/tail_test.hpp"

namespace fs = std::filesystem;
using Catch::Matchers::ContainsSubstring;

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(ESTAIL_CLI) + " " + args + " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::string out;
  std::array<char, 4096> buf;
  while (const auto got = std::fread(buf.data(), 1, buf.size(), p)) out.append(buf.data(), got);
  const int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

class TempDir {
 public:
  TempDir() : dir_(fs::temp_directory_path() / ("estail_cli_" + std::to_string(::getpid()))) {
    fs::create_directories(dir_);
  }
  ~TempDir() { fs::remove_all(dir_); }
  std::string values(const std::string& name, const std::vector<double>& xs) const {
    std::ostringstream s;
    s.precision(17);
    s << "# synthetic\n";
    for (double x : xs) s << x << '\n';
    return write(name, s.str());
  }
  std::string write(const std::string& name, const std::string& content) const {
    const auto path = dir_ / name;
    std::ofstream(path) << content;
    return path.string();
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

 private:
  fs::path dir_;
};

nlohmann::json read_json(const std::string& path) {
  std::ifstream in(path);
  return nlohmann::json::parse(in);
}

const double e = std::numbers::e;

}  // namespace

TEST_CASE("exit codes encode the decision", "[cli]") {
  TempDir tmp;
  const auto medium = tmp.values("medium.txt", {e, e * e, e * e * e});
  const auto tied = tmp.values("tied.txt", {2, 3, 9, 9});
  const auto lng = tmp.values("long.txt", {2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 1e6});

  auto r = run("test " + medium);
  CHECK(r.code == 0);
  CHECK_THAT(r.out, ContainsSubstring("T            1.71599"));
  CHECK_THAT(r.out, ContainsSubstring("decision     medium"));
  CHECK(run("test " + tied).code == 2);
  CHECK(run("test " + lng).code == 3);
  // Same decision on repeat.
  CHECK(run("test " + lng).code == 3);
}

TEST_CASE("JSON output round-trips to the same decision", "[cli]") {
  TempDir tmp;
  const auto data = tmp.values("d.txt", {1.5, 2.5, 3.0, 4.2, 11.0, 6.0, 2.2});
  const auto out = tmp.path("out.json");
  const auto r = run("test " + data + " --alpha 0.1 --json " + out);
  const auto j = read_json(out);
  const auto& res = j["result"];
  const auto d = estail::classify(res["t_stat"].get<double>(), res["alpha"].get<double>());
  CHECK(res["decision"] == estail::to_string(d));
  CHECK(res["p_long"].get<double>() == Catch::Approx(std::exp(-res["t_stat"].get<double>())));
  CHECK(j["input"]["n"] == 7);
  CHECK(r.code == (d == estail::TailClass::Medium ? 0 : d == estail::TailClass::Short ? 2 : 3));

  const auto blocked = tmp.path("blocked.json");
  run("test " + data + " --blocks 2 --sequential --json " + blocked);
  const auto b = read_json(blocked);
  CHECK(b["result"]["k"] == 2);
  CHECK(b["result"]["block_sizes"] == nlohmann::json::array({4, 3}));
  CHECK(b["result"]["partition"] == "sequential");
}

TEST_CASE("negate and abs are pure preprocessing", "[cli]") {
  TempDir tmp;
  const std::vector<double> x{-2.0, -5.5, 3.0, -40.0, 1.2, -7.0, 2.0};
  std::vector<double> neg, neg_abs;
  for (double v : x) {
    neg.push_back(-v);
    neg_abs.push_back(std::abs(-v));
  }
  const auto raw = tmp.values("x.txt", x);
  const auto a = tmp.values("neg.txt", neg);
  const auto b = tmp.values("negabs.txt", neg_abs);

  auto t = [&](const std::string& args) {
    const auto out = tmp.path("t.json");
    run("test " + args + " --json " + out);
    return read_json(out)["result"]["t_stat"].get<double>();
  };
  CHECK(t(raw + " --negate") == t(a));
  CHECK(t(raw + " --negate --abs") == t(b));
  CHECK(t(raw + " --abs --negate") == t(b));  // order on the command line does not matter
  CHECK(t(raw + " --negate --shift 1") == t(a + " --shift 1"));
}

TEST_CASE("shift modes and small maxima", "[cli]") {
  TempDir tmp;
  const auto data = tmp.values("s.txt", {1.25, 1.3, 1.7, 2.9, 1.4});
  auto shifted = [&](const std::string& args) {
    const auto out = tmp.path("s.json");
    run("test " + data + " " + args + " --json " + out);
    return read_json(out);
  };
  CHECK(shifted("--shift min")["input"]["shift_value"] == 1.25);
  CHECK(shifted("--shift 0.5")["input"]["shift_value"] == 0.5);

  const auto small = run("test " + data + " --shift 2");
  CHECK(small.code == 1);
  CHECK_THAT(small.out, ContainsSubstring("shift"));
  CHECK(run("test " + data + " --shift 2 --smallmax short").code == 2);
  CHECK(run("test " + data + " --shift abc").code == 1);
}

TEST_CASE("bad input is reported with line numbers", "[cli]") {
  TempDir tmp;
  const auto bad = tmp.write("bad.txt", std::string("1\n2\nx\n4\nnan\n"));
  const auto r = run("test " + bad);
  CHECK(r.code == 1);
  CHECK_THAT(r.out, ContainsSubstring("3"));
  CHECK_THAT(r.out, ContainsSubstring("5"));
  CHECK(run("test " + tmp.path("missing.txt")).code == 1);
  CHECK(run("test").code == 1);
  CHECK(run("frobnicate").code == 1);
}

TEST_CASE("simulate", "[cli]") {
  const auto bad = run("simulate --dist zipf:2 --n 10");
  CHECK(bad.code == 1);
  CHECK_THAT(bad.out, ContainsSubstring("pareto"));
  CHECK_THAT(bad.out, ContainsSubstring("weibull"));

  const std::string args = "simulate --dist exp:1 --dist pareto:2 --n 20,200 --reps 500 --seed 7";
  const auto one = run(args + " --threads 1");
  const auto four = run(args + " --threads 4");
  CHECK(one.code == 0);
  CHECK(one.out == four.out);
  CHECK_THAT(one.out, Catch::Matchers::StartsWith("dist,n,k,alpha,short_rate,long_rate,stderr_s,stderr_l,errors,seed\n"));

  TempDir tmp;
  const auto plan = tmp.write("p.plan", std::string("dist=exp:1\ndist=logistic\nn=50,100\nreps=300\nseed=3\n"));
  const auto md = run("simulate --plan " + plan + " --format md");
  CHECK(md.code == 0);
  CHECK_THAT(md.out, ContainsSubstring("| n | E(1) S | E(1) L | Lgis S | Lgis L |"));
  const auto bad_plan = tmp.write("bad.plan", std::string("dist=exp:1\nn=50\nflavour=mint\n"));
  const auto bp = run("simulate --plan " + bad_plan);
  CHECK(bp.code == 1);
  CHECK_THAT(bp.out, ContainsSubstring("line 3"));
}

TEST_CASE("bryson commands", "[cli]") {
  TempDir tmp;
  const auto zero = tmp.values("zero.txt", {0.0, 0.4, 1.3, 2.2, 0.9, 3.1, 0.2, 1.1});
  const auto out = tmp.path("b.json");
  const auto r = run("bryson " + zero + " --reps 1000 --seed 5 --json " + out);
  CHECK((r.code == 0 || r.code == 2 || r.code == 3));
  const auto j = read_json(out);
  CHECK(j["result"]["t_star"].get<double>() > 0);
  CHECK(j["result"]["null_table"]["n"] == 8);
  CHECK(run("bryson " + tmp.values("neg.txt", {-3.0, 0.1, 0.2})).code == 1);

  const auto q = run("bryson-quantiles --dist gamma:2 --n 100 --reps 1000 --seed 1");
  CHECK(q.code == 0);
  CHECK_THAT(q.out, Catch::Matchers::StartsWith("dist,n,reps,seed,prob,quantile,stderr\n"));
  CHECK_THAT(q.out, ContainsSubstring("gamma:2,100,1000,1,0.975,"));
}
