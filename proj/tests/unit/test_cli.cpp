#include <filesystem>
#include <fstream>
#include <sstream>

#include "cheeger_gap/cli.hpp"
#include "doctest.h"

using cheeger_gap::cli::run;

namespace {

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
};

Outcome invoke(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  Outcome o;
  o.code = run(args, out, err);
  o.out = out.str();
  o.err = err.str();
  return o;
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> v;
  std::istringstream is(text);
  for (std::string l; std::getline(is, l);) v.push_back(l);
  return v;
}

std::vector<std::string> fields(const std::string& row) {
  std::vector<std::string> v;
  std::istringstream is(row);
  for (std::string f; std::getline(is, f, ',');) v.push_back(f);
  return v;
}

double num(const std::string& row, std::size_t column) { return std::stod(fields(row).at(column)); }

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "cheeger_gap_cli_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("gap reports 2B for the transverse field") {
  const auto o = invoke({"gap", "--model", "transverse", "--n", "3", "--B", "1"});
  REQUIRE(o.code == 0);
  const auto l = lines(o.out);
  REQUIRE(l.size() == 2);
  CHECK(l[0].rfind("model,size,coupling,N,lambda0,lambda1,gap,", 0) == 0);
  CHECK(l[1].rfind("transverse,3,1,8,", 0) == 0);
  CHECK(num(l[1], 4) == doctest::Approx(-3.0));
  CHECK(num(l[1], 6) == doctest::Approx(2.0));
}

TEST_CASE("exit codes") {
  CHECK(invoke({"--help"}).code == 0);
  CHECK(invoke({}).code == 2);
  CHECK(invoke({"gap", "--model", "torus"}).code == 2);
  CHECK(invoke({"gap", "--model", "ring", "--N", "2"}).code == 2);
  CHECK(invoke({"gap", "--model", "file", "--path", scratch("missing.stoq").string()}).code == 2);
  {
    std::ofstream bad(scratch("bad.stoq"));
    bad << "stoq 1\n2 1\n0 1 0.5\n";
  }
  const auto o = invoke({"gap", "--model", "file", "--path", scratch("bad.stoq").string()});
  CHECK(o.code == 2);
  CHECK_FALSE(o.err.empty());
  CHECK(invoke({"gap", "--model", "transverse", "--n", "21"}).code == 2);
  CHECK(invoke({"gap", "--model", "ising", "--n", "6", "--B", "1", "--solver", "iterative", "--max-iterations",
                "2"})
            .code == 3);
}

TEST_CASE("bounds emits both domains for the hypercube") {
  const auto o = invoke({"bounds", "--model", "hypercube", "--n", "3", "--B", "1"});
  REQUIRE(o.code == 0);
  const auto l = lines(o.out);
  REQUIRE(l.size() == 2);
  CHECK(l[0].find("subsets-of-S:cut-only:bound") != std::string::npos);
  CHECK(l[0].find("all-feasible:cut-only:bound") != std::string::npos);
  CHECK(num(l[1], 5) == doctest::Approx(2.0));
  CHECK(num(l[1], 6) == doctest::Approx(1.0));
  CHECK(fields(l[1])[7] == "exact");
}

TEST_CASE("sweep output is deterministic and thread invariant") {
  const std::vector<std::string> base{"sweep", "--model", "ising", "--n", "6", "--param", "B",
                                      "--from", "0.5", "--to", "2", "--step", "0.5"};
  auto one = base;
  one.insert(one.end(), {"--threads", "1"});
  auto four = base;
  four.insert(four.end(), {"--threads", "4"});
  const auto a = invoke(one);
  const auto b = invoke(four);
  const auto c = invoke(one);
  REQUIRE(a.code == 0);
  CHECK(lines(a.out).size() == 5);
  CHECK(a.out == b.out);
  CHECK(a.out == c.out);
}

TEST_CASE("size sweep over the ring") {
  const auto o = invoke({"sweep", "--model", "ring", "--t", "1", "--param", "N", "--from", "4", "--to", "8",
                         "--step", "2"});
  REQUIRE(o.code == 0);
  const auto l = lines(o.out);
  REQUIRE(l.size() == 4);
  CHECK(l[1].rfind("N,4,4,", 0) == 0);
  CHECK(num(l[1], 5) == doctest::Approx(1.0));
  CHECK(l[3].rfind("N,8,8,", 0) == 0);
  CHECK(num(l[3], 5) == doctest::Approx(0.5));
}

TEST_CASE("config file values yield to command-line flags") {
  const auto cfg = scratch("ring.ini");
  {
    std::ofstream os(cfg);
    os << "model=ring\nN=4\nt=2\n";
  }
  const auto from_file = invoke({"gap", "--config", cfg.string()});
  REQUIRE(from_file.code == 0);
  CHECK(lines(from_file.out)[1].rfind("ring,4,2,4,", 0) == 0);
  CHECK(num(lines(from_file.out)[1], 4) == doctest::Approx(-4.0));
  const auto overridden = invoke({"gap", "--config", cfg.string(), "--t", "3"});
  REQUIRE(overridden.code == 0);
  CHECK(lines(overridden.out)[1].rfind("ring,4,3,4,", 0) == 0);
  CHECK(num(lines(overridden.out)[1], 4) == doctest::Approx(-6.0));
}

TEST_CASE("output file option") {
  const auto path = scratch("gap.csv");
  std::filesystem::remove(path);
  const auto o = invoke({"gap", "--model", "ring", "--N", "6", "--out", path.string()});
  REQUIRE(o.code == 0);
  CHECK(o.out.empty());
  std::ifstream is(path);
  std::stringstream ss;
  ss << is.rdbuf();
  CHECK(ss.str().rfind("model,", 0) == 0);
}

TEST_CASE("Laplacian suite on a larger Ising chain") {
  const auto o = invoke({"verify", "--only", "laplacian", "--model", "ising", "--n", "8", "--B", "1"});
  CHECK(o.code == 0);
  CHECK(lines(o.out).back().find("summary,all,") == 0);
}

TEST_CASE("verify flags an inflated Phi~") {
  const auto o = invoke({"verify", "--only", "theorem1", "--model", "transverse", "--n", "2", "--B", "1",
                         "--inject-inflated"});
  CHECK(o.code == 1);
  CHECK(o.err.find("theorem1") != std::string::npos);
  const auto clean = invoke({"verify", "--only", "theorem1", "--model", "transverse", "--n", "2", "--B", "1"});
  CHECK(clean.code == 0);
}

TEST_CASE("export commands") {
  const auto g = invoke({"export-graph", "--model", "ring", "--N", "4"});
  REQUIRE(g.code == 0);
  CHECK(g.out.rfind("graph 1\n4 4\n", 0) == 0);
  const auto n = invoke({"export-network", "--model", "transverse", "--n", "2", "--B", "1"});
  REQUIRE(n.code == 0);
  CHECK(n.out.rfind("network 1\n", 0) == 0);
}
