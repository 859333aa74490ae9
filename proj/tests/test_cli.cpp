#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

#ifndef SKOPUS_CLI_PATH
#define SKOPUS_CLI_PATH "skopus"
#endif

std::string tmp_path(const std::string& name) {
  return std::string("/tmp/skopus_cli_test_") + name;
}

int run(const std::string& args) {
  const std::string cmd = std::string(SKOPUS_CLI_PATH) + " " + args + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

}  // namespace

TEST_CASE("cli: gen -> mine -> eval pipeline runs clean") {
  const std::string data = tmp_path("data.txt");
  const std::string truth = tmp_path("truth.txt");
  const std::string ranking = tmp_path("ranking.tsv");

  CHECK(run("gen --items 8 --sequences 300 --patterns 2 --seed 5 --out-data " + data +
            " --out-truth " + truth) == 0);
  CHECK(run("mine --input " + data + " --k 10 --max-length 4 --output " + ranking) == 0);
  CHECK(run("eval --truth " + truth + " --ranking " + ranking + " --k 10") == 0);

  const std::string tsv = slurp(ranking);
  CHECK(tsv.rfind("rank\tpattern\tcount\tsupport\texpected_support\tleverage\n", 0) == 0);
}

TEST_CASE("cli: deterministic bytes across runs") {
  const std::string data1 = tmp_path("d1.txt"), data2 = tmp_path("d2.txt");
  const std::string truth1 = tmp_path("t1.txt"), truth2 = tmp_path("t2.txt");
  const std::string rank1 = tmp_path("r1.tsv"), rank2 = tmp_path("r2.tsv");

  const std::string gen_args = "gen --items 6 --sequences 200 --patterns 1 --seed 9 ";
  CHECK(run(gen_args + "--out-data " + data1 + " --out-truth " + truth1) == 0);
  CHECK(run(gen_args + "--out-data " + data2 + " --out-truth " + truth2) == 0);
  CHECK(slurp(data1) == slurp(data2));
  CHECK(slurp(truth1) == slurp(truth2));

  const std::string mine_args = "mine --k 5 --max-length 4 --input " + data1;
  CHECK(run(mine_args + " --output " + rank1) == 0);
  CHECK(run(mine_args + " --output " + rank2) == 0);
  CHECK(slurp(rank1) == slurp(rank2));
}

TEST_CASE("cli: exit codes for bad input") {
  CHECK(run("mine --input /nonexistent/nope.txt") == 2);
  CHECK(run("mine") == 2);                 // missing required flag
  CHECK(run("mine --input x --measure bogus") == 2);

  const std::string empty = tmp_path("empty.txt");
  write_file(empty, "");
  CHECK(run("mine --input " + empty) == 3);

  const std::string bad_ranking = tmp_path("bad.tsv");
  write_file(bad_ranking, "not a ranking\n");
  const std::string truth = tmp_path("truth_min.txt");
  write_file(truth, "a b\t0.1\n");
  CHECK(run("eval --truth " + truth + " --ranking " + bad_ranking) == 2);
}
