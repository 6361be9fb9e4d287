#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "toric/tables.hpp"

namespace {

using nlohmann::json;

const std::string cli = TORIC_CLI_PATH;

std::string scratch_dir() {
  static std::string dir = [] {
    std::string d = "/tmp/toric_cli_test_" + std::to_string(::getpid());
    REQUIRE(::system(("mkdir -p " + d).c_str()) == 0);
    return d;
  }();
  return dir;
}

struct RunResult {
  int code = -1;
  std::string output;  // stdout + stderr
};

RunResult run_cli(const std::string& args) {
  static int counter = 0;
  const std::string cap = scratch_dir() + "/cap" + std::to_string(counter++);
  const std::string cmd = cli + " " + args + " >" + cap + " 2>&1";
  const int st = ::system(cmd.c_str());
  RunResult r;
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  std::ifstream f(cap);
  std::stringstream ss;
  ss << f.rdbuf();
  r.output = ss.str();
  return r;
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  REQUIRE(f.good());
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

int count_lines(const std::string& s) {
  int n = 0;
  for (char c : s)
    if (c == '\n') ++n;
  return n;
}

}  // namespace

TEST_CASE("cli catalog row counts") {
  const auto six = run_cli("catalog --k 6 --format csv");
  CHECK(six.code == 0);
  CHECK(count_lines(six.output) == 15);  // header + 14 rows

  const auto five = run_cli("catalog --k 5 --format csv");
  CHECK(five.code == 0);
  CHECK(count_lines(five.output) == 8);  // header + 7 rows

  const auto four = run_cli("catalog --k 4 --format csv");
  CHECK(four.code == 0);
  CHECK(count_lines(four.output) == 5);

  const auto seven = run_cli("catalog --k 7");
  CHECK(seven.code != 0);
}

TEST_CASE("cli enumerator json document") {
  const std::string out = scratch_dir() + "/p61_f7.json";
  const auto r = run_cli("enumerator --class P6_1 --q 7 --format json --out " +
                         out);
  REQUIRE(r.code == 0);
  const json doc = json::parse(slurp(out));

  // the shipped schema's required fields and shapes
  const json schema =
      json::parse(slurp(toric::tables_dir() + "/enumerator.schema.json"));
  for (const auto& req : schema.at("required"))
    CHECK(doc.contains(req.get<std::string>()));
  CHECK(doc.at("q").is_number_integer());
  CHECK(doc.at("q") >= schema.at("properties").at("q").at("minimum"));
  CHECK(doc.at("q") <= schema.at("properties").at("q").at("maximum"));
  CHECK(doc.at("modulus").is_array());
  for (const auto& pair : doc.at("weights")) {
    REQUIRE(pair.is_array());
    REQUIRE(pair.size() == 2);
    CHECK(pair[0].is_number_integer());
    CHECK(pair[1].is_number_integer());
  }

  const json expected = json::array({
      json::array({0, 1}),
      json::array({6, 36}),
      json::array({12, 540}),
      json::array({18, 4320}),
      json::array({24, 19440}),
      json::array({30, 46656}),
      json::array({36, 46656}),
  });
  CHECK(doc.at("weights") == expected);
  CHECK(doc.at("class") == "P6_1");
  CHECK(doc.at("q") == 7);
}

TEST_CASE("cli enumerator from a polygon literal") {
  const std::string out = scratch_dir() + "/tri_f5.json";
  const auto r = run_cli(
      "enumerator --polygon [[0,0],[1,0],[0,1]] --q 5 --format json --out " +
      out);
  REQUIRE(r.code == 0);
  const json doc = json::parse(slurp(out));
  CHECK(doc.at("class").is_null());
  CHECK(doc.at("polygon") ==
        json::parse(std::string("[[0,0],[1,0],[0,1]]")));
  std::uint64_t total = 0;
  for (const auto& pair : doc.at("weights"))
    total += pair[1].get<std::uint64_t>();
  CHECK(total == 125);  // 5^3 messages
}

TEST_CASE("cli enumerator exit codes") {
  CHECK(run_cli("enumerator --class P9_9 --q 7").code == 3);
  CHECK(run_cli("enumerator --class P6_2 --q 5").code == 2);
  CHECK(run_cli("enumerator --polygon [[0,0],[40,0],[0,1]] --q 9").code == 2);
  // both sources at once violates the one-source invariant
  CHECK(run_cli("enumerator --class P6_1 --polygon [[0,0],[1,0]] --q 7")
            .code != 0);
  CHECK(run_cli("enumerator --q 7").code != 0);
}

TEST_CASE("cli classify") {
  const auto shear = run_cli("classify --polygon [[0,0],[4,0],[2,1]]");
  CHECK(shear.code == 0);
  CHECK(shear.output.rfind("P6_2\n", 0) == 0);

  const std::string out = scratch_dir() + "/square.json";
  const auto square = run_cli(
      "classify --polygon [[0,0],[1,0],[1,1],[0,1]] --format json --out " +
      out);
  CHECK(square.code == 0);
  const json doc = json::parse(slurp(out));
  CHECK(doc.at("class") == "P4_3");
  // the witness really maps the input onto the representative
  toric::UnimodularAffineMap T;
  T.m11 = doc.at("witness").at("matrix")[0][0].get<std::int64_t>();
  T.m12 = doc.at("witness").at("matrix")[0][1].get<std::int64_t>();
  T.m21 = doc.at("witness").at("matrix")[1][0].get<std::int64_t>();
  T.m22 = doc.at("witness").at("matrix")[1][1].get<std::int64_t>();
  T.t = {doc.at("witness").at("translation")[0].get<std::int64_t>(),
         doc.at("witness").at("translation")[1].get<std::int64_t>()};
  const auto P = toric::convex_hull({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  CHECK(toric::apply_map(T, P) ==
        toric::catalog_entry("P4_3").representative);

  CHECK(run_cli("classify --polygon [[0,0],[9,0]]").code == 4);
  CHECK(run_cli("classify --polygon [[0,0],[7,0],[0,7]]").code == 4);
  CHECK(run_cli("classify --polygon notjson").code != 0);
}

TEST_CASE("cli extend") {
  const std::string out = scratch_dir() + "/ext.json";
  const auto r = run_cli("extend --class P3_2 --format json --out " + out);
  REQUIRE(r.code == 0);
  const json rows = json::parse(slurp(out));
  REQUIRE(rows.is_array());
  CHECK(rows.size() >= 3);
  for (const auto& row : rows) {
    CHECK(row.at("parent") == "P3_2");
    CHECK_FALSE(row.at("child").is_null());
    const std::string child = row.at("child").get<std::string>();
    CHECK(child.rfind("P4_", 0) == 0);
  }

  CHECK(run_cli("extend --class P6_1").code == 1);   // k = 6 has no children
  CHECK(run_cli("extend --class P7_1").code == 3);   // unknown id
}

TEST_CASE("cli distance") {
  const auto r = run_cli("distance --class P6_4 --q 7 --format csv");
  CHECK(r.code == 0);
  CHECK(r.output == "n,k,distance\n36,6,18\n");

  const auto rect = run_cli("distance --polygon [[0,0],[2,0],[2,1],[0,1]] "
                            "--q 8 --format csv");
  CHECK(rect.code == 0);
  // rectangle bound: (q-1-k)(q-1-l) = (7-2)(7-1)
  CHECK(rect.output == "n,k,distance\n49,6,30\n");
}

TEST_CASE("cli verify") {
  const auto a1 = run_cli("verify --table A1 --q 8");
  CHECK(a1.code == 0);
  CHECK(a1.output.find("PASS 14/14 checks") != std::string::npos);
  CHECK(a1.output.find("NOTE") != std::string::npos);  // F8 misprint noted

  const auto t1 = run_cli("verify --table T1");
  CHECK(t1.code == 0);
  CHECK(t1.output.find("PASS 6/6 checks") != std::string::npos);
  CHECK(t1.output.find("NOTE transcription defect") != std::string::npos);

  const auto props = run_cli("verify --table props --q 13");
  CHECK(props.code == 0);
  CHECK(props.output.find("FAIL") == std::string::npos);

  CHECK(run_cli("verify --table A9").code != 0);

  // a tampered table must be reported with a nonzero exit
  const std::string dir = scratch_dir() + "/tampered";
  REQUIRE(::system(("mkdir -p " + dir + " && cp " + toric::tables_dir() +
                    "/A1.json " + dir + "/")
                       .c_str()) == 0);
  json doc = json::parse(slurp(dir + "/A1.json"));
  doc["entries"][0]["terms"][1][1] =
      doc["entries"][0]["terms"][1][1].get<std::uint64_t>() + 1;
  {
    std::ofstream f(dir + "/A1.json", std::ios::trunc);
    f << doc.dump(1) << "\n";
  }
  const char* saved = std::getenv("TORIC_TABLES");
  ::setenv("TORIC_TABLES", dir.c_str(), 1);
  const auto tampered = run_cli("verify --table A1 --q 7");
  if (saved)
    ::setenv("TORIC_TABLES", saved, 1);
  else
    ::unsetenv("TORIC_TABLES");
  CHECK(tampered.code == 1);
  CHECK(tampered.output.find("FAIL") != std::string::npos);
}

TEST_CASE("cli byte-identical reruns") {
  const std::string f1 = scratch_dir() + "/rep1.json";
  const std::string f2 = scratch_dir() + "/rep2.json";
  const std::string args = "enumerator --class P6_7 --q 9 --workers 3 "
                           "--format json --out ";
  REQUIRE(run_cli(args + f1).code == 0);
  REQUIRE(run_cli(args + f2).code == 0);
  CHECK(slurp(f1) == slurp(f2));

  const std::string c1 = scratch_dir() + "/cat1.csv";
  const std::string c2 = scratch_dir() + "/cat2.csv";
  REQUIRE(run_cli("catalog --k 5 --format csv --out " + c1).code == 0);
  REQUIRE(run_cli("catalog --k 5 --format csv --out " + c2).code == 0);
  CHECK(slurp(c1) == slurp(c2));
}

TEST_CASE("cli checkpoint and resume") {
  const std::string ck = scratch_dir() + "/resume.ck";
  const std::string direct = scratch_dir() + "/direct.json";
  const std::string resumed = scratch_dir() + "/resumed.json";
  std::remove(ck.c_str());

  REQUIRE(run_cli("enumerator --class P6_9 --q 9 --format json --out " +
                  direct)
              .code == 0);
  // aggressive checkpointing leaves a mid-run snapshot behind
  REQUIRE(run_cli("enumerator --class P6_9 --q 9 --resume " + ck +
                  " --checkpoint-interval 0 --format json --out " +
                  scratch_dir() + "/first.json")
              .code == 0);
  REQUIRE(slurp(ck).find("config_hash") != std::string::npos);
  // resuming from it completes deterministically
  REQUIRE(run_cli("enumerator --class P6_9 --q 9 --resume " + ck +
                  " --checkpoint-interval 0 --format json --out " + resumed)
              .code == 0);
  CHECK(slurp(direct) == slurp(resumed));

  // a checkpoint from a different run configuration is rejected
  const auto wrong = run_cli("enumerator --class P6_10 --q 9 --resume " + ck);
  CHECK(wrong.code == 1);
}
