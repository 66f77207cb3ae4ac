#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "f4kit/cli.hpp"
#include "f4kit/io.hpp"

using namespace f4kit;

namespace {

struct Outcome {
  int code;
  io::Json report;
  std::string text;
};

Outcome run(std::vector<std::string> args) {
  args.insert(args.begin(), "f4kit");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str().empty() ? io::Json() : io::parse_text(out.str()), out.str()};
}

std::string data(const std::string& name) { return std::string(F4KIT_DATA_DIR) + "/" + name; }

}  // namespace

TEST_CASE("classify") {
  auto r = run({"classify", "--json",
                R"({"f4":{"octonion":{"field":{"kind":"Q"},"params":["-1","-1","-1"]},"gamma":["1","-1","1"]}})"});
  CHECK(r.code == 0);
  CHECK(r.report["rank"] == 1);
  CHECK(r.report["certificate"] == "nilpotent_element");
  CHECK(run({"classify", "--in", data("graves_111.json")}).report["rank"] == 0);
  CHECK(run({"classify", "--in", data("split_2m35.json")}).report["rank"] == 4);
  CHECK(run({"classify", "--in", data("graves_g2.json")}).report["rank"] == 0);
  auto s = run({"classify", "--in", data("split_g2.json"), "--serial"});
  CHECK(s.report["rank"] == 2);
  CHECK(s.report["group"] == "G2");
}

TEST_CASE("witt and equiv") {
  auto w = run({"witt", "--json", R"({"field":{"kind":"Q"},"coeffs":["1","-1","1"]})"});
  CHECK(w.code == 0);
  CHECK(w.report["index"] == 1);
  CHECK(w.report["anisotropic"]["coeffs"] == io::parse_text(R"(["1"])"));
  auto w6 = run({"witt", "--in", data("form_q6.json")});
  CHECK(w6.code == 0);
  CHECK(w6.report["index"] == 2);

  auto e = run({"equiv", "--json",
                R"({"a":{"field":{"kind":"Q"},"coeffs":["1","1"]},"b":{"field":{"kind":"Q"},"coeffs":["2","2"]}})"});
  CHECK(e.code == 0);
  CHECK(e.report["equivalent"] == true);
  auto u = run({"equiv", "--in", data("equiv_qsqrt5.json")});
  CHECK(u.code == 3);
  CHECK(u.report["error"]["code"] == "UnsupportedCase");
}

TEST_CASE("kernel and excellence") {
  auto k = run({"kernel", "--in", data("graves_1m11.json")});
  CHECK(k.code == 0);
  CHECK(k.report["kind"] == "spin_form");
  CHECK(k.report["form"]["coeffs"].size() == 7);
  auto x = run({"excellence", "--ext", R"({"kind":"QSqrt","d":-1})", "--in", data("graves_1m11.json")});
  CHECK(x.code == 0);
  CHECK(x.report["rank_k"]["rank"] == 1);
  CHECK(x.report["rank_L"]["rank"] == 4);
  CHECK(x.report["verdict"] == "excellent_witnessed");
  auto g = run({"excellence", "--ext", R"({"kind":"QSqrt","d":2})", "--in", data("graves_g2.json")});
  CHECK(g.report["kernel_L"]["kind"] == "whole_group");
  auto bad_ext = run({"excellence", "--ext", R"({"kind":"Fp","p":7})", "--in", data("graves_1m11.json")});
  CHECK(bad_ext.code == 3);
  CHECK(bad_ext.report["error"]["code"] == "UnsupportedExtension");
  CHECK(run({"kernel", "--in", data("graves_g2.json")}).code == 2);
}

TEST_CASE("input errors") {
  CHECK(run({}).code == 2);
  CHECK(run({"classify"}).code == 2);
  CHECK(run({"classify", "--json", "{"}).code == 2);
  CHECK(run({"classify", "--in", "/nonexistent.json"}).code == 2);
  auto p = run({"witt", "--json", R"({"field":{"kind":"Fp","p":3},"coeffs":["1"]})"});
  CHECK(p.code == 2);
  CHECK(p.report["error"]["code"] == "InvalidField");
  auto z = run({"classify", "--json",
                R"({"f4":{"octonion":{"field":{"kind":"Q"},"params":["-1","-1","-1"]},"gamma":["1","0","1"]}})"});
  CHECK(z.code == 2);
  CHECK(z.report["error"]["code"] == "ZeroParameter");
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"verify", "--suite", "nope"}).code == 2);
}

TEST_CASE("output file and determinism") {
  const std::string path = "test_cli_report.json";
  auto a = run({"excellence", "--ext", R"({"kind":"QSqrt","d":2})", "--in", data("graves_1m11.json"), "--out", path});
  CHECK(a.code == 0);
  CHECK(a.text.empty());
  std::ifstream file(path);
  std::stringstream text;
  text << file.rdbuf();
  auto b = run({"excellence", "--ext", R"({"kind":"QSqrt","d":2})", "--in", data("graves_1m11.json")});
  CHECK(b.text == text.str());
  CHECK(io::to_json(io::excellence_from_json(b.report)).dump(2) + "\n" == b.text);
}

TEST_CASE("verify") {
  auto v = run({"verify", "--suite", "composition", "--seed", "7"});
  CHECK(v.code == 0);
  CHECK(v.report["passed"] == true);
  CHECK(v.report["seed"] == 7);
  auto again = run({"verify", "--suite", "composition", "--seed", "7"});
  CHECK(again.text == v.text);
}
