// Copyright 2026 The dysfst Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"

#include "dysfst/cli.h"
#include "dysfst/emission.h"
#include "dysfst/similarity.h"
#include "dysfst/synthetic.h"
#include "json.hpp"

namespace dysfst {
namespace {

namespace fs = std::filesystem;

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

RunResult Run(std::vector<std::string> args) {
  args.insert(args.begin(), "dysfst");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = RunCli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string Slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string Golden(const std::string& name) {
  return Slurp(fs::path(DYSFST_TEST_GOLDEN_DIR) / name);
}

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() /
            ("dysfst_cli_" + std::to_string(::getpid()) + "_" +
             std::to_string(counter_++));
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string operator/(const std::string& name) const {
    return (path_ / name).string();
  }

 private:
  static inline int counter_ = 0;
  fs::path path_;
};

std::string WriteDemo(const TempDir& dir) {
  SyntheticSpec s;
  s.reference = {"SH", "IY", "Z", "N", "AA", "T", "HH", "IY", "R"};
  s.plan = {PlanEdit::Repeat(3, 2)};
  const std::string path = dir / "demo.dwem";
  WriteEmissionFile(Synthesize(s, Lexicon::Default()).emission, path);
  return path;
}

TEST_CASE("cli: help, version and usage errors") {
  RunResult help = Run({"--help"});
  CHECK(help.code == 0);
  for (const char* cmd : {"decode", "eval", "simulate", "sweep-beta",
                          "noise-test", "export-similarity"}) {
    CHECK(help.out.find(cmd) != std::string::npos);
  }
  RunResult dhelp = Run({"decode", "--help"});
  CHECK(dhelp.code == 0);
  for (const char* flag : {"--beta", "--text", "--phonemes", "--manifest",
                           "--strict-final", "--free-insertion-arcs",
                           "--lexicon", "--dictionary", "--jobs", "--output"}) {
    CHECK(dhelp.out.find(flag) != std::string::npos);
  }
  CHECK(Run({"decode", "--no-such-flag"}).code == 1);
  CHECK(Run({}).code == 1);
  RunResult v = Run({"--version"});
  CHECK(v.code == 0);
  CHECK(v.out.find("lexicon sha256 ") != std::string::npos);
  CHECK(v.out.find("similarity default-articulatory sha256 ") != std::string::npos);
}

TEST_CASE("cli: decode the running example") {
  TempDir dir;
  const std::string demo = WriteDemo(dir);
  RunResult r = Run({"decode", demo, "--text", "She's not here", "-o", dir / "r.json"});
  REQUIRE(r.code == 0);
  const std::string report = Slurp(dir / "r.json");
  CHECK(report == Golden("decode_demo.json"));
  auto j = nlohmann::json::parse(report);
  int reps = 0;
  for (const auto& a : j["dysfluency"]) reps += a["type"] == "repetition";
  CHECK(reps == 2);
  CHECK(j["summary"]["repetition"] == 2);
  CHECK(j["segments"][5]["transition"] == "5<trans>4:N");

  RunResult again = Run({"decode", demo, "--text", "She's not here"});
  CHECK(again.out == report);
}

TEST_CASE("cli: decode errors and exit codes") {
  TempDir dir;
  const std::string demo = WriteDemo(dir);
  RunResult missing = Run({"decode", dir / "absent.dwem", "--phonemes", "N AA T",
                           "-o", dir / "out.json"});
  CHECK(missing.code == 1);
  CHECK(missing.err.find("absent.dwem") != std::string::npos);
  CHECK_FALSE(fs::exists(dir / "out.json"));

  CHECK(Run({"decode", demo, "--text", "she's nott here"}).code == 1);
  CHECK(Run({"decode", demo, "--phonemes", "N XX"}).code == 1);
  CHECK(Run({"decode", demo}).code == 1);
  CHECK(Run({"decode", demo, "--beta", "-1", "--phonemes", "N"}).code == 1);

  RunResult underflow = Run({"decode", demo, "--text", "She's not here",
                             "--beta", "400"});
  CHECK(underflow.code == 0);
  auto j = nlohmann::json::parse(underflow.out);
  CHECK(j["warnings"] == nlohmann::json::array({"beta-underflow"}));
  for (const auto& a : j["dysfluency"]) CHECK(a["type"] == "normal");

  // A silent emission cannot read the reference without early accept.
  const std::string empty = dir / "empty.dwem";
  WriteEmissionFile(EmissionMatrix(0, 40, {}), empty);
  RunResult none = Run({"decode", empty, "--phonemes", "N AA T",
                        "--strict-final", "-o", dir / "none.json"});
  CHECK(none.code == 2);
  CHECK_FALSE(fs::exists(dir / "none.json"));
  CHECK(Run({"decode", empty, "--phonemes", "N AA T"}).code == 0);

  // Unnormalized input is rejected on ingest.
  const std::string bad = dir / "bad.dwem";
  WriteEmissionFile(EmissionMatrix(1, 40, std::vector<float>(40, 0.0f)), bad);
  RunResult unnorm = Run({"decode", bad, "--phonemes", "N"});
  CHECK(unnorm.code == 1);
  CHECK(unnorm.err.find("frame 0") != std::string::npos);
  CHECK(Run({"decode", bad, "--phonemes", "N", "--allow-unnormalized"}).code == 0);
}

TEST_CASE("cli: environment configuration and flag precedence") {
  TempDir dir;
  const std::string demo = WriteDemo(dir);
  ::setenv("DWFST_BETA", "400", 1);
  RunResult env = Run({"decode", demo, "--text", "She's not here"});
  RunResult flag = Run({"decode", demo, "--text", "She's not here", "--beta", "2.5"});
  ::unsetenv("DWFST_BETA");
  CHECK(nlohmann::json::parse(env.out)["beta"] == 400.0);
  CHECK(nlohmann::json::parse(flag.out)["beta"] == 2.5);
}

TEST_CASE("cli: simulate, batch decode and eval") {
  TempDir dir;
  const std::string corpus = dir / "corpus";
  REQUIRE(Run({"simulate", "--kind", "del", "--size", "3", "--seed", "3", "-o", corpus})
              .code == 0);
  const std::string manifest = corpus + "/manifest.jsonl";
  CHECK(Slurp(manifest) == Golden("simulate_del_manifest.jsonl"));

  REQUIRE(Run({"decode", "--manifest", manifest, "-o", dir / "hyp.jsonl"}).code == 0);
  RunResult ev = Run({"eval", dir / "hyp.jsonl", manifest, "--csv", dir / "m.csv"});
  REQUIRE(ev.code == 0);
  CHECK(ev.out == Golden("eval_del.json"));
  CHECK(Slurp(dir / "m.csv").find("per,0.15\n") != std::string::npos);

  // JSON emissions decode to the same reports as binary ones.
  const std::string jcorpus = dir / "jcorpus";
  REQUIRE(Run({"simulate", "--kind", "del", "--size", "3", "--seed", "3",
               "--format", "json", "-o", jcorpus})
              .code == 0);
  RunResult jhyp = Run({"decode", "--manifest", jcorpus + "/manifest.jsonl"});
  CHECK(jhyp.out == Slurp(dir / "hyp.jsonl"));

  // Gold against itself: every present type scores 1, error rates 0.
  const std::string rep = dir / "rep";
  REQUIRE(Run({"simulate", "--kind", "rep", "--size", "10", "--seed", "9", "-o", rep})
              .code == 0);
  REQUIRE(Run({"decode", "--manifest", rep + "/manifest.jsonl", "--jobs", "3",
               "-o", dir / "rep.jsonl"})
              .code == 0);
  auto m = nlohmann::json::parse(
      Run({"eval", dir / "rep.jsonl", rep + "/manifest.jsonl"}).out);
  CHECK(m["detection"]["repetition"] == 1.0);
  CHECK(m["wper"] == 0.0);
  CHECK(m["per"] == 0.0);

  // Mismatched ids are listed.
  std::ofstream(dir / "one.jsonl") << Slurp(dir / "hyp.jsonl").substr(
      0, Slurp(dir / "hyp.jsonl").find('\n') + 1);
  RunResult mis = Run({"eval", dir / "one.jsonl", manifest});
  CHECK(mis.code == 1);
  CHECK(mis.err.find("gold:del-0001") != std::string::npos);
  CHECK(mis.err.find("gold:del-0002") != std::string::npos);

  std::ofstream(dir / "empty.jsonl").close();
  CHECK(Run({"eval", dir / "empty.jsonl", dir / "empty.jsonl"}).code == 1);
}

TEST_CASE("cli: experiment commands match pinned outputs") {
  TempDir dir;
  RunResult sweep = Run({"sweep-beta", "--kind", "rep", "--size", "20", "--seed",
                         "3", "--betas", "1,2,4,400"});
  REQUIRE(sweep.code == 0);
  CHECK(sweep.out == Golden("sweep_beta_rep.csv"));
  RunResult noise = Run({"noise-test", "--kind", "rep", "--size", "20", "--seed", "3"});
  REQUIRE(noise.code == 0);
  CHECK(noise.out == Golden("noise_test_rep.csv"));

  // A manifest corpus gives the same sweep as the generated one.
  const std::string corpus = dir / "c";
  REQUIRE(Run({"simulate", "--kind", "rep", "--size", "20", "--seed", "3", "-o", corpus})
              .code == 0);
  RunResult from_manifest = Run({"sweep-beta", "--manifest", corpus + "/manifest.jsonl",
                                 "--betas", "1,2,4,400", "--jobs", "2"});
  CHECK(from_manifest.out == sweep.out);

  CHECK(Run({"sweep-beta", "--betas", "1,x"}).code == 1);
  CHECK(Run({"sweep-beta", "--kind", "stutter"}).code == 1);
  CHECK(Run({"noise-test", "--sigmas", "-1"}).code == 1);
}

TEST_CASE("cli: similarity export matches the shipped matrix") {
  TempDir dir;
  REQUIRE(Run({"export-similarity", "-o", dir / "s.csv"}).code == 0);
  CHECK(Slurp(dir / "s.csv") ==
        Slurp(std::string(DYSFST_DATA_DIR) + "/similarity-articulatory-v1.csv"));
  REQUIRE(Run({"export-similarity", "--similarity", dir / "s.csv", "-o",
               dir / "t.csv"})
              .code == 0);
  CHECK(Slurp(dir / "t.csv") == Slurp(dir / "s.csv"));
}

}  // namespace
}  // namespace dysfst
