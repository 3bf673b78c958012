#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "freetower/cli.hpp"
#include "freetower/forking.hpp"
#include "freetower/presentations.hpp"
#include "freetower/stallings.hpp"
#include "freetower/towers.hpp"
#include "freetower/whitehead.hpp"

using namespace freetower;
namespace fs = std::filesystem;

namespace {

cli::RunResult invoke(std::vector<std::string> args) { return cli::run_main(args); }

cli::ParseOutcome parse(std::vector<std::string> args) { return cli::parse_args(args); }

bool has(const std::string& haystack, const std::string& needle) { return haystack.find(needle) != std::string::npos; }

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct TempDir {
  fs::path path;
  TempDir() : path(fs::temp_directory_path() / ("freetower-cli-" + std::to_string(std::rand()))) {
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("parse examples") {
  auto p = parse({"whitehead", "--words", "x2 x1 x2", "--rank", "2"});
  REQUIRE(p.command);
  CHECK(p.command->verb == "whitehead");
  CHECK(p.command->words == "x2 x1 x2");
  CHECK(p.command->rank == 2);

  p = parse({"fold", "--gens", "x2 x1 x2;x2", "--rank", "2", "--contains", "x1"});
  REQUIRE(p.command);
  CHECK(p.command->verb == "fold");
  CHECK(p.command->contains == "x1");

  p = parse({"tower", "build", "gn", "--n", "abc"});
  CHECK_FALSE(p.command);
  CHECK(p.exit_code == cli::exit_code::usage);

  p = parse({"tower", "build", "gn-tilde", "--n", "3", "--output", "json"});
  REQUIRE(p.command);
  CHECK(p.command->path == std::vector<std::string>{"build", "gn-tilde"});
  CHECK(p.command->output == cli::OutputFormat::json);
}

TEST_CASE("usage errors") {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {},
           {"frobnicate"},
           {"whitehead", "--words", "x1", "--bogus"},
           {"whitehead", "--words", "x1", "--output", "yaml"},
           {"whitehead", "--words", "x1", "fold"},
           {"fork-witness", "--word", "x1 x3", "--i", "0"},
           {"weight-witness", "--word", "x1 x3"},
           {"tower", "verify"},
       }) {
    CAPTURE(args.size());
    const auto r = invoke(args);
    CHECK(r.exit_code == cli::exit_code::usage);
    CHECK(r.output.empty());
    CHECK_FALSE(r.error.empty());
  }
}

TEST_CASE("whitehead on b_1") {
  const auto r = invoke({"whitehead", "--words", "x2 x1 x2", "--rank", "2"});
  CHECK(r.exit_code == cli::exit_code::ok);
  CHECK(has(r.output, "edges: 3"));
  CHECK(has(r.output, "cut vertices: x2 X2"));

  const auto j = invoke({"whitehead", "--words", "x2 x1 x2", "--rank", "2", "--output", "json"});
  const Json parsed = Json::parse(j.output);
  CHECK(parsed["cut_vertices"] == Json::array({"x2", "X2"}));
  CHECK(whitehead_graph_from_json(parsed["graph"]) ==
        build_whitehead_graph(std::vector<CyclicWord>{CyclicWord(parse_word("x2 x1 x2"))}, 2));

  const auto dot = invoke({"whitehead", "--words", "x2 x1 x2", "--rank", "2", "--output", "dot"});
  CHECK(dot.output == to_dot(build_whitehead_graph(std::vector<CyclicWord>{CyclicWord(parse_word("x2 x1 x2"))}, 2)));
}

TEST_CASE("cut-vertices verb") {
  const auto r = invoke({"cut-vertices", "--words", "x1 x3;x3 x2 x1 x2 x2 x3", "--rank", "3"});
  CHECK(r.exit_code == cli::exit_code::ok);
  CHECK(has(r.output, "cut vertices: none"));
}

TEST_CASE("fold membership") {
  const auto r = invoke({"fold", "--gens", "x2 x1 x2;x2", "--rank", "2", "--contains", "x1"});
  CHECK(r.exit_code == cli::exit_code::ok);
  const auto j = invoke({"fold", "--gens", "x2 x1 x2;x2", "--rank", "2", "--contains", "x1;x1 x1", "--output", "json"});
  const Json parsed = Json::parse(j.output);
  CHECK(parsed["generates_ambient"] == true);
  CHECK(parsed["membership"][0]["member"] == true);
  CHECK(parsed["membership"][1]["member"] == true);

  const auto no = invoke({"fold", "--gens", "x1 x1", "--rank", "1", "--contains", "x1", "--output", "json"});
  CHECK(Json::parse(no.output)["membership"][0]["member"] == false);

  const auto dot = invoke({"fold", "--gens", "x1 x1", "--rank", "1", "--output", "dot"});
  CHECK(dot.output == to_dot(core_graph(std::vector<Word>{parse_word("x1 x1")}, 1)));
}

TEST_CASE("primitive verb") {
  const auto yes = invoke({"primitive", "--word", "x2 x1 x2", "--rank", "2", "--output", "json"});
  CHECK(yes.exit_code == cli::exit_code::ok);
  CHECK(Json::parse(yes.output)["primitive"] == true);
  const auto no = invoke({"primitive", "--words", "x1 x2 X1 X2", "--rank", "2", "--output", "json"});
  CHECK(Json::parse(no.output)["primitive"] == false);
}

TEST_CASE("fork-witness verb") {
  const auto r = invoke({"fork-witness", "--word", "x1 x3", "--i", "2"});
  CHECK(r.exit_code == cli::exit_code::ok);
  CHECK(has(r.output, "FORKS"));

  const auto j = invoke({"fork-witness", "--word", "x1 x3", "--i", "2", "--output", "json"});
  const Json parsed = Json::parse(j.output);
  CHECK(to_json(fork_report_from_json(parsed)).dump() == parsed.dump());

  TempDir tmp;
  const fs::path dot = tmp.path / "fork.dot";
  CHECK(invoke({"fork-witness", "--word", "x1 x3", "--dot", dot.string()}).exit_code == cli::exit_code::ok);
  CHECK(slurp(dot) == to_dot(fork_witness(parse_word("x1 x3"), 2).graph));
}

TEST_CASE("weight-witness verb") {
  TempDir tmp;
  const fs::path out = tmp.path / "weight.json";
  const auto r = invoke({"weight-witness", "--word", "x1 x3", "--count", "3", "--json", out.string()});
  CHECK(r.exit_code == cli::exit_code::ok);
  const Json parsed = Json::parse(slurp(out));
  const WeightReport report = weight_report_from_json(parsed);
  CHECK(report.complete());
  CHECK(report.forks.size() == 3);
  CHECK(to_json(report).dump() == parsed.dump());
}

TEST_CASE("tower verbs") {
  const auto gn = invoke({"tower", "build", "gn", "--n", "3", "--emit", "json"});
  CHECK(gn.exit_code == cli::exit_code::ok);
  const Json parsed = Json::parse(gn.output);
  CHECK(presentation_from_json(parsed) == build_gn(3).presentation);

  const auto verify = invoke({"tower", "verify", "--n", "3"});
  CHECK(verify.exit_code == cli::exit_code::ok);
  CHECK(has(verify.output, "VERIFIED"));

  const auto dot = invoke({"tower", "build", "gn-tilde", "--n", "2", "--emit", "dot"});
  CHECK(dot.exit_code == cli::exit_code::ok);
  CHECK(has(dot.output, "digraph"));
}

TEST_CASE("malformed input maps to exit 3") {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"whitehead", "--words", "x9", "--rank", "2"},
           {"whitehead", "--words", "x1 y2"},
           {"fold", "--gens", "x1", "--rank", "1", "--contains", "x0"},
           {"fork-witness", "--word", "1"},
           {"fork-witness", "--word", "x1 x2", "--i", "1"},
       }) {
    const auto r = invoke(args);
    CHECK(r.exit_code == cli::exit_code::malformed);
    CHECK(has(r.error, "error:"));
  }
}

TEST_CASE("words from a file") {
  TempDir tmp;
  const fs::path words = tmp.path / "words.txt";
  std::ofstream(words) << "x2 x1 x2\n";
  const auto from_file = invoke({"whitehead", "--file", words.string(), "--rank", "2"});
  const auto inline_words = invoke({"whitehead", "--words", "x2 x1 x2", "--rank", "2"});
  CHECK(from_file.exit_code == cli::exit_code::ok);
  CHECK(from_file.output == inline_words.output);
  CHECK(invoke({"whitehead", "--file", words.string(), "--words", "x1"}).exit_code == cli::exit_code::usage);
  CHECK(invoke({"whitehead", "--file", (tmp.path / "missing").string()}).exit_code == cli::exit_code::usage);
}

TEST_CASE("property: output is byte-identical across runs") {
  const std::vector<std::vector<std::string>> commands = {
      {"whitehead", "--words", "x1 x3;x3 x2 x1 x2 x2 x3", "--rank", "3", "--output", "json"},
      {"fold", "--gens", "x1 x2;x2 x1", "--rank", "2", "--output", "dot"},
      {"tower", "build", "gn-tilde", "--n", "4", "--emit", "json"},
      {"fork-witness", "--word", "x2 x1 X3 x2", "--output", "json"},
      {"weight-witness", "--word", "x1 x2", "--count", "2", "--output", "json"},
  };
  for (const auto& args : commands) {
    const auto first = invoke(args);
    const auto second = invoke(args);
    CHECK(first.exit_code == second.exit_code);
    CHECK(first.output == second.output);
    CHECK_FALSE(first.output.empty());
  }
}
