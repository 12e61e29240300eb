#include <doctest.h>

#include <filesystem>
#include <json.hpp>
#include <sstream>

#include "bdi/common.hpp"
#include "bdi/model_io.hpp"
#include "cli.hpp"
#include "support/oracles.hpp"

using bdi::testing::fixture;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  args.insert(args.begin(), "bdi");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = bdi::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

std::string scratch(const std::string& name) {
  fs::path dir = fs::path(BDI_TEST_TMP) / "cli";
  fs::create_directories(dir);
  return (dir / name).string();
}

const char* kNoChance = R"({
  "root": "d",
  "nodes": [{"id": "d", "kind": "decision"}, {"id": "x", "kind": "terminal"}],
  "event_arcs": [{"from": "d", "to": "x", "event": "go"}],
  "payoffs": {"x": 1}
})";

}  // namespace

TEST_SUITE("cli validate") {
  TEST_CASE("the fixture tree and model are valid") {
    auto r = run({"validate", fixture("phil.dtree")});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "valid"));
    CHECK(run({"validate", fixture("phil.model")}).code == 0);
  }

  TEST_CASE("a corrupted probability") {
    std::string text = bdi::read_file(fixture("phil.dtree"));
    text.replace(text.find("\"0.58\""), 6, "\"0.48\"");
    auto path = scratch("corrupt.dtree");
    bdi::write_file(path, text);
    auto r = run({"validate", path});
    CHECK(r.code == 1);
    CHECK(contains(r.out, "ProbSumViolation"));
  }

  TEST_CASE("a missing file") {
    CHECK(run({"validate", "/nonexistent/phil.dtree"}).code == 2);
  }

  TEST_CASE("malformed JSON") {
    auto path = scratch("broken.dtree");
    bdi::write_file(path, "{\"root\": ");
    CHECK(run({"validate", path}).code == 2);
  }
}

TEST_SUITE("cli transform") {
  TEST_CASE("running example lists worlds and weights") {
    auto out = scratch("phil.model");
    auto r = run({"transform", fixture("phil.dtree"), "--extras", fixture("phil_extras.json"),
                  "-o", out, "--dot", scratch("dot")});
    CHECK(r.code == 0);
    for (const char* text : {"g_yes_win", "b_no_loss", "0.336", "0.084", "0.116", "0.464"})
      CHECK(contains(r.out, text));
    CHECK(bdi::read_file(out) == bdi::read_file(fixture("phil.model")));
    std::size_t dots = 0;
    for (const auto& entry : fs::directory_iterator(scratch("dot")))
      if (entry.path().extension() == ".dot") ++dots;
    CHECK(dots == 8);
    auto model = bdi::load_model(out);
    CHECK(model.world("b_yes_win").successor("t0", "Ret") != nullptr);
  }

  TEST_CASE("a tree without chance nodes has one world of weight one") {
    auto path = scratch("plain.dtree");
    bdi::write_file(path, kNoChance);
    auto r = run({"--json", "transform", path});
    CHECK(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    REQUIRE(j["worlds"].size() == 1);
    CHECK(j["worlds"][0]["prob"] == 1.0);
  }

  TEST_CASE("extras at an unknown point") {
    auto path = scratch("bad_extras.json");
    bdi::write_file(path, R"([{"at": "t_none", "event": "Ret", "point": "t_ret"}])");
    CHECK(run({"transform", fixture("phil.dtree"), "--extras", path}).code == 2);
  }
}

TEST_SUITE("cli deliberate") {
  TEST_CASE("maximin") {
    auto r = run({"deliberate", fixture("phil.dtree"), "--procedure", "maximin"});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "value 200\n"));
    CHECK(contains(r.out, "NoPoll;Rep"));
    CHECK(contains(r.out, "Poll;Rep"));
    CHECK(contains(r.out, "INTEND[maximin](INEVITABLE(<> done(Rep)))"));
  }

  TEST_CASE("maxexpval with the oracle") {
    auto r = run({"deliberate", fixture("phil.dtree"), "--procedure", "maxexpval", "--oracle"});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "value 225.2\n"));
    CHECK(contains(r.out, "Poll;yes?;Sen"));
    CHECK(contains(r.out, "Poll;no?;Rep"));
    CHECK(contains(r.out, "oracle agrees"));
  }

  TEST_CASE("emitting the deliberated model") {
    auto out = scratch("deliberated.model");
    auto r = run({"deliberate", fixture("phil.dtree"), "-p", "maxexpval", "--extras",
                  fixture("phil_extras.json"), "--emit-model", out});
    CHECK(r.code == 0);
    auto m = bdi::load_model(out);
    CHECK(m.intention_by.count(bdi::Procedure::MaxExpVal) == 1);
    auto c = run({"check", out, "INTEND[maxexpval](INEVITABLE(<> (done(Poll) & yes -> <> done(Sen))))"});
    CHECK(c.code == 0);
  }

  TEST_CASE("machine output is stable") {
    auto a = run({"deliberate", fixture("phil.dtree"), "-p", "maxexpval", "--oracle", "--json"});
    auto b = run({"--json", "deliberate", fixture("phil.dtree"), "-p", "maxexpval", "--oracle"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    auto j = nlohmann::json::parse(a.out);
    CHECK(j["value"].get<double>() == doctest::Approx(225.2).epsilon(1e-12));
    CHECK(j["oracle"]["agrees"] == true);
  }

  TEST_CASE("bad procedure name") {
    CHECK(run({"deliberate", fixture("phil.dtree"), "-p", "minimax"}).code == 2);
  }
}

TEST_SUITE("cli check") {
  TEST_CASE("true, with a measure") {
    auto r = run({"check", fixture("phil.model"), "BEL(OPTIONAL(<> done(Sen)))"});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "true"));
    auto p = run({"check", fixture("phil.model"), "PROB(OPTIONAL(<> yes)) = 0.42"});
    CHECK(p.code == 0);
    CHECK(contains(p.out, "= 0.42"));
    auto pay = run({"--json", "check", fixture("phil.model"), "PAYOFF(<> (done(Sen) & win)) = 300"});
    CHECK(pay.code == 0);
    auto j = nlohmann::json::parse(pay.out);
    CHECK(j["payoffs"][0]["min"] == 300.0);
    CHECK(j["payoffs"][0]["max"] == 300.0);
  }

  TEST_CASE("false") {
    auto r = run({"check", fixture("phil.model"), "GOAL(OPTIONAL(<> done(Ret)))"});
    CHECK(r.code == 1);
    CHECK(contains(r.out, "false"));
  }

  TEST_CASE("at another situation") {
    CHECK(run({"check", fixture("phil.model"), "yes", "--at", "g_yes_win@t_yes"}).code == 0);
    CHECK(run({"check", fixture("phil.model"), "yes", "--at", "g_yes_win@t_no"}).code == 2);
    CHECK(run({"check", fixture("phil.model"), "yes", "--at", "nonsense"}).code == 2);
  }

  TEST_CASE("input errors") {
    CHECK(run({"check", fixture("phil.model"), "BEL(("}).code == 2);
    CHECK(run({"check", fixture("phil.model"), "done(Sen)"}).code == 2);
    CHECK(run({"check", "/nonexistent.model", "true"}).code == 2);
    CHECK(run({"check", fixture("phil.model"), "PROB(p | q) + PROB(r) >= 1"}).code == 2);
  }
}

TEST_SUITE("cli misc") {
  TEST_CASE("verify") {
    auto r = run({"verify", "--trials", "10", "--seed", "7", "--class", "maximin-restricted"});
    CHECK(r.code == 0);
    auto j = run({"verify", "--trials", "10", "--json"});
    CHECK(j.code == 0);
    CHECK(nlohmann::json::parse(j.out)["passed"] == true);
    CHECK(run({"verify", "--class", "minimax"}).code == 2);
  }

  TEST_CASE("dot") {
    auto r = run({"dot", fixture("phil.dtree")});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("digraph", 0) == 0);
    auto w = run({"dot", fixture("phil.model"), "--world", "g_yes_win"});
    CHECK(w.code == 0);
    CHECK(contains(w.out, "Poll"));
    CHECK(run({"dot", fixture("phil.model"), "--world", "nope"}).code == 2);
  }

  TEST_CASE("usage errors") {
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"validate"}).code == 2);
    CHECK(run({"--help"}).code == 0);
  }
}
