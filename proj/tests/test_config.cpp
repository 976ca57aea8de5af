#include <doctest.h>

#include "thinshell/config.hpp"
#include "thinshell/errors.hpp"
#include "thinshell/registry.hpp"

using namespace thinshell;

TEST_SUITE("config") {
  TEST_CASE("defaults") {
    const RunConfig c = parse_config("{}");
    CHECK(c == RunConfig{});
    CHECK(c.surface == "sphere");
    CHECK(c.eps == std::vector<double>{0.2, 0.1, 0.05, 0.025});
    CHECK(c.selected().empty());
  }

  TEST_CASE("full document") {
    const RunConfig c = parse_config(R"({
      "surface": {"name": "perturbed_sphere", "params": {"a1": 0.05}},
      "shell": {"g0": "const:-0.5", "g1": "linear_z:0.5,0.1", "gamma1": 0.2, "radial_nodes": 10},
      "eps": [0.1, 0.05, 0.025],
      "checks": ["con_lp_p2", "det_identity"],
      "families": {"eximp_wmp": "killing_sphere"},
      "out": "x", "formats": ["json", "plot"], "seed": 4, "refine": 2, "members": 4
    })");
    CHECK(c.surface == "perturbed_sphere");
    CHECK(c.surface_params.at("a1") == 0.05);
    CHECK(*c.shell.g1 == "linear_z:0.5,0.1");
    CHECK(*c.shell.radial_nodes == 10);
    CHECK(c.formats.count("plot") == 1);
    CHECK(c.members == 4);
    // registry order
    CHECK(c.selected() == std::vector<std::string>{"det_identity", "con_lp_p2"});

    ShellConfig sc;
    c.shell.edit()(sc);
    CHECK(sc.g0.str() == ThicknessFn::parse("const:-0.5").str());
    CHECK(sc.gamma1 == 0.2);
    CHECK(sc.radial_nodes == 10);

    CHECK(parse_config(to_json(c)) == c);
  }

  TEST_CASE("all checks") {
    const RunConfig c = parse_config(R"({"checks": "all", "surface": "torus"})");
    CHECK(c.all_checks);
    CHECK(c.selected() == check_names());
    CHECK(parse_config(to_json(c)) == c);
  }

  TEST_CASE("rejections") {
    for (const char* bad : {
             R"({"checks": ["no_such_check"]})",
             R"({"surface": "cube"})",
             R"({"surface": {"name": "sphere", "params": {"a1": 1}}})",
             R"({"unknown": 1})",
             R"({"shell": {"g2": "const:1"}})",
             R"({"shell": {"g0": "cubic:1"}})",
             R"({"eps": [0.1, -0.05, 0.025]})",
             R"({"eps": []})",
             R"({"formats": ["xml"]})",
             R"({"refine": 0})",
             R"({"members": 0})",
             R"({"families": {"con_lp_p2": "unconstrained_smooth"}})",
             R"({"families": {"con_lp_p2": "nope"}})",
             R"({"seed": "x"})",
             R"([1, 2])",
             R"({"eps": )",
         }) {
      CAPTURE(bad);
      CHECK_THROWS_AS(parse_config(bad), ConfigError);
    }
    CHECK_THROWS_AS(load_config("/nonexistent/run.json"), ConfigError);
  }

  TEST_CASE("list helpers") {
    CHECK(split_list("a, b,,c") == std::vector<std::string>{"a", "b", "c"});
    CHECK(parse_eps_list("0.2,0.1,0.05") == std::vector<double>{0.2, 0.1, 0.05});
    CHECK_THROWS_AS(parse_eps_list("0.2,x"), ConfigError);
  }
}
