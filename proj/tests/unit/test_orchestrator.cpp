#include "conekit/orchestrator.hpp"

#include <doctest.h>

#include <filesystem>

using namespace conekit;

namespace {

Request make(const std::string& cmd, const std::string& which, Json cfg)
{
    Request r;
    r.command = cmd;
    r.which = which;
    r.config = parse_config(cfg);
    return r;
}

Json quintic_cfg() { return Json{{"weights", {1, 1, 1, 1, 1}}, {"degrees", {5}}, {"q_window", {"-2", "0"}}, {"z_order", 4}}; }
Json t22_cfg() { return Json{{"weights", {1, 1, 1, 1}}, {"degrees", {2, 2}}, {"q_window", "-3..0"}, {"edge_cutoff", "-1"}, {"z_order", 4}}; }

}  // namespace

TEST_CASE("config: parsing and documented bounds")
{
    RunConfig c = parse_config(t22_cfg());
    CHECK(c.window.lo == Rat(-3));
    CHECK(c.edge_cutoff == Rat(-1));
    CHECK(parse_window("-7/2..1/2").lo == rat(-7, 2));
    CHECK_THROWS_AS(parse_window("-1,0"), ConfigError);
    auto bad = [](Json j) { CHECK_THROWS_AS(parse_config(j), ConfigError); };
    Json j = t22_cfg();
    j["z_order"] = 41;
    bad(j);
    j = t22_cfg();
    j["x_order"] = 2;
    bad(j);
    j = t22_cfg();
    j["q_window"] = {"0", "-1"};
    bad(j);
    j = t22_cfg();
    j["edge_cutoff"] = "0";
    bad(j);
    j = t22_cfg();
    j["degrees"] = {3};
    j["weights"] = Json::array();
    bad(j);
    bad(Json{{"weights", {1, 1}}});
    // unknown keys are command options
    j = t22_cfg();
    j["psi_n_max"] = 6;
    CHECK(parse_config(j).options.at("psi_n_max") == 6);
}

TEST_CASE("config: JSON forms are lossless")
{
    CHECK(rat_json(rat(-3, 6)) == "-1/2");
    CHECK(json_rat(Json("4/6")) == rat(2, 3));
    Json c = value_json(RatFunc(Cyc(4, {Rat(0), Rat(1)})));
    CHECK(c.at("d") == 4);
    CHECK(c.at("coeffs").size() >= 2);
    CHECK(value_json(RatFunc(rat(5, 3))) == "5/3");
    CHECK(fnv1a("") == 14695981039346656037ULL);
    CHECK(hex64(fnv1a("a")) == "af63dc4c8601ec8c");
}

TEST_CASE("orchestrator: check exit codes")
{
    CHECK(execute(make("check", "", quintic_cfg())).exit_code == kExitPass);
    Outcome o = execute(make("check", "", t22_cfg()));
    CHECK(o.report["result"]["narrow"] == Json::array({"1/2"}));
    Outcome bad = execute(make("check", "", Json{{"weights", {2, 3}}, {"degrees", {5}}}));
    CHECK(bad.exit_code == kExitMathFailure);
    CHECK(bad.report["result"]["a1"] == false);
    CHECK(bad.report["schema"] == "conekit/1");
}

TEST_CASE("orchestrator: verify and the perturbed fixture")
{
    CHECK(execute(make("verify", "c2", t22_cfg())).exit_code == kExitPass);
    CHECK(execute(make("verify", "c1", quintic_cfg())).exit_code == kExitPass);
    Json p = t22_cfg();
    p["perturb"] = {{"e", "-5/2"}, {"k", 1}, {"m", "1/2"}, {"pole_at", {{"k_to", 2}, {"beta", "-1"}}}};
    Outcome o = execute(make("verify", "c2", p));
    CHECK(o.exit_code == kExitMathFailure);
    std::string where = o.report["result"]["targets"]["c2"]["reports"][0]["first_failure"];
    CHECK(where.find("e=-5/2") != std::string::npos);
    Request unknown = make("verify", "c7", t22_cfg());
    CHECK(execute(unknown).exit_code == kExitUsage);
    // a cutoff deeper than the window leaves tuples with nothing to compare
    Json deep = t22_cfg();
    deep["edge_cutoff"] = "-4";
    CHECK(execute(make("verify", "c2", deep)).exit_code == kExitMathFailure);
}

TEST_CASE("orchestrator: transforms")
{
    Outcome u = execute(make("transform", "ubar", t22_cfg()));
    CHECK(u.report["result"]["column_count"] == 4);
    Request broad = make("transform", "compose_v", t22_cfg());
    broad.sector = Rat(0);
    broad.power = 0;
    Outcome b = execute(broad);
    CHECK(b.exit_code == kExitMathFailure);
    CHECK(b.report["result"]["error"].get<std::string>().find("kernel of i^*") != std::string::npos);
    Request narrow = broad;
    narrow.sector = rat(1, 2);
    CHECK(execute(narrow).exit_code == kExitPass);
    CHECK(execute(make("transform", "compose_v", quintic_cfg())).exit_code == kExitPass);
    CHECK(execute(make("transform", "qsd", quintic_cfg())).exit_code == kExitPass);
    Request k9 = make("transform", "delta", quintic_cfg());
    k9.k = 9;
    CHECK(execute(k9).exit_code == kExitUsage);
}

TEST_CASE("orchestrator: cached and fresh runs give identical reports")
{
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "conekit_unit_cache";
    fs::remove_all(dir);
    Json cfg = t22_cfg();
    cfg["cache_dir"] = dir.string();
    Request r = make("verify", "all", cfg);
    r.jobs = 4;
    Outcome fresh = run(r);
    REQUIRE_FALSE(fresh.from_cache);
    Outcome cached = run(r);
    CHECK(cached.from_cache);
    CHECK(fnv1a(render(fresh.report)) == fnv1a(render(cached.report)));
    Request serial = r;
    serial.jobs = 1;
    CHECK(render(execute(serial).report) == render(fresh.report));
    // a different command never hits the entry
    Request other = make("verify", "c1", cfg);
    CHECK_FALSE(run(other).from_cache);
    fs::remove_all(dir);
}
