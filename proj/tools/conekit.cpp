#include "conekit/orchestrator.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <thread>

using namespace conekit;

namespace {

struct Common {
    std::string config;
    std::string window;
    std::optional<int> z_order;
    unsigned jobs = 0;
    std::string json_out;
    std::optional<int> k;
    std::string sector;
    std::optional<int> power;
};

void add_common(CLI::App* sub, Common& c, bool selectors)
{
    sub->add_option("--config", c.config, "run configuration (JSON)")->required();
    sub->add_option("--window", c.window, "Q-exponent window a..b, overrides q_window");
    sub->add_option("--z-order", c.z_order, "overrides z_order");
    sub->add_option("--jobs", c.jobs, "worker cap (default: hardware threads)");
    sub->add_option("--json", c.json_out, "also write the report to this file");
    if (selectors) {
        sub->add_option("--k", c.k, "fixed point, 1-based");
        sub->add_option("--sector", c.sector, "sector m as p/q");
        sub->add_option("--power", c.power, "basis power a of H");
    }
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"conekit: exact checks for weighted complete intersections"};
    app.require_subcommand(1);
    Common c;
    Request req;

    auto* check = app.add_subcommand("check", "assumptions, narrow sectors and state-space ranks");
    add_common(check, c, false);

    auto* ifn = app.add_subcommand("ifunction", "dump the I-function over the window");
    add_common(ifn, c, true);
    ifn->add_flag("--noneq", req.noneq, "non-equivariant limit on the minus side");

    auto* verify = app.add_subcommand("verify", "run a verifier");
    add_common(verify, c, true);
    verify->add_option("which", req.which, "c1|c2|c3|lemma72 (ubar_poles)|vandermonde|psi|lemma65 (unit_derivative)|narrow|all")
        ->required()
        ->check(CLI::IsMember({"c1", "c2", "c3", "lemma72", "vandermonde", "psi", "lemma65", "narrow", "all", "ubar_poles", "unit_derivative"}));

    auto* transform = app.add_subcommand("transform", "apply a transform to basis elements");
    add_common(transform, c, true);
    transform->add_option("which", req.which, "ubar|qsd|delta|compose_v")
        ->required()
        ->check(CLI::IsMember({"ubar", "qsd", "delta", "compose_v"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    }

    for (auto* sub : {check, ifn, verify, transform})
        if (sub->parsed()) req.command = sub->get_name();

    try {
        req.config = load_config(c.config);
        if (!c.window.empty()) req.config.window = parse_window(c.window);
        if (c.z_order) req.config.z_order = *c.z_order;
        if (!c.sector.empty()) req.sector = json_rat(Json(c.sector));
        req.k = c.k;
        req.power = c.power;
        validate(req.config);
    } catch (const ConfigError& e) {
        std::cerr << "conekit: " << e.what() << "\n";
        return kExitUsage;
    }
    req.jobs = c.jobs ? c.jobs : std::max(1u, std::thread::hardware_concurrency());

    Outcome o = run(req);
    std::string text = render(o.report);
    std::cout << text;
    if (!c.json_out.empty()) {
        std::ofstream out(c.json_out);
        if (!out) {
            std::cerr << "conekit: cannot write " << c.json_out << "\n";
            return kExitUsage;
        }
        out << text;
    }
    if (o.report.contains("error")) std::cerr << "conekit: " << o.report["error"].get<std::string>() << "\n";
    return o.exit_code;
}
