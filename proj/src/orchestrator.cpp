#include "conekit/orchestrator.hpp"

#include "conekit/checks.hpp"
#include "conekit/delta.hpp"
#include "conekit/parallel.hpp"
#include "conekit/transforms.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>

namespace conekit {

namespace {

const char* kSchema = "conekit/1";

struct Failure {
    int code;
    std::string message;
};

int zero_based(const GitData& g, const std::optional<int>& k)
{
    if (*k < 1 || *k > g.N()) throw ConfigError("--k must be in [1, " + std::to_string(g.N()) + "]");
    return *k - 1;
}

std::vector<int> selected_points(const GitData& g, const Request& r)
{
    if (r.k) return {zero_based(g, r.k)};
    std::vector<int> all;
    for (int k = 0; k < g.N(); ++k) all.push_back(k);
    return all;
}

std::vector<std::pair<int, Rat>> selected_labels(const GitData& g, const Request& r)
{
    std::vector<std::pair<int, Rat>> out;
    for (const auto& [k, m] : g.fixed_labels()) {
        if (r.k && k != zero_based(g, r.k)) continue;
        if (r.sector && m != *r.sector) continue;
        out.emplace_back(k, m);
    }
    if (out.empty()) throw ConfigError("no admissible fixed label matches --k/--sector");
    return out;
}

Json laurent_json(const Laurent& l)
{
    Json c = Json::array();
    for (const RatFunc& x : l.c) c.push_back(value_json(x));
    return Json{{"lo", l.lo}, {"coeffs", c}};
}

Json label_json(int k, const Rat& m) { return Json{{"k", k + 1}, {"m", rat_str(m)}}; }

// optional single-coefficient perturbation of f, used to build failing fixtures
ISeries apply_perturbation(const ISeries& f, const GitData& g, const Json& opts)
{
    if (!opts.contains("perturb")) return f;
    const Json& p = opts["perturb"];
    if (!p.is_object() || !p.contains("e") || !p.contains("k") || !p.contains("m"))
        throw ConfigError("perturb needs e, k and m");
    Rat e = json_rat(p["e"]);
    int k = zero_based(g, p["k"].get<int>());
    Rat m = json_rat(p["m"]);
    if (!g.admissible(k, m)) throw ConfigError("perturb label is not admissible");
    RatFunc at;
    if (p.contains("pole_at")) {
        const Json& q = p["pole_at"];
        if (!q.contains("k_to") || !q.contains("beta")) throw ConfigError("perturb.pole_at needs k_to and beta");
        int kp = zero_based(g, q["k_to"].get<int>());
        if (kp == k) throw ConfigError("perturb.pole_at.k_to must differ from k");
        at = edge_pole(k, kp, json_rat(q["beta"]));
    }
    int order = p.contains("order") ? p["order"].get<int>() : 1;
    if (order < 1) throw ConfigError("perturb.order must be positive");
    Rat coeff = p.contains("coeff") ? json_rat(p["coeff"]) : Rat(1);
    ISeries r = f;
    ZVec v = r.get(e);
    v.add(k, m, ZRat::pole_term(at, order, RatFunc(coeff)));
    r.set(e, v);
    return r;
}

int option_int(const Json& opts, const char* key, int def, int lo, int hi)
{
    if (!opts.contains(key)) return def;
    if (!opts[key].is_number_integer()) throw ConfigError(std::string(key) + " must be an integer");
    int v = opts[key].get<int>();
    if (v < lo || v > hi) throw ConfigError(std::string(key) + " must be in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    return v;
}

Json cmd_check(const Request& r, const GitData& g, bool& pass)
{
    AssumptionReport a = check_assumptions(g);
    RankReport rk = state_rank_check(g);
    Json narrow = Json::array();
    for (const Rat& m : g.narrow_sectors()) narrow.push_back(rat_str(m));
    Json j{{"a1", a.a1}, {"a2", a.a2}, {"cy", a.cy}, {"gcd_ok", a.gcd_ok}, {"narrow", narrow}};
    if (a.a1_witness) j["a1_witness"] = {{"i", a.a1_witness->first + 1}, {"j", a.a1_witness->second + 1}};
    if (a.a2_witness) j["a2_witness"] = rat_str(*a.a2_witness);
    j["ranks"] = {{"minus", rk.minus_rank}, {"plus", rk.plus_rank}, {"minus_ok", rk.minus_ok}, {"equal", rk.equal}};
    std::vector<std::string> req{"a1", "a2", "cy"};
    if (r.config.options.contains("require")) req = r.config.options["require"].get<std::vector<std::string>>();
    for (const auto& name : req) {
        if (!j.contains(name) || !j[name].is_boolean()) throw ConfigError("unknown assumption '" + name + "' in require");
        pass = pass && j[name].get<bool>();
    }
    j["required"] = req;
    return j;
}

Json cmd_ifunction(const Request& r, const GitData& g)
{
    const Window& w = r.config.window;
    if (r.noneq) {
        if (r.k) throw ConfigError("--k has no meaning with --noneq");
        NoneqISeries ne = glsm_i_function_noneq(g, w);
        Json support = Json::array();
        for (const Rat& m : ne.non_narrow_support) support.push_back(rat_str(m));
        return Json{{"noneq", true}, {"series", noneq_json(ne.series)}, {"a2_warning", ne.a2_warning}, {"non_narrow_support", support}};
    }
    ISeries f = r.k ? local_i_function(g, zero_based(g, r.k), w) : glsm_i_function(g, w);
    return Json{{"noneq", false}, {"series", series_json(f)}};
}

Json cmd_verify(const Request& r, const GitData& g, bool& pass)
{
    static const std::vector<std::string> all{"c1", "c2", "c3", "lemma72", "vandermonde", "psi", "lemma65", "narrow"};
    // descriptive aliases for the two interface names
    std::string target = r.which == "ubar_poles" ? "lemma72" : r.which == "unit_derivative" ? "lemma65" : r.which;
    std::vector<std::string> which = target == "all" ? all : std::vector<std::string>{target};
    for (const auto& w : which)
        if (std::find(all.begin(), all.end(), w) == all.end()) throw ConfigError("unknown verify target '" + w + "'");
    const RunConfig& c = r.config;
    const Json& opts = c.options;
    int psi_n = option_int(opts, "psi_n_max", 8, 3, 10);
    int ud_degree = option_int(opts, "unit_derivative_degree", 3, 0, 5);
    ConeOptions cone;
    cone.z_margin = option_int(opts, "z_margin", 2, 0, 8);

    bool needs_f = false;
    for (const auto& w : which) needs_f = needs_f || w == "c1" || w == "c2" || w == "c3";
    ISeries f;
    if (needs_f) f = apply_perturbation(negate_z(glsm_i_function(g, c.window)), g, opts);

    // one slot per (target, item) so threads never share an output
    std::vector<std::function<VerifyReport()>> work;
    std::vector<std::string> owner;
    for (const auto& w : which) {
        if (w == "c1") work.push_back([&] { return verify_C1(f, g); });
        if (w == "c2") work.push_back([&] { return verify_C2(f, g, c.edge_cutoff); });
        if (w == "c3") work.push_back([&] { return verify_C3(f, g, cone); });
        if (w == "vandermonde") work.push_back([&] { return verify_vandermonde(g); });
        if (w == "psi") work.push_back([&, psi_n] { return verify_psi_integrals(g, psi_n); });
        if (w == "narrow") work.push_back([&] { return verify_narrow_support(g, c.window); });
        if (w == "lemma72")
            for (const auto& [k, m] : selected_labels(g, r)) work.push_back([&g, k = k, m = m] { return verify_ubar_poles(g, k, m); });
        if (w == "lemma65")
            for (int k : selected_points(g, r)) work.push_back([&, k] { return verify_unit_derivative(g, k, ud_degree, c.window); });
        while (owner.size() < work.size()) owner.push_back(w);
    }
    // symbols created on first use get their ids in creation order; create them here so
    // worker scheduling cannot change the printed monomial order
    deformation_var();
    for (int k = 0; k < g.N(); ++k)
        for (Theory th : {Theory::gw_point, Theory::spin_inf})
            for (long t = 0; t < g.degrees[static_cast<size_t>(k)]; ++t) insertion_var(th, k, t);
    std::vector<VerifyReport> reps(work.size());
    std::vector<std::string> errors(work.size());
    parallel_for(work.size(), r.jobs, [&](size_t i) {
        try {
            reps[i] = work[i]();
        } catch (const MathError& e) {
            errors[i] = e.what();
        }
    });
    Json out = Json::object();
    for (size_t i = 0; i < work.size(); ++i) {
        Json& slot = out[owner[i]];
        if (slot.is_null()) slot = Json{{"pass", true}, {"reports", Json::array()}};
        Json rep;
        if (!errors[i].empty()) {
            rep = Json{{"pass", false}, {"error", errors[i]}};
        } else {
            rep = report_json(reps[i]);
        }
        if (!rep["pass"].get<bool>()) slot["pass"] = false;
        slot["reports"].push_back(rep);
    }
    for (auto& [name, slot] : out.items()) pass = pass && slot["pass"].get<bool>();
    return Json{{"targets", out}, {"perturbed", opts.contains("perturb")}};
}

Json cmd_ubar(const Request& r, const GitData& g)
{
    Json cols = Json::array();
    auto labels = selected_labels(g, r);
    std::vector<Json> rows(labels.size());
    parallel_for(labels.size(), r.jobs, [&](size_t i) {
        const auto& [k, m] = labels[i];
        Json coeffs = Json::array();
        for (const auto& [l, v] : fourier_mukai_ubar(g, k, m)) coeffs.push_back({{"l", rat_str(l)}, {"value", value_json(v)}});
        rows[i] = {{"label", label_json(k, m)}, {"coefficients", coeffs}};
    });
    for (auto& x : rows) cols.push_back(std::move(x));
    return Json{{"D", g.D}, {"columns", cols}, {"column_count", g.fixed_labels().size()}};
}

Json cmd_qsd(const Request& r, const GitData& g, bool& pass)
{
    QsdOptions q;
    q.z_order = r.config.z_order;
    Json out = Json::array();
    for (const Rat& m : g.plus_sectors()) {
        if (r.sector && m != *r.sector) continue;
        for (int a = 0; a < g.rank_plus(m); ++a) {
            if (r.power && a != *r.power) continue;
            CohClass c = CohClass::basis(g, m, a);
            CohClass img = qsd_map(g, c, q);
            Json e{{"sector", rat_str(m)}, {"power", a}, {"image", class_json(img)}};
            // exp(-pi i D H / z) is only exact once z_order reaches the nilpotency order of H
            if (q.z_order >= g.rank_plus(m) - 1) {
                CohClass back = qsd_inverse(g, img, q);
                back += c.scaled(RatFunc(-1));
                e["inverse_roundtrip"] = back.is_zero();
                pass = pass && back.is_zero();
            } else {
                e["inverse_roundtrip"] = "skipped: z_order truncates the exponential";
            }
            out.push_back(e);
        }
    }
    if (out.empty()) throw ConfigError("no plus-side basis element matches --sector/--power");
    return Json{{"elements", out}, {"z_order", q.z_order}};
}

Json cmd_delta(const Request& r, const GitData& g)
{
    std::string sign = r.config.options.value("sign_convention", std::string("printed"));
    if (sign != "cone" && sign != "printed") throw ConfigError("sign_convention is 'cone' or 'printed'");
    bool formal = r.config.options.value("formal", false);
    Json out = Json::array();
    for (int k : selected_points(g, r)) {
        DeltaJet jet = formal ? delta_transform(g, k, r.config.s_order, r.config.z_order)
                              : delta_specialize_ck(g, k, r.config.z_order, sign == "cone" ? SignConvention::cone : SignConvention::printed);
        Json sectors = Json::array();
        for (const auto& [m, l] : jet.factor) {
            Json s{{"m", rat_str(m)}, {"factor", laurent_json(l)}};
            auto it = jet.constant.find(m);
            if (it != jet.constant.end()) s["constant"] = it->second.str();
            sectors.push_back(s);
        }
        out.push_back({{"k", k + 1}, {"sectors", sectors}});
    }
    return Json{{"points", out}, {"formal", formal}, {"sign_convention", formal ? "formal" : sign}, {"z_order", r.config.z_order}};
}

Json cmd_compose(const Request& r, const GitData& g, bool& pass)
{
    QsdOptions q;
    q.z_order = r.config.z_order;
    Json out = Json::array();
    bool explicit_broad = false;
    for (const Rat& m : g.sectors()) {
        if (r.sector && m != *r.sector) continue;
        for (int a = 0; a < g.rank_minus(m); ++a) {
            if (r.power && a != *r.power) continue;
            bool narrow = g.is_narrow(m);
            EqClass c = narrow ? narrow_basis_class(g, m, a) : broad_basis_class(g, m, a);
            ComposeResult res = compose_V(g, c, q);
            Json e{{"sector", rat_str(m)}, {"power", a}, {"narrow", res.narrow}, {"image", class_json(res.image)}, {"level", "Ubar"}};
            if (!narrow) {
                e["image_zero"] = res.image.is_zero();
                pass = pass && res.image.is_zero();
                if (r.sector) explicit_broad = true;
            }
            out.push_back(e);
        }
    }
    if (out.empty()) throw ConfigError("no basis element matches --sector/--power");
    Json j{{"elements", out}, {"z_order", q.z_order}};
    if (explicit_broad) {
        j["error"] = "broad sector " + rat_str(*r.sector) +
                     ": the class restricts into the kernel of i^*, so its non-equivariant image is 0 and no narrow image exists";
        pass = false;
    }
    return j;
}

Json body(const Request& r, bool& pass)
{
    GitData g = r.config.model();
    if (r.command == "check") return cmd_check(r, g, pass);
    if (r.command == "ifunction") return cmd_ifunction(r, g);
    if (r.command == "verify") return cmd_verify(r, g, pass);
    if (r.command == "transform") {
        if (r.which == "ubar") return cmd_ubar(r, g);
        if (r.which == "qsd") return cmd_qsd(r, g, pass);
        if (r.which == "delta") return cmd_delta(r, g);
        if (r.which == "compose_v") return cmd_compose(r, g, pass);
        throw ConfigError("unknown transform '" + r.which + "'");
    }
    throw ConfigError("unknown command '" + r.command + "'");
}

}  // namespace

Json request_key(const Request& r)
{
    Json j{{"command", r.command}, {"which", r.which}, {"config", r.config.to_json()}, {"noneq", r.noneq}};
    if (r.k) j["k"] = *r.k;
    if (r.sector) j["sector"] = rat_str(*r.sector);
    if (r.power) j["power"] = *r.power;
    return j;
}

std::string render(const Json& report) { return report.dump(2) + "\n"; }

Outcome execute(const Request& r)
{
    Outcome o;
    Json head{{"schema", kSchema}, {"command", r.command}};
    if (!r.which.empty()) head["which"] = r.which;
    try {
        validate(r.config);
        head["model"] = {{"weights", r.config.weights}, {"degrees", r.config.degrees}};
        head["q_window"] = {rat_str(r.config.window.lo), rat_str(r.config.window.hi)};
        bool pass = true;
        head["result"] = body(r, pass);
        head["pass"] = pass;
        o.exit_code = pass ? kExitPass : kExitMathFailure;
    } catch (const ConfigError& e) {
        head["pass"] = false;
        head["error"] = e.what();
        head["error_kind"] = "usage";
        o.exit_code = kExitUsage;
    } catch (const MathError& e) {
        head["pass"] = false;
        head["error"] = e.what();
        head["error_kind"] = "math";
        o.exit_code = kExitMathFailure;
    } catch (const Json::exception& e) {
        head["pass"] = false;
        head["error"] = std::string("bad option value: ") + e.what();
        head["error_kind"] = "usage";
        o.exit_code = kExitUsage;
    }
    o.report = std::move(head);
    return o;
}

Outcome run(const Request& r)
{
    std::string dir = r.config.cache_dir;
    if (const char* env = std::getenv("CONEKIT_CACHE")) dir = env;
    if (dir.empty()) return execute(r);
    namespace fs = std::filesystem;
    std::string key = request_key(r).dump();
    fs::path file = fs::path(dir) / (hex64(fnv1a(key)) + ".json");
    if (std::ifstream in{file}) {
        try {
            Json entry = Json::parse(in);
            // guard against hash collisions
            if (entry.at("key").get<std::string>() == key) return Outcome{entry.at("exit_code").get<int>(), entry.at("report"), true};
        } catch (const Json::exception&) {
            // unreadable entry, recompute and overwrite
        }
    }
    Outcome o = execute(r);
    if (o.exit_code == kExitUsage) return o;
    std::error_code ec;
    fs::create_directories(dir, ec);
    fs::path tmp = file;
    tmp += ".tmp";
    {
        std::ofstream out(tmp);
        out << Json{{"key", key}, {"exit_code", o.exit_code}, {"report", o.report}}.dump();
    }
    fs::rename(tmp, file, ec);
    return o;
}

}  // namespace conekit
