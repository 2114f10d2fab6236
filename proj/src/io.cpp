#include "conekit/io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

namespace conekit {

namespace {

long json_long(const Json& j, const char* key)
{
    if (!j.is_number_integer()) throw ConfigError(std::string("config key '") + key + "' must be an integer");
    return j.get<long>();
}

std::vector<long> json_longs(const Json& j, const char* key)
{
    if (!j.is_array()) throw ConfigError(std::string("config key '") + key + "' must be an integer array");
    std::vector<long> v;
    for (const auto& x : j) v.push_back(json_long(x, key));
    return v;
}

}  // namespace

Rat json_rat(const Json& j)
{
    try {
        if (j.is_number_integer()) return Rat(j.get<long>());
        if (j.is_string()) return parse_rat(j.get<std::string>());
    } catch (const std::exception& e) {
        throw ConfigError(std::string("bad fraction: ") + e.what());
    }
    throw ConfigError("fractions are given as integers or \"p/q\" strings");
}

Window parse_window(const std::string& s)
{
    auto pos = s.find("..");
    if (pos == std::string::npos) throw ConfigError("window must look like a..b");
    try {
        return Window{parse_rat(s.substr(0, pos)), parse_rat(s.substr(pos + 2))};
    } catch (const std::exception& e) {
        throw ConfigError("bad window '" + s + "': " + e.what());
    }
}

GitData RunConfig::model() const
{
    try {
        return GitData::make(weights, degrees);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("invalid model: ") + e.what());
    }
}

Json RunConfig::to_json() const
{
    Json j;
    j["weights"] = weights;
    j["degrees"] = degrees;
    j["q_window"] = {rat_str(window.lo), rat_str(window.hi)};
    j["z_order"] = z_order;
    j["s_order"] = s_order;
    j["x_order"] = x_order;
    j["edge_cutoff"] = rat_str(edge_cutoff);
    j["options"] = options;
    return j;
}

void validate(const RunConfig& c)
{
    if (c.window.lo > c.window.hi) throw ConfigError("empty window: lo > hi");
    if (c.window.lo < -kMaxWindowDepth || c.window.hi > kMaxWindowHeight)
        throw ConfigError("window must lie in [-" + std::to_string(kMaxWindowDepth) + ", " + std::to_string(kMaxWindowHeight) + "]");
    if (c.z_order < 0 || c.z_order > kMaxZOrder) throw ConfigError("z_order must be in [0, " + std::to_string(kMaxZOrder) + "]");
    if (c.s_order < 0 || c.s_order > kMaxSOrder) throw ConfigError("s_order must be in [0, " + std::to_string(kMaxSOrder) + "]");
    if (c.x_order < 0 || c.x_order > 1) throw ConfigError("x_order must be 0 or 1 (first-order deformations only)");
    if (c.edge_cutoff >= 0 || c.edge_cutoff < -kMaxEdgeCutoff)
        throw ConfigError("edge_cutoff must be in [-" + std::to_string(kMaxEdgeCutoff) + ", 0)");
    c.model();
}

RunConfig parse_config(const Json& j)
{
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    RunConfig c;
    static const std::set<std::string> known{"weights", "degrees", "q_window", "z_order", "s_order", "x_order", "edge_cutoff", "cache_dir"};
    if (!j.contains("weights") || !j.contains("degrees")) throw ConfigError("config needs 'weights' and 'degrees'");
    c.weights = json_longs(j["weights"], "weights");
    c.degrees = json_longs(j["degrees"], "degrees");
    if (j.contains("q_window")) {
        const Json& w = j["q_window"];
        if (w.is_string())
            c.window = parse_window(w.get<std::string>());
        else if (w.is_array() && w.size() == 2)
            c.window = Window{json_rat(w[0]), json_rat(w[1])};
        else
            throw ConfigError("q_window is [lo, hi] or \"lo..hi\"");
    }
    if (j.contains("z_order")) c.z_order = static_cast<int>(json_long(j["z_order"], "z_order"));
    if (j.contains("s_order")) c.s_order = static_cast<int>(json_long(j["s_order"], "s_order"));
    if (j.contains("x_order")) c.x_order = static_cast<int>(json_long(j["x_order"], "x_order"));
    if (j.contains("edge_cutoff")) c.edge_cutoff = json_rat(j["edge_cutoff"]);
    if (j.contains("cache_dir")) {
        if (!j["cache_dir"].is_string()) throw ConfigError("cache_dir must be a string");
        c.cache_dir = j["cache_dir"].get<std::string>();
    }
    for (const auto& [k, v] : j.items())
        if (!known.count(k)) c.options[k] = v;
    validate(c);
    return c;
}

RunConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file " + path);
    Json j;
    try {
        in >> j;
    } catch (const Json::parse_error& e) {
        throw ConfigError("config " + path + " is not valid JSON: " + e.what());
    }
    return parse_config(j);
}

Json rat_json(const Rat& r) { return rat_str(r); }

Json value_json(const RatFunc& f)
{
    if (!f.is_constant()) return f.str();
    Cyc c = f.constant();
    if (c.is_rational()) return rat_str(c.rational());
    Json coeffs = Json::array();
    for (const Rat& x : c.coeffs()) coeffs.push_back(rat_str(x));
    return Json{{"d", c.order()}, {"coeffs", coeffs}};
}

Json zrat_json(const ZRat& f) { return f.str(); }

Json series_json(const ISeries& f)
{
    Json terms = Json::array();
    for (const auto& [e, v] : f.terms()) {
        Json entries = Json::array();
        for (const auto& [lab, c] : v.entries) entries.push_back({{"k", lab.k + 1}, {"m", rat_str(lab.m)}, {"value", zrat_json(c)}});
        if (!entries.empty()) terms.push_back({{"e", rat_str(e)}, {"entries", entries}});
    }
    return Json{{"window", {rat_str(f.lo()), rat_str(f.hi())}}, {"terms", terms}};
}

Json class_json(const CohClass& c)
{
    Json out = Json::array();
    for (const auto& [m, v] : c.entries) {
        Json powers = Json::array();
        for (const auto& x : v) powers.push_back(value_json(x));
        out.push_back({{"m", rat_str(m)}, {"H_powers", powers}});
    }
    return out;
}

Json class_json(const EqClass& c)
{
    Json out = Json::array();
    for (const auto& [lab, v] : c.entries) out.push_back({{"k", lab.k + 1}, {"m", rat_str(lab.m)}, {"value", value_json(v)}});
    return out;
}

Json noneq_json(const QSeries<CohClass>& f)
{
    Json terms = Json::array();
    for (const auto& [e, c] : f.terms()) terms.push_back({{"e", rat_str(e)}, {"class", class_json(c)}});
    return Json{{"window", {rat_str(f.lo()), rat_str(f.hi())}}, {"terms", terms}};
}

Json report_json(const VerifyReport& r)
{
    Json recs = Json::array();
    for (const auto& x : r.records) recs.push_back({{"tuple", x.tuple}, {"pass", x.pass}, {"lhs", x.lhs}, {"rhs", x.rhs}});
    Json j{{"condition", r.condition}, {"pass", r.pass}, {"records", recs}};
    if (!r.pass) j["first_failure"] = r.first_failure();
    return j;
}

uint64_t fnv1a(const std::string& s)
{
    uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string hex64(uint64_t v)
{
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << v;
    return os.str();
}

}  // namespace conekit
