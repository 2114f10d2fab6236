#pragma once

#include "conekit/localization.hpp"
#include "conekit/series.hpp"

#include <json.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace conekit {

using Json = nlohmann::json;

// bad input from the user, as opposed to a failed mathematical check
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::vector<long> weights;
    std::vector<long> degrees;
    Window window{Rat(-5), Rat(2)};  // default Q-window
    int z_order = 8;
    int s_order = 3;
    int x_order = 0;  // 0 or 1: first-order deformations only
    Rat edge_cutoff{-3};
    std::string cache_dir;
    Json options = Json::object();  // command-specific keys, passed through

    GitData model() const;
    // canonical form, used for hashing
    Json to_json() const;
};

// documented maxima
constexpr int kMaxZOrder = 40;
constexpr int kMaxSOrder = 8;
constexpr long kMaxWindowDepth = 12;
constexpr long kMaxWindowHeight = 4;
constexpr long kMaxEdgeCutoff = 8;

RunConfig parse_config(const Json& j);
RunConfig load_config(const std::string& path);
// "a..b" with fractions
Window parse_window(const std::string& s);
void validate(const RunConfig& c);

Json rat_json(const Rat& r);
Rat json_rat(const Json& j);
// constants print losslessly: rationals as "p/q", cyclotomics as {"d", "coeffs"};
// everything else in factored string form
Json value_json(const RatFunc& f);
Json zrat_json(const ZRat& f);
Json series_json(const ISeries& f);
Json noneq_json(const QSeries<CohClass>& f);
Json class_json(const CohClass& c);
Json class_json(const EqClass& c);
Json report_json(const VerifyReport& r);

uint64_t fnv1a(const std::string& s);
std::string hex64(uint64_t v);

}  // namespace conekit
