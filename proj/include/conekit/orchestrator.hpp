#pragma once

#include "conekit/io.hpp"

#include <optional>

namespace conekit {

enum ExitCode { kExitPass = 0, kExitMathFailure = 1, kExitUsage = 2 };

struct Request {
    std::string command;  // check, ifunction, verify, transform
    std::string which;    // sub-selector for verify and transform
    RunConfig config;
    std::optional<int> k;  // 1-based
    std::optional<Rat> sector;
    std::optional<int> power;
    bool noneq = false;
    unsigned jobs = 1;
};

struct Outcome {
    int exit_code = kExitPass;
    Json report;
    bool from_cache = false;
};

// the part of a request that determines its result; jobs and cache location are excluded
Json request_key(const Request& r);

// computes the report without touching any cache; ConfigError maps to exit 2
Outcome execute(const Request& r);

// execute() behind the on-disk cache: CONEKIT_CACHE, else config.cache_dir, else none
Outcome run(const Request& r);

std::string render(const Json& report);

}  // namespace conekit
