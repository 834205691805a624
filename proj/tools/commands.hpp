#pragma once

#include "io.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "CLI11.hpp"

namespace arithdyn::cli {

using io::json;

struct Outcome {
    json result = json::object();
    /// Certified error bounds of the numeric outputs, by name.
    json error_bounds = json::object();
    json tolerances = json::object();
    /// CSV payload; written to --out, or to stdout when `csv_primary` and no --out.
    std::string csv;
    bool csv_primary = false;
};

struct Globals {
    std::uint64_t seed = 1;
    std::string manifest;
    std::string out;
};

struct Command {
    CLI::App* app = nullptr;
    std::string name;
    std::function<Outcome()> run;
};

std::vector<Command> register_commands(CLI::App& app, Globals& globals);

}  // namespace arithdyn::cli
