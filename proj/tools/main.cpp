#include "commands.hpp"

#include "arithdyn/error.hpp"
#include "arithdyn/version.hpp"

#include <gmp.h>

#include <algorithm>
#include <chrono>
#include <iostream>

using namespace arithdyn;
using cli::json;

namespace {

struct Capture {
    json result;
    std::string csv;
};

json error_json(std::string_view kind, const std::string& message) {
    return {{"error", {{"kind", std::string(kind)}, {"message", message}}}};
}

json versions() {
    return {{"arithdyn", kVersion},
            {"gmp", gmp_version},
            {"boost", kBoostVersion},
            {"cli11", CLI11_VERSION},
            {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." + std::to_string(NLOHMANN_JSON_VERSION_MINOR) +
                                  "." + std::to_string(NLOHMANN_JSON_VERSION_PATCH)},
            {"compiler", __VERSION__}};
}

void collect_arguments(CLI::App* app, json& out) {
    for (const CLI::Option* opt : app->get_options()) {
        const std::string name = opt->get_name();
        if (name == "--help" || name == "--manifest" || name == "--out") continue;
        const auto& res = opt->results();
        if (!res.empty()) {
            std::string joined;
            for (std::size_t i = 0; i < res.size(); ++i) joined += (i ? "," : "") + res[i];
            out[name] = joined;
        } else if (!opt->get_default_str().empty()) {
            out[name] = opt->get_default_str();
        }
    }
    // option groups are nameless sub-apps
    for (CLI::App* group : app->get_subcommands([](CLI::App* s) { return s->get_name().empty(); }))
        collect_arguments(group, out);
}

std::vector<std::string> strip_output_flags(const std::vector<std::string>& args) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < args.size(); ++i) {
        const std::string& a = args[i];
        if (a == "--manifest" || a == "--out") {
            ++i;
            continue;
        }
        if (a.rfind("--manifest=", 0) == 0 || a.rfind("--out=", 0) == 0) continue;
        out.push_back(a);
    }
    return out;
}

int dispatch(const std::vector<std::string>& args, Capture* capture);

int replay(const std::string& path) {
    const json m = io::load_json_arg(path);
    if (!m.contains("argv") || !m["argv"].is_array() || !m.contains("result"))
        throw Error(ErrorKind::InvalidInput, "not a run manifest: " + path);
    std::vector<std::string> args;
    for (const auto& a : m["argv"]) args.push_back(a.get<std::string>());
    Capture cap;
    const int code = dispatch(strip_output_flags(args), &cap);
    if (code != 0) throw Error(ErrorKind::InvalidInput, "replayed command failed with exit code " + std::to_string(code));
    // Compare through the serialized form, which is what the manifest stores.
    const bool same_result = io::dump(json::parse(io::dump(cap.result))) == io::dump(m["result"]);
    bool same_csv = true;
    if (m.contains("csv") && m["csv"].is_object())
        same_csv = io::hex64(io::fnv1a64(cap.csv)) == m["csv"]["fnv1a64"].get<std::string>();
    const json report = {{"command", m.value("command", "")},
                         {"result_identical", same_result},
                         {"csv_identical", same_csv},
                         {"match", same_result && same_csv}};
    std::cout << io::dump(report) << "\n";
    return same_result && same_csv ? 0 : 1;
}

int dispatch(const std::vector<std::string>& args, Capture* capture) {
    CLI::App app{"Heights, canonical heights and equidistribution for arithmetic dynamics on P^1", "arithdyn"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", kVersion);
    cli::Globals globals;
    app.add_option("--seed", globals.seed, "random seed")->capture_default_str();
    app.add_option("--manifest", globals.manifest, "write a run manifest to this path");
    app.add_option("--out", globals.out, "write CSV output to this path");
    auto commands = cli::register_commands(app, globals);
    auto* rep = app.add_subcommand("replay", "rerun a manifest and compare its outputs");
    std::string replay_path;
    rep->add_option("manifest", replay_path, "manifest path")->required();

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n\n";
        const CLI::App* bad = &app;
        for (const CLI::App* s = &app; s;) {
            const auto subs = s->get_subcommands();
            const auto it = std::find_if(subs.begin(), subs.end(), [](const CLI::App* a) { return !a->get_name().empty(); });
            s = it == subs.end() ? nullptr : *it;
            if (s) bad = s;
        }
        std::cerr << bad->help();
        return 2;
    }

    const bool quiet = capture != nullptr;
    try {
        if (rep->parsed()) return replay(replay_path);
        const auto it = std::find_if(commands.begin(), commands.end(), [](const cli::Command& c) { return c.app->parsed(); });
        if (it == commands.end()) {
            std::cerr << app.help();
            return 2;
        }
        const auto t0 = std::chrono::steady_clock::now();
        cli::Outcome out = it->run();
        const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

        if (capture) {
            capture->result = out.result;
            capture->csv = out.csv;
        }
        if (!quiet) {
            if (!globals.out.empty() && !out.csv.empty()) io::write_file(globals.out, out.csv);
            if (out.csv_primary && globals.out.empty())
                std::cout << out.csv;
            else
                std::cout << io::dump(out.result) << "\n";
        }
        if (!quiet && !globals.manifest.empty()) {
            json manifest;
            manifest["command"] = it->name;
            manifest["argv"] = args;
            json arguments = json::object();
            collect_arguments(it->app, arguments);
            manifest["arguments"] = arguments;
            manifest["tolerances"] = out.tolerances;
            manifest["seed"] = globals.seed;
            manifest["versions"] = versions();
            manifest["wall_time_seconds"] = wall;
            manifest["error_bounds"] = out.error_bounds;
            if (out.csv.empty())
                manifest["csv"] = nullptr;
            else
                manifest["csv"] = {{"path", globals.out.empty() ? json(nullptr) : json(globals.out)},
                                   {"bytes", out.csv.size()},
                                   {"fnv1a64", io::hex64(io::fnv1a64(out.csv))}};
            manifest["result"] = out.result;
            io::write_file(globals.manifest, io::dump(manifest) + "\n");
        }
        return 0;
    } catch (const Error& e) {
        if (!quiet) std::cout << io::dump(error_json(to_string(e.kind()), e.what())) << "\n";
        return 1;
    } catch (const json::exception& e) {
        if (!quiet) std::cout << io::dump(error_json("invalid-input", e.what())) << "\n";
        return 1;
    } catch (const std::exception& e) {
        if (!quiet) std::cout << io::dump(error_json("internal", e.what())) << "\n";
        return 1;
    }
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return dispatch(args, nullptr);
}
