#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "lielab/fuzz.hpp"
#include "lielab/script/executor.hpp"
#include "lielab/script/parser.hpp"
#include "lielab/script/printer.hpp"

namespace {

using lielab::script::json;

constexpr int exit_usage = 2;

bool read_file(const std::string& path, std::string& out) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return false;
    std::ostringstream ss;
    ss << in.rdbuf();
    out = ss.str();
    return true;
}

/// Parses a script file, printing the problem and returning false on failure.
bool load(const std::string& path, lielab::script::Script& s) {
    std::string text;
    if (!read_file(path, text)) {
        std::cerr << "lielab: cannot read " << path << "\n";
        return false;
    }
    try {
        s = lielab::script::parse_script(text);
        return true;
    } catch (const lielab::Error& e) {
        std::cerr << path << ": " << e.kind() << ": " << e.what() << "\n";
    }
    return false;
}

int run(const std::string& path, const std::string& json_path, std::uint64_t budget, std::uint64_t seed, bool strict) {
    lielab::script::Script s;
    if (!load(path, s)) return exit_usage;
    auto report = lielab::script::execute(s, {budget, seed, strict});
    auto text = report.to_json().dump(2) + "\n";
    if (json_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(json_path, std::ios::binary);
        if (!out) {
            std::cerr << "lielab: cannot write " << json_path << "\n";
            return exit_usage;
        }
        out << text;
    }
    return report.exit_code(strict);
}

int fmt(const std::string& path) {
    lielab::script::Script s;
    if (!load(path, s)) return exit_usage;
    std::cout << lielab::script::print_script(s);
    return 0;
}

json fuzz_json(const lielab::FuzzReport& r) {
    json j;
    j["tool"] = "lielab";
    j["tool_version"] = lielab::script::tool_version;
    j["version"] = lielab::script::report_version;
    j["field"] = "Fp " + std::to_string(r.p);
    j["dim_max"] = r.dim_max;
    j["seed"] = r.seed;
    j["candidates"] = r.candidates;
    j["rejected_not_monomorphic"] = r.rejected;
    j["instances"] = json::array();
    for (const auto& i : r.instances) {
        json e;
        e["outer"] = i.outer;
        e["inner"] = i.inner;
        e["dim_outer"] = i.ext.outer.dim();
        e["dim_inner"] = i.ext.inner.dim();
        e["qann_count"] = i.qann_count;
        e["traces"] = i.summary.traces;
        e["skipped_u"] = i.summary.skipped;
        e["nonzero_x"] = i.summary.nonzero_x;
        e["nonzero_z"] = i.summary.nonzero_z;
        e["failures"] = i.summary.failures;
        if (i.summary.first_failure) e["first_failure"] = lielab::script::trace_json(i.ext.outer, *i.summary.first_failure);
        j["instances"].push_back(std::move(e));
    }
    j["failures"] = r.failures();
    return j;
}

int fuzz(std::size_t dim_max, std::uint32_t p, std::uint64_t seed, std::uint64_t budget) {
    try {
        auto r = lielab::fuzz_qadann({p, dim_max, seed, lielab::Budget{budget}});
        std::cout << fuzz_json(r).dump(2) << "\n";
        return r.failures() == 0 && !r.instances.empty() ? 0 : 1;
    } catch (const lielab::TorsionError& e) {
        std::cerr << "lielab: " << e.kind() << ": " << e.what() << "\n";
        return exit_usage;
    } catch (const lielab::Error& e) {
        std::cerr << "lielab: " << e.kind() << ": " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "lielab: " << e.what() << "\n";
        return exit_usage;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact structure checks for finite-dimensional Lie and associative algebras"};
    app.require_subcommand(1);
    app.set_version_flag("--version", lielab::script::tool_version);

    std::string script_path, json_path;
    std::uint64_t budget = lielab::Budget{}.max_elements, seed = 0;
    bool strict = false;
    auto* run_cmd = app.add_subcommand("run", "Execute a script and emit a JSON report");
    run_cmd->add_option("SCRIPT", script_path, "Script file")->required();
    run_cmd->add_option("--json", json_path, "Write the report here instead of stdout");
    run_cmd->add_option("--budget", budget, "Default enumeration budget")->check(CLI::PositiveNumber);
    run_cmd->add_option("--seed", seed, "Seed for sampling");
    run_cmd->add_flag("--strict", strict, "Treat hypothesis failures and undecided results as failures");

    std::string target;
    std::size_t dim_max = 6;
    std::uint32_t p = 5;
    std::uint64_t fuzz_seed = 0, fuzz_budget = lielab::Budget{}.max_elements;
    auto* fuzz_cmd = app.add_subcommand("fuzz", "Search extensions and run the identity chain");
    fuzz_cmd->add_option("TARGET", target, "What to fuzz")->required()->check(CLI::IsMember({"qadann"}));
    fuzz_cmd->add_option("--dim-max", dim_max, "Largest dimension of Q")->check(CLI::Range(1, 8));
    fuzz_cmd->add_option("--field", p, "Prime p of the field F_p");
    fuzz_cmd->add_option("--seed", fuzz_seed, "Shuffle the instance order (0 keeps it)");
    fuzz_cmd->add_option("--budget", fuzz_budget, "Enumeration budget")->check(CLI::PositiveNumber);

    std::string fmt_path;
    auto* fmt_cmd = app.add_subcommand("fmt", "Print a script in canonical form");
    fmt_cmd->add_option("SCRIPT", fmt_path, "Script file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : exit_usage;
    }

    if (run_cmd->parsed()) return run(script_path, json_path, budget, seed, strict);
    if (fuzz_cmd->parsed()) return fuzz(dim_max, p, fuzz_seed, fuzz_budget);
    return fmt(fmt_path);
}
