#include <algorithm>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "harness.hpp"
#include "suites.hpp"

using namespace symdom::harness;

namespace {

std::vector<double> parse_lambda_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.find_first_not_of(" \t") == std::string::npos) continue;
        try {
            size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw UsageError("bad lambda value '" + item + "'");
        }
    }
    return out;
}

void add_common(CLI::App* cmd, RunConfig& cfg, std::string& lambda_text) {
    cmd->add_option("--family", cfg.family, "disc, ball, sym, herm, quat or spin");
    cmd->add_option("--rank,--dim,--size", cfg.size, "rank (matrix families) or dimension (ball, spin)");
    cmd->add_option("--cols", cfg.cols, "column count q for herm (default q = rank)");
    cmd->add_option("--lambda", lambda_text, "comma-separated lambda values; empty string for an empty grid");
    cmd->add_option("--trials", cfg.trials, "Gram configurations per lambda");
    cmd->add_option("--trunc", cfg.trunc, "series truncation degree (0: suite default)");
    cmd->add_option("--samples", cfg.samples, "Monte Carlo samples");
    cmd->add_option("--pairs", cfg.pairs, "random point pairs for identity checks");
    cmd->add_option("--tol", cfg.tol, "override every error tolerance, in (0, 1); structural bounds stay fixed");
    cmd->add_option("--seed", cfg.seed, "base RNG seed");
    cmd->add_option("--output,-o", cfg.output, "report path (stdout when absent)");
    cmd->add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    cmd->add_flag("--serial", cfg.serial, "use the serial reference kernels");
    cmd->add_option("--config", "TOML/INI file whose keys mirror the long flags; explicit flags win");
}

// CLI11 only reads config files on the top-level app, so the keys are spliced
// in as flags right after the subcommand, ahead of the explicit flags.
std::vector<std::string> expand_config(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    std::string path;
    for (size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            path = args[i + 1];
            args.erase(args.begin() + i, args.begin() + i + 2);
            break;
        }
        if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
            args.erase(args.begin() + i);
            break;
        }
    }
    if (path.empty() || args.empty()) return args;
    std::vector<CLI::ConfigItem> items;
    try {
        items = CLI::ConfigTOML().from_file(path);
    } catch (const CLI::Error& e) {
        throw UsageError("config file " + path + ": " + e.what());
    }
    std::vector<std::string> flags;
    for (const auto& item : items) {
        if (item.name == "++" || item.name == "--") continue;  // section markers
        if (!item.parents.empty() && item.parents != std::vector<std::string>{args.front()}) continue;
        if (item.inputs.size() == 1 && item.inputs[0] == "true") {
            flags.push_back("--" + item.name);
        } else if (!(item.inputs.size() == 1 && item.inputs[0] == "false")) {
            flags.push_back("--" + item.name + "=" + CLI::detail::join(item.inputs, ","));
        }
    }
    args.insert(args.begin() + 1, flags.begin(), flags.end());
    return args;
}

int finish(const Report& rep, const RunConfig& cfg) {
    write_report(rep, cfg);
    const int inc = rep.count(Status::Inconclusive);
    if (inc > 0) std::cerr << "warning: " << inc << " inconclusive record(s)\n";
    const int fails = rep.count(Status::Fail);
    if (fails > 0) std::cerr << fails << " check(s) failed\n";
    return exit_code(rep);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Verification harness for invariant spaces on bounded symmetric domains", "symdom"};
    app.require_subcommand(1);
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

    RunConfig cfg;
    std::string lambda_text;
    std::string suite;
    std::string realization = "bounded";
    std::vector<std::string> merge_inputs;

    auto* constants = app.add_subcommand("constants", "structure constants of a domain");
    add_common(constants, cfg, lambda_text);
    auto* wallach = app.add_subcommand("wallach", "Gram positivity search over a lambda grid");
    add_common(wallach, cfg, lambda_text);
    wallach->add_option("--realization", realization, "bounded or siegel")
        ->check(CLI::IsMember({"bounded", "siegel"}));
    auto* verify = app.add_subcommand("verify", "run a verification suite");
    add_common(verify, cfg, lambda_text);
    verify->add_option("suite", suite, "suite name")->required();
    auto* merge = app.add_subcommand("report-merge", "concatenate JSON reports");
    merge->add_option("inputs", merge_inputs, "report files")->required();
    merge->add_option("--output,-o", cfg.output, "report path (stdout when absent)");
    merge->add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

    try {
        std::vector<std::string> args = expand_config(argc, argv);
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        for (auto* cmd : {constants, wallach, verify})
            if (cmd->parsed() && cmd->count("--lambda") > 0) {
                cfg.lambdas = parse_lambda_list(lambda_text);
                cfg.lambdas_set = true;
            }
        cfg.validate();
        if (constants->parsed()) {
            Report rep("constants", cfg);
            run_constants(cfg, rep);
            return finish(rep, cfg);
        }
        if (wallach->parsed()) {
            Report rep("wallach", cfg);
            run_wallach(cfg, rep, realization);
            return finish(rep, cfg);
        }
        if (verify->parsed()) {
            const auto& names = suite_names();
            if (std::find(names.begin(), names.end(), suite) == names.end())
                throw UsageError("unknown suite '" + suite + "'");
            Report rep("verify " + suite, cfg);
            run_suite(suite, cfg, rep);
            return finish(rep, cfg);
        }
        Report rep = merge_reports(merge_inputs, cfg);
        return finish(rep, cfg);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
