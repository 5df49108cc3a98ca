// CLI verifier: maps suite ids to executable exact checks and emits
// machine-readable reports.
//
//   iqsym list
//   iqsym run <suite-id> [--config FILE] [--max-weight N]
//             [--param {diamond,star,icb,custom:<scalar>}]
//             [--format json|text] [--out PATH] [--stress]
//
// Exit codes: 0 all checks pass, 1 any check failed, 2 configuration error.
// IQSYM_THREADS caps check-level parallelism.

#include "iqsym/verify.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>

using namespace iqsym;

int main(int argc, char** argv) {
    CLI::App app{"exact verifier for quantum symmetric pair braid symmetries"};
    app.require_subcommand(1);

    auto* list = app.add_subcommand("list", "print the suite catalog");

    auto* run = app.add_subcommand("run", "run one suite");
    std::string suite_id, config_path, param = "star", format = "text", out_path;
    long max_weight = -1;
    bool stress = false;
    run->add_option("suite", suite_id, "suite id")->required();
    run->add_option("--config", config_path, "config file with cartan/d/tau and key = value lines");
    run->add_option("--max-weight", max_weight, "override the suite weight bound");
    run->add_option("--param", param, "parameter pack: diamond, star, icb, or custom:<scalar>");
    run->add_option("--format", format, "report format: text or json");
    run->add_option("--out", out_path, "write the report to a file instead of stdout");
    run->add_flag("--stress", stress, "use the stress bounds");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (list->parsed()) {
        auto catalog = suite_catalog();
        std::cout << "suites (" << catalog.size() << "):\n";
        for (const auto& d : verify_detail::suite_defs()) {
            std::cout << "  " << d.id << "\n    " << d.anchor << "\n    bounds: " << d.default_bounds
                      << "\n";
        }
        return 0;
    }

    SuiteConfig cfg;
    try {
        if (param == "diamond") cfg.param = ParamChoice::diamond;
        else if (param == "star") cfg.param = ParamChoice::star;
        else if (param == "icb") cfg.param = ParamChoice::icb;
        else if (param.rfind("custom:", 0) == 0) {
            cfg.param = ParamChoice::custom;
            cfg.custom_param = param.substr(7);
        } else {
            std::cerr << "unknown parameter pack: " << param << "\n";
            return 2;
        }
        cfg.max_weight = max_weight;
        cfg.stress = stress;
        if (const char* env = std::getenv("IQSYM_THREADS")) {
            long t = std::atol(env);
            cfg.threads = t > 0 ? static_cast<unsigned>(t) : 1u;
        }
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) {
                std::cerr << "cannot open config file: " << config_path << "\n";
                return 2;
            }
            std::ostringstream buf;
            buf << in.rdbuf();
            std::string text = buf.str();
            if (text.find("cartan") != std::string::npos) cfg.datum = parse_satake_config(text);
            // flag-style keys in the file; command-line flags override
            std::istringstream ls(text);
            std::string line;
            while (std::getline(ls, line)) {
                auto eq = line.find('=');
                if (eq == std::string::npos) continue;
                std::string key = line.substr(0, eq);
                key.erase(std::remove_if(key.begin(), key.end(),
                                         [](unsigned char c) { return std::isspace(c); }),
                          key.end());
                std::string val = line.substr(eq + 1);
                val.erase(std::remove_if(val.begin(), val.end(),
                                         [](unsigned char c) { return std::isspace(c); }),
                          val.end());
                if (key == "max_weight" && max_weight < 0) cfg.max_weight = std::atol(val.c_str());
                if (key == "param" && param == "star") {
                    if (val == "diamond") cfg.param = ParamChoice::diamond;
                    else if (val == "icb") cfg.param = ParamChoice::icb;
                    else if (val == "star") cfg.param = ParamChoice::star;
                }
                if (key == "stress" && !stress) cfg.stress = val == "1" || val == "true";
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    }

    Report rep;
    try {
        rep = run_suite(suite_id, cfg);
    } catch (const VerifyError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    std::string text;
    try {
        text = report_emit(rep, format);
    } catch (const VerifyError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    if (!out_path.empty()) {
        std::ofstream out(out_path);
        if (!out) {
            std::cerr << "cannot open output file: " << out_path << "\n";
            return 2;
        }
        out << text;
    } else {
        std::cout << text;
    }
    return rep.pass ? 0 : 1;
}
