// qad: parse an expression, run the register-level AD pipeline, print the
// simulated result next to the classical oracle with error bounds.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qad/report.hpp"

namespace {

constexpr int kExitParse = 1;
constexpr int kExitDomain = 2;
constexpr int kExitOverflow = 3;
constexpr int kExitResource = 4;

struct Options {
    std::string expr;
    double x0 = 0.0;
    int int_bits = 8;
    int frac_bits = 24;
    std::string reset_mode = "hybrid";
    std::string sweep_frac_bits;
    bool json = false;
    std::string trace_path;
};

qad::ResetMode parse_mode(const std::string& s) {
    return s == "swap" ? qad::ResetMode::Swap : qad::ResetMode::Hybrid;
}

std::vector<int> parse_sweep(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        std::size_t used = 0;
        int b = std::stoi(tok, &used);
        if (used != tok.size())
            throw qad::ParseError("invalid --sweep-frac-bits entry '" + tok + "'", 0, "an integer");
        out.push_back(b);
    }
    return out;
}

int run_one(const Options& opt) {
    qad::CompGraph g = qad::build_graph(qad::parse(opt.expr));
    qad::RunConfig cfg;
    cfg.x0 = opt.x0;
    cfg.format = qad::FixedPointFormat::make(opt.int_bits, opt.frac_bits);
    cfg.reset_mode = parse_mode(opt.reset_mode);
    cfg.trace_enabled = !opt.trace_path.empty();

    qad::RunReport rep = qad::run_with_analysis(g, cfg);
    if (!opt.trace_path.empty()) {
        std::ofstream f(opt.trace_path);
        f << *rep.result.trace_jsonl;
    }
    if (opt.json)
        std::cout << rep.to_json().dump(2) << "\n";
    else
        std::cout << rep.to_text();
    return 0;
}

int run_sweep(const Options& opt) {
    std::vector<int> bs = parse_sweep(opt.sweep_frac_bits);
    if (bs.empty()) {
        std::cerr << "sweep: --sweep-frac-bits list is empty\n";
        return kExitParse;
    }
    qad::CompGraph g = qad::build_graph(qad::parse(opt.expr));
    nlohmann::json rows = nlohmann::json::array();
    bool text = !opt.json;
    if (text)
        std::cout << "b  value_error  deriv_error  bound_value  bound_deriv  gates\n";
    for (int b : bs) {
        nlohmann::json row;
        row["frac_bits"] = b;
        try {
            qad::RunConfig cfg;
            cfg.x0 = opt.x0;
            cfg.format = qad::FixedPointFormat::make(opt.int_bits, b);
            cfg.reset_mode = parse_mode(opt.reset_mode);
            qad::RunReport rep = qad::run_with_analysis(g, cfg);
            long gates = 0;
            for (const auto& [kind, count] : rep.result.gate_counts) gates += count;
            row["observed_value_error"] = rep.observed_value_error;
            row["observed_deriv_error"] = rep.observed_deriv_error;
            row["bound_value"] = rep.errors.bound_value;
            row["bound_deriv"] = rep.errors.bound_deriv;
            row["gates"] = gates;
            if (text) {
                std::ostringstream os;
                os.precision(6);
                os << b << "  " << rep.observed_value_error << "  " << rep.observed_deriv_error
                   << "  " << rep.errors.bound_value << "  " << rep.errors.bound_deriv << "  "
                   << gates;
                std::cout << os.str() << "\n";
            }
        } catch (const qad::Error& e) {
            // one failing precision does not abort the remaining rows
            row["failed"] = e.what();
            if (text) std::cout << b << "  FAILED: " << e.what() << "\n";
        }
        rows.push_back(row);
    }
    if (opt.json) std::cout << rows.dump(2) << "\n";
    return 0;
}

int run_graph(const Options& opt) {
    std::cout << qad::to_dot(qad::build_graph(qad::parse(opt.expr)));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quantum algorithmic differentiation simulator"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App* cmd, bool needs_x0) {
        cmd->add_option("--expr", opt.expr, "expression in x, e.g. \"x*cos(log(x))\"")
            ->required();
        if (needs_x0) cmd->add_option("--x0", opt.x0, "evaluation point")->required();
        cmd->add_option("--int-bits", opt.int_bits, "integer bits incl. sign (default 8)");
        cmd->add_option("--frac-bits", opt.frac_bits, "fractional bits (default 24)");
        cmd->add_option("--reset-mode", opt.reset_mode, "swap|hybrid (default hybrid)")
            ->check(CLI::IsMember({"swap", "hybrid"}));
        cmd->add_flag("--json", opt.json, "JSON output");
        cmd->add_option("--trace", opt.trace_path, "write gate trace (JSON lines) to file");
    };

    CLI::App* cmd_run = app.add_subcommand("run", "simulate one run and report errors");
    add_common(cmd_run, true);
    CLI::App* cmd_sweep = app.add_subcommand("sweep", "repeat the run over a frac-bits list");
    add_common(cmd_sweep, true);
    cmd_sweep->add_option("--sweep-frac-bits", opt.sweep_frac_bits, "comma list, e.g. 8,16,24,32")
        ->required();
    CLI::App* cmd_graph = app.add_subcommand("graph", "print the computational graph as DOT");
    add_common(cmd_graph, false);

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_run->parsed()) return run_one(opt);
        if (cmd_sweep->parsed()) return run_sweep(opt);
        return run_graph(opt);
    } catch (const qad::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const qad::DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const qad::OverflowError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitOverflow;
    } catch (const qad::AncillaExhaustedError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitResource;
    } catch (const qad::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitResource;
    }
}
