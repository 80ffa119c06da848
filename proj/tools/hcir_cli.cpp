#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "hcir/commands.hpp"
#include "hcir/errors.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw hcir::ValidationError("FileNotReadable", "config",
                                    "cannot open config file '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_output(const std::string& csv, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << csv;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
        throw hcir::ValidationError("FileNotWritable", "out",
                                    "cannot open output file '" + out_path + "'");
    }
    out << csv;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite-difference pricer for European calls under stochastic volatility "
                 "and a stochastic short rate, with optional transaction-cost corrections"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path;
    std::string out_path;
    std::string solver_name;
    std::uint64_t seed = 0;
    bool seed_set = false;
    app.add_option("--config", config_path, "key=value config file; omit for defaults")
        ->check(CLI::ExistingFile);
    app.add_option("--out", out_path, "write CSV here instead of stdout");
    app.add_option("--solver", solver_name, "override solver: adi, explicit, or mc");
    app.add_option("--seed", seed, "override RNG seed")->each([&](const std::string&) {
        seed_set = true;
    });

    CLI::App* price = app.add_subcommand("price", "price the option at the query points");
    CLI::App* converge =
        app.add_subcommand("converge", "grid-refinement table against anchor prices");
    CLI::App* compare =
        app.add_subcommand("compare", "zero-cost vs with-cost prices on one grid");
    CLI::App* surface = app.add_subcommand("surface", "final-field slice for plotting");

    CLI11_PARSE(app, argc, argv);

    try {
        hcir::RunConfig cfg =
            hcir::parse_config(config_path.empty() ? std::string() : read_file(config_path));
        if (!solver_name.empty()) cfg.solver = hcir::solver_kind_from_string(solver_name);
        if (seed_set) cfg.seed = seed;
        if (!out_path.empty()) cfg.out_path = out_path;

        std::string csv;
        if (price->parsed()) csv = hcir::cmd_price(cfg);
        else if (converge->parsed()) csv = hcir::cmd_converge(cfg);
        else if (compare->parsed()) csv = hcir::cmd_compare(cfg);
        else if (surface->parsed()) csv = hcir::cmd_surface(cfg);

        write_output(csv, cfg.out_path);
        return 0;
    } catch (const hcir::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const hcir::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const hcir::OutOfDomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const hcir::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << "\n";
        return 1;
    }
}
