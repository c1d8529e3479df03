#include "tiltfmt/tiltfmt.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw tiltfmt::error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw tiltfmt::error("cannot write " + path.string());
    out << contents;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact tilt stability and Fourier-Mukai transform calculator"};
    app.require_subcommand(1);

    CLI::App* run = app.add_subcommand("run", "run every task in a scenario file");
    std::string file;
    std::string out_dir = ".";
    int grid = 40;
    bool float_mode = false;
    std::optional<std::uint64_t> seed;
    run->add_option("file", file, "scenario file")->required();
    run->add_option("--out", out_dir, "directory for emitted artifacts");
    run->add_option("--grid", grid, "wall sample grid resolution")->check(CLI::Range(2, 400));
    run->add_flag("--float", float_mode, "allow floating-point fallbacks");
    run->add_option("--seed", seed, "override the scenario seed");

    CLI11_PARSE(app, argc, argv);

    try {
        const std::string text = read_file(file);
        const tiltfmt::Scenario scenario = tiltfmt::parse_scenario(text);
        tiltfmt::RunOptions opt;
        opt.scenario_name = std::filesystem::path(file).stem().string();
        opt.grid = grid;
        opt.float_mode = float_mode;
        opt.seed_override = seed;
        const tiltfmt::RunResult result = tiltfmt::run_scenario(scenario, opt);
        std::cout << result.report;
        std::filesystem::create_directories(out_dir);
        for (const tiltfmt::Artifact& a : result.artifacts)
            write_file(std::filesystem::path(out_dir) / a.filename, a.contents);
        return result.exit_code();
    } catch (const tiltfmt::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
