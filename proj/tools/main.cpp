// SPDX-License-Identifier: Apache-2.0
//
// Reproduction harness for the GB-operator Nystrom solver: error, EOC and
// conditioning tables plus figure data for the built-in problems.
//
//   volterra-gb table ex5_1
//   volterra-gb quadrature ex3_2 --ell 256
//   volterra-gb ell-sweep ex3_2 --m 512
//   volterra-gb figure ex5_3 --out-dir figures
#include <complex>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "vgb/experiments.hpp"
#include "vgb/version.hpp"

namespace {

using namespace vgb::experiments;

struct CommonOptions {
    std::vector<std::size_t> m_list;
    unsigned ell = 0;
    bool ell_set = false;
    std::vector<double> s_list;
    std::string out_dir = ".";
    std::string format = "csv";
    std::string reference = "auto";
    std::string cache_dir;
};

void add_common_flags(CLI::App* cmd, CommonOptions& opt) {
    cmd->add_option("--m-list", opt.m_list, "Degrees m (default: the problem's table rows)")
        ->delimiter(',');
    cmd->add_option("--ell", opt.ell, "Iteration parameter l (default: the problem's, usually 256)")
        ->each([&opt](const std::string&) { opt.ell_set = true; });
    cmd->add_option("--s-list", opt.s_list, "Evaluation points s (default: the problem's columns)")
        ->delimiter(',');
    cmd->add_option("--out-dir", opt.out_dir, "Output directory")->capture_default_str();
    cmd->add_option("--format", opt.format, "Output format")
        ->check(CLI::IsMember({"csv", "tsv"}))
        ->capture_default_str();
    cmd->add_option("--reference", opt.reference,
                    "Reference policy: closed-form requires a known exact solution, auto falls "
                    "back to the m=1024, l=256 reference run")
        ->check(CLI::IsMember({"closed-form", "auto"}))
        ->capture_default_str();
    cmd->add_option("--cache-dir", opt.cache_dir,
                    "Reference-run cache directory (default: $VGB_CACHE_DIR or ./.vgb-cache)");
}

RunOptions to_run_options(const CommonOptions& opt) {
    RunOptions run;
    run.m_list = opt.m_list;
    if (opt.ell_set) run.ell = opt.ell;
    run.s_list = opt.s_list;
    run.reference.mode = opt.reference == "closed-form" ? ReferencePolicy::Mode::ClosedFormOnly
                                                        : ReferencePolicy::Mode::Auto;
    run.cache_dir = opt.cache_dir;
    return run;
}

void print_report(const ExperimentReport& report) {
    std::vector<std::vector<std::string>> cells;
    {
        std::ostringstream body;
        write_report(report, body, ',');
        std::istringstream lines(body.str());
        std::string line;
        while (std::getline(lines, line)) {
            std::vector<std::string> row;
            std::string field;
            std::istringstream fields(line);
            while (std::getline(fields, field, ',')) row.push_back(field);
            cells.push_back(std::move(row));
        }
    }
    std::vector<std::size_t> widths;
    for (const auto& row : cells)
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (widths.size() <= i) widths.resize(i + 1, 0);
            widths[i] = std::max(widths[i], row[i].size());
        }
    for (const auto& row : cells) {
        for (std::size_t i = 0; i < row.size(); ++i)
            std::cout << std::setw(static_cast<int>(widths[i]) + 2) << row[i];
        std::cout << "\n";
    }
}

void print_metadata(const ExperimentReport& report) {
    std::cout << "problem:   " << report.problem_id << "\n";
    const ProblemEntry& entry = find_problem(report.problem_id);
    std::cout << "equation:  " << entry.description << "\n";
    if (report.key_label == "m")
        std::cout << "ell:       " << report.ell << "\n";
    else
        std::cout << "m:         " << report.fixed_m << "\n";
    if (!report.reference_mode.empty())
        std::cout << "reference: " << report.reference_mode << "\n";
    std::cout << "run at:    " << report.timestamp << "\n\n";
}

int run_table_command(const std::string& id, const CommonOptions& opt, bool quadrature_verb) {
    const ProblemEntry& entry = find_problem(id);
    if (quadrature_verb && entry.kind != ProblemKind::Quadrature)
        throw vgb::Error("'" + id + "' is an equation problem; use the `table` subcommand");
    if (!quadrature_verb && entry.kind != ProblemKind::Equation)
        throw vgb::Error("'" + id + "' is a quadrature problem; use the `quadrature` subcommand");
    const ExperimentReport report = run_table(id, to_run_options(opt));
    print_metadata(report);
    print_report(report);
    const auto path = emit_report(report, opt.out_dir, opt.format,
                                  quadrature_verb ? "quadrature" : "table");
    std::cout << "\nwrote " << path.string() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Volterra integral equations on equispaced nodes via generalized Bernstein "
                 "operators (reproduction harness)"};
    app.set_version_flag("--version", vgb::kVersion);
    app.set_config("--config", "", "Optional key=value config file");
    app.fallthrough();  // allow global flags like --config after the subcommand
    app.require_subcommand(1);

    std::string id;
    CommonOptions opt;
    std::size_t sweep_m = 0;
    std::vector<unsigned> ell_list;

    auto* table = app.add_subcommand("table", "Error/EOC/cond table over m at fixed l");
    table->add_option("id", id, "Problem id (ex5_1 .. ex5_4)")->required();
    add_common_flags(table, opt);

    auto* quad = app.add_subcommand("quadrature", "Operator-error table over m at fixed l");
    quad->add_option("id", id, "Problem id (ex3_1, ex3_2)")->required();
    add_common_flags(quad, opt);

    auto* sweep = app.add_subcommand("ell-sweep", "Errors at fixed m for a list of l values");
    sweep->add_option("id", id, "Problem id")->required();
    sweep->add_option("--m", sweep_m, "Fixed degree m (default: the problem's sweep m)");
    sweep->add_option("--ell-list", ell_list, "l values (default: the problem's sweep list)")
        ->delimiter(',');
    add_common_flags(sweep, opt);

    auto* figure = app.add_subcommand(
        "figure", "Figure data + gnuplot script (max-error-vs-l, or solution overlay for ex5_3)");
    figure->add_option("id", id, "Problem id")->required();
    figure->add_option("--m", sweep_m, "Fixed degree m for max-error sweeps");
    figure->add_option("--ell-list", ell_list, "l values for max-error sweeps")->delimiter(',');
    add_common_flags(figure, opt);

    CLI11_PARSE(app, argc, argv);

    try {
        if (table->parsed()) return run_table_command(id, opt, false);
        if (quad->parsed()) return run_table_command(id, opt, true);
        if (sweep->parsed()) {
            const ExperimentReport report =
                run_ell_sweep(id, sweep_m, ell_list, to_run_options(opt));
            print_metadata(report);
            print_report(report);
            const auto path = emit_report(report, opt.out_dir, opt.format, "ell_sweep");
            std::cout << "\nwrote " << path.string() << "\n";
            return 0;
        }
        if (figure->parsed()) {
            const FigureFiles files =
                emit_figure(id, opt.out_dir, sweep_m, ell_list, to_run_options(opt));
            for (const auto& f : files.data_files) std::cout << "wrote " << f.string() << "\n";
            std::cout << "wrote " << files.script.string() << "\n";
            std::cout << "render with: gnuplot " << files.script.string() << "\n";
            return 0;
        }
    } catch (const vgb::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
