// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "vgb/experiments.hpp"

using namespace vgb;
using namespace vgb::experiments;

namespace {

std::filesystem::path fresh_dir(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / ("vgb_test_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

std::string report_to_string(const ExperimentReport& report, char delim = ',') {
    std::ostringstream out;
    write_report(report, out, delim);
    return out.str();
}

}  // namespace

TEST_CASE("compute_eoc") {
    CHECK(*compute_eoc(4e-4, 1e-4) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(*compute_eoc(3.2e-7, 3.2e-7) == doctest::Approx(0.0));
    CHECK_FALSE(compute_eoc(0.0, 1e-5).has_value());
    CHECK_FALSE(compute_eoc(1e-5, 0.0).has_value());
    CHECK_FALSE(compute_eoc(-1e-5, 1e-6).has_value());
    // published pair from the EOC table
    CHECK(*compute_eoc(2.11e-9, 1.82e-10) == doctest::Approx(3.53).epsilon(0.002));
}

TEST_CASE("registry completeness") {
    const auto& entries = registry();
    REQUIRE(entries.size() >= 6);
    const char* expected[] = {"ex3_1", "ex3_2", "ex5_1", "ex5_2", "ex5_3", "ex5_4"};
    for (const char* id : expected) {
        const ProblemEntry& e = find_problem(id);
        CHECK(!e.description.empty());
        CHECK(!e.table_label.empty());
        CHECK(!e.default_m.empty());
        CHECK(!e.default_s.empty());
    }
    CHECK(find_problem("ex3_1").kind == ProblemKind::Quadrature);
    CHECK(find_problem("ex5_4").complex_valued);
    CHECK_THROWS_AS((void)find_problem("ex9_9"), UnknownProblem);
}

TEST_CASE("register_problem extends the registry and rejects duplicates") {
    ProblemEntry custom;
    custom.id = "unit_flat";
    custom.description = "V f(s) = int_0^s 1 dt";
    custom.table_label = "custom";
    custom.kind = ProblemKind::Quadrature;
    custom.quad_kernel = [](double, double) { return 1.0; };
    custom.quad_f = [](double) { return 1.0; };
    custom.quad_weights = VolterraWeights(0.0, 0.0);
    custom.reference_value = [](double s) { return s; };
    custom.default_m = {2, 4};
    custom.default_ell = 2;
    custom.default_s = {0.5, 1.0};
    register_problem(custom);

    CHECK_THROWS_AS(register_problem(custom), Error);

    const ExperimentReport report = run_table("unit_flat");
    REQUIRE(report.rows.size() == 2);
    for (const auto& row : report.rows)
        for (double err : row.errors) CHECK(err <= 1e-14);
}

TEST_CASE("equation problems with a known exact solution use it as reference") {
    // Manufactured solution f*(s) = s^2: with k = 1, mu = 1, alpha = beta = 0
    // the right-hand side is g(s) = s^2 + s^3/3.
    ProblemEntry manufactured;
    manufactured.id = "unit_poly";
    manufactured.description = "f + int_0^s f = s^2 + s^3/3";
    manufactured.table_label = "custom";
    manufactured.kind = ProblemKind::Equation;
    manufactured.equation.kernel = [](double, double) { return std::complex<double>(1.0); };
    manufactured.equation.rhs = [](double s) {
        return std::complex<double>(s * s + s * s * s / 3.0);
    };
    manufactured.equation.mu = 1.0;
    manufactured.equation.weights = VolterraWeights(0.0, 0.0);
    manufactured.equation.exact = [](double s) { return std::complex<double>(s * s); };
    manufactured.default_m = {4, 8};
    manufactured.default_ell = 64;
    manufactured.default_s = {0.25, 0.75};
    register_problem(manufactured);

    RunOptions opt;
    opt.reference.mode = ReferencePolicy::Mode::ClosedFormOnly;
    const ExperimentReport report = run_table("unit_poly", opt);
    CHECK(report.reference_mode == "closed-form");
    for (const auto& row : report.rows)
        for (double err : row.errors) CHECK(err <= 1e-10);
}

TEST_CASE("register_problem validates incomplete entries") {
    ProblemEntry broken;
    broken.id = "unit_broken";
    broken.kind = ProblemKind::Quadrature;  // missing kernel/integrand/weights
    CHECK_THROWS_AS(register_problem(broken), Error);
}

TEST_CASE("quadrature table reproduces the published smooth-kernel cell") {
    RunOptions opt;
    opt.m_list = {4};
    opt.s_list = {0.3};
    const ExperimentReport report = run_table("ex3_1", opt);
    REQUIRE(report.rows.size() == 1);
    CHECK(report.rows[0].errors[0] == doctest::Approx(3.86e-9).epsilon(0.05));
    CHECK_FALSE(report.with_condition);
    CHECK(report.reference_mode == "closed-form");
}

TEST_CASE("smooth-kernel integral hits the rounding floor at m = 64, l = 16") {
    // The published cell at (l=16, s=0.3) is an exact zero; floating-point
    // reproduction lands at or below 1e-15.
    RunOptions opt;
    opt.s_list = {0.3};
    const ExperimentReport sweep = run_ell_sweep("ex3_1", 64, {16}, opt);
    CHECK(sweep.rows[0].errors[0] <= 1e-15);
}

TEST_CASE("single-entry ell sweep equals the table cell") {
    RunOptions opt;
    opt.m_list = {8};
    opt.s_list = {0.6};
    opt.ell = 16;
    const ExperimentReport table = run_table("ex3_1", opt);
    const ExperimentReport sweep = run_ell_sweep("ex3_1", 8, {16}, opt);
    REQUIRE(sweep.rows.size() == 1);
    CHECK(sweep.rows[0].errors[0] == table.rows[0].errors[0]);
    CHECK(sweep.key_label == "ell");
    CHECK(sweep.fixed_m == 8);
}

TEST_CASE("ell sweep errors are non-increasing on the singular-kernel integral") {
    const ExperimentReport sweep = run_ell_sweep("ex3_2", 64, {4, 8, 16, 32});
    REQUIRE(sweep.rows.size() == 4);
    for (std::size_t c = 0; c < sweep.s_points.size(); ++c)
        for (std::size_t r = 0; r + 1 < sweep.rows.size(); ++r)
            CHECK(sweep.rows[r + 1].errors[c] <= sweep.rows[r].errors[c]);
}

TEST_CASE("doubling l improves the equation error at fixed m") {
    RunOptions opt;
    opt.reference.m_ref = 256;  // desk-scale reference for the unit suite
    opt.reference.ell_ref = 256;
    opt.cache_dir = fresh_dir("ell_cmp");
    opt.s_list = {0.3, 0.8};
    const ExperimentReport sweep = run_ell_sweep("ex5_1", 64, {1, 2}, opt);
    REQUIRE(sweep.rows.size() == 2);
    for (std::size_t i = 0; i < sweep.s_points.size(); ++i)
        CHECK(sweep.rows[1].errors[i] < sweep.rows[0].errors[i]);
}

TEST_CASE("report formatting matches the published table layout") {
    ExperimentReport report;
    report.problem_id = "ex5_1";
    report.key_label = "m";
    report.s_points = {0.1, 0.3, 0.8};
    report.with_condition = true;
    ReportRow row;
    row.key = 4;
    row.errors = {3.89e-6, 1.12e-5, 1.33e-5};
    row.condition = 1.78;
    report.rows.push_back(row);

    const std::string text = report_to_string(report);
    CHECK(text ==
          "m,eps(0.1),eps(0.3),eps(0.8),cond\n"
          "4,3.89e-06,1.12e-05,1.33e-05,1.78e+00\n");

    // EOC columns interleave, last row's markers stay empty
    report.with_eoc = true;
    report.rows[0].eoc = {3.53, std::nullopt, 3.62};
    const std::string eoc_text = report_to_string(report);
    CHECK(eoc_text ==
          "m,eps(0.1),eoc(0.1),eps(0.3),eoc(0.3),eps(0.8),eoc(0.8),cond\n"
          "4,3.89e-06,3.53,1.12e-05,,1.33e-05,3.62,1.78e+00\n");
}

TEST_CASE("empty report emits a header-only file") {
    ExperimentReport report;
    report.problem_id = "ex5_1";
    report.key_label = "m";
    report.s_points = {0.1};
    report.with_condition = true;
    CHECK(report_to_string(report) == "m,eps(0.1),cond\n");

    const auto dir = fresh_dir("empty_report");
    const auto path = emit_report(report, dir, "csv", "table");
    std::ifstream in(path);
    std::string contents((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(contents == "m,eps(0.1),cond\n");
}

TEST_CASE("tsv emission uses tab delimiters") {
    RunOptions opt;
    opt.m_list = {4};
    opt.s_list = {0.3};
    const ExperimentReport report = run_table("ex3_1", opt);
    const auto dir = fresh_dir("tsv");
    const auto path = emit_report(report, dir, "tsv", "quadrature");
    CHECK(path.extension() == ".tsv");
    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    CHECK(header == "m\teps(0.3)");
    CHECK_THROWS_AS((void)emit_report(report, dir, "xml", "quadrature"), Error);
}

TEST_CASE("identical configurations produce byte-identical bodies") {
    RunOptions opt;
    opt.m_list = {4, 8};
    opt.reference.m_ref = 64;
    opt.reference.ell_ref = 64;
    opt.cache_dir = fresh_dir("determinism");
    const std::string first = report_to_string(run_table("ex5_1", opt));
    const std::string second = report_to_string(run_table("ex5_1", opt));
    CHECK(first == second);
    CHECK(first.find('e') != std::string::npos);
}

TEST_CASE("reference cache round-trips and survives re-opening") {
    const auto dir = fresh_dir("refcache");
    const ProblemEntry& entry = find_problem("ex5_1");
    ReferencePolicy policy;
    policy.m_ref = 32;
    policy.ell_ref = 32;

    std::complex<double> first;
    {
        ReferenceEvaluator ref(entry, policy, dir);
        first = ref.value_at(0.5);
    }  // destructor stores the cache
    const auto cache_file = dir / "ex5_1_m32_ell32.json";
    CHECK(std::filesystem::exists(cache_file));

    {
        ReferenceEvaluator ref(entry, policy, dir);
        const auto again = ref.value_at(0.5);
        CHECK(again.real() == first.real());
        CHECK(again.imag() == first.imag());
    }

    // A stale version tag invalidates the entry; the value is recomputed
    // and matches.
    {
        std::ifstream in(cache_file);
        std::string body((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        in.close();
        const auto pos = body.find("\"version\"");
        REQUIRE(pos != std::string::npos);
        body.replace(pos, std::string("\"version\"").size(), "\"versoin\"");
        std::ofstream out(cache_file);
        out << body;
    }
    {
        ReferenceEvaluator ref(entry, policy, dir);
        const auto recomputed = ref.value_at(0.5);
        CHECK(std::abs(recomputed - first) <= 1e-15);
    }
}

TEST_CASE("closed-form policy fails cleanly when no closed form exists") {
    RunOptions opt;
    opt.m_list = {4};
    opt.reference.mode = ReferencePolicy::Mode::ClosedFormOnly;
    CHECK_THROWS_WITH_AS((void)run_table("ex5_1", opt),
                         doctest::Contains("no closed form"), Error);
}

TEST_CASE("max-error sweep produces one column keyed by ell") {
    RunOptions opt;
    const ExperimentReport sweep = run_max_error_sweep("ex3_1", 8, {4, 16}, 32, opt);
    REQUIRE(sweep.rows.size() == 2);
    CHECK(sweep.value_labels == std::vector<std::string>{"max_eps"});
    CHECK(sweep.rows[0].errors.size() == 1);
    CHECK(report_to_string(sweep).rfind("ell,max_eps\n", 0) == 0);
    // more smoothing iterations cannot hurt on this smooth problem
    CHECK(sweep.rows[1].errors[0] <= sweep.rows[0].errors[0] * 1.5);
}

TEST_CASE("figure emission writes data files and a gnuplot script") {
    const auto dir = fresh_dir("figure");
    RunOptions opt;
    const FigureFiles files = emit_figure("ex3_1", dir, 8, {4, 8}, opt);
    REQUIRE(files.data_files.size() == 1);
    CHECK(std::filesystem::exists(files.data_files[0]));
    CHECK(std::filesystem::exists(files.script));
    std::ifstream in(files.script);
    std::string body((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(body.find("logscale") != std::string::npos);
}
