// SPDX-License-Identifier: Apache-2.0
#include "vgb/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <sstream>

#include <json.hpp>

#include "vgb/version.hpp"

namespace vgb::experiments {

namespace {

using std::complex;

std::string format_scientific(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2e", v);
    return buf;
}

std::string format_fixed2(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string format_general(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

std::string iso_timestamp() {
    std::time_t now = std::time(nullptr);
    char buf[32];
    std::tm tm_utc{};
    gmtime_r(&now, &tm_utc);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
}

// RFC-4180 quoting; our fields never need it, but keep emission well formed
// for custom-registered problems with exotic labels.
std::string csv_escape(const std::string& field, char delimiter) {
    if (field.find_first_of(std::string{delimiter} + "\"\n\r") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::vector<double> real_samples(const ProblemEntry& entry, const GBOperator& op) {
    std::vector<double> samples(op.degree() + 1);
    for (std::size_t j = 0; j <= op.degree(); ++j) samples[j] = entry.quad_f(op.node(j));
    return samples;
}

double quadrature_error(const ProblemEntry& entry, const GBOperator& op, double s) {
    const std::vector<double> samples = real_samples(entry, op);
    const double approx = apply_discrete_operator<double>(op, *entry.quad_weights,
                                                          entry.quad_kernel, samples, s);
    return std::abs(approx - entry.reference_value(s));
}

void fill_eoc(ExperimentReport& report) {
    for (std::size_t r = 0; r < report.rows.size(); ++r) {
        ReportRow& row = report.rows[r];
        row.eoc.assign(row.errors.size(), std::nullopt);
        if (r + 1 < report.rows.size() && report.rows[r + 1].key == 2 * row.key) {
            for (std::size_t i = 0; i < row.errors.size(); ++i)
                row.eoc[i] = compute_eoc(row.errors[i], report.rows[r + 1].errors[i]);
        }
    }
}

std::string default_suffix(const ProblemEntry& entry) {
    return entry.kind == ProblemKind::Quadrature ? "quadrature" : "table";
}

}  // namespace

std::optional<double> compute_eoc(double error_m, double error_2m) {
    if (!(error_m > 0.0) || !(error_2m > 0.0)) return std::nullopt;
    return std::log(error_m / error_2m) / std::log(2.0);
}

std::shared_ptr<const GBOperator> shared_operator(std::size_t degree, unsigned iterations) {
    static std::map<std::pair<std::size_t, unsigned>, std::shared_ptr<const GBOperator>> pool;
    static std::mutex mutex;
    std::lock_guard lock(mutex);
    auto& slot = pool[{degree, iterations}];
    if (!slot) slot = std::make_shared<const GBOperator>(degree, iterations);
    return slot;
}

std::filesystem::path resolve_cache_dir(const std::filesystem::path& requested) {
    if (!requested.empty()) return requested;
    if (const char* env = std::getenv("VGB_CACHE_DIR"); env && *env) return env;
    return ".vgb-cache";
}

// ---------------------------------------------------------------------------
// ReferenceEvaluator

ReferenceEvaluator::ReferenceEvaluator(const ProblemEntry& entry, ReferencePolicy policy,
                                       std::filesystem::path cache_dir)
    : entry_(entry), policy_(policy) {
    if (entry.kind != ProblemKind::Equation)
        throw Error("ReferenceEvaluator applies to equation problems only: " + entry.id);
    if (entry.equation.exact) {
        use_closed_form_ = true;
        return;
    }
    if (policy.mode == ReferencePolicy::Mode::ClosedFormOnly)
        throw Error("problem '" + entry.id +
                    "': closed-form reference requested but no closed form is known");
    cache_file_ = cache_dir / (entry.id + "_m" + std::to_string(policy.m_ref) + "_ell" +
                               std::to_string(policy.ell_ref) + ".json");
    load_cache();
}

ReferenceEvaluator::~ReferenceEvaluator() {
    if (!dirty_) return;
    try {
        store_cache();
    } catch (const std::exception& e) {
        std::cerr << "warning: failed to store reference cache: " << e.what() << "\n";
    }
}

std::string ReferenceEvaluator::mode_string() const {
    return use_closed_form_ ? "closed-form" : "reference-run";
}

std::complex<double> ReferenceEvaluator::value_at(double s) {
    if (use_closed_form_) return entry_.equation.exact(s);
    for (const auto& [key, value] : cached_values_)
        if (key == s) return value;
    ensure_solution();
    const complex<double> value = interpolant_at(*solution_, entry_.equation, s);
    cached_values_.emplace_back(s, value);
    dirty_ = true;
    return value;
}

void ReferenceEvaluator::ensure_solution() {
    if (solution_) return;
    auto op = shared_operator(policy_.m_ref, policy_.ell_ref);
    solution_ = std::make_unique<NystromSolution<complex<double>>>(
        solve(entry_.equation, std::move(op)));
}

void ReferenceEvaluator::load_cache() {
    std::ifstream in(cache_file_);
    if (!in) return;
    try {
        nlohmann::json j;
        in >> j;
        if (j.value("problem", "") != entry_.id || j.value("m", 0u) != policy_.m_ref ||
            j.value("ell", 0u) != policy_.ell_ref || j.value("version", "") != kVersion)
            return;  // stale key: ignore, will recompute
        for (const auto& triple : j.at("values"))
            cached_values_.emplace_back(triple.at(0).get<double>(),
                                        complex<double>(triple.at(1).get<double>(),
                                                        triple.at(2).get<double>()));
    } catch (const nlohmann::json::exception&) {
        cached_values_.clear();  // corrupt cache: recompute
    }
}

void ReferenceEvaluator::store_cache() const {
    std::error_code ec;
    std::filesystem::create_directories(cache_file_.parent_path(), ec);
    nlohmann::json values = nlohmann::json::array();
    for (const auto& [s, v] : cached_values_)
        values.push_back({s, v.real(), v.imag()});
    const nlohmann::json j{{"problem", entry_.id},
                           {"m", policy_.m_ref},
                           {"ell", policy_.ell_ref},
                           {"version", kVersion},
                           {"values", values}};
    std::ofstream out(cache_file_);
    if (!out) throw IoError("cannot write reference cache: " + cache_file_.string());
    out << j.dump(1) << "\n";
}

// ---------------------------------------------------------------------------
// Runners

ExperimentReport run_table(const std::string& id, const RunOptions& options) {
    const ProblemEntry& entry = find_problem(id);
    const std::vector<std::size_t> m_list =
        options.m_list.empty() ? entry.default_m : options.m_list;
    const unsigned ell = options.ell.value_or(entry.default_ell);
    const std::vector<double> s_list = options.s_list.empty() ? entry.default_s : options.s_list;

    ExperimentReport report;
    report.problem_id = id;
    report.key_label = "m";
    report.ell = ell;
    report.s_points = s_list;
    report.with_eoc = entry.show_eoc;
    report.with_condition = entry.kind == ProblemKind::Equation;
    report.timestamp = iso_timestamp();

    if (entry.kind == ProblemKind::Quadrature) {
        report.reference_mode = "closed-form";
        for (std::size_t m : m_list) {
            auto op = shared_operator(m, ell);
            ReportRow row;
            row.key = m;
            for (double s : s_list) row.errors.push_back(quadrature_error(entry, *op, s));
            report.rows.push_back(std::move(row));
        }
    } else {
        ReferenceEvaluator reference(entry, options.reference,
                                     resolve_cache_dir(options.cache_dir));
        report.reference_mode = reference.mode_string();
        for (std::size_t m : m_list) {
            const NystromSolution<complex<double>> sol =
                solve(entry.equation, shared_operator(m, ell));
            ReportRow row;
            row.key = m;
            row.condition = sol.condition_number();
            for (double s : s_list)
                row.errors.push_back(
                    std::abs(interpolant_at(sol, entry.equation, s) - reference.value_at(s)));
            report.rows.push_back(std::move(row));
        }
    }
    if (report.with_eoc) fill_eoc(report);
    return report;
}

ExperimentReport run_ell_sweep(const std::string& id, std::size_t m, std::vector<unsigned> ells,
                               const RunOptions& options) {
    const ProblemEntry& entry = find_problem(id);
    if (m == 0) m = entry.default_sweep_m;
    if (ells.empty()) ells = entry.default_sweep_ells;
    const std::vector<double> s_list = options.s_list.empty() ? entry.default_s : options.s_list;

    ExperimentReport report;
    report.problem_id = id;
    report.key_label = "ell";
    report.fixed_m = m;
    report.s_points = s_list;
    report.with_condition = entry.kind == ProblemKind::Equation;
    report.timestamp = iso_timestamp();

    std::unique_ptr<ReferenceEvaluator> reference;
    if (entry.kind == ProblemKind::Equation) {
        reference = std::make_unique<ReferenceEvaluator>(entry, options.reference,
                                                         resolve_cache_dir(options.cache_dir));
        report.reference_mode = reference->mode_string();
    } else {
        report.reference_mode = "closed-form";
    }

    for (unsigned ell : ells) {
        ReportRow row;
        row.key = ell;
        if (entry.kind == ProblemKind::Quadrature) {
            auto op = shared_operator(m, ell);
            for (double s : s_list) row.errors.push_back(quadrature_error(entry, *op, s));
        } else {
            const NystromSolution<complex<double>> sol =
                solve(entry.equation, shared_operator(m, ell));
            row.condition = sol.condition_number();
            for (double s : s_list)
                row.errors.push_back(
                    std::abs(interpolant_at(sol, entry.equation, s) - reference->value_at(s)));
        }
        report.rows.push_back(std::move(row));
    }
    return report;
}

ExperimentReport run_max_error_sweep(const std::string& id, std::size_t m,
                                     std::vector<unsigned> ells, std::size_t grid_points,
                                     const RunOptions& options) {
    const ProblemEntry& entry = find_problem(id);
    if (m == 0) m = entry.default_sweep_m;
    if (ells.empty()) ells = entry.default_sweep_ells;

    std::vector<double> grid(grid_points);
    for (std::size_t k = 0; k < grid_points; ++k)
        grid[k] = static_cast<double>(k + 1) / static_cast<double>(grid_points + 1);

    ExperimentReport report;
    report.problem_id = id;
    report.key_label = "ell";
    report.fixed_m = m;
    report.value_labels = {"max_eps"};
    report.timestamp = iso_timestamp();

    std::unique_ptr<ReferenceEvaluator> reference;
    std::vector<complex<double>> ref_values(grid_points);
    if (entry.kind == ProblemKind::Equation) {
        reference = std::make_unique<ReferenceEvaluator>(entry, options.reference,
                                                         resolve_cache_dir(options.cache_dir));
        report.reference_mode = reference->mode_string();
        for (std::size_t k = 0; k < grid_points; ++k) ref_values[k] = reference->value_at(grid[k]);
    } else {
        report.reference_mode = "closed-form";
        for (std::size_t k = 0; k < grid_points; ++k) ref_values[k] = entry.reference_value(grid[k]);
    }

    for (unsigned ell : ells) {
        auto op = shared_operator(m, ell);
        double worst = 0.0;
        if (entry.kind == ProblemKind::Quadrature) {
            const std::vector<double> samples = real_samples(entry, *op);
            for (std::size_t k = 0; k < grid_points; ++k) {
                const double approx = apply_discrete_operator<double>(
                    *op, *entry.quad_weights, entry.quad_kernel, samples, grid[k]);
                worst = std::max(worst, std::abs(approx - ref_values[k].real()));
            }
        } else {
            const NystromSolution<complex<double>> sol = solve(entry.equation, op);
            for (std::size_t k = 0; k < grid_points; ++k)
                worst = std::max(worst, std::abs(interpolant_at(sol, entry.equation, grid[k]) -
                                                 ref_values[k]));
        }
        ReportRow row;
        row.key = ell;
        row.errors = {worst};
        report.rows.push_back(std::move(row));
    }
    return report;
}

// ---------------------------------------------------------------------------
// Emission

void write_report(const ExperimentReport& report, std::ostream& out, char delimiter) {
    std::vector<std::string> header{report.key_label};
    if (!report.value_labels.empty()) {
        header.insert(header.end(), report.value_labels.begin(), report.value_labels.end());
    } else {
        for (double s : report.s_points) {
            header.push_back("eps(" + format_general(s) + ")");
            if (report.with_eoc) header.push_back("eoc(" + format_general(s) + ")");
        }
    }
    if (report.with_condition) header.push_back("cond");

    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) out << delimiter;
        out << csv_escape(header[i], delimiter);
    }
    out << "\n";

    for (const ReportRow& row : report.rows) {
        std::vector<std::string> fields{std::to_string(row.key)};
        for (std::size_t i = 0; i < row.errors.size(); ++i) {
            fields.push_back(format_scientific(row.errors[i]));
            if (report.with_eoc)
                fields.push_back(i < row.eoc.size() && row.eoc[i] ? format_fixed2(*row.eoc[i])
                                                                  : std::string{});
        }
        if (report.with_condition)
            fields.push_back(row.condition ? format_scientific(*row.condition) : std::string{});
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (i) out << delimiter;
            out << csv_escape(fields[i], delimiter);
        }
        out << "\n";
    }
}

std::filesystem::path emit_report(const ExperimentReport& report,
                                  const std::filesystem::path& out_dir, const std::string& format,
                                  const std::string& suffix) {
    if (format != "csv" && format != "tsv")
        throw Error("unsupported output format: " + format + " (expected csv or tsv)");
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    const std::string name = suffix.empty()
                                 ? report.problem_id + "_" + default_suffix(find_problem(report.problem_id))
                                 : report.problem_id + "_" + suffix;
    const std::filesystem::path path = out_dir / (name + "." + format);
    std::ofstream out(path);
    if (!out) throw IoError("cannot open output file: " + path.string());
    write_report(report, out, format == "csv" ? ',' : '\t');
    if (!out) throw IoError("write failed: " + path.string());
    return path;
}

FigureFiles emit_figure(const std::string& id, const std::filesystem::path& out_dir,
                        std::size_t m, std::vector<unsigned> ells, const RunOptions& options) {
    const ProblemEntry& entry = find_problem(id);
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    FigureFiles files;

    if (entry.figure_kind == FigureKind::SolutionOverlay) {
        const unsigned ell = options.ell.value_or(entry.default_ell);
        std::vector<std::size_t> curves = entry.overlay_m;
        if (curves.empty()) curves = {1024, 8, 32, 128};
        constexpr std::size_t grid_points = 512;

        for (std::size_t curve_m : curves) {
            const NystromSolution<complex<double>> sol =
                solve(entry.equation, shared_operator(curve_m, ell));
            const std::filesystem::path path =
                out_dir / (id + "_solution_m" + std::to_string(curve_m) + ".dat");
            std::ofstream out(path);
            if (!out) throw IoError("cannot open output file: " + path.string());
            out << "# s  f_m(s)" << (entry.complex_valued ? "  Im f_m(s)" : "") << "\n";
            for (std::size_t k = 0; k < grid_points; ++k) {
                const double s = static_cast<double>(k + 1) / (grid_points + 1);
                const complex<double> v = interpolant_at(sol, entry.equation, s);
                char buf[96];
                if (entry.complex_valued)
                    std::snprintf(buf, sizeof buf, "%.10g %.17g %.17g\n", s, v.real(), v.imag());
                else
                    std::snprintf(buf, sizeof buf, "%.10g %.17g\n", s, v.real());
                out << buf;
            }
            files.data_files.push_back(path);
        }

        const std::filesystem::path script = out_dir / (id + "_figure.gp");
        std::ofstream gp(script);
        if (!gp) throw IoError("cannot open output file: " + script.string());
        gp << "set xlabel 's'\nset ylabel 'f_m(s)'\nset key top left\n";
        gp << "plot";
        for (std::size_t i = 0; i < curves.size(); ++i) {
            if (i) gp << ",";
            gp << " '" << files.data_files[i].filename().string() << "' using 1:2 with lines"
               << " title 'm=" << curves[i] << "'";
        }
        gp << "\npause -1\n";
        files.script = script;
        return files;
    }

    // Max-error-vs-ell figure.
    if (m == 0) m = entry.default_sweep_m;
    if (ells.empty()) ells = entry.default_sweep_ells;
    const ExperimentReport sweep = run_max_error_sweep(id, m, ells, 512, options);
    const std::filesystem::path path = out_dir / (id + "_max_error.dat");
    std::ofstream out(path);
    if (!out) throw IoError("cannot open output file: " + path.string());
    out << "# ell  max_eps over 512 points of (0,1), m=" << m << "\n";
    for (const ReportRow& row : sweep.rows)
        out << row.key << " " << format_scientific(row.errors[0]) << "\n";
    files.data_files.push_back(path);

    const std::filesystem::path script = out_dir / (id + "_figure.gp");
    std::ofstream gp(script);
    if (!gp) throw IoError("cannot open output file: " + script.string());
    gp << "set logscale y\nset xlabel 'ell'\nset ylabel 'max error'\n";
    gp << "plot '" << path.filename().string() << "' using 1:2 with linespoints title 'm="
       << m << "'\npause -1\n";
    files.script = script;
    return files;
}

}  // namespace vgb::experiments
