// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "vgb/nystrom.hpp"
#include "vgb/volterra.hpp"

namespace vgb::experiments {

enum class ProblemKind { Quadrature, Equation };
enum class ReferenceMode { ClosedForm, ReferenceRun };
enum class FigureKind { MaxErrorVsEll, SolutionOverlay };

/// A registered experiment: either a quadrature-only integral (the operator
/// error e_m(s) = |Vf(s) - V_m f(s)| is tabulated) or a full second-kind
/// equation (solution errors and cond of the collocation matrix are
/// tabulated). Defaults mirror the shape of the corresponding result table.
struct ProblemEntry {
    std::string id;
    std::string description;
    std::string table_label;
    ProblemKind kind = ProblemKind::Equation;
    bool complex_valued = false;

    // Equation problems are carried in complex arithmetic throughout; real
    // problems simply have zero imaginary parts, which complex arithmetic
    // preserves exactly.
    VolterraProblem<std::complex<double>> equation{};

    // Quadrature-only pieces.
    std::function<double(double, double)> quad_kernel;  // k(t, s)
    std::function<double(double)> quad_f;               // f(t)
    std::optional<VolterraWeights> quad_weights;

    // Independent reference Vf(s) (closed form or high-accuracy quadrature);
    // null for problems using the m=1024 reference-run protocol.
    std::function<double(double)> reference_value;
    ReferenceMode reference_mode = ReferenceMode::ReferenceRun;

    std::vector<std::size_t> default_m;
    unsigned default_ell = 256;
    std::vector<double> default_s;
    std::size_t default_sweep_m = 0;
    std::vector<unsigned> default_sweep_ells;
    bool show_eoc = false;
    FigureKind figure_kind = FigureKind::MaxErrorVsEll;
    std::vector<std::size_t> overlay_m;  // solution-overlay figure curves
};

/// The built-in registry (six problems). Custom problems may be added
/// through register_problem; ids must stay unique.
[[nodiscard]] const std::vector<ProblemEntry>& registry();
void register_problem(ProblemEntry entry);
[[nodiscard]] const ProblemEntry& find_problem(const std::string& id);

/// Reference protocol: closed form when available, otherwise the
/// approximant with m = m_ref, l = ell_ref taken as exact.
struct ReferencePolicy {
    enum class Mode { Auto, ClosedFormOnly };
    Mode mode = Mode::Auto;
    std::size_t m_ref = 1024;
    unsigned ell_ref = 256;
};

struct RunOptions {
    std::vector<std::size_t> m_list;  // empty -> problem defaults
    std::optional<unsigned> ell;
    std::vector<double> s_list;  // empty -> problem defaults
    ReferencePolicy reference;
    std::filesystem::path cache_dir;  // empty -> $VGB_CACHE_DIR or ./.vgb-cache
};

struct ReportRow {
    std::size_t key = 0;  // m for tables, l for ell sweeps
    std::vector<double> errors;
    std::vector<std::optional<double>> eoc;
    std::optional<double> condition;
};

struct ExperimentReport {
    std::string problem_id;
    std::string key_label = "m";
    unsigned ell = 0;        // fixed l (tables, figure sweeps)
    std::size_t fixed_m = 0; // fixed m (ell sweeps)
    std::vector<double> s_points;
    std::vector<std::string> value_labels;  // column names; default eps(s)
    bool with_eoc = false;
    bool with_condition = false;
    std::vector<ReportRow> rows;
    std::string reference_mode;
    std::string timestamp;  // metadata only; never emitted into CSV bodies
};

/// Estimated order of convergence log2(e_m / e_2m); empty when either error
/// is zero or negative.
[[nodiscard]] std::optional<double> compute_eoc(double error_m, double error_2m);

/// Error/EOC/cond table over the m-list at fixed l (result-table layout).
[[nodiscard]] ExperimentReport run_table(const std::string& id, const RunOptions& options = {});

/// Errors at fixed m for a list of l values.
[[nodiscard]] ExperimentReport run_ell_sweep(const std::string& id, std::size_t m,
                                             std::vector<unsigned> ells,
                                             const RunOptions& options = {});

/// Maximum absolute error over `grid_points` equispaced points of (0,1) at
/// fixed m, per l value (the figure-mode sweep).
[[nodiscard]] ExperimentReport run_max_error_sweep(const std::string& id, std::size_t m,
                                                   std::vector<unsigned> ells,
                                                   std::size_t grid_points = 512,
                                                   const RunOptions& options = {});

/// Write the report body (header + one row per key). Errors and condition
/// numbers use %.2e, EOC uses %.2f, fields joined by `delimiter`.
void write_report(const ExperimentReport& report, std::ostream& out, char delimiter);

/// Emit the report as <id>_<suffix>.csv/.tsv under out_dir; returns the path.
[[nodiscard]] std::filesystem::path emit_report(const ExperimentReport& report,
                                                const std::filesystem::path& out_dir,
                                                const std::string& format,
                                                const std::string& suffix);

struct FigureFiles {
    std::vector<std::filesystem::path> data_files;
    std::filesystem::path script;
};

/// Figure artifacts: for ex5_1 a max-error-vs-l data file, for ex5_3 the
/// solution overlay data files (m = 1024, 8, 32, 128); both with a gnuplot
/// script. Other ids get the max-error sweep treatment.
[[nodiscard]] FigureFiles emit_figure(const std::string& id, const std::filesystem::path& out_dir,
                                      std::size_t m, std::vector<unsigned> ells,
                                      const RunOptions& options = {});

/// Process-wide pool of GB operators keyed by (m, l); reference runs and
/// sweeps share the expensive C_{m,l} builds.
[[nodiscard]] std::shared_ptr<const GBOperator> shared_operator(std::size_t degree,
                                                                unsigned iterations);

/// Evaluates the reference solution f*(s) for a problem: the closed form
/// when available and allowed, otherwise the cached (m_ref, ell_ref)
/// reference run. Disk cache entries are keyed by problem id, m_ref,
/// ell_ref and the library version.
class ReferenceEvaluator {
public:
    ReferenceEvaluator(const ProblemEntry& entry, ReferencePolicy policy,
                       std::filesystem::path cache_dir);
    ~ReferenceEvaluator();

    [[nodiscard]] std::complex<double> value_at(double s);
    [[nodiscard]] std::string mode_string() const;

private:
    void ensure_solution();
    void load_cache();
    void store_cache() const;

    const ProblemEntry& entry_;
    ReferencePolicy policy_;
    std::filesystem::path cache_file_;
    bool use_closed_form_ = false;
    bool dirty_ = false;
    std::vector<std::pair<double, std::complex<double>>> cached_values_;
    std::unique_ptr<NystromSolution<std::complex<double>>> solution_;
};

/// Cache directory resolution: explicit option, else $VGB_CACHE_DIR, else
/// ./.vgb-cache.
[[nodiscard]] std::filesystem::path resolve_cache_dir(const std::filesystem::path& requested);

}  // namespace vgb::experiments
