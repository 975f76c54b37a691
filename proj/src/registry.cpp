// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <complex>
#include <mutex>

#include "vgb/experiments.hpp"
#include "vgb/tanh_sinh.hpp"

namespace vgb::experiments {

namespace {

using std::complex;

// Vf(s) = s^{alpha+beta+1} int_0^1 k(sz, s) f(sz) (1-z)^alpha z^beta dz,
// evaluated by tanh-sinh quadrature at ~1e-13 relative accuracy.
template <typename G>
double weighted_reference(double s, double alpha, double beta, G&& integrand) {
    if (s == 0.0) return 0.0;
    const double value = tanh_sinh_01([&](double z, double omz) {
        return integrand(z, omz) * std::pow(omz, alpha) * std::pow(z, beta);
    });
    return std::pow(s, alpha + beta + 1.0) * value;
}

ProblemEntry make_ex3_1() {
    ProblemEntry e;
    e.id = "ex3_1";
    e.description = "V f(s) = int_0^s sin(st) (s-t)^{1/4} t^{1/4} dt, f = 1";
    e.table_label = "operator errors, smooth kernel, alpha = beta = 1/4";
    e.kind = ProblemKind::Quadrature;
    e.quad_kernel = [](double t, double s) { return std::sin(s * t); };
    e.quad_f = [](double) { return 1.0; };
    e.quad_weights = VolterraWeights(0.25, 0.25);
    e.reference_value = [](double s) {
        return weighted_reference(s, 0.25, 0.25,
                                  [s](double z, double) { return std::sin(s * s * z); });
    };
    e.reference_mode = ReferenceMode::ClosedForm;
    e.default_m = {4, 8, 16};
    e.default_s = {0.3, 0.6, 0.8};
    e.default_sweep_m = 64;
    e.default_sweep_ells = {4, 8, 16};
    return e;
}

ProblemEntry make_ex3_2() {
    ProblemEntry e;
    e.id = "ex3_2";
    e.description = "V f(s) = int_0^s e^{(s-t)^{3/2}} (s-t)^{1/2} dt, f = 1";
    e.table_label = "operator errors, kernel with (s-t)^{3/2} term, alpha = 1/2, beta = 0";
    e.kind = ProblemKind::Quadrature;
    e.quad_kernel = [](double t, double s) { return std::exp(std::pow(std::abs(s - t), 1.5)); };
    e.quad_f = [](double) { return 1.0; };
    e.quad_weights = VolterraWeights(0.5, 0.0);
    e.reference_value = [](double s) {
        return weighted_reference(s, 0.5, 0.0, [s](double, double omz) {
            return std::exp(std::pow(s * omz, 1.5));
        });
    };
    e.reference_mode = ReferenceMode::ClosedForm;
    e.default_m = {4, 8, 16, 32, 64, 128, 256, 512, 1024};
    e.default_s = {0.2, 0.5, 0.7};
    e.default_sweep_m = 512;
    e.default_sweep_ells = {4, 8, 16, 32, 64, 128, 256, 512, 1024, 2048, 4096};
    return e;
}

ProblemEntry make_ex5_1() {
    ProblemEntry e;
    e.id = "ex5_1";
    e.description =
        "f(s) + 1/2 int_0^s log(t+s+2) f(t) sqrt(t) dt = cos(s)/(s^2+2)";
    e.table_label = "smooth kernel and rhs, alpha = 0, beta = 1/2";
    e.kind = ProblemKind::Equation;
    e.equation.kernel = [](double t, double s) -> complex<double> {
        return std::log(t + s + 2.0);
    };
    e.equation.rhs = [](double s) -> complex<double> { return std::cos(s) / (s * s + 2.0); };
    e.equation.mu = 0.5;
    e.equation.weights = VolterraWeights(0.0, 0.5);
    e.default_m = {4, 8, 16, 32, 64, 128, 256, 512};
    e.default_s = {0.1, 0.3, 0.8};
    e.default_sweep_m = 64;
    e.default_sweep_ells = {1, 2, 4, 8, 16, 32, 64, 128, 256};
    e.figure_kind = FigureKind::MaxErrorVsEll;
    return e;
}

ProblemEntry make_ex5_2() {
    ProblemEntry e;
    e.id = "ex5_2";
    e.description = "f(s) + int_0^s (t sin s)^{3/2} f(t) dt = s^2 + 3 tanh(2s)";
    e.table_label = "kernel of limited smoothness, EOC columns";
    e.kind = ProblemKind::Equation;
    e.equation.kernel = [](double t, double s) -> complex<double> {
        return std::pow(t * std::sin(s), 1.5);
    };
    e.equation.rhs = [](double s) -> complex<double> {
        return s * s + 3.0 * std::tanh(2.0 * s);
    };
    e.equation.mu = 1.0;
    e.equation.weights = VolterraWeights(0.0, 0.0);
    e.default_m = {4, 8, 16, 32, 64, 128, 256, 512};
    e.default_s = {0.4, 0.7, 0.99};
    e.default_sweep_m = 64;
    e.default_sweep_ells = {1, 2, 4, 8, 16, 32, 64, 128, 256};
    e.show_eoc = true;
    return e;
}

ProblemEntry make_ex5_3() {
    ProblemEntry e;
    e.id = "ex5_3";
    e.description =
        "f(s) + 2 int_0^s (t+s+2) f(t) ((s-t) t)^{1/3} dt = s^{5/2}";
    e.table_label = "low-smoothness rhs, alpha = beta = 1/3";
    e.kind = ProblemKind::Equation;
    e.equation.kernel = [](double t, double s) -> complex<double> { return t + s + 2.0; };
    e.equation.rhs = [](double s) -> complex<double> { return std::pow(s, 2.5); };
    e.equation.mu = 2.0;
    e.equation.weights = VolterraWeights(1.0 / 3.0, 1.0 / 3.0);
    e.default_m = {4, 8, 16, 32, 64, 128, 256, 512};
    e.default_s = {0.01, 0.5, 0.99};
    e.default_sweep_m = 64;
    e.default_sweep_ells = {1, 2, 4, 8, 16, 32, 64, 128, 256};
    e.figure_kind = FigureKind::SolutionOverlay;
    e.overlay_m = {1024, 8, 32, 128};
    return e;
}

ProblemEntry make_ex5_4() {
    ProblemEntry e;
    const double omega = 10.0;
    e.id = "ex5_4";
    e.description =
        "f(s) - 1/(2 i w^2) int_0^s (e^{2 i w (s-t)} - 1) f(t) dt = 1,  w = 10 "
        "(KdV square-well scattering, q0 = 1)";
    e.table_label = "complex-valued scattering equation";
    e.kind = ProblemKind::Equation;
    e.complex_valued = true;
    e.equation.kernel = [omega](double t, double s) -> complex<double> {
        return std::exp(complex<double>(0.0, 2.0 * omega * (s - t))) - 1.0;
    };
    e.equation.rhs = [](double) -> complex<double> { return 1.0; };
    e.equation.mu = complex<double>(0.0, 1.0 / (2.0 * omega * omega));  // -1/(2 i w^2)
    e.equation.weights = VolterraWeights(0.0, 0.0);
    e.default_m = {4, 8, 16, 32, 64, 128};
    e.default_s = {0.01, 0.5, 0.99};
    e.default_sweep_m = 64;
    e.default_sweep_ells = {1, 2, 4, 8, 16, 32, 64, 128, 256};
    return e;
}

std::vector<ProblemEntry>& mutable_registry() {
    static std::vector<ProblemEntry> entries = [] {
        std::vector<ProblemEntry> v;
        v.push_back(make_ex3_1());
        v.push_back(make_ex3_2());
        v.push_back(make_ex5_1());
        v.push_back(make_ex5_2());
        v.push_back(make_ex5_3());
        v.push_back(make_ex5_4());
        return v;
    }();
    return entries;
}

std::mutex& registry_mutex() {
    static std::mutex m;
    return m;
}

}  // namespace

const std::vector<ProblemEntry>& registry() { return mutable_registry(); }

void register_problem(ProblemEntry entry) {
    std::lock_guard lock(registry_mutex());
    if (entry.id.empty()) throw Error("problem id must be nonempty");
    for (const ProblemEntry& e : mutable_registry())
        if (e.id == entry.id) throw Error("problem id already registered: " + entry.id);
    if (entry.kind == ProblemKind::Quadrature) {
        if (!entry.quad_kernel || !entry.quad_f || !entry.quad_weights || !entry.reference_value)
            throw Error("quadrature problem '" + entry.id +
                        "' needs kernel, integrand, weights, and a reference value");
    } else if (!entry.equation.kernel || !entry.equation.rhs) {
        throw Error("equation problem '" + entry.id + "' needs kernel and rhs");
    }
    mutable_registry().push_back(std::move(entry));
}

const ProblemEntry& find_problem(const std::string& id) {
    for (const ProblemEntry& e : registry())
        if (e.id == id) return e;
    throw UnknownProblem("unknown problem id: " + id);
}

}  // namespace vgb::experiments
