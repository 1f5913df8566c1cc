#pragma once

#include "pointctl/collocation.hpp"

#include <functional>
#include <memory>
#include <string_view>

namespace pointctl {

/// Which eigen-system the moment method is posed on when a controlled run
/// synthesizes its own control.
enum class ControlModel { collocation, spectral };

[[nodiscard]] std::string_view to_string(ControlModel m) noexcept;

/// The two worked examples: 1 is (1/2, 1/16), d = 2, u0 = 3 sin(2 pi x);
/// 2 is (1/8, 49/256), d = 3, u0 = sin(3 pi x) cos(pi (1 - x) / 2). Both at b = 1/2, T = 1.
struct ExampleSetup {
    int id = 1;
    ProblemParams params;
    int degree = 2;
    std::function<double(double)> u0;
};

[[nodiscard]] ExampleSetup example_setup(int id);

struct ComparisonOptions {
    int K = 8;
    Scheme scheme = Scheme::implicit_euler;
    double dt = 1.0 / 50.0;
    ControlModel model = ControlModel::collocation;
    int M = 2000;
};

struct ControlledComparison {
    CollocationSystem system;
    ControlSignal control;
    Trajectory uncontrolled;
    Trajectory controlled;
    Norms initial;
    Norms uncontrolled_final;
    Norms controlled_final;
};

/// Synthesizes h for the chosen model and runs the collocation simulator with
/// and without it from the same samples of u0.
[[nodiscard]] ControlledComparison run_controlled_comparison(const ProblemParams& params,
                                                             std::shared_ptr<const QuasiInterpolant> qi,
                                                             const std::function<double(double)>& u0,
                                                             const ComparisonOptions& options);

/// Same, for an externally supplied control.
[[nodiscard]] ControlledComparison run_with_control(const ProblemParams& params,
                                                    std::shared_ptr<const QuasiInterpolant> qi,
                                                    const std::function<double(double)>& u0, ControlSignal control,
                                                    Scheme scheme, double dt);

/// Spectral-model control: expands u0 in K exact modes and solves their moment problem.
[[nodiscard]] ControlSignal spectral_control(const ProblemParams& params, const std::function<double(double)>& u0,
                                             int K, int M = 2000);

}  // namespace pointctl
