#include "pointctl/experiments.hpp"

#include "pointctl/errors.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace pointctl {

std::string_view to_string(ControlModel m) noexcept {
    return m == ControlModel::collocation ? "collocation" : "spectral";
}

ExampleSetup example_setup(int id) {
    using std::numbers::pi;
    if (id == 1) {
        return {1, ProblemParams{0.5, 1.0 / 16.0, 0.5, 1.0}, 2, [](double x) { return 3.0 * std::sin(2.0 * pi * x); }};
    }
    if (id == 2) {
        return {2, ProblemParams{0.125, 49.0 / 256.0, 0.5, 1.0}, 3,
                [](double x) { return std::sin(3.0 * pi * x) * std::cos(0.5 * pi * (1.0 - x)); }};
    }
    throw DomainError("example id must be 1 or 2");
}

ControlSignal spectral_control(const ProblemParams& params, const std::function<double(double)>& u0, int K, int M) {
    params.validate();
    const SpectralBasis basis(params.alpha, params.mu, K);
    const CoefficientVector c = expand_initial_data(basis, u0);
    const BiorthogonalFamily fam = biorthogonal_family(basis.eigenvalues(), params.T);
    return synthesize_control(basis, fam, c.coeffs, params.b_bar, M);
}

namespace {

std::vector<double> sample(const QuasiInterpolant& qi, const std::function<double(double)>& f) {
    std::vector<double> s;
    s.reserve(qi.sites().size());
    for (double x : qi.sites()) s.push_back(f(x));
    return s;
}

ControlledComparison finish(CollocationSystem system, ControlSignal control, const std::vector<double>& samples,
                            Scheme scheme, double dt) {
    Trajectory un = simulate(system, samples, nullptr, scheme, dt);
    Trajectory co = simulate(system, samples, &control, scheme, dt);
    ControlledComparison out{std::move(system), std::move(control), std::move(un), std::move(co), {}, {}, {}};
    out.initial = grid_norms([&](double x) { return out.uncontrolled.eval(0, x); });
    out.uncontrolled_final = final_norms(out.uncontrolled);
    out.controlled_final = final_norms(out.controlled);
    return out;
}

}  // namespace

ControlledComparison run_controlled_comparison(const ProblemParams& params, std::shared_ptr<const QuasiInterpolant> qi,
                                               const std::function<double(double)>& u0,
                                               const ComparisonOptions& options) {
    CollocationSystem system = assemble(params, qi);
    const std::vector<double> samples = sample(*qi, u0);
    ControlSignal h = options.model == ControlModel::collocation
                          ? synthesize_collocation_control(system, samples, options.K, options.M)
                          : spectral_control(params, u0, options.K, options.M);
    return finish(std::move(system), std::move(h), samples, options.scheme, options.dt);
}

ControlledComparison run_with_control(const ProblemParams& params, std::shared_ptr<const QuasiInterpolant> qi,
                                      const std::function<double(double)>& u0, ControlSignal control, Scheme scheme,
                                      double dt) {
    CollocationSystem system = assemble(params, qi);
    return finish(std::move(system), std::move(control), sample(*qi, u0), scheme, dt);
}

}  // namespace pointctl
