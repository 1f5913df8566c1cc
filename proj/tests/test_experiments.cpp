#include "pointctl/errors.hpp"
#include "pointctl/experiments.hpp"

#include <doctest.h>

#include <cmath>
#include <memory>
#include <numbers>

using namespace pointctl;
using std::numbers::pi;

namespace {

const KnotSet kSets[] = {KnotSet::x1, KnotSet::x2, KnotSet::x3};

std::shared_ptr<const QuasiInterpolant> knot_qi(int d, KnotSet ks) {
    return std::make_shared<const QuasiInterpolant>(knot_set_space(d, ks));
}

}  // namespace

TEST_CASE("example setups") {
    const ExampleSetup e1 = example_setup(1);
    CHECK(e1.params.alpha == 0.5);
    CHECK(e1.params.mu == 1.0 / 16.0);
    CHECK(e1.params.b_bar == 0.5);
    CHECK(e1.params.T == 1.0);
    CHECK(e1.degree == 2);
    CHECK(e1.u0(0.25) == doctest::Approx(3.0));
    const ExampleSetup e2 = example_setup(2);
    CHECK(e2.params.alpha == 0.125);
    CHECK(e2.params.mu == 49.0 / 256.0);
    CHECK(e2.degree == 3);
    CHECK(e2.u0(0.5) == doctest::Approx(-std::cos(pi / 4)));
    CHECK(e2.u0(0.0) == doctest::Approx(0.0));
    CHECK(std::fabs(e2.u0(1.0)) < 1e-15);
    CHECK_THROWS_AS((void)example_setup(3), DomainError);
    CHECK(to_string(ControlModel::collocation) == "collocation");
    CHECK(to_string(ControlModel::spectral) == "spectral");
}

TEST_CASE("controlled runs beat free decay on every knot set") {
    for (int id : {1, 2}) {
        const ExampleSetup ex = example_setup(id);
        for (KnotSet ks : kSets) {
            CAPTURE(id);
            CAPTURE(to_string(ks));
            const ControlledComparison cmp = run_controlled_comparison(ex.params, knot_qi(ex.degree, ks), ex.u0, {});
            CHECK(cmp.uncontrolled.times.size() == 51);
            CHECK(cmp.controlled.times.back() == doctest::Approx(1.0));
            CHECK(cmp.control.K == 8);
            CHECK(cmp.control.max_residual() < 1e-6);
            CHECK(cmp.uncontrolled_final.l2 < cmp.initial.l2);
            CHECK(cmp.uncontrolled_final.l2 > 0.0);
            CHECK(cmp.controlled_final.l2 < cmp.uncontrolled_final.l2);
        }
    }
}

TEST_CASE("spectral-model control") {
    const ExampleSetup ex = example_setup(1);
    const ControlSignal h = spectral_control(ex.params, ex.u0, 8);
    CHECK(h.K == 8);
    CHECK(h.max_residual() < 1e-6);
    CHECK(h.time_grid.size() == 2001);
    ComparisonOptions opt;
    opt.model = ControlModel::spectral;
    for (KnotSet ks : kSets) {
        const ControlledComparison cmp = run_controlled_comparison(ex.params, knot_qi(2, ks), ex.u0, opt);
        CHECK(cmp.control.values == h.values);
        CHECK(std::isfinite(cmp.controlled_final.l2));
        CHECK(cmp.controlled_final.l2 < cmp.uncontrolled_final.l2);
    }
}

TEST_CASE("external control") {
    const ExampleSetup ex = example_setup(2);
    const auto qi = knot_qi(3, KnotSet::x1);
    const ControlledComparison zero = run_with_control(ex.params, qi, ex.u0, ControlSignal::zero(1.0, 2000),
                                                       Scheme::crank_nicolson, 1.0 / 50.0);
    for (std::size_t k = 0; k < zero.controlled.states.size(); ++k) {
        CHECK(zero.controlled.states[k] == zero.uncontrolled.states[k]);
    }
    CHECK(zero.controlled_final.l2 == zero.uncontrolled_final.l2);
    CHECK_THROWS_AS((void)run_with_control(ex.params, qi, ex.u0, ControlSignal::zero(2.0, 100),
                                           Scheme::implicit_euler, 0.1),
                    DomainError);
}
