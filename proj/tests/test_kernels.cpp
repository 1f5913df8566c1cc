#include "pointctl/kernels.hpp"
#include "pointctl/special_functions.hpp"

#include <doctest.h>
#include <omp.h>

#include <cmath>
#include <cstring>
#include <vector>

using namespace pointctl;
namespace ks = pointctl::kernels;

namespace {

bool same_bits(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    return a.rows() == b.rows() && a.cols() == b.cols() &&
           std::memcmp(a.data(), b.data(), sizeof(double) * static_cast<std::size_t>(a.size())) == 0;
}

struct Threads {
    int saved = omp_get_max_threads();
    explicit Threads(int n) { omp_set_num_threads(n); }
    ~Threads() { omp_set_num_threads(saved); }
};

}  // namespace

TEST_CASE("ratio scan: serial and parallel agree with a brute-force oracle") {
    const std::vector<double> z = bessel_zeros(BesselOrder(0.0), 150);
    for (int threads : {1, 3, 8}) {
        Threads t(threads);
        for (auto [target, tol] : {std::pair{std::pow(z[2] / z[9], 4.0 / 3.0), 1e-12}, std::pair{0.5, 1e-9},
                                   std::pair{0.31, 1e-4}}) {
            std::optional<ks::RatioHit> brute;
            for (int n = 2; n <= 150 && !brute; ++n) {
                for (int k = 1; k < n; ++k) {
                    const double d = std::fabs(std::pow(z[k - 1] / z[n - 1], 4.0 / 3.0) - target);
                    if (d <= tol) {
                        brute = ks::RatioHit{k, n, d};
                        break;
                    }
                }
            }
            const auto s = ks::serial::first_ratio_hit(z, 4.0 / 3.0, target, tol);
            const auto p = ks::parallel::first_ratio_hit(z, 4.0 / 3.0, target, tol);
            REQUIRE(s.has_value() == brute.has_value());
            REQUIRE(p.has_value() == brute.has_value());
            if (brute) {
                CHECK(s->k == brute->k);
                CHECK(s->n == brute->n);
                CHECK(p->k == s->k);
                CHECK(p->n == s->n);
                CHECK(p->distance == s->distance);
            }
        }
    }
}

TEST_CASE("tabulate, weighted_gram and map are bit-identical across threads") {
    std::vector<double> xs(513);
    std::vector<double> w(513);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        xs[i] = std::sqrt(static_cast<double>(i) / 512.0);
        w[i] = 1.0 / (1.0 + static_cast<double>(i));
    }
    const auto f = [](int c, double x) { return std::sin((c + 1) * 3.1 * x) * std::exp(-x * c); };
    const Eigen::MatrixXd ref = ks::serial::tabulate(f, 17, xs);
    const Eigen::MatrixXd gref = ks::serial::weighted_gram(ref, w);
    const std::vector<double> mref = ks::serial::map([](int i) { return std::cos(i * 0.37); }, 1000);
    CHECK(ref(100, 3) == f(3, xs[100]));
    Eigen::MatrixXd direct = ref.transpose() * Eigen::Map<const Eigen::VectorXd>(w.data(), 513).asDiagonal() * ref;
    CHECK((direct - gref).cwiseAbs().maxCoeff() < 1e-13);
    for (int threads : {1, 2, 5}) {
        Threads t(threads);
        CHECK(same_bits(ks::parallel::tabulate(f, 17, xs), ref));
        CHECK(same_bits(ks::parallel::weighted_gram(ref, w), gref));
        CHECK(ks::parallel::map([](int i) { return std::cos(i * 0.37); }, 1000) == mref);
    }
}
