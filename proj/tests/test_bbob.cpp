#include "mabbob/bbob.hpp"
#include "mabbob/errors.hpp"
#include "mabbob/rng.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <Eigen/Dense>

#include <cmath>

using namespace mabbob;
using namespace mabbob::bbob;

namespace {

std::vector<double> random_point(Rng& rng, int dim, double bound = 5.0)
{
    std::vector<double> x(static_cast<std::size_t>(dim));
    for (double& v : x) {
        v = rng.uniform(-bound, bound);
    }
    return x;
}

Eigen::VectorXd as_vec(const std::vector<double>& x)
{
    return Eigen::Map<const Eigen::VectorXd>(x.data(), static_cast<Eigen::Index>(x.size()));
}

} // namespace

TEST_SUITE("bbob") {

TEST_CASE("instances are deterministic")
{
    const Instance a = make_instance(1, 1, 2);
    const Instance b = make_instance(1, 1, 2);
    CHECK(a.x_opt() == b.x_opt());
    CHECK(a.f_opt() == b.f_opt());
    const Instance c = make_instance(1, 2, 2);
    CHECK(a.x_opt() != c.x_opt());
}

TEST_CASE("every function attains f_opt at x_opt and nothing lower")
{
    Rng rng(123);
    for (int dim : {2, 5}) {
        for (int fid = 1; fid <= kNumFunctions; ++fid) {
            for (int iid = 1; iid <= 5; ++iid) {
                CAPTURE(fid);
                CAPTURE(iid);
                CAPTURE(dim);
                const Instance inst = make_instance(fid, iid, dim);
                CHECK(std::abs(inst(inst.x_opt()) - inst.f_opt()) <= 1e-9);
                for (double v : inst.x_opt()) {
                    CHECK(std::abs(v) <= 5.0);
                }
                CHECK(std::abs(inst.f_opt()) <= 1000.0);
                for (int k = 0; k < 200; ++k) {
                    REQUIRE(inst(random_point(rng, dim)) >= inst.f_opt() - 1e-9);
                }
            }
        }
    }
}

TEST_CASE("f_opt is a whole hundredth")
{
    for (int fid = 1; fid <= kNumFunctions; ++fid) {
        const double f = make_instance(fid, 3, 2).f_opt();
        CHECK(std::abs(f * 100.0 - std::round(f * 100.0)) < 1e-9);
    }
}

TEST_CASE("sphere")
{
    const Instance inst = make_instance(1, 1, 5);
    auto x = inst.x_opt();
    CHECK(inst(x) == inst.f_opt());
    x[0] += 1.0;
    CHECK(inst(x) == doctest::Approx(inst.f_opt() + 1.0).epsilon(1e-12));

    Rng rng(1);
    for (int k = 0; k < 50; ++k) {
        const auto y = random_point(rng, 5);
        const double ref = (as_vec(y) - as_vec(inst.x_opt())).squaredNorm() + inst.f_opt();
        CHECK(inst(y) == doctest::Approx(ref).epsilon(1e-12));
    }
}

TEST_CASE("separable ellipsoid")
{
    const int dim = 4;
    const Instance inst = make_instance(2, 1, dim);
    auto e1 = inst.x_opt();
    auto ed = inst.x_opt();
    e1[0] += 1.0;
    ed[dim - 1] += 1.0;
    // osz(1) = 1, so the precisions are exactly the end weights 1 and 10^6.
    CHECK((inst(ed) - inst.f_opt()) / (inst(e1) - inst.f_opt()) == doctest::Approx(1e6).epsilon(1e-9));

    Rng rng(2);
    for (int k = 0; k < 50; ++k) {
        const auto y = random_point(rng, dim);
        double ref = inst.f_opt();
        for (int i = 0; i < dim; ++i) {
            const double z = oracle::osz(y[i] - inst.x_opt()[i]);
            ref += std::pow(10.0, 6.0 * i / (dim - 1)) * z * z;
        }
        CHECK(inst(y) == doctest::Approx(ref).epsilon(1e-10));
    }
}

TEST_CASE("linear slope")
{
    const int dim = 3;
    const Instance inst = make_instance(5, 1, dim);
    for (double v : inst.x_opt()) {
        CHECK(std::abs(v) == 5.0);
    }
    const Instance two = make_instance(5, 1, 2);
    for (double v : two.x_opt()) {
        CHECK(std::abs(v) == 5.0);
    }
    Rng rng(3);
    for (int k = 0; k < 50; ++k) {
        const auto x = random_point(rng, dim, 7.0);
        double ref = inst.f_opt();
        for (int i = 0; i < dim; ++i) {
            const double xo = inst.x_opt()[i];
            const double s = (xo > 0 ? 1.0 : -1.0) * std::pow(10.0, static_cast<double>(i) / (dim - 1));
            const double z = xo * x[i] < 25.0 ? x[i] : xo;
            ref += 5.0 * std::abs(s) - s * z;
        }
        CHECK(inst(x) == doctest::Approx(ref).epsilon(1e-12));
    }
}

TEST_CASE("rotated ellipsoid and bent cigar")
{
    const int dim = 5;
    Rng rng(4);
    const Instance f10 = make_instance(10, 2, dim);
    const Instance f12 = make_instance(12, 2, dim);
    for (int k = 0; k < 50; ++k) {
        const auto x = random_point(rng, dim);
        Eigen::VectorXd z = f10.rotation_R() * (as_vec(x) - as_vec(f10.x_opt()));
        double ref = f10.f_opt();
        for (int i = 0; i < dim; ++i) {
            const double o = oracle::osz(z(i));
            ref += std::pow(10.0, 6.0 * i / (dim - 1)) * o * o;
        }
        CHECK(f10(x) == doctest::Approx(ref).epsilon(1e-10));

        const Eigen::VectorXd r = f12.rotation_R() * (as_vec(x) - as_vec(f12.x_opt()));
        const auto a = oracle::asy(std::vector<double>(r.data(), r.data() + dim), 0.5);
        const Eigen::VectorXd c = f12.rotation_R() * as_vec(a);
        const double bent = c(0) * c(0) + 1e6 * c.tail(dim - 1).squaredNorm() + f12.f_opt();
        CHECK(f12(x) == doctest::Approx(bent).epsilon(1e-10));
    }
}

TEST_CASE("rotations are orthogonal")
{
    for (int dim : {2, 3, 10, 40}) {
        const Eigen::MatrixXd r = random_rotation(99, dim);
        CHECK((r * r.transpose() - Eigen::MatrixXd::Identity(dim, dim)).cwiseAbs().maxCoeff() < 1e-12);
    }
    const Instance inst = make_instance(15, 1, 6);
    CHECK((inst.rotation_Q().transpose() * inst.rotation_Q() - Eigen::MatrixXd::Identity(6, 6))
              .cwiseAbs()
              .maxCoeff() < 1e-12);
}

TEST_CASE("optimum accessor")
{
    const Instance inst = make_instance(1, 1, 2);
    const auto [x, f] = optimum(inst);
    CHECK(x == inst.x_opt());
    CHECK(f == inst.f_opt());
}

TEST_CASE("argument validation")
{
    CHECK_THROWS_AS(make_instance(0, 1, 2), ParameterError);
    CHECK_THROWS_AS(make_instance(25, 1, 2), ParameterError);
    CHECK_THROWS_AS(make_instance(1, 0, 2), ParameterError);
    CHECK_THROWS_AS(make_instance(1, 1, 1), ParameterError);
    const Instance inst = make_instance(3, 1, 3);
    CHECK_THROWS_AS(inst(std::vector<double>{1.0, 2.0}), ParameterError);
    CHECK(function_name(1) == "sphere");
}

TEST_CASE("evaluate_unchecked agrees with the checked call")
{
    Rng rng(5);
    for (int fid = 1; fid <= kNumFunctions; ++fid) {
        const Instance inst = make_instance(fid, 7, 3);
        const auto x = random_point(rng, 3);
        CHECK(inst.evaluate_unchecked(x.data()) == inst(x));
        CHECK(evaluate(inst, x) == inst(x));
    }
}

}
