#include "mabbob/bbob.hpp"

#include "mabbob/errors.hpp"
#include "mabbob/rng.hpp"
#include "mabbob/transforms.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <numeric>

namespace mabbob::bbob {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Sub-stream indices under instance_seed().
enum Stream : std::uint64_t { kXopt = 0, kFopt = 1, kRotR = 2, kRotQ = 3, kAux = 4 };

constexpr std::array<std::string_view, kNumFunctions> kNames{
    "sphere",
    "ellipsoid_separable",
    "rastrigin_separable",
    "bueche_rastrigin",
    "linear_slope",
    "attractive_sector",
    "step_ellipsoid",
    "rosenbrock",
    "rosenbrock_rotated",
    "ellipsoid",
    "discus",
    "bent_cigar",
    "sharp_ridge",
    "different_powers",
    "rastrigin",
    "weierstrass",
    "schaffers10",
    "schaffers1000",
    "griewank_rosenbrock",
    "schwefel",
    "gallagher101",
    "gallagher21",
    "katsuura",
    "lunacek_bi_rastrigin",
};

// Optimum offset of the Schwefel x*sin(x) function.
constexpr double kSchwefelXopt = 4.2096874633;
constexpr double kSchwefelOffset = 4.189828872724339;
// Lunacek bi-Rastrigin constants.
constexpr double kLunacekMu0 = 2.5;

struct Scratch {
    std::vector<double> a, b, c;
    void ensure(int n)
    {
        if (static_cast<int>(a.size()) < n) {
            a.resize(n);
            b.resize(n);
            c.resize(n);
        }
    }
};

thread_local Scratch scratch;

inline void apply(const Eigen::MatrixXd& m, const double* in, double* out, int n)
{
    Eigen::Map<Eigen::VectorXd>(out, n).noalias() = m * Eigen::Map<const Eigen::VectorXd>(in, n);
}

inline double sum_sq(const double* v, int n)
{
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
        s += v[i] * v[i];
    }
    return s;
}

inline double rastrigin(const double* z, int n)
{
    double cos_sum = 0.0;
    for (int i = 0; i < n; ++i) {
        cos_sum += std::cos(kTwoPi * z[i]);
    }
    return 10.0 * (n - cos_sum) + sum_sq(z, n);
}

inline double rosenbrock(const double* z, int n)
{
    double s = 0.0;
    for (int i = 0; i + 1 < n; ++i) {
        const double t = z[i] * z[i] - z[i + 1];
        s += 100.0 * t * t + (z[i] - 1.0) * (z[i] - 1.0);
    }
    return s;
}

inline double weierstrass_term(double z)
{
    double s = 0.0;
    double amp = 1.0;
    double freq = 1.0;
    for (int k = 0; k < 12; ++k) {
        s += amp * std::cos(kTwoPi * freq * (z + 0.5));
        amp *= 0.5;
        freq *= 3.0;
    }
    return s;
}

inline double rosenbrock_factor(int n)
{
    return std::max(1.0, std::sqrt(static_cast<double>(n)) / 8.0);
}

std::vector<double> uniform_vector(Rng& rng, int n, double lo, double hi)
{
    std::vector<double> v(static_cast<std::size_t>(n));
    for (double& e : v) {
        e = rng.uniform(lo, hi);
    }
    return v;
}

std::vector<double> sign_vector(Rng& rng, int n)
{
    std::vector<double> v(static_cast<std::size_t>(n));
    for (double& e : v) {
        e = rng.uniform() < 0.5 ? -1.0 : 1.0;
    }
    return v;
}

template <typename T>
void shuffle(std::vector<T>& v, Rng& rng)
{
    for (std::size_t i = v.size(); i > 1; --i) {
        const auto j = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(i) - 1));
        std::swap(v[i - 1], v[j]);
    }
}

// f_opt: ratio of two normals (Cauchy-distributed), scaled by 100, rounded
// to two decimals and clamped to [-1000, 1000].
double draw_f_opt(Rng& rng)
{
    const double num = rng.normal();
    double den = rng.normal();
    while (den == 0.0) {
        den = rng.normal();
    }
    const double raw = std::round(100.0 * 100.0 * num / den) / 100.0;
    return std::clamp(raw, -1000.0, 1000.0);
}

bool uses_rotation_r(int fid)
{
    return fid >= 6 && fid != 8;
}

bool uses_rotation_q(int fid)
{
    switch (fid) {
    case 6: case 7: case 13: case 15: case 16: case 17: case 18: case 23: case 24:
        return true;
    default:
        return false;
    }
}

} // namespace

std::string_view function_name(int fid)
{
    if (fid < 1 || fid > kNumFunctions) {
        throw ParameterError("fid", "must be in 1..24, got " + std::to_string(fid));
    }
    return kNames[static_cast<std::size_t>(fid - 1)];
}

std::uint64_t instance_seed(int fid, int iid) noexcept
{
    return mix64((static_cast<std::uint64_t>(fid) << 32) | static_cast<std::uint32_t>(iid));
}

Eigen::MatrixXd random_rotation(std::uint64_t seed, int dim)
{
    Rng rng(seed);
    Eigen::MatrixXd m(dim, dim);
    for (int j = 0; j < dim; ++j) {
        for (int i = 0; i < dim; ++i) {
            m(i, j) = rng.normal();
        }
    }
    for (int j = 0; j < dim; ++j) {
        for (int pass = 0; pass < 2; ++pass) {
            for (int k = 0; k < j; ++k) {
                m.col(j) -= m.col(k).dot(m.col(j)) * m.col(k);
            }
        }
        m.col(j).normalize();
    }
    return m;
}

Instance make_instance(int fid, int iid, int dim)
{
    if (fid < 1 || fid > kNumFunctions) {
        throw ParameterError("fid", "must be in 1..24, got " + std::to_string(fid));
    }
    if (iid < 1) {
        throw ParameterError("iid", "must be >= 1, got " + std::to_string(iid));
    }
    if (dim < 2) {
        throw ParameterError("dim", "must be >= 2, got " + std::to_string(dim));
    }

    Instance inst;
    inst.fid_ = fid;
    inst.iid_ = iid;
    inst.dim_ = dim;
    const std::size_t n = static_cast<std::size_t>(dim);
    const double nm1 = static_cast<double>(dim - 1);
    const std::uint64_t base = instance_seed(fid, iid);

    {
        Rng rng(derive_seed(base, kFopt));
        inst.f_opt_ = draw_f_opt(rng);
    }
    inst.rot_r_ = uses_rotation_r(fid) ? random_rotation(derive_seed(base, kRotR), dim)
                                       : Eigen::MatrixXd::Identity(dim, dim);
    inst.rot_q_ = uses_rotation_q(fid) ? random_rotation(derive_seed(base, kRotQ), dim)
                                       : Eigen::MatrixXd::Identity(dim, dim);

    Rng xrng(derive_seed(base, kXopt));
    Rng aux(derive_seed(base, kAux));

    auto ramp_powers = [&](double lo, double span, bool exp10) {
        std::vector<double> p(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double e = lo + span * static_cast<double>(i) / nm1;
            p[i] = exp10 ? std::pow(10.0, e) : e;
        }
        return p;
    };

    switch (fid) {
    case 5: {
        inst.x_opt_.resize(n);
        inst.powers_.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            inst.x_opt_[i] = xrng.uniform() < 0.5 ? -5.0 : 5.0;
            inst.powers_[i] = std::copysign(std::pow(10.0, static_cast<double>(i) / nm1), inst.x_opt_[i]);
        }
        break;
    }
    case 8: {
        inst.x_opt_ = uniform_vector(xrng, dim, -3.0, 3.0);
        break;
    }
    case 9:
    case 19: {
        // z = c R x + 1/2 is minimal at z = 1.
        const double c = rosenbrock_factor(dim);
        const Eigen::VectorXd target = Eigen::VectorXd::Constant(dim, 0.5 / c);
        const Eigen::VectorXd xo = inst.rot_r_.transpose() * target;
        inst.x_opt_.assign(xo.data(), xo.data() + dim);
        break;
    }
    case 20: {
        inst.signs_ = sign_vector(xrng, dim);
        inst.x_opt_.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            inst.x_opt_[i] = 0.5 * kSchwefelXopt * inst.signs_[i];
        }
        break;
    }
    case 21:
    case 22: {
        const bool many = fid == 21;
        const int peaks = many ? 101 : 21;
        const double y0_range = many ? 4.0 : 3.92;
        const double first_alpha = many ? 1000.0 : 1.0e6;
        const double last = static_cast<double>(peaks - 2);

        inst.x_opt_ = uniform_vector(xrng, dim, -y0_range, y0_range);

        std::vector<int> order(static_cast<std::size_t>(peaks - 1));
        std::iota(order.begin(), order.end(), 0);
        shuffle(order, aux);

        inst.peaks_.rotated_centers.resize(dim, peaks);
        inst.peaks_.scales.resize(dim, peaks);
        inst.peaks_.heights.resize(static_cast<std::size_t>(peaks));
        for (int k = 0; k < peaks; ++k) {
            std::vector<double> y = k == 0 ? inst.x_opt_ : uniform_vector(aux, dim, -4.9, 4.9);
            const double alpha = k == 0 ? first_alpha : std::pow(1000.0, 2.0 * order[k - 1] / (peaks - 1.0));
            inst.peaks_.heights[k] = k == 0 ? 10.0 : 1.1 + 8.0 * (k - 1) / last;
            std::vector<double> diag = lambda_alpha(alpha, dim);
            shuffle(diag, aux);
            const double norm = std::pow(alpha, 0.25);
            for (int i = 0; i < dim; ++i) {
                inst.peaks_.scales(i, k) = diag[i] / norm;
            }
            inst.peaks_.rotated_centers.col(k) = inst.rot_r_ * Eigen::Map<const Eigen::VectorXd>(y.data(), dim);
        }
        break;
    }
    case 24: {
        inst.signs_ = sign_vector(xrng, dim);
        inst.x_opt_.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            inst.x_opt_[i] = 0.5 * kLunacekMu0 * inst.signs_[i];
        }
        break;
    }
    default: {
        inst.x_opt_ = uniform_vector(xrng, dim, -4.0, 4.0);
        if (fid == 4) {
            // Coordinates that receive the asymmetric factor sit on the
            // positive side.
            for (std::size_t i = 0; i < n; i += 2) {
                inst.x_opt_[i] = std::abs(inst.x_opt_[i]);
            }
        }
        break;
    }
    }

    switch (fid) {
    case 2:
    case 10:
        inst.powers_ = ramp_powers(0.0, 6.0, true);
        break;
    case 4:
        inst.powers_ = ramp_powers(0.0, 0.5, true);
        break;
    case 7:
        inst.powers_ = ramp_powers(0.0, 2.0, true);
        inst.cond_ = lambda_alpha(10.0, dim);
        break;
    case 14:
        inst.powers_ = ramp_powers(2.0, 4.0, false);
        break;
    case 3: case 6: case 13: case 15: case 17: case 20:
        inst.cond_ = lambda_alpha(10.0, dim);
        break;
    case 16:
        inst.cond_ = lambda_alpha(0.01, dim);
        break;
    case 18:
        inst.cond_ = lambda_alpha(1000.0, dim);
        break;
    case 23:
    case 24:
        inst.cond_ = lambda_alpha(100.0, dim);
        break;
    default:
        break;
    }
    return inst;
}

double Instance::operator()(std::span<const double> x) const
{
    if (static_cast<int>(x.size()) != dim_) {
        throw ParameterError("x", "expected length " + std::to_string(dim_) + ", got " + std::to_string(x.size()));
    }
    return evaluate_unchecked(x.data());
}

double evaluate(const Instance& inst, std::span<const double> x)
{
    return inst(x);
}

std::pair<std::vector<double>, double> optimum(const Instance& inst)
{
    return {inst.x_opt(), inst.f_opt()};
}

double Instance::evaluate_unchecked(const double* x) const
{
    const int n = dim_;
    scratch.ensure(n);
    double* a = scratch.a.data();
    double* b = scratch.b.data();
    double* c = scratch.c.data();
    const double* xo = x_opt_.data();
    const std::span<const double> xs(x, static_cast<std::size_t>(n));

    auto shift = [&](double* out) {
        for (int i = 0; i < n; ++i) {
            out[i] = x[i] - xo[i];
        }
    };
    auto scale = [&](double* v) {
        for (int i = 0; i < n; ++i) {
            v[i] *= cond_[i];
        }
    };
    auto span_of = [n](double* v) { return std::span<double>(v, static_cast<std::size_t>(n)); };

    double f = 0.0;
    switch (fid_) {
    case 1:
        shift(a);
        f = sum_sq(a, n);
        break;
    case 2:
        shift(a);
        transform_osz_inplace(span_of(a));
        for (int i = 0; i < n; ++i) {
            f += powers_[i] * a[i] * a[i];
        }
        break;
    case 3:
        shift(a);
        transform_osz_inplace(span_of(a));
        transform_asy_inplace(span_of(a), 0.2);
        scale(a);
        f = rastrigin(a, n);
        break;
    case 4:
        shift(a);
        transform_osz_inplace(span_of(a));
        for (int i = 0; i < n; ++i) {
            const double s = (i % 2 == 0 && a[i] > 0.0) ? 10.0 * powers_[i] : powers_[i];
            a[i] *= s;
        }
        f = rastrigin(a, n) + 100.0 * f_pen(xs);
        break;
    case 5:
        for (int i = 0; i < n; ++i) {
            const double z = x[i] * xo[i] < 25.0 ? x[i] : xo[i];
            f += 5.0 * std::abs(powers_[i]) - powers_[i] * z;
        }
        break;
    case 6: {
        shift(a);
        apply(rot_r_, a, b, n);
        scale(b);
        apply(rot_q_, b, a, n);
        double s = 0.0;
        for (int i = 0; i < n; ++i) {
            const double t = a[i] * xo[i] > 0.0 ? 100.0 * a[i] : a[i];
            s += t * t;
        }
        f = std::pow(transform_osz(s), 0.9);
        break;
    }
    case 7: {
        shift(a);
        apply(rot_r_, a, b, n);
        scale(b);
        for (int i = 0; i < n; ++i) {
            c[i] = std::abs(b[i]) > 0.5 ? std::floor(0.5 + b[i]) : std::floor(0.5 + 10.0 * b[i]) / 10.0;
        }
        apply(rot_q_, c, a, n);
        double s = 0.0;
        for (int i = 0; i < n; ++i) {
            s += powers_[i] * a[i] * a[i];
        }
        f = 0.1 * std::max(std::abs(b[0]) / 1.0e4, s) + f_pen(xs);
        break;
    }
    case 8: {
        const double k = rosenbrock_factor(n);
        for (int i = 0; i < n; ++i) {
            a[i] = k * (x[i] - xo[i]) + 1.0;
        }
        f = rosenbrock(a, n);
        break;
    }
    case 9: {
        const double k = rosenbrock_factor(n);
        apply(rot_r_, x, a, n);
        for (int i = 0; i < n; ++i) {
            a[i] = k * a[i] + 0.5;
        }
        f = rosenbrock(a, n);
        break;
    }
    case 10:
        shift(a);
        apply(rot_r_, a, b, n);
        transform_osz_inplace(span_of(b));
        for (int i = 0; i < n; ++i) {
            f += powers_[i] * b[i] * b[i];
        }
        break;
    case 11:
        shift(a);
        apply(rot_r_, a, b, n);
        transform_osz_inplace(span_of(b));
        f = 1.0e6 * b[0] * b[0] + (sum_sq(b, n) - b[0] * b[0]);
        break;
    case 12: {
        shift(a);
        apply(rot_r_, a, b, n);
        transform_asy_inplace(span_of(b), 0.5);
        apply(rot_r_, b, a, n);
        double tail = 0.0;
        for (int i = 1; i < n; ++i) {
            tail += a[i] * a[i];
        }
        f = a[0] * a[0] + 1.0e6 * tail;
        break;
    }
    case 13: {
        shift(a);
        apply(rot_r_, a, b, n);
        scale(b);
        apply(rot_q_, b, a, n);
        double tail = 0.0;
        for (int i = 1; i < n; ++i) {
            tail += a[i] * a[i];
        }
        f = a[0] * a[0] + 100.0 * std::sqrt(tail);
        break;
    }
    case 14: {
        shift(a);
        apply(rot_r_, a, b, n);
        double s = 0.0;
        for (int i = 0; i < n; ++i) {
            s += std::pow(std::abs(b[i]), powers_[i]);
        }
        f = std::sqrt(s);
        break;
    }
    case 15:
        shift(a);
        apply(rot_r_, a, b, n);
        transform_osz_inplace(span_of(b));
        transform_asy_inplace(span_of(b), 0.2);
        apply(rot_q_, b, a, n);
        scale(a);
        apply(rot_r_, a, b, n);
        f = rastrigin(b, n);
        break;
    case 16: {
        shift(a);
        apply(rot_r_, a, b, n);
        transform_osz_inplace(span_of(b));
        apply(rot_q_, b, a, n);
        scale(a);
        apply(rot_r_, a, b, n);
        const double f0 = weierstrass_term(0.0);
        double s = 0.0;
        for (int i = 0; i < n; ++i) {
            s += weierstrass_term(b[i]);
        }
        const double t = s / n - f0;
        f = 10.0 * t * t * t + 10.0 / n * f_pen(xs);
        break;
    }
    case 17:
    case 18: {
        shift(a);
        apply(rot_r_, a, b, n);
        transform_asy_inplace(span_of(b), 0.5);
        apply(rot_q_, b, a, n);
        scale(a);
        double s = 0.0;
        for (int i = 0; i + 1 < n; ++i) {
            const double si = std::sqrt(a[i] * a[i] + a[i + 1] * a[i + 1]);
            const double root = std::sqrt(si);
            const double sn = std::sin(50.0 * std::pow(si, 0.2));
            s += root + root * sn * sn;
        }
        s /= (n - 1);
        f = s * s + 10.0 * f_pen(xs);
        break;
    }
    case 19: {
        const double k = rosenbrock_factor(n);
        apply(rot_r_, x, a, n);
        for (int i = 0; i < n; ++i) {
            a[i] = k * a[i] + 0.5;
        }
        double s = 0.0;
        for (int i = 0; i + 1 < n; ++i) {
            const double t = a[i] * a[i] - a[i + 1];
            const double si = 100.0 * t * t + (a[i] - 1.0) * (a[i] - 1.0);
            s += si / 4000.0 - std::cos(si);
        }
        f = 10.0 * s / (n - 1) + 10.0;
        break;
    }
    case 20: {
        const double two_opt = kSchwefelXopt; // 2 |x_opt_i|
        for (int i = 0; i < n; ++i) {
            a[i] = 2.0 * signs_[i] * x[i];
        }
        b[0] = a[0];
        for (int i = 1; i < n; ++i) {
            b[i] = a[i] + 0.25 * (a[i - 1] - two_opt);
        }
        double s = 0.0;
        for (int i = 0; i < n; ++i) {
            c[i] = 100.0 * (cond_[i] * (b[i] - two_opt) + two_opt);
            s += c[i] * std::sin(std::sqrt(std::abs(c[i])));
            c[i] /= 100.0;
        }
        f = -s / (100.0 * n) + kSchwefelOffset + 100.0 * f_pen(std::span<const double>(c, static_cast<std::size_t>(n)));
        break;
    }
    case 21:
    case 22: {
        apply(rot_r_, x, a, n);
        const auto peaks = static_cast<int>(peaks_.heights.size());
        double best = 0.0;
        for (int k = 0; k < peaks; ++k) {
            const double* centre = peaks_.rotated_centers.col(k).data();
            const double* sc = peaks_.scales.col(k).data();
            double q = 0.0;
            for (int i = 0; i < n; ++i) {
                const double d = a[i] - centre[i];
                q += sc[i] * d * d;
            }
            best = std::max(best, peaks_.heights[k] * std::exp(-q / (2.0 * n)));
        }
        const double t = transform_osz(10.0 - best);
        f = t * t + f_pen(xs);
        break;
    }
    case 23: {
        shift(a);
        apply(rot_r_, a, b, n);
        scale(b);
        apply(rot_q_, b, a, n);
        const double expo = 10.0 / std::pow(static_cast<double>(n), 1.2);
        double prod = 1.0;
        for (int i = 0; i < n; ++i) {
            double s = 0.0;
            double p2 = 1.0;
            for (int j = 1; j <= 32; ++j) {
                p2 *= 2.0;
                const double v = p2 * a[i];
                s += std::abs(v - std::nearbyint(v)) / p2;
            }
            prod *= std::pow(1.0 + (i + 1) * s, expo);
        }
        const double k = 10.0 / (static_cast<double>(n) * n);
        f = k * prod - k + f_pen(xs);
        break;
    }
    case 24: {
        const double d = 1.0;
        const double s = 1.0 - 1.0 / (2.0 * std::sqrt(n + 20.0) - 8.2);
        const double mu1 = -std::sqrt((kLunacekMu0 * kLunacekMu0 - d) / s);
        double s1 = 0.0;
        double s2 = 0.0;
        for (int i = 0; i < n; ++i) {
            const double xh = 2.0 * signs_[i] * x[i];
            s1 += (xh - kLunacekMu0) * (xh - kLunacekMu0);
            s2 += (xh - mu1) * (xh - mu1);
            a[i] = xh - kLunacekMu0;
        }
        apply(rot_r_, a, b, n);
        scale(b);
        apply(rot_q_, b, a, n);
        double cos_sum = 0.0;
        for (int i = 0; i < n; ++i) {
            cos_sum += std::cos(kTwoPi * a[i]);
        }
        f = std::min(s1, d * n + s * s2) + 10.0 * (n - cos_sum) + 1.0e4 * f_pen(xs);
        break;
    }
    default:
        break;
    }
    return f + f_opt_;
}

} // namespace mabbob::bbob
