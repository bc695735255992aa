#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace mabbob::bbob {

inline constexpr int kNumFunctions = 24;

/// Short name of a BBOB function, e.g. "sphere" for fid 1.
std::string_view function_name(int fid);

/// Seed of the (fid, iid) instance stream. All instance quantities are drawn
/// from sub-streams `derive_seed(instance_seed(fid, iid), k)`, so coordinates
/// shared between dimensions come from the same draws.
std::uint64_t instance_seed(int fid, int iid) noexcept;

/// One transformed instance of a BBOB function. Immutable once built; safe to
/// evaluate from several threads at once.
class Instance {
public:
    int fid() const noexcept { return fid_; }
    int iid() const noexcept { return iid_; }
    int dim() const noexcept { return dim_; }

    const std::vector<double>& x_opt() const noexcept { return x_opt_; }
    double f_opt() const noexcept { return f_opt_; }

    /// Orthogonal matrices. Identity when the function does not rotate.
    const Eigen::MatrixXd& rotation_R() const noexcept { return rot_r_; }
    const Eigen::MatrixXd& rotation_Q() const noexcept { return rot_q_; }

    /// Objective value. Throws ParameterError on a length mismatch.
    double operator()(std::span<const double> x) const;

    /// Objective value without the length check.
    double evaluate_unchecked(const double* x) const;

private:
    friend Instance make_instance(int fid, int iid, int dim);

    struct Peaks {
        Eigen::MatrixXd rotated_centers; // column k = R * y_k
        Eigen::MatrixXd scales;          // column k = diagonal of C_k
        std::vector<double> heights;
    };

    int fid_ = 0;
    int iid_ = 0;
    int dim_ = 0;
    std::vector<double> x_opt_;
    double f_opt_ = 0.0;
    Eigen::MatrixXd rot_r_;
    Eigen::MatrixXd rot_q_;
    // Aux constants; which ones are populated depends on fid.
    std::vector<double> cond_;   // conditioning diagonal (alpha depends on fid)
    std::vector<double> signs_;  // random +-1 pattern (F20, F24)
    std::vector<double> powers_; // per-coordinate weights or exponents
    Peaks peaks_;
};

/// Builds the deterministic instance (fid, iid, dim).
/// Throws ParameterError naming "fid", "iid" or "dim".
Instance make_instance(int fid, int iid, int dim);

/// Same as `inst(x)`.
double evaluate(const Instance& inst, std::span<const double> x);

/// Stored optimum location and value.
std::pair<std::vector<double>, double> optimum(const Instance& inst);

/// Orthonormal dim x dim matrix from a seeded standard-normal matrix,
/// Gram-Schmidt with one re-orthogonalization pass.
Eigen::MatrixXd random_rotation(std::uint64_t seed, int dim);

} // namespace mabbob::bbob
