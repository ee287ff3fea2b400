#pragma once

#include <optional>
#include <vector>

#include "kuramoto/params.hpp"
#include "kuramoto/state.hpp"

namespace kuramoto {

// Skew-symmetric matrix; the upper triangle is the stored data and the lower
// triangle is its exact negation. `bound` records a box constraint |y_ij| <= B
// when one applies.
class SkewMatrix {
  public:
    explicit SkewMatrix(int n, std::optional<double> bound = std::nullopt);

    int dim() const { return n_; }
    double operator()(int i, int j) const;
    void set(int i, int j, double v);  // also fixes (j,i) = -v
    std::optional<double> bound() const { return bound_; }
    double max_abs() const;
    // Row sums Y * ones.
    std::vector<double> times_ones() const;

  private:
    int n_;
    std::optional<double> bound_;
    std::vector<double> upper_;  // packed i < j
};

// M_ij = Omega_{sigma_i} - Omega_{sigma_j} for a cluster's natural
// frequencies; skew-symmetric, and every (i,j,k) triple telescopes to zero.
struct RelativeFrequencyMatrix {
    int m = 0;
    std::vector<double> entries;  // row-major m*m

    double at(int i, int j) const { return entries[static_cast<std::size_t>(i * m + j)]; }
    static RelativeFrequencyMatrix from_omegas(const std::vector<double>& omegas);
};

// The set-valued right-hand side at a configuration: a single point off
// collisions, a compact polytope (critical) or an affine subspace
// (supercritical) at collisions. `drift` holds
// Omega_i + (K/N) sum_{j not in C_i} h(theta_j - theta_i).
struct FrequencyPolytope {
    Regime regime = Regime::critical;
    ClusterPartition partition;
    std::vector<double> drift;
    double coupling_over_n = 0.0;
};

FrequencyPolytope build_polytope(const PhaseState& state,
                                 const NaturalFrequencies& omega_nat,
                                 const ModelParams& p,
                                 const ClusterPartition& partition);

// Largest constraint violation of omega against the polytope's
// H-representation; <= 0 means member. Critical: subset-mean inequalities
// reduced to sorted extremal subsets. Supercritical: per-cluster mean
// equalities. Subcritical: pointwise equality with the drift.
double membership_residual(const FrequencyPolytope& poly,
                           const std::vector<double>& omega);

bool membership(const FrequencyPolytope& poly, const std::vector<double>& omega,
                double tol = 1e-10);

// Sticking predicates -------------------------------------------------------

// Subcritical: a collided cluster sticks iff all natural frequencies agree.
bool sticking_subcritical(const std::vector<double>& cluster_omegas,
                          double tol = 1e-12);

// Certificate for a failed critical sticking test: the extremal subset I
// (|I| = m) whose mean deviation exceeds the (K/N)(n_k - m) bound.
struct StickingCertificate {
    int m = 0;
    std::vector<int> subset;  // positions within the cluster list
    double lhs = 0.0;
    double bound = 0.0;
};

// Critical: sticks iff every subset mean of Omega deviates from the cluster
// mean by at most (K/N)(n_k - m); extremal subsets are sorted prefixes and
// suffixes. Boundary cases count as satisfied (absolute slack 1e-10).
bool sticking_critical(const std::vector<double>& cluster_omegas,
                       double coupling_k, int n_total);
std::optional<StickingCertificate> sticking_critical_certificate(
    const std::vector<double>& cluster_omegas, double coupling_k, int n_total);

// Supercritical: the triangle identity m_ij + m_jk + m_ki = 0 over all
// triples; holds identically for matrices of pairwise frequency differences.
bool sticking_supercritical(const RelativeFrequencyMatrix& m, double tol = 1e-10);

// Skew constructions --------------------------------------------------------

// Witness Y with Y*ones = x for balanced x (sum zero within 1e-12); the
// canonical witness is Y_ij = (x_i - x_j)/n. Unbalanced input throws
// std::invalid_argument.
SkewMatrix construct_skew_balanced(const std::vector<double>& x);

struct BoundedSkewResult {
    bool feasible = false;
    std::optional<SkewMatrix> witness;  // absent above the search cap n > 12
    std::optional<StickingCertificate> violation;
};

// Feasibility of Y in Skew_n([-1,1]) with Y*ones = x, decided by the sorted
// prefix-sum bounds; on success a witness comes from the canonical formula
// or, failing its box bound, from an exact flow-based feasibility search.
BoundedSkewResult construct_skew_bounded(const std::vector<double>& x);

// Decides M = (K/N)(Y*J + J*Y) for skew Y, unbounded (any real Y: triangle
// identity alone) or bounded (Y in Skew([-1,1]): triangle identity plus the
// sorted extremal split-sum bounds on (N/K) M).
bool sticking_general_check(const RelativeFrequencyMatrix& m, double coupling_k,
                            int n_total, bool bounded);

// Witness Y in Skew([-1,1]) with M = (K/N)(Y*J + J*Y), when one exists and
// the cluster size is within the search cap.
std::optional<SkewMatrix> sticking_witness(const RelativeFrequencyMatrix& m,
                                           double coupling_k, int n_total);

}  // namespace kuramoto
