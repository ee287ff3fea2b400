#include "kuramoto/filippov.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "kuramoto/kernel.hpp"

namespace kuramoto {

SkewMatrix::SkewMatrix(int n, std::optional<double> bound)
    : n_(n), bound_(bound), upper_(static_cast<std::size_t>(n) * (n - 1) / 2, 0.0) {
    if (n < 1) throw std::invalid_argument("SkewMatrix: dimension must be >= 1");
}

namespace {
inline std::size_t packed_index(int n, int i, int j) {
    // i < j assumed
    return static_cast<std::size_t>(i) * (2 * n - i - 1) / 2 + static_cast<std::size_t>(j - i - 1);
}
}  // namespace

double SkewMatrix::operator()(int i, int j) const {
    if (i == j) return 0.0;
    if (i < j) return upper_[packed_index(n_, i, j)];
    return -upper_[packed_index(n_, j, i)];
}

void SkewMatrix::set(int i, int j, double v) {
    if (i == j) {
        if (v != 0.0) throw std::invalid_argument("SkewMatrix: nonzero diagonal");
        return;
    }
    if (i < j) upper_[packed_index(n_, i, j)] = v;
    else upper_[packed_index(n_, j, i)] = -v;
}

double SkewMatrix::max_abs() const {
    double m = 0.0;
    for (double v : upper_) m = std::max(m, std::abs(v));
    return m;
}

std::vector<double> SkewMatrix::times_ones() const {
    std::vector<double> r(static_cast<std::size_t>(n_), 0.0);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) r[static_cast<std::size_t>(i)] += (*this)(i, j);
    return r;
}

RelativeFrequencyMatrix RelativeFrequencyMatrix::from_omegas(
    const std::vector<double>& omegas) {
    RelativeFrequencyMatrix m;
    m.m = static_cast<int>(omegas.size());
    m.entries.resize(static_cast<std::size_t>(m.m) * m.m);
    for (int i = 0; i < m.m; ++i)
        for (int j = 0; j < m.m; ++j)
            m.entries[static_cast<std::size_t>(i * m.m + j)] = omegas[static_cast<std::size_t>(i)] - omegas[static_cast<std::size_t>(j)];
    return m;
}

FrequencyPolytope build_polytope(const PhaseState& state,
                                 const NaturalFrequencies& omega_nat,
                                 const ModelParams& p,
                                 const ClusterPartition& partition) {
    const int n = p.n_osc;
    if (static_cast<int>(state.theta.size()) != n ||
        static_cast<int>(omega_nat.omega.size()) != n)
        throw std::invalid_argument("build_polytope: length mismatch");
    FrequencyPolytope poly;
    poly.regime = p.regime();
    poly.partition = partition;
    poly.coupling_over_n = p.coupling_k / static_cast<double>(n);
    poly.drift.assign(static_cast<std::size_t>(n), 0.0);
    std::vector<int> cluster_of(static_cast<std::size_t>(n), -1);
    for (int k = 0; k < partition.n_clusters(); ++k)
        for (int i : partition.clusters[k]) cluster_of[static_cast<std::size_t>(i)] = k;
    for (int i = 0; i < n; ++i) {
        double s = omega_nat.omega[static_cast<std::size_t>(i)];
        for (int j = 0; j < n; ++j) {
            if (cluster_of[static_cast<std::size_t>(j)] == cluster_of[static_cast<std::size_t>(i)]) continue;
            s += poly.coupling_over_n * h_eval(state.theta[static_cast<std::size_t>(j)] - state.theta[static_cast<std::size_t>(i)], p);
        }
        poly.drift[static_cast<std::size_t>(i)] = s;
    }
    return poly;
}

double membership_residual(const FrequencyPolytope& poly,
                           const std::vector<double>& omega) {
    const std::size_t n = poly.drift.size();
    if (omega.size() != n)
        throw std::invalid_argument("membership_residual: length mismatch");
    double worst = 0.0;
    for (const auto& cluster : poly.partition.clusters) {
        std::vector<double> r;
        r.reserve(cluster.size());
        for (int i : cluster)
            r.push_back(omega[static_cast<std::size_t>(i)] - poly.drift[static_cast<std::size_t>(i)]);
        const int nk = static_cast<int>(r.size());
        switch (poly.regime) {
            case Regime::subcritical: {
                for (double v : r) worst = std::max(worst, std::abs(v));
                break;
            }
            case Regime::supercritical: {
                const double mean = std::accumulate(r.begin(), r.end(), 0.0) / nk;
                worst = std::max(worst, std::abs(mean));
                break;
            }
            case Regime::critical: {
                std::sort(r.begin(), r.end());
                std::vector<double> prefix(r.size() + 1, 0.0);
                for (std::size_t i = 0; i < r.size(); ++i) prefix[i + 1] = prefix[i] + r[i];
                const double total = prefix.back();
                for (int m = 1; m <= nk; ++m) {
                    const double bound = poly.coupling_over_n * (nk - m);
                    const double min_mean = prefix[static_cast<std::size_t>(m)] / m;
                    const double max_mean = (total - prefix[static_cast<std::size_t>(nk - m)]) / m;
                    worst = std::max(worst, max_mean - bound);
                    worst = std::max(worst, -bound - min_mean);
                }
                break;
            }
        }
    }
    return worst;
}

bool membership(const FrequencyPolytope& poly, const std::vector<double>& omega,
                double tol) {
    return membership_residual(poly, omega) <= tol;
}

bool sticking_subcritical(const std::vector<double>& cluster_omegas, double tol) {
    if (cluster_omegas.size() < 2)
        throw std::invalid_argument("sticking_subcritical: cluster size must be >= 2");
    auto [mn, mx] = std::minmax_element(cluster_omegas.begin(), cluster_omegas.end());
    return (*mx - *mn) <= tol;
}

namespace {
constexpr double kPredicateSlack = 1e-10;
}

std::optional<StickingCertificate> sticking_critical_certificate(
    const std::vector<double>& cluster_omegas, double coupling_k, int n_total) {
    const int nk = static_cast<int>(cluster_omegas.size());
    if (nk < 2)
        throw std::invalid_argument("sticking_critical: cluster size must be >= 2");
    const double mean =
        std::accumulate(cluster_omegas.begin(), cluster_omegas.end(), 0.0) / nk;
    std::vector<int> order(static_cast<std::size_t>(nk));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return cluster_omegas[static_cast<std::size_t>(a)] < cluster_omegas[static_cast<std::size_t>(b)];
    });
    std::vector<double> sorted(static_cast<std::size_t>(nk));
    for (int i = 0; i < nk; ++i) sorted[static_cast<std::size_t>(i)] = cluster_omegas[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] - mean;
    std::vector<double> prefix(static_cast<std::size_t>(nk) + 1, 0.0);
    for (int i = 0; i < nk; ++i) prefix[static_cast<std::size_t>(i) + 1] = prefix[static_cast<std::size_t>(i)] + sorted[static_cast<std::size_t>(i)];
    const double kn = coupling_k / static_cast<double>(n_total);
    for (int m = 1; m <= nk; ++m) {
        const double bound = kn * (nk - m);
        const double lo_mean = prefix[static_cast<std::size_t>(m)] / m;
        const double hi_mean = (prefix[static_cast<std::size_t>(nk)] - prefix[static_cast<std::size_t>(nk - m)]) / m;
        if (hi_mean > bound + kPredicateSlack) {
            StickingCertificate c;
            c.m = m;
            c.subset.assign(order.end() - m, order.end());
            std::sort(c.subset.begin(), c.subset.end());
            c.lhs = hi_mean;
            c.bound = bound;
            return c;
        }
        if (lo_mean < -bound - kPredicateSlack) {
            StickingCertificate c;
            c.m = m;
            c.subset.assign(order.begin(), order.begin() + m);
            std::sort(c.subset.begin(), c.subset.end());
            c.lhs = lo_mean;
            c.bound = bound;
            return c;
        }
    }
    return std::nullopt;
}

bool sticking_critical(const std::vector<double>& cluster_omegas,
                       double coupling_k, int n_total) {
    return !sticking_critical_certificate(cluster_omegas, coupling_k, n_total)
                .has_value();
}

bool sticking_supercritical(const RelativeFrequencyMatrix& m, double tol) {
    for (int i = 0; i < m.m; ++i)
        for (int j = i + 1; j < m.m; ++j)
            for (int k = j + 1; k < m.m; ++k)
                if (std::abs(m.at(i, j) + m.at(j, k) + m.at(k, i)) > tol) return false;
    return true;
}

SkewMatrix construct_skew_balanced(const std::vector<double>& x) {
    const int n = static_cast<int>(x.size());
    const double total = std::accumulate(x.begin(), x.end(), 0.0);
    if (std::abs(total) > 1e-12)
        throw std::invalid_argument("construct_skew_balanced: x is not balanced (sum != 0)");
    SkewMatrix y(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            y.set(i, j, (x[static_cast<std::size_t>(i)] - x[static_cast<std::size_t>(j)]) / n);
    return y;
}

namespace {

// b-flow witness search: a skew Y with |y_ij| <= 1 and Y*ones = x exists iff
// a flow routing the positive excesses to the negative ones through unit
// pairwise capacities exists. Edmonds-Karp on the complete graph, n <= 12.
std::optional<SkewMatrix> bounded_witness_flow(const std::vector<double>& x) {
    const int n = static_cast<int>(x.size());
    const int s = n, t = n + 1, nodes = n + 2;
    std::vector<std::vector<double>> cap(static_cast<std::size_t>(nodes),
                                         std::vector<double>(static_cast<std::size_t>(nodes), 0.0));
    double need = 0.0;
    for (int i = 0; i < n; ++i) {
        if (x[static_cast<std::size_t>(i)] > 0.0) {
            cap[static_cast<std::size_t>(i)][static_cast<std::size_t>(t)] = x[static_cast<std::size_t>(i)];
            need += x[static_cast<std::size_t>(i)];
        } else if (x[static_cast<std::size_t>(i)] < 0.0) {
            cap[static_cast<std::size_t>(s)][static_cast<std::size_t>(i)] = -x[static_cast<std::size_t>(i)];
        }
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) cap[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = 1.0;
    auto residual = cap;
    double flow = 0.0;
    while (true) {
        std::vector<int> parent(static_cast<std::size_t>(nodes), -1);
        parent[static_cast<std::size_t>(s)] = s;
        std::deque<int> q{s};
        while (!q.empty() && parent[static_cast<std::size_t>(t)] < 0) {
            int u = q.front();
            q.pop_front();
            for (int v = 0; v < nodes; ++v)
                if (parent[static_cast<std::size_t>(v)] < 0 && residual[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] > 1e-13) {
                    parent[static_cast<std::size_t>(v)] = u;
                    q.push_back(v);
                }
        }
        if (parent[static_cast<std::size_t>(t)] < 0) break;
        double aug = std::numeric_limits<double>::infinity();
        for (int v = t; v != s; v = parent[static_cast<std::size_t>(v)])
            aug = std::min(aug, residual[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])][static_cast<std::size_t>(v)]);
        for (int v = t; v != s; v = parent[static_cast<std::size_t>(v)]) {
            residual[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])][static_cast<std::size_t>(v)] -= aug;
            residual[static_cast<std::size_t>(v)][static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])] += aug;
        }
        flow += aug;
    }
    if (flow < need - 1e-9) return std::nullopt;
    // Net pair flow i -> j is cap - residual (reverse pushes cancel inside
    // the matrix bookkeeping); the witness entry is the net inflow to i.
    SkewMatrix y(n, 1.0);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            y.set(i, j, residual[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] -
                            cap[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
    return y;
}

std::optional<StickingCertificate> prefix_violation(const std::vector<double>& x) {
    const int n = static_cast<int>(x.size());
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return x[static_cast<std::size_t>(a)] < x[static_cast<std::size_t>(b)];
    });
    double lo = 0.0, hi = 0.0;
    for (int m = 1; m <= n; ++m) {
        lo += x[static_cast<std::size_t>(order[static_cast<std::size_t>(m - 1)])];
        hi += x[static_cast<std::size_t>(order[static_cast<std::size_t>(n - m)])];
        const double bound = static_cast<double>(m) * (n - m);
        if (hi > bound + kPredicateSlack) {
            StickingCertificate c;
            c.m = m;
            c.subset.assign(order.end() - m, order.end());
            std::sort(c.subset.begin(), c.subset.end());
            c.lhs = hi;
            c.bound = bound;
            return c;
        }
        if (lo < -bound - kPredicateSlack) {
            StickingCertificate c;
            c.m = m;
            c.subset.assign(order.begin(), order.begin() + m);
            std::sort(c.subset.begin(), c.subset.end());
            c.lhs = lo;
            c.bound = bound;
            return c;
        }
    }
    return std::nullopt;
}

}  // namespace

BoundedSkewResult construct_skew_bounded(const std::vector<double>& x) {
    const int n = static_cast<int>(x.size());
    BoundedSkewResult out;
    const double total = std::accumulate(x.begin(), x.end(), 0.0);
    if (std::abs(total) > 1e-9) {
        // Y*ones always sums to zero; an unbalanced x fails at m = n.
        out.feasible = false;
        StickingCertificate c;
        c.m = n;
        c.subset.resize(static_cast<std::size_t>(n));
        std::iota(c.subset.begin(), c.subset.end(), 0);
        c.lhs = total;
        c.bound = 0.0;
        out.violation = c;
        return out;
    }
    if (auto cert = prefix_violation(x)) {
        out.feasible = false;
        out.violation = *cert;
        return out;
    }
    out.feasible = true;
    SkewMatrix canonical = construct_skew_balanced(x);
    if (canonical.max_abs() <= 1.0 + 1e-12) {
        SkewMatrix y(n, 1.0);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) y.set(i, j, canonical(i, j));
        out.witness = std::move(y);
        return out;
    }
    if (n <= 12) out.witness = bounded_witness_flow(x);
    return out;
}

namespace {

// Rescale M by N/K and reduce to the vector x of row potentials: given the
// triangle identity, m_ij = lambda_i - lambda_j with lambda_i = m_i1, and the
// sticking equation becomes Y*ones = x for the centered lambda.
std::vector<double> centered_potentials(const RelativeFrequencyMatrix& m,
                                        double scale) {
    const int n = m.m;
    std::vector<double> lambda(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) lambda[static_cast<std::size_t>(i)] = scale * m.at(i, 0);
    const double mean =
        std::accumulate(lambda.begin(), lambda.end(), 0.0) / static_cast<double>(n);
    for (double& v : lambda) v -= mean;
    return lambda;
}

}  // namespace

bool sticking_general_check(const RelativeFrequencyMatrix& m, double coupling_k,
                            int n_total, bool bounded) {
    if (!sticking_supercritical(m)) return false;
    if (!bounded) return true;
    const double scale = static_cast<double>(n_total) / coupling_k;
    const int n = m.m;
    // Split sums sum_{i in I, j notin I} m~_{ij} = n * sum_I x with x the
    // centered potentials; extremal splits are sorted prefixes/suffixes.
    std::vector<double> x = centered_potentials(m, scale);
    std::sort(x.begin(), x.end());
    double lo = 0.0, hi = 0.0;
    std::vector<double> sorted = x;
    for (int mm = 1; mm <= n; ++mm) {
        lo += sorted[static_cast<std::size_t>(mm - 1)];
        hi += sorted[static_cast<std::size_t>(n - mm)];
        const double bound = static_cast<double>(mm) * (n - mm);  // split bound / n
        if (n * hi > static_cast<double>(n) * bound + kPredicateSlack) return false;
        if (n * lo < -static_cast<double>(n) * bound - kPredicateSlack) return false;
    }
    return true;
}

std::optional<SkewMatrix> sticking_witness(const RelativeFrequencyMatrix& m,
                                           double coupling_k, int n_total) {
    if (!sticking_supercritical(m)) return std::nullopt;
    const double scale = static_cast<double>(n_total) / coupling_k;
    auto x = centered_potentials(m, scale);
    auto res = construct_skew_bounded(x);
    if (!res.feasible) return std::nullopt;
    return res.witness;
}

}  // namespace kuramoto
