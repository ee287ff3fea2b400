#include "kuramoto/state.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>

#include "kuramoto/kernel.hpp"

namespace kuramoto {

double NaturalFrequencies::c_omega() const {
    double s = 0.0;
    for (double w : omega) s += w * w;
    return std::sqrt(s);
}

double NaturalFrequencies::mean() const {
    if (omega.empty()) return 0.0;
    return std::accumulate(omega.begin(), omega.end(), 0.0) /
           static_cast<double>(omega.size());
}

NaturalFrequencies NaturalFrequencies::canonicalized() const {
    NaturalFrequencies out = *this;
    const double m = mean();
    for (double& w : out.omega) w -= m;
    return out;
}

int ClusterPartition::n_total() const {
    int n = 0;
    for (const auto& c : clusters) n += static_cast<int>(c.size());
    return n;
}

int ClusterPartition::cluster_of(int i) const {
    for (int k = 0; k < n_clusters(); ++k)
        for (int m : clusters[k])
            if (m == i) return k;
    throw std::out_of_range("cluster_of: index not in partition");
}

ClusterPartition ClusterPartition::singletons(int n) {
    ClusterPartition p;
    p.clusters.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) p.clusters.push_back({i});
    return p;
}

ClusterPartition ClusterPartition::from_clusters(std::vector<std::vector<int>> raw) {
    for (auto& c : raw) std::sort(c.begin(), c.end());
    std::sort(raw.begin(), raw.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    ClusterPartition p;
    p.clusters = std::move(raw);
    return p;
}

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

ClusterPartition detect_partition(const PhaseState& state, double tol) {
    const int n = static_cast<int>(state.theta.size());
    UnionFind uf(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (orthodromic_distance(state.theta[i] - state.theta[j]) <= tol)
                uf.unite(i, j);
    std::vector<std::vector<int>> groups(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) groups[static_cast<std::size_t>(uf.find(i))].push_back(i);
    std::vector<std::vector<int>> raw;
    for (auto& g : groups)
        if (!g.empty()) raw.push_back(std::move(g));
    return ClusterPartition::from_clusters(std::move(raw));
}

double phase_diameter(const PhaseState& state) {
    if (state.theta.empty()) return 0.0;
    auto [mn, mx] = std::minmax_element(state.theta.begin(), state.theta.end());
    return *mx - *mn;
}

double freq_diameter(const PhaseState& state) {
    if (!state.freq) throw std::invalid_argument("freq_diameter: frequencies absent");
    if (state.freq->empty()) return 0.0;
    auto [mn, mx] = std::minmax_element(state.freq->begin(), state.freq->end());
    return *mx - *mn;
}

const char* to_string(EventKind k) {
    switch (k) {
        case EventKind::collision: return "collision";
        case EventKind::merge: return "merge";
        case EventKind::crossing: return "crossing";
        case EventKind::split_rejected: return "split_rejected";
    }
    return "?";
}

namespace {

void append_g17(std::string& out, double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out += buf;
}

}  // namespace

std::string trajectory_csv(const Trajectory& traj, const std::string& comment_header) {
    std::string out;
    if (!comment_header.empty()) {
        std::size_t start = 0;
        while (start <= comment_header.size()) {
            std::size_t end = comment_header.find('\n', start);
            if (end == std::string::npos) end = comment_header.size();
            out += "# " + comment_header.substr(start, end - start) + "\n";
            start = end + 1;
        }
    }
    const int n = traj.params.n_osc;
    const bool with_freq =
        !traj.samples.empty() && traj.samples.front().freq.has_value();
    out += "t";
    for (int i = 1; i <= n; ++i) out += ",theta_" + std::to_string(i);
    if (with_freq)
        for (int i = 1; i <= n; ++i) out += ",freq_" + std::to_string(i);
    out += "\n";
    for (const auto& s : traj.samples) {
        append_g17(out, s.t);
        for (double v : s.theta) { out += ','; append_g17(out, v); }
        if (with_freq)
            for (double v : *s.freq) { out += ','; append_g17(out, v); }
        out += "\n";
    }
    return out;
}

std::string event_log_json(const Trajectory& traj) {
    std::string out = "[";
    bool first_ev = true;
    for (const auto& e : traj.events) {
        if (!first_ev) out += ",";
        first_ev = false;
        out += "\n  {\"t\": ";
        append_g17(out, e.t_event);
        out += ", \"kind\": \"";
        out += to_string(e.kind);
        out += "\", \"indices\": [";
        for (std::size_t i = 0; i < e.indices.size(); ++i) {
            if (i) out += ",";
            out += std::to_string(e.indices[i] + 1);
        }
        out += "], \"partition\": [";
        for (std::size_t k = 0; k < e.partition_after.clusters.size(); ++k) {
            if (k) out += ",";
            out += "[";
            const auto& c = e.partition_after.clusters[k];
            for (std::size_t i = 0; i < c.size(); ++i) {
                if (i) out += ",";
                out += std::to_string(c[i] + 1);
            }
            out += "]";
        }
        out += "]}";
    }
    out += "\n]\n";
    return out;
}

}  // namespace kuramoto
