#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kuramoto/params.hpp"

namespace kuramoto {

// Time-stamped unwrapped phase configuration, optionally with the
// instantaneous frequencies at that time.
struct PhaseState {
    double t = 0.0;
    std::vector<double> theta;
    std::optional<std::vector<double>> freq;
};

// Natural frequencies with the derived norm C_Omega = (sum Omega_i^2)^(1/2).
struct NaturalFrequencies {
    std::vector<double> omega;

    double c_omega() const;
    double mean() const;
    // Shifted copy with zero mean.
    NaturalFrequencies canonicalized() const;
};

// Collisional type of a configuration: a partition of {0,...,N-1} into
// clusters, ordered by their minimal representatives.
struct ClusterPartition {
    std::vector<std::vector<int>> clusters;  // each sorted ascending

    int n_clusters() const { return static_cast<int>(clusters.size()); }
    int size_of(int k) const { return static_cast<int>(clusters[k].size()); }
    int representative(int k) const { return clusters[k].front(); }
    int n_total() const;
    // cluster index containing oscillator i
    int cluster_of(int i) const;
    bool operator==(const ClusterPartition&) const = default;

    static ClusterPartition singletons(int n);
    // Canonical form: members sorted, clusters ordered by min representative.
    static ClusterPartition from_clusters(std::vector<std::vector<int>> raw);
};

enum class EventKind { collision, merge, crossing, split_rejected };

struct EventRecord {
    double t_event = 0.0;
    EventKind kind = EventKind::collision;
    std::vector<int> indices;  // oscillators involved
    ClusterPartition partition_after;
};

struct Trajectory {
    std::vector<PhaseState> samples;
    std::vector<EventRecord> events;
    ModelParams params;
    NaturalFrequencies omega_nat;
};

// Oscillators i, j belong to the same cluster iff they are connected through
// pairs at orthodromic distance <= tol (transitive closure of the tolerance
// graph; the collision relation is an equivalence relation).
ClusterPartition detect_partition(const PhaseState& state, double tol = 1e-9);

// D(Theta) = max - min over unwrapped phases.
double phase_diameter(const PhaseState& state);
// D(dot Theta); requires freq to be present.
double freq_diameter(const PhaseState& state);

const char* to_string(EventKind k);

// CSV: one row per sample, columns t, theta_1..theta_N and, when present,
// freq_1..freq_N. The header parameter is prepended as '#' comment lines.
std::string trajectory_csv(const Trajectory& traj,
                           const std::string& comment_header = "");
// JSON array of {t, kind, indices, partition}, 1-based indices.
std::string event_log_json(const Trajectory& traj);

}  // namespace kuramoto
