#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "hypolo/dataset.hpp"
#include "hypolo/geometry.hpp"

namespace hypolo {

enum class MetricKind { Hyperbolic, Euclidean };

/// Distance over disk points: the Rao distance, or the plain Euclidean
/// distance of the raw coordinates (baseline LOF / LoOP).
class Metric {
public:
    constexpr Metric() = default;
    constexpr explicit Metric(MetricKind kind) : kind_(kind) {}

    static constexpr Metric hyperbolic() { return Metric(MetricKind::Hyperbolic); }
    static constexpr Metric euclidean() { return Metric(MetricKind::Euclidean); }

    MetricKind kind() const noexcept { return kind_; }
    std::string_view name() const noexcept;

    double operator()(const DiskPoint& a, const DiskPoint& b) const noexcept {
        return kind_ == MetricKind::Hyperbolic ? rao_distance(a, b) : euclidean_distance(a, b);
    }

    friend constexpr bool operator==(Metric, Metric) = default;

private:
    MetricKind kind_ = MetricKind::Hyperbolic;
};

/// Throws Error{InvalidConfig} for names other than "hyperbolic"/"euclidean".
Metric parse_metric(std::string_view name);

enum class IndexStrategy { Brute, VpTree };

std::string_view to_string(IndexStrategy strategy) noexcept;
IndexStrategy parse_index_strategy(std::string_view name);

struct Neighbor {
    std::size_t id;
    double distance;

    friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

/// k-nearest-neighbourhoods of every point of a dataset.
///
/// N_k(p) is the closed ball {q != p : d(q, p) <= d_k(p)}, so a list holds
/// more than k entries when several points tie at the k-th distance. Lists
/// are sorted by (distance, id); every downstream sum runs in that order.
///
/// The index keeps a reference to the dataset, which must outlive it.
class NeighborhoodIndex {
public:
    NeighborhoodIndex(const Dataset& data, std::size_t k, Metric metric,
                      std::vector<std::vector<Neighbor>> lists);

    const Dataset& dataset() const noexcept { return *data_; }
    std::size_t size() const noexcept { return lists_.size(); }
    std::size_t k() const noexcept { return k_; }
    Metric metric() const noexcept { return metric_; }

    /// Throws Error{UnknownId}.
    std::span<const Neighbor> neighbors(std::size_t id) const;
    double k_distance(std::size_t id) const;

    double distance(std::size_t a, std::size_t b) const;

private:
    void check_id(std::size_t id) const;

    const Dataset* data_;
    std::size_t k_;
    Metric metric_;
    std::vector<std::vector<Neighbor>> lists_;
    std::vector<double> k_distance_;
};

/// Throws Error{EmptyDataset} or Error{KTooLarge} (k == 0 or k > |data| - 1).
NeighborhoodIndex build_index(const Dataset& data, std::size_t k, Metric metric,
                              IndexStrategy strategy = IndexStrategy::Brute,
                              unsigned threads = 1);

/// max(d_k(p), d(p, o)).
double reach_dist(const NeighborhoodIndex& index, std::size_t p, std::size_t o);

/// Root mean square distance from o to the points of N_k(o).
double standard_distance(const NeighborhoodIndex& index, std::size_t o);

}  // namespace hypolo
