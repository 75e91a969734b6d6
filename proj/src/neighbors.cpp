#include "hypolo/neighbors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>
#include <utility>

#include "hypolo/error.hpp"
#include "parallel.hpp"

namespace hypolo {

std::string_view Metric::name() const noexcept {
    return kind_ == MetricKind::Hyperbolic ? "hyperbolic" : "euclidean";
}

Metric parse_metric(std::string_view name) {
    if (name == "hyperbolic") return Metric::hyperbolic();
    if (name == "euclidean") return Metric::euclidean();
    throw Error(Errc::InvalidConfig, "unknown metric '" + std::string(name) + "'");
}

std::string_view to_string(IndexStrategy strategy) noexcept {
    return strategy == IndexStrategy::Brute ? "brute" : "vptree";
}

IndexStrategy parse_index_strategy(std::string_view name) {
    if (name == "brute") return IndexStrategy::Brute;
    if (name == "vptree") return IndexStrategy::VpTree;
    throw Error(Errc::InvalidConfig, "unknown index strategy '" + std::string(name) + "'");
}

NeighborhoodIndex::NeighborhoodIndex(const Dataset& data, std::size_t k, Metric metric,
                                     std::vector<std::vector<Neighbor>> lists)
    : data_(&data), k_(k), metric_(metric), lists_(std::move(lists)) {
    k_distance_.reserve(lists_.size());
    for (const auto& list : lists_) k_distance_.push_back(list.at(k_ - 1).distance);
}

void NeighborhoodIndex::check_id(std::size_t id) const {
    if (id >= lists_.size()) {
        throw Error(Errc::UnknownId, "point id " + std::to_string(id) + " not in dataset of size " +
                                         std::to_string(lists_.size()));
    }
}

std::span<const Neighbor> NeighborhoodIndex::neighbors(std::size_t id) const {
    check_id(id);
    return lists_[id];
}

double NeighborhoodIndex::k_distance(std::size_t id) const {
    check_id(id);
    return k_distance_[id];
}

double NeighborhoodIndex::distance(std::size_t a, std::size_t b) const {
    check_id(a);
    check_id(b);
    return metric_(data_->point(a), data_->point(b));
}

namespace {

bool by_distance_then_id(const Neighbor& a, const Neighbor& b) {
    return a.distance < b.distance || (a.distance == b.distance && a.id < b.id);
}

struct NeighborLess {
    bool operator()(const Neighbor& a, const Neighbor& b) const { return by_distance_then_id(a, b); }
};

std::vector<Neighbor> brute_neighbors(const std::vector<DiskPoint>& points, Metric metric,
                                      std::size_t query, std::size_t k) {
    std::vector<Neighbor> all;
    all.reserve(points.size() - 1);
    for (std::size_t j = 0; j < points.size(); ++j) {
        if (j != query) all.push_back({j, metric(points[query], points[j])});
    }
    std::sort(all.begin(), all.end(), by_distance_then_id);
    const double kth = all[k - 1].distance;
    auto end = std::find_if(all.begin() + static_cast<std::ptrdiff_t>(k), all.end(),
                            [kth](const Neighbor& n) { return n.distance > kth; });
    all.erase(end, all.end());
    return all;
}

// Vantage-point tree. Each node splits the remaining points at the median
// distance to its vantage point (the first point of its range): the inside
// child holds distances <= mu, the outside child distances >= mu.
class VpTree {
public:
    VpTree(const std::vector<DiskPoint>& points, Metric metric) : points_(points), metric_(metric) {
        std::vector<std::size_t> ids(points.size());
        for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = i;
        nodes_.reserve(points.size());
        root_ = build(ids, 0, ids.size());
    }

    // The k smallest (distance, id) pairs, query excluded.
    double kth_distance(std::size_t query, std::size_t k) const {
        std::priority_queue<Neighbor, std::vector<Neighbor>, NeighborLess> heap;
        knn(root_, query, k, heap);
        return heap.top().distance;
    }

    std::vector<Neighbor> within(std::size_t query, double radius) const {
        std::vector<Neighbor> out;
        range(root_, query, radius, out);
        std::sort(out.begin(), out.end(), by_distance_then_id);
        return out;
    }

private:
    struct Node {
        std::size_t vantage;
        double mu = 0.0;
        int inside = -1;
        int outside = -1;
    };

    // Computed distances obey the triangle inequality only up to rounding, so
    // pruning tests are relaxed by this much.
    static double slack(double a, double b) { return 1e-10 * (1.0 + a + b); }

    int build(std::vector<std::size_t>& ids, std::size_t begin, std::size_t end) {
        if (begin == end) return -1;
        const int index = static_cast<int>(nodes_.size());
        nodes_.push_back({ids[begin]});
        if (end - begin == 1) return index;

        const DiskPoint& vp = points_[ids[begin]];
        std::vector<Neighbor> rest;
        rest.reserve(end - begin - 1);
        for (std::size_t i = begin + 1; i < end; ++i) {
            rest.push_back({ids[i], metric_(vp, points_[ids[i]])});
        }
        const auto mid = rest.begin() + static_cast<std::ptrdiff_t>(rest.size() / 2);
        std::nth_element(rest.begin(), mid, rest.end(), by_distance_then_id);
        const double mu = mid->distance;
        for (std::size_t i = 0; i < rest.size(); ++i) ids[begin + 1 + i] = rest[i].id;

        const std::size_t split = begin + 1 + rest.size() / 2;
        const int inside = build(ids, begin + 1, split);
        const int outside = build(ids, split, end);
        nodes_[index].mu = mu;
        nodes_[index].inside = inside;
        nodes_[index].outside = outside;
        return index;
    }

    template <typename Heap>
    void knn(int index, std::size_t query, std::size_t k, Heap& heap) const {
        if (index < 0) return;
        const Node& node = nodes_[index];
        const double d = metric_(points_[query], points_[node.vantage]);
        if (node.vantage != query) {
            const Neighbor cand{node.vantage, d};
            if (heap.size() < k) {
                heap.push(cand);
            } else if (by_distance_then_id(cand, heap.top())) {
                heap.pop();
                heap.push(cand);
            }
        }
        const auto tau = [&] {
            return heap.size() < k ? std::numeric_limits<double>::infinity() : heap.top().distance;
        };
        const auto visit_inside = [&] {
            if (d - node.mu <= tau() + slack(d, node.mu)) knn(node.inside, query, k, heap);
        };
        const auto visit_outside = [&] {
            if (node.mu - d <= tau() + slack(d, node.mu)) knn(node.outside, query, k, heap);
        };
        if (d < node.mu) {
            visit_inside();
            visit_outside();
        } else {
            visit_outside();
            visit_inside();
        }
    }

    void range(int index, std::size_t query, double radius, std::vector<Neighbor>& out) const {
        if (index < 0) return;
        const Node& node = nodes_[index];
        const double d = metric_(points_[query], points_[node.vantage]);
        if (node.vantage != query && d <= radius) out.push_back({node.vantage, d});
        const double tol = radius + slack(d, node.mu);
        if (d - node.mu <= tol) range(node.inside, query, radius, out);
        if (node.mu - d <= tol) range(node.outside, query, radius, out);
    }

    const std::vector<DiskPoint>& points_;
    Metric metric_;
    std::vector<Node> nodes_;
    int root_ = -1;
};

}  // namespace

NeighborhoodIndex build_index(const Dataset& data, std::size_t k, Metric metric,
                              IndexStrategy strategy, unsigned threads) {
    if (data.empty()) throw Error(Errc::EmptyDataset, "cannot index an empty dataset");
    if (k == 0 || k > data.size() - 1) {
        std::ostringstream msg;
        msg << "k = " << k << " must lie in [1, " << data.size() - 1 << "] for " << data.size()
            << " points";
        throw Error(Errc::KTooLarge, msg.str());
    }
    const auto& points = data.points();
    std::vector<std::vector<Neighbor>> lists(points.size());
    if (strategy == IndexStrategy::Brute) {
        detail::parallel_for(points.size(), threads, [&](std::size_t q) {
            lists[q] = brute_neighbors(points, metric, q, k);
        });
    } else {
        const VpTree tree(points, metric);
        detail::parallel_for(points.size(), threads, [&](std::size_t q) {
            lists[q] = tree.within(q, tree.kth_distance(q, k));
        });
    }
    return NeighborhoodIndex(data, k, metric, std::move(lists));
}

double reach_dist(const NeighborhoodIndex& index, std::size_t p, std::size_t o) {
    return std::max(index.k_distance(p), index.distance(p, o));
}

double standard_distance(const NeighborhoodIndex& index, std::size_t o) {
    const auto list = index.neighbors(o);
    double sum = 0.0;
    for (const auto& n : list) sum += n.distance * n.distance;
    return std::sqrt(sum / static_cast<double>(list.size()));
}

}  // namespace hypolo
