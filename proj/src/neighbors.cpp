// Copyright 2026 The Minilearn Authors
// SPDX-License-Identifier: Apache-2.0

#include "minilearn/neighbors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>

namespace ml::neighbors {

BallTree::BallTree(const Matrix& X, std::size_t leaf_size)
    : leaf_size_(std::max<std::size_t>(leaf_size, 1)) {
    if (X.n_samples() < 1)
        throw Error(ErrorCode::InvalidArgument, "ball tree needs at least one point");
    perm_.resize(X.n_samples());
    std::iota(perm_.begin(), perm_.end(), 0);
    build(X, 0, perm_.size());
}

int BallTree::build(const Matrix& X, std::size_t begin, std::size_t end) {
    const int node_index = static_cast<int>(nodes_.size());
    nodes_.emplace_back();

    Eigen::RowVectorXd centroid =
        Eigen::RowVectorXd::Zero(static_cast<Eigen::Index>(X.n_features()));
    for (std::size_t i = begin; i < end; ++i) centroid += X.row(perm_[i]);
    centroid /= static_cast<double>(end - begin);

    double radius_sq = 0.0;
    for (std::size_t i = begin; i < end; ++i)
        radius_sq = std::max(radius_sq, (X.row(perm_[i]) - centroid).squaredNorm());

    nodes_[node_index].centroid = centroid;
    nodes_[node_index].radius = std::sqrt(radius_sq);
    nodes_[node_index].begin = begin;
    nodes_[node_index].end = end;

    if (end - begin <= leaf_size_) return node_index;

    // split along the dimension of largest spread (ties to the lower
    // dimension), at the median
    std::size_t split_dim = 0;
    double best_spread = -1.0;
    for (std::size_t d = 0; d < X.n_features(); ++d) {
        double lo = X(perm_[begin], d), hi = lo;
        for (std::size_t i = begin + 1; i < end; ++i) {
            const double v = X(perm_[i], d);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        if (hi - lo > best_spread) {
            best_spread = hi - lo;
            split_dim = d;
        }
    }

    std::sort(perm_.begin() + static_cast<std::ptrdiff_t>(begin),
              perm_.begin() + static_cast<std::ptrdiff_t>(end),
              [&](std::size_t a, std::size_t b) {
                  const double va = X(a, split_dim), vb = X(b, split_dim);
                  return va != vb ? va < vb : a < b;
              });
    const std::size_t mid = begin + (end - begin) / 2;

    const int left = build(X, begin, mid);
    const int right = build(X, mid, end);
    nodes_[node_index].left = left;
    nodes_[node_index].right = right;
    return node_index;
}

namespace {

// fixed-size worst-first pool of (squared distance, index) candidates
class NeighborHeap {
public:
    explicit NeighborHeap(std::size_t k) : k_(k) {}

    bool full() const { return heap_.size() == k_; }
    double worst_dist_sq() const { return heap_.front().first; }

    void offer(double dist_sq, std::size_t index) {
        if (heap_.size() < k_) {
            heap_.emplace_back(dist_sq, index);
            std::push_heap(heap_.begin(), heap_.end(), less);
            return;
        }
        if (less(std::make_pair(dist_sq, index), heap_.front())) {
            std::pop_heap(heap_.begin(), heap_.end(), less);
            heap_.back() = {dist_sq, index};
            std::push_heap(heap_.begin(), heap_.end(), less);
        }
    }

    std::vector<std::size_t> sorted_indices() {
        std::sort(heap_.begin(), heap_.end(), less);
        std::vector<std::size_t> out;
        out.reserve(heap_.size());
        for (const auto& [d, i] : heap_) out.push_back(i);
        return out;
    }

private:
    static bool less(const std::pair<double, std::size_t>& a,
                     const std::pair<double, std::size_t>& b) {
        return a.first != b.first ? a.first < b.first : a.second < b.second;
    }

    std::size_t k_;
    std::vector<std::pair<double, std::size_t>> heap_;
};

void query_node(const BallTree& tree, const Matrix& X, const Eigen::RowVectorXd& q,
                int node_index, NeighborHeap& heap) {
    const BallTreeNode& node = tree.nodes()[static_cast<std::size_t>(node_index)];
    const double centroid_dist = std::sqrt((q - node.centroid).squaredNorm());
    if (heap.full()) {
        // conservative triangle-inequality bound: the slack absorbs the
        // rounding of the centroid distance so exact ties are never pruned
        const double bound = centroid_dist - node.radius;
        if (bound > 0.0 && bound * bound > heap.worst_dist_sq() * (1.0 + 1e-9) +
                               1e-24 * (1.0 + centroid_dist * centroid_dist))
            return;
    }
    if (node.is_leaf()) {
        for (std::size_t i = node.begin; i < node.end; ++i) {
            const std::size_t point = tree.permutation()[i];
            heap.offer((q - X.row(point)).squaredNorm(), point);
        }
        return;
    }
    // nearer child first tightens the bound sooner
    const auto& left = tree.nodes()[static_cast<std::size_t>(node.left)];
    const auto& right = tree.nodes()[static_cast<std::size_t>(node.right)];
    const double dl = (q - left.centroid).squaredNorm();
    const double dr = (q - right.centroid).squaredNorm();
    if (dl <= dr) {
        query_node(tree, X, q, node.left, heap);
        query_node(tree, X, q, node.right, heap);
    } else {
        query_node(tree, X, q, node.right, heap);
        query_node(tree, X, q, node.left, heap);
    }
}

}  // namespace

std::vector<std::size_t> knn_query(const BallTree& tree, const Matrix& X_train,
                                   const Eigen::RowVectorXd& q, std::size_t k) {
    if (k < 1 || k > tree.n_points())
        throw Error(ErrorCode::KTooLarge, "k must lie in 1..n_samples");
    NeighborHeap heap(k);
    query_node(tree, X_train, q, 0, heap);
    return heap.sorted_indices();
}

std::vector<std::size_t> brute_force_query(const Matrix& X_train, const Eigen::RowVectorXd& q,
                                           std::size_t k) {
    if (k < 1 || k > X_train.n_samples())
        throw Error(ErrorCode::KTooLarge, "k must lie in 1..n_samples");
    NeighborHeap heap(k);
    for (std::size_t i = 0; i < X_train.n_samples(); ++i)
        heap.offer((q - X_train.row(i)).squaredNorm(), i);
    return heap.sorted_indices();
}

Labels knn_classify(const KnnParams& params, const Matrix& X_train, const Labels& y_train,
                    const Matrix& X_query) {
    if (y_train.size() != X_train.n_samples())
        throw ShapeMismatchError("label length does not match sample count");
    if (X_query.n_features() != X_train.n_features() && X_query.n_samples() > 0)
        throw ShapeMismatchError("query feature count does not match training data");
    if (params.k < 1 || params.k > X_train.n_samples())
        throw Error(ErrorCode::KTooLarge, "k must lie in 1..n_samples");

    const Labels y = y_train.to_classes();
    const auto& codes = y.class_codes();
    const int n_classes = static_cast<int>(y.class_names().size());

    const bool brute = params.strategy == KnnParams::Strategy::Brute ||
                       (params.strategy == KnnParams::Strategy::Auto &&
                        use_brute_force(X_train.n_features(), params.dim_threshold));

    std::optional<BallTree> tree;
    if (!brute) tree.emplace(X_train, params.leaf_size);

    std::vector<int> out_codes;
    out_codes.reserve(X_query.n_samples());
    for (std::size_t qi = 0; qi < X_query.n_samples(); ++qi) {
        const Eigen::RowVectorXd q = X_query.row(qi);
        const std::vector<std::size_t> nn =
            brute ? brute_force_query(X_train, q, params.k) : knn_query(*tree, X_train, q, params.k);

        std::vector<int> votes(static_cast<std::size_t>(n_classes), 0);
        std::vector<double> dist_sum(static_cast<std::size_t>(n_classes), 0.0);
        for (std::size_t i : nn) {
            const int c = codes[i];
            votes[static_cast<std::size_t>(c)] += 1;
            dist_sum[static_cast<std::size_t>(c)] += std::sqrt((q - X_train.row(i)).squaredNorm());
        }
        int best = -1;
        for (int c = 0; c < n_classes; ++c) {
            if (votes[static_cast<std::size_t>(c)] == 0) continue;
            if (best < 0 || votes[static_cast<std::size_t>(c)] > votes[static_cast<std::size_t>(best)] ||
                (votes[static_cast<std::size_t>(c)] == votes[static_cast<std::size_t>(best)] &&
                 dist_sum[static_cast<std::size_t>(c)] < dist_sum[static_cast<std::size_t>(best)]))
                best = c;
        }
        out_codes.push_back(best);
    }
    return Labels::from_codes(std::move(out_codes), y.class_names());
}

}  // namespace ml::neighbors
