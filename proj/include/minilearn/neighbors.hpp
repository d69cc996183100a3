// Copyright 2026 The Minilearn Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <vector>

#include "minilearn/labels.hpp"
#include "minilearn/matrix.hpp"

namespace ml::neighbors {

struct BallTreeNode {
    Eigen::RowVectorXd centroid;
    double radius = 0.0;
    int left = -1;   // children, -1 for leaves
    int right = -1;
    std::size_t begin = 0;  // index range into the tree's permutation
    std::size_t end = 0;
    bool is_leaf() const { return left < 0; }
};

// Binary ball cover of the training points. Nodes hold [begin, end) ranges
// of a permutation of 0..n-1; leaves hold at most leaf_size points and
// internal nodes have exactly two children. The tree stores no point data;
// queries take the original matrix.
class BallTree {
public:
    BallTree(const Matrix& X, std::size_t leaf_size);

    const std::vector<BallTreeNode>& nodes() const { return nodes_; }
    const std::vector<std::size_t>& permutation() const { return perm_; }
    std::size_t leaf_size() const { return leaf_size_; }
    std::size_t n_points() const { return perm_.size(); }

private:
    int build(const Matrix& X, std::size_t begin, std::size_t end);

    std::vector<BallTreeNode> nodes_;
    std::vector<std::size_t> perm_;
    std::size_t leaf_size_;
};

inline BallTree ball_tree_build(const Matrix& X, std::size_t leaf_size) {
    return BallTree(X, leaf_size);
}

// The k training indices nearest to q, ascending by (distance, index).
// Triangle-inequality pruning; results always coincide with a linear scan.
std::vector<std::size_t> knn_query(const BallTree& tree, const Matrix& X_train,
                                   const Eigen::RowVectorXd& q, std::size_t k);

std::vector<std::size_t> brute_force_query(const Matrix& X_train, const Eigen::RowVectorXd& q,
                                           std::size_t k);

struct KnnParams {
    enum class Strategy { Auto, BallTree, Brute };
    std::size_t k = 5;
    Strategy strategy = Strategy::Auto;
    std::size_t leaf_size = 30;
    std::size_t dim_threshold = 20;
};

// Auto dispatch: brute force above the dimension threshold.
inline bool use_brute_force(std::size_t n_features, std::size_t dim_threshold) {
    return n_features > dim_threshold;
}

// Majority vote among the k nearest; ties go to the class with the smaller
// summed distance, then the lower class code.
Labels knn_classify(const KnnParams& params, const Matrix& X_train, const Labels& y_train,
                    const Matrix& X_query);

}  // namespace ml::neighbors
