// Copyright 2026 The Minilearn Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <set>

#include "minilearn/neighbors.hpp"
#include "oracles.hpp"

using namespace ml;
using neighbors::BallTree;
using neighbors::KnnParams;

namespace {

void check_structure(const BallTree& tree, const Matrix& X) {
    const auto& nodes = tree.nodes();
    REQUIRE(!nodes.empty());
    std::vector<std::size_t> leaf_members;
    for (const auto& node : nodes) {
        // containment: every point of the node within its radius
        for (std::size_t i = node.begin; i < node.end; ++i) {
            const std::size_t point = tree.permutation()[i];
            const double d = (X.row(point) - node.centroid).norm();
            CHECK(d <= node.radius + 1e-9);
        }
        if (node.is_leaf()) {
            CHECK(node.end - node.begin <= tree.leaf_size());
            for (std::size_t i = node.begin; i < node.end; ++i)
                leaf_members.push_back(tree.permutation()[i]);
        } else {
            CHECK(node.left >= 0);
            CHECK(node.right >= 0);
            const auto& l = nodes[static_cast<std::size_t>(node.left)];
            const auto& r = nodes[static_cast<std::size_t>(node.right)];
            CHECK(l.begin == node.begin);
            CHECK(l.end == r.begin);
            CHECK(r.end == node.end);
        }
    }
    // leaves partition 0..n-1
    std::sort(leaf_members.begin(), leaf_members.end());
    REQUIRE(leaf_members.size() == X.n_samples());
    for (std::size_t i = 0; i < leaf_members.size(); ++i) CHECK(leaf_members[i] == i);
}

}  // namespace

TEST_CASE("small inputs build a single leaf") {
    const Matrix X = oracles::random_matrix(7, 3, 5001);
    const BallTree tree = neighbors::ball_tree_build(X, 10);
    CHECK(tree.nodes().size() == 1);
    CHECK(tree.nodes()[0].is_leaf());
    check_structure(tree, X);
}

TEST_CASE("structural invariants hold on seeded point sets") {
    for (const std::uint64_t seed : {1, 2, 3}) {
        const Matrix X = oracles::random_matrix(100, 2, 5100 + seed);
        const BallTree tree = neighbors::ball_tree_build(X, 5);
        check_structure(tree, X);
    }
}

TEST_CASE("duplicate points build a valid tree with both indices present") {
    RowMatrixXd m(6, 2);
    m << 1.0, 1.0, 1.0, 1.0, 2.0, 2.0, 2.0, 2.0, 3.0, 3.0, 1.0, 1.0;
    const Matrix X{std::move(m)};
    const BallTree tree = neighbors::ball_tree_build(X, 2);
    check_structure(tree, X);

    const std::vector<std::size_t> nn = neighbors::knn_query(tree, X, X.row(0), 3);
    CHECK(nn == std::vector<std::size_t>{0, 1, 5});  // duplicates ascend by index
}

TEST_CASE("querying a training point returns it first") {
    const Matrix X = oracles::random_matrix(50, 4, 5201);
    const BallTree tree = neighbors::ball_tree_build(X, 8);
    for (const std::size_t i : {0u, 17u, 49u}) {
        const auto nn = neighbors::knn_query(tree, X, X.row(i), 3);
        CHECK(nn.front() == i);
    }
}

TEST_CASE("tree queries equal the reference scan across seeded workloads") {
    const Matrix X = oracles::random_matrix(200, 5, 5301);
    const BallTree tree = neighbors::ball_tree_build(X, 6);
    Rng rng(5302);
    for (int q = 0; q < 50; ++q) {
        Eigen::RowVectorXd query(5);
        for (int d = 0; d < 5; ++d) query(d) = 2.0 * rng.gaussian();
        const std::size_t k = 1 + rng.uniform_int(10);
        CHECK(neighbors::knn_query(tree, X, query, k) == oracles::knn_reference(X, query, k));
        CHECK(neighbors::brute_force_query(X, query, k) == oracles::knn_reference(X, query, k));
    }
}

TEST_CASE("equidistant neighbors return the lower index first") {
    const Matrix X = Matrix::from_rows({{1.0, 0.0}, {-1.0, 0.0}, {5.0, 5.0}});
    const BallTree tree = neighbors::ball_tree_build(X, 1);
    const Eigen::RowVectorXd origin = Eigen::RowVectorXd::Zero(2);
    const auto nn = neighbors::knn_query(tree, X, origin, 2);
    CHECK(nn == std::vector<std::size_t>{0, 1});
}

TEST_CASE("k out of range raises KTooLarge") {
    const Matrix X = oracles::random_matrix(10, 2, 5401);
    const BallTree tree = neighbors::ball_tree_build(X, 4);
    CHECK_THROWS_AS(neighbors::knn_query(tree, X, X.row(0), 11), Error);
    CHECK_THROWS_AS(neighbors::brute_force_query(X, X.row(0), 0), Error);

    KnnParams params;
    params.k = 11;
    const Labels y = Labels::classes(std::vector<std::string>(10, "a"));
    CHECK_THROWS_AS(neighbors::knn_classify(params, X, y, X), Error);
}

TEST_CASE("k equals n votes the global majority everywhere") {
    const Matrix X = oracles::random_matrix(9, 3, 5501);
    std::vector<std::string> raw{"a", "a", "a", "a", "a", "b", "b", "b", "b"};
    const Labels y = Labels::classes(raw);
    KnnParams params;
    params.k = 9;
    const Labels out = neighbors::knn_classify(params, X, y, oracles::random_matrix(5, 3, 5502));
    for (std::size_t i = 0; i < out.size(); ++i) CHECK(out.name_of(i) == "a");
}

TEST_CASE("ball-tree and brute-force strategies agree label for label") {
    const Matrix X = oracles::random_matrix(300, 10, 5601);
    std::vector<std::string> raw;
    Rng rng(5602);
    for (int i = 0; i < 300; ++i)
        raw.push_back(rng.uniform() < 0.33 ? "u" : (rng.uniform() < 0.5 ? "v" : "w"));
    const Labels y = Labels::classes(raw);
    const Matrix Q = oracles::random_matrix(60, 10, 5603);

    KnnParams tree_params;
    tree_params.k = 7;
    tree_params.strategy = KnnParams::Strategy::BallTree;
    KnnParams brute_params;
    brute_params.k = 7;
    brute_params.strategy = KnnParams::Strategy::Brute;

    CHECK(neighbors::knn_classify(tree_params, X, y, Q) ==
          neighbors::knn_classify(brute_params, X, y, Q));
}

TEST_CASE("k=1 reproduces training labels") {
    const Matrix X = oracles::random_matrix(30, 6, 5701);
    std::vector<std::string> raw;
    Rng rng(5702);
    for (int i = 0; i < 30; ++i) raw.push_back(rng.uniform() < 0.5 ? "p" : "q");
    const Labels y = Labels::classes(raw);
    KnnParams params;
    params.k = 1;
    CHECK(neighbors::knn_classify(params, X, y, X) == y);
}

TEST_CASE("auto strategy is a pure function of width and threshold") {
    CHECK(!neighbors::use_brute_force(20, 20));
    CHECK(neighbors::use_brute_force(21, 20));
    CHECK(!neighbors::use_brute_force(3, 20));
    CHECK(neighbors::use_brute_force(4, 3));
}

TEST_CASE("vote ties: smaller summed distance, then lower class code") {
    // two neighbors each, class 'a' closer in total
    const Matrix X = Matrix::from_rows({{1.0}, {-2.0}});
    const Labels y = Labels::classes({"a", "b"});
    KnnParams params;
    params.k = 2;
    const Labels out = neighbors::knn_classify(params, X, y, Matrix::from_rows({{0.0}}));
    CHECK(out.name_of(0) == "a");

    // perfectly symmetric: falls to the lower class code
    const Matrix X2 = Matrix::from_rows({{1.0}, {-1.0}});
    const Labels y2 = Labels::classes({"b", "a"});  // codes: a=0 at row 1, b=1 at row 0
    const Labels out2 = neighbors::knn_classify(params, X2, y2, Matrix::from_rows({{0.0}}));
    CHECK(out2.name_of(0) == "a");
}
