// Copyright 2026 The Minilearn Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "minilearn/datasets.hpp"
#include "minilearn/estimator.hpp"
#include "oracles.hpp"

using namespace ml;
using namespace ml::datasets;

namespace {

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name, const std::string& contents)
        : path("minilearn_test_" + name) {
        std::ofstream out(path);
        out << contents;
    }
    ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("generator honors the requested shape") {
    MadelonSpec spec;
    spec.n_samples = 4400;
    spec.n_features = 500;
    const auto [X, y] = make_madelon(spec);
    CHECK(X.n_samples() == 4400);
    CHECK(X.n_features() == 500);
    CHECK(y.size() == 4400);
    CHECK(y.class_names() == std::vector<std::string>{"0", "1"});
}

TEST_CASE("wide separation without flips is linearly separable") {
    MadelonSpec spec;
    spec.n_samples = 120;
    spec.n_features = 12;
    spec.n_informative = 3;
    spec.n_redundant = 3;
    spec.class_sep = 8.0;
    spec.flip_fraction = 0.0;
    spec.seed = 5;
    const auto [X, y] = make_madelon(spec);

    const Model svc =
        fit(EstimatorSpec("svc").set("kernel", std::string("linear")).set("c", 10.0), X, &y);
    CHECK(svc.score(X, y) == 1.0);
}

TEST_CASE("identical specs generate identical bytes") {
    MadelonSpec spec;
    spec.n_samples = 60;
    spec.n_features = 10;
    spec.n_informative = 3;
    spec.n_redundant = 2;
    spec.seed = 77;
    spec.flip_fraction = 0.05;
    const auto [Xa, ya] = make_madelon(spec);
    const auto [Xb, yb] = make_madelon(spec);
    CHECK(Xa.eigen() == Xb.eigen());
    CHECK(ya == yb);

    MadelonSpec other = spec;
    other.seed = 78;
    const auto [Xc, yc] = make_madelon(other);
    CHECK(Xa.eigen() != Xc.eigen());
}

TEST_CASE("flip fraction inverts that share of labels") {
    MadelonSpec spec;
    spec.n_samples = 200;
    spec.n_features = 6;
    spec.n_informative = 2;
    spec.n_redundant = 0;
    spec.seed = 9;
    spec.flip_fraction = 0.0;
    const auto [X0, y0] = make_madelon(spec);
    spec.flip_fraction = 0.1;
    const auto [X1, y1] = make_madelon(spec);

    CHECK(X0.eigen() == X1.eigen());
    int changed = 0;
    for (std::size_t i = 0; i < 200; ++i)
        changed += y0.class_codes()[i] != y1.class_codes()[i];
    CHECK(changed == 20);
}

TEST_CASE("bad generator specs are rejected") {
    MadelonSpec spec;
    spec.n_features = 10;
    spec.n_informative = 8;
    spec.n_redundant = 8;
    CHECK_THROWS_AS(make_madelon(spec), Error);
    spec = MadelonSpec{};
    spec.flip_fraction = 1.0;
    CHECK_THROWS_AS(make_madelon(spec), Error);
}

TEST_CASE("csv: plain numeric table") {
    const TempFile f("plain.csv", "1,2\n3,4\n");
    const auto [X, y] = load_csv(f.path);
    CHECK(!y.has_value());
    CHECK(X.n_samples() == 2);
    CHECK(X.n_features() == 2);
    CHECK(X(0, 0) == 1.0);
    CHECK(X(1, 1) == 4.0);
}

TEST_CASE("csv: header with a named label column") {
    const TempFile f("named.csv", "a,b,y\n1,2,0\n3,4,1\n");
    const auto [X, y] = load_csv(f.path, LabelColumn::by_name("y"));
    REQUIRE(y.has_value());
    CHECK(X.n_features() == 2);
    CHECK(y->kind() == Labels::Kind::Real);
    CHECK(y->real_values() == std::vector<double>{0.0, 1.0});
}

TEST_CASE("csv: string labels load as classes") {
    const TempFile f("classes.csv", "a,b,kind\n1,2,spam\n3,4,ham\n5,6,spam\n");
    const auto [X, y] = load_csv(f.path, LabelColumn::by_name("kind"));
    REQUIRE(y.has_value());
    CHECK(y->kind() == Labels::Kind::Class);
    CHECK(y->class_names() == std::vector<std::string>{"ham", "spam"});
    CHECK(X.n_samples() == 3);
}

TEST_CASE("csv: label column by position") {
    const TempFile f("indexed.csv", "9,1,2\n8,3,4\n");
    const auto [X, y] = load_csv(f.path, LabelColumn::by_index(0));
    REQUIRE(y.has_value());
    CHECK(y->real_values() == std::vector<double>{9.0, 8.0});
    CHECK(X(0, 0) == 1.0);
}

TEST_CASE("csv: ragged rows report their line number") {
    const TempFile f("ragged.csv", "1,2\n3,4\n5,6,7\n");
    try {
        load_csv(f.path);
        FAIL("expected RaggedRow");
    } catch (const ParseErrorAt& e) {
        CHECK(e.code() == ErrorCode::RaggedRow);
        CHECK(e.line() == 3);
    }
}

TEST_CASE("csv: non-numeric body cells report ParseError") {
    const TempFile f("alpha.csv", "1,2\n3,oops\n");
    try {
        load_csv(f.path);
        FAIL("expected ParseError");
    } catch (const ParseErrorAt& e) {
        CHECK(e.code() == ErrorCode::ParseError);
        CHECK(e.line() == 2);
    }
    CHECK_THROWS_AS(load_csv("no_such_file.csv"), ParseErrorAt);
}

TEST_CASE("csv round-trip reproduces the values") {
    const Matrix X = oracles::random_matrix(12, 5, 10001);
    const Labels y = Labels::reals(oracles::random_vector(12, 10002));
    const TempFile f("roundtrip.csv", "");
    save_csv(f.path, X, &y);
    const auto [X2, y2] = load_csv(f.path, LabelColumn::by_name("label"));
    REQUIRE(y2.has_value());
    CHECK(X2.eigen() == X.eigen());
    CHECK(*y2 == y);
}

TEST_CASE("svmlight: dense rows from sparse pairs") {
    const TempFile f("ok.svm", "1 1:0.5 3:2.0\n-1 2:1.5\n");
    const auto [X, y] = load_svmlight(f.path);
    CHECK(X.n_samples() == 2);
    CHECK(X.n_features() == 3);
    CHECK(X(0, 0) == 0.5);
    CHECK(X(0, 1) == 0.0);
    CHECK(X(0, 2) == 2.0);
    CHECK(X(1, 1) == 1.5);
    CHECK(y.real_values() == std::vector<double>{1.0, -1.0});
}

TEST_CASE("svmlight: a label with no features is an all-zero row") {
    const TempFile f("zero.svm", "1 1:1\n-1\n1 2:3\n");
    const auto [X, y] = load_svmlight(f.path);
    CHECK(X.n_samples() == 3);
    CHECK(X.row(1).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("svmlight: non-ascending indices are rejected with the line number") {
    const TempFile f("bad.svm", "1 1:1 2:2\n1 3:1 2:1\n");
    try {
        load_svmlight(f.path);
        FAIL("expected NonAscendingIndex");
    } catch (const ParseErrorAt& e) {
        CHECK(e.code() == ErrorCode::NonAscendingIndex);
        CHECK(e.line() == 2);
    }

    const TempFile g("dup.svm", "1 2:1 2:2\n");
    CHECK_THROWS_AS(load_svmlight(g.path), ParseErrorAt);

    const TempFile h("mangled.svm", "1 5\n");
    CHECK_THROWS_AS(load_svmlight(h.path), ParseErrorAt);
}
