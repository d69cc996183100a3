// Copyright 2026 The Minilearn Authors
// SPDX-License-Identifier: Apache-2.0

#include "minilearn/matrix.hpp"

namespace ml {

Matrix::Matrix(RowMatrixXd values) : data_(std::move(values)) { validate(); }

Matrix::Matrix(std::size_t n_samples, std::size_t n_features, const double* row_major)
    : data_(Eigen::Map<const RowMatrixXd>(row_major, static_cast<Eigen::Index>(n_samples),
                                          static_cast<Eigen::Index>(n_features))) {
    validate();
}

Matrix Matrix::zeros(std::size_t n_samples, std::size_t n_features) {
    return Matrix(RowMatrixXd::Zero(static_cast<Eigen::Index>(n_samples),
                                    static_cast<Eigen::Index>(n_features)));
}

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
    std::vector<std::vector<double>> v;
    v.reserve(rows.size());
    for (const auto& r : rows) v.emplace_back(r);
    return from_rows(v);
}

Matrix Matrix::from_rows(const std::vector<std::vector<double>>& rows) {
    if (rows.empty()) throw Error(ErrorCode::InvalidArgument, "matrix needs at least one row");
    const std::size_t cols = rows.front().size();
    RowMatrixXd m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols)
            throw ShapeMismatchError("matrix rows have inconsistent lengths");
        for (std::size_t j = 0; j < cols; ++j)
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
    return Matrix(std::move(m));
}

Matrix Matrix::select_rows(std::span<const std::size_t> indices) const {
    RowMatrixXd out(static_cast<Eigen::Index>(indices.size()), data_.cols());
    for (std::size_t i = 0; i < indices.size(); ++i) {
        if (indices[i] >= n_samples())
            throw Error(ErrorCode::InvalidArgument, "row index out of range");
        out.row(static_cast<Eigen::Index>(i)) = data_.row(static_cast<Eigen::Index>(indices[i]));
    }
    Matrix result;
    result.data_ = std::move(out);
    return result;
}

void Matrix::validate() const {
    if (data_.cols() < 1)
        throw Error(ErrorCode::InvalidArgument, "matrix needs at least one feature column");
    if (!data_.allFinite())
        throw Error(ErrorCode::InvalidArgument, "matrix contains NaN or infinite entries");
}

}  // namespace ml
