#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "numeric.hpp"

namespace poset_zeta {

/// Dense row-major matrix addressed by "logical" indices starting at
/// -index_offset.  The combinatorial matrices of barycentric subdivision are
/// indexed -1..d, so they use index_offset = 1 and every accessor takes the
/// logical index directly.
template <typename T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, int index_offset = 0)
        : rows_(rows), cols_(cols), offset_(index_offset), data_(rows * cols, T(0)) {}

    static Matrix identity(std::size_t n, int index_offset = 0) {
        Matrix m(n, n, index_offset);
        for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = T(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    int index_offset() const { return offset_; }
    long first_index() const { return -offset_; }
    long last_row_index() const { return static_cast<long>(rows_) - 1 - offset_; }
    long last_col_index() const { return static_cast<long>(cols_) - 1 - offset_; }

    T& at(long i, long j) { return data_[slot(i, j)]; }
    const T& at(long i, long j) const { return data_[slot(i, j)]; }

    /// Zero outside the stored range; convenient for recurrences.
    T get_or_zero(long i, long j) const {
        if (i < first_index() || i > last_row_index() || j < first_index() || j > last_col_index())
            return T(0);
        return at(i, j);
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) fail(ErrorCode::InvalidConfig, "matrix shape mismatch");
        Matrix r(a.rows_, b.cols_, a.offset_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const T& aik = a.data_[i * a.cols_ + k];
                if (aik == 0) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) r.data_[i * r.cols_ + j] += aik * b.data_[k * b.cols_ + j];
            }
        return r;
    }

    std::vector<T> apply(const std::vector<T>& v) const {
        if (v.size() != cols_) fail(ErrorCode::InvalidConfig, "vector length mismatch");
        std::vector<T> r(rows_, T(0));
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r[i] += data_[i * cols_ + j] * v[j];
        return r;
    }

    /// Entry-wise equality; the index offset is a view convention and is ignored.
    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    std::size_t slot(long i, long j) const {
        const long r = i + offset_;
        const long c = j + offset_;
        if (r < 0 || c < 0 || r >= static_cast<long>(rows_) || c >= static_cast<long>(cols_))
            fail(ErrorCode::IndexOutOfRange,
                 "matrix index (" + std::to_string(i) + "," + std::to_string(j) + ") out of range");
        return static_cast<std::size_t>(r) * cols_ + static_cast<std::size_t>(c);
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    int offset_ = 0;
    std::vector<T> data_;
};

using ExactMatrix = Matrix<Rational>;

} // namespace poset_zeta
