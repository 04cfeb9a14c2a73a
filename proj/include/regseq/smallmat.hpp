#pragma once

// Dense matrices/vectors over an arbitrary scalar, used for the exact layer.
// Numeric (double-complex) linear algebra goes through Eigen instead.

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "regseq/rational.hpp"

namespace regseq {

template <typename T>
class DenseMat {
  public:
    DenseMat() = default;
    DenseMat(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols, T{}) {}

    static DenseMat identity(int n) {
        DenseMat m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = T{1};
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    T& operator()(int i, int j) { return a_[size_t(i) * cols_ + j]; }
    const T& operator()(int i, int j) const { return a_[size_t(i) * cols_ + j]; }

    friend DenseMat operator*(const DenseMat& a, const DenseMat& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product shape mismatch");
        DenseMat c(a.rows_, b.cols_);
        for (int i = 0; i < a.rows_; ++i)
            for (int k = 0; k < a.cols_; ++k) {
                const T& aik = a(i, k);
                if (aik == T{}) continue;
                for (int j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
            }
        return c;
    }
    friend DenseMat operator+(const DenseMat& a, const DenseMat& b) {
        DenseMat c(a.rows_, a.cols_);
        for (size_t i = 0; i < a.a_.size(); ++i) c.a_[i] = a.a_[i] + b.a_[i];
        return c;
    }
    friend DenseMat operator-(const DenseMat& a, const DenseMat& b) {
        DenseMat c(a.rows_, a.cols_);
        for (size_t i = 0; i < a.a_.size(); ++i) c.a_[i] = a.a_[i] - b.a_[i];
        return c;
    }
    friend bool operator==(const DenseMat& a, const DenseMat& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
    }

    std::vector<T> apply(const std::vector<T>& v) const {
        if (int(v.size()) != cols_) throw std::invalid_argument("matrix apply shape mismatch");
        std::vector<T> out(rows_, T{});
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
        return out;
    }

  private:
    int rows_ = 0, cols_ = 0;
    std::vector<T> a_;
};

using QMat = DenseMat<GRational>;
using QVec = std::vector<GRational>;

inline QVec operator+(const QVec& a, const QVec& b) {
    QVec c(a.size());
    for (size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
    return c;
}

inline GRational dot(const QVec& a, const QVec& b) {
    GRational s;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline std::complex<double> to_complex(const GRational& v) {
    return {rational_to_double(v.re), rational_to_double(v.im)};
}

}  // namespace regseq
