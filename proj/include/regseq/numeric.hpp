#pragma once

// Conversions between the exact layer and Eigen's complex linear algebra,
// plus the max-row-sum norm used throughout.

#include <Eigen/Dense>
#include <complex>

#include "regseq/linrep.hpp"

namespace regseq {

using cplx = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

inline CMat to_complex(const QMat& m) {
    CMat out(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) out(i, j) = to_complex(m(i, j));
    return out;
}

inline CVec to_complex(const QVec& v) {
    CVec out(v.size());
    for (size_t i = 0; i < v.size(); ++i) out(long(i)) = to_complex(v[i]);
    return out;
}

/// Induced infinity norm (maximum absolute row sum).
inline double row_sum_norm(const CMat& m) {
    double best = 0.0;
    for (int i = 0; i < m.rows(); ++i) {
        double s = 0.0;
        for (int j = 0; j < m.cols(); ++j) s += std::abs(m(i, j));
        best = std::max(best, s);
    }
    return best;
}

inline double inf_norm(const CVec& v) {
    double best = 0.0;
    for (int i = 0; i < v.size(); ++i) best = std::max(best, std::abs(v(i)));
    return best;
}

struct ComplexRepresentation {
    int q = 2;
    int d = 1;
    std::vector<CMat> matrices;
    CVec v0;
    CVec e;
};

inline ComplexRepresentation to_complex(const LinearRepresentation& rep) {
    ComplexRepresentation out;
    out.q = rep.q;
    out.d = rep.d;
    for (const auto& m : rep.matrices) out.matrices.push_back(to_complex(m));
    out.v0 = to_complex(rep.v0);
    out.e = to_complex(rep.e);
    return out;
}

}  // namespace regseq
