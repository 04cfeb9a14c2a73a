#pragma once

// q-linear representations: exact evaluation and summation of q-regular
// sequences given by v(qn+r) = A_r v(n), and of the matrix products
// f(n) = A_{r_0} ... A_{r_{l-1}}.
//
// Digit expansions are stored little-endian (least significant first); the
// matrix for the least significant digit is the leftmost product factor.
// Some toolkits use the reversed convention, so this is worth stating once.

#include <cstdint>
#include <string>
#include <vector>

#include "regseq/smallmat.hpp"

namespace regseq {

enum class RepMode { sequence, matrix_product };

/// Little-endian q-ary expansion; the expansion of 0 is empty and the
/// leading (last) digit of a nonempty expansion is nonzero.
std::vector<int> digits(std::uint64_t n, int q);

struct LinearRepresentation {
    int q = 2;
    int d = 1;
    RepMode mode = RepMode::sequence;
    std::vector<QMat> matrices;  // A_0 ... A_{q-1}
    QVec v0;                     // initial column vector
    QVec e;                      // output row functional, default e_1

    const QMat& A(int r) const { return matrices[r]; }
};

LinearRepresentation make_representation(int q, std::vector<QMat> matrices, QVec v0,
                                         RepMode mode = RepMode::sequence);

/// B_r = sum_{r'<r} A_{r'} and C = sum_r A_r.
struct DerivedMatrices {
    std::vector<QMat> B;
    QMat C;
};
DerivedMatrices derived_matrices(const LinearRepresentation& rep);

/// Violated invariants, empty when the representation is valid.
std::vector<std::string> validate(const LinearRepresentation& rep);

/// f(n) as the exact digit product; f(0) = I.
QMat evaluate_product(const LinearRepresentation& rep, std::uint64_t n);

/// v(n) by the digit recursion (sequence mode).
QVec evaluate_vector(const LinearRepresentation& rep, std::uint64_t n);

/// x(n) = e f(n) v0.
GRational evaluate(const LinearRepresentation& rep, std::uint64_t n);

/// Sum_{0<=n<N} v(n), term by term (oracle).
QVec summatory_naive(const LinearRepresentation& rep, std::uint64_t N);

/// Sum_{0<=n<N} v(n) via the digit recursion V(qN+r) = C V(N) + B_r v(N),
/// O(d^2 log N) scalar operations. Exactly equals summatory_naive.
QVec summatory_fast(const LinearRepresentation& rep, std::uint64_t N);

/// Matrix-mode summatory F(N) = sum_{0<=n<N} f(n) with f(0) = I.
QMat summatory_matrix_naive(const LinearRepresentation& rep, std::uint64_t N);

/// Matrix-mode fast summatory; the recursion carries the extra (I - A_0)
/// correction term because f(0) = I is imposed instead of A_0 f(0) = f(0).
QMat summatory_matrix_fast(const LinearRepresentation& rep, std::uint64_t N);

}  // namespace regseq
