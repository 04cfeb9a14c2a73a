#include "regseq/linrep.hpp"

#include <stdexcept>

namespace regseq {

std::vector<int> digits(std::uint64_t n, int q) {
    if (q < 2) throw std::invalid_argument("radix must be >= 2");
    std::vector<int> out;
    while (n > 0) {
        out.push_back(int(n % std::uint64_t(q)));
        n /= std::uint64_t(q);
    }
    return out;
}

LinearRepresentation make_representation(int q, std::vector<QMat> matrices, QVec v0,
                                         RepMode mode) {
    LinearRepresentation rep;
    rep.q = q;
    rep.d = int(v0.size());
    rep.mode = mode;
    rep.matrices = std::move(matrices);
    rep.v0 = std::move(v0);
    rep.e.assign(rep.d, GRational{});
    if (rep.d > 0) rep.e[0] = GRational{1};
    return rep;
}

DerivedMatrices derived_matrices(const LinearRepresentation& rep) {
    DerivedMatrices dm;
    dm.B.reserve(rep.q);
    QMat acc(rep.d, rep.d);
    for (int r = 0; r < rep.q; ++r) {
        dm.B.push_back(acc);
        acc = acc + rep.A(r);
    }
    dm.C = acc;
    return dm;
}

std::vector<std::string> validate(const LinearRepresentation& rep) {
    std::vector<std::string> bad;
    if (rep.q < 2) bad.push_back("radix q must be >= 2");
    if (rep.d < 1) bad.push_back("dimension d must be >= 1");
    if (int(rep.matrices.size()) != rep.q)
        bad.push_back("expected " + std::to_string(rep.q) + " matrices, got " +
                      std::to_string(rep.matrices.size()));
    for (size_t r = 0; r < rep.matrices.size(); ++r) {
        if (rep.matrices[r].rows() != rep.d || rep.matrices[r].cols() != rep.d)
            bad.push_back("matrix A_" + std::to_string(r) + " is not " + std::to_string(rep.d) +
                          "x" + std::to_string(rep.d));
    }
    if (int(rep.v0.size()) != rep.d) bad.push_back("v0 has wrong length");
    if (int(rep.e.size()) != rep.d) bad.push_back("output functional e has wrong length");
    if (!bad.empty()) return bad;
    if (rep.mode == RepMode::sequence) {
        QVec w = rep.A(0).apply(rep.v0);
        for (int i = 0; i < rep.d; ++i)
            if (w[i] != rep.v0[i]) {
                bad.push_back("sequence mode requires A_0 v0 = v0; component " +
                              std::to_string(i) + " differs");
                break;
            }
    }
    return bad;
}

QMat evaluate_product(const LinearRepresentation& rep, std::uint64_t n) {
    // f(n) = A_{r_0} ... A_{r_{l-1}}, least significant digit leftmost.
    QMat f = QMat::identity(rep.d);
    for (int r : digits(n, rep.q)) f = f * rep.A(r);
    return f;
}

QVec evaluate_vector(const LinearRepresentation& rep, std::uint64_t n) {
    QVec w = rep.v0;
    auto ds = digits(n, rep.q);
    for (auto it = ds.rbegin(); it != ds.rend(); ++it) w = rep.A(*it).apply(w);
    return w;
}

GRational evaluate(const LinearRepresentation& rep, std::uint64_t n) {
    if (rep.mode == RepMode::sequence) return dot(rep.e, evaluate_vector(rep, n));
    QMat f = evaluate_product(rep, n);
    return dot(rep.e, f.apply(rep.v0));
}

QVec summatory_naive(const LinearRepresentation& rep, std::uint64_t N) {
    QVec acc(rep.d, GRational{});
    for (std::uint64_t n = 0; n < N; ++n) {
        QVec v = evaluate_vector(rep, n);
        for (int i = 0; i < rep.d; ++i) acc[i] += v[i];
    }
    return acc;
}

QVec summatory_fast(const LinearRepresentation& rep, std::uint64_t N) {
    DerivedMatrices dm = derived_matrices(rep);
    QVec V(rep.d, GRational{});  // running summatory of the digit prefix
    QVec v = rep.v0;             // v(prefix)
    auto ds = digits(N, rep.q);
    for (auto it = ds.rbegin(); it != ds.rend(); ++it) {
        int r = *it;
        QVec CV = dm.C.apply(V);
        QVec Bv = dm.B[r].apply(v);
        for (int i = 0; i < rep.d; ++i) V[i] = CV[i] + Bv[i];
        v = rep.A(r).apply(v);
    }
    return V;
}

QMat summatory_matrix_naive(const LinearRepresentation& rep, std::uint64_t N) {
    QMat acc(rep.d, rep.d);
    for (std::uint64_t n = 0; n < N; ++n) acc = acc + evaluate_product(rep, n);
    return acc;
}

QMat summatory_matrix_fast(const LinearRepresentation& rep, std::uint64_t N) {
    DerivedMatrices dm = derived_matrices(rep);
    QMat I = QMat::identity(rep.d);
    QMat IminusA0 = I - rep.A(0);
    QMat F(rep.d, rep.d);
    QMat f = I;
    auto ds = digits(N, rep.q);
    // Expansions carry no leading zeros, so every prefix qM+r here is > 0 and
    // the (I - A_0) correction applies at each step.
    for (auto it = ds.rbegin(); it != ds.rend(); ++it) {
        int r = *it;
        F = dm.C * F + dm.B[r] * f + IminusA0;
        f = rep.A(r) * f;
    }
    return F;
}

}  // namespace regseq
