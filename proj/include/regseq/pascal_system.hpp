#pragma once

// The dedicated 3-dimensional functional system for the Pascal-rhombus
// Dirichlet series (X_{n0}, Y_{n0}, Z_{n0}), in the numerically stable
// modified form, solved by Cramer's rule; and the residue fast path for the
// Fourier coefficients of the fluctuation of X(N).

#include <cstdint>
#include <memory>
#include <unordered_map>

#include "regseq/fourier.hpp"
#include "regseq/numeric.hpp"

namespace regseq::pascal_system {

struct SystemValue {
    cplx X, Y, Z;
    double abs_error_bound = 0.0;
    int depth = 0;
};

struct Config {
    int n0 = 32;
    double target_abs_error = 1e-12;
    double sigma_direct = 4.0;  // log_2(rho) + 3 with rho = 2
    int k0_max = 400;
    std::uint64_t n_direct_cap = 10'000'000;
};

class PascalEvaluator {
  public:
    explicit PascalEvaluator(Config cfg = {});

    /// (X_{n0}, Y_{n0}, Z_{n0})(s) for Re s > 1, away from the zeros of the
    /// determinant.
    SystemValue evaluate(cplx s) const { return evaluate(s, cfg_.target_abs_error); }
    SystemValue evaluate(cplx s, double target) const;

    /// l-th Fourier coefficient of Phi in X(N) = N^kappa Phi(log_2 N) + ...,
    /// phi_l = Res[X(s)/s] at s = kappa + 2 pi i l / log 2, evaluated by
    /// Cramer's rule at the simple pole.
    fourier::CoefficientResult fourier_coefficient(long l) const;

    /// det of the modified system matrix; zero exactly at the poles.
    static cplx delta(cplx s);
    static cplx delta_prime(cplx s);

    const Config& config() const { return cfg_; }

  private:
    struct Rhs {
        cplx J, K, L;
        double err;
        int depth;
    };
    SystemValue evaluate_impl(cplx s, double target, int n0) const;
    SystemValue direct_impl(cplx s, double target, int n0) const;
    SystemValue cramer_impl(cplx s, double target, int n0) const;
    Rhs right_side(cplx s, double target, int n0) const;
    void ensure_coeffs(std::uint64_t upto) const;
    int effective_n0(cplx s) const;

    Config cfg_;
    mutable std::vector<std::uint64_t> x_, y_, z_;

    struct Memo {
        cplx X, Y, Z;
        double err;
        int depth;
    };
    struct Key {
        std::uint64_t re, im;
        std::uint32_t n0;
        bool operator==(const Key&) const = default;
    };
    struct KeyHash {
        size_t operator()(const Key& k) const {
            size_t h = std::hash<std::uint64_t>{}(k.re);
            h ^= std::hash<std::uint64_t>{}(k.im) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
            h ^= std::hash<std::uint32_t>{}(k.n0) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
            return h;
        }
    };
    mutable std::unordered_map<Key, Memo, KeyHash> memo_;
};

/// Fourier table of Phi (lambda = (3+sqrt(17))/2, k = 0) for 0 <= l <= L.
fourier::FourierTable fourier_table(int L, double precision);

}  // namespace regseq::pascal_system
