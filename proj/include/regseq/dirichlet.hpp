#pragma once

// Meromorphic continuation of the vector Dirichlet series
//   V_{n0}(s) = sum_{n >= n0} n^{-s} v(n)
// of a q-linear representation, via the functional equation
//   (I - q^{-s} C) V_{n0}(s) = boundary(s) + q^{-s} sum_r A_r sum_{k>=1}
//                              binom(-s,k) (r/q)^k V_{n0}(s+k).
// Every value carries a tracked absolute error bound: truncation tails are
// bounded through the coefficient growth ||v(n)|| <= c n^a with
// a = log_q(R_upper), the binomial-series tails через the gamma-condition
// estimate, and solves propagate error through the inverse norm.

#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "regseq/numeric.hpp"

namespace regseq::dirichlet {

struct EvaluatorConfig {
    int n0 = 32;                     // truncation start (>= 2)
    double target_abs_error = 1e-10;
    double sigma_direct = 0.0;       // 0 = auto: log_q(R_upper) + 3
    int k0_max = 256;                // cap on binomial-series terms
    double delta = 1e-8;             // pole exclusion radius for |q^s - lambda|
    std::uint64_t n_direct_cap = 10'000'000;
};

struct DirichletValue {
    CVec value;
    double abs_error_bound = 0.0;
    int depth = 0;  // functional-equation recursion depth
};

struct NearPole : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct IllConditioned : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct TruncationFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class DirichletEvaluator {
  public:
    DirichletEvaluator(const LinearRepresentation& rep, double log_q_R_upper,
                       EvaluatorConfig cfg = {});

    /// V_{n0}(s) for Re s > log_q(R_upper); error bound <= target.
    DirichletValue evaluate(cplx s) const { return evaluate(s, cfg_.target_abs_error); }
    DirichletValue evaluate(cplx s, double target) const;

    /// Full series sum_{n>=1} n^{-s} v(n).
    DirichletValue evaluate_full(cplx s) const { return evaluate_full(s, cfg_.target_abs_error); }
    DirichletValue evaluate_full(cplx s, double target) const;

    /// Direct summation; throws TruncationFailure if the tail bound cannot
    /// reach the target within the term cap.
    DirichletValue direct_sum(cplx s, double target) const;

    /// Assembly through the functional equation even when direct summation
    /// would be admissible (overlap-strip testing hook).
    DirichletValue evaluate_via_functional_equation(cplx s, double target) const;

    /// Right side G_{n0}(s) of the functional equation, independently
    /// assembled (for residual checks). Uses the same internal n0 as
    /// evaluate_raw.
    DirichletValue right_side(cplx s, double target) const;

    /// The series from the internal truncation start (which may exceed
    /// config n0 for large |Im s|); pairs with right_side for residuals.
    DirichletValue evaluate_raw(cplx s, double target) const;
    int internal_n0(cplx s) const { return effective_n0(s); }

    const EvaluatorConfig& config() const { return cfg_; }
    double growth_exponent() const { return a_; }
    double coefficient_bound() const { return c_; }
    bool heuristic_bound_raised() const { return bound_raised_; }
    double sigma_direct() const { return sigma_direct_; }
    const std::vector<cplx>& c_eigenvalues() const { return c_eigenvalues_; }

    /// v(n) in floating point (cached / prefix-product access).
    CVec coefficient(std::uint64_t n) const;

  private:
    struct Memo {
        CVec value;
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

    DirichletValue evaluate_impl(cplx s, double target, int n0) const;
    DirichletValue direct_sum_impl(cplx s, double target, int n0) const;
    DirichletValue functional_equation_impl(cplx s, double target, int n0) const;
    DirichletValue assemble_right_side(cplx s, double target, int n0) const;
    CVec segment_sum(cplx s, std::uint64_t lo, std::uint64_t hi) const;  // [lo, hi)
    int effective_n0(cplx s) const;
    void ensure_coeff_cache(std::uint64_t upto) const;
    void check_not_near_pole(cplx s) const;
    double direct_tail_bound(double sigma, double n) const;

    ComplexRepresentation rep_;
    EvaluatorConfig cfg_;
    double a_ = 0.0;  // growth exponent log_q(R_upper)
    double c_ = 1.0;  // measured coefficient bound with safety factor
    bool bound_raised_ = false;
    bool real_coefficients_ = false;
    double sigma_direct_ = 0.0;
    double log_q_ = 0.0;
    CMat Csum_;
    std::vector<double> a_row_norms_;  // ||A_r||_inf
    std::vector<cplx> c_eigenvalues_;

    // flat coefficient cache (n < cache_limit_), then prefix products
    mutable std::vector<CVec> coeff_cache_;
    mutable std::uint64_t cache_built_ = 0;
    std::uint64_t cache_limit_ = 0;
    std::vector<CMat> prefix_table_;  // products over H padded low digits
    int prefix_len_ = 0;              // H
    std::uint64_t prefix_mod_ = 1;    // q^H

    mutable std::mutex mutex_;
    mutable std::unordered_map<Key, Memo, KeyHash> memo_;
};

/// Shifted-series correction Sigma(s, beta, D) = sum_{k>=1} binom(-s,k)
/// beta^k D(s+k) for a scalar Dirichlet series with |coefficients| <= c n^a
/// starting at n0. Returns value and absolute error bound.
struct ScalarSeries {
    std::function<std::pair<cplx, double>(cplx, double)> eval;  // (s, target)
    double coeff_bound = 1.0;  // c
    double growth = 0.0;       // a
    int n0 = 2;
};
std::pair<cplx, double> sigma_shift(const ScalarSeries& series, cplx s, cplx beta,
                                    int k0_max, double target);

}  // namespace regseq::dirichlet
