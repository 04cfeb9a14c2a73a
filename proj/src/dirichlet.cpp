#include "regseq/dirichlet.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <bit>
#include <cmath>
#include <thread>

namespace regseq::dirichlet {

namespace {

int env_thread_cap() {
    if (const char* v = std::getenv("REGSEQ_THREADS")) {
        int n = std::atoi(v);
        if (n >= 1) return n;
    }
    return int(std::max(1u, std::thread::hardware_concurrency()));
}

cplx pow_ns(double log_n, cplx s) { return std::exp(-s * log_n); }

}  // namespace

DirichletEvaluator::DirichletEvaluator(const LinearRepresentation& rep, double log_q_R_upper,
                                       EvaluatorConfig cfg)
    : rep_(to_complex(rep)), cfg_(cfg), a_(log_q_R_upper) {
    if (cfg_.n0 < 2) throw std::invalid_argument("n0 must be >= 2");
    log_q_ = std::log(double(rep_.q));
    sigma_direct_ = cfg_.sigma_direct > 0 ? cfg_.sigma_direct : a_ + 3.0;
    if (sigma_direct_ <= a_ + 1.0) sigma_direct_ = a_ + 3.0;

    Csum_ = CMat::Zero(rep_.d, rep_.d);
    for (const auto& m : rep_.matrices) Csum_ += m;
    for (const auto& m : rep_.matrices) a_row_norms_.push_back(row_sum_norm(m));
    Eigen::ComplexEigenSolver<CMat> es(Csum_, false);
    for (int i = 0; i < es.eigenvalues().size(); ++i)
        c_eigenvalues_.push_back(es.eigenvalues()(i));

    // Flat coefficient cache bounded by ~48 MB; prefix products cover the rest.
    cache_limit_ = std::max<std::uint64_t>(65536, 3'000'000 / std::uint64_t(rep_.d));
    prefix_len_ = std::max(1, int(std::floor(std::log(4096.0) / log_q_)));
    prefix_mod_ = 1;
    for (int i = 0; i < prefix_len_; ++i) prefix_mod_ *= std::uint64_t(rep_.q);
    // prefix_table_[lo] = A_{r_0} ... A_{r_{H-1}} over the H zero-padded
    // little-endian digits of lo, built level by level.
    std::vector<CMat> prev{CMat::Identity(rep_.d, rep_.d)};
    for (int j = 0; j < prefix_len_; ++j) {
        std::vector<CMat> cur(prev.size() * rep_.q);
        for (std::uint64_t lo = 0; lo < cur.size(); ++lo)
            cur[lo] = rep_.matrices[lo % rep_.q] * prev[lo / rep_.q];
        prev = std::move(cur);
    }
    prefix_table_ = std::move(prev);

    real_coefficients_ = true;
    for (const auto& m : rep.matrices)
        for (int i = 0; i < rep.d && real_coefficients_; ++i)
            for (int j = 0; j < rep.d; ++j)
                if (!m(i, j).is_real()) {
                    real_coefficients_ = false;
                    break;
                }
    for (const auto& x : rep.v0)
        if (!x.is_real()) real_coefficients_ = false;

    coeff_cache_.reserve(65536);
    ensure_coeff_cache(65536);

    // Measured growth constant: ||v(n)|| <= c n^a on n <= 4096, safety 4,
    // re-verified by doubling the sample range.
    double m1 = 0.0, m2 = 0.0;
    for (std::uint64_t n = 1; n <= 8192; ++n) {
        double ratio = inf_norm(coeff_cache_[n]) / std::pow(double(n), a_);
        (n <= 4096 ? m1 : m2) = std::max(n <= 4096 ? m1 : m2, ratio);
    }
    c_ = 4.0 * std::max(m1, 1e-30);
    if (m2 > m1) {
        c_ = 4.0 * m2;
        bound_raised_ = true;
    }
}

void DirichletEvaluator::ensure_coeff_cache(std::uint64_t upto) const {
    upto = std::min(upto, cache_limit_);
    if (cache_built_ >= upto) return;
    if (coeff_cache_.empty()) {
        coeff_cache_.push_back(rep_.v0);  // v(0) = v0
        cache_built_ = 1;
    }
    coeff_cache_.resize(upto);
    for (std::uint64_t n = cache_built_; n < upto; ++n)
        coeff_cache_[n] = rep_.matrices[n % rep_.q] * coeff_cache_[n / rep_.q];
    cache_built_ = upto;
}

CVec DirichletEvaluator::coefficient(std::uint64_t n) const {
    if (n < cache_limit_) {
        ensure_coeff_cache(n + 1);
        return coeff_cache_[n];
    }
    std::uint64_t lo = n % prefix_mod_, hi = n / prefix_mod_;
    if (hi >= cache_limit_)
        throw std::invalid_argument("coefficient index exceeds provider range");
    ensure_coeff_cache(hi + 1);
    return prefix_table_[lo] * coeff_cache_[hi];
}

double DirichletEvaluator::direct_tail_bound(double sigma, double n) const {
    // integral comparison: sum_{m > n} c m^{a - sigma} <= c n^{a+1-sigma}/(sigma-a-1)
    return c_ * std::pow(n, a_ + 1.0 - sigma) / (sigma - a_ - 1.0);
}

void DirichletEvaluator::check_not_near_pole(cplx s) const {
    cplx qs = std::exp(s * log_q_);
    for (cplx lambda : c_eigenvalues_)
        if (std::abs(qs - lambda) < cfg_.delta)
            throw NearPole("evaluation point within delta of a pole of the continuation");
}

int DirichletEvaluator::effective_n0(cplx s) const {
    // Keep |s| * beta / (n0 - 1) small so the binomial series stays tame.
    double need = std::abs(s) * (double(rep_.q - 1) / rep_.q) / 8.0 + 1.0;
    int n0 = cfg_.n0;
    while (double(n0) < need) n0 *= 2;
    return n0;
}

CVec DirichletEvaluator::segment_sum(cplx s, std::uint64_t lo, std::uint64_t hi) const {
    CVec acc = CVec::Zero(rep_.d);
    for (std::uint64_t n = lo; n < hi; ++n)
        acc += pow_ns(std::log(double(n)), s) * coefficient(n);
    return acc;
}

DirichletValue DirichletEvaluator::direct_sum(cplx s, double target) const {
    return direct_sum_impl(s, target, effective_n0(s));
}

DirichletValue DirichletEvaluator::direct_sum_impl(cplx s, double target, int n0) const {
    const double sigma = s.real();
    if (sigma <= a_ + 1.0)
        throw TruncationFailure("direct summation tail bound needs Re s > log_q(R) + 1");
    // closed-form stopping index from the integral tail bound
    double n_stop_d =
        std::pow(c_ / ((sigma - a_ - 1.0) * target), 1.0 / (sigma - a_ - 1.0));
    std::uint64_t n_stop = std::uint64_t(std::max(double(n0), std::ceil(n_stop_d))) + 1;
    if (n_stop > cfg_.n_direct_cap)
        throw TruncationFailure("direct summation cannot reach target within term cap");

    const int d = rep_.d;
    ensure_coeff_cache(std::min<std::uint64_t>(n_stop, cache_limit_));

    auto partial = [&](std::uint64_t lo, std::uint64_t hi, CVec& out, double& absacc) {
        out = CVec::Zero(d);
        cplx* acc = out.data();
        absacc = 0.0;
        std::vector<cplx> buf(d);
        for (std::uint64_t n = lo; n < hi; ++n) {
            double ln = std::log(double(n));
            double mag = std::exp(-s.real() * ln);
            cplx w = std::polar(mag, -s.imag() * ln);
            const cplx* v;
            if (n < cache_limit_) {
                v = coeff_cache_[n].data();
            } else {
                std::uint64_t lo_part = n % prefix_mod_, hi_part = n / prefix_mod_;
                const CMat& T = prefix_table_[lo_part];
                const cplx* vh = coeff_cache_[hi_part].data();
                for (int i = 0; i < d; ++i) {
                    cplx sum = 0.0;
                    for (int j = 0; j < d; ++j) sum += T(i, j) * vh[j];
                    buf[i] = sum;
                }
                v = buf.data();
            }
            double vmax = 0.0;
            for (int i = 0; i < d; ++i) {
                acc[i] += w * v[i];
                double a2 = std::abs(v[i].real()) + std::abs(v[i].imag());
                vmax = std::max(vmax, a2);
            }
            absacc += mag * vmax;
        }
    };

    CVec total = CVec::Zero(d);
    double absacc_total = 0.0;
    std::uint64_t span = n_stop - n0;
    int threads = std::min<int>(env_thread_cap(), 8);
    if (span > 200000 && threads > 1) {
        int nblocks = threads;
        std::vector<CVec> outs(nblocks);
        std::vector<double> abss(nblocks, 0.0);
        std::vector<std::thread> pool;
        for (int b = 0; b < nblocks; ++b) {
            std::uint64_t lo = n0 + span * b / nblocks;
            std::uint64_t hi = n0 + span * (b + 1) / nblocks;
            pool.emplace_back([&, b, lo, hi] { partial(lo, hi, outs[b], abss[b]); });
        }
        for (auto& t : pool) t.join();
        for (int b = 0; b < nblocks; ++b) {
            total += outs[b];
            absacc_total += abss[b];
        }
    } else {
        partial(n0, n_stop, total, absacc_total);
    }

    DirichletValue out;
    out.value = std::move(total);
    out.abs_error_bound = direct_tail_bound(sigma, double(n_stop - 1)) +
                          1e-15 * absacc_total * std::log2(double(span) + 2.0);
    out.depth = 0;
    return out;
}

DirichletValue DirichletEvaluator::assemble_right_side(cplx s, double target, int n0) const {
    const int d = rep_.d;
    const double sigma = s.real();
    cplx qs = std::exp(-s * log_q_);  // q^{-s}

    DirichletValue out;
    out.value = segment_sum(s, n0, std::uint64_t(rep_.q) * n0);
    out.abs_error_bound = 1e-15 * double(rep_.q) * double(n0) * inf_norm(out.value);
    out.depth = 0;

    // k-sums: G += q^{-s} sum_{r>=1} A_r sum_k binom(-s,k)(r/q)^k V(s+k)
    std::vector<CVec> srsum(rep_.q, CVec::Zero(d));
    std::vector<double> beta(rep_.q);
    for (int r = 0; r < rep_.q; ++r) beta[r] = double(r) / rep_.q;

    double err = 0.0;
    double absacc = 0.0;
    cplx binom = 1.0;
    int k = 0;
    int max_depth = 0;
    while (true) {
        ++k;
        if (k > cfg_.k0_max)
            throw TruncationFailure(
                "no admissible truncation index k0 <= k0_max for the binomial series");
        binom *= (-s - double(k - 1)) / double(k);

        double weight = 0.0;  // multiplier of the child error in ||G||
        for (int r = 1; r < rep_.q; ++r)
            weight += a_row_norms_[r] * std::pow(beta[r], k);
        weight *= std::abs(binom) * std::abs(qs);

        double frac = 0.25 * std::pow(0.75, k - 1);
        double child_target = 0.5 * target * frac / std::max(weight, 1e-12);
        DirichletValue child = evaluate_impl(s + double(k), child_target, n0);
        max_depth = std::max(max_depth, child.depth);
        err += weight * child.abs_error_bound;

        for (int r = 1; r < rep_.q; ++r) {
            cplx coef = binom * std::pow(beta[r], k);
            srsum[r] += coef * child.value;
            absacc += std::abs(coef) * inf_norm(child.value);
        }

        // Tail of the binomial series from k+1 on, via the gamma-condition
        // bound; gamma majorises |1 + (s-1)/k'| for all k' >= k+2.
        cplx binom_next = binom * (-s - double(k)) / double(k + 1);
        double gamma = std::max(1.0, std::abs(1.0 + (s - 1.0) / double(k + 2)));
        double beta_max = double(rep_.q - 1) / rep_.q;
        if (gamma * beta_max < double(n0 - 1) && sigma + k + 1 > a_ + 1.0) {
            double tail = 0.0;
            for (int r = 1; r < rep_.q; ++r) {
                double t = c_ * std::pow(beta[r], k + 1) *
                           std::pow(double(n0 - 1), a_ + 2.0 - sigma - double(k + 1)) /
                           ((sigma + k + 1 - a_ - 1.0) * (double(n0 - 1) - gamma * beta[r]));
                tail += a_row_norms_[r] * t;
            }
            tail *= std::abs(binom_next) * std::abs(qs);
            if (tail <= 0.25 * target) {
                err += tail;
                break;
            }
        }
    }

    for (int r = 1; r < rep_.q; ++r) out.value += qs * (rep_.matrices[r] * srsum[r]);
    out.abs_error_bound += err + 1e-15 * std::abs(qs) * absacc * double(rep_.q);
    out.depth = max_depth;
    return out;
}

DirichletValue DirichletEvaluator::functional_equation_impl(cplx s, double target,
                                                            int n0) const {
    check_not_near_pole(s);
    DirichletValue rhs = assemble_right_side(s, target, n0);

    const int d = rep_.d;
    CMat M = CMat::Identity(d, d) - std::exp(-s * log_q_) * Csum_;
    Eigen::PartialPivLU<CMat> lu(M);
    CMat Minv = lu.solve(CMat::Identity(d, d));
    double inv_norm = row_sum_norm(Minv);
    double cond = inv_norm * row_sum_norm(M);
    if (cond > 1e12)
        throw IllConditioned("functional-equation system has condition estimate > 1e12");

    DirichletValue out;
    out.value = Minv * rhs.value;
    out.abs_error_bound = inv_norm * rhs.abs_error_bound +
                          1e-15 * inv_norm * inf_norm(rhs.value) * double(d);
    out.depth = rhs.depth + 1;
    return out;
}

DirichletValue DirichletEvaluator::evaluate_impl(cplx s, double target, int n0) const {
    // Real coefficients give V(conj s) = conj(V(s)); canonicalise to the
    // upper half plane so contour quadratures share memo entries.
    if (real_coefficients_ && s.imag() < 0.0) {
        DirichletValue v = evaluate_impl(std::conj(s), target, n0);
        v.value = v.value.conjugate();
        return v;
    }
    Key key{std::bit_cast<std::uint64_t>(s.real()), std::bit_cast<std::uint64_t>(s.imag()),
            std::uint32_t(n0)};
    {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = memo_.find(key);
        if (it != memo_.end() && it->second.err <= target)
            return {it->second.value, it->second.err, it->second.depth};
    }
    DirichletValue out;
    if (s.real() >= sigma_direct_) {
        try {
            out = direct_sum_impl(s, target, n0);
        } catch (const TruncationFailure&) {
            out = functional_equation_impl(s, target, n0);
        }
    } else {
        out = functional_equation_impl(s, target, n0);
    }
    {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = memo_.find(key);
        if (it == memo_.end() || it->second.err > out.abs_error_bound)
            memo_[key] = Memo{out.value, out.abs_error_bound, out.depth};
    }
    return out;
}

DirichletValue DirichletEvaluator::evaluate(cplx s, double target) const {
    if (s.real() <= a_)
        throw std::domain_error("evaluation left of the continuation half-plane");
    int n0 = effective_n0(s);
    DirichletValue v = evaluate_impl(s, target, n0);
    if (n0 > cfg_.n0) {
        v.value += segment_sum(s, cfg_.n0, n0);
        v.abs_error_bound += 1e-15 * double(n0 - cfg_.n0) * inf_norm(v.value);
    }
    return v;
}

DirichletValue DirichletEvaluator::evaluate_full(cplx s, double target) const {
    DirichletValue v = evaluate(s, target);
    v.value += segment_sum(s, 1, cfg_.n0);
    v.abs_error_bound += 1e-15 * double(cfg_.n0) * inf_norm(v.value);
    return v;
}

DirichletValue DirichletEvaluator::evaluate_via_functional_equation(cplx s,
                                                                    double target) const {
    return functional_equation_impl(s, target, effective_n0(s));
}

DirichletValue DirichletEvaluator::evaluate_raw(cplx s, double target) const {
    return evaluate_impl(s, target, effective_n0(s));
}

DirichletValue DirichletEvaluator::right_side(cplx s, double target) const {
    return assemble_right_side(s, target, effective_n0(s));
}

std::pair<cplx, double> sigma_shift(const ScalarSeries& series, cplx s, cplx beta, int k0_max,
                                    double target) {
    if (beta == cplx(0.0)) return {0.0, 0.0};
    double ab = std::abs(beta);
    if (ab >= series.n0 - 1)
        throw TruncationFailure("sigma_shift requires |beta| < n0 - 1");
    const double sigma = s.real();
    cplx acc = 0.0;
    double err = 0.0, absacc = 0.0;
    cplx binom = 1.0;
    int k = 0;
    while (true) {
        ++k;
        if (k > k0_max)
            throw TruncationFailure("sigma_shift: no admissible k0 <= k0_max");
        binom *= (-s - double(k - 1)) / double(k);
        auto [val, verr] = series.eval(s + double(k), target * 0.1 * std::pow(0.5, k));
        cplx coef = binom * std::pow(beta, k);
        acc += coef * val;
        err += std::abs(coef) * verr;
        absacc += std::abs(coef) * std::abs(val);

        cplx binom_next = binom * (-s - double(k)) / double(k + 1);
        double gamma = std::max(1.0, std::abs(1.0 + (s - 1.0) / double(k + 2)));
        double n0m1 = series.n0 - 1.0;
        if (gamma * ab < n0m1 && sigma + k + 1 > series.growth + 1.0) {
            double tail = series.coeff_bound * std::pow(ab, k + 1) *
                          std::pow(n0m1, series.growth + 2.0 - sigma - double(k + 1)) /
                          ((sigma + k + 1 - series.growth - 1.0) * (n0m1 - gamma * ab)) *
                          std::abs(binom_next);
            if (tail <= 0.5 * target) {
                err += tail;
                break;
            }
        }
    }
    err += 1e-15 * absacc * k;
    return {acc, err};
}

}  // namespace regseq::dirichlet
