#include "regseq/pascal_system.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <thread>

#include "regseq/pascal.hpp"

namespace regseq::pascal_system {

namespace {
constexpr double kCoeffBound = 2.0;   // x(n), y(n), z(n) <= 2n
constexpr double kGrowth = 1.0;       // exponent in the bound above
const double kLog2 = std::log(2.0);

cplx pow_ns(double n, cplx s) { return std::exp(-s * std::log(n)); }
}  // namespace

PascalEvaluator::PascalEvaluator(Config cfg) : cfg_(cfg) {
    if (cfg_.n0 < 2) throw std::invalid_argument("n0 must be >= 2");
    ensure_coeffs(1 << 17);
}

void PascalEvaluator::ensure_coeffs(std::uint64_t upto) const {
    if (x_.size() > upto) return;
    std::uint64_t n = std::max<std::uint64_t>(1 << 17, std::bit_ceil(upto + 2));
    auto seq = pascal::recurrence_sequences(n);
    x_ = std::move(seq.x);
    y_ = std::move(seq.y);
    z_ = std::move(seq.z);
}

int PascalEvaluator::effective_n0(cplx s) const {
    double need = std::abs(s) / 16.0 + 1.0;  // keeps |s| beta/(n0-1) <= ~8
    int n0 = cfg_.n0;
    while (double(n0) < need) n0 *= 2;
    return n0;
}

SystemValue PascalEvaluator::direct_impl(cplx s, double target, int n0) const {
    const double sigma = s.real();
    if (sigma <= kGrowth + 1.0)
        throw dirichlet::TruncationFailure("direct summation needs Re s > 2");
    double n_stop_d =
        std::pow(kCoeffBound / ((sigma - 2.0) * target), 1.0 / (sigma - 2.0));
    std::uint64_t n_stop = std::uint64_t(std::max(double(n0), std::ceil(n_stop_d))) + 1;
    if (n_stop > cfg_.n_direct_cap)
        throw dirichlet::TruncationFailure("direct summation cannot reach target within cap");
    ensure_coeffs(n_stop + 1);
    SystemValue out{0.0, 0.0, 0.0, 0.0, 0};
    double absacc = 0.0;
    for (std::uint64_t n = n0; n < n_stop; ++n) {
        cplx w = pow_ns(double(n), s);
        out.X += double(x_[n]) * w;
        out.Y += double(y_[n]) * w;
        out.Z += double(z_[n]) * w;
        absacc += std::abs(w) * double(z_[n] + x_[n]);
    }
    out.abs_error_bound = kCoeffBound * std::pow(double(n_stop - 1), 2.0 - sigma) /
                              (sigma - 2.0) +
                          1e-15 * absacc;
    return out;
}

PascalEvaluator::Rhs PascalEvaluator::right_side(cplx s, double target, int n0) const {
    ensure_coeffs(2 * std::uint64_t(n0) + 2);
    const double sigma = s.real();
    cplx w = std::exp(-s * kLog2);  // 2^{-s}

    // boundary sums
    cplx IJ = 0.0, IK = 0.0, IL = 0.0;
    for (int n = n0; n < 2 * n0; ++n) {
        cplx pn = pow_ns(double(n), s);
        IJ += double(x_[n]) * pn;
        IK += double(y_[n]) * pn + w * double(x_[n]) * pow_ns(double(n + 1), s);
        IL += double(z_[n]) * pn;
    }
    cplx p2n0m1 = pow_ns(double(2 * n0 - 1), s);
    cplx p2n0 = pow_ns(double(2 * n0), s);
    IJ -= double(y_[n0]) * p2n0m1;
    IK += double(x_[n0 - 1]) * p2n0 - double(x_[n0]) * p2n0m1 - w * double(y_[n0]) * p2n0;
    IL -= 2.0 * double(y_[n0]) * p2n0m1;

    // shifted-series corrections: four scalar accumulators shared across rows
    cplx SmY = 0.0, SpX = 0.0, SmX = 0.0, SpZ = 0.0;
    double err_children = 0.0, absacc = 0.0;
    int max_depth = 0;

    // combined weight of a unit tail in (J, K, L) assembly below
    double aw = std::abs(w);
    double weight_total = aw + (aw * aw + aw + std::abs(w * (w + 1.0))) + 2.0 * aw;

    cplx binom = 1.0;
    int k = 0;
    while (true) {
        ++k;
        if (k > cfg_.k0_max)
            throw dirichlet::TruncationFailure("no admissible k0 for the binomial series");
        binom *= (-s - double(k - 1)) / double(k);
        double bk = std::pow(0.5, k);

        double frac = 0.25 * std::pow(0.75, k - 1);
        double child_target =
            0.5 * target * frac / std::max(std::abs(binom) * bk * weight_total, 1e-12);
        SystemValue child = evaluate_impl(s + double(k), child_target, n0);
        max_depth = std::max(max_depth, child.depth);
        err_children += std::abs(binom) * bk * weight_total * child.abs_error_bound;

        cplx cp = binom * bk, cm = (k % 2 == 0) ? cp : -cp;  // beta = +-1/2
        SpX += cp * child.X;
        SmX += cm * child.X;
        SmY += cm * child.Y;
        SpZ += cp * child.Z;
        absacc += std::abs(binom) * bk *
                  (std::abs(child.X) * 2 + std::abs(child.Y) + std::abs(child.Z));

        cplx binom_next = binom * (-s - double(k)) / double(k + 1);
        double gamma = std::max(1.0, std::abs(1.0 + (s - 1.0) / double(k + 2)));
        if (gamma * 0.5 < double(n0 - 1) && sigma + k + 1 > 2.0) {
            double tail = kCoeffBound * std::pow(0.5, k + 1) *
                          std::pow(double(n0 - 1), 3.0 - sigma - double(k + 1)) /
                          ((sigma + k + 1 - 2.0) * (double(n0 - 1) - gamma * 0.5)) *
                          std::abs(binom_next);
            if (tail * weight_total <= 0.25 * target) {
                err_children += tail * weight_total;
                break;
            }
        }
    }

    Rhs rhs;
    rhs.J = w * SmY + IJ;
    rhs.K = w * w * SpX + w * SmX + w * (w + 1.0) * SpZ + IK;
    rhs.L = 2.0 * w * SmY + IL;
    rhs.err = err_children + 1e-15 * (absacc + std::abs(IJ) + std::abs(IK) + std::abs(IL)) *
                                 double(n0);
    rhs.depth = max_depth;
    return rhs;
}

cplx PascalEvaluator::delta(cplx s) {
    cplx w = std::exp(-s * kLog2);
    return -(2.0 * w * w + 3.0 * w - 1.0) * (2.0 * w + 1.0);
}

cplx PascalEvaluator::delta_prime(cplx s) {
    cplx w = std::exp(-s * kLog2);
    cplx dw = -kLog2 * w;
    return -((4.0 * w + 3.0) * dw * (2.0 * w + 1.0) +
             (2.0 * w * w + 3.0 * w - 1.0) * 2.0 * dw);
}

SystemValue PascalEvaluator::cramer_impl(cplx s, double target, int n0) const {
    Rhs rhs = right_side(s, target, n0);
    cplx w = std::exp(-s * kLog2);
    cplx det = delta(s);
    if (std::abs(det) < 1e-12)
        throw dirichlet::NearPole("Pascal system evaluated at a zero of the determinant");

    cplx cXJ = -2.0 * w * w * w - 5.0 * w * w + 1.0;
    cplx cXK = w * (1.0 + 2.0 * w);
    cplx cYJ = w * (2.0 * w * w + 5.0 * w + 1.0);
    cplx cYK = (1.0 - 2.0 * w) * (1.0 + w);
    cplx cYL = 2.0 * w;
    cplx cZJ = 2.0 * w * (w + 1.0);
    cplx cZK = 2.0 * w;
    cplx cZL = (1.0 - 2.0 * w) * (1.0 + w);

    SystemValue out;
    out.X = (cXJ * rhs.J + cXK * rhs.K + cXK * rhs.L) / det;
    out.Y = (cYJ * rhs.J + cYK * rhs.K + cYL * rhs.L) / det;
    out.Z = (cZJ * rhs.J + cZK * rhs.K + cZL * rhs.L) / det;
    double cof_max = std::max({std::abs(cXJ) + 2.0 * std::abs(cXK),
                               std::abs(cYJ) + std::abs(cYK) + std::abs(cYL),
                               std::abs(cZJ) + std::abs(cZK) + std::abs(cZL)});
    out.abs_error_bound = cof_max * rhs.err / std::abs(det) +
                          1e-15 * (std::abs(out.X) + std::abs(out.Y) + std::abs(out.Z));
    out.depth = rhs.depth + 1;
    return out;
}

SystemValue PascalEvaluator::evaluate_impl(cplx s, double target, int n0) const {
    if (s.imag() < 0.0) {  // real coefficients: conjugate symmetry
        SystemValue v = evaluate_impl(std::conj(s), target, n0);
        return {std::conj(v.X), std::conj(v.Y), std::conj(v.Z), v.abs_error_bound, v.depth};
    }
    Key key{std::bit_cast<std::uint64_t>(s.real()), std::bit_cast<std::uint64_t>(s.imag()),
            std::uint32_t(n0)};
    auto it = memo_.find(key);
    if (it != memo_.end() && it->second.err <= target)
        return {it->second.X, it->second.Y, it->second.Z, it->second.err, it->second.depth};

    SystemValue out;
    if (s.real() >= cfg_.sigma_direct) {
        try {
            out = direct_impl(s, target, n0);
        } catch (const dirichlet::TruncationFailure&) {
            out = cramer_impl(s, target, n0);
        }
    } else {
        out = cramer_impl(s, target, n0);
    }
    it = memo_.find(key);
    if (it == memo_.end() || it->second.err > out.abs_error_bound)
        memo_[key] = Memo{out.X, out.Y, out.Z, out.abs_error_bound, out.depth};
    return out;
}

SystemValue PascalEvaluator::evaluate(cplx s, double target) const {
    if (s.real() <= 1.0)
        throw std::domain_error("Pascal system is continued only to Re s > 1");
    int n0 = effective_n0(s);
    SystemValue v = evaluate_impl(s, target, n0);
    if (n0 > cfg_.n0) {
        ensure_coeffs(std::uint64_t(n0) + 1);
        for (int n = cfg_.n0; n < n0; ++n) {
            cplx w = pow_ns(double(n), s);
            v.X += double(x_[n]) * w;
            v.Y += double(y_[n]) * w;
            v.Z += double(z_[n]) * w;
        }
    }
    return v;
}

fourier::CoefficientResult PascalEvaluator::fourier_coefficient(long l) const {
    const double kap = pascal::kappa();
    cplx s0(kap, 2.0 * std::numbers::pi * double(l) / kLog2);
    int n0 = effective_n0(s0);
    Rhs rhs = right_side(s0, cfg_.target_abs_error, n0);

    // 2^{-s0} = 2^{-kappa} exactly: the imaginary part is a full turn
    cplx w = (std::sqrt(17.0) - 3.0) / 4.0;
    cplx cXJ = -2.0 * w * w * w - 5.0 * w * w + 1.0;
    cplx cXK = w * (1.0 + 2.0 * w);
    cplx num = cXJ * rhs.J + cXK * rhs.K + cXK * rhs.L;

    cplx dp = delta_prime(s0);
    fourier::CoefficientResult out;
    out.phi = num / (dp * s0);  // residue of X(s)/s at the simple pole
    out.error = (std::abs(cXJ) + 2.0 * std::abs(cXK)) * rhs.err / (std::abs(dp) * std::abs(s0)) +
                1e-14 * std::abs(out.phi);
    out.nodes = 0;
    out.radius = 0.0;
    return out;
}

fourier::FourierTable fourier_table(int L, double precision) {
    fourier::FourierTable table;
    table.q = 2;
    table.period = 1;
    table.entries.resize(L + 1);
    cplx lambda1 = cplx((3.0 + std::sqrt(17.0)) / 2.0, 0.0);

    int threads = 1;
    if (const char* v = std::getenv("REGSEQ_THREADS")) threads = std::max(1, std::atoi(v));
    else threads = int(std::max(1u, std::thread::hardware_concurrency()));
    threads = std::min(threads, L + 1);

    auto work = [&](int tid) {
        Config cfg;
        cfg.target_abs_error = precision;
        PascalEvaluator ev(cfg);
        for (long l = tid; l <= L; l += threads) {
            auto res = ev.fourier_coefficient(l);
            table.entries[l] = fourier::FourierEntry{lambda1, 0, l, res.phi, res.error};
        }
    };
    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(work, t);
        for (auto& th : pool) th.join();
    }
    return table;
}

}  // namespace regseq::pascal_system
