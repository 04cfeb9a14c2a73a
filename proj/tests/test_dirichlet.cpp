#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "regseq/dirichlet.hpp"
#include "regseq/examples.hpp"
#include "regseq/spectral.hpp"

using namespace regseq;
using namespace regseq::dirichlet;

namespace {

double log_q_R_upper(const LinearRepresentation& rep, int L = 8) {
    std::vector<CMat> mats;
    for (const auto& m : rep.matrices) mats.push_back(to_complex(m));
    auto est = spectral::jsr_bounds(mats, L);
    return std::log(est.upper) / std::log(double(rep.q));
}

// eta-function route to zeta on (0, infinity): zeta(s) = eta(s)/(1-2^{1-s}),
// eta via alternating series with Euler-style averaging of partial sums.
double zeta_oracle(double s) {
    const int terms = 4000, avg = 40;
    std::vector<double> partial(avg + 1, 0.0);
    double acc = 0.0;
    for (int n = 1; n <= terms; ++n) acc += (n % 2 ? 1.0 : -1.0) * std::pow(n, -s);
    partial[0] = acc;
    // tail averaging over the last partial sums
    std::vector<double> tail(avg);
    double run = acc;
    for (int i = 0; i < avg; ++i) {
        run -= ((terms - i) % 2 ? 1.0 : -1.0) * std::pow(terms - i, -s);
        tail[i] = run;
    }
    tail.insert(tail.begin(), acc);
    while (tail.size() > 1) {
        for (size_t i = 0; i + 1 < tail.size(); ++i) tail[i] = 0.5 * (tail[i] + tail[i + 1]);
        tail.pop_back();
    }
    return tail[0] / (1.0 - std::pow(2.0, 1.0 - s));
}

}  // namespace

TEST_CASE("direct summation: constant-one representation gives zeta") {
    auto rep = examples::constant_one();
    DirichletEvaluator ev(rep, log_q_R_upper(rep));
    auto v = ev.evaluate_full(cplx(2.0, 0.0), 1e-10);
    CHECK(std::abs(v.value(0) - 1.6449340668482264) < 1e-9);
    CHECK(v.abs_error_bound < 1e-9);

    auto v3 = ev.evaluate_full(cplx(3.0, 0.0), 1e-10);
    CHECK(std::abs(v3.value(0) - 1.2020569031595943) < 1e-9);
}

TEST_CASE("continuation: zeta at s = 0.5 through the functional equation") {
    auto rep = examples::constant_one();
    DirichletEvaluator ev(rep, log_q_R_upper(rep));
    auto v = ev.evaluate_full(cplx(0.5, 0.0), 1e-9);
    CHECK(std::abs(v.value(0) - (-1.4603545088095868)) < 1e-7);
    CHECK(v.depth >= 1);
}

TEST_CASE("continuation matches the eta-function oracle on (0,1)") {
    auto rep = examples::constant_one();
    DirichletEvaluator ev(rep, log_q_R_upper(rep));
    for (double s : {0.3, 0.7, 0.9}) {
        auto v = ev.evaluate_full(cplx(s, 0.0), 1e-9);
        CHECK(std::abs(v.value(0) - zeta_oracle(s)) < 1e-6);
    }
}

TEST_CASE("sum-of-digits series at s=4 matches brute force") {
    auto rep = examples::binary_sum_of_digits();
    DirichletEvaluator ev(rep, log_q_R_upper(rep));
    auto v = ev.evaluate_full(cplx(4.0, 0.0), 1e-11);
    double brute = 0.0;
    for (std::uint64_t n = 1; n <= 1000000; ++n)
        brute += double(__builtin_popcountll(n)) * std::pow(double(n), -4.0);
    CHECK(std::abs(v.value(0) - brute) < 1e-9);
}

TEST_CASE("overlap: continuation equals direct summation in the overlap strip") {
    auto rep = examples::binary_sum_of_digits();
    double a = log_q_R_upper(rep);
    DirichletEvaluator ev(rep, a);
    for (double off : {0.1, 0.5, 0.9}) {
        cplx s(ev.sigma_direct() + off, 0.7);
        auto direct = ev.direct_sum(s, 1e-11);
        auto cont = ev.evaluate_via_functional_equation(s, 1e-11);
        double gap = inf_norm(CVec(direct.value - cont.value));
        CHECK(gap <= 10 * (direct.abs_error_bound + cont.abs_error_bound));
    }
}

TEST_CASE("functional-equation residual") {
    for (const char* name : {"binary-sum-of-digits", "pascal-rhombus"}) {
        auto rep = examples::by_name(name);
        double a = log_q_R_upper(rep);
        DirichletEvaluator ev(rep, a);
        for (cplx s : {cplx(a + 0.4, 1.3), cplx(a + 1.1, -4.0), cplx(a + 2.5, 17.0)}) {
            auto v = ev.evaluate_raw(s, 1e-10);
            auto g = ev.right_side(s, 1e-10);
            CMat C = CMat::Zero(rep.d, rep.d);
            for (const auto& m : rep.matrices) C += to_complex(m);
            CMat M = CMat::Identity(rep.d, rep.d) -
                     std::exp(-s * std::log(double(rep.q))) * C;
            double resid = inf_norm(CVec(M * v.value - g.value));
            CHECK(resid <= 10 * (v.abs_error_bound + g.abs_error_bound));
        }
    }
}

TEST_CASE("n0-independence") {
    auto rep = examples::binary_sum_of_digits();
    double a = log_q_R_upper(rep);
    EvaluatorConfig c32, c64;
    c32.n0 = 32;
    c64.n0 = 64;
    DirichletEvaluator e32(rep, a, c32), e64(rep, a, c64);
    for (cplx s : {cplx(1.5, 0.0), cplx(0.9, 3.0)}) {
        auto v32 = e32.evaluate_full(s, 1e-10);
        auto v64 = e64.evaluate_full(s, 1e-10);
        double gap = inf_norm(CVec(v32.value - v64.value));
        CHECK(gap <= v32.abs_error_bound + v64.abs_error_bound + 1e-12);
    }
}

TEST_CASE("near-pole and domain guards") {
    auto rep = examples::binary_sum_of_digits();
    double a = log_q_R_upper(rep);
    EvaluatorConfig cfg;
    cfg.delta = 1e-3;
    DirichletEvaluator ev(rep, a, cfg);
    CHECK_THROWS_AS(ev.evaluate(cplx(1.0, 0.0), 1e-8), NearPole);      // 2^s = 2 exactly
    CHECK_THROWS_AS(ev.evaluate(cplx(0.1, 0.0), 1e-8), std::domain_error);
}

TEST_CASE("sigma_shift: zero shift and shifted-zeta identity") {
    // D = truncated zeta from n0 = 32
    ScalarSeries zeta32;
    zeta32.n0 = 32;
    zeta32.coeff_bound = 1.0;
    zeta32.growth = 0.0;
    zeta32.eval = [](cplx s, double) -> std::pair<cplx, double> {
        cplx acc = 0.0;
        double sigma = s.real();
        std::uint64_t n_stop =
            std::uint64_t(std::ceil(std::pow(1e-14 * (sigma - 1.0), -1.0 / (sigma - 1.0)))) + 32;
        for (std::uint64_t n = 32; n < n_stop; ++n) acc += std::exp(-s * std::log(double(n)));
        return {acc, std::pow(double(n_stop - 1), 1.0 - sigma) / (sigma - 1.0)};
    };

    auto [zero, zerr] = sigma_shift(zeta32, cplx(3.0, 0.0), 0.0, 256, 1e-12);
    CHECK(zero == cplx(0.0));
    CHECK(zerr == 0.0);

    // Sigma(3, 1/2, D) = sum_{n>=32} (n+1/2)^{-3} - n^{-3}
    auto [val, err] = sigma_shift(zeta32, cplx(3.0, 0.0), 0.5, 256, 1e-12);
    double brute = 0.0;
    for (std::uint64_t n = 32; n <= 10000000; ++n)
        brute += std::pow(n + 0.5, -3.0) - std::pow(double(n), -3.0);
    CHECK(std::abs(val - brute) < err + 1e-10);

    // raising k0 past the chosen index moves the value by less than the bound
    auto [val2, err2] = sigma_shift(zeta32, cplx(3.0, 0.0), 0.5, 256, 1e-15);
    CHECK(std::abs(val - val2) <= err + err2);
}

TEST_CASE("coefficient provider: prefix products agree with direct evaluation") {
    auto rep = examples::pascal_rhombus();
    DirichletEvaluator ev(rep, 1.0);
    std::uint64_t seed = 7;
    for (int t = 0; t < 50; ++t) {
        seed = seed * 6364136223846793005ULL + 1442695040888963407ULL;
        std::uint64_t n = seed % 5000000;
        CVec fast = ev.coefficient(n);
        CVec slow = to_complex(evaluate_vector(rep, n));
        CHECK(inf_norm(CVec(fast - slow)) < 1e-6 * (1.0 + inf_norm(slow)));
    }
}
