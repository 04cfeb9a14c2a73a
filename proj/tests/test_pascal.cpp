#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "regseq/examples.hpp"
#include "regseq/pascal.hpp"
#include "regseq/pascal_system.hpp"

using namespace regseq;

TEST_CASE("grid counts: initial values") {
    auto g = pascal::grid_counts(16);
    CHECK(g.x[0] == 0);
    CHECK(g.x[1] == 1);
    CHECK(g.x[2] == 3);
    CHECK(g.y[1] == 1);
    CHECK(g.z[1] == 2);
    CHECK(g.y[0] == 0);
    CHECK(g.z[0] == 0);
}

TEST_CASE("recurrences hold on the grid up to 512") {
    auto report = pascal::verify_recurrences(512);
    CHECK(report.ok);
    if (!report.ok) MESSAGE(report.first_failure);
}

TEST_CASE("spot recurrence values") {
    auto g = pascal::grid_counts(8);
    CHECK(g.z[2] == 2 * g.x[1]);  // z(2) = 2 x(1) = 2
    CHECK(g.z[2] == 2);
    CHECK(g.x[1] == g.y[1]);  // x(2n+1) = y(n+1) at n = 0
}

TEST_CASE("recurrence sequences match the grid") {
    auto g = pascal::grid_counts(2048);
    auto s = pascal::recurrence_sequences(1024);
    for (std::uint64_t n = 0; n <= 1024; ++n) {
        CHECK(s.x[n] == g.x[n]);
        if (n <= 1024) {
            CHECK(s.y[n] == g.y[n]);
            CHECK(s.z[n] == g.z[n]);
        }
    }
}

TEST_CASE("x, y, z are bounded by 2n") {
    auto s = pascal::recurrence_sequences(4096);
    for (std::uint64_t n = 1; n <= 4096; ++n) {
        CHECK(s.x[n] <= 2 * n);
        CHECK(s.y[n] <= 2 * n);
        CHECK(s.z[n] <= 2 * n);
    }
}

TEST_CASE("representation evaluates to the grid counts") {
    auto rep = pascal::representation();
    CHECK(validate(rep).empty());
    auto g = pascal::grid_counts(2048);
    for (std::uint64_t n = 0; n <= 2048; n += (n < 64 ? 1 : 37))
        CHECK(evaluate(rep, n) == GRational{long(g.x[n])});
}

TEST_CASE("representation vector matches (x, x+, y+, z, z+)") {
    auto rep = pascal::representation();
    auto s = pascal::recurrence_sequences(512);
    for (std::uint64_t n = 0; n <= 255; ++n) {
        QVec v = evaluate_vector(rep, n);
        CHECK(v[0] == GRational{long(s.x[n])});
        CHECK(v[1] == GRational{long(s.x[n + 1])});
        CHECK(v[2] == GRational{long(s.y[n + 1])});
        CHECK(v[3] == GRational{long(s.z[n])});
        CHECK(v[4] == GRational{long(s.z[n + 1])});
    }
}

TEST_CASE("summatory matches the grid-based count") {
    auto rep = pascal::representation();
    std::uint64_t N = 10000;
    QVec V = summatory_fast(rep, N + 1);  // includes x(N)
    std::uint64_t grid = pascal::grid_summatory_x(N);
    CHECK(dot(rep.e, V) == GRational{long(grid)});
}

TEST_CASE("kappa") {
    double k = pascal::kappa();
    CHECK(std::abs(k - 1.83250638358045) < 1e-12);
    // 2^kappa = (3+sqrt(17))/2 is a zero of U^2 - 3U - 2
    double U = std::pow(2.0, k);
    CHECK(std::abs(U * U - 3.0 * U - 2.0) < 1e-10);
    CHECK(k > 1.0);
}

TEST_CASE("determinant zeros: 2^s in {(3 +- sqrt17)/2, -2}") {
    using pascal_system::PascalEvaluator;
    double s17 = std::sqrt(17.0);
    double kap = pascal::kappa();
    CHECK(std::abs(PascalEvaluator::delta(cplx(kap, 0.0))) < 1e-12);
    // 2^s = -2: s = 1 + i pi / log 2
    cplx s_neg2(1.0, std::numbers::pi / std::log(2.0));
    CHECK(std::abs(PascalEvaluator::delta(s_neg2)) < 1e-12);
    // 2^s = (3 - sqrt17)/2 has |2^s| < 1, outside the continued domain,
    // but the entire function still vanishes there
    cplx s5 = std::log(cplx((3.0 - s17) / 2.0, 0.0)) / std::log(2.0);
    CHECK(std::abs(PascalEvaluator::delta(s5)) < 1e-12);
    // derivative is nonzero at the dominant zero (simple zero)
    CHECK(std::abs(PascalEvaluator::delta_prime(cplx(kap, 0.0))) > 1e-3);
}

TEST_CASE("Pascal system values at s = 4 match brute-force partial sums") {
    pascal_system::PascalEvaluator ev;
    auto v = ev.evaluate(cplx(4.0, 0.0), 1e-12);
    auto s = pascal::recurrence_sequences(1 << 21);
    double X = 0, Y = 0, Z = 0;
    for (std::uint64_t n = ev.config().n0; n < (1ull << 21); ++n) {
        double w = std::pow(double(n), -4.0);
        X += double(s.x[n]) * w;
        Y += double(s.y[n]) * w;
        Z += double(s.z[n]) * w;
    }
    // brute-force tail is below 2e-13 at 2^21 with coefficients <= 2n
    CHECK(std::abs(v.X - X) < v.abs_error_bound + 1e-12);
    CHECK(std::abs(v.Y - Y) < v.abs_error_bound + 1e-12);
    CHECK(std::abs(v.Z - Z) < v.abs_error_bound + 1e-12);
}

TEST_CASE("3-dim system agrees with the generic 5-dim continuation") {
    pascal_system::PascalEvaluator p3;
    auto rep = pascal::representation();
    dirichlet::DirichletEvaluator p5(rep, 1.0);  // log_2 rho = 1 exactly
    for (cplx s : {cplx(3.0, 0.0), cplx(2.2, 1.0), cplx(1.6, -2.0)}) {
        auto v3 = p3.evaluate(s, 1e-10);
        auto v5 = p5.evaluate_full(s, 1e-10);
        // first component of v(n) is x(n); full series from n = 1
        auto seqs = pascal::recurrence_sequences(64);
        cplx x3 = v3.X;
        for (int n = 1; n < p3.config().n0; ++n)
            x3 += double(seqs.x[n]) * std::exp(-s * std::log(double(n)));
        CHECK(std::abs(x3 - v5.value(0)) <=
              10 * (v3.abs_error_bound + v5.abs_error_bound) + 1e-10);
    }
}

TEST_CASE("Pascal Fourier fast path: Table-1 values") {
    pascal_system::PascalEvaluator ev;
    auto phi0 = ev.fourier_coefficient(0);
    CHECK(std::abs(phi0.phi - cplx(0.6911615112341912755021246, 0.0)) < 1e-10);

    auto phi2 = ev.fourier_coefficient(2);
    CHECK(std::abs(phi2.phi - cplx(0.00279378637350495172116712,
                                   -0.00066736128659728911347756)) < 1e-8);

    auto phi10 = ev.fourier_coefficient(10);
    CHECK(std::abs(phi10.phi - cplx(-0.00019981745997355255061991,
                                    -0.00031394569060142799808175)) < 1e-8);
}
