#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "regseq/asymptotics.hpp"
#include "regseq/examples.hpp"
#include "regseq/pascal_system.hpp"

using namespace regseq;
using namespace regseq::asymptotics;

namespace {
struct Setup {
    LinearRepresentation rep;
    spectral::SpectralReport spec;
    spectral::JsrEstimate jsr;
};
Setup analyze(const std::string& name) {
    Setup s{examples::by_name(name), {}, {}};
    std::vector<CMat> mats;
    CMat C = CMat::Zero(s.rep.d, s.rep.d);
    for (const auto& m : s.rep.matrices) {
        mats.push_back(to_complex(m));
        C += mats.back();
    }
    s.spec = spectral::spectrum(C);
    s.jsr = spectral::jsr_bounds(mats, 8);
    spectral::choose_R(s.jsr, s.spec);
    return s;
}
}  // namespace

TEST_CASE("skeleton: sum of digits has one term with two log powers") {
    auto s = analyze("binary-sum-of-digits");
    auto skel = skeleton(s.rep, s.spec, s.jsr);
    REQUIRE(skel.terms.size() == 1);
    CHECK(std::abs(skel.terms[0].lambda - 2.0) < 1e-10);
    CHECK(skel.terms[0].max_log_power == 2);  // k in {0, 1}
    CHECK(!skel.has_error_term);              // no eigenvalue at or below R
    CHECK(skel.K_v0_norm < 1e-8);
    CHECK(skel.theta_v0_norm < 1e-8);
    // lambda = 2 sits well above the JSR bracket, so no band ambiguity
    CHECK(skel.uncertain_band.empty());
}

TEST_CASE("skeleton flags eigenvalues inside the JSR bracket") {
    // contrived: widen the bracket by keeping product length 1 only
    auto s = analyze("binary-sum-of-digits");
    spectral::JsrEstimate wide = s.jsr;
    wide.lower = 1.0;
    wide.upper = 3.0;  // bracket now swallows lambda = 2
    wide.finiteness_detected = false;
    wide.R = 3.0 * (1 + 1e-6);
    auto skel = skeleton(s.rep, s.spec, wide);
    CHECK(!skel.uncertain_band.empty());
    CHECK(!skel.warnings.empty());
}

TEST_CASE("skeleton: Pascal keeps lambda_1, folds |lambda| = 2 into the error") {
    auto s = analyze("pascal-rhombus");
    auto skel = skeleton(s.rep, s.spec, s.jsr);
    REQUIRE(skel.terms.size() == 1);
    CHECK(std::abs(skel.terms[0].lambda - (3.0 + std::sqrt(17.0)) / 2.0) < 1e-8);
    CHECK(skel.terms[0].max_log_power == 1);
    CHECK(skel.has_error_term);
    CHECK(skel.error_exponent == doctest::Approx(1.0));  // log_2 R = 1
    CHECK(skel.error_log_power == 1);                    // m = 1 at |lambda| = 2
    CHECK(skel.boundary_eigenvalues.size() == 2);        // 2 and -2
}

TEST_CASE("skeleton: constant-one is a single exact term") {
    auto s = analyze("constant-one");
    auto skel = skeleton(s.rep, s.spec, s.jsr);
    REQUIRE(skel.terms.size() == 1);
    CHECK(std::abs(skel.terms[0].lambda - 2.0) < 1e-12);
    CHECK(skel.terms[0].max_log_power == 1);
    CHECK(!skel.has_error_term);
    CHECK(skel.terms[0].exponent.real() == doctest::Approx(1.0));
}

TEST_CASE("residual decay: constant-one reconstructs exactly") {
    auto s = analyze("constant-one");
    auto skel = skeleton(s.rep, s.spec, s.jsr);
    fourier::FourierTable table;
    table.q = 2;
    table.entries.push_back(fourier::FourierEntry{cplx(2, 0), 0, 0, cplx(1.0, 0.0), 0.0});
    std::vector<fourier::HigherTerm> terms{{cplx(2, 0), 0, &table, 0}};
    auto report = residual_decay_check(s.rep, skel, terms,
                                       {16, 64, 256, 1024, 4096, 65536});
    CHECK(report.bounded);
    for (const auto& p : report.points) CHECK(p.residual < 1e-9 * double(p.N));
}

TEST_CASE("residual decay: Pascal normalized residual stays bounded") {
    auto s = analyze("pascal-rhombus");
    auto skel = skeleton(s.rep, s.spec, s.jsr);
    auto table = pascal_system::fourier_table(40, 1e-9);
    cplx lambda1((3.0 + std::sqrt(17.0)) / 2.0, 0.0);
    std::vector<fourier::HigherTerm> terms{{lambda1, 0, &table, 40}};
    std::vector<std::uint64_t> grid;
    for (int j = 10; j <= 20; ++j) {
        grid.push_back(1ull << j);
        grid.push_back((1ull << j) + (1ull << (j - 1)));
    }
    auto report = residual_decay_check(s.rep, skel, terms, grid);
    CHECK(report.bounded);
    // N log N error term: normalized residual / log N should stay modest
    for (const auto& p : report.points)
        CHECK(p.normalized < 10.0);
}
