#include "regseq/pascal.hpp"

#include <bit>
#include <cmath>

#include "regseq/examples.hpp"

namespace regseq::pascal {

namespace {

// Two-row sliding window over the rhombus mod 2. Row i occupies columns
// |j| <= i, stored LSB-first with column j at bit offset j + max_row + 2.
// Rows are advanced in a single fused pass over the active word range,
// counting ones as they are produced.
class RowStream {
  public:
    explicit RowStream(std::uint64_t max_row)
        : words_((2 * max_row + 5 + 63) / 64 + 4),
          offset_(max_row + 2),
          prev2_(words_, 0),
          prev1_(words_, 0),
          cur_(words_, 0) {
        prev1_[offset_ / 64] = 1ULL << (offset_ % 64);  // row 1: one at column 0
        row_ = 1;
        count_ = 1;
    }

    // advance to row_+1
    void step() {
        // r_i = shl(r_{i-1}) ^ r_{i-1} ^ shr(r_{i-1}) ^ r_{i-2},
        // shifts read the neighbour words directly
        std::uint64_t lo = (offset_ - row_ - 1) / 64;
        std::uint64_t hi = (offset_ + row_ + 1) / 64 + 1;
        const std::uint64_t* p1 = prev1_.data();
        const std::uint64_t* p2 = prev2_.data();
        std::uint64_t* out = cur_.data();
        std::uint64_t ones = 0;
        for (std::uint64_t w = lo; w <= hi; ++w) {
            std::uint64_t v = p1[w];
            std::uint64_t left = (v << 1) | (w > 0 ? p1[w - 1] >> 63 : 0);
            std::uint64_t right = (v >> 1) | (p1[w + 1] << 63);
            std::uint64_t r = left ^ v ^ right ^ p2[w];
            out[w] = r;
            ones += std::uint64_t(std::popcount(r));
        }
        prev2_.swap(prev1_);
        prev1_.swap(cur_);
        ++row_;
        count_ = ones;
    }

    std::uint64_t row() const { return row_; }

    /// ones in the current row
    std::uint64_t popcount() const { return count_; }

    // ones at columns of given parity (0 = even columns)
    std::uint64_t popcount_parity(int parity) const {
        // column j sits at bit offset_ + j
        std::uint64_t c = 0;
        int want = (int(offset_) + parity) % 2;
        std::uint64_t mask = want == 0 ? 0x5555555555555555ULL : 0xAAAAAAAAAAAAAAAAULL;
        std::uint64_t lo = (offset_ - row_ - 1) / 64;
        std::uint64_t hi = std::min<std::uint64_t>((offset_ + row_ + 1) / 64 + 1, words_ - 1);
        for (std::uint64_t w = lo; w <= hi; ++w)
            c += std::uint64_t(std::popcount(prev1_[w] & mask));
        return c;
    }

  private:
    size_t words_;
    std::uint64_t offset_;
    std::vector<std::uint64_t> prev2_, prev1_, cur_;
    std::uint64_t row_ = 0;
    std::uint64_t count_ = 0;
};

}  // namespace

GridCounts grid_counts(std::uint64_t max_row) {
    GridCounts out;
    out.x.assign(max_row + 1, 0);
    out.y.assign(max_row / 2 + 1, 0);
    out.z.assign(max_row / 2 + 1, 0);
    if (max_row == 0) return out;
    RowStream rs(max_row);
    out.x[1] = rs.popcount();
    if (1 <= max_row && !out.y.empty()) {
        // row 1 is row 2*1-1 for y(1)
        if (out.y.size() > 1) out.y[1] = rs.popcount_parity(0);
    }
    for (std::uint64_t i = 2; i <= max_row; ++i) {
        rs.step();
        out.x[i] = rs.popcount();
        if (i % 2 == 1 && i / 2 + 1 < out.y.size()) out.y[i / 2 + 1] = rs.popcount_parity(0);
        if (i % 2 == 0 && i / 2 < out.z.size()) out.z[i / 2] = rs.popcount_parity(1);
    }
    return out;
}

std::uint64_t grid_summatory_x(std::uint64_t N) {
    if (N == 0) return 0;
    RowStream rs(N);
    std::uint64_t total = rs.popcount();
    for (std::uint64_t i = 2; i <= N; ++i) {
        rs.step();
        total += rs.popcount();
    }
    return total;
}

Sequences recurrence_sequences(std::uint64_t limit) {
    Sequences s;
    s.x.assign(limit + 2, 0);
    s.y.assign(limit + 2, 0);
    s.z.assign(limit + 2, 0);
    if (limit < 1) return s;
    s.x[1] = 1;
    s.y[1] = 1;
    s.z[1] = 2;
    // even-index values first so the odd ones can reach index n+1
    for (std::uint64_t n = 1; 2 * n <= limit + 1; ++n) {
        if (2 * n <= limit + 1) {
            s.x[2 * n] = s.x[n] + s.z[n];
            s.y[2 * n] = s.x[n - 1] + s.z[n];
            s.z[2 * n] = 2 * s.x[n];
        }
        if (2 * n + 1 <= limit + 1) {
            s.x[2 * n + 1] = s.y[n + 1];
            s.y[2 * n + 1] = s.x[n + 1] + s.z[n];
            s.z[2 * n + 1] = 2 * s.y[n + 1];
        }
    }
    return s;
}

RecurrenceReport verify_recurrences(std::uint64_t limit) {
    RecurrenceReport report;
    // y and z are checked up to index 2*limit+1, which needs grid rows to
    // 2*(2*limit+1).
    GridCounts g = grid_counts(4 * limit + 4);
    auto fail = [&](const char* eq, std::uint64_t n) {
        report.ok = false;
        report.first_failure = std::string(eq) + " @ n=" + std::to_string(n);
    };
    for (std::uint64_t n = 1; n <= limit && report.ok; ++n) {
        if (g.x[2 * n] != g.x[n] + g.z[n]) fail("x(2n)=x(n)+z(n)", n);
        else if (g.x[2 * n + 1] != g.y[n + 1]) fail("x(2n+1)=y(n+1)", n);
        else if (g.y[2 * n] != g.x[n - 1] + g.z[n]) fail("y(2n)=x(n-1)+z(n)", n);
        else if (g.y[2 * n + 1] != g.x[n + 1] + g.z[n]) fail("y(2n+1)=x(n+1)+z(n)", n);
        else if (g.z[2 * n] != 2 * g.x[n]) fail("z(2n)=2x(n)", n);
        else if (g.z[2 * n + 1] != 2 * g.y[n + 1]) fail("z(2n+1)=2y(n+1)", n);
    }
    return report;
}

LinearRepresentation representation() { return examples::pascal_rhombus(); }

double kappa() { return std::log2(3.0 + std::sqrt(17.0)) - 1.0; }

}  // namespace regseq::pascal
