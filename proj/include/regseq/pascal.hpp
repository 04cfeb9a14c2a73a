#pragma once

// Pascal's rhombus modulo 2: bit-packed grid oracle, the row-count sequences
// x(n), y(n), z(n) with their divide-and-conquer recurrences, and the 5-dim
// linear representation.

#include <cstdint>
#include <string>
#include <vector>

#include "regseq/linrep.hpp"

namespace regseq::pascal {

/// Row-count sequences taken directly from the grid (the oracle):
/// x(n) = ones in row n, y(n) = ones in row 2n-1 at even columns,
/// z(n) = ones in row 2n at odd columns.
struct GridCounts {
    std::vector<std::uint64_t> x;  // index 0..I
    std::vector<std::uint64_t> y;  // index 0..I/2
    std::vector<std::uint64_t> z;  // index 0..I/2
};
GridCounts grid_counts(std::uint64_t max_row);

/// X(N) = sum of ones in rows 1..N, streamed without keeping the grid.
std::uint64_t grid_summatory_x(std::uint64_t N);

/// x, y, z extended via the recurrences
/// x(2n) = x(n)+z(n), x(2n+1) = y(n+1), y(2n) = x(n-1)+z(n),
/// y(2n+1) = x(n+1)+z(n), z(2n) = 2x(n), z(2n+1) = 2y(n+1).
struct Sequences {
    std::vector<std::uint64_t> x, y, z;  // valid up to index limit
};
Sequences recurrence_sequences(std::uint64_t limit);

struct RecurrenceReport {
    bool ok = true;
    std::string first_failure;  // "equation @ n" when not ok
};
/// Checks all six recurrences exactly against the grid for 1 <= n <= limit.
RecurrenceReport verify_recurrences(std::uint64_t limit);

/// The 5-dimensional q=2 representation of v(n) = (x(n), x(n+1), y(n+1),
/// z(n), z(n+1)).
LinearRepresentation representation();

/// kappa = log2(3 + sqrt(17)) - 1, the exponent of the main term of X(N).
double kappa();

}  // namespace regseq::pascal
