#pragma once

// Built-in example representations.

#include <string>
#include <vector>

#include "regseq/linrep.hpp"

namespace regseq::examples {

/// Binary sum of digits: d = 2, A_0 = I, A_1 = [[1,1],[0,1]], v(0) = (0,1).
LinearRepresentation binary_sum_of_digits();

/// Pascal's rhombus row counts: d = 5, q = 2,
/// v(n) = (x(n), x(n+1), y(n+1), z(n), z(n+1)), v(0) = (0,1,1,0,2).
LinearRepresentation pascal_rhombus();

/// x(n) = 1 for all n: d = 1, A_0 = A_1 = [1].
LinearRepresentation constant_one();

std::vector<std::string> example_names();
LinearRepresentation by_name(const std::string& name);

}  // namespace regseq::examples
