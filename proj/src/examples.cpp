#include "regseq/examples.hpp"

#include <stdexcept>

namespace regseq::examples {

namespace {
QMat mat_from_rows(std::initializer_list<std::initializer_list<long>> rows) {
    int n = int(rows.size());
    int m = int(rows.begin()->size());
    QMat a(n, m);
    int i = 0;
    for (auto& row : rows) {
        int j = 0;
        for (long v : row) a(i, j++) = GRational{v};
        ++i;
    }
    return a;
}
}  // namespace

LinearRepresentation binary_sum_of_digits() {
    QMat A0 = mat_from_rows({{1, 0}, {0, 1}});
    QMat A1 = mat_from_rows({{1, 1}, {0, 1}});
    return make_representation(2, {A0, A1}, {GRational{0}, GRational{1}});
}

LinearRepresentation pascal_rhombus() {
    QMat A0 = mat_from_rows({{1, 0, 0, 1, 0},
                             {0, 0, 1, 0, 0},
                             {0, 1, 0, 1, 0},
                             {2, 0, 0, 0, 0},
                             {0, 0, 2, 0, 0}});
    QMat A1 = mat_from_rows({{0, 0, 1, 0, 0},
                             {0, 1, 0, 0, 1},
                             {1, 0, 0, 0, 1},
                             {0, 0, 2, 0, 0},
                             {0, 2, 0, 0, 0}});
    return make_representation(
        2, {A0, A1}, {GRational{0}, GRational{1}, GRational{1}, GRational{0}, GRational{2}});
}

LinearRepresentation constant_one() {
    QMat A = mat_from_rows({{1}});
    return make_representation(2, {A, A}, {GRational{1}});
}

std::vector<std::string> example_names() {
    return {"binary-sum-of-digits", "pascal-rhombus", "constant-one"};
}

LinearRepresentation by_name(const std::string& name) {
    if (name == "binary-sum-of-digits") return binary_sum_of_digits();
    if (name == "pascal-rhombus") return pascal_rhombus();
    if (name == "constant-one") return constant_one();
    throw std::invalid_argument("unknown example representation: " + name);
}

}  // namespace regseq::examples
