#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace obcalc {

// Exact integers. Smith normal form pivots grow quickly even on small
// matrices, so fixed-width arithmetic is not an option here.
using Int = boost::multiprecision::cpp_int;

/// Dense integer matrix, row-major, exact entries. Empty dimensions allowed.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols) {}
    IntMatrix(std::initializer_list<std::initializer_list<long long>> init);

    static IntMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Int& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Int& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    bool operator==(const IntMatrix& o) const = default;

    IntMatrix mul(const IntMatrix& rhs) const;
    bool is_diagonal() const;
    std::string to_string() const;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Int> a_;
};

/// Exact determinant via fraction-free (Bareiss) elimination. Square input.
Int determinant(const IntMatrix& m);

struct SnfResult {
    IntMatrix u;  // rows x rows, unimodular
    IntMatrix d;  // rows x cols, diagonal, d1 | d2 | ... , entries >= 0
    IntMatrix v;  // cols x cols, unimodular
};

/// Smith normal form with transforms: u * m * v == d.
SnfResult smith_normal_form(const IntMatrix& m);

/// Finitely generated abelian group in canonical form:
/// Z^free_rank  (+)  Z/d1 (+) ... (+) Z/dk   with 2 <= d1 | d2 | ... | dk.
struct AbelianGroup {
    long long free_rank = 0;
    std::vector<Int> torsion;

    bool operator==(const AbelianGroup& o) const = default;
    bool is_trivial() const { return free_rank == 0 && torsion.empty(); }
    std::string to_string() const;

    static AbelianGroup free(long long rank) { return AbelianGroup{rank, {}}; }
};

/// Z^rows / column-span(m), canonical.
AbelianGroup cokernel(const IntMatrix& m);

}  // namespace obcalc
