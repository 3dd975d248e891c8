#include "obcalc/zmodule.hpp"

#include <algorithm>
#include <sstream>

namespace obcalc {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long long>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    a_.reserve(rows_ * cols_);
    for (const auto& row : init) {
        if (row.size() != cols_)
            throw std::invalid_argument("IntMatrix: ragged initializer");
        for (long long x : row) a_.emplace_back(x);
    }
}

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::mul(const IntMatrix& rhs) const {
    if (cols_ != rhs.rows_)
        throw std::invalid_argument("IntMatrix::mul: shape mismatch");
    IntMatrix out(rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Int& x = at(i, k);
            if (x == 0) continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j)
                out.at(i, j) += x * rhs.at(k, j);
        }
    return out;
}

bool IntMatrix::is_diagonal() const {
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if (i != j && at(i, j) != 0) return false;
    return true;
}

std::string IntMatrix::to_string() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < rows_; ++i) {
        os << (i ? "; " : "");
        for (std::size_t j = 0; j < cols_; ++j) os << (j ? " " : "") << at(i, j);
    }
    os << "]";
    return os.str();
}

Int determinant(const IntMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant: not square");
    const std::size_t n = m.rows();
    if (n == 0) return 1;
    IntMatrix a = m;
    Int prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a.at(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && a.at(p, k) == 0) ++p;
            if (p == n) return 0;
            for (std::size_t j = 0; j < n; ++j) std::swap(a.at(k, j), a.at(p, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                a.at(i, j) = (a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j)) / prev;
        prev = a.at(k, k);
    }
    return sign > 0 ? a.at(n - 1, n - 1) : Int(-a.at(n - 1, n - 1));
}

namespace {

// Elementary operations mirrored into the transform matrices so that
// u * m * v stays equal to the working copy at all times.
struct SnfWork {
    IntMatrix a, u, v;

    void swap_rows(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t k = 0; k < a.cols(); ++k) std::swap(a.at(i, k), a.at(j, k));
        for (std::size_t k = 0; k < u.cols(); ++k) std::swap(u.at(i, k), u.at(j, k));
    }
    void swap_cols(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t k = 0; k < a.rows(); ++k) std::swap(a.at(k, i), a.at(k, j));
        for (std::size_t k = 0; k < v.rows(); ++k) std::swap(v.at(k, i), v.at(k, j));
    }
    // row i -= q * row j
    void addmul_row(std::size_t i, std::size_t j, const Int& q) {
        if (q == 0) return;
        for (std::size_t k = 0; k < a.cols(); ++k) a.at(i, k) -= q * a.at(j, k);
        for (std::size_t k = 0; k < u.cols(); ++k) u.at(i, k) -= q * u.at(j, k);
    }
    // col i -= q * col j
    void addmul_col(std::size_t i, std::size_t j, const Int& q) {
        if (q == 0) return;
        for (std::size_t k = 0; k < a.rows(); ++k) a.at(k, i) -= q * a.at(k, j);
        for (std::size_t k = 0; k < v.rows(); ++k) v.at(k, i) -= q * v.at(k, j);
    }
    void negate_row(std::size_t i) {
        for (std::size_t k = 0; k < a.cols(); ++k) a.at(i, k) = -a.at(i, k);
        for (std::size_t k = 0; k < u.cols(); ++k) u.at(i, k) = -u.at(i, k);
    }
};

}  // namespace

namespace {

// Quotient minimising |a - q b|; the remainder shrinks to at most |b| / 2,
// which keeps the elimination multipliers and the entry growth tame.
Int rounded_quotient(const Int& a, const Int& b) {
    Int q = a / b;
    Int r = a - q * b;
    if (2 * abs(r) > abs(b)) q += ((r > 0) == (b > 0)) ? 1 : -1;
    return q;
}

}  // namespace

SnfResult smith_normal_form(const IntMatrix& m) {
    const std::size_t rows = m.rows(), cols = m.cols();
    SnfWork w{m, IntMatrix::identity(rows), IntMatrix::identity(cols)};
    const std::size_t nmin = std::min(rows, cols);

    for (std::size_t s = 0; s < nmin; ++s) {
        for (;;) {
            // Re-select the smallest nonzero magnitude in the lower-right
            // block as the pivot on every sweep; with rounded quotients
            // each sweep at least halves any nonzero remainder, so the
            // pivot descends fast and entries stay small.
            std::size_t pi = s, pj = s;
            bool found = false;
            Int best;
            for (std::size_t i = s; i < rows; ++i)
                for (std::size_t j = s; j < cols; ++j) {
                    const Int& x = w.a.at(i, j);
                    if (x == 0) continue;
                    Int ax = abs(x);
                    if (!found || ax < best) {
                        found = true;
                        best = ax;
                        pi = i;
                        pj = j;
                    }
                }
            if (!found) goto matrix_done;
            w.swap_rows(s, pi);
            w.swap_cols(s, pj);

            bool clean = true;
            for (std::size_t i = s + 1; i < rows; ++i) {
                if (w.a.at(i, s) == 0) continue;
                w.addmul_row(i, s, rounded_quotient(w.a.at(i, s), w.a.at(s, s)));
                if (w.a.at(i, s) != 0) clean = false;
            }
            for (std::size_t j = s + 1; j < cols; ++j) {
                if (w.a.at(s, j) == 0) continue;
                w.addmul_col(j, s, rounded_quotient(w.a.at(s, j), w.a.at(s, s)));
                if (w.a.at(s, j) != 0) clean = false;
            }
            if (!clean) continue;

            // Divisibility fix-up: fold a row with an offending entry into
            // row s; its reduction strictly shrinks the pivot.
            bool divides = true;
            for (std::size_t i = s + 1; i < rows && divides; ++i)
                for (std::size_t j = s + 1; j < cols && divides; ++j)
                    if (w.a.at(i, j) % w.a.at(s, s) != 0) {
                        w.addmul_row(s, i, Int(-1));
                        divides = false;
                    }
            if (divides) break;
        }
        if (w.a.at(s, s) < 0) w.negate_row(s);
    }
matrix_done:
    return SnfResult{std::move(w.u), std::move(w.a), std::move(w.v)};
}

std::string AbelianGroup::to_string() const {
    if (is_trivial()) return "0";
    std::ostringstream os;
    bool first = true;
    auto sep = [&] {
        if (!first) os << " + ";
        first = false;
    };
    if (free_rank == 1) {
        sep();
        os << "Z";
    } else if (free_rank > 1) {
        sep();
        os << "Z^" << free_rank;
    }
    for (const Int& d : torsion) {
        sep();
        os << "Z/" << d;
    }
    return os.str();
}

AbelianGroup cokernel(const IntMatrix& m) {
    SnfResult s = smith_normal_form(m);
    AbelianGroup g;
    std::size_t nonzero = 0;
    const std::size_t nmin = std::min(m.rows(), m.cols());
    for (std::size_t i = 0; i < nmin; ++i) {
        const Int& d = s.d.at(i, i);
        if (d == 0) continue;
        ++nonzero;
        if (d >= 2) g.torsion.push_back(d);
    }
    g.free_rank = static_cast<long long>(m.rows() - nonzero);
    std::sort(g.torsion.begin(), g.torsion.end());
    return g;
}

}  // namespace obcalc
