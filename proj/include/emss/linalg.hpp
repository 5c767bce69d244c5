#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "emss/scalars.hpp"

namespace emss {

using Vector = std::vector<Scalar>;

/// Dense matrix over a Field. Residues and rationals are stored unboxed so
/// elimination does not go through Scalar.
class Matrix {
public:
    Matrix() = default;
    Matrix(const Field& f, std::size_t rows, std::size_t cols);
    static Matrix from_rows(const Field& f, std::size_t cols, const std::vector<Vector>& rows);

    const Field& field() const { return f_; }
    std::size_t rows() const { return r_; }
    std::size_t cols() const { return c_; }

    Scalar at(std::size_t i, std::size_t j) const;
    void set(std::size_t i, std::size_t j, const Scalar& s);
    void add(std::size_t i, std::size_t j, const Scalar& s);
    /* Shortcut for small integer entries from the complex builders. */
    void add(std::size_t i, std::size_t j, long s);

    Vector row(std::size_t i) const;
    Vector column(std::size_t j) const;
    bool is_zero() const;
    Matrix transpose() const;
    Matrix operator*(const Matrix& o) const;
    Vector apply(const Vector& v) const;
    bool operator==(const Matrix& o) const;

    // raw storage, one of the two is used depending on the field
    std::vector<std::uint64_t>& residues() { return modp_; }
    const std::vector<std::uint64_t>& residues() const { return modp_; }
    std::vector<mpq_class>& rationals() { return rat_; }
    const std::vector<mpq_class>& rationals() const { return rat_; }

private:
    Field f_;
    std::size_t r_ = 0, c_ = 0;
    std::vector<std::uint64_t> modp_;
    std::vector<mpq_class> rat_;
};

/* Rank: plain elimination mod p, fraction-free (Bareiss) over Q. */
std::size_t rank(const Matrix& m);

/// Reduced row echelon basis of a row space.
struct Echelon {
    Matrix rows;
    std::vector<std::size_t> pivots;

    std::size_t size() const { return pivots.size(); }
    /* Subtracts the echelon rows to clear every pivot column of v. */
    void reduce(Vector& v) const;
    bool contains(const Vector& v) const;
};

/* RREF of the row space spanned by the given rows (zero rows dropped). */
Echelon row_echelon(const Matrix& rows);

/* Rows form a basis of {v : m v = 0}, in RREF. */
Matrix kernel(const Matrix& m);

/* Some x with m x = b, if one exists. */
std::optional<Vector> solve(const Matrix& m, const Vector& b);

Vector zero_vector(const Field& f, std::size_t n);
bool is_zero(const Vector& v);

}  // namespace emss
