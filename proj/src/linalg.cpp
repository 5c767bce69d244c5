#include "emss/linalg.hpp"

#include <utility>

namespace emss {

namespace {

struct ModP {
    std::uint64_t p;

    std::uint64_t add(std::uint64_t a, std::uint64_t b) const { return (a + b) % p; }
    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return (a + p - b) % p; }
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return a * b % p; }
    bool zero(std::uint64_t a) const { return a == 0; }
    std::uint64_t inv(std::uint64_t a) const
    {
        std::uint64_t r = 1, e = p - 2;
        while (e) {
            if (e & 1)
                r = r * a % p;
            a = a * a % p;
            e >>= 1;
        }
        return r;
    }
};

struct Rat {
    mpq_class add(const mpq_class& a, const mpq_class& b) const { return a + b; }
    mpq_class sub(const mpq_class& a, const mpq_class& b) const { return a - b; }
    mpq_class mul(const mpq_class& a, const mpq_class& b) const { return a * b; }
    bool zero(const mpq_class& a) const { return sgn(a) == 0; }
    mpq_class inv(const mpq_class& a) const { return 1 / a; }
};

// In-place RREF of an r x c row-major block, returns pivot columns.
template <class T, class Ops>
std::vector<std::size_t> rref(std::vector<T>& a, std::size_t r, std::size_t c, const Ops& ops)
{
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < c && row < r; ++col) {
        std::size_t sel = r;
        for (std::size_t i = row; i < r; ++i)
            if (!ops.zero(a[i * c + col])) {
                sel = i;
                break;
            }
        if (sel == r)
            continue;
        if (sel != row)
            for (std::size_t j = 0; j < c; ++j)
                std::swap(a[sel * c + j], a[row * c + j]);
        T iv = ops.inv(a[row * c + col]);
        for (std::size_t j = col; j < c; ++j)
            a[row * c + j] = ops.mul(a[row * c + j], iv);
        for (std::size_t i = 0; i < r; ++i) {
            if (i == row || ops.zero(a[i * c + col]))
                continue;
            T f = a[i * c + col];
            for (std::size_t j = col; j < c; ++j)
                if (!ops.zero(a[row * c + j]))
                    a[i * c + j] = ops.sub(a[i * c + j], ops.mul(f, a[row * c + j]));
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

std::size_t bareiss_rank(const std::vector<mpq_class>& src, std::size_t r, std::size_t c)
{
    // clear denominators row by row, then fraction-free elimination on integers
    std::vector<mpz_class> a(r * c);
    for (std::size_t i = 0; i < r; ++i) {
        mpz_class l = 1;
        for (std::size_t j = 0; j < c; ++j)
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), src[i * c + j].get_den_mpz_t());
        for (std::size_t j = 0; j < c; ++j)
            a[i * c + j] = src[i * c + j].get_num() * (l / src[i * c + j].get_den());
    }
    mpz_class prev = 1;
    std::size_t row = 0;
    for (std::size_t col = 0; col < c && row < r; ++col) {
        std::size_t sel = r;
        for (std::size_t i = row; i < r; ++i)
            if (a[i * c + col] != 0) {
                sel = i;
                break;
            }
        if (sel == r)
            continue;
        if (sel != row)
            for (std::size_t j = 0; j < c; ++j)
                std::swap(a[sel * c + j], a[row * c + j]);
        const mpz_class piv = a[row * c + col];
        for (std::size_t i = row + 1; i < r; ++i) {
            mpz_class f = a[i * c + col];
            for (std::size_t j = col; j < c; ++j) {
                mpz_class v = piv * a[i * c + j] - f * a[row * c + j];
                mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
                a[i * c + j] = v;
            }
        }
        prev = piv;
        ++row;
    }
    return row;
}

}  // namespace

Matrix::Matrix(const Field& f, std::size_t rows, std::size_t cols) : f_(f), r_(rows), c_(cols)
{
    if (f_.is_rational())
        rat_.assign(rows * cols, mpq_class(0));
    else
        modp_.assign(rows * cols, 0);
}

Matrix Matrix::from_rows(const Field& f, std::size_t cols, const std::vector<Vector>& rows)
{
    Matrix m(f, rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols)
            throw Error("row length mismatch");
        for (std::size_t j = 0; j < cols; ++j)
            m.set(i, j, rows[i][j]);
    }
    return m;
}

Scalar Matrix::at(std::size_t i, std::size_t j) const
{
    if (f_.is_rational())
        return Scalar(f_, rat_[i * c_ + j]);
    return Scalar(f_, static_cast<long>(modp_[i * c_ + j]));
}

void Matrix::set(std::size_t i, std::size_t j, const Scalar& s)
{
    if (s.field() != f_)
        throw FieldError("matrix entry from a different field");
    if (f_.is_rational())
        rat_[i * c_ + j] = s.rational();
    else
        modp_[i * c_ + j] = s.residue();
}

void Matrix::add(std::size_t i, std::size_t j, const Scalar& s)
{
    if (s.field() != f_)
        throw FieldError("matrix entry from a different field");
    if (f_.is_rational())
        rat_[i * c_ + j] += s.rational();
    else
        modp_[i * c_ + j] = (modp_[i * c_ + j] + s.residue()) % f_.characteristic();
}

void Matrix::add(std::size_t i, std::size_t j, long s)
{
    if (f_.is_rational()) {
        rat_[i * c_ + j] += s;
        return;
    }
    long p = f_.characteristic();
    long v = (static_cast<long>(modp_[i * c_ + j]) + s % p + p) % p;
    modp_[i * c_ + j] = static_cast<std::uint64_t>(v);
}

Vector Matrix::row(std::size_t i) const
{
    Vector v;
    v.reserve(c_);
    for (std::size_t j = 0; j < c_; ++j)
        v.push_back(at(i, j));
    return v;
}

Vector Matrix::column(std::size_t j) const
{
    Vector v;
    v.reserve(r_);
    for (std::size_t i = 0; i < r_; ++i)
        v.push_back(at(i, j));
    return v;
}

bool Matrix::is_zero() const
{
    if (f_.is_rational()) {
        for (auto& q : rat_)
            if (sgn(q) != 0)
                return false;
        return true;
    }
    for (auto v : modp_)
        if (v)
            return false;
    return true;
}

Matrix Matrix::transpose() const
{
    Matrix t(f_, c_, r_);
    for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t j = 0; j < c_; ++j) {
            if (f_.is_rational())
                t.rat_[j * r_ + i] = rat_[i * c_ + j];
            else
                t.modp_[j * r_ + i] = modp_[i * c_ + j];
        }
    return t;
}

Matrix Matrix::operator*(const Matrix& o) const
{
    if (c_ != o.r_)
        throw Error("matrix shape mismatch in product");
    if (f_ != o.f_)
        throw FieldError("matrix product over different fields");
    Matrix m(f_, r_, o.c_);
    const std::uint64_t p = f_.characteristic();
    for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t k = 0; k < c_; ++k) {
            if (f_.is_rational()) {
                const mpq_class& a = rat_[i * c_ + k];
                if (sgn(a) == 0)
                    continue;
                for (std::size_t j = 0; j < o.c_; ++j)
                    if (sgn(o.rat_[k * o.c_ + j]) != 0)
                        m.rat_[i * o.c_ + j] += a * o.rat_[k * o.c_ + j];
            } else {
                std::uint64_t a = modp_[i * c_ + k];
                if (!a)
                    continue;
                for (std::size_t j = 0; j < o.c_; ++j)
                    m.modp_[i * o.c_ + j] = (m.modp_[i * o.c_ + j] + a * o.modp_[k * o.c_ + j]) % p;
            }
        }
    return m;
}

Vector Matrix::apply(const Vector& v) const
{
    if (v.size() != c_)
        throw Error("vector length mismatch");
    Matrix col = from_rows(f_, 1, [&] {
        std::vector<Vector> rows;
        for (auto& s : v)
            rows.push_back({s});
        return rows;
    }());
    return (*this * col).column(0);
}

bool Matrix::operator==(const Matrix& o) const
{
    return f_ == o.f_ && r_ == o.r_ && c_ == o.c_ && modp_ == o.modp_ && rat_ == o.rat_;
}

std::size_t rank(const Matrix& m)
{
    if (m.rows() == 0 || m.cols() == 0)
        return 0;
    if (m.field().is_rational())
        return bareiss_rank(m.rationals(), m.rows(), m.cols());
    auto a = m.residues();
    return rref(a, m.rows(), m.cols(), ModP{m.field().characteristic()}).size();
}

Echelon row_echelon(const Matrix& rows)
{
    Matrix a = rows;
    std::vector<std::size_t> piv;
    if (a.field().is_rational())
        piv = rref(a.rationals(), a.rows(), a.cols(), Rat{});
    else
        piv = rref(a.residues(), a.rows(), a.cols(), ModP{a.field().characteristic()});
    Echelon e{Matrix(a.field(), piv.size(), a.cols()), piv};
    for (std::size_t i = 0; i < piv.size(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (a.field().is_rational())
                e.rows.rationals()[i * a.cols() + j] = a.rationals()[i * a.cols() + j];
            else
                e.rows.residues()[i * a.cols() + j] = a.residues()[i * a.cols() + j];
        }
    return e;
}

void Echelon::reduce(Vector& v) const
{
    if (v.size() != rows.cols())
        throw Error("vector length mismatch in reduction");
    for (std::size_t i = 0; i < pivots.size(); ++i) {
        Scalar f = v[pivots[i]];
        if (f.is_zero())
            continue;
        for (std::size_t j = 0; j < v.size(); ++j) {
            Scalar e = rows.at(i, j);
            if (!e.is_zero())
                v[j] -= f * e;
        }
    }
}

bool Echelon::contains(const Vector& v) const
{
    Vector w = v;
    reduce(w);
    return emss::is_zero(w);
}

Matrix kernel(const Matrix& m)
{
    Echelon e = row_echelon(m);
    const std::size_t n = m.cols();
    std::vector<bool> is_pivot(n, false);
    for (auto p : e.pivots)
        is_pivot[p] = true;
    std::vector<std::size_t> free;
    for (std::size_t j = 0; j < n; ++j)
        if (!is_pivot[j])
            free.push_back(j);
    Matrix k(m.field(), free.size(), n);
    for (std::size_t f = 0; f < free.size(); ++f) {
        k.set(f, free[f], Scalar::one(m.field()));
        for (std::size_t i = 0; i < e.pivots.size(); ++i) {
            Scalar a = e.rows.at(i, free[f]);
            if (!a.is_zero())
                k.set(f, e.pivots[i], -a);
        }
    }
    // free-variable basis is already reduced; normalize to RREF for determinism
    return row_echelon(k).rows;
}

std::optional<Vector> solve(const Matrix& m, const Vector& b)
{
    if (b.size() != m.rows())
        throw Error("right-hand side length mismatch");
    Matrix aug(m.field(), m.rows(), m.cols() + 1);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j)
            aug.set(i, j, m.at(i, j));
        aug.set(i, m.cols(), b[i]);
    }
    Echelon e = row_echelon(aug);
    Vector x = zero_vector(m.field(), m.cols());
    for (std::size_t i = 0; i < e.pivots.size(); ++i) {
        if (e.pivots[i] == m.cols())
            return std::nullopt;
        x[e.pivots[i]] = e.rows.at(i, m.cols());
    }
    return x;
}

Vector zero_vector(const Field& f, std::size_t n) { return Vector(n, Scalar::zero(f)); }

bool is_zero(const Vector& v)
{
    for (auto& s : v)
        if (!s.is_zero())
            return false;
    return true;
}

}  // namespace emss
