#include "emss/scalars.hpp"

#include <algorithm>
#include <ostream>

namespace emss {

bool is_prime(std::uint64_t n)
{
    if (n < 2)
        return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

Field::Field(std::uint32_t characteristic) : p_(characteristic)
{
    if (p_ != 0 && !is_prime(p_))
        throw FieldError("characteristic must be 0 or prime, got " + std::to_string(p_));
}

namespace {

std::uint64_t reduce_mod(long v, std::uint32_t p)
{
    long r = v % static_cast<long>(p);
    return static_cast<std::uint64_t>(r < 0 ? r + p : r);
}

std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t p)
{
    std::uint64_t r = 1;
    b %= p;
    while (e) {
        if (e & 1)
            r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return r;
}

}  // namespace

Scalar::Scalar(const Field& field, long value) : p_(field.characteristic())
{
    if (p_ == 0)
        v_ = mpq_class(value);
    else
        v_ = reduce_mod(value, p_);
}

Scalar::Scalar(const Field& field, const mpq_class& value) : p_(field.characteristic())
{
    if (p_ == 0) {
        mpq_class q = value;
        q.canonicalize();
        v_ = q;
        return;
    }
    mpz_class num = value.get_num() % p_;
    mpz_class den = value.get_den() % p_;
    if (num < 0)
        num += p_;
    if (den == 0)
        throw FieldError("denominator vanishes modulo " + std::to_string(p_));
    std::uint64_t n = num.get_ui(), d = den.get_ui();
    v_ = n * pow_mod(d, p_ - 2, p_) % p_;
}

Scalar Scalar::parse(const Field& f, const std::string& text)
{
    mpq_class q;
    if (q.set_str(text, 10) != 0)
        throw FieldError("malformed scalar '" + text + "'");
    if (q.get_den() == 0)
        throw FieldError("zero denominator in '" + text + "'");
    q.canonicalize();
    return Scalar(f, q);
}

void Scalar::check_same(const Scalar& o) const
{
    if (p_ != o.p_)
        throw FieldError("mixed fields: characteristic " + std::to_string(p_) + " vs " +
                         std::to_string(o.p_));
}

bool Scalar::is_zero() const
{
    return p_ == 0 ? sgn(rational()) == 0 : residue() == 0;
}

bool Scalar::is_one() const
{
    return p_ == 0 ? rational() == 1 : residue() == 1;
}

Scalar Scalar::operator+(const Scalar& o) const
{
    check_same(o);
    Scalar r;
    r.p_ = p_;
    if (p_ == 0)
        r.v_ = mpq_class(rational() + o.rational());
    else
        r.v_ = (residue() + o.residue()) % p_;
    return r;
}

Scalar Scalar::operator-() const
{
    Scalar r;
    r.p_ = p_;
    if (p_ == 0)
        r.v_ = mpq_class(-rational());
    else
        r.v_ = (p_ - residue()) % p_;
    return r;
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator*(const Scalar& o) const
{
    check_same(o);
    Scalar r;
    r.p_ = p_;
    if (p_ == 0)
        r.v_ = mpq_class(rational() * o.rational());
    else
        r.v_ = residue() * o.residue() % p_;
    return r;
}

Scalar Scalar::inverse() const
{
    if (is_zero())
        throw FieldError("division by zero");
    Scalar r;
    r.p_ = p_;
    if (p_ == 0)
        r.v_ = mpq_class(1 / rational());
    else
        r.v_ = pow_mod(residue(), p_ - 2, p_);
    return r;
}

Scalar Scalar::operator/(const Scalar& o) const
{
    check_same(o);
    return *this * o.inverse();
}

bool Scalar::operator==(const Scalar& o) const
{
    if (p_ != o.p_)
        return false;
    return p_ == 0 ? rational() == o.rational() : residue() == o.residue();
}

std::string Scalar::str() const
{
    if (p_ == 0)
        return rational().get_str();
    return std::to_string(residue());
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

DimensionSeries::DimensionSeries(std::initializer_list<std::pair<const int, long>> init)
{
    for (auto& [d, n] : init)
        add(d, n);
}

long DimensionSeries::at(int degree) const
{
    auto it = dims_.find(degree);
    return it == dims_.end() ? 0 : it->second;
}

void DimensionSeries::add(int degree, long dim)
{
    if (dim < 0)
        throw Error("negative dimension");
    if (dim == 0)
        return;
    dims_[degree] += dim;
}

DimensionSeries DimensionSeries::truncated(int known_up_to)
{
    DimensionSeries r;
    r.known_up_to_ = known_up_to;
    return r;
}

DimensionSeries DimensionSeries::restricted(int lo, int hi) const
{
    if (known_up_to_ && hi > *known_up_to_)
        throw Error("series is only known up to degree " + std::to_string(*known_up_to_));
    DimensionSeries r;
    for (auto it = dims_.lower_bound(lo); it != dims_.end() && it->first <= hi; ++it)
        r.add(it->first, it->second);
    return r;
}

DimensionSeries DimensionSeries::operator+(const DimensionSeries& o) const
{
    DimensionSeries r = *this;
    if (o.known_up_to_)
        r.known_up_to_ = known_up_to_ ? std::min(*known_up_to_, *o.known_up_to_) : *o.known_up_to_;
    for (auto& [d, n] : o.dims_)
        r.add(d, n);
    return r;
}

DimensionSeries series_product(const DimensionSeries& a, const DimensionSeries& b, int lo, int hi)
{
    DimensionSeries r;
    if (a.empty() && a.is_complete())
        return r;
    if (b.empty() && b.is_complete())
        return r;
    // an unknown tail of one factor shifts by the lowest degree of the other
    std::optional<int> known;
    auto clip = [&](const DimensionSeries& s, const DimensionSeries& other) {
        if (!s.known_up_to())
            return;
        if (other.empty())
            throw Error("cannot bound product with an empty truncated factor");
        int k = *s.known_up_to() + other.entries().begin()->first;
        known = known ? std::min(*known, k) : k;
    };
    clip(a, b);
    clip(b, a);
    if (known && hi > *known)
        throw Error("unbounded support inside window: product only known up to degree " +
                    std::to_string(*known));
    for (auto& [da, na] : a.entries())
        for (auto& [db, nb] : b.entries()) {
            int d = da + db;
            if (d >= lo && d <= hi)
                r.add(d, na * nb);
        }
    return r;
}

}  // namespace emss
