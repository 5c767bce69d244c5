#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>

#include <gmpxx.h>

namespace emss {

/* Base class for every error raised by the engine. */
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class FieldError : public Error {
public:
    using Error::Error;
};

/// Coefficient field: characteristic 0 (the rationals) or a prime p.
class Field {
public:
    Field() = default;
    explicit Field(std::uint32_t characteristic);

    std::uint32_t characteristic() const { return p_; }
    bool is_rational() const { return p_ == 0; }

    friend bool operator==(const Field&, const Field&) = default;

private:
    std::uint32_t p_ = 0;
};

bool is_prime(std::uint64_t n);

/// An exact field element. Rationals are kept reduced; residues live in [0, p).
class Scalar {
public:
    Scalar() = default;  // zero of Q
    Scalar(const Field& field, long value);
    Scalar(const Field& field, const mpq_class& value);

    static Scalar zero(const Field& f) { return Scalar(f, 0L); }
    static Scalar one(const Field& f) { return Scalar(f, 1L); }
    /* Parses "a", "-a" or "a/b". */
    static Scalar parse(const Field& f, const std::string& text);

    Field field() const { return Field(p_); }
    bool is_zero() const;
    bool is_one() const;

    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator/(const Scalar& o) const;
    Scalar operator-() const;
    Scalar inverse() const;
    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

    bool operator==(const Scalar& o) const;
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    /* Exact text: integer, or "a/b" for non-integral rationals. */
    std::string str() const;

    std::uint64_t residue() const { return std::get<std::uint64_t>(v_); }
    const mpq_class& rational() const { return std::get<mpq_class>(v_); }

private:
    void check_same(const Scalar& o) const;

    std::uint32_t p_ = 0;
    std::variant<std::uint64_t, mpq_class> v_ = mpq_class(0);
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

/// Internal degree -> dimension, sparse.
class DimensionSeries {
public:
    DimensionSeries() = default;
    DimensionSeries(std::initializer_list<std::pair<const int, long>> init);

    long at(int degree) const;
    void add(int degree, long dim);

    /* A truncated series is exact only in degrees <= known_up_to(); complete
       series (the default) are exact everywhere. */
    static DimensionSeries truncated(int known_up_to);
    std::optional<int> known_up_to() const { return known_up_to_; }
    bool is_complete() const { return !known_up_to_; }

    const std::map<int, long>& entries() const { return dims_; }
    bool empty() const { return dims_.empty(); }
    DimensionSeries restricted(int lo, int hi) const;

    DimensionSeries operator+(const DimensionSeries& o) const;
    friend bool operator==(const DimensionSeries&, const DimensionSeries&) = default;

private:
    std::map<int, long> dims_;  // only positive entries are stored
    std::optional<int> known_up_to_;
};

/* Cauchy product restricted to degrees in [lo, hi]. Throws when the window
   reaches past the degrees a truncated factor pins down. */
DimensionSeries series_product(const DimensionSeries& a, const DimensionSeries& b, int lo, int hi);

/// (p, q): filtration column and internal degree.
struct Bidegree {
    int p = 0;
    int q = 0;

    /* Cohomological total degree p + q. */
    int cototal() const { return p + q; }
    /* Homological total degree -(p + q) used for loop homology. */
    int total() const { return -(p + q); }

    Bidegree operator+(const Bidegree& o) const { return {p + o.p, q + o.q}; }
    Bidegree operator-(const Bidegree& o) const { return {p - o.p, q - o.q}; }
    Bidegree operator*(int k) const { return {p * k, q * k}; }
    auto operator<=>(const Bidegree&) const = default;
};

using BigradedSeries = std::map<Bidegree, long>;

}  // namespace emss
