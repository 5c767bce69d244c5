#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "emss/scalars.hpp"

namespace emss {

class InfiniteBasis : public Error {
public:
    using Error::Error;
};

class MorphismError : public Error {
public:
    using Error::Error;
};

/// A generator of a graded-commutative algebra. `column` is the filtration
/// degree and is zero for ordinary (singly graded) algebras; the Koszul sign
/// of a generator is the parity of column + degree.
struct Generator {
    std::string name;
    int degree = 0;
    int column = 0;
    std::optional<int> bound;  // largest nonzero exponent; absent = polynomial

    Bidegree bidegree() const { return {column, degree}; }
    int parity() const { return ((column + degree) % 2 + 2) % 2; }
};

/* Exponent vector, one entry per generator, in generator order. */
using Monomial = std::vector<int>;

/// Sparse linear combination of monomials.
struct Element {
    Field field;
    std::map<Monomial, Scalar> terms;

    Element() = default;
    explicit Element(const Field& f) : field(f) {}
    static Element monomial(const Field& f, const Monomial& m, const Scalar& c);

    bool is_zero() const { return terms.empty(); }
    void add(const Monomial& m, const Scalar& c);
    Element operator+(const Element& o) const;
    Element operator-(const Element& o) const;
    Element scaled(const Scalar& c) const;
    Scalar coefficient(const Monomial& m) const;
    friend bool operator==(const Element& a, const Element& b) { return a.terms == b.terms; }
};

/* lead = tail, used as the rewrite rule lead -> tail. */
struct Relation {
    Monomial lead;
    Element tail;
};

enum class AlgebraKind { polynomial, truncated_polynomial, exterior, tensor, general };

std::string to_string(AlgebraKind k);
AlgebraKind kind_from_string(const std::string& s);

/* Inclusive box of bidegrees; an absent bound is unbounded. */
struct Window {
    std::optional<int> p_lo, p_hi, q_lo, q_hi;
    std::optional<int> cototal;  // fixes p + q when present

    bool contains(const Bidegree& b) const;
};

class Algebra {
public:
    Algebra() = default;
    Algebra(Field field, std::vector<Generator> generators, std::vector<Relation> relations = {},
            AlgebraKind kind = AlgebraKind::general);

    /* The ground field as an algebra with no generators. */
    static Algebra ground(const Field& f);

    const Field& field() const { return field_; }
    const std::vector<Generator>& generators() const { return gens_; }
    const std::vector<Relation>& relations() const { return rels_; }
    AlgebraKind kind() const { return kind_; }
    std::size_t size() const { return gens_.size(); }
    std::optional<std::size_t> index_of(const std::string& name) const;
    std::size_t require_index(const std::string& name) const;

    bool is_finite_dimensional() const;
    bool has_columns() const;

    Bidegree bidegree(const Monomial& m) const;
    int parity(const Monomial& m) const;
    /* Within exponent bounds and not divisible by any relation lead. */
    bool is_normal(const Monomial& m) const;

    /* Normal monomials of bidegree b, ascending lexicographic order. */
    std::vector<Monomial> basis(const Bidegree& b) const;
    /* Normal monomials of internal degree d (column-free algebras). */
    std::vector<Monomial> basis_in_degree(int degree) const;
    /* Every normal monomial inside the window. Throws InfiniteBasis when the
       window does not pin down finitely many monomials. */
    std::vector<Monomial> monomials_in(const Window& w) const;
    /* Normal monomials of any degree; finite-dimensional algebras only. */
    std::vector<Monomial> full_basis() const;

    DimensionSeries hilbert_series(int lo, int hi) const;
    BigradedSeries bigraded_series(const Window& w) const;

    Monomial unit_monomial() const { return Monomial(gens_.size(), 0); }
    Monomial generator_monomial(std::size_t i, int e = 1) const;
    Element one() const;
    Element zero() const { return Element(field_); }
    Element generator(std::size_t i) const;
    Element generator(const std::string& name) const { return generator(require_index(name)); }
    Element from_monomial(const Monomial& m, const Scalar& c) const;

    /* Product of monomials in canonical order, Koszul sign included, reduced. */
    Element multiply(const Monomial& a, const Monomial& b) const;
    Element multiply(const Element& a, const Element& b) const;
    Element power(const Element& a, int k) const;
    Element reduce(const Element& e) const;
    /* Graded commutator ab - (-1)^{|a||b|} ba for monomials. */
    Element commutator(const Monomial& a, const Monomial& b) const;

    std::string format(const Monomial& m) const;
    std::string format(const Element& e) const;
    /* Parses "x^2*t" style monomials against this algebra's generator names. */
    Monomial parse_monomial(const std::string& text) const;

private:
    /* Sign of a*b relative to the canonical monomial a+b. */
    int koszul_sign(const Monomial& a, const Monomial& b) const;
    std::vector<int> exponent_caps(const Window& w) const;

    Field field_;
    std::vector<Generator> gens_;
    std::vector<Relation> rels_;
    AlgebraKind kind_ = AlgebraKind::general;
};

/* Concatenated generators, inherited relations. Names must not collide. */
Algebra tensor(const Algebra& a, const Algebra& b);

/* -sum(deg x_i - 1) for a polynomial algebra on even generators. */
int gorenstein_dimension(const Algebra& a);

/// A degree-preserving algebra map given on generators.
class AlgebraMorphism {
public:
    AlgebraMorphism() = default;
    /* Validates degrees and that every source relation maps to zero. */
    AlgebraMorphism(Algebra source, Algebra target, std::vector<Element> images);
    static AlgebraMorphism identity(const Algebra& a);
    /* Generators sent to same-named target generators, others to zero. */
    static AlgebraMorphism by_name(const Algebra& source, const Algebra& target);

    const Algebra& source() const { return source_; }
    const Algebra& target() const { return target_; }
    const std::vector<Element>& images() const { return images_; }

    Element apply(const Monomial& m) const;
    Element apply(const Element& e) const;

private:
    Algebra source_;
    Algebra target_;
    std::vector<Element> images_;
};

/// `coefficients` viewed as a module over `ring` through a ring map.
/// Both actions are multiplication in the graded-commutative coefficients.
struct ModuleSpec {
    AlgebraMorphism action;

    const Algebra& ring() const { return action.source(); }
    const Algebra& coefficients() const { return action.target(); }

    static ModuleSpec regular(const Algebra& a) { return {AlgebraMorphism::identity(a)}; }
    /* The ground field with every positive-degree generator acting by zero. */
    static ModuleSpec trivial(const Algebra& ring);

    Element left(const Monomial& ring_monomial, const Monomial& coeff_monomial) const;
    Element right(const Monomial& coeff_monomial, const Monomial& ring_monomial) const;
};

}  // namespace emss
