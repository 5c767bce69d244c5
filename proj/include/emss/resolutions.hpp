#pragma once

#include <functional>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "emss/algebra.hpp"
#include "emss/complex.hpp"

namespace emss {

/* Internal degree of the stage-s generator of the 2-periodic resolution of
   K[x]/(x^{n+1}), |x| = 2m. */
int periodic_generator_degree(int m, int n, int s);

/// Hom over A^e from the 2-periodic bimodule resolution of A = K[x]/(x^{n+1})
/// into the coefficients. A cochain at stage s with value c sits in cell
/// (s, deg c - g_s). Stage s_max + 1 is built too so that cohomology is
/// exact through s_max.
FreeComplex periodic_hochschild_complex(int m, int n, const ModuleSpec& coefficients, int s_max);

/// Koszul complex computing Tor over a polynomial ring: basis a (x) s_I (x) b
/// with s = |I|, internal degree deg a + sum deg x_i + deg b, restricted to
/// internal degrees in [q_lo, q_hi]. Chain direction.
FreeComplex koszul_tor_complex(const ModuleSpec& left, const ModuleSpec& right, int q_lo, int q_hi);

/// Hochschild cochains of a polynomial ring from its Koszul bimodule
/// resolution: cochains (I, c) in cell (|I|, deg c - sum_{i in I} deg x_i).
/// Only q in [q_lo, q_hi] is built.
FreeComplex koszul_hochschild_complex(const ModuleSpec& coefficients, int q_lo, int q_hi);

/// Normalized bar cochain complex Hom(Abar^{(x)s}, C) for s <= p_max + 1,
/// so that cohomology is exact through p_max. Houses the cup product.
class BarComplex {
public:
    struct Entry {
        std::vector<int> tuple;  // indices into reduced_basis()
        Monomial value;          // basis monomial of the coefficients
        auto operator<=>(const Entry&) const = default;
    };

    BarComplex(const ModuleSpec& coefficients, int p_max);

    const FreeComplex& complex() const { return cx_; }
    const ModuleSpec& module() const { return mod_; }
    const Algebra& algebra() const { return mod_.ring(); }
    const Algebra& coefficients() const { return mod_.coefficients(); }
    int p_max() const { return p_max_; }
    const std::vector<Monomial>& reduced_basis() const { return abar_; }
    int tuple_degree(const std::vector<int>& tuple) const;

    const std::vector<Entry>& basis(int s, int q) const;
    std::optional<std::size_t> index(int s, int q, const Entry& e) const;

    /* Cochain whose value on each tuple is values(tuple). */
    Vector cochain(int s, int q, const std::function<Element(const std::vector<int>&)>& values) const;
    /* Total-degree-commutative cup product (f at (p1,q1), g at (p2,q2)). */
    Vector cup(int p1, int q1, const Vector& f, int p2, int q2, const Vector& g) const;

private:
    ModuleSpec mod_;
    int p_max_;
    std::vector<Monomial> abar_;
    std::vector<int> abar_deg_;
    std::vector<Monomial> cbasis_;
    std::map<Monomial, std::size_t> cindex_;
    std::map<Cell, std::vector<Entry>> basis_;
    std::map<Cell, std::map<Entry, std::size_t>> index_;
    FreeComplex cx_;
};

}  // namespace emss
