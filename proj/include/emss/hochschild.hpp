#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "emss/algebra.hpp"
#include "emss/complex.hpp"
#include "emss/resolutions.hpp"

namespace emss {

class CertificationError : public Error {
public:
    using Error::Error;
};

/// What a presentation generator stands for in Hochschild cohomology.
struct GeneratorRole {
    enum Kind { coefficient, derivation, periodic };
    Kind kind = coefficient;
    std::string dual_of;  // ring generator a derivation is dual to

    friend bool operator==(const GeneratorRole&, const GeneratorRole&) = default;
};

std::string to_string(GeneratorRole::Kind k);

struct HHCertificate {
    std::string method;
    std::optional<int> p_max;
    std::optional<int> q_lo, q_hi;
    BigradedSeries series;            // dims verified on the window
    std::vector<std::string> checks;  // product and relation checks, in order
    std::vector<std::string> notes;
};

/// A ring presentation of HH whose generators carry bidegrees (column, degree).
struct HHPresentation {
    Algebra presentation;
    std::vector<GeneratorRole> roles;
    std::string label;
    HHCertificate certificate;
    std::optional<ModuleSpec> module;  // the (ring, coefficients) pair it computes
};

/// Bar complex plus its cohomology; cup products land in class coordinates.
class BarModel {
public:
    BarModel(const ModuleSpec& coefficients, int p_max);

    const BarComplex& bar() const { return bar_; }
    const CohomologyResult& cohomology() const { return h_; }
    int p_max() const { return bar_.p_max(); }

    Vector unit_cochain() const;
    Vector coefficient_cochain(const Monomial& c) const;
    /* 1-cochain of the derivation with the given values on ring generators,
       extended by the graded Leibniz rule; q is its internal degree. */
    Vector derivation_cochain(const std::vector<Element>& values, int q) const;
    /* Class coordinates, empty when the cell is zero. */
    Vector coordinates(int p, int q, const Vector& cocycle) const;

private:
    BarComplex bar_;
    CohomologyResult h_;
};

/* Value of a derivation (given on generators) on a monomial of the ring. */
Element derivation_value(const ModuleSpec& mod, const std::vector<Element>& values, int degree,
                         const Monomial& m);

struct CupResult {
    Bidegree bidegree;
    Vector cocycle;
    Vector coordinates;
};

/* Bar-model cup product of cocycles at (p1, q1) and (p2, q2). */
CupResult cup_product(const BarModel& model, const Bidegree& a, const Vector& f, const Bidegree& b, const Vector& g);

/* Certifies `presentation` against bar cohomology: bigraded series on
   p <= p_max, basis monomials map to a basis of every cell, relations and
   exponent bounds hold on the cocycles. */
HHCertificate certify_on_bar(const Algebra& presentation, const std::vector<Vector>& generator_cochains,
                             const BarModel& model);

/* K[x]/(x^{n+1}), |x| = 2m: closed form chosen by the characteristic, certified
   against the periodic complex (series) and the bar model (products). */
HHPresentation hh_ring(const Algebra& a, int p_max = 4);

/* K[x_1..x_k] (x) Exterior(u_1..u_k), u_i at (1, -deg x_i), certified by
   series against the Koszul complex on q in [q_lo, q_hi]. */
HHPresentation hh_polynomial(const Algebra& a, int q_lo, int q_hi);

/* HH(K[x]; C) = C (x) Exterior(y), y at (1, -deg x). */
HHPresentation hh_module_coefficients(const ModuleSpec& coefficients, int q_lo, int q_hi);

/* Exterior ring (odd generators, or bound 1 in characteristic 2) with
   coefficients C: C (x) K[nu_g], nu_g at (1, -deg g). `names` renames nu_g. */
HHPresentation hh_exterior(const ModuleSpec& coefficients, int p_max = 4,
                           const std::map<std::string, std::string>& names = {});

HHPresentation hh_kunneth(const HHPresentation& a, const HHPresentation& b);

/// Generator-level map between HH presentations.
struct InducedMap {
    Algebra source;
    Algebra target;
    std::map<std::string, Element> images;
};

enum class InducedDirection { coefficients, ring };

/* coefficients: psi: C1 -> C2 gives HH(A; C1) -> HH(A; C2).
   ring: phi: A' -> A gives HH(A; C) -> HH(A'; C) by restriction. */
InducedMap hh_induced_map(InducedDirection dir, const AlgebraMorphism& morphism, const HHPresentation& source,
                          const HHPresentation& target);

/* Convolution of bigraded series. */
BigradedSeries bigraded_product(const BigradedSeries& a, const BigradedSeries& b);

}  // namespace emss
