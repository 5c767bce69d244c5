#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "emss/emss.hpp"

namespace emss {

class NonFiniteEnumeration : public Error {
public:
    using Error::Error;
};

/// A relation of the E-infinity ring whose lift to loop homology is in
/// question: lead = tail holds in the associated graded.
struct RelationCandidate {
    std::string name;
    Monomial lead;
    Element tail;
    int filtration = 0;    // column of the lead
    int total_degree = 0;  // cohomological p + q
};

struct LiftObstructionReport {
    enum Verdict { holds, undecided };

    RelationCandidate relation;
    std::vector<Monomial> candidates;
    std::vector<std::string> candidate_names;
    Verdict verdict = holds;
    std::vector<std::string> trace;
};

std::string to_string(LiftObstructionReport::Verdict v);

/* Relations of the E-infinity presentation: exponent bounds, listed
   relations and, when `commutators` is set, every generator commutator. */
std::vector<RelationCandidate> relation_candidates(const Algebra& page, bool commutators);
RelationCandidate make_candidate(const Algebra& page, const std::string& name, const Monomial& lead,
                                 const Element& tail);

/* Every nonzero E-infinity monomial of the relation's total degree in a
   strictly higher column; with dim_n, columns above dim_n - total are cut. */
LiftObstructionReport enumerate_lift_candidates(const EInfinityPage& einf, const RelationCandidate& rel,
                                                std::optional<int> dim_n = std::nullopt);

struct ZeroColumnLift {
    Algebra column_algebra;
    std::vector<Relation> imported;  // expressed in the E-infinity generators
    std::vector<std::string> imported_text;
};

/* Imports the intersection ring's relations onto the column-0 generators
   (matched by name) after checking the column-0 series agree. */
ZeroColumnLift zero_column_lift(const EInfinityPage& einf, const Algebra& intersection_ring, int q_lo = -64,
                                int q_hi = 64);

struct LoopHomology {
    bool complete = false;
    Algebra presentation;  // generators in homological degree, column 0
    std::vector<std::string> unresolved;
    std::vector<std::string> imported;
    std::vector<std::string> citations;
    std::string collapse_detail;
};

LoopHomology assemble_loop_homology(const EInfinityPage& einf, const std::vector<LiftObstructionReport>& reports,
                                    const std::optional<ZeroColumnLift>& lift);

/// Lift along a surjective ring map f: S -> T of exact rings: a relation of T
/// whose pullback through chosen preimages vanishes in S holds exactly in T.
struct EpimorphismTransfer {
    bool surjective = false;
    std::map<std::string, Element> preimages;  // target generator -> source element
    std::vector<LiftObstructionReport> reports;
    std::vector<std::string> checks;
};

/* Checks surjectivity cell by cell on `w` (which must contain every target
   generator) and transfers each target relation. */
EpimorphismTransfer epimorphism_transfer(const InducedMap& f, const Window& w);

}  // namespace emss
