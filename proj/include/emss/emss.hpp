#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "emss/hochschild.hpp"

namespace emss {

class WindowTooNarrow : public Error {
public:
    using Error::Error;
};

class UnsupportedAlgebra : public Error {
public:
    using Error::Error;
};

/// E2 = HH(H*(M); H*(N)) with the dimension shift d = dim N. A class at
/// (p, q) has homological degree -(p + q).
struct E2Page {
    HHPresentation hh;
    int shift = 0;
    std::string m_label = "M";
    std::string n_label = "N";
    bool relative = false;

    const Algebra& presentation() const { return hh.presentation; }
    BigradedSeries series(const Window& w) const { return hh.presentation.bigraded_series(w); }
};

struct CollapseCertificate {
    enum Kind { sparsity_forced, cited_theorem };
    Kind kind = sparsity_forced;
    std::string detail;
    std::vector<std::string> citations;
    std::string page_fingerprint;
};

std::string to_string(CollapseCertificate::Kind k);

/// Result of the sparsity check: a certificate, or a refusal with a witness
/// pair of nonzero cells a differential could connect.
struct SparsityOutcome {
    std::optional<CollapseCertificate> certificate;
    std::string reason;
    std::optional<std::pair<Bidegree, Bidegree>> witness;
    std::optional<std::pair<std::string, std::string>> witness_monomials;

    bool certified() const { return certificate.has_value(); }
};

struct EInfinityPage {
    E2Page page;
    CollapseCertificate collapse;
};

struct E2Options {
    int p_max = 4;
    int q_lo = -40;
    int q_hi = 40;
};

/* Stable text identifying a page: generators, bidegrees, relations, shift. */
std::string page_fingerprint(const E2Page& page);

/* E2 for M with coefficients H*(N) given as a module over H*(M). */
E2Page build_e2(const ModuleSpec& n_over_m, int dim_n, const E2Options& opt = {});

/* Decides whether every d_r: (p,q) -> (p+r, q-r+1), r >= 2, has zero source
   or zero target. Exact for presentations with at most one unbounded
   generator; otherwise scans `w` and throws WindowTooNarrow if it cannot
   find a witness. */
SparsityOutcome collapse_by_sparsity(const E2Page& page, const Window& w);

CollapseCertificate assume_collapse(const E2Page& page, const std::string& citation);

EInfinityPage einfinity(const E2Page& page, const CollapseCertificate& cert);

}  // namespace emss
