#pragma once

#include <cstddef>
#include <string>

#include <json.hpp>

#include "emss/extension.hpp"

namespace emss::io {

using nlohmann::json;

inline constexpr const char* schema_version = "emss-loop/1";

/// Malformed input; `pointer` names the offending field ("/generators/0/degree").
class InputError : public Error {
public:
    InputError(const std::string& pointer, const std::string& what)
        : Error(pointer + ": " + what), pointer_(pointer)
    {
    }
    const std::string& pointer() const { return pointer_; }

private:
    std::string pointer_;
};

struct SpaceSpec {
    std::string name;
    Algebra cohomology;
    int dim = 0;
};

std::string field_name(const Field& f);

/* "x^2 - 1/2*x*t + 3" against the algebra's generator names. */
Element parse_element(const Algebra& a, const std::string& text);

json load_json(const std::string& path);

/* {"generators":[{"name","degree","column"?,"bound"?}], "relations":[{"lead","tail"?}], "kind"?} */
Algebra algebra_from_json(const json& j, const Field& f, const std::string& at = "");
json algebra_to_json(const Algebra& a);

/* {"name", "cohomology": algebra, "dim"} */
SpaceSpec space_from_json(const json& j, const Field& f, const std::string& at = "");
json space_to_json(const SpaceSpec& s);

/* {"x": "x", "y": "0"}: images of the source generators; missing names map to
   the same-named target generator or zero. */
AlgebraMorphism morphism_from_json(const json& j, const Algebra& source, const Algebra& target,
                                   const std::string& at = "");

json series_to_json(const BigradedSeries& s);
json certificate_to_json(const HHCertificate& c);
json hh_to_json(const HHPresentation& h);
json collapse_to_json(const CollapseCertificate& c);
json sparsity_to_json(const SparsityOutcome& s);
json report_to_json(const LiftObstructionReport& r, const Algebra& page);
json loop_to_json(const LoopHomology& l);

/* Wraps a command payload with the schema and field fields. */
json envelope(const std::string& command, const Field& f, json payload);

/* "Q[x,u,t]/(x^3, u^2, x^2*t, x^2*u)" followed by the generator degrees
   (bidegrees when the algebra has columns). */
std::string presentation_text(const Algebra& a);

/* Dot chart: p to the right, q downward, one dot per basis monomial. */
std::string render_chart(const Algebra& page, const Window& w, bool labels, std::size_t budget = 10000);

}  // namespace emss::io
