#pragma once

#include <nlohmann/json.hpp>
#include <stdexcept>
#include <string>

#include "serialhom/algebra.hpp"
#include "serialhom/complex.hpp"
#include "serialhom/extnat.hpp"
#include "serialhom/hom_ext.hpp"

namespace serialhom {

using json = nlohmann::ordered_json;

/// Raised on malformed input documents; carries the offending field.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string field, const std::string& message)
        : std::runtime_error("field '" + field + "': " + message), field_(std::move(field)) {}
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

// Algebra documents: {"kind":"cyclic","n":4,"delta":[1,3]} or
// {"kind":"kupisch","successor":[2,2],"loewy":[2,2]}. Parsing is strict:
// unknown fields are rejected.
json algebra_to_json(const SerialAlgebra& a);
SerialAlgebra algebra_from_json(const json& j);

json module_sum_to_json(const ModuleSum& m);
ModuleSum module_sum_from_json(const json& j, const SerialAlgebra& a);

/// Certificate documents: embedded algebra and target module, the claimed
/// score, the degree range, per-degree vertex lists and the differential
/// entries with exact rational coefficients rendered as strings.
struct CertificateFile {
    SerialAlgebra algebra;
    ModuleSum module;
    long long claimed_score = 0;
    ProjComplex complex;
};

json certificate_to_json(const CertificateFile& c);
CertificateFile certificate_from_json(const json& j);

json ext_table_to_json(const ExtTable& t);

json extnat_to_json(const ExtNat& v);  // number, or the string "inf"

std::string rational_to_string(const Rational& q);
Rational rational_from_string(const std::string& s);

}  // namespace serialhom
