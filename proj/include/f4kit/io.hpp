#pragma once

// JSON encoding of fields, forms, algebras and reports.
//
// Scalars are string literals in the syntax of Field::parse ("-3/4",
// "1/2+3*r" for 1/2 + 3 sqrt d); integers are also accepted on input.
// Parsing is strict: unknown keys, missing keys and wrong types raise
// InvalidInput with the offending path in the message. Objects serialise
// with sorted keys, so equal values give byte-identical text.

#include <string>

#include "json.hpp"
#include "f4kit/groups.hpp"

namespace f4kit::io {

using Json = nlohmann::json;

Json to_json(const Field& f);
Json to_json(const Element& x);
Json to_json(const Vector& v);
Json to_json(const Matrix& m);
Json to_json(const QuadraticForm& q);
Json to_json(const IsotropyCertificate& c);
Json to_json(const WittDecomposition& w);
Json to_json(const CompositionAlgebra& c);
Json to_json(const AlbertAlgebra& a);
Json to_json(const AlbertElement& x);
Json to_json(const NilpotentTest& t);
Json to_json(const RankReport& r);
Json to_json(const GammaNormalization& n);
Json to_json(const KernelProvenance& p);
Json to_json(const KernelDescriptor& k);
Json to_json(const DescentWitness& d);
Json to_json(const ExcellenceReport& r);

Field field_from_json(const Json& j);
Element element_from_json(const Field& f, const Json& j);
Vector vector_from_json(const Field& f, const Json& j);
Matrix matrix_from_json(const Field& f, const Json& j);
QuadraticForm form_from_json(const Json& j);
IsotropyCertificate certificate_from_json(const Field& f, const Json& j);
WittDecomposition witt_from_json(const Json& j);
CompositionAlgebra composition_from_json(const Json& j);
AlbertAlgebra albert_from_json(const Json& j);
AlbertElement albert_element_from_json(const AlbertAlgebra& a, const Json& j);
RankReport rank_report_from_json(const Json& j);
KernelDescriptor kernel_from_json(const Json& j);
ExcellenceReport excellence_from_json(const Json& j);

/// An algebra descriptor: {"g2": composition}, {"f4": albert}, or a bare
/// composition / Albert object (recognised by its keys).
struct AlgebraInput {
  GroupType type = GroupType::F4;
  std::optional<CompositionAlgebra> composition;
  std::optional<AlbertAlgebra> albert;
};
AlgebraInput algebra_from_json(const Json& j);

/// Parses text as JSON; syntax errors become InvalidInput.
Json parse_text(const std::string& text);

/// {"error": {"code": ..., "message": ...}}.
Json diagnostic(const Error& e);

}  // namespace f4kit::io
