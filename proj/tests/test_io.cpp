#include "doctest.h"
#include "f4kit/io.hpp"

using namespace f4kit;

namespace {

const Field Q = Field::rationals();

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an f4kit::Error");
  return ErrorCode::InternalInvariant;
}

io::Json J(const char* text) { return io::parse_text(text); }

}  // namespace

TEST_CASE("fields and elements") {
  for (const Field& f : {Q, Field::prime(7), Field::quadratic(-7), Field::quadratic(2)}) {
    CHECK(io::field_from_json(io::to_json(f)) == f);
  }
  const Field K = Field::quadratic(5);
  const Element x = K.from_parts(mpq_class(-3, 4), mpq_class(2, 7));
  CHECK(io::element_from_json(K, io::to_json(x)) == x);
  CHECK(io::element_from_json(Q, J("-12")) == Q.from_int(-12));
  CHECK(io::element_from_json(Field::prime(7), J("\"10\"")) == Field::prime(7).from_int(3));
  CHECK(code_of([] { io::field_from_json(J(R"({"kind":"Fp","p":3})")); }) == ErrorCode::InvalidField);
  CHECK(code_of([] { io::field_from_json(J(R"({"kind":"Fp"})")); }) == ErrorCode::InvalidInput);
  CHECK(code_of([] { io::field_from_json(J(R"({"kind":"Q","p":5})")); }) == ErrorCode::InvalidInput);
  CHECK(code_of([] { io::field_from_json(J(R"({"kind":"R"})")); }) == ErrorCode::InvalidInput);
  CHECK(code_of([] { io::element_from_json(Q, J("\"1/0\"")); }) == ErrorCode::InvalidInput);
  CHECK(code_of([] { io::element_from_json(Q, J("1.5")); }) == ErrorCode::InvalidInput);
  CHECK(code_of([] { io::parse_text("{\"a\":"); }) == ErrorCode::InvalidInput);
}

TEST_CASE("forms and Witt decompositions") {
  auto q = io::form_from_json(J(R"({"field":{"kind":"Q"},"coeffs":["1","-1","1"]})"));
  auto w = witt_decompose(q);
  const io::Json j = io::to_json(w);
  CHECK(j["index"] == 1);
  CHECK(j["anisotropic"]["coeffs"] == J(R"(["1"])"));
  CHECK(io::to_json(io::witt_from_json(j)).dump() == j.dump());
  CHECK(code_of([] { io::form_from_json(J(R"({"field":{"kind":"Q"},"coeffs":["1","0"]})")); }) ==
        ErrorCode::DegenerateForm);
  CHECK(code_of([] { io::form_from_json(J(R"({"field":{"kind":"Q"},"coeffs":"1"})")); }) == ErrorCode::InvalidInput);
  CHECK(code_of([] { io::form_from_json(J(R"({"field":{"kind":"Q"},"coeffs":[],"x":1})")); }) ==
        ErrorCode::InvalidInput);
}

TEST_CASE("algebra descriptors") {
  auto in = io::algebra_from_json(
      J(R"({"f4":{"octonion":{"field":{"kind":"Q"},"params":["-1","-1","-1"]},"gamma":["1","-1","1"]}})"));
  CHECK(in.type == GroupType::F4);
  REQUIRE(in.albert);
  CHECK(in.albert->octonions() == CompositionAlgebra::graves(Q));
  CHECK(io::albert_from_json(io::to_json(*in.albert)) == *in.albert);

  auto g = io::algebra_from_json(J(R"({"g2":{"field":{"kind":"QSqrt","d":-1},"params":["1","-1","-1"]}})"));
  CHECK(g.type == GroupType::G2);
  CHECK_FALSE(g.albert);
  CHECK(io::algebra_from_json(J(R"({"field":{"kind":"Q"},"params":["-1"]})")).composition->dim() == 2);

  CHECK(code_of([] {
          io::albert_from_json(J(R"({"octonion":{"field":{"kind":"Q"},"params":["-1","-1","-1"]},"gamma":["1","0","1"]})"));
        }) == ErrorCode::ZeroParameter);
  CHECK(code_of([] {
          io::albert_from_json(J(R"({"octonion":{"field":{"kind":"Q"},"params":["-1","-1","-1"]},"gamma":["1","1"]})"));
        }) == ErrorCode::InvalidInput);
  CHECK(code_of([] { io::algebra_from_json(J(R"({"f4":{}, "g2":{}})")); }) == ErrorCode::InvalidInput);

  const AlbertAlgebra a = *in.albert;
  auto z = *nilpotent_witness(a);
  CHECK(io::albert_element_from_json(a, io::to_json(z)) == z);
}

TEST_CASE("reports round-trip byte for byte") {
  const AlbertAlgebra a(CompositionAlgebra::graves(Q), {Q.one(), -Q.one(), Q.one()});
  const io::Json rank = io::to_json(f4_rank(a));
  CHECK(io::to_json(io::rank_report_from_json(rank)).dump() == rank.dump());
  const io::Json kernel = io::to_json(f4_kernel(a));
  CHECK(kernel["kind"] == "spin_form");
  CHECK(io::to_json(io::kernel_from_json(kernel)).dump() == kernel.dump());
  for (std::int64_t d : {2, -1}) {
    const io::Json ex = io::to_json(f4_excellence(a, Field::quadratic(d)));
    CHECK(io::to_json(io::excellence_from_json(ex)).dump() == ex.dump());
  }
  const io::Json g2 = io::to_json(g2_excellence(CompositionAlgebra::graves(Q), Field::quadratic(-7)));
  CHECK(io::to_json(io::excellence_from_json(g2)).dump() == g2.dump());
  const io::Json r0 = io::to_json(f4_rank(AlbertAlgebra(CompositionAlgebra::graves(Q), {Q.one(), Q.one(), Q.one()})));
  CHECK(r0["tests"].size() == 3);
  CHECK(io::to_json(io::rank_report_from_json(r0)).dump() == r0.dump());
}

TEST_CASE("diagnostics") {
  const io::Json d = io::diagnostic(Error(ErrorCode::UnsupportedCase, "no"));
  CHECK(d["error"]["code"] == "UnsupportedCase");
  CHECK(d["error"]["message"] == "no");
}
