#include "f4kit/io.hpp"

#include <initializer_list>
#include <set>

namespace f4kit::io {

namespace {

[[noreturn]] void bad(const std::string& path, const std::string& what) {
  raise(ErrorCode::InvalidInput, (path.empty() ? std::string("input") : path) + ": " + what);
}

// Strict view of a JSON object: unknown keys are rejected up front.
class Obj {
 public:
  Obj(const Json& j, std::string path, std::initializer_list<const char*> keys) : j_(j), path_(std::move(path)) {
    if (!j.is_object()) bad(path_, "expected an object");
    std::set<std::string> allowed(keys.begin(), keys.end());
    for (const auto& [k, v] : j.items()) {
      if (!allowed.count(k)) bad(path_, "unknown key \"" + k + "\"");
    }
  }

  const Json& at(const std::string& key) const {
    auto it = j_.find(key);
    if (it == j_.end()) bad(path_, "missing key \"" + key + "\"");
    return *it;
  }
  /// nullptr when absent or null.
  const Json* opt(const std::string& key) const {
    auto it = j_.find(key);
    return (it == j_.end() || it->is_null()) ? nullptr : &*it;
  }
  std::string path(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  std::string str(const std::string& key) const {
    const Json& v = at(key);
    if (!v.is_string()) bad(path(key), "expected a string");
    return v.get<std::string>();
  }
  std::int64_t integer(const std::string& key) const {
    const Json& v = at(key);
    if (!v.is_number_integer()) bad(path(key), "expected an integer");
    return v.get<std::int64_t>();
  }
  bool boolean(const std::string& key) const {
    const Json& v = at(key);
    if (!v.is_boolean()) bad(path(key), "expected a boolean");
    return v.get<bool>();
  }

 private:
  const Json& j_;
  std::string path_;
};

const Json& array(const Json& j, const std::string& path, std::optional<std::size_t> size = std::nullopt) {
  if (!j.is_array()) bad(path, "expected an array");
  if (size && j.size() != *size) bad(path, "expected " + std::to_string(*size) + " entries, got " + std::to_string(j.size()));
  return j;
}

template <class E, std::size_t N>
E enum_from(const std::string& name, const std::array<E, N>& values, std::string_view (*namer)(E),
            const std::string& path) {
  for (E v : values)
    if (namer(v) == name) return v;
  bad(path, "unknown value \"" + name + "\"");
}

constexpr std::array<DecisionMethod, 4> kMethods{DecisionMethod::LocalInvariants, DecisionMethod::FiniteFieldCount,
                                                 DecisionMethod::RealPlaces, DecisionMethod::ExplicitWitness};
constexpr std::array<GroupType, 2> kGroups{GroupType::G2, GroupType::F4};
constexpr std::array<RankCertificate, 4> kCertificates{
    RankCertificate::SplitNormWitness, RankCertificate::NilpotentElement, RankCertificate::ThreeFormAnisotropy,
    RankCertificate::NormAnisotropy};
constexpr std::array<KernelKind, 3> kKinds{KernelKind::Trivial, KernelKind::WholeGroup, KernelKind::SpinForm};
constexpr std::array<Verdict, 2> kVerdicts{Verdict::ExcellentWitnessed, Verdict::Unsupported};

template <class T>
Json optional_json(const std::optional<T>& v) {
  return v ? to_json(*v) : Json(nullptr);
}

Json elements(const std::array<Element, 3>& xs) { return Json::array({to_json(xs[0]), to_json(xs[1]), to_json(xs[2])}); }

std::array<Element, 3> elements_from(const Field& f, const Json& j, const std::string& path) {
  array(j, path, 3);
  return {element_from_json(f, j[0]), element_from_json(f, j[1]), element_from_json(f, j[2])};
}

Vector vector_at(const Field& f, const Json& j, const std::string& path, std::optional<std::size_t> size = {}) {
  array(j, path, size);
  try {
    return vector_from_json(f, j);
  } catch (const Error& e) {
    bad(path, e.what());
  }
}

AlbertElement albert_element_from(const Field& f, const Json& j, const std::string& path) {
  Obj o(j, path, {"x", "c"});
  AlbertElement out;
  const Json& x = array(o.at("x"), o.path("x"), 3);
  for (std::size_t i = 0; i < 3; ++i) out.x[i] = element_from_json(f, x[i]);
  const Json& c = array(o.at("c"), o.path("c"), 3);
  for (std::size_t i = 0; i < 3; ++i) out.c[i] = vector_at(f, c[i], o.path("c"), 8);
  return out;
}

NilpotentTest nilpotent_test_from(const Json& j, const std::string& path) {
  Obj o(j, path, {"slot", "form", "certificate"});
  QuadraticForm form = form_from_json(o.at("form"));
  const std::int64_t slot = o.integer("slot");
  if (slot < 1 || slot > 3) bad(o.path("slot"), "slot must be 1, 2 or 3");
  return NilpotentTest{static_cast<std::size_t>(slot - 1), form, certificate_from_json(form.field(), o.at("certificate"))};
}

KernelProvenance provenance_from(const Field& f, const Json& j, const std::string& path) {
  Obj o(j, path, {"normalization", "idempotent", "q0", "isotropic_vector", "plus", "minus", "basis", "anisotropy"});
  Obj n(o.at("normalization"), o.path("normalization"), {"permutation", "scale", "square_roots", "normalized"});
  GammaNormalization g;
  const Json& perm = array(n.at("permutation"), n.path("permutation"), 3);
  std::set<std::int64_t> seen;
  for (std::size_t i = 0; i < 3; ++i) {
    if (!perm[i].is_number_integer() || perm[i].get<std::int64_t>() < 1 || perm[i].get<std::int64_t>() > 3)
      bad(n.path("permutation"), "entries must be 1, 2 or 3");
    seen.insert(perm[i].get<std::int64_t>());
    g.permutation[i] = static_cast<std::size_t>(perm[i].get<std::int64_t>() - 1);
  }
  if (seen.size() != 3) bad(n.path("permutation"), "not a permutation");
  g.scale = element_from_json(f, n.at("scale"));
  g.square_roots = elements_from(f, n.at("square_roots"), n.path("square_roots"));
  g.normalized = elements_from(f, n.at("normalized"), n.path("normalized"));
  QuadraticForm q0 = form_from_json(o.at("q0"));
  return KernelProvenance{g,
                          albert_element_from(f, o.at("idempotent"), o.path("idempotent")),
                          q0,
                          vector_at(f, o.at("isotropic_vector"), o.path("isotropic_vector"), 9),
                          vector_at(f, o.at("plus"), o.path("plus"), 9),
                          vector_at(f, o.at("minus"), o.path("minus"), 9),
                          matrix_from_json(f, o.at("basis")),
                          certificate_from_json(f, o.at("anisotropy"))};
}

}  // namespace

// --- encoding ---------------------------------------------------------------

Json to_json(const Field& f) {
  switch (f.kind()) {
    case FieldKind::Rationals: return Json{{"kind", "Q"}};
    case FieldKind::PrimeField: return Json{{"kind", "Fp"}, {"p", f.p()}};
    case FieldKind::QuadExt: return Json{{"kind", "QSqrt"}, {"d", f.d()}};
  }
  return Json();
}

Json to_json(const Element& x) { return x.to_string(); }

Json to_json(const Vector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(to_json(x));
  return out;
}

Json to_json(const Matrix& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    out.push_back(std::move(row));
  }
  return out;
}

Json to_json(const QuadraticForm& q) { return Json{{"field", to_json(q.field())}, {"coeffs", to_json(q.coeffs())}}; }

Json to_json(const IsotropyCertificate& c) {
  return Json{{"isotropic", c.isotropic},
              {"method", std::string(method_name(c.method))},
              {"witness", optional_json(c.witness)},
              {"detail", c.detail}};
}

Json to_json(const WittDecomposition& w) {
  Json witnesses = Json::array();
  for (const auto& v : w.witnesses) witnesses.push_back(to_json(v));
  return Json{{"index", w.witt_index},
              {"anisotropic", to_json(w.anisotropic)},
              {"method", std::string(method_name(w.method))},
              {"witnesses", std::move(witnesses)},
              {"basis", optional_json(w.basis)},
              {"anisotropy", to_json(w.anisotropy)}};
}

Json to_json(const CompositionAlgebra& c) { return Json{{"field", to_json(c.field())}, {"params", to_json(c.params())}}; }

Json to_json(const AlbertAlgebra& a) { return Json{{"octonion", to_json(a.octonions())}, {"gamma", elements(a.gamma())}}; }

Json to_json(const AlbertElement& x) {
  return Json{{"x", elements(x.x)}, {"c", Json::array({to_json(x.c[0]), to_json(x.c[1]), to_json(x.c[2])})}};
}

Json to_json(const NilpotentTest& t) {
  return Json{{"slot", t.slot + 1}, {"form", to_json(t.form)}, {"certificate", to_json(t.certificate)}};
}

Json to_json(const RankReport& r) {
  Json tests = Json::array();
  for (const auto& t : r.tests) tests.push_back(to_json(t));
  return Json{{"group", std::string(group_name(r.type))},
              {"rank", r.rank},
              {"certificate", std::string(certificate_name(r.certificate))},
              {"method", r.method},
              {"field", to_json(r.field)},
              {"norm_witness", optional_json(r.norm_witness)},
              {"norm_certificate", optional_json(r.norm_certificate)},
              {"nilpotent", optional_json(r.nilpotent)},
              {"tests", std::move(tests)}};
}

Json to_json(const GammaNormalization& n) {
  return Json{{"permutation", Json::array({n.permutation[0] + 1, n.permutation[1] + 1, n.permutation[2] + 1})},
              {"scale", to_json(n.scale)},
              {"square_roots", elements(n.square_roots)},
              {"normalized", elements(n.normalized)}};
}

Json to_json(const KernelProvenance& p) {
  return Json{{"normalization", to_json(p.normalization)},
              {"idempotent", to_json(p.idempotent)},
              {"q0", to_json(p.q0)},
              {"isotropic_vector", to_json(p.isotropic_vector)},
              {"plus", to_json(p.plus)},
              {"minus", to_json(p.minus)},
              {"basis", to_json(p.basis)},
              {"anisotropy", to_json(p.anisotropy)}};
}

Json to_json(const KernelDescriptor& k) {
  return Json{{"kind", std::string(kernel_kind_name(k.kind))},
              {"rank", to_json(k.rank)},
              {"form", optional_json(k.form)},
              {"provenance", optional_json(k.provenance)}};
}

Json to_json(const DescentWitness& d) {
  return Json{{"form", to_json(d.form)}, {"change", to_json(d.change)}, {"full_change", to_json(d.full_change)}};
}

Json to_json(const ExcellenceReport& r) {
  return Json{{"group", std::string(group_name(r.type))},
              {"base", to_json(r.base)},
              {"extension", to_json(r.extension)},
              {"rank_k", optional_json(r.rank_k)},
              {"rank_L", optional_json(r.rank_L)},
              {"kernel_L", optional_json(r.kernel_L)},
              {"descent", optional_json(r.descent)},
              {"descent_note", r.descent_note},
              {"verdict", std::string(verdict_name(r.verdict))},
              {"unsupported_reason", r.unsupported_reason}};
}

// --- decoding ---------------------------------------------------------------

Field field_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) bad("field", "expected {\"kind\": ...}");
  const std::string kind = j["kind"].get<std::string>();
  try {
    if (kind == "Q") {
      Obj o(j, "field", {"kind"});
      return Field::rationals();
    }
    if (kind == "Fp") {
      Obj o(j, "field", {"kind", "p"});
      return Field::prime(o.integer("p"));
    }
    if (kind == "QSqrt") {
      Obj o(j, "field", {"kind", "d"});
      return Field::quadratic(o.integer("d"));
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::InvalidInput) throw;
    raise(e.code(), std::string("field: ") + e.what());
  }
  bad("field.kind", "expected \"Q\", \"Fp\" or \"QSqrt\", got \"" + kind + "\"");
}

Element element_from_json(const Field& f, const Json& j) {
  if (j.is_number_integer()) return f.from_int(j.get<long long>());
  if (!j.is_string()) bad("element", "expected a string literal or an integer");
  try {
    return f.parse(j.get<std::string>());
  } catch (const Error& e) {
    raise(ErrorCode::InvalidInput, "element \"" + j.get<std::string>() + "\": " + e.what());
  }
}

Vector vector_from_json(const Field& f, const Json& j) {
  array(j, "vector");
  Vector out;
  out.reserve(j.size());
  for (const auto& x : j) out.push_back(element_from_json(f, x));
  return out;
}

Matrix matrix_from_json(const Field& f, const Json& j) {
  array(j, "matrix");
  const std::size_t rows = j.size();
  const std::size_t cols = rows ? array(j[0], "matrix row").size() : 0;
  Matrix m(f, rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    array(j[i], "matrix row", cols);
    for (std::size_t k = 0; k < cols; ++k) m(i, k) = element_from_json(f, j[i][k]);
  }
  return m;
}

QuadraticForm form_from_json(const Json& j) {
  Obj o(j, "form", {"field", "coeffs"});
  const Field f = field_from_json(o.at("field"));
  return QuadraticForm(f, vector_at(f, o.at("coeffs"), o.path("coeffs")));
}

IsotropyCertificate certificate_from_json(const Field& f, const Json& j) {
  Obj o(j, "certificate", {"isotropic", "method", "witness", "detail"});
  IsotropyCertificate c;
  c.isotropic = o.boolean("isotropic");
  c.method = enum_from(o.str("method"), kMethods, method_name, o.path("method"));
  if (auto w = o.opt("witness")) c.witness = vector_at(f, *w, o.path("witness"));
  c.detail = o.str("detail");
  return c;
}

WittDecomposition witt_from_json(const Json& j) {
  Obj o(j, "witt", {"index", "anisotropic", "method", "witnesses", "basis", "anisotropy"});
  QuadraticForm an = form_from_json(o.at("anisotropic"));
  const Field& f = an.field();
  WittDecomposition w{0, an, DecisionMethod::ExplicitWitness, {}, std::nullopt, {}};
  const std::int64_t index = o.integer("index");
  if (index < 0) bad(o.path("index"), "negative index");
  w.witt_index = static_cast<std::size_t>(index);
  w.method = enum_from(o.str("method"), kMethods, method_name, o.path("method"));
  for (const auto& v : array(o.at("witnesses"), o.path("witnesses"))) w.witnesses.push_back(vector_at(f, v, o.path("witnesses")));
  if (auto b = o.opt("basis")) w.basis = matrix_from_json(f, *b);
  w.anisotropy = certificate_from_json(f, o.at("anisotropy"));
  return w;
}

CompositionAlgebra composition_from_json(const Json& j) {
  Obj o(j, "octonion", {"field", "params"});
  const Field f = field_from_json(o.at("field"));
  return CompositionAlgebra::cayley_dickson(f, vector_at(f, o.at("params"), o.path("params")));
}

AlbertAlgebra albert_from_json(const Json& j) {
  Obj o(j, "albert", {"octonion", "gamma"});
  CompositionAlgebra c = composition_from_json(o.at("octonion"));
  return AlbertAlgebra(c, elements_from(c.field(), o.at("gamma"), o.path("gamma")));
}

AlbertElement albert_element_from_json(const AlbertAlgebra& a, const Json& j) {
  AlbertElement x = albert_element_from(a.field(), j, "element");
  a.check(x);
  return x;
}

RankReport rank_report_from_json(const Json& j) {
  Obj o(j, "rank", {"group", "rank", "certificate", "method", "field", "norm_witness", "norm_certificate", "nilpotent", "tests"});
  RankReport r;
  r.type = enum_from(o.str("group"), kGroups, group_name, o.path("group"));
  r.rank = static_cast<int>(o.integer("rank"));
  r.certificate = enum_from(o.str("certificate"), kCertificates, certificate_name, o.path("certificate"));
  r.method = o.str("method");
  r.field = field_from_json(o.at("field"));
  if (auto w = o.opt("norm_witness")) r.norm_witness = vector_at(r.field, *w, o.path("norm_witness"));
  if (auto c = o.opt("norm_certificate")) r.norm_certificate = certificate_from_json(r.field, *c);
  if (auto z = o.opt("nilpotent")) r.nilpotent = albert_element_from(r.field, *z, o.path("nilpotent"));
  for (const auto& t : array(o.at("tests"), o.path("tests"))) r.tests.push_back(nilpotent_test_from(t, o.path("tests")));
  return r;
}

KernelDescriptor kernel_from_json(const Json& j) {
  Obj o(j, "kernel", {"kind", "rank", "form", "provenance"});
  KernelDescriptor k;
  k.kind = enum_from(o.str("kind"), kKinds, kernel_kind_name, o.path("kind"));
  k.rank = rank_report_from_json(o.at("rank"));
  if (auto f = o.opt("form")) k.form = form_from_json(*f);
  if (auto p = o.opt("provenance")) k.provenance = provenance_from(k.rank.field, *p, o.path("provenance"));
  return k;
}

ExcellenceReport excellence_from_json(const Json& j) {
  Obj o(j, "excellence", {"group", "base", "extension", "rank_k", "rank_L", "kernel_L", "descent", "descent_note",
                          "verdict", "unsupported_reason"});
  ExcellenceReport r;
  r.type = enum_from(o.str("group"), kGroups, group_name, o.path("group"));
  r.base = field_from_json(o.at("base"));
  r.extension = field_from_json(o.at("extension"));
  if (auto x = o.opt("rank_k")) r.rank_k = rank_report_from_json(*x);
  if (auto x = o.opt("rank_L")) r.rank_L = rank_report_from_json(*x);
  if (auto x = o.opt("kernel_L")) r.kernel_L = kernel_from_json(*x);
  if (auto x = o.opt("descent")) {
    Obj d(*x, o.path("descent"), {"form", "change", "full_change"});
    r.descent = DescentWitness{form_from_json(d.at("form")), matrix_from_json(r.extension, d.at("change")),
                               matrix_from_json(r.extension, d.at("full_change"))};
  }
  r.descent_note = o.str("descent_note");
  r.verdict = enum_from(o.str("verdict"), kVerdicts, verdict_name, o.path("verdict"));
  r.unsupported_reason = o.str("unsupported_reason");
  return r;
}

AlgebraInput algebra_from_json(const Json& j) {
  if (!j.is_object()) bad("", "expected an algebra descriptor object");
  AlgebraInput in;
  if (j.contains("f4") || j.contains("g2")) {
    if (j.size() != 1) bad("", "a wrapped descriptor has exactly one key, \"f4\" or \"g2\"");
    if (j.contains("f4")) {
      in.type = GroupType::F4;
      in.albert = albert_from_json(j["f4"]);
    } else {
      in.type = GroupType::G2;
      in.composition = composition_from_json(j["g2"]);
    }
  } else if (j.contains("octonion")) {
    in.type = GroupType::F4;
    in.albert = albert_from_json(j);
  } else {
    in.type = GroupType::G2;
    in.composition = composition_from_json(j);
  }
  if (in.albert) in.composition = in.albert->octonions();
  return in;
}

Json parse_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    raise(ErrorCode::InvalidInput, std::string("malformed JSON: ") + e.what());
  }
}

Json diagnostic(const Error& e) {
  return Json{{"error", {{"code", std::string(error_code_name(e.code()))}, {"message", e.what()}}}};
}

}  // namespace f4kit::io
