#include "f4kit/verify.hpp"

#include <functional>

#include "f4kit/sampling.hpp"

namespace f4kit::verify {

namespace {

// Runs `samples` trials of a predicate; exceptions count as failures.
class Suite {
 public:
  explicit Suite(std::string name) { result_.suite = std::move(name); }

  void check(const std::string& name, std::size_t samples, const std::function<bool(std::size_t)>& trial) {
    CheckResult c;
    c.name = name;
    c.samples = samples;
    for (std::size_t i = 0; i < samples; ++i) {
      std::string why;
      bool ok = false;
      try {
        ok = trial(i);
      } catch (const Error& e) {
        why = std::string(error_code_name(e.code())) + ": " + e.what();
      }
      if (!ok) {
        if (c.failures++ == 0) c.first_failure = "sample " + std::to_string(i) + (why.empty() ? "" : " (" + why + ")");
      }
    }
    result_.checks.push_back(std::move(c));
  }

  SuiteResult take() { return std::move(result_); }

 private:
  SuiteResult result_;
};

std::uint64_t mix(std::uint64_t seed, std::uint64_t salt) { return seed * 0x9e3779b97f4a7c15ULL + salt; }

const Field Q = Field::rationals();

AlbertElement random_albert(const AlbertAlgebra& a, Rng& rng, int height = 4) {
  return a.from_coords(random_vector(a.field(), AlbertAlgebra::kDim, rng, height));
}

std::vector<std::uint64_t> residues(const QuadraticForm& q) {
  std::vector<std::uint64_t> out;
  for (const auto& c : q.coeffs()) out.push_back(c.residue());
  return out;
}

// Random Γ with entries in ±{1, 2, 3, 5}.
std::array<Element, 3> random_gamma(const Field& f, Rng& rng) {
  static constexpr int kChoices[] = {1, -1, 2, -2, 3, -3, 5, -5};
  std::uniform_int_distribution<int> pick(0, 7);
  return {f.from_int(kChoices[pick(rng)]), f.from_int(kChoices[pick(rng)]), f.from_int(kChoices[pick(rng)])};
}

// ---------------------------------------------------------------------------

SuiteResult fields_suite(std::uint64_t seed) {
  Suite s("fields");
  const std::vector<Field> panel{Q, Field::prime(5), Field::prime(7), Field::prime(1009), Field::quadratic(2),
                                 Field::quadratic(-1), Field::quadratic(-7)};
  for (const Field& f : panel) {
    Rng rng(mix(seed, static_cast<std::uint64_t>(f.p() * 1000 + f.d() + 17)));
    s.check("field axioms over " + f.name(), 1000, [&](std::size_t) {
      const Element a = random_element(f, rng), b = random_element(f, rng), c = random_element(f, rng);
      bool ok = (a + b) + c == a + (b + c) && (a * b) * c == a * (b * c) && a + b == b + a && a * b == b * a &&
                a * (b + c) == a * b + a * c && a + f.zero() == a && a * f.one() == a && a + (-a) == f.zero();
      if (!a.is_zero()) ok = ok && a * a.inv() == f.one() && (b / a) * a == b;
      ok = ok && (a * b).conjugate() == a.conjugate() * b.conjugate();
      return ok;
    });
    s.check("square witnesses over " + f.name(), 200, [&](std::size_t) {
      const Element a = random_nonzero_element(f, rng);
      auto r = is_square(a * a);
      if (!r || !(*r * *r == a * a)) return false;
      auto t = is_square(a);
      return !t || *t * *t == a;
    });
  }
  return s.take();
}

SuiteResult qforms_suite(std::uint64_t seed) {
  Suite s("qforms");
  Rng rng(mix(seed, 2));
  s.check("Hilbert product formula", 100, [&](std::size_t) {
    const Element a = random_nonzero_element(Q, rng, 60), b = random_nonzero_element(Q, rng, 60);
    int product = 1;
    for (auto place : relevant_places(QuadraticForm(Q, {a, b}))) product *= hilbert_symbol(a, b, place);
    return product == 1;
  });
  s.check("F_p Witt index matches enumeration", 50, [&](std::size_t i) {
    static constexpr std::int64_t kPrimes[] = {5, 7, 11};
    const Field f = Field::prime(kPrimes[i % 3]);
    std::uniform_int_distribution<std::size_t> dim(1, 5);
    QuadraticForm q(f, {});
    Vector c;
    const std::size_t n = dim(rng);
    for (std::size_t k = 0; k < n; ++k) c.push_back(random_nonzero_element(f, rng));
    q = QuadraticForm(f, c);
    auto w = witt_decompose(q);
    const auto res = residues(q);
    return w.witt_index ==
           kernels::witt_index_fp_enumeration(res, static_cast<std::uint64_t>(f.p()), kernels::Exec::Parallel);
  });
  s.check("Hasse-Minkowski agrees with bounded search", 50, [&](std::size_t i) {
    const std::size_t n = 2 + i % 3;
    Vector c;
    for (std::size_t k = 0; k < n; ++k) {
      std::uniform_int_distribution<int> h(1, 10), sign(0, 1);
      c.push_back(Q.from_int(sign(rng) ? h(rng) : -h(rng)));
    }
    const QuadraticForm q(Q, c);
    const bool verdict = is_isotropic(q).isotropic;
    const auto w = isotropic_vector_search(q, n == 4 ? 30 : 60);
    if (w && !(q.evaluate(*w).is_zero() && !is_zero_vector(*w))) return false;
    return !w || verdict;
  });
  s.check("Witt decomposition basis is a congruence", 60, [&](std::size_t i) {
    const std::size_t n = 2 + i % 5;
    Vector c;
    for (std::size_t k = 0; k < n; ++k) c.push_back(random_nonzero_element(Q, rng, 6));
    const QuadraticForm q(Q, c);
    auto w = witt_decompose(q);
    const QuadraticForm target = hyperbolic(Q, w.witt_index).orthogonal_sum(w.anisotropic);
    if (w.anisotropic.dim() > 0 && is_isotropic(w.anisotropic).isotropic) return false;
    if (!equivalent(q, target)) return false;
    return !w.basis || congruent_via(q, target, *w.basis);
  });
  s.check("local Witt indices bound the global one", 40, [&](std::size_t i) {
    const std::size_t n = 2 + i % 5;
    Vector c;
    for (std::size_t k = 0; k < n; ++k) c.push_back(random_nonzero_element(Q, rng, 12));
    const QuadraticForm q(Q, c);
    auto w = witt_decompose(q);
    for (auto place : relevant_places(q))
      if (local_witt_index(q, place) < w.witt_index) return false;
    return true;
  });
  return s.take();
}

SuiteResult composition_suite(std::uint64_t seed) {
  Suite s("composition");
  for (const Field& f : {Q, Field::prime(7)}) {
    Rng rng(mix(seed, 3 + static_cast<std::uint64_t>(f.p())));
    for (std::size_t doublings = 0; doublings <= 3; ++doublings) {
      Vector params;
      for (std::size_t k = 0; k < doublings; ++k) params.push_back(random_nonzero_element(f, rng, 5));
      const auto c = CompositionAlgebra::cayley_dickson(f, params);
      const std::string tag = " (dim " + std::to_string(c.dim()) + ", " + f.name() + ")";
      s.check("N(xy) = N(x)N(y)" + tag, 200, [&](std::size_t) {
        const Vector x = random_vector(f, c.dim(), rng, 5), y = random_vector(f, c.dim(), rng, 5);
        return c.norm(c.mul(x, y)) == c.norm(x) * c.norm(y);
      });
      s.check("alternativity and conjugation" + tag, 200, [&](std::size_t) {
        const Vector x = random_vector(f, c.dim(), rng, 5), y = random_vector(f, c.dim(), rng, 5);
        const Vector xx = c.mul(x, x);
        bool ok = c.mul(x, c.mul(x, y)) == c.mul(xx, y) && c.mul(c.mul(y, x), x) == c.mul(y, xx);
        ok = ok && c.conj(c.mul(x, y)) == c.mul(c.conj(y), c.conj(x));
        Vector n = zero_vector(f, c.dim());
        n[0] = c.norm(x);
        return ok && c.mul(x, c.conj(x)) == n;
      });
    }
  }
  return s.take();
}

SuiteResult albert_suite(std::uint64_t seed) {
  Suite s("albert");
  for (const Field& f : {Q, Field::prime(7)}) {
    Rng rng(mix(seed, 4 + static_cast<std::uint64_t>(f.p())));
    const auto c = CompositionAlgebra::cayley_dickson(f, {f.from_int(-1), f.from_int(-2), f.from_int(3)});
    const AlbertAlgebra a(c, random_gamma(f, rng));
    const std::string tag = " on " + a.describe();
    s.check("Jordan commutativity" + tag, 200, [&](std::size_t) {
      const auto x = random_albert(a, rng), y = random_albert(a, rng);
      return a.jordan_mul(x, y) == a.jordan_mul(y, x);
    });
    s.check("Jordan identity" + tag, 200, [&](std::size_t) {
      const auto x = random_albert(a, rng), y = random_albert(a, rng);
      const auto xx = a.jordan_mul(x, x);
      return a.jordan_mul(a.jordan_mul(x, y), xx) == a.jordan_mul(x, a.jordan_mul(y, xx));
    });
    s.check("polarization Q(x+y) - Q(x) - Q(y) = tr(xy)" + tag, 200, [&](std::size_t) {
      const auto x = random_albert(a, rng), y = random_albert(a, rng);
      const auto m = a.matrix_mul(x, y);
      const Element tr = m[0][0][0] + m[1][1][0] + m[2][2][0];
      return a.norm_Q(a.add(x, y)) - a.norm_Q(x) - a.norm_Q(y) == tr && tr == a.bilinear(x, y);
    });
    s.check("primitive idempotent E33" + tag, 1, [&](std::size_t) {
      const auto u = a.unit_diagonal(3);
      return a.is_primitive_idempotent(u) && a.norm_Q(u) == f.from_rational(mpq_class(1, 2)) &&
             e0_subspace(a, u).basis.size() == 9;
    });
    s.check("phi of SO(Γ) samples preserves the Jordan product" + tag, 2, [&](std::size_t i) {
      const Matrix x = so_gamma_sample(a.gamma(), mix(seed, 40 + i));
      return in_so_gamma(x, a.gamma()) && jordan_panel_failures(a, phi(a, x)).empty();
    });
  }
  return s.take();
}

SuiteResult groups_suite(std::uint64_t seed) {
  Suite s("groups");
  Rng rng(mix(seed, 5));
  const std::vector<CompositionAlgebra> coords{
      CompositionAlgebra::graves(Q), CompositionAlgebra::split_octonions(Q),
      CompositionAlgebra::cayley_dickson(Q, {Q.from_int(-1), Q.from_int(-1), Q.from_int(-3)})};
  s.check("F4 rank certificates and kernels", 24, [&](std::size_t i) {
    const AlbertAlgebra a(coords[i % coords.size()], random_gamma(Q, rng));
    const RankReport r = f4_rank(a);
    if ((r.rank == 4) != is_split(a.octonions())) return false;
    if (r.rank == 4 && !(r.norm_witness && a.octonions().norm_form().evaluate(*r.norm_witness).is_zero()))
      return false;
    if (r.rank == 1 && !(r.nilpotent && a.jordan_mul(*r.nilpotent, *r.nilpotent) == a.zero())) return false;
    if (r.rank == 0) {
      if (r.tests.size() != 3) return false;
      for (const auto& t : r.tests)
        if (t.certificate.isotropic) return false;
    }
    KernelDescriptor k;
    try {
      k = f4_kernel(a);
    } catch (const Error& e) {
      return e.code() == ErrorCode::NonNormalizableGamma && r.rank == 1;
    }
    const KernelKind expected = r.rank == 0 ? KernelKind::WholeGroup : r.rank == 4 ? KernelKind::Trivial : KernelKind::SpinForm;
    if (k.kind != expected) return false;
    if (k.kind != KernelKind::SpinForm) return true;
    const auto& p = *k.provenance;
    return k.form->dim() == 7 && !is_isotropic(*k.form).isotropic &&
           congruent_via(p.q0, hyperbolic(Q, 1).orthogonal_sum(*k.form), p.basis);
  });
  const std::vector<std::int64_t> exts{2, 3, 5, -1, -2, -7};
  s.check("excellence verdicts", 12, [&](std::size_t i) {
    const Field L = Field::quadratic(exts[i % exts.size()]);
    const auto& c = coords[i % coords.size()];
    const auto g2 = g2_excellence(c, L);
    if (g2.verdict != Verdict::ExcellentWitnessed || g2.kernel_L->kind == KernelKind::SpinForm) return false;
    const auto f4 = f4_excellence(AlbertAlgebra(c, {Q.one(), -Q.one(), Q.one()}), L);
    if (f4.verdict != Verdict::ExcellentWitnessed) return false;
    if (f4.kernel_L->kind != KernelKind::SpinForm) return !f4.descent;
    return f4.descent && congruent_via(f4.descent->form.embed(L), *f4.kernel_L->form, f4.descent->change);
  });
  s.check("report round trip", 4, [&](std::size_t i) {
    const Field L = Field::quadratic(exts[i]);
    const auto r = f4_excellence(AlbertAlgebra(coords[0], {Q.one(), -Q.one(), Q.one()}), L);
    const io::Json j = io::to_json(r);
    return io::to_json(io::excellence_from_json(j)).dump() == j.dump();
  });
  return s.take();
}

}  // namespace

bool SuiteResult::passed() const {
  for (const auto& c : checks)
    if (!c.passed()) return false;
  return !checks.empty();
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"fields", "qforms", "composition", "albert", "groups"};
  return names;
}

SuiteResult run_suite(std::string_view name, std::uint64_t seed) {
  if (name == "fields") return fields_suite(seed);
  if (name == "qforms") return qforms_suite(seed);
  if (name == "composition") return composition_suite(seed);
  if (name == "albert") return albert_suite(seed);
  if (name == "groups") return groups_suite(seed);
  raise(ErrorCode::InvalidInput, "unknown suite \"" + std::string(name) + "\"");
}

std::vector<SuiteResult> run_suites(std::string_view name, std::uint64_t seed) {
  std::vector<SuiteResult> out;
  if (name == "all") {
    for (const auto& n : suite_names()) out.push_back(run_suite(n, seed));
  } else {
    out.push_back(run_suite(name, seed));
  }
  return out;
}

io::Json to_json(const CheckResult& c) {
  return io::Json{{"name", c.name},
                  {"samples", c.samples},
                  {"failures", c.failures},
                  {"first_failure", c.first_failure},
                  {"passed", c.passed()}};
}

io::Json to_json(const SuiteResult& s) {
  io::Json checks = io::Json::array();
  for (const auto& c : s.checks) checks.push_back(to_json(c));
  return io::Json{{"suite", s.suite}, {"checks", std::move(checks)}, {"passed", s.passed()}};
}

}  // namespace f4kit::verify
