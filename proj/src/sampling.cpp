#include "f4kit/sampling.hpp"

namespace f4kit {

mpq_class random_rational(Rng& rng, int height) {
  std::uniform_int_distribution<int> num(-height, height);
  std::uniform_int_distribution<int> den(1, height);
  mpq_class q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

Element random_element(const Field& field, Rng& rng, int height) {
  switch (field.kind()) {
    case FieldKind::PrimeField: {
      std::uniform_int_distribution<long long> r(0, field.p() - 1);
      return field.from_int(r(rng));
    }
    case FieldKind::QuadExt: {
      mpq_class a = random_rational(rng, height);
      return field.from_parts(a, random_rational(rng, height));
    }
    case FieldKind::Rationals: break;
  }
  return field.from_rational(random_rational(rng, height));
}

Element random_nonzero_element(const Field& field, Rng& rng, int height) {
  while (true) {
    Element e = random_element(field, rng, height);
    if (!e.is_zero()) return e;
  }
}

Vector random_vector(const Field& field, std::size_t n, Rng& rng, int height) {
  Vector v;
  v.reserve(n);
  for (std::size_t i = 0; i < n; ++i) v.push_back(random_element(field, rng, height));
  return v;
}

}  // namespace f4kit
