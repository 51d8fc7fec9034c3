#include "pptkit/linalg.hpp"

#include <cmath>

namespace pptkit {

std::vector<ComplexVector> orthonormalize(std::span<const ComplexVector> vectors, double tol) {
  std::vector<ComplexVector> basis;
  for (const auto& v : vectors) {
    const double norm = v.norm();
    if (norm == 0.0) continue;
    ComplexVector w = v;
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b : basis) w -= b * b.dot(w);
    const double rest = w.norm();
    if (rest <= tol * norm) continue;
    basis.push_back(w / rest);
  }
  return basis;
}

bool is_orthonormal(std::span<const ComplexVector> vectors, double tol) {
  for (std::size_t a = 0; a < vectors.size(); ++a)
    for (std::size_t b = a; b < vectors.size(); ++b) {
      const Complex ip = vectors[a].dot(vectors[b]);
      if (std::abs(ip - Complex(a == b ? 1.0 : 0.0, 0.0)) > tol) return false;
    }
  return true;
}

std::vector<ComplexVector> conjugated(std::span<const ComplexVector> vectors) {
  std::vector<ComplexVector> out;
  out.reserve(vectors.size());
  for (const auto& v : vectors) out.push_back(v.conjugate());
  return out;
}

}  // namespace pptkit
