#pragma once

#include <span>
#include <vector>

#include "pptkit/types.hpp"

namespace pptkit {

/// Orthonormal basis of span(vectors) by Gram-Schmidt with one
/// re-orthogonalization pass. A vector whose remainder has norm below
/// `tol` times its own norm is dropped as dependent.
std::vector<ComplexVector> orthonormalize(std::span<const ComplexVector> vectors, double tol = 1e-10);

/// Pairwise inner products within `tol` of the Kronecker delta.
bool is_orthonormal(std::span<const ComplexVector> vectors, double tol = 1e-10);

/// Entrywise complex conjugates.
std::vector<ComplexVector> conjugated(std::span<const ComplexVector> vectors);

}  // namespace pptkit
