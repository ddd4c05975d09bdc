#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace tandemq {

// Eigenvalues (ascending) of a dense Hermitian matrix given row-major as
// a[i*n + j]. The input must be Hermitian to 1e-12 relative to its largest
// entry; the routine reduces to real symmetric tridiagonal form by complex
// Householder reflections and then applies the implicit-shift QL iteration
// (values only, no eigenvectors).
std::vector<double> hermitian_eigenvalues(std::vector<std::complex<double>> a, std::size_t n);

double largest_hermitian_eigenvalue(std::vector<std::complex<double>> a, std::size_t n);

}  // namespace tandemq
