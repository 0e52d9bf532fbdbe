#ifndef PQC_PERMANENT_HPP
#define PQC_PERMANENT_HPP

#include <Eigen/Dense>
#include <complex>

namespace pqc {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

/// Permanent via the Glynn gray-code formula, O(2^n * n). Serial reference.
Complex permanent_serial(const Matrix& m);

/// Same formula with the gray-code range split into fixed chunks that are
/// evaluated across OpenMP threads. Chunk partial sums are combined in
/// chunk order, so the result does not depend on the thread count.
Complex permanent_parallel(const Matrix& m);

/// Naive Laplace-style expansion, O(n!). Test oracle; keep independent of
/// the Glynn path.
Complex permanent_naive(const Matrix& m);

/// Front end: serial below PQC_PERMANENT_PARALLEL_CUTOFF rows, parallel above.
Complex permanent(const Matrix& m);

inline constexpr int PQC_PERMANENT_PARALLEL_CUTOFF = 12;

} // namespace pqc

#endif
