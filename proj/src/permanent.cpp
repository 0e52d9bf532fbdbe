#include "pqc/permanent.hpp"

#include <bit>
#include <stdexcept>
#include <vector>

namespace pqc {

namespace {

void require_square(const Matrix& m) {
    if (m.rows() != m.cols())
        throw std::invalid_argument("permanent: matrix must be square");
}

// Glynn formula: perm(A) = 2^{1-n} * sum over delta in {+1,-1}^n, delta_0
// fixed to +1, of (prod_i delta_i) * prod_j (sum_i delta_i A_ij).
// The deltas are walked in binary-reflected gray-code order so each step
// updates the column sums with one row.
//
// State at gray index g (0 <= g < 2^{n-1}): row i+1 has delta -1 iff bit i
// of g^(g>>1) is set; the term sign is the parity of that bit pattern.

Complex glynn_range(const Matrix& m, std::uint64_t begin, std::uint64_t end) {
    const int n = static_cast<int>(m.rows());
    std::vector<Complex> sums(n);

    const std::uint64_t gray0 = begin ^ (begin >> 1);
    for (int j = 0; j < n; ++j) {
        Complex s = m(0, j);
        for (int i = 1; i < n; ++i)
            s += (gray0 >> (i - 1)) & 1 ? -m(i, j) : m(i, j);
        sums[j] = s;
    }

    double sign = std::popcount(gray0) & 1 ? -1.0 : 1.0;
    Complex total = 0.0;
    for (std::uint64_t g = begin;;) {
        Complex prod = sign;
        for (int j = 0; j < n; ++j)
            prod *= sums[j];
        total += prod;

        if (++g == end)
            break;
        // bit flipped when stepping g-1 -> g in gray order
        const int bit = std::countr_zero(g);
        const std::uint64_t mask = std::uint64_t{1} << bit;
        const bool now_negative = (g ^ (g >> 1)) & mask;
        const double step = now_negative ? -2.0 : 2.0;
        const int row = bit + 1;
        for (int j = 0; j < n; ++j)
            sums[j] += step * m(row, j);
        sign = -sign;
    }
    return total;
}

Complex naive_expand(const Matrix& m, std::vector<int>& cols, int row) {
    const int remaining = static_cast<int>(cols.size()) - row;
    if (remaining == 0)
        return 1.0;
    Complex total = 0.0;
    for (int k = row; k < static_cast<int>(cols.size()); ++k) {
        std::swap(cols[row], cols[k]);
        total += m(row, cols[row]) * naive_expand(m, cols, row + 1);
        std::swap(cols[row], cols[k]);
    }
    return total;
}

} // namespace

Complex permanent_serial(const Matrix& m) {
    require_square(m);
    const int n = static_cast<int>(m.rows());
    if (n == 0)
        return 1.0;
    if (n == 1)
        return m(0, 0);
    const std::uint64_t terms = std::uint64_t{1} << (n - 1);
    return glynn_range(m, 0, terms) / static_cast<double>(terms);
}

Complex permanent_parallel(const Matrix& m) {
    require_square(m);
    const int n = static_cast<int>(m.rows());
    if (n < 8)
        return permanent_serial(m);

    const std::uint64_t terms = std::uint64_t{1} << (n - 1);
    // fixed chunk grid keeps the combination order independent of threads
    const std::uint64_t chunks = 256;
    const std::uint64_t per_chunk = terms / chunks;
    std::vector<Complex> partial(chunks);

#pragma omp parallel for schedule(static)
    for (std::int64_t c = 0; c < static_cast<std::int64_t>(chunks); ++c) {
        const std::uint64_t begin = static_cast<std::uint64_t>(c) * per_chunk;
        const std::uint64_t end = c + 1 == static_cast<std::int64_t>(chunks) ? terms : begin + per_chunk;
        partial[static_cast<std::size_t>(c)] = glynn_range(m, begin, end);
    }

    Complex total = 0.0;
    for (const Complex& p : partial)
        total += p;
    return total / static_cast<double>(terms);
}

Complex permanent_naive(const Matrix& m) {
    require_square(m);
    const int n = static_cast<int>(m.rows());
    if (n == 0)
        return 1.0;
    std::vector<int> cols(n);
    for (int i = 0; i < n; ++i)
        cols[i] = i;
    return naive_expand(m, cols, 0);
}

Complex permanent(const Matrix& m) {
    require_square(m);
    if (m.rows() >= PQC_PERMANENT_PARALLEL_CUTOFF)
        return permanent_parallel(m);
    return permanent_serial(m);
}

} // namespace pqc
