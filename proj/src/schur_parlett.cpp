#include "mlmat/schur_parlett.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace mlmat {

std::vector<int> cluster_eigenvalues(std::span<const Complex> eigs, double delta_sep) {
    if (!(delta_sep > 0.0)) throw std::invalid_argument("cluster_eigenvalues: delta_sep <= 0");
    const std::size_t n = eigs.size();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t i) {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (std::abs(eigs[i] - eigs[j]) <= delta_sep) parent[find(i)] = find(j);

    std::vector<int> id(n, -1);
    int next = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t root = find(i);
        if (id[root] < 0) id[root] = next++;
        id[i] = id[root];
    }
    return id;
}

ComplexMatrix BlockedSchur::block(std::size_t i, std::size_t j) const {
    const std::size_t r0 = block_begin(i), r1 = block_end(i);
    const std::size_t c0 = block_begin(j), c1 = block_end(j);
    ComplexMatrix B(r1 - r0, c1 - c0);
    for (std::size_t r = r0; r < r1; ++r)
        for (std::size_t c = c0; c < c1; ++c) B(r - r0, c - c0) = factors.T(r, c);
    return B;
}

BlockedSchur blocked_schur(const ComplexMatrix& A, double delta_sep) {
    BlockedSchur out;
    out.factors = schur_decompose(A);
    const std::size_t n = A.rows();

    std::vector<Complex> eigs(n);
    for (std::size_t i = 0; i < n; ++i) eigs[i] = out.factors.T(i, i);
    std::vector<int> cluster = cluster_eigenvalues(eigs, delta_sep);
    const int q = cluster.empty() ? 0 : 1 + *std::max_element(cluster.begin(), cluster.end());

    // order clusters by mean diagonal position, then bring each into
    // contiguity with adjacent swaps (selection sort on cluster rank)
    std::vector<double> mean_pos(q, 0.0);
    std::vector<int> count(q, 0);
    for (std::size_t i = 0; i < n; ++i) {
        mean_pos[cluster[i]] += double(i);
        ++count[cluster[i]];
    }
    std::vector<int> order(q);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return mean_pos[a] / count[a] < mean_pos[b] / count[b];
    });
    std::vector<int> rank(q);
    for (int r = 0; r < q; ++r) rank[order[r]] = r;

    for (std::size_t pos = 0; pos < n; ++pos) {
        std::size_t best = pos;
        for (std::size_t s = pos + 1; s < n; ++s)
            if (rank[cluster[s]] < rank[cluster[best]]) best = s;
        for (std::size_t k = best; k-- > pos;) {
            swap_adjacent(out.factors, k);
            std::swap(cluster[k], cluster[k + 1]);
        }
    }

    out.cluster_of = cluster;
    for (std::size_t i = 0; i < n; ++i)
        if (i == 0 || cluster[i] != cluster[i - 1]) out.block_starts.push_back(i);
    return out;
}

namespace {

void set_block(ComplexMatrix& F, std::size_t r0, std::size_t c0, const ComplexMatrix& B) {
    for (std::size_t r = 0; r < B.rows(); ++r)
        for (std::size_t c = 0; c < B.cols(); ++c) F(r0 + r, c0 + c) = B(r, c);
}

ComplexMatrix get_block(const ComplexMatrix& M, std::size_t r0, std::size_t r1, std::size_t c0,
                        std::size_t c1) {
    ComplexMatrix B(r1 - r0, c1 - c0);
    for (std::size_t r = r0; r < r1; ++r)
        for (std::size_t c = c0; c < c1; ++c) B(r - r0, c - c0) = M(r, c);
    return B;
}

} // namespace

ComplexMatrix parlett_fill(const BlockedSchur& blocked,
                           const std::vector<ComplexMatrix>& diag_blocks) {
    const std::size_t q = blocked.block_count();
    if (diag_blocks.size() != q)
        throw std::invalid_argument("parlett_fill: one value per diagonal block required");
    const ComplexMatrix& T = blocked.factors.T;
    const std::size_t n = T.rows();

    ComplexMatrix F(n, n);
    for (std::size_t i = 0; i < q; ++i) {
        const std::size_t r0 = blocked.block_begin(i);
        const std::size_t sz = blocked.block_end(i) - r0;
        if (diag_blocks[i].rows() != sz || diag_blocks[i].cols() != sz)
            throw std::invalid_argument("parlett_fill: diagonal block size mismatch");
        set_block(F, r0, r0, diag_blocks[i]);
    }

    auto tblk = [&](std::size_t i, std::size_t j) {
        return get_block(T, blocked.block_begin(i), blocked.block_end(i), blocked.block_begin(j),
                         blocked.block_end(j));
    };
    auto fblk = [&](std::size_t i, std::size_t j) {
        return get_block(F, blocked.block_begin(i), blocked.block_end(i), blocked.block_begin(j),
                         blocked.block_end(j));
    };

    // F_ij T_jj - T_ii F_ij = T_ij F_jj - F_ii T_ij + sum_k (T_ik F_kj - F_ik T_kj)
    for (std::size_t sd = 1; sd < q; ++sd) {
        for (std::size_t i = 0; i + sd < q; ++i) {
            const std::size_t j = i + sd;
            ComplexMatrix P = tblk(i, j) * fblk(j, j) - fblk(i, i) * tblk(i, j);
            for (std::size_t k = i + 1; k < j; ++k)
                P += tblk(i, k) * fblk(k, j) - fblk(i, k) * tblk(k, j);
            const ComplexMatrix X = sylvester_solve_triangular(tblk(j, j), tblk(i, i), P);
            set_block(F, blocked.block_begin(i), blocked.block_begin(j), X);
        }
    }
    return F;
}

ComplexMatrix block2x2_ml(Complex t11, Complex t12, Complex t22, MLParams params) {
    if (std::abs(t11 - t22) <= 1e-8 * std::max({1.0, std::abs(t11), std::abs(t22)}))
        throw ConfluentBlock("2x2 diagonal gap too small for the divided difference");
    const double tol = 1e-14;
    const Complex f11 = ml_scalar(t11, params, tol).value;
    const Complex f22 = ml_scalar(t22, params, tol).value;
    ComplexMatrix F(2, 2);
    F(0, 0) = f11;
    F(1, 1) = f22;
    F(0, 1) = t12 * (f22 - f11) / (t22 - t11);
    return F;
}

} // namespace mlmat
