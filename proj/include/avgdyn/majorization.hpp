#pragma once

// Majorization order, Robin Hood operations and their doubly stochastic
// matrices, random products from the Robin Hood monoid, and seeded sampling
// of the reachable set.

#include <algorithm>
#include <random>

#include "avgdyn/tanks.hpp"

namespace avgdyn::majorization {

using tanks::TransferMatrix;

struct invalid_op_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Moves weight lambda in [0, 1/2] of the gap from richer coordinate j to
// poorer coordinate i; lambda = 1/2 is a full equilibration.
template <class S>
struct RobinHoodOp {
    int i = 0;  // poorer
    int j = 0;  // richer
    S lambda = scalar_from_int<S>(0);
};

template <class S>
void validate_op(const RobinHoodOp<S>& op, int n) {
    if (op.i == op.j) throw invalid_op_error("RobinHoodOp: indices must differ");
    if (op.i < 0 || op.j < 0 || op.i >= n || op.j >= n)
        throw invalid_op_error("RobinHoodOp: index out of range");
    if (op.lambda < scalar_from_int<S>(0) || op.lambda > scalar_ratio<S>(1, 2))
        throw invalid_op_error("RobinHoodOp: lambda outside [0, 1/2]");
}

// Sorted-descending prefix sums of y never exceed those of x, with equal
// totals. Classically equivalent to y = Dx for doubly stochastic D.
template <class S>
bool majorizes(const std::vector<S>& x, const std::vector<S>& y,
               const S& tol = backend_tolerance<S>()) {
    if (x.size() != y.size()) throw tanks::dimension_mismatch_error("majorizes: length mismatch");
    std::vector<S> xs = x, ys = y;
    std::sort(xs.begin(), xs.end(), std::greater<>());
    std::sort(ys.begin(), ys.end(), std::greater<>());
    S px = scalar_from_int<S>(0), py = scalar_from_int<S>(0);
    for (std::size_t k = 0; k < xs.size(); ++k) {
        px += xs[k];
        py += ys[k];
        if (py > px + tol) return false;
    }
    return scalar_abs<S>(px - py) <= tol;
}

// y_i = (1-l)x_i + l*x_j, y_j = l*x_i + (1-l)x_j; requires x_i <= x_j so the
// chain x_i <= y_i <= y_j <= x_j holds.
template <class S>
std::vector<S> apply_robin_hood(std::vector<S> x, const RobinHoodOp<S>& op) {
    validate_op(op, static_cast<int>(x.size()));
    const std::size_t ui = static_cast<std::size_t>(op.i);
    const std::size_t uj = static_cast<std::size_t>(op.j);
    if (x[ui] > x[uj])
        throw invalid_op_error("apply_robin_hood: poorer coordinate is richer (x_i > x_j)");
    const S one = scalar_from_int<S>(1);
    S yi = (one - op.lambda) * x[ui] + op.lambda * x[uj];
    S yj = op.lambda * x[ui] + (one - op.lambda) * x[uj];
    x[ui] = std::move(yi);
    x[uj] = std::move(yj);
    return x;
}

// Identity outside rows/columns {i, j}; the 2x2 block is
// [[1-l, l], [l, 1-l]] with diagonal >= 1/2.
template <class S>
TransferMatrix<S> robin_hood_matrix(const RobinHoodOp<S>& op, int n) {
    validate_op(op, n);
    auto mat = TransferMatrix<S>::identity(n);
    const S one = scalar_from_int<S>(1);
    mat.at(op.i, op.i) = one - op.lambda;
    mat.at(op.j, op.j) = one - op.lambda;
    mat.at(op.i, op.j) = op.lambda;
    mat.at(op.j, op.i) = op.lambda;
    return mat;
}

template <class S>
TransferMatrix<S> matrix_product(const TransferMatrix<S>& a, const TransferMatrix<S>& b) {
    if (a.n != b.n) throw tanks::dimension_mismatch_error("matrix_product: size mismatch");
    TransferMatrix<S> out;
    out.n = a.n;
    out.entries.assign(a.entries.size(), scalar_from_int<S>(0));
    for (int r = 0; r < a.n; ++r)
        for (int k = 0; k < a.n; ++k) {
            const S& ark = a.at(r, k);
            if (ark == scalar_from_int<S>(0)) continue;
            for (int c = 0; c < a.n; ++c) out.at(r, c) += ark * b.at(k, c);
        }
    return out;
}

// Random products of `length` Robin Hood matrices. Every product keeps a
// strictly positive diagonal: each factor has diagonal >= 1/2 and
// (AB)_ii >= A_ii * B_ii.
std::vector<TransferMatrix<double>> monoid_sample(int n, int length, int samples,
                                                  std::mt19937_64& rng);

// Points in R^n with a common coordinate sum, stored flat.
struct PointCloud {
    int dim = 0;
    std::vector<double> data;

    std::size_t size() const { return dim == 0 ? 0 : data.size() / static_cast<std::size_t>(dim); }
    const double* point(std::size_t idx) const {
        return data.data() + idx * static_cast<std::size_t>(dim);
    }
    void push_back(const std::vector<double>& p) { data.insert(data.end(), p.begin(), p.end()); }
};

// Random Robin Hood trajectories from x: each sample applies up to `depth`
// ops (random pair oriented poor/rich, random lambda in [0, 1/2]) and records
// every intermediate point, including x itself. To cover the extreme points
// of the reachable set, lambda is drawn from a mixture that puts an atom on
// the full equilibration lambda = 1/2.
PointCloud sample_reachable(const std::vector<double>& x, int depth, int samples,
                            std::mt19937_64& rng);

}  // namespace avgdyn::majorization
