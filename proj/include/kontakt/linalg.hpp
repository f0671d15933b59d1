#pragma once

#include "kontakt/expr.hpp"

#include <optional>
#include <vector>

namespace kontakt {

using Row = std::vector<Expr>;
using Matrix = std::vector<Row>;

// Reduced row echelon form over the fraction field. Pivots are taken in the lowest free
// column; the result is the unique RREF, so it does not depend on the row choice.
struct Rref {
    Matrix rows; // nonzero rows only, pivot entries equal 1
    std::vector<int> pivots;
    // a row without a pivot still had a nonzero entry in the ride-along columns
    bool tail_nonzero = false;
    int rank() const { return static_cast<int>(pivots.size()); }
};

// only the first `ncols` columns are used for pivots (the rest ride along)
Rref rref(Matrix m, int ncols);
int rank(const Matrix &m, int ncols);

// basis of {v : m v = 0}, one vector per free column in increasing order; each vector is
// denominator-cleared, divided by its polynomial content, and monic in its free entry
std::vector<Row> nullspace(const Matrix &m, int ncols);

// clears denominators and content of a vector, making the entry at `lead` monic
Row primitive_vector(const Row &v, int lead);

struct LinearSolution {
    bool consistent = false;
    Row particular;            // free variables set to 0
    std::vector<Row> homogeneous; // nullspace of the coefficient matrix
    bool unique() const { return consistent && homogeneous.empty(); }
};

// solves m x = b
LinearSolution solve(const Matrix &m, int ncols, const Row &b);

// membership tests against a fixed span, reusing one elimination
class SpanReducer {
public:
    SpanReducer(const Matrix &rows, int ncols);
    int rank() const { return r_.rank(); }
    Row reduce(Row v) const;
    bool contains(const Row &v) const;

private:
    Rref r_;
    int ncols_;
};

// rank of the matrix evaluated at a point; exact when no sin/cos/exp occurs, otherwise binary64
// with a relative tolerance. Throws PoleAtPoint.
int rank_at(const Matrix &m, int ncols, const std::vector<Scalar> &point);

} // namespace kontakt
