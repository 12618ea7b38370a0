#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <vector>

namespace torslat {

using FpVec = std::vector<uint32_t>;

uint32_t fp_inv(uint32_t x, uint32_t p);
bool is_prime_number(uint32_t p);

// Dense matrix over the prime field F_p; entries are kept reduced into
// [0, p). Elimination always pivots on the first usable row of the leftmost
// unfinished column, so ranks, kernels and solutions are reproducible bit
// for bit across runs.
class FpMatrix {
public:
    FpMatrix() = default;
    FpMatrix(int rows, int cols, uint32_t p)
        : rows_(rows), cols_(cols), p_(p), a_(size_t(rows) * size_t(cols), 0) {}

    static FpMatrix identity(int n, uint32_t p);
    static FpMatrix from_rows(std::initializer_list<std::initializer_list<long long>> rows,
                              uint32_t p);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    uint32_t prime() const { return p_; }

    uint32_t operator()(int r, int c) const { return a_[size_t(r) * cols_ + c]; }
    void set(int r, int c, long long v);

    bool is_zero() const;
    bool operator==(const FpMatrix& o) const;

    FpMatrix transpose() const;
    FpMatrix mul(const FpMatrix& rhs) const;
    FpMatrix add(const FpMatrix& rhs) const;
    FpMatrix sub(const FpMatrix& rhs) const;
    FpMatrix scaled(uint32_t c) const;

    FpVec apply(const FpVec& x) const;

    FpMatrix rows_slice(int r0, int r1) const;  // [r0, r1)
    FpMatrix cols_slice(int c0, int c1) const;  // [c0, c1)
    FpMatrix block(int r0, int r1, int c0, int c1) const;
    void paste(int r0, int c0, const FpMatrix& b);

    int rank() const;
    // Basis of the right null space, as column vectors; size cols - rank.
    std::vector<FpVec> kernel_basis() const;
    // Some x with A x = b, or nullopt when the system is inconsistent.
    std::optional<FpVec> solve(const FpVec& b) const;
    // X with A X = B, columnwise.
    std::optional<FpMatrix> solve_matrix(const FpMatrix& B) const;
    std::optional<FpMatrix> inverse() const;

    // Canonical basis of the column span (reduced echelon applied to the
    // transpose); equal column spans give equal matrices.
    FpMatrix column_space() const;

private:
    int rows_ = 0, cols_ = 0;
    uint32_t p_ = 0;
    std::vector<uint32_t> a_;

    friend FpMatrix hstack(const std::vector<FpMatrix>& blocks);
    friend FpMatrix vstack(const std::vector<FpMatrix>& blocks);
};

FpMatrix hstack(const std::vector<FpMatrix>& blocks);
FpMatrix vstack(const std::vector<FpMatrix>& blocks);
FpMatrix matrix_from_columns(const std::vector<FpVec>& cols, int rows, uint32_t p);

}  // namespace torslat
