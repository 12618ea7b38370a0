#include "torslat/fp.hpp"

#include <cassert>
#include <stdexcept>

#include "torslat/errors.hpp"

namespace torslat {

bool is_prime_number(uint32_t p) {
    if (p < 2) return false;
    for (uint32_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

uint32_t fp_inv(uint32_t x, uint32_t p) {
    // extended Euclid
    long long a = x % p, b = p, u = 1, v = 0;
    while (b != 0) {
        long long q = a / b;
        long long t = a - q * b; a = b; b = t;
        t = u - q * v; u = v; v = t;
    }
    assert(a == 1 && "fp_inv of a non-unit");
    long long r = u % (long long)p;
    if (r < 0) r += p;
    return (uint32_t)r;
}

FpMatrix FpMatrix::identity(int n, uint32_t p) {
    FpMatrix m(n, n, p);
    for (int i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
}

FpMatrix FpMatrix::from_rows(std::initializer_list<std::initializer_list<long long>> rows,
                             uint32_t p) {
    int r = (int)rows.size();
    int c = r ? (int)rows.begin()->size() : 0;
    FpMatrix m(r, c, p);
    int i = 0;
    for (auto& row : rows) {
        if ((int)row.size() != c) throw InputError("ragged matrix literal");
        int j = 0;
        for (long long v : row) m.set(i, j++, v);
        ++i;
    }
    return m;
}

void FpMatrix::set(int r, int c, long long v) {
    long long w = v % (long long)p_;
    if (w < 0) w += p_;
    a_[size_t(r) * cols_ + c] = (uint32_t)w;
}

bool FpMatrix::is_zero() const {
    for (uint32_t v : a_)
        if (v) return false;
    return true;
}

bool FpMatrix::operator==(const FpMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && p_ == o.p_ && a_ == o.a_;
}

FpMatrix FpMatrix::transpose() const {
    FpMatrix t(cols_, rows_, p_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) t.set(j, i, (*this)(i, j));
    return t;
}

FpMatrix FpMatrix::mul(const FpMatrix& rhs) const {
    assert(cols_ == rhs.rows_ && p_ == rhs.p_);
    FpMatrix r(rows_, rhs.cols_, p_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            uint64_t v = (*this)(i, k);
            if (!v) continue;
            for (int j = 0; j < rhs.cols_; ++j) {
                uint64_t acc = r(i, j) + v * rhs(k, j);
                r.a_[size_t(i) * r.cols_ + j] = (uint32_t)(acc % p_);
            }
        }
    return r;
}

FpMatrix FpMatrix::add(const FpMatrix& rhs) const {
    assert(rows_ == rhs.rows_ && cols_ == rhs.cols_);
    FpMatrix r(rows_, cols_, p_);
    for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = (a_[k] + rhs.a_[k]) % p_;
    return r;
}

FpMatrix FpMatrix::sub(const FpMatrix& rhs) const {
    assert(rows_ == rhs.rows_ && cols_ == rhs.cols_);
    FpMatrix r(rows_, cols_, p_);
    for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = (a_[k] + p_ - rhs.a_[k]) % p_;
    return r;
}

FpMatrix FpMatrix::scaled(uint32_t c) const {
    FpMatrix r(rows_, cols_, p_);
    for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = (uint32_t)((uint64_t)a_[k] * c % p_);
    return r;
}

FpVec FpMatrix::apply(const FpVec& x) const {
    assert((int)x.size() == cols_);
    FpVec y(rows_, 0);
    for (int i = 0; i < rows_; ++i) {
        uint64_t acc = 0;
        for (int j = 0; j < cols_; ++j) acc += (uint64_t)(*this)(i, j) * x[j];
        y[i] = (uint32_t)(acc % p_);
    }
    return y;
}

FpMatrix FpMatrix::rows_slice(int r0, int r1) const { return block(r0, r1, 0, cols_); }
FpMatrix FpMatrix::cols_slice(int c0, int c1) const { return block(0, rows_, c0, c1); }

FpMatrix FpMatrix::block(int r0, int r1, int c0, int c1) const {
    FpMatrix b(r1 - r0, c1 - c0, p_);
    for (int i = r0; i < r1; ++i)
        for (int j = c0; j < c1; ++j) b.set(i - r0, j - c0, (*this)(i, j));
    return b;
}

void FpMatrix::paste(int r0, int c0, const FpMatrix& b) {
    for (int i = 0; i < b.rows(); ++i)
        for (int j = 0; j < b.cols(); ++j) set(r0 + i, c0 + j, b(i, j));
}

namespace {

struct Echelon {
    FpMatrix r;
    std::vector<int> pivots;  // pivot column per pivot row
};

Echelon rref(const FpMatrix& m) {
    Echelon e{m, {}};
    FpMatrix& r = e.r;
    uint32_t p = m.prime();
    int lead = 0;
    for (int col = 0; col < r.cols() && lead < r.rows(); ++col) {
        int piv = -1;
        for (int i = lead; i < r.rows(); ++i)
            if (r(i, col)) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != lead)
            for (int j = 0; j < r.cols(); ++j) {
                uint32_t t = r(lead, j);
                r.set(lead, j, r(piv, j));
                r.set(piv, j, t);
            }
        uint32_t inv = fp_inv(r(lead, col), p);
        for (int j = 0; j < r.cols(); ++j) r.set(lead, j, (uint64_t)r(lead, j) * inv % p);
        for (int i = 0; i < r.rows(); ++i) {
            if (i == lead) continue;
            uint32_t f = r(i, col);
            if (!f) continue;
            for (int j = 0; j < r.cols(); ++j)
                r.set(i, j, (r(i, j) + (uint64_t)(p - f) * r(lead, j)) % p);
        }
        e.pivots.push_back(col);
        ++lead;
    }
    return e;
}

}  // namespace

int FpMatrix::rank() const { return (int)rref(*this).pivots.size(); }

std::vector<FpVec> FpMatrix::kernel_basis() const {
    Echelon e = rref(*this);
    std::vector<bool> is_pivot(cols_, false);
    for (int c : e.pivots) is_pivot[c] = true;
    std::vector<FpVec> basis;
    for (int fc = 0; fc < cols_; ++fc) {
        if (is_pivot[fc]) continue;
        FpVec v(cols_, 0);
        v[fc] = 1;
        for (size_t pr = 0; pr < e.pivots.size(); ++pr) {
            uint32_t val = e.r(int(pr), fc);
            if (val) v[e.pivots[pr]] = p_ - val;
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<FpVec> FpMatrix::solve(const FpVec& b) const {
    if ((int)b.size() != rows_) throw InputError("solve: dimension mismatch");
    FpMatrix aug(rows_, cols_ + 1, p_);
    aug.paste(0, 0, *this);
    for (int i = 0; i < rows_; ++i) aug.set(i, cols_, b[i]);
    Echelon e = rref(aug);
    FpVec x(cols_, 0);
    for (size_t pr = 0; pr < e.pivots.size(); ++pr) {
        if (e.pivots[pr] == cols_) return std::nullopt;  // pivot in the rhs column
        x[e.pivots[pr]] = e.r(int(pr), cols_);
    }
    return x;
}

std::optional<FpMatrix> FpMatrix::solve_matrix(const FpMatrix& B) const {
    if (B.rows() != rows_) throw InputError("solve_matrix: dimension mismatch");
    FpMatrix aug(rows_, cols_ + B.cols(), p_);
    aug.paste(0, 0, *this);
    aug.paste(0, cols_, B);
    Echelon e = rref(aug);
    FpMatrix x(cols_, B.cols(), p_);
    for (size_t pr = 0; pr < e.pivots.size(); ++pr) {
        if (e.pivots[pr] >= cols_) return std::nullopt;
        for (int j = 0; j < B.cols(); ++j)
            x.set(e.pivots[pr], j, e.r(int(pr), cols_ + j));
    }
    return x;
}

std::optional<FpMatrix> FpMatrix::inverse() const {
    if (rows_ != cols_) return std::nullopt;
    auto x = solve_matrix(identity(rows_, p_));
    return x;
}

FpMatrix FpMatrix::column_space() const {
    Echelon e = rref(transpose());
    FpMatrix out(rows_, (int)e.pivots.size(), p_);
    for (size_t pr = 0; pr < e.pivots.size(); ++pr)
        for (int j = 0; j < rows_; ++j) out.set(j, int(pr), e.r(int(pr), j));
    return out;
}

FpMatrix hstack(const std::vector<FpMatrix>& blocks) {
    int rows = 0, cols = 0;
    uint32_t p = 2;
    for (auto& b : blocks) {
        cols += b.cols();
        rows = b.rows();
        p = b.prime();
    }
    FpMatrix r(rows, cols, p);
    int off = 0;
    for (auto& b : blocks) {
        assert(b.rows() == rows);
        r.paste(0, off, b);
        off += b.cols();
    }
    return r;
}

FpMatrix vstack(const std::vector<FpMatrix>& blocks) {
    int rows = 0, cols = 0;
    uint32_t p = 2;
    for (auto& b : blocks) {
        rows += b.rows();
        cols = b.cols();
        p = b.prime();
    }
    FpMatrix r(rows, cols, p);
    int off = 0;
    for (auto& b : blocks) {
        assert(b.cols() == cols);
        r.paste(off, 0, b);
        off += b.rows();
    }
    return r;
}

FpMatrix matrix_from_columns(const std::vector<FpVec>& cols, int rows, uint32_t p) {
    FpMatrix m(rows, (int)cols.size(), p);
    for (size_t j = 0; j < cols.size(); ++j) {
        assert((int)cols[j].size() == rows);
        for (int i = 0; i < rows; ++i) m.set(i, (int)j, cols[j][i]);
    }
    return m;
}

}  // namespace torslat
