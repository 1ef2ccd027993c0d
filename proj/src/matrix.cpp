#include "strat/matrix.hpp"

#include <cstring>
#include <stdexcept>

namespace strat {

namespace {

// Packed GF(2) elimination. Rows are bitsets; returns pivot columns.
// Only used when the field is F_2; results (echelon form, pivot choice)
// coincide with the generic path since both scan first-nonzero.
struct Bits {
    int rows = 0, cols = 0, words = 0;
    std::vector<uint64_t> w;
    void load(const std::vector<uint8_t>& a, int r, int c) {
        rows = r;
        cols = c;
        words = (c + 63) / 64;
        w.assign(static_cast<size_t>(r) * words, 0);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j)
                if (a[static_cast<size_t>(i) * c + j])
                    w[static_cast<size_t>(i) * words + (j >> 6)] |= 1ULL << (j & 63);
    }
    int get(int i, int j) const {
        return (w[static_cast<size_t>(i) * words + (j >> 6)] >> (j & 63)) & 1;
    }
    void xor_rows(int dst, int src) {
        uint64_t* d = &w[static_cast<size_t>(dst) * words];
        const uint64_t* s = &w[static_cast<size_t>(src) * words];
        for (int k = 0; k < words; ++k) d[k] ^= s[k];
    }
    void swap_rows(int i, int j) {
        if (i == j) return;
        for (int k = 0; k < words; ++k)
            std::swap(w[static_cast<size_t>(i) * words + k], w[static_cast<size_t>(j) * words + k]);
    }
    std::vector<int> echelonize() {
        std::vector<int> pivots;
        int row = 0;
        for (int col = 0; col < cols && row < rows; ++col) {
            int pr = -1;
            for (int i = row; i < rows; ++i)
                if (get(i, col)) {
                    pr = i;
                    break;
                }
            if (pr < 0) continue;
            swap_rows(row, pr);
            for (int i = 0; i < rows; ++i)
                if (i != row && get(i, col)) xor_rows(i, row);
            pivots.push_back(col);
            ++row;
        }
        return pivots;
    }
    void store(std::vector<uint8_t>& a) const {
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) a[static_cast<size_t>(i) * cols + j] = static_cast<uint8_t>(get(i, j));
    }
};

}  // namespace

Mat Mat::identity(const Field& f, int n) {
    Mat m(f, n, n);
    for (int i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
}

void Mat::check_same_field(const Mat& o) const {
    if (field_ != o.field_) throw std::invalid_argument("matrix field mismatch");
}

Mat Mat::operator*(const Mat& o) const {
    check_same_field(o);
    if (cols_ != o.rows_) throw std::invalid_argument("matrix dimension mismatch in product");
    Mat r(field_, rows_, o.cols_);
    for (int i = 0; i < rows_; ++i) {
        for (int k = 0; k < cols_; ++k) {
            int v = (*this)(i, k);
            if (v == 0) continue;
            for (int j = 0; j < o.cols_; ++j) {
                int w = o(k, j);
                if (w) r.set(i, j, field_.add(r(i, j), field_.mul(v, w)));
            }
        }
    }
    return r;
}

Mat Mat::operator+(const Mat& o) const {
    check_same_field(o);
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix shape mismatch");
    Mat r(field_, rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = static_cast<uint8_t>(field_.add(a_[i], o.a_[i]));
    return r;
}

Mat Mat::operator-(const Mat& o) const {
    check_same_field(o);
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix shape mismatch");
    Mat r(field_, rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = static_cast<uint8_t>(field_.sub(a_[i], o.a_[i]));
    return r;
}

Mat Mat::negated() const {
    Mat r(field_, rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = static_cast<uint8_t>(field_.neg(a_[i]));
    return r;
}

Mat Mat::scaled(int c) const {
    Mat r(field_, rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = static_cast<uint8_t>(field_.mul(a_[i], c));
    return r;
}

Mat Mat::transpose() const {
    Mat r(field_, cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.set(j, i, (*this)(i, j));
    return r;
}

Mat Mat::pow(int k) const {
    if (rows_ != cols_) throw std::invalid_argument("pow of non-square matrix");
    Mat r = identity(field_, rows_);
    Mat b = *this;
    while (k > 0) {
        if (k & 1) r = r * b;
        b = b * b;
        k >>= 1;
    }
    return r;
}

Mat Mat::kron(const Mat& o) const {
    check_same_field(o);
    Mat r(field_, rows_ * o.rows_, cols_ * o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) {
            int v = (*this)(i, j);
            if (v == 0) continue;
            for (int k = 0; k < o.rows_; ++k)
                for (int l = 0; l < o.cols_; ++l) {
                    int w = o(k, l);
                    if (w) r.set(i * o.rows_ + k, j * o.cols_ + l, field_.mul(v, w));
                }
        }
    return r;
}

Mat Mat::hcat(const Mat& o) const {
    check_same_field(o);
    if (rows_ != o.rows_) throw std::invalid_argument("hcat row mismatch");
    Mat r(field_, rows_, cols_ + o.cols_);
    for (int i = 0; i < rows_; ++i) {
        for (int j = 0; j < cols_; ++j) r.set(i, j, (*this)(i, j));
        for (int j = 0; j < o.cols_; ++j) r.set(i, cols_ + j, o(i, j));
    }
    return r;
}

Mat Mat::vcat(const Mat& o) const {
    check_same_field(o);
    if (cols_ != o.cols_) throw std::invalid_argument("vcat col mismatch");
    Mat r(field_, rows_ + o.rows_, cols_);
    std::memcpy(r.a_.data(), a_.data(), a_.size());
    std::memcpy(r.a_.data() + a_.size(), o.a_.data(), o.a_.size());
    return r;
}

Mat Mat::cols_selected(const std::vector<int>& idx) const {
    Mat r(field_, rows_, static_cast<int>(idx.size()));
    for (int i = 0; i < rows_; ++i)
        for (size_t j = 0; j < idx.size(); ++j) r.set(i, static_cast<int>(j), (*this)(i, idx[j]));
    return r;
}

Mat Mat::col(int j) const {
    Mat r(field_, rows_, 1);
    for (int i = 0; i < rows_; ++i) r.set(i, 0, (*this)(i, j));
    return r;
}

std::vector<int> Mat::echelonize() {
    if (field_.size() == 2) {
        Bits b;
        b.load(a_, rows_, cols_);
        auto pivots = b.echelonize();
        b.store(a_);
        return pivots;
    }
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < cols_ && row < rows_; ++col) {
        int pr = -1;
        for (int i = row; i < rows_; ++i)
            if ((*this)(i, col)) {
                pr = i;
                break;
            }
        if (pr < 0) continue;
        if (pr != row)
            for (int j = 0; j < cols_; ++j) {
                int t = (*this)(row, j);
                set(row, j, (*this)(pr, j));
                set(pr, j, t);
            }
        int piv = (*this)(row, col);
        if (piv != 1) {
            int pinv = field_.inv(piv);
            for (int j = 0; j < cols_; ++j) set(row, j, field_.mul((*this)(row, j), pinv));
        }
        for (int i = 0; i < rows_; ++i) {
            if (i == row) continue;
            int c = (*this)(i, col);
            if (c == 0) continue;
            const uint8_t* src = &a_[static_cast<size_t>(row) * cols_];
            uint8_t* dst = &a_[static_cast<size_t>(i) * cols_];
            for (int j = col; j < cols_; ++j) dst[j] = static_cast<uint8_t>(field_.submul(dst[j], c, src[j]));
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

int Mat::rank() const {
    Mat tmp = *this;
    return static_cast<int>(tmp.echelonize().size());
}

Mat Mat::kernel() const {
    Mat tmp = *this;
    std::vector<int> pivots = tmp.echelonize();
    std::vector<bool> is_pivot(cols_, false);
    for (int c : pivots) is_pivot[c] = true;
    int nk = cols_ - static_cast<int>(pivots.size());
    Mat k(field_, cols_, nk);
    int col_out = 0;
    for (int free_col = 0; free_col < cols_; ++free_col) {
        if (is_pivot[free_col]) continue;
        k.set(free_col, col_out, 1);
        for (size_t pi = 0; pi < pivots.size(); ++pi) {
            int v = tmp(static_cast<int>(pi), free_col);
            if (v) k.set(pivots[pi], col_out, field_.neg(v));
        }
        ++col_out;
    }
    return k;
}

std::optional<Mat> Mat::solve(const Mat& b) const {
    check_same_field(b);
    if (rows_ != b.rows_) throw std::invalid_argument("solve: rhs row mismatch");
    Mat aug = hcat(b);
    std::vector<int> pivots = aug.echelonize();
    // any pivot in the rhs block means inconsistency
    for (int c : pivots)
        if (c >= cols_) return std::nullopt;
    Mat x(field_, cols_, b.cols_);
    for (size_t pi = 0; pi < pivots.size(); ++pi)
        for (int j = 0; j < b.cols_; ++j) x.set(pivots[pi], j, aug(static_cast<int>(pi), cols_ + j));
    return x;
}

std::optional<Mat> Mat::inverse() const {
    if (rows_ != cols_) return std::nullopt;
    return solve(identity(field_, rows_));
}

bool Mat::is_zero() const {
    for (uint8_t v : a_)
        if (v) return false;
    return true;
}

bool Mat::operator==(const Mat& o) const {
    return field_ == o.field_ && rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
}

std::vector<int> complete_basis(const Mat& echelon_rows, int n) {
    std::vector<bool> is_pivot(n, false);
    {
        Mat tmp = echelon_rows;
        for (int c : tmp.echelonize()) is_pivot[c] = true;
    }
    std::vector<int> extra;
    for (int j = 0; j < n; ++j)
        if (!is_pivot[j]) extra.push_back(j);
    return extra;
}

Mat column_space_basis(const Mat& a) {
    Mat e = a.transpose();
    std::vector<int> piv = e.echelonize();
    Mat out(a.field(), a.rows(), static_cast<int>(piv.size()));
    for (size_t i = 0; i < piv.size(); ++i)
        for (int j = 0; j < a.rows(); ++j) out.set(j, static_cast<int>(i), e(static_cast<int>(i), j));
    return out;
}

void QuotientCoords::init(const Mat& W, int ambient_dim, const Field& f) {
    fld = f;
    ambient = ambient_dim;
    Mat e = W.transpose();
    piv = e.echelonize();
    Mat rows(f, static_cast<int>(piv.size()), ambient_dim);
    for (size_t i = 0; i < piv.size(); ++i)
        for (int j = 0; j < ambient_dim; ++j)
            rows.set(static_cast<int>(i), j, e(static_cast<int>(i), j));
    reducer = rows;
    std::vector<bool> isp(ambient_dim, false);
    for (int c : piv) isp[c] = true;
    free_pos.clear();
    for (int j = 0; j < ambient_dim; ++j)
        if (!isp[j]) free_pos.push_back(j);
}

Mat QuotientCoords::project(const Mat& vec_cols) const {
    Mat out(fld, dim(), vec_cols.cols());
    std::vector<int> v(ambient);
    for (int c = 0; c < vec_cols.cols(); ++c) {
        for (int i = 0; i < ambient; ++i) v[i] = vec_cols(i, c);
        for (size_t r = 0; r < piv.size(); ++r) {
            int coef = v[piv[r]];
            if (!coef) continue;
            for (int j = 0; j < ambient; ++j)
                v[j] = fld.submul(v[j], coef, reducer(static_cast<int>(r), j));
        }
        for (int i = 0; i < dim(); ++i) out.set(i, c, v[free_pos[i]]);
    }
    return out;
}

}  // namespace strat
