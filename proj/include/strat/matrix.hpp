#pragma once

#include <optional>
#include <vector>

#include "strat/field.hpp"

namespace strat {

/// Dense row-major matrix over a Field. Values are immutable in practice:
/// operations return fresh matrices, so sharing across threads is safe.
class Mat {
public:
    Mat() : field_(Field::prime(2)), rows_(0), cols_(0) {}
    Mat(Field f, int rows, int cols)
        : field_(std::move(f)), rows_(rows), cols_(cols),
          a_(static_cast<size_t>(rows) * cols, 0) {}

    static Mat identity(const Field& f, int n);
    static Mat zero(const Field& f, int r, int c) { return Mat(f, r, c); }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const Field& field() const { return field_; }

    int operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }
    void set(int i, int j, int v) { a_[static_cast<size_t>(i) * cols_ + j] = static_cast<uint8_t>(v); }

    Mat operator*(const Mat& o) const;
    Mat operator+(const Mat& o) const;
    Mat operator-(const Mat& o) const;
    Mat negated() const;
    Mat scaled(int c) const;
    Mat transpose() const;
    Mat pow(int k) const;
    Mat kron(const Mat& o) const;  // index (i_a,i_b) -> i_a*o.rows + i_b
    Mat hcat(const Mat& o) const;
    Mat vcat(const Mat& o) const;
    /// Columns selected by index list.
    Mat cols_selected(const std::vector<int>& idx) const;

    int rank() const;
    /// Columns form a basis of the right null space (width = cols - rank).
    Mat kernel() const;
    /// Any x with (*this) * x = b, or nullopt when inconsistent.
    std::optional<Mat> solve(const Mat& b) const;
    std::optional<Mat> inverse() const;

    /// Row space echelonized in place (returns pivot columns); deterministic
    /// first-nonzero pivoting.
    std::vector<int> echelonize();

    bool is_zero() const;
    bool operator==(const Mat& o) const;
    bool operator!=(const Mat& o) const { return !(*this == o); }

    /// Column j as a rows x 1 matrix.
    Mat col(int j) const;

private:
    Field field_;
    int rows_, cols_;
    std::vector<uint8_t> a_;

    void check_same_field(const Mat& o) const;
};

/// Basis completion: given echelonized generators E (rows spanning a subspace
/// of k^n), return indices of standard basis vectors extending it, scanning in
/// order (deterministic).
std::vector<int> complete_basis(const Mat& echelon_rows, int n);

/// Deterministic basis of the column space.
Mat column_space_basis(const Mat& a);

/// Coordinates on a quotient V/W: W given by a basis matrix in V-coordinates.
/// Projection reduces against the echelonized W and reads off the complement
/// positions; lifting a quotient basis vector gives the standard
/// representative.
struct QuotientCoords {
    Mat reducer;           // RREF rows spanning W
    std::vector<int> piv;  // pivot positions
    std::vector<int> free_pos;
    Field fld = Field::prime(2);
    int ambient = 0;

    void init(const Mat& W, int ambient_dim, const Field& f);
    int dim() const { return static_cast<int>(free_pos.size()); }
    Mat project(const Mat& vec_cols) const;
};

}  // namespace strat
