#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "codeint/field_poly.hpp"

namespace codeint {

// Dense row-major matrix over a prime field. Desk-scale Gaussian
// elimination; no pivoting tricks needed since every nonzero is invertible.
class MatFp {
  public:
    MatFp(PrimeField field, std::size_t rows, std::size_t cols)
        : field_(field), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

    const PrimeField& field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    FieldElem& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    FieldElem at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    // Reduced row echelon form in place; returns pivot column per pivot row.
    std::vector<std::size_t> rref() {
        std::vector<std::size_t> pivots;
        std::size_t row = 0;
        for (std::size_t col = 0; col < cols_ && row < rows_; ++col) {
            std::size_t sel = row;
            while (sel < rows_ && at(sel, col) == 0) ++sel;
            if (sel == rows_) continue;
            if (sel != row)
                for (std::size_t c = 0; c < cols_; ++c) std::swap(at(sel, c), at(row, c));
            const FieldElem inv = field_.inv(at(row, col));
            for (std::size_t c = col; c < cols_; ++c) at(row, c) = field_.mul(at(row, c), inv);
            for (std::size_t r = 0; r < rows_; ++r) {
                if (r == row || at(r, col) == 0) continue;
                const FieldElem factor = at(r, col);
                for (std::size_t c = col; c < cols_; ++c)
                    at(r, c) = field_.sub(at(r, c), field_.mul(factor, at(row, c)));
            }
            pivots.push_back(col);
            ++row;
        }
        return pivots;
    }

    std::size_t rank() const {
        MatFp tmp(*this);
        return tmp.rref().size();
    }

    // Basis of {x : M x = 0}, one vector per row of the result.
    MatFp null_space() const {
        MatFp tmp(*this);
        const auto pivots = tmp.rref();
        std::vector<bool> is_pivot(cols_, false);
        for (auto c : pivots) is_pivot[c] = true;
        std::vector<std::size_t> free_cols;
        for (std::size_t c = 0; c < cols_; ++c)
            if (!is_pivot[c]) free_cols.push_back(c);
        MatFp basis(field_, free_cols.size(), cols_);
        for (std::size_t k = 0; k < free_cols.size(); ++k) {
            basis.at(k, free_cols[k]) = 1;
            for (std::size_t r = 0; r < pivots.size(); ++r)
                basis.at(k, pivots[r]) = field_.neg(tmp.at(r, free_cols[k]));
        }
        return basis;
    }

    // Some nonzero kernel vector, or nullopt when the map is injective.
    std::optional<std::vector<FieldElem>> null_vector() const {
        MatFp basis = null_space();
        if (basis.rows() == 0) return std::nullopt;
        std::vector<FieldElem> v(cols_);
        for (std::size_t c = 0; c < cols_; ++c) v[c] = basis.at(0, c);
        return v;
    }

    std::optional<MatFp> inverse() const {
        if (rows_ != cols_) throw std::invalid_argument("MatFp: inverse of non-square matrix");
        MatFp aug(field_, rows_, 2 * cols_);
        for (std::size_t r = 0; r < rows_; ++r) {
            for (std::size_t c = 0; c < cols_; ++c) aug.at(r, c) = at(r, c);
            aug.at(r, cols_ + r) = 1;
        }
        const auto pivots = aug.rref();
        if (pivots.size() != rows_) return std::nullopt;
        for (std::size_t r = 0; r < rows_; ++r)
            if (pivots[r] != r) return std::nullopt;
        MatFp inv(field_, rows_, cols_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) inv.at(r, c) = aug.at(r, cols_ + c);
        return inv;
    }

    FieldElem determinant() const {
        if (rows_ != cols_) throw std::invalid_argument("MatFp: determinant of non-square matrix");
        MatFp tmp(*this);
        FieldElem det = 1;
        for (std::size_t col = 0; col < cols_; ++col) {
            std::size_t sel = col;
            while (sel < rows_ && tmp.at(sel, col) == 0) ++sel;
            if (sel == rows_) return 0;
            if (sel != col) {
                for (std::size_t c = 0; c < cols_; ++c) std::swap(tmp.at(sel, c), tmp.at(col, c));
                det = field_.neg(det);
            }
            det = field_.mul(det, tmp.at(col, col));
            const FieldElem inv = field_.inv(tmp.at(col, col));
            for (std::size_t r = col + 1; r < rows_; ++r) {
                if (tmp.at(r, col) == 0) continue;
                const FieldElem factor = field_.mul(tmp.at(r, col), inv);
                for (std::size_t c = col; c < cols_; ++c)
                    tmp.at(r, c) = field_.sub(tmp.at(r, c), field_.mul(factor, tmp.at(col, c)));
            }
        }
        return det;
    }

    std::vector<FieldElem> mul_vec(const std::vector<FieldElem>& v) const {
        if (v.size() != cols_) throw std::invalid_argument("MatFp: vector size mismatch");
        std::vector<FieldElem> out(rows_, 0);
        for (std::size_t r = 0; r < rows_; ++r) {
            FieldElem acc = 0;
            for (std::size_t c = 0; c < cols_; ++c)
                acc = field_.add(acc, field_.mul(at(r, c), v[c]));
            out[r] = acc;
        }
        return out;
    }

    static MatFp vstack(const MatFp& a, const MatFp& b) {
        if (a.cols() != b.cols()) throw std::invalid_argument("MatFp: vstack column mismatch");
        MatFp out(a.field_, a.rows() + b.rows(), a.cols());
        for (std::size_t r = 0; r < a.rows(); ++r)
            for (std::size_t c = 0; c < a.cols(); ++c) out.at(r, c) = a.at(r, c);
        for (std::size_t r = 0; r < b.rows(); ++r)
            for (std::size_t c = 0; c < b.cols(); ++c) out.at(a.rows() + r, c) = b.at(r, c);
        return out;
    }

    // Row spaces compared by rank of the stacked matrix.
    static bool same_row_space(const MatFp& a, const MatFp& b) {
        const std::size_t ra = a.rank(), rb = b.rank();
        if (ra != rb) return false;
        return vstack(a, b).rank() == ra;
    }

  private:
    PrimeField field_;
    std::size_t rows_, cols_;
    std::vector<FieldElem> data_;
};

}  // namespace codeint
