#ifndef LIELAB_MATRIX_HPP
#define LIELAB_MATRIX_HPP

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "field.hpp"

namespace lielab {

/// Coordinate vector relative to a fixed ordered basis.
template <ExactField F>
using Vec = std::vector<typename F::element>;

template <ExactField F>
Vec<F> zero_vector(const F& f, std::size_t n) {
    return Vec<F>(n, f.zero());
}

template <ExactField F>
Vec<F> unit_vector(const F& f, std::size_t n, std::size_t i) {
    Vec<F> v(n, f.zero());
    v[i] = f.one();
    return v;
}

template <ExactField F>
bool is_zero(const F& f, std::span<const typename F::element> v) {
    for (const auto& x : v)
        if (!f.is_zero(x)) return false;
    return true;
}

template <ExactField F>
bool vec_equal(const F& f, const Vec<F>& a, const Vec<F>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!f.equal(a[i], b[i])) return false;
    return true;
}

template <ExactField F>
Vec<F> vec_add(const F& f, const Vec<F>& a, const Vec<F>& b) {
    Vec<F> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = f.add(a[i], b[i]);
    return r;
}

template <ExactField F>
Vec<F> vec_sub(const F& f, const Vec<F>& a, const Vec<F>& b) {
    Vec<F> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = f.sub(a[i], b[i]);
    return r;
}

template <ExactField F>
Vec<F> vec_scale(const F& f, const typename F::element& c, const Vec<F>& a) {
    Vec<F> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = f.mul(c, a[i]);
    return r;
}

/// y += c * x
template <ExactField F>
void axpy(const F& f, const typename F::element& c, std::span<const typename F::element> x,
          std::span<typename F::element> y) {
    if (f.is_zero(c)) return;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (!f.is_zero(x[i])) y[i] = f.add(y[i], f.mul(c, x[i]));
}

template <ExactField F>
std::string format_vector(const F& f, const Vec<F>& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += f.to_string(v[i]);
    }
    return s + ")";
}

/// Dense row-major matrix over an exact field.
template <ExactField F>
class Matrix {
   public:
    using element = typename F::element;

    Matrix(F field, std::size_t rows, std::size_t cols)
        : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, field_.zero()) {}

    static Matrix identity(const F& f, std::size_t n) {
        Matrix m(f, n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = f.one();
        return m;
    }

    static Matrix from_rows(const F& f, std::size_t cols, const std::vector<Vec<F>>& rows) {
        Matrix m(f, rows.size(), cols);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != cols) throw AmbientMismatch("row length does not match column count");
            std::copy(rows[i].begin(), rows[i].end(), m.data_.begin() + static_cast<std::ptrdiff_t>(i * cols));
        }
        return m;
    }

    /// Matrix whose columns are the given vectors.
    static Matrix from_columns(const F& f, std::size_t rows, const std::vector<Vec<F>>& cols) {
        Matrix m(f, rows, cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j) {
            if (cols[j].size() != rows) throw AmbientMismatch("column length does not match row count");
            for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
        }
        return m;
    }

    const F& field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    element& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const element& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<element> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
    std::span<const element> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
    Vec<F> row_vector(std::size_t i) const { return Vec<F>(row(i).begin(), row(i).end()); }
    Vec<F> column(std::size_t j) const {
        Vec<F> c(rows_);
        for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
        return c;
    }
    const std::vector<element>& data() const { return data_; }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
    }

    bool is_zero() const {
        for (const auto& x : data_)
            if (!field_.is_zero(x)) return false;
        return true;
    }

    Matrix transpose() const {
        Matrix t(field_, cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    Vec<F> apply(const Vec<F>& v) const {
        if (v.size() != cols_) throw AmbientMismatch("vector length does not match matrix columns");
        Vec<F> r(rows_, field_.zero());
        for (std::size_t i = 0; i < rows_; ++i) {
            element acc = field_.zero();
            for (std::size_t j = 0; j < cols_; ++j)
                if (!field_.is_zero(v[j]) && !field_.is_zero((*this)(i, j)))
                    acc = field_.add(acc, field_.mul((*this)(i, j), v[j]));
            r[i] = acc;
        }
        return r;
    }

    /// Flattened row-major entries as one vector (operator-space coordinates).
    Vec<F> flatten() const { return data_; }

    static Matrix unflatten(const F& f, std::size_t rows, std::size_t cols, const Vec<F>& v) {
        Matrix m(f, rows, cols);
        m.data_ = v;
        return m;
    }

    Matrix& operator+=(const Matrix& o) {
        check_same_shape(o);
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] = field_.add(data_[i], o.data_[i]);
        return *this;
    }
    Matrix& operator-=(const Matrix& o) {
        check_same_shape(o);
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] = field_.sub(data_[i], o.data_[i]);
        return *this;
    }
    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }

    Matrix scaled(const element& c) const {
        Matrix r = *this;
        for (auto& x : r.data_) x = field_.mul(c, x);
        return r;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw AmbientMismatch("matrix product shape mismatch");
        const F& f = a.field_;
        Matrix r(f, a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const element& aik = a(i, k);
                if (f.is_zero(aik)) continue;
                axpy<F>(f, aik, b.row(k), r.row(i));
            }
        return r;
    }

    bool operator==(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) return false;
        for (std::size_t i = 0; i < data_.size(); ++i)
            if (!field_.equal(data_[i], o.data_[i])) return false;
        return true;
    }

    /// Stacks rows of `below` underneath this matrix.
    Matrix vstack(const Matrix& below) const {
        if (below.cols_ != cols_) throw AmbientMismatch("vstack column mismatch");
        Matrix r(field_, rows_ + below.rows_, cols_);
        std::copy(data_.begin(), data_.end(), r.data_.begin());
        std::copy(below.data_.begin(), below.data_.end(), r.data_.begin() + static_cast<std::ptrdiff_t>(data_.size()));
        return r;
    }

    Matrix hstack(const Matrix& right) const {
        if (right.rows_ != rows_) throw AmbientMismatch("hstack row mismatch");
        Matrix r(field_, rows_, cols_ + right.cols_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) r(i, j) = (*this)(i, j);
            for (std::size_t j = 0; j < right.cols_; ++j) r(i, cols_ + j) = right(i, j);
        }
        return r;
    }

   private:
    void check_same_shape(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw AmbientMismatch("matrix shape mismatch");
    }

    F field_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<element> data_;
};

template <ExactField F>
Matrix<F> commutator(const Matrix<F>& a, const Matrix<F>& b) {
    return a * b - b * a;
}

template <ExactField F>
Matrix<F> power(const Matrix<F>& m, unsigned k) {
    Matrix<F> r = Matrix<F>::identity(m.field(), m.rows());
    for (unsigned i = 0; i < k; ++i) r = r * m;
    return r;
}

}  // namespace lielab

#endif
