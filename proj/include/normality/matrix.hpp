#ifndef NORMALITY_MATRIX_HPP
#define NORMALITY_MATRIX_HPP

#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "rational.hpp"

namespace normality {

enum class Orientation { row, column };

/// Dense vector of rationals tagged as a row or a column.
class RVector {
public:
    RVector() = default;
    explicit RVector(std::size_t n, Orientation o = Orientation::column, const Rational& fill = 0)
        : entries_(n, fill), orientation_(o) {}
    RVector(std::vector<Rational> entries, Orientation o)
        : entries_(std::move(entries)), orientation_(o) {}
    RVector(std::initializer_list<Rational> init, Orientation o = Orientation::column)
        : entries_(init), orientation_(o) {}

    static RVector ones(std::size_t n, Orientation o) { return RVector(n, o, Rational(1)); }

    std::size_t size() const noexcept { return entries_.size(); }
    Orientation orientation() const noexcept { return orientation_; }
    const std::vector<Rational>& entries() const noexcept { return entries_; }

    Rational& operator[](std::size_t i) { return entries_[i]; }
    const Rational& operator[](std::size_t i) const { return entries_[i]; }

    auto begin() const { return entries_.begin(); }
    auto end() const { return entries_.end(); }

    RVector transposed() const {
        return RVector(entries_, orientation_ == Orientation::row ? Orientation::column
                                                                  : Orientation::row);
    }

    Rational sum() const {
        Rational s = 0;
        for (const auto& x : entries_)
            s += x;
        return s;
    }

    bool is_zero() const {
        for (const auto& x : entries_)
            if (x != 0)
                return false;
        return true;
    }

    RVector& operator*=(const Rational& k) {
        for (auto& x : entries_)
            x *= k;
        return *this;
    }
    RVector& operator/=(const Rational& k) {
        for (auto& x : entries_)
            x /= k;
        return *this;
    }

    /// Equality ignores orientation; only the entries are compared.
    friend bool operator==(const RVector& a, const RVector& b) { return a.entries_ == b.entries_; }

private:
    std::vector<Rational> entries_;
    Orientation orientation_ = Orientation::column;
};

inline RVector operator*(RVector v, const Rational& k) { return v *= k; }
inline RVector operator*(const Rational& k, RVector v) { return v *= k; }

inline RVector operator+(const RVector& a, const RVector& b) {
    if (a.size() != b.size())
        throw dimension_error("vector sizes differ");
    RVector r = a;
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] += b[i];
    return r;
}

inline RVector operator-(const RVector& a, const RVector& b) {
    if (a.size() != b.size())
        throw dimension_error("vector sizes differ");
    RVector r = a;
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] -= b[i];
    return r;
}

inline Rational dot(const RVector& a, const RVector& b) {
    if (a.size() != b.size())
        throw dimension_error("vector sizes differ");
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

/// Dense row-major matrix of rationals.
class RMatrix {
public:
    RMatrix() = default;
    RMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    RMatrix(std::initializer_list<std::initializer_list<Rational>> init) {
        rows_ = init.size();
        cols_ = rows_ == 0 ? 0 : init.begin()->size();
        data_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_)
                throw dimension_error("ragged matrix initializer");
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }

    static RMatrix identity(std::size_t n) {
        RMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = 1;
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }

    Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    RVector row(std::size_t i) const {
        return RVector(std::vector<Rational>(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                                             data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_)),
                       Orientation::row);
    }

    RVector col(std::size_t j) const {
        RVector v(rows_, Orientation::column);
        for (std::size_t i = 0; i < rows_; ++i)
            v[i] = (*this)(i, j);
        return v;
    }

    Rational row_sum(std::size_t i) const {
        Rational s = 0;
        for (std::size_t j = 0; j < cols_; ++j)
            s += (*this)(i, j);
        return s;
    }

    RMatrix transposed() const {
        RMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                t(j, i) = (*this)(i, j);
        return t;
    }

    bool is_zero() const {
        for (const auto& x : data_)
            if (x != 0)
                return false;
        return true;
    }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b)
            return;
        for (std::size_t j = 0; j < cols_; ++j)
            std::swap((*this)(a, j), (*this)(b, j));
    }

    RMatrix& operator+=(const RMatrix& o) {
        require_same_shape(o);
        for (std::size_t k = 0; k < data_.size(); ++k)
            data_[k] += o.data_[k];
        return *this;
    }
    RMatrix& operator-=(const RMatrix& o) {
        require_same_shape(o);
        for (std::size_t k = 0; k < data_.size(); ++k)
            data_[k] -= o.data_[k];
        return *this;
    }
    RMatrix& operator*=(const Rational& k) {
        for (auto& x : data_)
            x *= k;
        return *this;
    }

    friend bool operator==(const RMatrix& a, const RMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    void require_same_shape(const RMatrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw dimension_error("matrix shapes differ");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

inline RMatrix operator+(RMatrix a, const RMatrix& b) { return a += b; }
inline RMatrix operator-(RMatrix a, const RMatrix& b) { return a -= b; }
inline RMatrix operator*(RMatrix a, const Rational& k) { return a *= k; }
inline RMatrix operator*(const Rational& k, RMatrix a) { return a *= k; }

inline RMatrix operator*(const RMatrix& a, const RMatrix& b) {
    if (a.cols() != b.rows())
        throw dimension_error("matrix product: inner dimensions differ");
    RMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Rational& aik = a(i, k);
            if (aik == 0)
                continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                c(i, j) += aik * b(k, j);
        }
    return c;
}

/// Row vector times matrix.
inline RVector operator*(const RVector& v, const RMatrix& m) {
    if (v.size() != m.rows())
        throw dimension_error("vector-matrix product: sizes differ");
    RVector r(m.cols(), Orientation::row);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (v[i] == 0)
            continue;
        for (std::size_t j = 0; j < m.cols(); ++j)
            r[j] += v[i] * m(i, j);
    }
    return r;
}

/// Matrix times column vector.
inline RVector operator*(const RMatrix& m, const RVector& v) {
    if (v.size() != m.cols())
        throw dimension_error("matrix-vector product: sizes differ");
    RVector r(m.rows(), Orientation::column);
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            r[i] += m(i, j) * v[j];
    return r;
}

inline std::ostream& operator<<(std::ostream& os, const RVector& v) {
    os << '(';
    for (std::size_t i = 0; i < v.size(); ++i)
        os << (i ? ", " : "") << format_rational(v[i]);
    return os << ')';
}

inline std::ostream& operator<<(std::ostream& os, const RMatrix& m) {
    os << '[';
    for (std::size_t i = 0; i < m.rows(); ++i) {
        os << (i ? ", [" : "[");
        for (std::size_t j = 0; j < m.cols(); ++j)
            os << (j ? ", " : "") << format_rational(m(i, j));
        os << ']';
    }
    return os << ']';
}

} // namespace normality

#endif // NORMALITY_MATRIX_HPP
