#pragma once

#include <array>
#include <cassert>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace geotherm::num {

/// Small dense row-major matrix over T (double or std::complex<double>).
/// Dimensions in this library never exceed ~16, so everything is O(n^3)
/// without blocking and entries are stored in a flat std::vector.
template <typename T>
class MatrixT {
public:
    MatrixT() = default;
    MatrixT(std::size_t rows, std::size_t cols, T value = T{})
        : rows_(rows), cols_(cols), a_(rows * cols, value) {}

    MatrixT(std::initializer_list<std::initializer_list<T>> init) {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        a_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            assert(row.size() == cols_);
            for (const T& v : row) a_.push_back(v);
        }
    }

    static MatrixT identity(std::size_t n) {
        MatrixT m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    T& operator()(std::size_t i, std::size_t j) {
        assert(i < rows_ && j < cols_);
        return a_[i * cols_ + j];
    }
    const T& operator()(std::size_t i, std::size_t j) const {
        assert(i < rows_ && j < cols_);
        return a_[i * cols_ + j];
    }

    MatrixT transposed() const {
        MatrixT r(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }

    MatrixT& operator+=(const MatrixT& o) {
        assert(rows_ == o.rows_ && cols_ == o.cols_);
        for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
        return *this;
    }
    MatrixT& operator-=(const MatrixT& o) {
        assert(rows_ == o.rows_ && cols_ == o.cols_);
        for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
        return *this;
    }
    MatrixT& operator*=(T s) {
        for (T& v : a_) v *= s;
        return *this;
    }

    friend MatrixT operator+(MatrixT a, const MatrixT& b) { return a += b; }
    friend MatrixT operator-(MatrixT a, const MatrixT& b) { return a -= b; }
    friend MatrixT operator*(MatrixT a, T s) { return a *= s; }
    friend MatrixT operator*(T s, MatrixT a) { return a *= s; }

    friend MatrixT operator*(const MatrixT& a, const MatrixT& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product dimension mismatch");
        MatrixT r(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const T aik = a(i, k);
                if (aik == T{}) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) += aik * b(k, j);
            }
        return r;
    }

    std::vector<T> operator*(const std::vector<T>& x) const {
        if (cols_ != x.size()) throw std::invalid_argument("matrix-vector dimension mismatch");
        std::vector<T> y(rows_, T{});
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) y[i] += (*this)(i, j) * x[j];
        return y;
    }

    const std::vector<T>& data() const { return a_; }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<T> a_;
};

using Matrix = MatrixT<double>;
using MatrixC = MatrixT<std::complex<double>>;
using Vec = std::vector<double>;

template <typename T>
MatrixT<T> commutator(const MatrixT<T>& a, const MatrixT<T>& b) {
    return a * b - b * a;
}

template <typename T>
T trace(const MatrixT<T>& m) {
    assert(m.rows() == m.cols());
    T t{};
    for (std::size_t i = 0; i < m.rows(); ++i) t += m(i, i);
    return t;
}

inline double max_abs(const Matrix& m) {
    double r = 0;
    for (double v : m.data()) r = std::max(r, std::abs(v));
    return r;
}

inline double max_abs(const Vec& v) {
    double r = 0;
    for (double x : v) r = std::max(r, std::abs(x));
    return r;
}

inline double dot(const Vec& a, const Vec& b) {
    assert(a.size() == b.size());
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

/// LU decomposition with partial pivoting; solve and inverse for small systems.
template <typename T>
class LuT {
public:
    explicit LuT(MatrixT<T> m) : lu_(std::move(m)), piv_(lu_.rows()) {
        const std::size_t n = lu_.rows();
        if (n != lu_.cols()) throw std::invalid_argument("LU needs a square matrix");
        for (std::size_t i = 0; i < n; ++i) piv_[i] = i;
        for (std::size_t k = 0; k < n; ++k) {
            std::size_t p = k;
            double best = std::abs(lu_(k, k));
            for (std::size_t i = k + 1; i < n; ++i)
                if (std::abs(lu_(i, k)) > best) { best = std::abs(lu_(i, k)); p = i; }
            if (best == 0.0) throw std::runtime_error("singular matrix in LU");
            if (p != k) {
                for (std::size_t j = 0; j < n; ++j) std::swap(lu_(k, j), lu_(p, j));
                std::swap(piv_[k], piv_[p]);
                sign_ = -sign_;
            }
            for (std::size_t i = k + 1; i < n; ++i) {
                lu_(i, k) = lu_(i, k) / lu_(k, k);
                for (std::size_t j = k + 1; j < n; ++j) lu_(i, j) -= lu_(i, k) * lu_(k, j);
            }
        }
    }

    std::vector<T> solve(const std::vector<T>& b) const {
        const std::size_t n = lu_.rows();
        std::vector<T> x(n);
        for (std::size_t i = 0; i < n; ++i) x[i] = b[piv_[i]];
        for (std::size_t i = 1; i < n; ++i)
            for (std::size_t j = 0; j < i; ++j) x[i] -= lu_(i, j) * x[j];
        for (std::size_t i = n; i-- > 0;) {
            for (std::size_t j = i + 1; j < n; ++j) x[i] -= lu_(i, j) * x[j];
            x[i] = x[i] / lu_(i, i);
        }
        return x;
    }

    MatrixT<T> inverse() const {
        const std::size_t n = lu_.rows();
        MatrixT<T> inv(n, n);
        std::vector<T> e(n, T{});
        for (std::size_t j = 0; j < n; ++j) {
            e.assign(n, T{});
            e[j] = T(1);
            auto col = solve(e);
            for (std::size_t i = 0; i < n; ++i) inv(i, j) = col[i];
        }
        return inv;
    }

    T det() const {
        T d = T(sign_);
        for (std::size_t i = 0; i < lu_.rows(); ++i) d *= lu_(i, i);
        return d;
    }

private:
    MatrixT<T> lu_;
    std::vector<std::size_t> piv_;
    double sign_ = 1.0;
};

template <typename T>
MatrixT<T> inverse(const MatrixT<T>& m) {
    return LuT<T>(m).inverse();
}

template <typename T>
T determinant(const MatrixT<T>& m) {
    return LuT<T>(m).det();
}

/// Pfaffian of an antisymmetric matrix of even dimension, via recursive expansion
/// along the first row (dimensions here are at most 8).
double pfaffian(const Matrix& m);

/// Matrix exponential by scaling-and-squaring on the Taylor series.
Matrix expm(const Matrix& m);

/// Least-squares expansion coefficients c with sum_k c_k basis_k ~ target, using
/// normal equations on flattened matrices. Returns the residual max-norm through *residual.
Vec expand_in_basis(const Matrix& target, const std::vector<Matrix>& basis,
                    double* residual = nullptr);

}  // namespace geotherm::num
