// Copyright 2026 The resonance Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file
 * Dense complex linear algebra for small Hilbert spaces: matrices, state
 * vectors, Kronecker products, a cyclic Jacobi Hermitian eigensolver and
 * spectral exponentials.
 *
 * Everything is templated on the real scalar so that long products (Trotter
 * powers) can be accumulated in extended precision. The `Matrix` and
 * `StateVector` aliases are the double-precision types used elsewhere.
 */
#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdlib>
#include <cstring>
#include <limits>
#include <numeric>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "resonance/error.hpp"

namespace resonance {

/**
 * @brief Largest matrix dimension any builder may produce.
 *
 * Defaults to 2^14 and can be overridden with the `RESONANCE_MAX_DIM`
 * environment variable.
 */
inline std::size_t max_dimension() {
    constexpr std::size_t fallback = std::size_t{1} << 14;
    const char *env = std::getenv("RESONANCE_MAX_DIM");
    if (env == nullptr) {
        return fallback;
    }
    std::size_t value = 0;
    const char *end = env + std::strlen(env);
    auto [ptr, ec] = std::from_chars(env, end, value);
    if (ec != std::errc{} || ptr != end || value == 0) {
        return fallback;
    }
    return value;
}

inline void check_dimension(std::size_t dim, const char *what) {
    if (dim > max_dimension()) {
        std::ostringstream msg;
        msg << what << ": dimension " << dim << " exceeds the maximum "
            << max_dimension() << " (set RESONANCE_MAX_DIM to raise it)";
        throw SizeError(msg.str());
    }
}

constexpr bool is_power_of_two(std::size_t n) {
    return n != 0 && (n & (n - 1)) == 0;
}

template <class Real> class BasicMatrix {
  public:
    using real_type = Real;
    using value_type = std::complex<Real>;

    BasicMatrix() = default;
    BasicMatrix(std::size_t rows, std::size_t cols)
        : rows_{rows}, cols_{cols}, data_(rows * cols) {}
    BasicMatrix(std::size_t rows, std::size_t cols,
                std::vector<value_type> data)
        : rows_{rows}, cols_{cols}, data_{std::move(data)} {
        if (data_.size() != rows_ * cols_) {
            throw ValidationError("matrix data length does not match shape");
        }
    }

    static BasicMatrix identity(std::size_t n) {
        BasicMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            m(i, i) = Real{1};
        }
        return m;
    }

    static BasicMatrix diagonal(std::span<const Real> d) {
        BasicMatrix m(d.size(), d.size());
        for (std::size_t i = 0; i < d.size(); ++i) {
            m(i, i) = d[i];
        }
        return m;
    }

    [[nodiscard]] std::size_t rows() const { return rows_; }
    [[nodiscard]] std::size_t cols() const { return cols_; }
    [[nodiscard]] bool is_square() const { return rows_ == cols_; }

    value_type &operator()(std::size_t i, std::size_t j) {
        return data_[i * cols_ + j];
    }
    const value_type &operator()(std::size_t i, std::size_t j) const {
        return data_[i * cols_ + j];
    }

    [[nodiscard]] std::span<const value_type> data() const { return data_; }
    [[nodiscard]] std::span<value_type> data() { return data_; }

    template <class Other> [[nodiscard]] BasicMatrix<Other> cast() const {
        std::vector<std::complex<Other>> out(data_.size());
        std::transform(data_.begin(), data_.end(), out.begin(),
                       [](const value_type &z) {
                           return std::complex<Other>(
                               static_cast<Other>(z.real()),
                               static_cast<Other>(z.imag()));
                       });
        return BasicMatrix<Other>(rows_, cols_, std::move(out));
    }

    BasicMatrix &operator+=(const BasicMatrix &o) {
        require_same_shape(o);
        for (std::size_t k = 0; k < data_.size(); ++k) {
            data_[k] += o.data_[k];
        }
        return *this;
    }
    BasicMatrix &operator-=(const BasicMatrix &o) {
        require_same_shape(o);
        for (std::size_t k = 0; k < data_.size(); ++k) {
            data_[k] -= o.data_[k];
        }
        return *this;
    }
    BasicMatrix &operator*=(value_type s) {
        for (auto &z : data_) {
            z *= s;
        }
        return *this;
    }

    friend bool operator==(const BasicMatrix &, const BasicMatrix &) = default;

  private:
    void require_same_shape(const BasicMatrix &o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) {
            throw ValidationError("matrix shapes differ");
        }
    }

    std::size_t rows_{0};
    std::size_t cols_{0};
    std::vector<value_type> data_;
};

template <class Real>
BasicMatrix<Real> operator+(BasicMatrix<Real> a, const BasicMatrix<Real> &b) {
    a += b;
    return a;
}

template <class Real>
BasicMatrix<Real> operator-(BasicMatrix<Real> a, const BasicMatrix<Real> &b) {
    a -= b;
    return a;
}

template <class Real>
BasicMatrix<Real> operator*(std::complex<Real> s, BasicMatrix<Real> a) {
    a *= s;
    return a;
}

template <class Real>
BasicMatrix<Real> operator*(Real s, BasicMatrix<Real> a) {
    a *= std::complex<Real>(s);
    return a;
}

template <class Real>
BasicMatrix<Real> operator*(const BasicMatrix<Real> &a,
                            const BasicMatrix<Real> &b) {
    if (a.cols() != b.rows()) {
        throw ValidationError("matrix product: inner dimensions differ");
    }
    BasicMatrix<Real> c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const auto aik = a(i, k);
            if (aik == std::complex<Real>{}) {
                continue;
            }
            for (std::size_t j = 0; j < b.cols(); ++j) {
                c(i, j) += aik * b(k, j);
            }
        }
    }
    return c;
}

template <class Real> BasicMatrix<Real> adjoint(const BasicMatrix<Real> &a) {
    BasicMatrix<Real> t(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            t(j, i) = std::conj(a(i, j));
        }
    }
    return t;
}

/// (a + a†)/2; exact for inputs that are already Hermitian.
template <class Real>
BasicMatrix<Real> hermitian_part(const BasicMatrix<Real> &a) {
    BasicMatrix<Real> h = a + adjoint(a);
    h *= std::complex<Real>(Real{0.5});
    return h;
}

/**
 * @brief Kronecker product; entry [i*b.rows+k, j*b.cols+l] = a[i,j] b[k,l].
 * @throws SizeError if either result dimension exceeds max_dimension().
 */
template <class Real>
BasicMatrix<Real> kron(const BasicMatrix<Real> &a, const BasicMatrix<Real> &b) {
    check_dimension(a.rows() * b.rows(), "kron");
    check_dimension(a.cols() * b.cols(), "kron");
    BasicMatrix<Real> out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const auto aij = a(i, j);
            for (std::size_t k = 0; k < b.rows(); ++k) {
                for (std::size_t l = 0; l < b.cols(); ++l) {
                    out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
                }
            }
        }
    }
    return out;
}

template <class Real> Real max_abs(const BasicMatrix<Real> &a) {
    Real m{0};
    for (const auto &z : a.data()) {
        m = std::max(m, std::abs(z));
    }
    return m;
}

template <class Real> Real frobenius_norm(const BasicMatrix<Real> &a) {
    Real s{0};
    for (const auto &z : a.data()) {
        s += std::norm(z);
    }
    return std::sqrt(s);
}

/// Location and size of the largest |h_ij - conj(h_ji)|.
struct HermiticityViolation {
    std::size_t row{0};
    std::size_t col{0};
    double magnitude{0.0};
};

template <class Real>
HermiticityViolation hermiticity_violation(const BasicMatrix<Real> &h) {
    HermiticityViolation worst;
    for (std::size_t i = 0; i < h.rows(); ++i) {
        for (std::size_t j = i; j < h.cols(); ++j) {
            const double d =
                static_cast<double>(std::abs(h(i, j) - std::conj(h(j, i))));
            if (d > worst.magnitude) {
                worst = {i, j, d};
            }
        }
    }
    return worst;
}

/**
 * @brief Throw ValidationError unless h is square and Hermitian within tol.
 *
 * The message names the entry with the largest violation.
 */
template <class Real>
void require_hermitian(const BasicMatrix<Real> &h, double tol = 1e-10,
                       const char *what = "matrix") {
    if (!h.is_square()) {
        throw ValidationError(std::string(what) + " is not square");
    }
    const auto v = hermiticity_violation(h);
    if (v.magnitude > tol) {
        std::ostringstream msg;
        msg.precision(17);
        msg << what << " is not Hermitian: |h[" << v.row << "," << v.col
            << "] - conj(h[" << v.col << "," << v.row
            << "])| = " << v.magnitude << " exceeds " << tol;
        throw ValidationError(msg.str());
    }
}

/// max |U†U - I| over all entries.
template <class Real> Real unitarity_error(const BasicMatrix<Real> &u) {
    auto g = adjoint(u) * u;
    g -= BasicMatrix<Real>::identity(u.cols());
    return max_abs(g);
}

/// a^m by binary exponentiation.
template <class Real>
BasicMatrix<Real> power(const BasicMatrix<Real> &a, std::size_t m) {
    if (!a.is_square()) {
        throw ValidationError("power: matrix is not square");
    }
    auto result = BasicMatrix<Real>::identity(a.rows());
    auto base = a;
    bool first = true;
    while (m != 0) {
        if ((m & 1U) != 0) {
            result = first ? base : result * base;
            first = false;
        }
        m >>= 1U;
        if (m != 0) {
            base = base * base;
        }
    }
    return result;
}

template <class Real> class BasicStateVector {
  public:
    using value_type = std::complex<Real>;

    BasicStateVector() = default;
    explicit BasicStateVector(std::vector<value_type> amplitudes)
        : amps_{std::move(amplitudes)} {
        if (!is_power_of_two(amps_.size())) {
            throw ValidationError(
                "state vector dimension must be a power of two");
        }
    }

    static BasicStateVector basis(std::size_t dim, std::size_t index) {
        if (index >= dim) {
            throw DomainError("basis index out of range");
        }
        std::vector<value_type> a(dim);
        a[index] = Real{1};
        return BasicStateVector(std::move(a));
    }

    [[nodiscard]] std::size_t dim() const { return amps_.size(); }
    value_type &operator[](std::size_t i) { return amps_[i]; }
    const value_type &operator[](std::size_t i) const { return amps_[i]; }
    [[nodiscard]] std::span<const value_type> amplitudes() const {
        return amps_;
    }

    [[nodiscard]] Real norm() const {
        Real s{0};
        for (const auto &z : amps_) {
            s += std::norm(z);
        }
        return std::sqrt(s);
    }

    [[nodiscard]] BasicStateVector normalized() const {
        const Real n = norm();
        if (n == Real{0}) {
            throw DomainError("cannot normalize the zero vector");
        }
        auto out = *this;
        for (auto &z : out.amps_) {
            z /= n;
        }
        return out;
    }

    template <class Other> [[nodiscard]] BasicStateVector<Other> cast() const {
        std::vector<std::complex<Other>> out(amps_.size());
        std::transform(amps_.begin(), amps_.end(), out.begin(),
                       [](const value_type &z) {
                           return std::complex<Other>(
                               static_cast<Other>(z.real()),
                               static_cast<Other>(z.imag()));
                       });
        return BasicStateVector<Other>(std::move(out));
    }

    friend bool operator==(const BasicStateVector &,
                           const BasicStateVector &) = default;

  private:
    std::vector<value_type> amps_;
};

template <class Real>
BasicStateVector<Real> apply(const BasicMatrix<Real> &m,
                             const BasicStateVector<Real> &psi) {
    if (m.cols() != psi.dim()) {
        throw ValidationError("apply: matrix and state dimensions differ");
    }
    std::vector<std::complex<Real>> out(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        std::complex<Real> s{};
        for (std::size_t j = 0; j < m.cols(); ++j) {
            s += m(i, j) * psi[j];
        }
        out[i] = s;
    }
    return BasicStateVector<Real>(std::move(out));
}

/// <a|b>, conjugate-linear in the first argument.
template <class Real>
std::complex<Real> overlap(const BasicStateVector<Real> &a,
                           const BasicStateVector<Real> &b) {
    if (a.dim() != b.dim()) {
        throw ValidationError("overlap: state dimensions differ");
    }
    std::complex<Real> s{};
    for (std::size_t i = 0; i < a.dim(); ++i) {
        s += std::conj(a[i]) * b[i];
    }
    return s;
}

/// |a><b|
template <class Real>
BasicMatrix<Real> outer(const BasicStateVector<Real> &a,
                        const BasicStateVector<Real> &b) {
    BasicMatrix<Real> m(a.dim(), b.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) {
        for (std::size_t j = 0; j < b.dim(); ++j) {
            m(i, j) = a[i] * std::conj(b[j]);
        }
    }
    return m;
}

template <class Real> struct BasicEigenDecomposition {
    /// Ascending; ties keep input column order.
    std::vector<Real> values;
    /// Column j is the eigenvector for values[j].
    BasicMatrix<Real> vectors;

    [[nodiscard]] BasicStateVector<Real> eigenvector(std::size_t j) const {
        if (j >= values.size()) {
            throw DomainError("eigenvector index out of range");
        }
        std::vector<std::complex<Real>> col(vectors.rows());
        for (std::size_t i = 0; i < vectors.rows(); ++i) {
            col[i] = vectors(i, j);
        }
        return BasicStateVector<Real>(std::move(col));
    }
};

namespace detail {

/// Jacobi output before sorting: eigenvalues are `shift + shifted[k]`.
template <class Real> struct JacobiResult {
    std::vector<Real> shifted;
    Real shift{0};
    BasicMatrix<Real> vectors;
};

/**
 * Cyclic complex Jacobi. The mean diagonal is removed first so that rotation
 * angles and the stopping test see only the spread of the spectrum; this
 * keeps eigenvectors of matrices with a large constant offset (molecular
 * energies near -84 Hartree) accurate to working precision.
 */
template <class Real> JacobiResult<Real> jacobi(const BasicMatrix<Real> &h) {
    using C = std::complex<Real>;
    const std::size_t n = h.rows();
    if (n == 0) {
        throw ValidationError("cannot diagonalize an empty matrix");
    }
    BasicMatrix<Real> a = hermitian_part(h);

    Real shift{0};
    for (std::size_t i = 0; i < n; ++i) {
        shift += a(i, i).real();
    }
    shift /= static_cast<Real>(n);
    for (std::size_t i = 0; i < n; ++i) {
        a(i, i) = C(a(i, i).real() - shift, Real{0});
    }

    auto v = BasicMatrix<Real>::identity(n);
    const Real eps = std::numeric_limits<Real>::epsilon();
    const Real tol = std::max(eps * frobenius_norm(a),
                              std::numeric_limits<Real>::min());

    auto off_norm = [&] {
        Real s{0};
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (i != j) {
                    s += std::norm(a(i, j));
                }
            }
        }
        return std::sqrt(s);
    };

    constexpr int max_sweeps = 100;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        if (off_norm() <= tol) {
            break;
        }
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const C b = a(p, q);
                const Real mag = std::abs(b);
                if (mag == Real{0}) {
                    continue;
                }
                const Real app = a(p, p).real();
                const Real aqq = a(q, q).real();
                // Negligible against both diagonal entries: drop it.
                if (mag < eps * Real{1e-2} * std::min(std::abs(app), std::abs(aqq))) {
                    a(p, q) = C{};
                    a(q, p) = C{};
                    continue;
                }
                const C phase = b / mag;
                const Real theta = (aqq - app) / (Real{2} * mag);
                const Real t = (theta >= Real{0} ? Real{1} : Real{-1}) /
                               (std::abs(theta) + std::sqrt(theta * theta + Real{1}));
                const Real c = Real{1} / std::sqrt(t * t + Real{1});
                const Real s = t * c;
                // G = [[c, s e^{iφ}], [-s e^{-iφ}, c]] on (p, q); A <- G† A G.
                const C s_fwd = s * phase;
                const C s_bwd = s * std::conj(phase);
                for (std::size_t k = 0; k < n; ++k) {
                    const C akp = a(k, p);
                    const C akq = a(k, q);
                    a(k, p) = c * akp - s_bwd * akq;
                    a(k, q) = s_fwd * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const C apk = a(p, k);
                    const C aqk = a(q, k);
                    a(p, k) = c * apk - s_fwd * aqk;
                    a(q, k) = s_bwd * apk + c * aqk;
                }
                a(p, q) = C{};
                a(q, p) = C{};
                a(p, p) = C(app - t * mag, Real{0});
                a(q, q) = C(aqq + t * mag, Real{0});
                for (std::size_t k = 0; k < n; ++k) {
                    const C vkp = v(k, p);
                    const C vkq = v(k, q);
                    v(k, p) = c * vkp - s_bwd * vkq;
                    v(k, q) = s_fwd * vkp + c * vkq;
                }
            }
        }
    }

    JacobiResult<Real> out;
    out.shift = shift;
    out.shifted.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.shifted[i] = a(i, i).real();
    }
    out.vectors = std::move(v);
    return out;
}

/// Stable ascending order of the Jacobi output.
template <class Real>
std::vector<std::size_t> ascending_order(const JacobiResult<Real> &r) {
    std::vector<std::size_t> idx(r.shifted.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) {
        return r.shifted[x] < r.shifted[y];
    });
    return idx;
}

} // namespace detail

/**
 * @brief Eigendecomposition of a Hermitian matrix.
 *
 * Cyclic Jacobi with a fixed (p, q) sweep order, so identical input gives
 * identical output. Sweeps stop once the off-diagonal Frobenius norm drops
 * to machine epsilon relative to the matrix, or after 100 sweeps.
 *
 * @throws ValidationError if h is not square or not Hermitian within tol.
 */
template <class Real>
BasicEigenDecomposition<Real> hermitian_eig(const BasicMatrix<Real> &h,
                                            double tol = 1e-10) {
    require_hermitian(h, tol);
    const auto r = detail::jacobi(h);
    const auto order = detail::ascending_order(r);
    const std::size_t n = h.rows();
    BasicEigenDecomposition<Real> out;
    out.values.resize(n);
    out.vectors = BasicMatrix<Real>(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = r.shift + r.shifted[order[k]];
        for (std::size_t i = 0; i < n; ++i) {
            out.vectors(i, k) = r.vectors(i, order[k]);
        }
    }
    return out;
}

/**
 * @brief Cached spectral form of a Hermitian matrix for evaluating
 * e^{-iht} at many times.
 *
 * The constant shift is applied as a separate global phase so that the
 * relative phases are computed from the (small) shifted eigenvalues.
 */
template <class Real> class SpectralExponential {
  public:
    explicit SpectralExponential(const BasicMatrix<Real> &h,
                                 double tol = 1e-10) {
        require_hermitian(h, tol);
        auto r = detail::jacobi(h);
        shifted_ = std::move(r.shifted);
        shift_ = r.shift;
        vectors_ = std::move(r.vectors);
        vectors_adj_ = adjoint(vectors_);
    }

    [[nodiscard]] std::size_t dim() const { return shifted_.size(); }

    /// e^{-iht}
    [[nodiscard]] BasicMatrix<Real> operator()(Real t) const {
        const auto ph = phases(t);
        const std::size_t n = dim();
        BasicMatrix<Real> scaled(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t k = 0; k < n; ++k) {
                scaled(i, k) = vectors_(i, k) * ph[k];
            }
        }
        return scaled * vectors_adj_;
    }

    /// e^{-iht} psi without forming the propagator.
    [[nodiscard]] BasicStateVector<Real>
    apply(Real t, const BasicStateVector<Real> &psi) const {
        auto coeffs = ::resonance::apply(vectors_adj_, psi);
        const auto ph = phases(t);
        std::vector<std::complex<Real>> scaled(dim());
        for (std::size_t k = 0; k < dim(); ++k) {
            scaled[k] = coeffs[k] * ph[k];
        }
        return ::resonance::apply(vectors_,
                                  BasicStateVector<Real>(std::move(scaled)));
    }

  private:
    [[nodiscard]] std::vector<std::complex<Real>> phases(Real t) const {
        const std::complex<Real> global = std::polar(Real{1}, -shift_ * t);
        std::vector<std::complex<Real>> ph(dim());
        for (std::size_t k = 0; k < dim(); ++k) {
            ph[k] = global * std::polar(Real{1}, -shifted_[k] * t);
        }
        return ph;
    }

    std::vector<Real> shifted_;
    Real shift_{0};
    BasicMatrix<Real> vectors_;
    BasicMatrix<Real> vectors_adj_;
};

/// e^{-iht} for Hermitian h, via its eigendecomposition.
template <class Real>
BasicMatrix<Real> unitary_exp(const BasicMatrix<Real> &h, Real t) {
    return SpectralExponential<Real>(h)(t);
}

/// Largest singular value, from the top eigenvalue of a†a.
template <class Real> Real spectral_norm(const BasicMatrix<Real> &a) {
    const auto g = adjoint(a) * a;
    const auto r = detail::jacobi(g);
    Real top{0};
    for (Real x : r.shifted) {
        top = std::max(top, r.shift + x);
    }
    return std::sqrt(std::max(top, Real{0}));
}

using Matrix = BasicMatrix<double>;
using StateVector = BasicStateVector<double>;
using EigenDecomposition = BasicEigenDecomposition<double>;
using Complex = std::complex<double>;

namespace pauli {

inline Matrix x() { return Matrix(2, 2, {0.0, 1.0, 1.0, 0.0}); }
inline Matrix z() { return Matrix(2, 2, {1.0, 0.0, 0.0, -1.0}); }
inline Matrix hadamard() {
    const double r = 1.0 / std::sqrt(2.0);
    return Matrix(2, 2, {r, r, r, -r});
}

} // namespace pauli

} // namespace resonance
