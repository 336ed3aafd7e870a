#pragma once

// Dense square matrices over the three real division algebras (R, C, H).
// The Jacobi solver, the structure-group polish and the ensembles are written
// once against this template and instantiated for double, cplx and Quaternion.

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

namespace acp {

struct Quaternion {
  double w = 0.0;  // real
  double x = 0.0;  // i
  double y = 0.0;  // j
  double z = 0.0;  // k

  constexpr Quaternion() = default;
  constexpr Quaternion(double w_, double x_ = 0.0, double y_ = 0.0, double z_ = 0.0)
      : w(w_), x(x_), y(y_), z(z_) {}

  Quaternion& operator+=(const Quaternion& o) {
    w += o.w; x += o.x; y += o.y; z += o.z;
    return *this;
  }
  Quaternion& operator-=(const Quaternion& o) {
    w -= o.w; x -= o.x; y -= o.y; z -= o.z;
    return *this;
  }
  Quaternion& operator*=(double s) {
    w *= s; x *= s; y *= s; z *= s;
    return *this;
  }
  friend bool operator==(const Quaternion&, const Quaternion&) = default;
};

inline Quaternion operator+(Quaternion a, const Quaternion& b) { return a += b; }
inline Quaternion operator-(Quaternion a, const Quaternion& b) { return a -= b; }
inline Quaternion operator-(const Quaternion& a) { return {-a.w, -a.x, -a.y, -a.z}; }
inline Quaternion operator*(Quaternion a, double s) { return a *= s; }
inline Quaternion operator*(double s, Quaternion a) { return a *= s; }

// Hamilton product: ij = k, jk = i, ki = j.
inline Quaternion operator*(const Quaternion& a, const Quaternion& b) {
  return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
          a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
          a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
          a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
}

inline Quaternion conj(const Quaternion& q) { return {q.w, -q.x, -q.y, -q.z}; }
inline double norm2(const Quaternion& q) {
  return q.w * q.w + q.x * q.x + q.y * q.y + q.z * q.z;
}
inline double abs(const Quaternion& q) { return std::sqrt(norm2(q)); }

template <class T>
struct Algebra;

template <>
struct Algebra<double> {
  static constexpr int dim = 1;
  static double conj(double a) { return a; }
  static double norm2(double a) { return a * a; }
  static double real(double a) { return a; }
  static double component(double a, int) { return a; }
  static double from_components(const double* c) { return c[0]; }
};

template <>
struct Algebra<std::complex<double>> {
  using T = std::complex<double>;
  static constexpr int dim = 2;
  static T conj(const T& a) { return std::conj(a); }
  static double norm2(const T& a) { return std::norm(a); }
  static double real(const T& a) { return a.real(); }
  static double component(const T& a, int k) { return k == 0 ? a.real() : a.imag(); }
  static T from_components(const double* c) { return {c[0], c[1]}; }
};

template <>
struct Algebra<Quaternion> {
  static constexpr int dim = 4;
  static Quaternion conj(const Quaternion& a) { return acp::conj(a); }
  static double norm2(const Quaternion& a) { return acp::norm2(a); }
  static double real(const Quaternion& a) { return a.w; }
  static double component(const Quaternion& a, int k) {
    switch (k) {
      case 0: return a.w;
      case 1: return a.x;
      case 2: return a.y;
      default: return a.z;
    }
  }
  static Quaternion from_components(const double* c) { return {c[0], c[1], c[2], c[3]}; }
};

/// Row-major square matrix over one of R, C, H.
template <class T>
class DenseMatrix {
 public:
  DenseMatrix() = default;
  explicit DenseMatrix(std::size_t n) : n_(n), data_(n * n, T{}) {}

  static DenseMatrix identity(std::size_t n) {
    DenseMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T{1.0};
    return m;
  }

  std::size_t size() const { return n_; }
  T& operator()(std::size_t r, std::size_t c) { return data_[r * n_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * n_ + c]; }

  DenseMatrix adjoint() const {
    DenseMatrix out(n_);
    for (std::size_t r = 0; r < n_; ++r)
      for (std::size_t c = 0; c < n_; ++c) out(c, r) = Algebra<T>::conj((*this)(r, c));
    return out;
  }

  /// (M + M*)/2, exactly Hermitian.
  DenseMatrix hermitian_part() const {
    DenseMatrix out(n_);
    for (std::size_t r = 0; r < n_; ++r) {
      out(r, r) = T{Algebra<T>::real((*this)(r, r))};
      for (std::size_t c = r + 1; c < n_; ++c) {
        T v = ((*this)(r, c) + Algebra<T>::conj((*this)(c, r))) * 0.5;
        out(r, c) = v;
        out(c, r) = Algebra<T>::conj(v);
      }
    }
    return out;
  }

  DenseMatrix& operator+=(const DenseMatrix& o) {
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  DenseMatrix& operator-=(const DenseMatrix& o) {
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  DenseMatrix& operator*=(double s) {
    for (auto& v : data_) v *= s;
    return *this;
  }

  friend DenseMatrix operator+(DenseMatrix a, const DenseMatrix& b) { return a += b; }
  friend DenseMatrix operator-(DenseMatrix a, const DenseMatrix& b) { return a -= b; }
  friend DenseMatrix operator*(DenseMatrix a, double s) { return a *= s; }

  friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
    const std::size_t n = a.n_;
    DenseMatrix out(n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t k = 0; k < n; ++k) {
        const T& ark = a(r, k);
        for (std::size_t c = 0; c < n; ++c) out(r, c) += ark * b(k, c);
      }
    return out;
  }

  /// Sum of squared moduli of the strictly off-diagonal entries.
  double off_diagonal_energy() const {
    double e = 0.0;
    for (std::size_t r = 0; r < n_; ++r)
      for (std::size_t c = 0; c < n_; ++c)
        if (r != c) e += Algebra<T>::norm2((*this)(r, c));
    return e;
  }

  double frobenius2() const {
    double e = 0.0;
    for (const auto& v : data_) e += Algebra<T>::norm2(v);
    return e;
  }

 private:
  std::size_t n_ = 0;
  std::vector<T> data_;
};

using RealAlgebraMatrix = DenseMatrix<double>;
using ComplexAlgebraMatrix = DenseMatrix<std::complex<double>>;
using QuaternionMatrix = DenseMatrix<Quaternion>;

}  // namespace acp
