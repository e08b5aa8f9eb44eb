#ifndef ERI_VEC_HPP
#define ERI_VEC_HPP

#include <cmath>
#include <complex>
#include <stdexcept>

namespace eri {

using Complex = std::complex<double>;

struct Vec2 {
  double x = 0.0, y = 0.0;

  Vec2() = default;
  Vec2(double x_, double y_) : x(x_), y(y_) {}

  Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double c) const { return {x * c, y * c}; }
  Vec2 operator/(double c) const { return {x / c, y / c}; }

  double dot(const Vec2& o) const { return x * o.x + y * o.y; }
  double norm() const { return std::hypot(x, y); }
  Vec2 normalized() const {
    double n = norm();
    if (n == 0.0) throw std::domain_error("normalizing zero vector");
    return {x / n, y / n};
  }
  // (-y, x), rotation by +90 degrees
  Vec2 perp() const { return {-y, x}; }

  double operator[](int i) const { return i == 0 ? x : y; }
};

inline Vec2 operator*(double c, const Vec2& v) { return v * c; }

struct Vec2C {
  Complex x{0.0, 0.0}, y{0.0, 0.0};

  Vec2C() = default;
  Vec2C(Complex x_, Complex y_) : x(x_), y(y_) {}
  explicit Vec2C(const Vec2& v) : x(v.x), y(v.y) {}

  Vec2C operator+(const Vec2C& o) const { return {x + o.x, y + o.y}; }
  Vec2C operator-(const Vec2C& o) const { return {x - o.x, y - o.y}; }
  Vec2C operator*(Complex c) const { return {x * c, y * c}; }

  // bilinear dot (no conjugation)
  Complex dot(const Vec2C& o) const { return x * o.x + y * o.y; }
  // sesquilinear: this . conj(o)
  Complex dotc(const Vec2C& o) const { return x * std::conj(o.x) + y * std::conj(o.y); }
  double norm() const { return std::sqrt(std::norm(x) + std::norm(y)); }

  Complex operator[](int i) const { return i == 0 ? x : y; }
};

inline Vec2C operator*(Complex c, const Vec2C& v) { return v * c; }
inline Vec2C operator*(double c, const Vec2C& v) { return v * Complex(c, 0.0); }

// 2x2 complex matrix, row-major
struct Mat2C {
  Complex a11{0.0}, a12{0.0}, a21{0.0}, a22{0.0};

  Mat2C() = default;
  Mat2C(Complex m11, Complex m12, Complex m21, Complex m22)
      : a11(m11), a12(m12), a21(m21), a22(m22) {}

  static Mat2C identity() { return {1.0, 0.0, 0.0, 1.0}; }
  // v w^T
  static Mat2C outer(const Vec2& v, const Vec2& w) {
    return {v.x * w.x, v.x * w.y, v.y * w.x, v.y * w.y};
  }

  Mat2C operator+(const Mat2C& o) const {
    return {a11 + o.a11, a12 + o.a12, a21 + o.a21, a22 + o.a22};
  }
  Mat2C operator-(const Mat2C& o) const {
    return {a11 - o.a11, a12 - o.a12, a21 - o.a21, a22 - o.a22};
  }
  Mat2C operator*(Complex c) const { return {a11 * c, a12 * c, a21 * c, a22 * c}; }

  Vec2C operator*(const Vec2C& v) const {
    return {a11 * v.x + a12 * v.y, a21 * v.x + a22 * v.y};
  }
  Vec2C operator*(const Vec2& v) const { return (*this) * Vec2C(v); }

  Mat2C transpose() const { return {a11, a21, a12, a22}; }
  Mat2C conj() const {
    return {std::conj(a11), std::conj(a12), std::conj(a21), std::conj(a22)};
  }
  Mat2C matmul(const Mat2C& o) const {
    return {a11 * o.a11 + a12 * o.a21, a11 * o.a12 + a12 * o.a22,
            a21 * o.a11 + a22 * o.a21, a21 * o.a12 + a22 * o.a22};
  }

  Complex operator()(int i, int j) const {
    return i == 0 ? (j == 0 ? a11 : a12) : (j == 0 ? a21 : a22);
  }
  Complex& at(int i, int j) {
    return i == 0 ? (j == 0 ? a11 : a12) : (j == 0 ? a21 : a22);
  }
  Vec2C col(int j) const { return j == 0 ? Vec2C{a11, a21} : Vec2C{a12, a22}; }

  double max_abs() const {
    return std::max(std::max(std::abs(a11), std::abs(a12)),
                    std::max(std::abs(a21), std::abs(a22)));
  }
  bool finite() const {
    auto ok = [](Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); };
    return ok(a11) && ok(a12) && ok(a21) && ok(a22);
  }
};

inline Mat2C operator*(Complex c, const Mat2C& m) { return m * c; }
inline Mat2C operator*(double c, const Mat2C& m) { return m * Complex(c, 0.0); }

inline double max_abs_diff(const Mat2C& a, const Mat2C& b) { return (a - b).max_abs(); }

// columns of a 2x2 complex Jacobian: jac(j,l) = d u_j / d x_l
using Jac2C = Mat2C;

}  // namespace eri

#endif
