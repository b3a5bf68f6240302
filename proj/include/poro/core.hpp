#pragma once

#include <Eigen/Dense>

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace poro {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// Base class for all toolkit errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ArgumentError : Error {
  using Error::Error;
};

/// Raised when a generated or loaded geometry is unusable (empty phase,
/// disconnected channels, degenerate cells).
struct GeometryError : Error {
  using Error::Error;
};

/// Mesh file parse failure; message carries the 1-based line number.
struct MeshParseError : Error {
  MeshParseError(const std::string& msg, int line)
      : Error(msg + " (line " + std::to_string(line) + ")"), line_number(line) {}
  int line_number;
};

struct PairingError : Error {
  using Error::Error;
};

/// det F <= 0 and similar inadmissible kinematic states.
struct KinematicError : Error {
  using Error::Error;
};

struct SolverError : Error {
  using Error::Error;
};

/// Newton (or increment bisection) convergence failure.
struct ConvergenceError : Error {
  ConvergenceError(const std::string& msg, std::vector<double> history)
      : Error(msg), residual_history(std::move(history)) {}
  explicit ConvergenceError(const std::string& msg) : Error(msg) {}
  std::vector<double> residual_history;
};

/// Fourth-order tensor on R^3, dense 81-entry storage, A(i,j,k,l).
class Tensor4 {
 public:
  Tensor4() { data_.fill(0.0); }

  double& operator()(int i, int j, int k, int l) {
    return data_[((i * 3 + j) * 3 + k) * 3 + l];
  }
  double operator()(int i, int j, int k, int l) const {
    return data_[((i * 3 + j) * 3 + k) * 3 + l];
  }

  /// Double contraction A : B over the trailing index pair.
  Mat3 contract(const Mat3& b) const {
    Mat3 r = Mat3::Zero();
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        double s = 0.0;
        for (int k = 0; k < 3; ++k)
          for (int l = 0; l < 3; ++l) s += (*this)(i, j, k, l) * b(k, l);
        r(i, j) = s;
      }
    return r;
  }

  /// C_ijmn = A_ijkl B_klmn.
  Tensor4 compose(const Tensor4& b) const {
    Tensor4 c;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int m = 0; m < 3; ++m)
          for (int n = 0; n < 3; ++n) {
            double s = 0.0;
            for (int k = 0; k < 3; ++k)
              for (int l = 0; l < 3; ++l)
                s += (*this)(i, j, k, l) * b(k, l, m, n);
            c(i, j, m, n) = s;
          }
    return c;
  }

  Tensor4& operator+=(const Tensor4& o) {
    for (std::size_t n = 0; n < data_.size(); ++n) data_[n] += o.data_[n];
    return *this;
  }
  Tensor4& operator*=(double s) {
    for (double& v : data_) v *= s;
    return *this;
  }

  static Tensor4 identity() {
    Tensor4 t;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) t(i, j, i, j) = 1.0;
    return t;
  }

  double max_abs() const {
    double m = 0.0;
    for (double v : data_) m = std::max(m, std::abs(v));
    return m;
  }

 private:
  std::array<double, 81> data_;
};

inline Tensor4 operator*(double s, Tensor4 t) {
  t *= s;
  return t;
}

/// 17-significant-digit decimal formatting; round-trips doubles exactly.
std::string format_full(double v);

/// FNV-1a 64-bit over a byte string; stable across runs and platforms.
std::uint64_t fnv1a(std::string_view bytes);
std::string fnv1a_hex(std::string_view bytes);

/// Hash of a file's contents (fnv1a_hex); throws ArgumentError if unreadable.
std::string hash_file(const std::string& path);

}  // namespace poro
