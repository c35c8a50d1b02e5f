#pragma once
#include <complex>
#include <stdexcept>
#include <string>

namespace hkforge {

using cplx = std::complex<double>;
inline constexpr double kPi = 3.14159265358979323846;
inline constexpr cplx kI{0.0, 1.0};

// Error taxonomy; each kind maps onto a CLI exit code.
enum class ErrorKind {
  structural,      // malformed input
  domain,          // wrong spin / out-of-range argument
  reality,         // reality condition or antipodal pairing violated
  degenerate,      // vanishing denominator, zero multiplet
  pinched,         // Delta == 0
  near_degenerate, // roots too close for a contour
  chart,           // z2 == 0 or similar chart boundary
  no_solution,     // constraint solver found no bracket
  pole_on_cycle,   // pi-function evaluated at a branch point
  convergence,     // quadrature did not converge
  usage            // CLI/config misuse
};

class Error : public std::runtime_error {
public:
  Error(ErrorKind k, const std::string& what) : std::runtime_error(what), kind_(k) {}
  ErrorKind kind() const noexcept { return kind_; }
private:
  ErrorKind kind_;
};

const char* to_string(ErrorKind k);
int exit_code_for(ErrorKind k);

struct Vector3 {
  double x = 0, y = 0, z = 0;
  double norm2() const { return x * x + y * y + z * z; }
  double norm() const;
};

inline double dot(const Vector3& a, const Vector3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vector3 cross(const Vector3& a, const Vector3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline Vector3 operator+(const Vector3& a, const Vector3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Vector3 operator-(const Vector3& a, const Vector3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Vector3 operator*(double s, const Vector3& a) { return {s * a.x, s * a.y, s * a.z}; }

double binomial(int n, int k);

// Relative error with a floor on the reference magnitude.
double rel_err(double got, double want, double floor = 1e-300);
double rel_err(cplx got, cplx want, double floor = 1e-300);

}  // namespace hkforge
