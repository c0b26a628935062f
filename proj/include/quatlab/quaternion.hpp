#pragma once

#include <array>
#include <cstddef>
#include <utility>
#include <vector>

#include "quatlab/linalg.hpp"

namespace quatlab {

/// Quaternion q = r + i*q_i + j*q_j + k*q_k with Hamilton products
/// ij = k, jk = i, ki = j.
struct Quaternion {
    double r = 0.0;
    double i = 0.0;
    double j = 0.0;
    double k = 0.0;
};

Quaternion operator+(const Quaternion& a, const Quaternion& b);
Quaternion operator-(const Quaternion& a, const Quaternion& b);
Quaternion operator-(const Quaternion& a);
Quaternion operator*(double s, const Quaternion& a);
Quaternion operator*(const Quaternion& a, double s);

/// Hamilton product.
Quaternion qmul(const Quaternion& a, const Quaternion& b);
Quaternion operator*(const Quaternion& a, const Quaternion& b);

Quaternion qconj(const Quaternion& a);
double qnorm(const Quaternion& a);
double qnorm2(const Quaternion& a);

inline constexpr Quaternion kQuatI{0.0, 1.0, 0.0, 0.0};
inline constexpr Quaternion kQuatJ{0.0, 0.0, 1.0, 0.0};
inline constexpr Quaternion kQuatK{0.0, 0.0, 0.0, 1.0};

/// exp(q) = e^r (cos|v| + (v/|v|) sin|v|) with v the imaginary part; the
/// |v| -> 0 limit is handled by series.
Quaternion qexp(const Quaternion& q);

struct QuatPolar {
    double modulus;   ///< |q|
    double angle;     ///< alpha in [0, pi]
    Quaternion axis;  ///< unit pure imaginary mu; q = |q| (cos alpha + mu sin alpha)
};

/// Polar form of a nonzero quaternion. For a real quaternion the axis is
/// undefined; this returns mu = k in that case so callers get a stable value.
QuatPolar polar(const Quaternion& q);

/// Orthogonal plane split q -> (q_plus, q_minus) with
/// q_pm = (q pm f q g) / 2 for unit pure imaginary f, g.
/// Throws std::invalid_argument unless f and g are pure and unit within 1e-12.
std::pair<Quaternion, Quaternion> ops_split(const Quaternion& q, const Quaternion& f = kQuatI,
                                            const Quaternion& g = kQuatJ);

/// For m = [[a, b], [c, d]], computes adj(m) * (i sigma_3) * m, where
/// adj(m) = [[d, -b], [-c, a]] and i sigma_3 = diag(i, -i) is the 2x2 image
/// of the quaternion unit i. Closed form: i * [[bc+ad, 2bd], [-2ac, -bc-ad]].
ComplexMatrix tau3_sandwich(Complex a, Complex b, Complex c, Complex d);
ComplexMatrix tau3_closed_form(Complex a, Complex b, Complex c, Complex d);

using Mat3 = std::array<std::array<double, 3>, 3>;

Mat3 mat3_mul(const Mat3& a, const Mat3& b);
double mat3_max_abs_diff(const Mat3& a, const Mat3& b);

/// Rotation exp of the axis vector v = (x, y, z) with l = |v|:
/// R = I + (sin l / l) A + ((1 - cos l) / l^2) A^2, A the cross-product
/// matrix of v. Series expansions guard the l -> 0 limit.
Mat3 rot_exp(const std::array<double, 3>& v);

/// Rotation matrix of a nonzero quaternion: normalize, read off angle theta
/// and axis n from q = cos(theta/2) + n sin(theta/2), return rot_exp(theta n).
Mat3 rot_from_quat(const Quaternion& q);

/// Frobenius norm of R[q1 q2] - R[q1] R[q2]; zero for the exact group
/// homomorphism from unit quaternions onto rotations.
double rot_compose_check(const Quaternion& q1, const Quaternion& q2);

/// Curve of paired off-diagonal entries (R(2,3), R(3,2)) of R = rot_exp
/// about the x axis, sampled at n points over l in [0, 2pi], endpoints
/// included. At l = pi/2 the pair is (-1, 1); the curve closes at l = 2pi.
std::vector<std::array<double, 2>> hysteresis_curve(std::size_t n);

/// n x n grid of surface points (sin u, sin v, sin(u + v)) over
/// (u, v) in [0, 2pi]^2.
std::vector<std::array<double, 3>> sinsurface(std::size_t n);

}  // namespace quatlab
