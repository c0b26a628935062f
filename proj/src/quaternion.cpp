#include "quatlab/quaternion.hpp"

#include <cmath>
#include <stdexcept>

namespace quatlab {

Quaternion operator+(const Quaternion& a, const Quaternion& b) {
    return {a.r + b.r, a.i + b.i, a.j + b.j, a.k + b.k};
}

Quaternion operator-(const Quaternion& a, const Quaternion& b) {
    return {a.r - b.r, a.i - b.i, a.j - b.j, a.k - b.k};
}

Quaternion operator-(const Quaternion& a) { return {-a.r, -a.i, -a.j, -a.k}; }

Quaternion operator*(double s, const Quaternion& a) { return {s * a.r, s * a.i, s * a.j, s * a.k}; }
Quaternion operator*(const Quaternion& a, double s) { return s * a; }

Quaternion qmul(const Quaternion& a, const Quaternion& b) {
    return {a.r * b.r - a.i * b.i - a.j * b.j - a.k * b.k,
            a.r * b.i + a.i * b.r + a.j * b.k - a.k * b.j,
            a.r * b.j - a.i * b.k + a.j * b.r + a.k * b.i,
            a.r * b.k + a.i * b.j - a.j * b.i + a.k * b.r};
}

Quaternion operator*(const Quaternion& a, const Quaternion& b) { return qmul(a, b); }

Quaternion qconj(const Quaternion& a) { return {a.r, -a.i, -a.j, -a.k}; }

double qnorm2(const Quaternion& a) { return a.r * a.r + a.i * a.i + a.j * a.j + a.k * a.k; }
double qnorm(const Quaternion& a) { return std::sqrt(qnorm2(a)); }

Quaternion qexp(const Quaternion& q) {
    const double vn = std::sqrt(q.i * q.i + q.j * q.j + q.k * q.k);
    const double er = std::exp(q.r);
    double sinc;  // sin(vn) / vn
    if (vn < 1e-8) {
        sinc = 1.0 - vn * vn / 6.0;
    } else {
        sinc = std::sin(vn) / vn;
    }
    return {er * std::cos(vn), er * sinc * q.i, er * sinc * q.j, er * sinc * q.k};
}

QuatPolar polar(const Quaternion& q) {
    const double mod = qnorm(q);
    if (mod == 0.0) throw std::invalid_argument("polar: zero quaternion has no polar form");
    const double vn = std::sqrt(q.i * q.i + q.j * q.j + q.k * q.k);
    const double angle = std::atan2(vn, q.r);
    Quaternion axis = kQuatK;
    if (vn > 0.0) axis = Quaternion{0.0, q.i / vn, q.j / vn, q.k / vn};
    return {mod, angle, axis};
}

namespace {
bool is_unit_pure(const Quaternion& q) {
    return std::abs(q.r) <= 1e-12 && std::abs(qnorm(q) - 1.0) <= 1e-12;
}
}  // namespace

std::pair<Quaternion, Quaternion> ops_split(const Quaternion& q, const Quaternion& f,
                                            const Quaternion& g) {
    if (!is_unit_pure(f) || !is_unit_pure(g))
        throw std::invalid_argument("ops_split: f and g must be unit pure quaternions");
    const Quaternion fqg = qmul(f, qmul(q, g));
    return {0.5 * (q + fqg), 0.5 * (q - fqg)};
}

ComplexMatrix tau3_sandwich(Complex a, Complex b, Complex c, Complex d) {
    ComplexMatrix m(2, 2), adj(2, 2), tau3(2, 2);
    m(0, 0) = a;
    m(0, 1) = b;
    m(1, 0) = c;
    m(1, 1) = d;
    adj(0, 0) = d;
    adj(0, 1) = -b;
    adj(1, 0) = -c;
    adj(1, 1) = a;
    tau3(0, 0) = Complex(0.0, 1.0);
    tau3(1, 1) = Complex(0.0, -1.0);
    return adj * tau3 * m;
}

ComplexMatrix tau3_closed_form(Complex a, Complex b, Complex c, Complex d) {
    const Complex ii(0.0, 1.0);
    ComplexMatrix out(2, 2);
    out(0, 0) = ii * (b * c + a * d);
    out(0, 1) = ii * (2.0 * b * d);
    out(1, 0) = ii * (-2.0 * a * c);
    out(1, 1) = ii * (-b * c - a * d);
    return out;
}

Mat3 mat3_mul(const Mat3& a, const Mat3& b) {
    Mat3 out{};
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) {
            double s = 0.0;
            for (int k = 0; k < 3; ++k) s += a[r][k] * b[k][c];
            out[r][c] = s;
        }
    return out;
}

double mat3_max_abs_diff(const Mat3& a, const Mat3& b) {
    double m = 0.0;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) m = std::max(m, std::abs(a[r][c] - b[r][c]));
    return m;
}

Mat3 rot_exp(const std::array<double, 3>& v) {
    const double x = v[0], y = v[1], z = v[2];
    const double l2 = x * x + y * y + z * z;
    const double l = std::sqrt(l2);
    double f1, f2;  // sin(l)/l and (1 - cos(l))/l^2
    if (l < 1e-6) {
        f1 = 1.0 - l2 / 6.0;
        f2 = 0.5 - l2 / 24.0;
    } else {
        f1 = std::sin(l) / l;
        f2 = (1.0 - std::cos(l)) / l2;
    }
    const Mat3 a = {{{0.0, -z, y}, {z, 0.0, -x}, {-y, x, 0.0}}};
    const Mat3 a2 = mat3_mul(a, a);
    Mat3 out{};
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c)
            out[r][c] = (r == c ? 1.0 : 0.0) + f1 * a[r][c] + f2 * a2[r][c];
    return out;
}

Mat3 rot_from_quat(const Quaternion& q) {
    const double n = qnorm(q);
    if (n == 0.0) throw std::invalid_argument("rot_from_quat: zero quaternion");
    const Quaternion u{q.r / n, q.i / n, q.j / n, q.k / n};
    const double vn = std::sqrt(u.i * u.i + u.j * u.j + u.k * u.k);
    if (vn == 0.0) return rot_exp({0.0, 0.0, 0.0});
    const double theta = 2.0 * std::atan2(vn, u.r);
    return rot_exp({theta * u.i / vn, theta * u.j / vn, theta * u.k / vn});
}

double rot_compose_check(const Quaternion& q1, const Quaternion& q2) {
    const Mat3 lhs = rot_from_quat(qmul(q1, q2));
    const Mat3 rhs = mat3_mul(rot_from_quat(q1), rot_from_quat(q2));
    double s = 0.0;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) {
            const double d = lhs[r][c] - rhs[r][c];
            s += d * d;
        }
    return std::sqrt(s);
}

std::vector<std::array<double, 2>> hysteresis_curve(std::size_t n) {
    if (n < 2) throw std::invalid_argument("hysteresis_curve: need at least 2 samples");
    std::vector<std::array<double, 2>> out;
    out.reserve(n);
    const double two_pi = 2.0 * std::acos(-1.0);
    for (std::size_t s = 0; s < n; ++s) {
        const double l = two_pi * static_cast<double>(s) / static_cast<double>(n - 1);
        const Mat3 r = rot_exp({l, 0.0, 0.0});
        out.push_back({r[1][2], r[2][1]});
    }
    return out;
}

std::vector<std::array<double, 3>> sinsurface(std::size_t n) {
    if (n < 2) throw std::invalid_argument("sinsurface: need at least a 2x2 grid");
    std::vector<std::array<double, 3>> out;
    out.reserve(n * n);
    const double two_pi = 2.0 * std::acos(-1.0);
    for (std::size_t a = 0; a < n; ++a) {
        const double u = two_pi * static_cast<double>(a) / static_cast<double>(n - 1);
        for (std::size_t b = 0; b < n; ++b) {
            const double v = two_pi * static_cast<double>(b) / static_cast<double>(n - 1);
            out.push_back({std::sin(u), std::sin(v), std::sin(u + v)});
        }
    }
    return out;
}

}  // namespace quatlab
