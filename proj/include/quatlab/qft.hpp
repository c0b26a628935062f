#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "quatlab/quaternion.hpp"

namespace quatlab {

/// Uniformly sampled quaternion signal.
struct QSignal {
    std::vector<Quaternion> samples;
    double spacing = 1.0;
};

/// Parameters of the quadratic phase a|x|^2 + b x.w + c|w|^2 + d.x + e.w.
struct QPKernelParams {
    double a = 0.0;
    double b = 1.0;
    double c = 0.0;
    Quaternion d;
    Quaternion e;
};

/// Evaluates the quadratic phase with component dot products; the result is
/// real and returned as a scalar quaternion.
Quaternion quadratic_phase(const QPKernelParams& p, const Quaternion& x, const Quaternion& w);

/// Rectangular grid of quaternion samples, row-major, all rows equal length.
using QGrid = std::vector<std::vector<Quaternion>>;

/// Two-sided transform H[w1][w2] = sum_x e^{-f a1} h[x1][x2] e^{-g a2} with
/// angles a_i = 2 pi x_i w_i / N_i; the inverse flips the exponent signs and
/// divides by N1*N2. Throws std::invalid_argument unless f and g are pure
/// and unit within 1e-12 (f^2 = g^2 = -1) and the grid is rectangular.
QGrid qft2(const QGrid& h, const Quaternion& f, const Quaternion& g, bool inverse = false);

/// Sum of |h|^2 over a grid.
double grid_energy(const QGrid& h);

/// Periodic Hann window 0.5*(1 - cos(2 pi n / n_total)).
std::vector<double> hann_window(std::size_t n);

/// Windowed frame transforms of a circular signal: frame m covers samples
/// (m*hop + n) mod N for n in [0, window size), each frame transformed by
/// right multiplication with e^{-axis 2 pi k n / L}.
struct Spectrogram {
    std::size_t signal_len = 0;
    std::size_t hop = 0;
    std::vector<double> window;
    Quaternion axis;
    std::vector<std::vector<Quaternion>> frames;  ///< frames[m][k]
};

/// Circular short-time transform. Requirements: nonzero window no longer
/// than the signal, hop >= 1 dividing the signal length.
Spectrogram stft(const QSignal& x, const std::vector<double>& window, std::size_t hop,
                 const Quaternion& axis = kQuatI);

/// Inverts each frame, overlap-adds, and divides by the pointwise window
/// coverage; exact for windows whose shifted copies sum to a constant.
/// Throws std::invalid_argument if some sample has no window coverage.
QSignal istft(const Spectrogram& s);

/// Numerical content of the delta-rule objection. commuting_residual is the
/// off-impulse energy of an impulse after the forward and backward
/// single-axis transforms (vanishes: one axis generates a commuting plane).
/// noncommuting_gap is the max over a grid of angles l, l' in [-pi, pi] of
/// |e^{-u l} e^{+v l'} - e^{-u l + v l'}|, strictly positive for distinct
/// pure axes u, v, which is why the one-axis calculation does not extend.
struct DeltaDemoResult {
    double commuting_residual = 0.0;
    double noncommuting_gap = 0.0;
};

/// Runs the demo with phase scale b on a grid of the given size (>= 8).
/// Axes must be pure and unit within 1e-12.
DeltaDemoResult delta_demo(double b, const Quaternion& u, const Quaternion& v,
                           std::size_t grid = 32);

/// Radial profile c_I(j) = cos j - (2 I / j) sin j; c_0 has no 1/j term.
double l_radial_c(int order, double j);

/// Radial profile d_I(j) = -dc_I/dj = sin j + (2 I / j) cos j - (2 I / j^2) sin j.
double l_radial_d(int order, double j);

/// Directional form L_I(jvec) = c_I(j) + (jvec / j) d_I(j) for pure jvec
/// with j = |jvec|. Throws std::invalid_argument for j = 0 with order > 0
/// (singular) or a non-pure argument.
Quaternion l_function(int order, const Quaternion& jvec);

/// Polar parametrization of a quaternion 4-vector:
/// phi0 = R cos th1 cos(Theta/2), phi3 = R sin th1 cos(Theta/2),
/// phi1 = R cos th2 sin(Theta/2), phi2 = R sin th2 sin(Theta/2).
/// Requires R >= 0 and Theta in [0, pi].
std::array<double, 4> boson_polar(double r, double theta, double th1, double th2);

/// Volume element (R^3 / 4) sin Theta of the polar parametrization.
double boson_jacobian(double r, double theta);

/// Monte Carlo volume of the unit 4-ball via the polar jacobian; the exact
/// value is pi^2 / 2.
double ball4_volume_mc(std::size_t samples, std::uint64_t seed);

/// Riesz kernel pair (x, y) / (2 pi (x^2 + y^2)^{3/2}). Throws
/// std::invalid_argument at the origin.
std::array<double, 2> riesz_kernels(double x, double y);

/// Finite-difference check of the kinetic operator -(1/6) sum_i d^2/dphi_i^2
/// on Psi(phi) = (1/(2 pi)) cos(sum_i p_i phi_i) q_e. numeric_eig is the
/// right eigenvalue Psi^{-1} (H Psi) at a fixed sample point; residual is
/// |Psi * numeric_eig - H Psi|. Both candidate magnitudes are reported:
/// three_component = (p0^2 + p1^2 + p3^2)/6 and full = |p|^2/6; the
/// operator itself realizes the full sum.
struct KineticReport {
    Quaternion numeric_eig;
    double residual = 0.0;
    double three_component = 0.0;
    double full = 0.0;
};

/// Requires 0 < grid_step <= 1e-2 and a nonzero q_e.
KineticReport kinetic_check(const std::array<double, 4>& p, double grid_step,
                            const Quaternion& q_e = Quaternion{1.0, 0.0, 0.0, 0.0});

}  // namespace quatlab
