#include "quatlab/qft.hpp"

#include <cmath>
#include <stdexcept>

#include "quatlab/rng.hpp"

namespace quatlab {

namespace {

constexpr double kPi = 3.14159265358979323846;

void require_pure_unit(const Quaternion& q, const char* what) {
    if (std::abs(q.r) > 1e-12 || std::abs(qnorm(q) - 1.0) > 1e-12)
        throw std::invalid_argument(std::string(what) + " must be a pure unit quaternion");
}

/// e^{axis * angle} = cos(angle) + axis * sin(angle) for a pure unit axis.
Quaternion unit_exp(const Quaternion& axis, double angle) {
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    return {c, s * axis.i, s * axis.j, s * axis.k};
}

double qdot(const Quaternion& a, const Quaternion& b) {
    return a.r * b.r + a.i * b.i + a.j * b.j + a.k * b.k;
}

void require_rectangular(const QGrid& h) {
    if (h.empty() || h.front().empty())
        throw std::invalid_argument("grid must be nonempty");
    for (const auto& row : h)
        if (row.size() != h.front().size())
            throw std::invalid_argument("grid rows must have equal length");
}

}  // namespace

Quaternion quadratic_phase(const QPKernelParams& p, const Quaternion& x, const Quaternion& w) {
    const double value =
        p.a * qnorm2(x) + p.b * qdot(x, w) + p.c * qnorm2(w) + qdot(p.d, x) + qdot(p.e, w);
    return {value, 0.0, 0.0, 0.0};
}

QGrid qft2(const QGrid& h, const Quaternion& f, const Quaternion& g, bool inverse) {
    require_rectangular(h);
    require_pure_unit(f, "left axis");
    require_pure_unit(g, "right axis");
    const std::size_t n1 = h.size();
    const std::size_t n2 = h.front().size();
    const double dir = inverse ? 1.0 : -1.0;

    std::vector<Quaternion> left(n1);
    std::vector<Quaternion> right(n2);
    QGrid out(n1, std::vector<Quaternion>(n2));
    for (std::size_t w1 = 0; w1 < n1; ++w1) {
        for (std::size_t x1 = 0; x1 < n1; ++x1)
            left[x1] = unit_exp(f, dir * 2.0 * kPi * static_cast<double>(x1 * w1) /
                                       static_cast<double>(n1));
        for (std::size_t w2 = 0; w2 < n2; ++w2) {
            for (std::size_t x2 = 0; x2 < n2; ++x2)
                right[x2] = unit_exp(g, dir * 2.0 * kPi * static_cast<double>(x2 * w2) /
                                            static_cast<double>(n2));
            Quaternion sum;
            for (std::size_t x1 = 0; x1 < n1; ++x1)
                for (std::size_t x2 = 0; x2 < n2; ++x2)
                    sum = sum + left[x1] * h[x1][x2] * right[x2];
            if (inverse) sum = sum * (1.0 / static_cast<double>(n1 * n2));
            out[w1][w2] = sum;
        }
    }
    return out;
}

double grid_energy(const QGrid& h) {
    require_rectangular(h);
    double sum = 0.0;
    for (const auto& row : h)
        for (const Quaternion& q : row) sum += qnorm2(q);
    return sum;
}

std::vector<double> hann_window(std::size_t n) {
    if (n == 0) throw std::invalid_argument("window size must be positive");
    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i)
        w[i] = 0.5 * (1.0 - std::cos(2.0 * kPi * static_cast<double>(i) /
                                     static_cast<double>(n)));
    return w;
}

Spectrogram stft(const QSignal& x, const std::vector<double>& window, std::size_t hop,
                 const Quaternion& axis) {
    const std::size_t n = x.samples.size();
    const std::size_t len = window.size();
    if (n == 0) throw std::invalid_argument("stft: empty signal");
    if (len == 0 || len > n)
        throw std::invalid_argument("stft: window must be nonempty and no longer than the signal");
    bool nonzero = false;
    for (double w : window)
        if (w != 0.0) nonzero = true;
    if (!nonzero) throw std::invalid_argument("stft: window must not be all zeros");
    if (hop == 0 || n % hop != 0)
        throw std::invalid_argument("stft: hop must be positive and divide the signal length");
    require_pure_unit(axis, "transform axis");

    Spectrogram s;
    s.signal_len = n;
    s.hop = hop;
    s.window = window;
    s.axis = axis;
    const std::size_t nframes = n / hop;
    s.frames.resize(nframes, std::vector<Quaternion>(len));
    std::vector<Quaternion> frame(len);
    for (std::size_t m = 0; m < nframes; ++m) {
        for (std::size_t i = 0; i < len; ++i)
            frame[i] = x.samples[(m * hop + i) % n] * window[i];
        for (std::size_t k = 0; k < len; ++k) {
            Quaternion sum;
            for (std::size_t i = 0; i < len; ++i)
                sum = sum + frame[i] * unit_exp(axis, -2.0 * kPi * static_cast<double>(k * i) /
                                                          static_cast<double>(len));
            s.frames[m][k] = sum;
        }
    }
    return s;
}

QSignal istft(const Spectrogram& s) {
    const std::size_t n = s.signal_len;
    const std::size_t len = s.window.size();
    if (n == 0 || len == 0 || len > n || s.hop == 0 || n % s.hop != 0)
        throw std::invalid_argument("istft: inconsistent spectrogram geometry");
    if (s.frames.size() != n / s.hop)
        throw std::invalid_argument("istft: frame count must be signal length / hop");
    for (const auto& frame : s.frames)
        if (frame.size() != len)
            throw std::invalid_argument("istft: frame size must equal the window size");
    require_pure_unit(s.axis, "transform axis");

    QSignal out;
    out.samples.assign(n, Quaternion{});
    std::vector<double> coverage(n, 0.0);
    std::vector<Quaternion> frame(len);
    for (std::size_t m = 0; m < s.frames.size(); ++m) {
        for (std::size_t i = 0; i < len; ++i) {
            Quaternion sum;
            for (std::size_t k = 0; k < len; ++k)
                sum = sum + s.frames[m][k] *
                                unit_exp(s.axis, 2.0 * kPi * static_cast<double>(k * i) /
                                                     static_cast<double>(len));
            frame[i] = sum * (1.0 / static_cast<double>(len));
        }
        for (std::size_t i = 0; i < len; ++i) {
            const std::size_t pos = (m * s.hop + i) % n;
            out.samples[pos] = out.samples[pos] + frame[i];
            coverage[pos] += s.window[i];
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(coverage[i]) < 1e-12)
            throw std::invalid_argument("istft: window and hop leave a sample uncovered");
        out.samples[i] = out.samples[i] * (1.0 / coverage[i]);
    }
    return out;
}

DeltaDemoResult delta_demo(double b, const Quaternion& u, const Quaternion& v,
                           std::size_t grid) {
    if (grid < 8) throw std::invalid_argument("delta_demo: grid must be at least 8");
    require_pure_unit(u, "first axis");
    require_pure_unit(v, "second axis");
    DeltaDemoResult result;

    const std::size_t n = grid;
    const std::size_t n0 = n / 2;
    std::vector<Quaternion> spectrum(n);
    for (std::size_t k = 0; k < n; ++k)
        spectrum[k] = unit_exp(u, -b * 2.0 * kPi * static_cast<double>(n0 * k) /
                                      static_cast<double>(n));
    double off_energy = 0.0;
    for (std::size_t m = 0; m < n; ++m) {
        Quaternion sum;
        for (std::size_t k = 0; k < n; ++k)
            sum = sum + spectrum[k] * unit_exp(u, b * 2.0 * kPi * static_cast<double>(m * k) /
                                                      static_cast<double>(n));
        sum = sum * (1.0 / static_cast<double>(n));
        if (m != n0) off_energy += qnorm2(sum);
    }
    result.commuting_residual = std::sqrt(off_energy);

    double gap = 0.0;
    for (std::size_t a = 0; a < grid; ++a) {
        const double lam = -kPi + 2.0 * kPi * static_cast<double>(a) /
                                      static_cast<double>(grid - 1);
        for (std::size_t c = 0; c < grid; ++c) {
            const double lam2 = -kPi + 2.0 * kPi * static_cast<double>(c) /
                                           static_cast<double>(grid - 1);
            const Quaternion split = unit_exp(u, -lam) * unit_exp(v, lam2);
            const Quaternion joint = qexp(u * (-lam) + v * lam2);
            gap = std::max(gap, qnorm(split - joint));
        }
    }
    result.noncommuting_gap = gap;
    return result;
}

double l_radial_c(int order, double j) {
    if (order < 0) throw std::invalid_argument("l_radial_c: order must be nonnegative");
    if (order == 0) return std::cos(j);
    if (j == 0.0) throw std::invalid_argument("l_radial_c: singular at j = 0 for positive order");
    return std::cos(j) - (2.0 * order / j) * std::sin(j);
}

double l_radial_d(int order, double j) {
    if (order < 0) throw std::invalid_argument("l_radial_d: order must be nonnegative");
    if (order == 0) return std::sin(j);
    if (j == 0.0) throw std::invalid_argument("l_radial_d: singular at j = 0 for positive order");
    return std::sin(j) + (2.0 * order / j) * std::cos(j) - (2.0 * order / (j * j)) * std::sin(j);
}

Quaternion l_function(int order, const Quaternion& jvec) {
    if (std::abs(jvec.r) > 1e-12)
        throw std::invalid_argument("l_function: argument must be pure");
    const double j = qnorm(jvec);
    if (j == 0.0) {
        if (order > 0)
            throw std::invalid_argument("l_function: singular at j = 0 for positive order");
        if (order < 0) throw std::invalid_argument("l_function: order must be nonnegative");
        return {1.0, 0.0, 0.0, 0.0};
    }
    const double c = l_radial_c(order, j);
    const double d = l_radial_d(order, j);
    return {c, jvec.i / j * d, jvec.j / j * d, jvec.k / j * d};
}

std::array<double, 4> boson_polar(double r, double theta, double th1, double th2) {
    if (r < 0.0) throw std::invalid_argument("boson_polar: radius must be nonnegative");
    if (theta < 0.0 || theta > kPi)
        throw std::invalid_argument("boson_polar: polar angle must lie in [0, pi]");
    const double ch = std::cos(theta / 2.0);
    const double sh = std::sin(theta / 2.0);
    return {r * std::cos(th1) * ch, r * std::cos(th2) * sh, r * std::sin(th2) * sh,
            r * std::sin(th1) * ch};
}

double boson_jacobian(double r, double theta) {
    if (r < 0.0) throw std::invalid_argument("boson_jacobian: radius must be nonnegative");
    if (theta < 0.0 || theta > kPi)
        throw std::invalid_argument("boson_jacobian: polar angle must lie in [0, pi]");
    return (r * r * r / 4.0) * std::sin(theta);
}

double ball4_volume_mc(std::size_t samples, std::uint64_t seed) {
    if (samples == 0) throw std::invalid_argument("ball4_volume_mc: samples must be positive");
    SplitMix64 rng = make_stream(seed, 0);
    double sum = 0.0;
    for (std::size_t i = 0; i < samples; ++i) {
        const double r = rng.uniform();
        const double theta = kPi * rng.uniform();
        rng.uniform();
        rng.uniform();
        sum += boson_jacobian(r, theta);
    }
    const double domain = 1.0 * kPi * (2.0 * kPi) * (2.0 * kPi);
    return domain * sum / static_cast<double>(samples);
}

std::array<double, 2> riesz_kernels(double x, double y) {
    const double r = std::hypot(x, y);
    if (r == 0.0) throw std::invalid_argument("riesz_kernels: singular at the origin");
    const double denom = 2.0 * kPi * r * r * r;
    return {x / denom, y / denom};
}

KineticReport kinetic_check(const std::array<double, 4>& p, double grid_step,
                            const Quaternion& q_e) {
    if (grid_step <= 0.0 || grid_step > 1e-2)
        throw std::invalid_argument("kinetic_check: grid_step must lie in (0, 1e-2]");
    if (qnorm(q_e) == 0.0) throw std::invalid_argument("kinetic_check: q_e must be nonzero");

    std::array<double, 4> base = {0.3, -0.2, 0.5, 0.1};
    double lambda = 0.0;
    for (int i = 0; i < 4; ++i) lambda += p[i] * base[i];
    int widest = 0;
    for (int i = 1; i < 4; ++i)
        if (std::abs(p[i]) > std::abs(p[widest])) widest = i;
    for (int attempt = 0; attempt < 64 && std::abs(std::cos(lambda)) < 0.1; ++attempt) {
        base[widest] += 0.37;
        lambda += 0.37 * p[widest];
    }

    const double h = grid_step;
    const auto psi_scalar = [&](const std::array<double, 4>& phi) {
        double l = 0.0;
        for (int i = 0; i < 4; ++i) l += p[i] * phi[i];
        return std::cos(l) / (2.0 * kPi);
    };
    const double center = psi_scalar(base);
    double second_sum = 0.0;
    for (int i = 0; i < 4; ++i) {
        std::array<double, 4> plus = base;
        std::array<double, 4> minus = base;
        plus[i] += h;
        minus[i] -= h;
        second_sum += (psi_scalar(plus) - 2.0 * center + psi_scalar(minus)) / (h * h);
    }
    const Quaternion psi = center * q_e;
    const Quaternion hpsi = (-second_sum / 6.0) * q_e;

    KineticReport report;
    const Quaternion psi_inv = qconj(psi) * (1.0 / qnorm2(psi));
    report.numeric_eig = psi_inv * hpsi;
    report.residual = qnorm(psi * report.numeric_eig - hpsi);
    report.three_component = (p[0] * p[0] + p[1] * p[1] + p[3] * p[3]) / 6.0;
    report.full = (p[0] * p[0] + p[1] * p[1] + p[2] * p[2] + p[3] * p[3]) / 6.0;
    return report;
}

}  // namespace quatlab
