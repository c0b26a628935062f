#include "quatlab/clifford.hpp"

#include <cmath>
#include <stdexcept>

namespace quatlab {

namespace {

ComplexMatrix m4(std::initializer_list<Complex> entries) {
    ComplexMatrix m(4, 4);
    std::size_t idx = 0;
    for (const Complex& z : entries) {
        m(idx / 4, idx % 4) = z;
        ++idx;
    }
    if (idx != 16) throw std::logic_error("m4: need 16 entries");
    return m;
}

ComplexMatrix m2(Complex a, Complex b, Complex c, Complex d) {
    ComplexMatrix m(2, 2);
    m(0, 0) = a;
    m(0, 1) = b;
    m(1, 0) = c;
    m(1, 1) = d;
    return m;
}

constexpr Complex O{0.0, 0.0};
constexpr Complex P{1.0, 0.0};
constexpr Complex N{-1.0, 0.0};
constexpr Complex PI_{0.0, 1.0};   // +sqrt(-1)
constexpr Complex NI{0.0, -1.0};   // -sqrt(-1)

BasisCatalog build_catalog() {
    BasisCatalog c;
    c.e[0] = m4({P, O, O, O,
                 O, N, O, O,
                 O, O, N, O,
                 O, O, O, P});
    c.e[1] = m4({O, P, O, O,
                 P, O, O, O,
                 O, O, O, P,
                 O, O, P, O});
    c.e[2] = m4({O, O, P, O,
                 O, O, O, N,
                 P, O, O, O,
                 O, N, O, O});
    c.e[3] = m4({O, N, O, O,
                 P, O, O, O,
                 O, O, O, N,
                 O, O, P, O});
    c.ref = c.e[2];

    c.biv[pair_index(1, 2)] = m4({NI, O, O, O,
                                  O, PI_, O, O,
                                  O, O, NI, O,
                                  O, O, O, PI_});
    c.biv[pair_index(1, 3)] = m4({O, P, O, O,
                                  N, O, O, O,
                                  O, O, O, P,
                                  O, O, N, O});
    c.biv[pair_index(1, 4)] = m4({O, N, O, O,
                                  N, O, O, O,
                                  O, O, O, P,
                                  O, O, P, O});
    c.biv[pair_index(2, 3)] = m4({O, NI, O, O,
                                  NI, O, O, O,
                                  O, O, O, PI_,
                                  O, O, PI_, O});
    c.biv[pair_index(2, 4)] = m4({O, PI_, O, O,
                                  NI, O, O, O,
                                  O, O, O, PI_,
                                  O, O, NI, O});
    c.biv[pair_index(3, 4)] = m4({N, O, O, O,
                                  O, P, O, O,
                                  O, O, P, O,
                                  O, O, O, N});

    for (std::size_t k = 0; k < 6; ++k) c.biv_bar[k] = c.ref * c.biv[k];

    c.q2 = m2(O, P, P, O);
    c.j2 = m2(O, N, P, O);
    c.u2 = m2(P, O, O, N);
    return c;
}

}  // namespace

const BasisCatalog& catalog() {
    static const BasisCatalog c = build_catalog();
    return c;
}

std::size_t pair_index(int i, int j) {
    if (i < 1 || j > 4 || i >= j) throw std::invalid_argument("pair_index: need 1 <= i < j <= 4");
    static constexpr int base[4] = {0, 0, 3, 5};  // pairs (1,*) start at 0, (2,*) at 3, (3,*) at 5
    return static_cast<std::size_t>(base[i] + (j - i - 1));
}

const ComplexMatrix& generator(int i) {
    if (i < 1 || i > 4) throw std::invalid_argument("generator: index must be in 1..4");
    return catalog().e[static_cast<std::size_t>(i - 1)];
}

const ComplexMatrix& biv(int i, int j) { return catalog().biv[pair_index(i, j)]; }
const ComplexMatrix& biv_bar(int i, int j) { return catalog().biv_bar[pair_index(i, j)]; }

ComplexMatrix bar(const ComplexMatrix& m, Grade grade) {
    if (m.rows() != 4 || m.cols() != 4) throw std::invalid_argument("bar: matrix must be 4x4");
    ComplexMatrix out = catalog().ref * m;
    if (grade == Grade::odd) out *= Complex(-1.0, 0.0);
    return out;
}

const std::array<double, 6>& chain_signs() {
    static const std::array<double, 6> signs = [] {
        std::array<double, 6> s{};
        const ComplexMatrix& common = chain_common_value();
        for (std::size_t k = 0; k < 6; ++k) {
            const ComplexMatrix prod = catalog().biv[k] * catalog().biv_bar[k];
            const double dev_plus = max_abs_diff(prod, common);
            const double dev_minus = max_abs_diff(prod, -common);
            s[k] = (dev_plus <= dev_minus) ? 1.0 : -1.0;
        }
        return s;
    }();
    return signs;
}

const ComplexMatrix& chain_common_value() {
    static const ComplexMatrix m = m4({O, O, N, O,
                                       O, O, O, P,
                                       N, O, O, O,
                                       O, P, O, O});
    return m;
}

double product_identity_check() {
    double dev = 0.0;
    for (std::size_t k = 0; k < 6; ++k) {
        const ComplexMatrix prod = catalog().biv[k] * catalog().biv_bar[k];
        const ComplexMatrix expected = Complex(chain_signs()[k], 0.0) * chain_common_value();
        dev = std::max(dev, max_abs_diff(prod, expected));
    }
    return dev;
}

std::array<ComplexMatrix, 4> dirac_gammas() {
    const BasisCatalog& c = catalog();
    const ComplexMatrix i2 = ComplexMatrix::identity(2);
    auto block_off = [](const ComplexMatrix& upper, const ComplexMatrix& lower) {
        ComplexMatrix g(4, 4);
        g.set_block(0, 2, upper);
        g.set_block(2, 0, lower);
        return g;
    };
    return {block_off(i2, i2), block_off(-c.q2, c.q2), block_off(NI * c.j2, PI_ * c.j2),
            block_off(-c.u2, c.u2)};
}

double dirac_clifford_residual() {
    const auto g = dirac_gammas();
    static constexpr double eta[4] = {1.0, -1.0, -1.0, -1.0};
    const ComplexMatrix i4 = ComplexMatrix::identity(4);
    double dev = 0.0;
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu) {
            const ComplexMatrix anti = g[mu] * g[nu] + g[nu] * g[mu];
            const double expected = (mu == nu) ? 2.0 * eta[mu] : 0.0;
            dev = std::max(dev, max_abs_diff(anti, Complex(expected, 0.0) * i4));
        }
    return dev;
}

ComplexMatrix quat_right_rep(const Quaternion& u) {
    const Complex u0(u.r, 0.0), u1(u.i, 0.0), u2(u.j, 0.0), u3(u.k, 0.0);
    return m4({u0, -u1, -u2, -u3,
               u1, u0, u3, -u2,
               u2, -u3, u0, u1,
               u3, u2, -u1, u0});
}

ComplexMatrix coord_2p1d(double u1, double u2) {
    const Complex a(0.0, u1);       // i u1
    const Complex b(u2, 0.0);
    const Complex w(u1, u2);        // u1 + i u2
    ComplexMatrix x = m2(a, b, -b, -a);
    ComplexMatrix xbar = m2(w, O, O, w);
    ComplexMatrix out(4, 4);
    out.set_block(0, 0, x);
    out.set_block(0, 2, x * xbar);
    out.set_block(2, 0, ComplexMatrix::identity(2));
    out.set_block(2, 2, xbar);
    return out;
}

std::array<double, 4> stereographic(const std::array<double, 3>& u) {
    const double n2 = u[0] * u[0] + u[1] * u[1] + u[2] * u[2];
    const double inv = 1.0 / (1.0 + n2);
    return {2.0 * u[0] * inv, 2.0 * u[1] * inv, 2.0 * u[2] * inv, (1.0 - n2) * inv};
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (a(i, j) == O) continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
        }
    return out;
}

const ComplexMatrix& gamma_biv(int i, int j) {
    static const std::array<ComplexMatrix, 6> gammas = [] {
        const BasisCatalog& c = catalog();
        const ComplexMatrix i2 = ComplexMatrix::identity(2);
        std::array<ComplexMatrix, 6> g;
        g[pair_index(1, 2)] = kron(NI * c.u2, i2);
        g[pair_index(1, 3)] = kron(-c.j2, i2);
        g[pair_index(1, 4)] = kron(-c.q2, c.u2);
        g[pair_index(2, 3)] = kron(NI * c.q2, i2);
        g[pair_index(2, 4)] = kron(NI * c.j2, c.u2);
        g[pair_index(3, 4)] = kron(-c.u2, c.u2);
        return g;
    }();
    return gammas[pair_index(i, j)];
}

ComplexMatrix gamma_embed(const EvenCoeffs& c) {
    ComplexMatrix out = Complex(c.lambda0, 0.0) * ComplexMatrix::identity(4);
    static constexpr int pairs[6][2] = {{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}};
    for (std::size_t k = 0; k < 6; ++k)
        out += Complex(c.lambda[k], 0.0) * gamma_biv(pairs[k][0], pairs[k][1]);
    const ComplexMatrix gamma_omega = gamma_biv(1, 2) * gamma_biv(3, 4);
    out += Complex(c.lambda_omega, 0.0) * gamma_omega;
    return out;
}

ComplexMatrix gamma_pattern(const EvenCoeffs& c) {
    const Complex p(c.lambda[pair_index(3, 4)], c.lambda[pair_index(1, 2)]);
    const Complex r(c.lambda[pair_index(1, 3)], c.lambda[pair_index(2, 4)]);
    const Complex s(c.lambda[pair_index(1, 4)], c.lambda[pair_index(2, 3)]);
    const Complex pb = std::conj(p), rb = std::conj(r), sb = std::conj(s);
    ComplexMatrix out = m4({-p, O, r - s, O,
                            O, pb, O, rb + sb,
                            -r - s, O, p, O,
                            O, -rb + sb, O, -pb});
    out += Complex(c.lambda0, 0.0) * ComplexMatrix::identity(4);
    return out;
}

}  // namespace quatlab
