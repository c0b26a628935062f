#include "quatlab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace quatlab {

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::zero(std::size_t rows, std::size_t cols) {
    return ComplexMatrix(rows, cols);
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw std::invalid_argument("matrix add: shape mismatch");
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw std::invalid_argument("matrix sub: shape mismatch");
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex s) {
    for (auto& x : a_) x *= s;
    return *this;
}

void ComplexMatrix::set_block(std::size_t r0, std::size_t c0, const ComplexMatrix& b) {
    if (r0 + b.rows() > rows_ || c0 + b.cols() > cols_)
        throw std::invalid_argument("set_block: block exceeds matrix bounds");
    for (std::size_t r = 0; r < b.rows(); ++r)
        for (std::size_t c = 0; c < b.cols(); ++c) (*this)(r0 + r, c0 + c) = b(r, c);
}

ComplexMatrix ComplexMatrix::block(std::size_t r0, std::size_t c0, std::size_t rows,
                                   std::size_t cols) const {
    if (r0 + rows > rows_ || c0 + cols > cols_)
        throw std::invalid_argument("block: range exceeds matrix bounds");
    ComplexMatrix out(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) out(r, c) = (*this)(r0 + r, c0 + c);
    return out;
}

double ComplexMatrix::norm_fro() const {
    double s = 0.0;
    for (const auto& x : a_) s += std::norm(x);
    return std::sqrt(s);
}

double ComplexMatrix::max_abs() const {
    double m = 0.0;
    for (const auto& x : a_) m = std::max(m, std::abs(x));
    return m;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }

ComplexMatrix operator-(const ComplexMatrix& a) {
    ComplexMatrix out(a.rows(), a.cols());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = -a(r, c);
    return out;
}

ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }

ComplexMatrix mat_mul(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("mat_mul: inner dimension mismatch");
    ComplexMatrix out(a.rows(), b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Complex ark = a(r, k);
            if (ark == Complex(0.0, 0.0)) continue;
            for (std::size_t c = 0; c < b.cols(); ++c) out(r, c) += ark * b(k, c);
        }
    return out;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) { return mat_mul(a, b); }

ComplexMatrix dagger(const ComplexMatrix& a) {
    ComplexMatrix out(a.cols(), a.rows());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) out(c, r) = std::conj(a(r, c));
    return out;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("max_abs_diff: shape mismatch");
    double m = 0.0;
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) m = std::max(m, std::abs(a(r, c) - b(r, c)));
    return m;
}

namespace {

// Parlett-Reinsch balancing with radix-2 scale factors. Similarity transform,
// so eigenvalues are preserved exactly; powers of two avoid rounding.
void balance(ComplexMatrix& a) {
    const std::size_t n = a.rows();
    const double radix = 2.0;
    bool done = false;
    while (!done) {
        done = true;
        for (std::size_t i = 0; i < n; ++i) {
            double r = 0.0, c = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i) continue;
                r += std::abs(a(i, j));
                c += std::abs(a(j, i));
            }
            if (r == 0.0 || c == 0.0) continue;
            const double s = c + r;
            double f = 1.0;
            while (c < r / radix) {
                c *= radix;
                r /= radix;
                f *= radix;
            }
            while (c >= r * radix) {
                c /= radix;
                r *= radix;
                f /= radix;
            }
            if ((c + r) < 0.95 * s) {
                done = false;
                const double g = 1.0 / f;
                for (std::size_t j = 0; j < n; ++j) a(i, j) *= g;
                for (std::size_t j = 0; j < n; ++j) a(j, i) *= f;
            }
        }
    }
}

// Householder reduction to upper Hessenberg form (in place).
void hessenberg(ComplexMatrix& a) {
    const std::size_t n = a.rows();
    if (n < 3) return;
    for (std::size_t k = 0; k + 2 < n; ++k) {
        double scale = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) scale += std::abs(a(i, k));
        if (scale == 0.0) continue;

        std::vector<Complex> v(n, Complex(0.0, 0.0));
        double norm2 = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) {
            v[i] = a(i, k) / scale;
            norm2 += std::norm(v[i]);
        }
        const double alpha = std::sqrt(norm2);
        if (alpha == 0.0) continue;
        const Complex x0 = v[k + 1];
        const Complex phase =
            (std::abs(x0) == 0.0) ? Complex(1.0, 0.0) : x0 / std::abs(x0);
        v[k + 1] += phase * alpha;
        double vnorm2 = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) vnorm2 += std::norm(v[i]);
        if (vnorm2 == 0.0) continue;
        const double beta = 2.0 / vnorm2;

        // a := (I - beta v v*) a
        for (std::size_t j = 0; j < n; ++j) {
            Complex s(0.0, 0.0);
            for (std::size_t i = k + 1; i < n; ++i) s += std::conj(v[i]) * a(i, j);
            s *= beta;
            for (std::size_t i = k + 1; i < n; ++i) a(i, j) -= v[i] * s;
        }
        // a := a (I - beta v v*)
        for (std::size_t i = 0; i < n; ++i) {
            Complex s(0.0, 0.0);
            for (std::size_t j = k + 1; j < n; ++j) s += a(i, j) * v[j];
            s *= beta;
            for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= s * std::conj(v[j]);
        }
        for (std::size_t i = k + 2; i < n; ++i) a(i, k) = 0.0;
    }
}

struct Givens {
    double c;
    Complex s;
};

// Rotation [[c, s], [-conj(s), c]] (c real) that maps (x, z) to (r, 0).
Givens make_givens(Complex x, Complex z) {
    const double ax = std::abs(x);
    const double az = std::abs(z);
    if (az == 0.0) return {1.0, Complex(0.0, 0.0)};
    if (ax == 0.0) return {0.0, Complex(1.0, 0.0)};
    const double rho = std::hypot(ax, az);
    const double c = ax / rho;
    const Complex s = (x / ax) * std::conj(z) / rho;
    return {c, s};
}

// Wilkinson shift: eigenvalue of the trailing 2x2 block closest to its (1,1)
// entry.
Complex wilkinson_shift(Complex a, Complex b, Complex c, Complex d) {
    const Complex tr = a + d;
    const Complex det = a * d - b * c;
    const Complex disc = std::sqrt(tr * tr - 4.0 * det);
    const Complex mu1 = 0.5 * (tr + disc);
    const Complex mu2 = 0.5 * (tr - disc);
    return (std::abs(mu1 - d) <= std::abs(mu2 - d)) ? mu1 : mu2;
}

}  // namespace

std::vector<Complex> eig(const ComplexMatrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("eig: matrix must be square");
    const std::size_t n = a.rows();
    std::vector<Complex> ev(n);
    if (n == 0) return ev;
    if (n == 1) {
        ev[0] = a(0, 0);
        return ev;
    }

    ComplexMatrix h = a;
    balance(h);
    hessenberg(h);

    double hnorm = 0.0;
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) hnorm += std::abs(h(r, c));
    if (hnorm == 0.0) hnorm = 1.0;

    const int iter_cap = kEigMaxIterPerDim * static_cast<int>(n);
    int total_iters = 0;

    std::ptrdiff_t m = static_cast<std::ptrdiff_t>(n) - 1;
    int stall = 0;
    while (m >= 0) {
        // Deflate converged trailing eigenvalues.
        std::ptrdiff_t l = m;
        while (l > 0) {
            double s = std::abs(h(l - 1, l - 1)) + std::abs(h(l, l));
            if (s == 0.0) s = hnorm;
            if (std::abs(h(l, l - 1)) <= kEigDeflationTol * s) {
                h(l, l - 1) = 0.0;
                break;
            }
            --l;
        }
        if (l == m) {
            ev[m] = h(m, m);
            --m;
            stall = 0;
            continue;
        }

        if (++total_iters > iter_cap)
            throw std::runtime_error("eig: QR iteration cap exceeded");

        Complex mu = wilkinson_shift(h(m - 1, m - 1), h(m - 1, m), h(m, m - 1), h(m, m));
        ++stall;
        if (stall % 16 == 0) {
            // Exceptional shift to break rare symmetric stalls.
            mu = h(m, m) + Complex(0.75 * std::abs(h(m, m - 1)), 0.0);
        }

        // Explicit shifted QR step on the active window [l, m]:
        // factor h - mu I with Givens rotations, then form R Q and restore
        // the shift. Hessenberg structure is preserved.
        for (std::ptrdiff_t i = l; i <= m; ++i) h(i, i) -= mu;
        std::vector<Givens> rots;
        rots.reserve(static_cast<std::size_t>(m - l));
        for (std::ptrdiff_t k = l; k < m; ++k) {
            const Givens g = make_givens(h(k, k), h(k + 1, k));
            rots.push_back(g);
            for (std::ptrdiff_t j = k; j <= m; ++j) {
                const Complex t1 = h(k, j);
                const Complex t2 = h(k + 1, j);
                h(k, j) = g.c * t1 + g.s * t2;
                h(k + 1, j) = -std::conj(g.s) * t1 + g.c * t2;
            }
        }
        for (std::ptrdiff_t k = l; k < m; ++k) {
            const Givens g = rots[static_cast<std::size_t>(k - l)];
            const std::ptrdiff_t rmax = std::min(k + 1, m);
            for (std::ptrdiff_t i = l; i <= rmax; ++i) {
                const Complex t1 = h(i, k);
                const Complex t2 = h(i, k + 1);
                h(i, k) = g.c * t1 + std::conj(g.s) * t2;
                h(i, k + 1) = -g.s * t1 + g.c * t2;
            }
        }
        for (std::ptrdiff_t i = l; i <= m; ++i) h(i, i) += mu;
    }

    std::sort(ev.begin(), ev.end(), [](const Complex& x, const Complex& y) {
        const double ax = std::abs(x), ay = std::abs(y);
        if (ax != ay) return ax > ay;
        return std::arg(x) < std::arg(y);
    });
    return ev;
}

SvdResult svd(const ComplexMatrix& a) {
    const bool flip = a.rows() < a.cols();
    ComplexMatrix w = flip ? dagger(a) : a;  // rows >= cols
    const std::size_t m = w.rows();
    const std::size_t n = w.cols();

    ComplexMatrix v = ComplexMatrix::identity(n);

    // One-sided Jacobi: rotate column pairs of w until all pairs are
    // orthogonal; accumulated rotations form v.
    for (int sweep = 0;; ++sweep) {
        if (sweep >= kSvdMaxSweeps) throw std::runtime_error("svd: sweep cap exceeded");
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                double app = 0.0, aqq = 0.0;
                Complex apq(0.0, 0.0);
                for (std::size_t i = 0; i < m; ++i) {
                    app += std::norm(w(i, p));
                    aqq += std::norm(w(i, q));
                    apq += std::conj(w(i, p)) * w(i, q);
                }
                const double scale = std::sqrt(app) * std::sqrt(aqq);
                if (std::abs(apq) <= kSvdOffdiagTol * scale || scale == 0.0) continue;
                rotated = true;

                // Diagonalize the 2x2 Gram block [[app, apq], [conj(apq), aqq]]
                // with a unitary rotation: phase from apq, angle from the
                // symmetric Jacobi formula.
                const Complex phase = apq / std::abs(apq);
                const double tau = (aqq - app) / (2.0 * std::abs(apq));
                const double t =
                    (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                // Columns: (p, q) <- (c p - s conj(phase) q, s phase p + c q).
                for (std::size_t i = 0; i < m; ++i) {
                    const Complex wp = w(i, p);
                    const Complex wq = w(i, q);
                    w(i, p) = c * wp - s * std::conj(phase) * wq;
                    w(i, q) = s * phase * wp + c * wq;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const Complex vp = v(i, p);
                    const Complex vq = v(i, q);
                    v(i, p) = c * vp - s * std::conj(phase) * vq;
                    v(i, q) = s * phase * vp + c * vq;
                }
            }
        }
        if (!rotated) break;
    }

    std::vector<double> sigma(n);
    ComplexMatrix u(m, n);
    for (std::size_t p = 0; p < n; ++p) {
        double norm2 = 0.0;
        for (std::size_t i = 0; i < m; ++i) norm2 += std::norm(w(i, p));
        sigma[p] = std::sqrt(norm2);
    }

    // Order singular values descending (stable permutation of columns).
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::stable_sort(perm.begin(), perm.end(),
                     [&](std::size_t x, std::size_t y) { return sigma[x] > sigma[y]; });

    ComplexMatrix vs(n, n);
    std::vector<double> sig(n);
    for (std::size_t p = 0; p < n; ++p) {
        sig[p] = sigma[perm[p]];
        for (std::size_t i = 0; i < n; ++i) vs(i, p) = v(i, perm[p]);
        if (sig[p] > 0.0) {
            for (std::size_t i = 0; i < m; ++i) u(i, p) = w(i, perm[p]) / sig[p];
        }
    }

    // Columns with zero singular value get an orthonormal completion so u
    // stays unitary on its column span.
    for (std::size_t p = 0; p < n; ++p) {
        if (sig[p] > 0.0) continue;
        for (std::size_t basis = 0; basis < m; ++basis) {
            std::vector<Complex> cand(m, Complex(0.0, 0.0));
            cand[basis] = 1.0;
            for (std::size_t q = 0; q < n; ++q) {
                if (q == p || (sig[q] == 0.0 && q > p)) continue;
                Complex proj(0.0, 0.0);
                for (std::size_t i = 0; i < m; ++i) proj += std::conj(u(i, q)) * cand[i];
                for (std::size_t i = 0; i < m; ++i) cand[i] -= proj * u(i, q);
            }
            double norm2 = 0.0;
            for (const auto& x : cand) norm2 += std::norm(x);
            if (norm2 > 0.25) {
                const double inv = 1.0 / std::sqrt(norm2);
                for (std::size_t i = 0; i < m; ++i) u(i, p) = cand[i] * inv;
                break;
            }
        }
    }

    if (flip) return SvdResult{vs, std::move(sig), std::move(u)};
    return SvdResult{std::move(u), std::move(sig), std::move(vs)};
}

Complex det(const ComplexMatrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("det: matrix must be square");
    const std::size_t n = a.rows();
    ComplexMatrix m = a;
    Complex d = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        for (std::size_t r = k + 1; r < n; ++r) {
            if (std::abs(m(r, k)) > std::abs(m(piv, k))) piv = r;
        }
        if (std::abs(m(piv, k)) == 0.0) return 0.0;
        if (piv != k) {
            for (std::size_t c = k; c < n; ++c) std::swap(m(piv, c), m(k, c));
            d = -d;
        }
        d *= m(k, k);
        for (std::size_t r = k + 1; r < n; ++r) {
            const Complex f = m(r, k) / m(k, k);
            for (std::size_t c = k; c < n; ++c) m(r, c) -= f * m(k, c);
        }
    }
    return d;
}

double nuclear_norm(const ComplexMatrix& a) {
    const SvdResult r = svd(a);
    return std::accumulate(r.sigma.begin(), r.sigma.end(), 0.0);
}

std::string to_string(const ComplexMatrix& a) {
    std::ostringstream os;
    os.precision(6);
    for (std::size_t r = 0; r < a.rows(); ++r) {
        os << (r == 0 ? "[" : " ");
        for (std::size_t c = 0; c < a.cols(); ++c) {
            const Complex z = a(r, c);
            os << "(" << z.real() << (z.imag() < 0 ? "" : "+") << z.imag() << "i)";
            if (c + 1 < a.cols()) os << ", ";
        }
        os << (r + 1 == a.rows() ? "]" : ";\n");
    }
    return os.str();
}

}  // namespace quatlab
