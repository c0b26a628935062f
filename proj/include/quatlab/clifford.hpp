#pragma once

#include <array>

#include "quatlab/linalg.hpp"
#include "quatlab/quaternion.hpp"

namespace quatlab {

/// Multivector grade class for the bar involution: odd covers grades 1 and 3,
/// even covers grades 0, 2 and 4.
enum class Grade { odd, even };

/// The explicit 4x4 matrix catalog for the Clifford algebra of signature
/// (+,+,+,-): generators e1..e4, the six basis bivectors, the reflection
/// matrix, the barred bivectors, and the 2x2 blocks Q, J, U used by the
/// gamma recipes.
///
/// The generators and the bivectors are two independent sets of fixed
/// matrices. The generators anticommute with squares (+1,+1,+1,-1); the
/// bivector set carries its own consistent algebra (spatial-plane squares
/// -I4, time-plane squares +I4) but is not the set of pairwise generator
/// products. Both sets are kept exactly as fixed data.
struct BasisCatalog {
    std::array<ComplexMatrix, 4> e;        ///< generators, e[0] is e1
    std::array<ComplexMatrix, 6> biv;      ///< bivectors, pair order (12),(13),(14),(23),(24),(34)
    std::array<ComplexMatrix, 6> biv_bar;  ///< ref * biv, same order
    ComplexMatrix ref;                     ///< reflection matrix; coincides entrywise with e3
    ComplexMatrix q2, j2, u2;              ///< 2x2 blocks Q, J, U
};

/// The catalog singleton; immutable after construction.
const BasisCatalog& catalog();

/// Flat index of the bivector pair (i, j), 1 <= i < j <= 4.
/// Throws std::invalid_argument for any other index combination.
std::size_t pair_index(int i, int j);

const ComplexMatrix& generator(int i);        ///< e_i, i in 1..4
const ComplexMatrix& biv(int i, int j);       ///< basis bivector, i < j
const ComplexMatrix& biv_bar(int i, int j);   ///< barred basis bivector, i < j

/// Bar involution on 4x4 matrices: -ref*m for odd grade, ref*m for even
/// grade. bar(I4, even) = ref. Reproduces all six printed barred bivectors
/// from the bivectors.
ComplexMatrix bar(const ComplexMatrix& m, Grade grade);

/// Signs s_ij with biv(i,j) * biv_bar(i,j) = s_ij * chain_common_value(),
/// pair order (12),(13),(14),(23),(24),(34). Computed from the catalog.
const std::array<double, 6>& chain_signs();

/// The common matrix of the six signed bivector-bar products,
/// [[0,0,-1,0],[0,0,0,1],[-1,0,0,0],[0,1,0,0]]; equals -ref.
const ComplexMatrix& chain_common_value();

/// Max entrywise deviation of biv(i,j)*biv_bar(i,j) from
/// chain_signs()[k] * chain_common_value() over the six pairs. Exactly zero
/// for the catalog data.
double product_identity_check();

/// Dirac gamma matrices built from the Q, J, U blocks:
/// g0 = [[0,I2],[I2,0]], g1 = [[0,-Q],[Q,0]], g2 = [[0,-iJ],[iJ,0]],
/// g3 = [[0,-U],[U,0]].
std::array<ComplexMatrix, 4> dirac_gammas();

/// Max entrywise deviation of {g_mu, g_nu} from 2*diag(1,-1,-1,-1)_munu * I4.
double dirac_clifford_residual();

/// 4x4 real matrix of right Hamilton multiplication:
/// quat_right_rep(u) * vec(v) = vec(qmul(v, u)) on components (r,i,j,k).
/// Consequently quat_right_rep(qmul(u,v)) = quat_right_rep(v) * quat_right_rep(u).
ComplexMatrix quat_right_rep(const Quaternion& u);

/// 4x4 planar conformal coordinate matrix with 2x2 blocks
/// [[x, x*xbar],[I2, xbar]], x = [[i u1, u2],[-u2, -i u1]],
/// xbar = (u1 + i u2) I2.
ComplexMatrix coord_2p1d(double u1, double u2);

/// Inverse stereographic projection onto the unit 3-sphere:
/// (2u1, 2u2, 2u3, 1-|u|^2) / (1+|u|^2). Output has Euclidean norm 1.
std::array<double, 4> stereographic(const std::array<double, 3>& u);

/// Real coefficients of an even element: scalar, the six bivector
/// components in pair order (12),(13),(14),(23),(24),(34), and the volume
/// component.
struct EvenCoeffs {
    double lambda0 = 0.0;
    std::array<double, 6> lambda{};
    double lambda_omega = 0.0;
};

/// 2x2-block Kronecker images of the basis bivectors:
/// g(e1e3) = -J@I, g(e2e4) = -iJ@U, g(e1e4) = -Q@U, g(e2e3) = -iQ@I,
/// g(e3e4) = -U@U, g(e1e2) = -iU@I (@ the Kronecker product).
const ComplexMatrix& gamma_biv(int i, int j);

/// lambda0*I + sum lambda_ij*gamma_biv(i,j) + lambda_omega*gamma_omega,
/// with gamma_omega = gamma_biv(1,2)*gamma_biv(3,4).
ComplexMatrix gamma_embed(const EvenCoeffs& c);

/// The closed-form block pattern of the bivector part: with
/// p = l34 + i*l12, r = l13 + i*l24, s = l14 + i*l23, returns lambda0*I4 +
/// [[-p,0,r-s,0],[0,pbar,0,rbar+sbar],[-r-s,0,p,0],[0,-rbar+sbar,0,-pbar]].
/// Matches gamma_embed when lambda_omega = 0.
ComplexMatrix gamma_pattern(const EvenCoeffs& c);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace quatlab
