#pragma once

#include <string>

#include "quatlab/clifford.hpp"
#include "quatlab/linalg.hpp"

namespace quatlab {

/// Choice of the time bivector e_i e_4 used for the t coordinate.
enum class TimeAxis { e1e4, e2e4, e3e4 };

/// First index i of the time bivector e_i e_4.
int time_axis_first_index(TimeAxis a);
const ComplexMatrix& time_biv(TimeAxis a);
const ComplexMatrix& time_biv_bar(TimeAxis a);

std::string to_string(TimeAxis a);
TimeAxis time_axis_from_string(const std::string& s);

struct SpacetimePoint {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
    double t = 0.0;
    TimeAxis axis = TimeAxis::e1e4;
};

/// Position object and its 8x8 conformal embedding. The blocks of phi are
/// [[x, x*xbar],[I4, xbar]]; the lower-left block is I4 exactly. After a
/// shift the xbar block is no longer bar(x), so both blocks are stored.
struct ConformalPoint {
    ComplexMatrix x;     ///< 4x4 upper-left block
    ComplexMatrix xbar;  ///< 4x4 lower-right block
    ComplexMatrix phi;   ///< 8x8 embedding
};

/// Coefficients of the shift element
/// c = c23*e2e3 + c13*e1e3 + c12*e1e2 + c_time*(e_i e4).
struct ShiftVector {
    double c23 = 0.0;
    double c13 = 0.0;
    double c12 = 0.0;
    double c_time = 0.0;
    TimeAxis axis = TimeAxis::e1e4;
};

/// Assembles phi from the four coordinate channels:
/// x -> biv(2,3), y -> biv(1,3), z -> biv(1,2), t -> the time bivector.
/// xbar uses the barred bivectors with the same coefficients.
ConformalPoint make_point(const SpacetimePoint& p);

/// 8x8 embedding [[x, x*xbar],[I4, xbar]] of an arbitrary block pair.
ComplexMatrix assemble_phi(const ComplexMatrix& x, const ComplexMatrix& xbar);

/// 4x4 matrix of a shift vector (same channel map as make_point).
ComplexMatrix shift_matrix(const ShiftVector& c);

/// Conjugation by the unipotent T = [[I4, C],[0, I4]]:
/// T phi T^{-1} has blocks x+C, (x+C)(xbar-C), I4, xbar-C.
ConformalPoint shift(const ConformalPoint& p, const ShiftVector& c);

/// v * phi * vd - phi for 8x8 matrices.
ComplexMatrix vconj(const ComplexMatrix& phi, const ComplexMatrix& v, const ComplexMatrix& vd);

}  // namespace quatlab
