#include "quatlab/conformal.hpp"

#include <stdexcept>

namespace quatlab {

int time_axis_first_index(TimeAxis a) {
    switch (a) {
        case TimeAxis::e1e4: return 1;
        case TimeAxis::e2e4: return 2;
        case TimeAxis::e3e4: return 3;
    }
    throw std::logic_error("time_axis_first_index: bad enum");
}

const ComplexMatrix& time_biv(TimeAxis a) { return biv(time_axis_first_index(a), 4); }
const ComplexMatrix& time_biv_bar(TimeAxis a) { return biv_bar(time_axis_first_index(a), 4); }

std::string to_string(TimeAxis a) {
    switch (a) {
        case TimeAxis::e1e4: return "e1e4";
        case TimeAxis::e2e4: return "e2e4";
        case TimeAxis::e3e4: return "e3e4";
    }
    throw std::logic_error("to_string(TimeAxis): bad enum");
}

TimeAxis time_axis_from_string(const std::string& s) {
    if (s == "e1e4") return TimeAxis::e1e4;
    if (s == "e2e4") return TimeAxis::e2e4;
    if (s == "e3e4") return TimeAxis::e3e4;
    throw std::invalid_argument("time axis must be one of e1e4, e2e4, e3e4: " + s);
}

namespace {

ComplexMatrix channel_combination(double x, double y, double z, double t, TimeAxis axis,
                                  bool barred) {
    const auto& b23 = barred ? biv_bar(2, 3) : biv(2, 3);
    const auto& b13 = barred ? biv_bar(1, 3) : biv(1, 3);
    const auto& b12 = barred ? biv_bar(1, 2) : biv(1, 2);
    const auto& bt = barred ? time_biv_bar(axis) : time_biv(axis);
    return Complex(x, 0.0) * b23 + Complex(y, 0.0) * b13 + Complex(z, 0.0) * b12 +
           Complex(t, 0.0) * bt;
}

}  // namespace

ComplexMatrix assemble_phi(const ComplexMatrix& x, const ComplexMatrix& xbar) {
    if (x.rows() != 4 || x.cols() != 4 || xbar.rows() != 4 || xbar.cols() != 4)
        throw std::invalid_argument("assemble_phi: blocks must be 4x4");
    ComplexMatrix phi(8, 8);
    phi.set_block(0, 0, x);
    phi.set_block(0, 4, x * xbar);
    phi.set_block(4, 0, ComplexMatrix::identity(4));
    phi.set_block(4, 4, xbar);
    return phi;
}

ConformalPoint make_point(const SpacetimePoint& p) {
    ConformalPoint out;
    out.x = channel_combination(p.x, p.y, p.z, p.t, p.axis, false);
    out.xbar = channel_combination(p.x, p.y, p.z, p.t, p.axis, true);
    out.phi = assemble_phi(out.x, out.xbar);
    return out;
}

ComplexMatrix shift_matrix(const ShiftVector& c) {
    return channel_combination(c.c23, c.c13, c.c12, c.c_time, c.axis, false);
}

ConformalPoint shift(const ConformalPoint& p, const ShiftVector& c) {
    const ComplexMatrix cm = shift_matrix(c);
    ConformalPoint out;
    out.x = p.x + cm;
    out.xbar = p.xbar - cm;
    out.phi = ComplexMatrix(8, 8);
    out.phi.set_block(0, 0, out.x);
    out.phi.set_block(0, 4, out.x * out.xbar);
    out.phi.set_block(4, 0, ComplexMatrix::identity(4));
    out.phi.set_block(4, 4, out.xbar);
    return out;
}

ComplexMatrix vconj(const ComplexMatrix& phi, const ComplexMatrix& v, const ComplexMatrix& vd) {
    if (phi.rows() != 8 || phi.cols() != 8 || v.rows() != 8 || v.cols() != 8 || vd.rows() != 8 ||
        vd.cols() != 8)
        throw std::invalid_argument("vconj: all matrices must be 8x8");
    return v * phi * vd - phi;
}

}  // namespace quatlab
