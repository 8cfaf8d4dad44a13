#pragma once

// Fredholm determinants D_1..D_4 and the joint m.g.f.s of the limiting
// (U, V) pairs. psi(u, v) = E exp(uU + vV).

#include <array>
#include <cmath>
#include <complex>
#include <string>

#include "panelur/detail/entire_forms.hpp"
#include "panelur/errors.hpp"
#include "panelur/kernels.hpp"
#include "panelur/taylor.hpp"

namespace panelur {

enum class DeterministicCase { None, Intercept, InterceptTrend };

inline const char* case_name(DeterministicCase c) {
    switch (c) {
        case DeterministicCase::None: return "none";
        case DeterministicCase::Intercept: return "intercept";
        case DeterministicCase::InterceptTrend: return "trend";
    }
    return "?";
}

inline DeterministicCase parse_case(const std::string& s) {
    if (s == "none") return DeterministicCase::None;
    if (s == "intercept") return DeterministicCase::Intercept;
    if (s == "trend" || s == "intercept-trend") return DeterministicCase::InterceptTrend;
    throw InvalidArgument("unknown deterministic case '" + s + "'");
}

// D_j(lambda; c, x), j = 1..4
inline std::complex<double> fredholm_det(int j, std::complex<double> lambda, double c, double x) {
    using C = std::complex<double>;
    const C z = 2.0 * lambda * x - c * c;
    C g[detail::kMaxEntireIndex + 1];
    kernel_values(z, detail::kMaxEntireIndex, g);
    const C cc(c);
    C r;
    switch (j) {
        case 1: r = detail::det1_scaled(lambda, cc, z, g); break;
        case 2: r = detail::det2_scaled(lambda, cc, z, g); break;
        case 3: r = detail::det3_scaled(lambda, cc, z, g); break;
        case 4: r = detail::det4_scaled(lambda, cc, z, g); break;
        default: throw InvalidArgument("determinant index must be 1..4, got " + std::to_string(j));
    }
    return r * std::exp(-c);
}

// psi(u, v) = e^{-u/2} (b0 + b1 u + b2 u^2)^{-1/2}
template <class T>
struct MgfBracket {
    T b0, b1, b2;
};

// bracket coefficients at z = 2v - c^2
template <class T>
MgfBracket<T> mgf_bracket_z(DeterministicCase cs, const T& c, const T& z) {
    using std::exp;
    T g[detail::kMaxEntireIndex + 1];
    kernel_values(z, detail::kMaxEntireIndex, g);
    MgfBracket<T> b;
    switch (cs) {
        case DeterministicCase::None:
            b = {detail::mgf1_b0_scaled(c, z, g), detail::mgf1_b1_scaled(c, z, g), detail::mgf1_b2_scaled(c, z, g)};
            break;
        case DeterministicCase::Intercept:
            b = {detail::mgf2_b0_scaled(c, z, g), detail::mgf2_b1_scaled(c, z, g), detail::mgf2_b2_scaled(c, z, g)};
            break;
        case DeterministicCase::InterceptTrend:
            b = {detail::mgf4_b0_scaled(c, z, g), detail::mgf4_b1_scaled(c, z, g), detail::mgf4_b2_scaled(c, z, g)};
            break;
    }
    const T s = exp(-c);
    b.b0 = b.b0 * s;
    b.b1 = b.b1 * s;
    b.b2 = b.b2 * s;
    return b;
}

template <class T>
MgfBracket<T> mgf_bracket(DeterministicCase cs, const T& v, const T& c) {
    return mgf_bracket_z(cs, c, T(2.0) * v - c * c);
}

inline void check_bracket(double b, const char* where) {
    if (!(b > 0.0)) throw DomainError(std::string(where) + ": m.g.f. bracket is not positive");
}

// psi(u, v) for real or complex u (complex u serves complex-step checks)
template <class T>
T joint_mgf(DeterministicCase cs, const T& u, double v, double c) {
    using std::exp;
    using std::sqrt;
    const auto b = mgf_bracket(cs, v, c);
    const T B = T(b.b0) + T(b.b1) * u + T(b.b2) * u * u;
    if constexpr (std::is_same_v<T, double>) check_bracket(B, "joint_mgf");
    else check_bracket(std::real(B), "joint_mgf");
    return exp(-u / 2.0) / sqrt(B);
}

inline double joint_mgf(DeterministicCase cs, double u, double v, double c) {
    return joint_mgf<double>(cs, u, v, c);
}

// d^p/du^p psi(u, -v) at u = 0 for p = 0..3. T is double or a jet in c.
template <class T>
std::array<T, 4> mgf_u_derivatives_z(DeterministicCase cs, const T& c, const T& z) {
    using std::pow;
    const auto b = mgf_bracket_z(cs, c, z);
    check_bracket(value_of(b.b0), "mgf_u_derivatives");
    const T beta1 = b.b1 / b.b0;
    const T beta2 = b.b2 / b.b0;
    // (1 + beta1 u + beta2 u^2)^{-1/2}
    const T s0 = T(1.0);
    const T s1 = -0.5 * beta1;
    const T s2 = -0.5 * beta2 + 0.375 * beta1 * beta1;
    const T s3 = 0.75 * beta1 * beta2 - 0.3125 * beta1 * beta1 * beta1;
    // times e^{-u/2}
    const T e1 = -0.5, e2 = 0.125, e3 = -1.0 / 48.0;
    const T p0 = s0;
    const T p1 = s1 + e1;
    const T p2 = s2 + e1 * s1 + e2;
    const T p3 = s3 + e1 * s2 + e2 * s1 + e3;
    const T scale = pow(b.b0, -0.5);
    return {scale * p0, scale * p1, 2.0 * scale * p2, 6.0 * scale * p3};
}

inline std::array<double, 4> mgf_u_derivatives(DeterministicCase cs, double v, double c) {
    return mgf_u_derivatives_z<double>(cs, c, -2.0 * v - c * c);
}

// d/du psi(u, -v) at u = 0
inline double mgf_du0(DeterministicCase cs, double v, double c) {
    const auto b = mgf_bracket(cs, -v, c);
    check_bracket(b.b0, "mgf_du0");
    return -0.5 / std::sqrt(b.b0) - 0.5 * b.b1 / (b.b0 * std::sqrt(b.b0));
}

// d/dv of psi(0, -v)
inline double mgf_dv0(DeterministicCase cs, double v, double c) {
    const auto b = mgf_bracket(cs, -Jet<1>::variable(v), Jet<1>(c));
    check_bracket(b.b0.value(), "mgf_dv0");
    return pow(b.b0, -0.5)[1];
}

// d^n/dv^n psi(0, -v) for n = 0..N
template <int N>
Jet<N> mgf_v_jet(DeterministicCase cs, double v, double c) {
    const auto b = mgf_bracket(cs, -Jet<N>::variable(v), Jet<N>(c));
    check_bracket(b.b0.value(), "mgf_v_jet");
    return pow(b.b0, -0.5);
}

struct UVMoments {
    double mean_u, var_u, mean_v, var_v;
};

// first two moments of U and V from the m.g.f. at the origin
inline UVMoments mgf_moments(DeterministicCase cs, double c) {
    const auto du = mgf_u_derivatives(cs, 0.0, c);
    const Jet<2> pv = mgf_v_jet<2>(cs, 0.0, c);  // psi(0, -v)
    const double ev = -pv.derivative(1);
    const double ev2 = pv.derivative(2);
    return {du[1], du[2] - du[1] * du[1], ev, ev2 - ev * ev};
}

}  // namespace panelur
