#pragma once

// Entire kernels of z = mu^2:
//   g_n(z) = sum_k (-z)^k / (2k+n)!
// so g_0 = cos(sqrt z), g_1 = sin(sqrt z)/sqrt z, and
//   g_n = 1/n! - z g_{n+2},   d/dz g_n = -g_{n+1}/2 + (n/2) g_{n+2}.

#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <type_traits>

#include "panelur/taylor.hpp"

namespace panelur {

namespace detail {

inline double inv_factorial(int n) {
    static const auto table = [] {
        std::array<double, 171> t{};
        t[0] = 1.0;
        for (int i = 1; i < 171; ++i) t[i] = t[i - 1] / i;
        return t;
    }();
    return n < 171 ? table[n] : 0.0;
}

template <class T>
T kernel_series(const T& z, int n) {
    T term = T(inv_factorial(n));
    T sum = term;
    for (int k = 0; k < 400; ++k) {
        term *= -z / (double((2 * k + n + 1) * (2 * k + n + 2)));
        sum += term;
        if (std::abs(term) <= 1e-18 * std::abs(sum)) break;
    }
    return sum;
}

inline void trig_pair(double z, double& c0, double& c1) {
    if (z > 0) {
        const double mu = std::sqrt(z);
        c0 = std::cos(mu);
        c1 = std::sin(mu) / mu;
    } else {
        const double mu = std::sqrt(-z);
        c0 = std::cosh(mu);
        c1 = std::sinh(mu) / mu;
    }
}

inline void trig_pair(const std::complex<double>& z, std::complex<double>& c0, std::complex<double>& c1) {
    const std::complex<double> mu = std::sqrt(z);
    c0 = std::cos(mu);
    c1 = std::sin(mu) / mu;
}

}  // namespace detail

// g_0..g_nmax at a real or complex z
template <class T>
void kernel_values(const T& z, int nmax, T* out) {
    const double az = std::abs(z);
    int nstar = 0;
    while ((nstar + 1.0) * (nstar + 2.0) < 2.0 * az) ++nstar;
    if (nstar <= 1) {
        for (int n = 0; n <= nmax; ++n) out[n] = detail::kernel_series(z, n);
        return;
    }
    T g0, g1;
    detail::trig_pair(z, g0, g1);
    out[0] = g0;
    if (nmax >= 1) out[1] = g1;
    for (int n = 2; n <= nmax; ++n) {
        if (n < nstar)
            out[n] = (T(detail::inv_factorial(n - 2)) - out[n - 2]) / z;
        else
            out[n] = detail::kernel_series(z, n);
    }
}

// Taylor jets of g_0..g_nmax around z.value()
template <int N>
void kernel_values(const Jet<N>& z, int nmax, Jet<N>* out) {
    const int top = nmax + 2 * N;
    double base[64];
    kernel_values(z.value(), top, base);
    Jet<N> delta = z;
    delta[0] = 0.0;
    double work[64];
    double next[64];
    for (int m = 0; m <= nmax; ++m) {
        // coefficients of D^j g_m / j!
        std::array<double, N + 1> taylor{};
        for (int i = 0; i <= top; ++i) work[i] = 0.0;
        work[m] = 1.0;
        double fact = 1.0;
        for (int j = 0; j <= N; ++j) {
            if (j > 0) {
                for (int i = 0; i <= top; ++i) next[i] = 0.0;
                for (int i = 0; i + 2 <= top; ++i) {
                    if (work[i] == 0.0) continue;
                    next[i + 1] -= 0.5 * work[i];
                    next[i + 2] += 0.5 * i * work[i];
                }
                for (int i = 0; i <= top; ++i) work[i] = next[i];
                fact *= j;
            }
            double s = 0.0;
            for (int i = 0; i <= top; ++i) s += work[i] * base[i];
            taylor[j] = s / fact;
        }
        Jet<N> r(taylor[N]);
        for (int j = N - 1; j >= 0; --j) r = r * delta + taylor[j];
        out[m] = r;
    }
}

template <class T>
T kernel_g(const T& z, int n) {
    T v[64];
    kernel_values(z, n, v);
    return v[n];
}

// cos(sqrt z)
template <class T>
T kappa_c(const T& z) {
    return kernel_g(z, 0);
}

// sin(sqrt z)/sqrt z
template <class T>
T kappa_s(const T& z) {
    return kernel_g(z, 1);
}

// (cos(sqrt z) - 1)/z
template <class T>
T kappa_m(const T& z) {
    return -kernel_g(z, 2);
}

// (sin(sqrt z)/sqrt z - cos(sqrt z))/z
template <class T>
T kappa_d(const T& z) {
    T v[4];
    kernel_values(z, 3, v);
    return v[2] - v[3];
}

}  // namespace panelur
