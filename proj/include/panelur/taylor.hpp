#pragma once

// Truncated Taylor polynomials in one variable. Jet<N> carries the
// coefficients f_0..f_N of f(x0 + e) = sum_k f_k e^k.

#include <array>
#include <cmath>

namespace panelur {

template <int N>
struct Jet {
    static_assert(N >= 0);
    std::array<double, N + 1> c{};

    Jet() = default;
    Jet(double v) { c[0] = v; }  // NOLINT: implicit, lets literals mix with jets

    static Jet variable(double x0) {
        Jet j(x0);
        if constexpr (N > 0) j.c[1] = 1.0;
        return j;
    }

    double value() const { return c[0]; }
    double operator[](int k) const { return c[k]; }
    double& operator[](int k) { return c[k]; }

    // k-th derivative at the expansion point
    double derivative(int k) const {
        double f = 1.0;
        for (int i = 2; i <= k; ++i) f *= i;
        return c[k] * f;
    }

    Jet& operator+=(const Jet& o) {
        for (int k = 0; k <= N; ++k) c[k] += o.c[k];
        return *this;
    }
    Jet& operator-=(const Jet& o) {
        for (int k = 0; k <= N; ++k) c[k] -= o.c[k];
        return *this;
    }
    Jet& operator*=(const Jet& o) { return *this = *this * o; }
    Jet& operator/=(const Jet& o) { return *this = *this / o; }
    Jet& operator*=(double s) {
        for (auto& v : c) v *= s;
        return *this;
    }

    friend Jet operator-(Jet a) {
        for (auto& v : a.c) v = -v;
        return a;
    }
    friend Jet operator+(Jet a, const Jet& b) { return a += b; }
    friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
    friend Jet operator+(Jet a, double s) {
        a.c[0] += s;
        return a;
    }
    friend Jet operator+(double s, Jet a) { return a + s; }
    friend Jet operator-(Jet a, double s) {
        a.c[0] -= s;
        return a;
    }
    friend Jet operator-(double s, const Jet& a) { return -a + s; }
    friend Jet operator*(Jet a, double s) { return a *= s; }
    friend Jet operator*(double s, Jet a) { return a *= s; }
    friend Jet operator/(Jet a, double s) { return a *= 1.0 / s; }

    friend Jet operator*(const Jet& a, const Jet& b) {
        Jet r;
        for (int i = 0; i <= N; ++i)
            for (int j = 0; i + j <= N; ++j) r.c[i + j] += a.c[i] * b.c[j];
        return r;
    }

    friend Jet operator/(const Jet& a, const Jet& b) {
        Jet r;
        for (int k = 0; k <= N; ++k) {
            double s = a.c[k];
            for (int j = 1; j <= k; ++j) s -= b.c[j] * r.c[k - j];
            r.c[k] = s / b.c[0];
        }
        return r;
    }
    friend Jet operator/(double s, const Jet& b) { return Jet(s) / b; }
};

// a^p for a0 != 0
template <int N>
Jet<N> pow(const Jet<N>& a, double p) {
    Jet<N> r;
    r.c[0] = std::pow(a.c[0], p);
    for (int k = 1; k <= N; ++k) {
        double s = 0.0;
        for (int j = 1; j <= k; ++j) s += (p * j - (k - j)) * a.c[j] * r.c[k - j];
        r.c[k] = s / (k * a.c[0]);
    }
    return r;
}

template <int N>
Jet<N> sqrt(const Jet<N>& a) {
    return pow(a, 0.5);
}

template <int N>
Jet<N> exp(const Jet<N>& a) {
    Jet<N> r;
    r.c[0] = std::exp(a.c[0]);
    for (int k = 1; k <= N; ++k) {
        double s = 0.0;
        for (int j = 1; j <= k; ++j) s += j * a.c[j] * r.c[k - j];
        r.c[k] = s / k;
    }
    return r;
}

template <int N>
Jet<N> log(const Jet<N>& a) {
    Jet<N> r;
    r.c[0] = std::log(a.c[0]);
    for (int k = 1; k <= N; ++k) {
        double s = k * a.c[k];
        for (int j = 1; j < k; ++j) s -= j * r.c[j] * a.c[k - j];
        r.c[k] = s / (k * a.c[0]);
    }
    return r;
}

template <class T>
struct is_jet : std::false_type {};
template <int N>
struct is_jet<Jet<N>> : std::true_type {};

inline double value_of(double x) { return x; }
template <int N>
double value_of(const Jet<N>& x) {
    return x.value();
}

}  // namespace panelur
