// Generated by tools/gen_entire_forms.py. Do not edit by hand.
#pragma once

namespace panelur::detail {

inline constexpr int kMaxEntireIndex = 8;

// e^{c} D_1(l; c, x) with z = 2 l x - c^2
template <class T>
T det1_scaled(const T& l, const T& c, const T& z, const T* g) {
    (void)z;
    T r = T(0);
    r += (T(1.0)) * g[0];
    r += (l + c) * g[1];
    return r;
}

// e^{c} D_2(l; c, x) with z = 2 l x - c^2
template <class T>
T det2_scaled(const T& l, const T& c, const T& z, const T* g) {
    const T l2 = l * l;
    const T c2 = c * c, c3 = c2 * c;
    (void)z;
    T r = T(0);
    r += (T(1.0)) * g[1];
    r += (c2 + 2.0 * c) * g[2];
    r += (-l2 + l * c2 + c3 - c2) * g[3];
    r += (2.0 * l2 - 2.0 * l * c2 - 2.0 * c3) * g[4];
    return r;
}

// e^{c} D_3(l; c, x) with z = 2 l x - c^2
template <class T>
T det3_scaled(const T& l, const T& c, const T& z, const T* g) {
    const T c2 = c * c, c3 = c2 * c;
    (void)z;
    T r = T(0);
    r += (c2 + 3.0 * c + T(3.0)) * g[2];
    r += (l * c2 + 3.0 * l * c + 3.0 * l + c3 - 3.0 * c - T(3.0)) * g[3];
    r += (-3.0 * l * c2 - 9.0 * l * c - 9.0 * l - 3.0 * c3 - 3.0 * c2) * g[4];
    r += (3.0 * l * c2 + 9.0 * l * c + 9.0 * l + 3.0 * c3 + 3.0 * c2) * g[5];
    return r;
}

// e^{c} D_4(l; c, x) with z = 2 l x - c^2
template <class T>
T det4_scaled(const T& l, const T& c, const T& z, const T* g) {
    const T l2 = l * l;
    const T c2 = c * c, c3 = c2 * c, c4 = c3 * c, c5 = c4 * c;
    (void)z;
    T r = T(0);
    r += (4.0 * c2 + 12.0 * c + T(12.0)) * g[3];
    r += (c4 + 8.0 * c3 - 24.0 * c - T(24.0)) * g[4];
    r += (-4.0 * l2 * c2 - 12.0 * l2 * c - 12.0 * l2 + l * c4 + c5 - 4.0 * c4 - 36.0 * c3 - 36.0 * c2) * g[5];
    r += (32.0 * l2 * c2 + 96.0 * l2 * c + 96.0 * l2 - 8.0 * l * c4 - 8.0 * c5 + 48.0 * c3 + 48.0 * c2) * g[6];
    r += (-96.0 * l2 * c2 - 288.0 * l2 * c - 288.0 * l2 + 24.0 * l * c4 + 24.0 * c5 + 24.0 * c4) * g[7];
    r += (96.0 * l2 * c2 + 288.0 * l2 * c + 288.0 * l2 - 24.0 * l * c4 - 24.0 * c5 - 24.0 * c4) * g[8];
    return r;
}

// e^{k} times the u^0 coefficient of the m.g.f. bracket, case 1
template <class T>
T mgf1_b0_scaled(const T& c, const T& z, const T* g) {
    (void)z;
    T r = T(0);
    r += (T(1.0)) * g[0];
    r += (c) * g[1];
    return r;
}

// e^{k} times the u^1 coefficient of the m.g.f. bracket, case 1
template <class T>
T mgf1_b1_scaled(const T& c, const T& z, const T* g) {
    (void)c;
    (void)z;
    T r = T(0);
    r += (-T(1.0)) * g[1];
    return r;
}

// e^{k} times the u^2 coefficient of the m.g.f. bracket, case 1
template <class T>
T mgf1_b2_scaled(const T& c, const T& z, const T* g) {
    (void)c;
    (void)z;
    (void)g;
    T r = T(0);
    return r;
}

// e^{k} times the u^0 coefficient of the m.g.f. bracket, case 2
template <class T>
T mgf2_b0_scaled(const T& c, const T& z, const T* g) {
    const T c2 = c * c, c3 = c2 * c;
    (void)z;
    T r = T(0);
    r += (T(1.0)) * g[1];
    r += (c2 + 2.0 * c) * g[2];
    r += (c3 - c2) * g[3];
    r += (-2.0 * c3) * g[4];
    return r;
}

// e^{k} times the u^1 coefficient of the m.g.f. bracket, case 2
template <class T>
T mgf2_b1_scaled(const T& c, const T& z, const T* g) {
    const T c2 = c * c;
    (void)z;
    T r = T(0);
    r += (-c2) * g[3];
    r += (2.0 * c2) * g[4];
    return r;
}

// e^{k} times the u^2 coefficient of the m.g.f. bracket, case 2
template <class T>
T mgf2_b2_scaled(const T& c, const T& z, const T* g) {
    (void)c;
    (void)z;
    T r = T(0);
    r += (-T(1.0)) * g[3];
    r += (T(2.0)) * g[4];
    return r;
}

// e^{k} times the u^0 coefficient of the m.g.f. bracket, case 4
template <class T>
T mgf4_b0_scaled(const T& c, const T& z, const T* g) {
    const T c2 = c * c, c3 = c2 * c, c4 = c3 * c, c5 = c4 * c;
    (void)z;
    T r = T(0);
    r += (4.0 * c2 + 12.0 * c + T(12.0)) * g[3];
    r += (c4 + 8.0 * c3 - 24.0 * c - T(24.0)) * g[4];
    r += (c5 - 4.0 * c4 - 36.0 * c3 - 36.0 * c2) * g[5];
    r += (-8.0 * c5 + 48.0 * c3 + 48.0 * c2) * g[6];
    r += (24.0 * c5 + 24.0 * c4) * g[7];
    r += (-24.0 * c5 - 24.0 * c4) * g[8];
    return r;
}

// e^{k} times the u^1 coefficient of the m.g.f. bracket, case 4
template <class T>
T mgf4_b1_scaled(const T& c, const T& z, const T* g) {
    const T c2 = c * c, c3 = c2 * c, c4 = c3 * c;
    (void)z;
    T r = T(0);
    r += (-c4) * g[5];
    r += (8.0 * c4) * g[6];
    r += (-24.0 * c4) * g[7];
    r += (24.0 * c4) * g[8];
    return r;
}

// e^{k} times the u^2 coefficient of the m.g.f. bracket, case 4
template <class T>
T mgf4_b2_scaled(const T& c, const T& z, const T* g) {
    const T c2 = c * c;
    (void)z;
    T r = T(0);
    r += (-4.0 * c2 - 12.0 * c - T(12.0)) * g[5];
    r += (32.0 * c2 + 96.0 * c + T(96.0)) * g[6];
    r += (-96.0 * c2 - 288.0 * c - T(288.0)) * g[7];
    r += (96.0 * c2 + 288.0 * c + T(288.0)) * g[8];
    return r;
}

}  // namespace panelur::detail
