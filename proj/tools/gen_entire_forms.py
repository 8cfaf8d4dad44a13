#!/usr/bin/env python3
"""Generate entire-function forms of the Fredholm determinants D1..D4.

Each determinant is written with z = mu^2 = 2*lam*x - c^2 eliminated in favour of
(lam, c, z), then every negative power of z is removed using

    g_n(z) = 1/n! - z * g_{n+2}(z),   g_n(z) = sum_k (-z)^k / (2k+n)!

so the result is  e^{-c} * ( P(lam,c,z) + sum_n A_n(lam,c,z) g_n(z) )  with
polynomial P, A_n.  The script checks that every division by z is exact
(which validates the input formulas) and writes a C++ header.

Usage: python3 tools/gen_entire_forms.py > include/panelur/detail/entire_forms.hpp
"""
import re
import sympy as sp

lam, c, z, x, u, v = sp.symbols("lam c z x u v")
NG = 16
g = sp.symbols("g0:%d" % NG)


def determinants():
    g0, g1 = g[0], g[1]
    d1 = g0 + (c + lam) * g1
    d2 = ((lam**2 + 2 * lam * x - c**2 * lam - c**3) / z * g1
          - c**2 * g0 / z
          + (2 * lam**2 - 4 * c * lam * x - 2 * c**2 * lam) * (g0 - 1) / z**2)
    d3 = (-(c**3 + (c**2 + 3 * c + 3) * lam) / z * g1
          + 3 * (c**2 + 3 * c + 3 + 2 * (c + 1) * x) * lam / z**2 * (g1 - g0)
          - c**2 / z * g0)
    d4 = ((c**5 + (c**4 - 4 * (c**2 + 3 * c + 27) * lam - 8 * x * (c**2 - 3 * c - 3)) * lam) / z**2 * g1
          - 24 * (c**4 - 8 * x * lam**2 + 4 * (c + 1) * (x**2 - 3) * lam) * lam / z**3 * (g1 + g0 / z - 1 / z)
          + (c**4 / z**2 + 8 * (c**3 * (c + 2 * x) - 4 * (c**2 + 3 * c + 6) * lam) * lam / z**3) * g0
          + 4 * (c**4 - 4 * (c**2 + 3 * c - 3) * lam + 2 * c**2 * x * (c + 3)) * lam / z**3)
    return {1: (d1, 0), 2: (d2, 2), 3: (d3, 2), 4: (d4, 4)}


def split(expr):
    """expr polynomial in g's -> (p, {n: a_n})"""
    expr = sp.expand(expr)
    coeffs = {}
    rest = expr
    for n in range(NG):
        a = sp.expand(expr.coeff(g[n]))
        if a != 0:
            coeffs[n] = a
            rest -= a * g[n]
    rest = sp.expand(rest)
    for n in range(NG):
        assert rest.coeff(g[n]) == 0
    return rest, coeffs


def divide_by_z(p, coeffs):
    const = p.subs(z, 0) + sum(a.subs(z, 0) / sp.factorial(n) for n, a in coeffs.items())
    const = sp.expand(const)
    if const != 0:
        raise ValueError("numerator does not vanish at z=0: %s" % const)
    new_p = sp.expand((p - p.subs(z, 0)) / z)
    new = {}
    for n, a in coeffs.items():
        a0 = sp.expand(a.subs(z, 0))
        at = sp.expand((a - a0) / z)
        if at != 0:
            new[n] = sp.expand(new.get(n, 0) + at)
        if a0 != 0:
            new[n + 2] = sp.expand(new.get(n + 2, 0) - a0)
    new = {n: a for n, a in new.items() if a != 0}
    return new_p, new


def entire_form(d, m):
    num = sp.expand(sp.cancel(d * z**m))
    num = sp.expand(num.subs(x, (z + c**2) / (2 * lam)))
    num = sp.expand(sp.cancel(num))
    p, coeffs = split(num)
    for expr in [p] + list(coeffs.values()):
        assert sp.Poly(expr, lam, c, z) is not None
        assert not sp.denom(sp.together(expr)).has(lam)
    for _ in range(m):
        p, coeffs = divide_by_z(p, coeffs)
    return p, coeffs


def series_g(n, zz, terms=40):
    return sum((-zz)**k / sp.factorial(2 * k + n) for k in range(terms))


def numeric_check(d, p, coeffs, lamv, cv, xv):
    zv = 2 * lamv * xv - cv**2
    mu = sp.sqrt(sp.nsimplify(zv))
    subs = {lam: lamv, c: cv, x: xv, z: zv, g[0]: sp.cos(mu), g[1]: sp.sin(mu) / mu}
    direct = sp.N(d.subs(subs), 30)
    ent = p.subs({lam: lamv, c: cv, z: zv}) + sum(
        a.subs({lam: lamv, c: cv, z: zv}) * series_g(n, sp.Rational(zv)) for n, a in coeffs.items())
    ent = sp.N(ent, 30)
    assert abs(direct - ent) < 1e-20 * max(1, abs(direct)), (direct, ent)


def psi_direct(case):
    """Post-substitution m.g.f. brackets (times e^{k}) with k the scaled c."""
    k = c
    zz = 2 * v - k**2
    s = g[1]
    co = g[0]
    if case == 1:
        return co + (k - u) * s
    if case == 2:
        return ((u**2 + 2 * v + k**2 * u - k**3) / zz * s - k**2 * co / zz
                + (2 * u**2 - 4 * k * v + 2 * k**2 * u) * (co - 1) / zz**2)
    if case == 4:
        return ((k**5 - k**4 * u - 4 * (k**2 + 3 * k + 27) * u**2 - 8 * v * (k**2 - 3 * k - 3)) / zz**2 * s
                + 24 * (k**4 * u + 8 * v * u**2 - 4 * (k + 1) * (v**2 - 3 * u**2)) / zz**3 * (s + co / zz - 1 / zz)
                + (k**4 / zz**2 - 8 * (k**4 * u - k**3 * 2 * v + 4 * (k**2 + 3 * k + 6) * u**2) / zz**3) * co
                - 4 * (k**4 * u + 4 * (k**2 + 3 * k - 3) * u**2 - 2 * k**2 * v * (k + 3)) / zz**3)


def cpp_expr(expr):
    expr = sp.expand(expr)
    if expr == 0:
        return "T(0)"
    poly = sp.Poly(expr, lam, c, z)
    terms = []
    for (i, j, k), coef in poly.terms():
        coef = sp.Rational(coef)
        factors = []
        for name, e in (("l", i), ("c", j), ("z", k)):
            if e:
                factors.append("%s%d" % (name, e) if e > 1 else name)
        num, den = coef.p, coef.q
        lit = "%d.0" % abs(num) if den == 1 else "(%d.0 / %d.0)" % (abs(num), den)
        body = " * ".join(factors)
        if body:
            t = body if (abs(num) == 1 and den == 1) else lit + " * " + body
        else:
            t = "T(" + lit + ")"
        terms.append(("-" if num < 0 else "+", t))
    out = ""
    for idx, (sgn, t) in enumerate(terms):
        if idx == 0:
            out = ("-" + t) if sgn == "-" else t
        else:
            out += " %s %s" % (sgn, t)
    return out


def emit_function(name, p, coeffs, doc, with_lambda=True):
    maxg = max(coeffs) if coeffs else 0
    body = ["    T r = %s;" % cpp_expr(p)]
    for n in sorted(coeffs):
        body.append("    r += (%s) * g[%d];" % (cpp_expr(coeffs[n]), n))
    text = "\n".join(body)
    decls = []
    for base in ("l", "c", "z"):
        used = sorted({int(m) for m in re.findall(r"\b%s(\d+)\b" % base, text)})
        if used:
            top = max(used)
            chain = ["%s2 = %s * %s" % (base, base, base)]
            chain += ["%s%d = %s%d * %s" % (base, e, base, e - 1, base) for e in range(3, top + 1)]
            decls.append("    const T " + ", ".join(chain) + ";")
    args = "const T& l, const T& c, const T& z" if with_lambda else "const T& c, const T& z"
    lines = ["// %s" % doc, "template <class T>", "T %s(%s, const T* g) {" % (name, args)]
    lines += decls
    for arg in (("l", "c", "z") if with_lambda else ("c", "z")):
        if not re.search(r"\b%s\d*\b" % arg, text):
            lines.append("    (void)%s;" % arg)
    if "g[" not in text:
        lines.append("    (void)g;")
    lines += body
    lines += ["    return r;", "}"]
    return "\n".join(lines), maxg


def main():
    dets = determinants()
    out = []
    max_index = 0
    forms = {}
    for j, (d, m) in dets.items():
        p, coeffs = entire_form(d, m)
        forms[j] = (p, coeffs)
        for (lv, cv, xv) in [(sp.Rational(3, 7), sp.Rational(1, 3), sp.Rational(-5, 2)),
                             (sp.Rational(-2, 3), sp.Rational(6, 5), sp.Rational(7, 4)),
                             (sp.Rational(5, 2), 0, sp.Rational(1, 3))]:
            numeric_check(d, p, coeffs, lv, cv, xv)
        # normalization D_j(0;c,x) = e^{c}  (before the e^{-c} factor)
        norm = p.subs(lam, 0) + sum(a.subs(lam, 0) * sp.Symbol("G%d" % n) for n, a in coeffs.items())
        cv = sp.Rational(7, 10)
        val = sp.N(norm.subs(c, cv).subs(z, -cv**2).subs(
            {sp.Symbol("G%d" % n): series_g(n, -cv**2) for n in coeffs}), 25)
        assert abs(val - sp.exp(cv)) < 1e-20, (j, val)
        code, mg = emit_function("det%d_scaled" % j, p, coeffs,
                                 "e^{c} D_%d(l; c, x) with z = 2 l x - c^2" % j)
        max_index = max(max_index, mg)
        out.append(code)

    # m.g.f. brackets: lam = -u, collect in u; compare with the substituted forms
    bfuncs = []
    for case, j in ((1, 1), (2, 2), (4, 4)):
        p, coeffs = forms[j]
        sub = {lam: -u}
        pu = sp.expand(p.subs(sub))
        cu = {n: sp.expand(a.subs(sub)) for n, a in coeffs.items()}
        deg = max([sp.degree(pu, u)] + [sp.degree(a, u) for a in cu.values()])
        assert deg <= 2, deg
        parts = []
        for e in range(3):
            pe = pu.coeff(u, e)
            ce = {n: a.coeff(u, e) for n, a in cu.items() if a.coeff(u, e) != 0}
            parts.append((pe.subs(lam, 0), {n: a.subs(lam, 0) for n, a in ce.items()}))
        # cross-check against the post-substitution bracket at a few points
        ref = psi_direct(case)
        for (uv, kv, vv) in [(sp.Rational(1, 5), sp.Rational(1, 3), sp.Rational(-7, 3)),
                             (sp.Rational(-1, 2), sp.Rational(2, 1), sp.Rational(3, 2))]:
            zv = 2 * vv - kv**2
            mu = sp.sqrt(zv)
            rv = sp.N(ref.subs({u: uv, c: kv, v: vv, g[0]: sp.cos(mu), g[1]: sp.sin(mu) / mu}), 30)
            ev = 0
            for e, (pe, ce) in enumerate(parts):
                term = pe.subs({c: kv, z: zv}) + sum(a.subs({c: kv, z: zv}) * series_g(n, zv) for n, a in ce.items())
                ev += term * uv**e
            ev = sp.N(ev, 30)
            assert abs(rv - ev) < 1e-18 * max(1, abs(rv)), (case, rv, ev)
        for e, (pe, ce) in enumerate(parts):
            code, mg = emit_function("mgf%d_b%d_scaled" % (case, e), pe, ce,
                                     "e^{k} times the u^%d coefficient of the m.g.f. bracket, case %d" % (e, case),
                                     with_lambda=False)
            max_index = max(max_index, mg)
            bfuncs.append(code)

    print("// Generated by tools/gen_entire_forms.py. Do not edit by hand.")
    print("#pragma once")
    print()
    print("namespace panelur::detail {")
    print()
    print("inline constexpr int kMaxEntireIndex = %d;" % max_index)
    print()
    for code in out + bfuncs:
        print(code)
        print()
    print("}  // namespace panelur::detail")


if __name__ == "__main__":
    main()
