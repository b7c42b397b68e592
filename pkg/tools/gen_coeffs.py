"""Generate the transition-point series coefficient tables.

Writes ``src/marcumq/_coeffs.py``.  Every coefficient is a rational
function of ``s = sqrt(2x+1)`` (for b, c, d) or ``t = sqrt(2y-1)`` (for a)
whose denominator is an integer times a power of ``s`` (``t``); the table
stores the integer numerator polynomial, the integer denominator and the
power.

Run from the repository root::

    python tools/gen_coeffs.py
"""

import sys
from pathlib import Path

import sympy as sp

ORDER = 12

s = sp.symbols("s", positive=True)


def trunc(c, n=ORDER + 3):
    return [sp.cancel(t) for t in c[:n]] + [sp.Integer(0)] * max(0, n - len(c))


def mul(a, b, n=ORDER + 3):
    out = [sp.Integer(0)] * n
    for i, ai in enumerate(a[:n]):
        if ai == 0:
            continue
        for j, bj in enumerate(b[: n - i]):
            out[i + j] += ai * bj
    return trunc(out, n)


def compose_unit(w, fn_coeffs, n=ORDER + 3):
    """sum_k fn_coeffs[k] * w**k for a series w with zero constant term."""
    out = [sp.Integer(0)] * n
    p = [sp.Integer(1)] + [sp.Integer(0)] * (n - 1)
    for k, ck in enumerate(fn_coeffs[:n]):
        if k > 0:
            p = mul(p, w, n)
        out = [o + ck * pi for o, pi in zip(out, p)]
    return trunc(out, n)


def sqrt1p(w, n=ORDER + 3):
    return compose_unit(w, [sp.binomial(sp.Rational(1, 2), k) for k in range(n)], n)


def powr1p(w, r, n=ORDER + 3):
    return compose_unit(w, [sp.binomial(r, k) for k in range(n)], n)


def log1p(w, n=ORDER + 3):
    return compose_unit(
        w, [sp.Integer(0)] + [sp.Rational((-1) ** (k + 1), k) for k in range(1, n)], n
    )


def compose(f, g, n=ORDER + 3):
    """f(g(z)) with g[0] == 0."""
    out = [sp.Integer(0)] * n
    p = [sp.Integer(1)] + [sp.Integer(0)] * (n - 1)
    for k, fk in enumerate(f[:n]):
        if k > 0:
            p = mul(p, g, n)
        out = [o + fk * pi for o, pi in zip(out, p)]
    return trunc(out, n)


def revert(phi, n=ORDER + 2):
    """Given zeta = u * phi(u), return u(zeta) as a series in zeta."""
    inv_phi = None
    u = [sp.Integer(0), 1 / phi[0]] + [sp.Integer(0)] * (n - 2)
    # fixed point u = zeta / phi(u); each pass fixes one more order
    for _ in range(n):
        ph = compose(phi, u, n)
        head = ph[0]
        rest = [sp.Integer(0)] + [c / head for c in ph[1:]]
        inv_phi = powr1p(rest, -1, n)
        u = [sp.Integer(0)] + [c / head for c in inv_phi[: n - 1]]
        u = trunc(u, n)
    return u


def zeta_factor(half_zeta_sq):
    """phi with zeta = u*phi(u) from the series of zeta**2/2 (starts at u**2)."""
    h = [2 * c for c in half_zeta_sq[2:]]
    h0 = h[0]
    rest = [sp.Integer(0)] + [c / h0 for c in h[1:]]
    root = sqrt1p(rest)
    return trunc([sp.sqrt(h0) * c for c in root])


def series_b_c_d():
    # x = (s^2-1)/2, y = x + 1 + u
    x = (s**2 - 1) / 2
    y0 = x + 1
    n = ORDER + 3
    # 1 + 4xy = s^4 + 2(s^2-1) u
    w = [sp.Integer(0), 2 * (s**2 - 1) / s**4] + [sp.Integer(0)] * (n - 2)
    root = sqrt1p(w)
    S = [s**2 * c for c in root]
    yser = [y0, sp.Integer(1)] + [sp.Integer(0)] * (n - 2)
    # ln((1+S)/(2y)) = ln((1+S)/(2 y0)) - ln(y/y0)
    one_plus_S = [1 + S[0]] + S[1:]
    lnA = log1p([sp.Integer(0)] + [c / one_plus_S[0] for c in one_plus_S[1:]])
    lnA[0] += sp.log(one_plus_S[0] / (2 * y0))
    lnB = log1p([sp.Integer(0), 1 / y0] + [sp.Integer(0)] * (n - 2))
    g = [sp.Integer(0)] * n
    for k in range(n):
        g[k] = (x if k == 0 else 0) + yser[k] - S[k] + lnA[k] - lnB[k]
    g = trunc([sp.simplify(c) for c in g])
    assert g[0] == 0 and g[1] == 0, g[:2]
    phi = zeta_factor(g)
    useries = revert(phi)
    b = [sp.factor(c) for c in useries[1 : ORDER + 1]]
    # f = (zeta/u) (1 + 2x + S) / (2 S^(1/2))
    num = [1 + 2 * x + S[0]] + S[1:]
    sq = powr1p([sp.Integer(0)] + [c / S[0] for c in S[1:]], sp.Rational(-1, 2))
    sq = [c / sp.sqrt(S[0]) for c in sq]
    F = mul(mul(phi, num), sq)
    F = [c / 2 for c in F]
    fz = compose(F, useries)
    c = [sp.factor(t) for t in fz[: ORDER + 1]]
    assert sp.simplify(c[0] - 1) == 0
    lnf = log1p([sp.Integer(0)] + fz[1:])
    d = [sp.factor(t) for t in lnf[1 : ORDER + 1]]
    return b, c, d


def series_a():
    # y = (t^2+1)/2 with t renamed to s; x = y - 1 - v
    y = (s**2 + 1) / 2
    n = ORDER + 3
    # 1 + 4xy = s^4 - 2(s^2+1) v
    w = [sp.Integer(0), -2 * (s**2 + 1) / s**4] + [sp.Integer(0)] * (n - 2)
    root = sqrt1p(w)
    S = [s**2 * c for c in root]
    one_plus_S = [1 + S[0]] + S[1:]
    lnA = log1p([sp.Integer(0)] + [c / one_plus_S[0] for c in one_plus_S[1:]])
    lnA[0] += sp.log(one_plus_S[0] / (2 * y))
    xser = [y - 1, sp.Integer(-1)] + [sp.Integer(0)] * (n - 2)
    g = [sp.Integer(0)] * n
    for k in range(n):
        g[k] = xser[k] + (y if k == 0 else 0) - S[k] + lnA[k]
    g = trunc([sp.simplify(c) for c in g])
    assert g[0] == 0 and g[1] == 0, g[:2]
    phi = zeta_factor(g)
    vseries = revert(phi)
    return [sp.factor(-c) for c in vseries[1 : ORDER + 1]]


def encode(expr):
    """(numerator coefficients in ascending powers, integer denominator, power of s)."""
    num, den = sp.fraction(sp.together(expr))
    den_poly = sp.Poly(den, s)
    assert len(den_poly.terms()) == 1, den
    (power,), dcoef = den_poly.terms()[0]
    num_poly = sp.Poly(sp.expand(num), s)
    coeffs = [num_poly.coeff_monomial(s**k) for k in range(num_poly.degree() + 1)]
    lcm = sp.ilcm(*[sp.fraction(c)[1] for c in coeffs + [dcoef]])
    coeffs = [int(c * lcm) for c in coeffs]
    dcoef = int(dcoef * lcm)
    return coeffs, dcoef, int(power)


def main():
    b, c, d = series_b_c_d()
    a = series_a()
    lines = [
        '"""Series coefficients at the transition line.',
        "",
        "Generated by ``tools/gen_coeffs.py``; do not edit by hand.  Each entry is",
        "``(numerator, denominator, power)`` and represents",
        "``sum(numerator[i] * r**i) / (denominator * r**power)`` with",
        "``r = sqrt(2y - 1)`` for ``A`` and ``r = sqrt(2x + 1)`` for ``B``, ``C``, ``D``.",
        '"""',
        "",
    ]
    for name, seq, first in (("A", a, 1), ("B", b, 1), ("C", c, 0), ("D", d, 0)):
        lines.append(f"# {name}[i] is {name.lower()}_{{i + {first}}}")
        lines.append(f"{name} = (")
        for expr in seq:
            lines.append(f"    {encode(expr)!r},")
        lines.append(")")
        lines.append("")
    out = Path(__file__).resolve().parents[1] / "src" / "marcumq" / "_coeffs.py"
    out.write_text("\n".join(lines))
    for name, seq in (("a", a), ("b", b), ("c", c), ("d", d)):
        for k, e in enumerate(seq[:4]):
            print(name, k, sp.simplify(e))
    return 0


if __name__ == "__main__":
    sys.exit(main())
