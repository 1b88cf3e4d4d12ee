"""Builders for the permutation and local-permutation families.

Every builder is deterministic: free choices (a non-residue, the element
beta outside the prime subfield, restriction constants) are always resolved
to the smallest rank that works, so a given (q, n) yields one fixed
polynomial.  Applicability predicates raise UnsupportedField (or the more
specific error named in the docstring) instead of returning wrong output.
"""

import itertools
from math import gcd

import numpy as np

from . import _kernels
from .errors import BadDegree, NoNonResidue, NotMaxLpp, NoValidB, UnsupportedField
from .gf import Field
from .mvpoly import (FuncTable, MultiPoly, compose_univariate, extend,
                     interpolate, monomial, poly_build, to_table, variable)
from .univ import is_univariate_pp, t_poly, transposition


def _is_lpp_quick(f: MultiPoly) -> bool:
    """Internal LPP test via the coordinate-scan kernel (no report)."""
    tbl = to_table(f)
    axis, _, _ = _kernels.lpp_scan(tbl.values, f.n, f.field.q)
    return axis < 0


# ---------------------------------------------------------------------------
# permutation families

def pp_hn(field: Field, n: int) -> MultiPoly:
    """x_1^{q-1}..x_{n-1}^{q-1}(t(x_n) - x_n) + x_n: a PP for every q whose
    degree is n(q-1)-1 whenever q > 2."""
    q = field.q
    if n < 1:
        raise ValueError("need at least one variable")
    head = (q - 1,) * (n - 1)
    tail = (0,) * (n - 1)
    # t(x) - x has coefficient 1 at every exponent 0..q-2
    terms = [(head + (k,), 1) for k in range(q - 1)]
    terms.append((tail + (1,), 1))
    return poly_build(field, n, terms)


def pp_monomial(field: Field, n: int) -> MultiPoly:
    """x_1^{q-1}..x_{n-1}^{q-1}x_n^{q-2} + x_n^{q-2}, a PP for odd p."""
    if field.p == 2:
        raise UnsupportedField("this family needs odd characteristic")
    if n < 1:
        raise ValueError("need at least one variable")
    q = field.q
    terms = [((q - 1,) * (n - 1) + (q - 2,), 1),
             ((0,) * (n - 1) + (q - 2,), 1)]
    return poly_build(field, n, terms)


def pp_dickson(field: Field, n: int) -> MultiPoly:
    """x_1^{q-1}..x_{n-1}^{q-1}(x_n^{q-2} + m(x_n)) + x_n^2 over q = 4^s > 4,
    where m collects the middle terms of the Dickson polynomial g_{q-2}(x, 1)
    = x^{q-2} + m(x) + x^2."""
    from .univ import dickson
    q = field.q
    if field.p != 2 or field.r % 2 or q <= 4:
        raise UnsupportedField("this family needs q = 4^s > 4")
    if n < 1:
        raise ValueError("need at least one variable")
    g = dickson(field, q - 2, 1)
    m = g - monomial(field, 1, (q - 2,)) - monomial(field, 1, (2,))
    inner = monomial(field, 1, (q - 2,)) + m
    head = (q - 1,) * (n - 1)
    terms = [(head + (e,), c) for (e,), c in inner.terms()]
    terms.append(((0,) * (n - 1) + (2,), 1))
    return poly_build(field, n, terms)


def pp_alpha4(field: Field, n: int) -> MultiPoly:
    """Over F_4: the sum of all monomials with per-variable exponent <= 3 and
    total degree <= 3n-1, plus x_1.  A PP of degree 3n-1."""
    if field.q != 4:
        raise UnsupportedField("this family lives over F_4")
    if n < 1:
        raise ValueError("need at least one variable")
    bound = 3 * n - 1
    terms = [(exps, 1) for exps in itertools.product(range(4), repeat=n)
             if sum(exps) <= bound]
    terms.append(((1,) + (0,) * (n - 1), 1))
    return poly_build(field, n, terms)


def _smallest_non_power(field: Field, d: int) -> int:
    """Smallest-rank element that is not a d-th power in F_q."""
    powers = {field.pow(w, d) for w in field.elements()}
    for a in field.elements():
        if a not in powers:
            return a
    raise NoNonResidue(f"every element is a {d}-th power")


def pp_product(field: Field, n: int, variant: str,
               g: MultiPoly | None = None, fy: MultiPoly | None = None,
               a_or_alpha: int | None = None) -> MultiPoly:
    """(g(x_1..x_n)^d - a) * f(y) family in n+1 variables, degree (n+1)(q-1)-1.

    QNR: d=2, q odd, a a quadratic non-residue.  NONCUBE: d=3, q=2^r with r
    even, a not a cube.  MERSENNE: the factor is x_1^{q-1}..x_n^{q-1} + alpha
    with alpha outside {0, 1}, for q = 2^r with r odd > 1.  In every variant
    f(y) defaults to the 0/1 transposition t, a PP of degree q-2.
    """
    q = field.q
    variant = variant.upper()
    if n < 1:
        raise ValueError("need at least one variable besides y")
    if variant == "QNR":
        if field.p == 2:
            raise UnsupportedField("QNR variant needs odd q")
        d = 2
    elif variant == "NONCUBE":
        if field.p != 2 or field.r % 2:
            raise UnsupportedField("NONCUBE variant needs q = 4^s")
        d = 3
    elif variant == "MERSENNE":
        if field.p != 2 or field.r % 2 == 0 or field.r == 1:
            raise UnsupportedField("MERSENNE variant needs q = 2^r, r odd > 1")
        d = None
    else:
        raise ValueError(f"unknown variant {variant!r}")

    if fy is None:
        fy = t_poly(field)
    else:
        if fy.n != 1 or fy.total_degree != q - 2 or not is_univariate_pp(fy):
            raise BadDegree("f(y) must be a univariate PP of degree q-2")

    if variant == "MERSENNE":
        alpha = 2 if a_or_alpha is None else field._check(a_or_alpha)
        if alpha in (0, 1):
            raise ValueError("alpha must avoid 0 and 1")
        factor = poly_build(field, n, [((q - 1,) * n, 1), ((0,) * n, alpha)])
        params = alpha
    else:
        if g is None:
            g = monomial(field, n, ((q - 1) // d,) * n)
        else:
            if g.n != n:
                raise BadDegree(f"g must have {n} variables")
            if g.total_degree != n * (q - 1) // d:
                raise BadDegree(f"g must have total degree {n * (q - 1) // d}")
        a = (_smallest_non_power(field, d) if a_or_alpha is None
             else field._check(a_or_alpha))
        if a in {field.pow(w, d) for w in field.elements()}:
            raise ValueError(f"{a} is a {d}-th power, not usable here")
        factor = g**d - poly_build(field, n, [((0,) * n, a)])
    return extend(factor, n + 1, 0) * extend(fy, n + 1, n)


# ---------------------------------------------------------------------------
# local permutation families

def lpp_beta(field: Field, n: int) -> MultiPoly:
    """Sum of all monomials with every exponent in [1, q-2], plus
    x_1 + .. + x_n; an LPP of degree n(q-2) for q = 2^r > 2."""
    q = field.q
    if field.p != 2 or q <= 2:
        raise UnsupportedField("this family needs q = 2^r > 2")
    if n < 1:
        raise ValueError("need at least one variable")
    terms = [(exps, 1) for exps in
             itertools.product(range(1, q - 1), repeat=n)]
    for i in range(n):
        e = [0] * n
        e[i] = 1
        terms.append((tuple(e), 1))
    return poly_build(field, n, terms)


def _sub_inverse_powers(f: MultiPoly) -> MultiPoly:
    """Substitute x_i := x_i^{q-2} simultaneously in every variable.

    Requires every exponent of f below q-1; then e*(q-2) folds to q-1-e for
    e >= 1, a plain index remap of the coefficient tensor.
    """
    q = f.field.q
    _, per_var = f.degrees()
    if max(per_var, default=0) >= q - 1:
        raise ValueError("exponent remap needs per-variable degrees < q-1")
    remap = np.arange(q, dtype=np.int64)
    remap[1:q - 1] = q - 1 - remap[1:q - 1]
    arr = f.coeffs
    for axis in range(f.n):
        arr = np.take(arr, remap, axis=axis)
    return MultiPoly(f.field, f.n, arr)


def lpp_power(field: Field, b: int, k: int = 1) -> MultiPoly:
    """Block-power construction in b^k variables, degree b^k(q-2).

    Seed (y_1+..+y_b)^b; at each level sum b shifted copies and raise to the
    b-th power; finally substitute y_i := x_i^{q-2}.  Needs 1 < b < p-1 and
    gcd(b, q-1) = 1.
    """
    p, q = field.p, field.q
    if not (isinstance(b, int) and 1 < b < p - 1):
        raise NoValidB(f"b={b} violates 1 < b < p-1 (p={p})")
    if gcd(b, q - 1) != 1:
        raise NoValidB(f"gcd({b}, {q - 1}) != 1")
    if not (isinstance(k, int) and k >= 1):
        raise ValueError("k must be a positive integer")
    f = poly_build(field, b, [(tuple(int(i == j) for j in range(b)), 1)
                              for i in range(b)])
    f = f**b
    for level in range(1, k):
        m = b**level
        nv = b * m
        s = extend(f, nv, 0)
        for j in range(1, b):
            s = s + extend(f, nv, j * m)
        f = s**b
    return _sub_inverse_powers(f)


def lpp_restrict(f: MultiPoly) -> MultiPoly:
    """Drop the first variable of a maximum-degree LPP by substituting the
    smallest constant that keeps the degree at (n-1)(q-2)."""
    field, n, q = f.field, f.n, f.field.q
    if n < 2:
        raise NotMaxLpp("need at least two variables to restrict")
    if f.total_degree != n * (q - 2):
        raise NotMaxLpp(
            f"degree {f.total_degree} is not the maximum {n * (q - 2)}")
    if not _is_lpp_quick(f):
        raise NotMaxLpp("input is not a local permutation polynomial")
    target = (n - 1) * (q - 2)
    for alpha in field.elements():
        g = f.substitute(0, alpha)
        if g.total_degree == target:
            return g
    raise NotMaxLpp("no restriction achieves the maximum degree")


def indicator_poly(field: Field) -> MultiPoly:
    """Univariate indicator of Z = {0, 1, .., p-2, z}: value 1 on Z, else 0.
    Z has p elements whose sum of values is 0 mod p while sum(a*1) != 0,
    so the interpolant has degree exactly q-2."""
    p, q = field.p, field.q
    if field.r < 2 or p == 2:
        raise UnsupportedField("needs an odd-characteristic extension field")
    vals = np.zeros(q, dtype=np.int64)
    vals[:p - 1] = 1
    vals[p] = 1
    return interpolate(FuncTable(field, 1, vals))


def lpp_indicator(field: Field, n: int) -> MultiPoly:
    """prod_i p(x_i) + sum_i t_beta(x_i) for odd p, q = p^r > 3: an LPP of
    degree n(q-2).  For prime q the same degree is reached through the
    block-power construction with b = p-2, restricted down to n variables."""
    p, q = field.p, field.q
    if p == 2 or q <= 3:
        raise UnsupportedField("needs odd p and q > 3")
    if n < 1:
        raise ValueError("need at least one variable")
    if field.r == 1:
        b = p - 2
        k = 1
        while b**k < n:
            k += 1
        f = lpp_power(field, b, k)
        while f.n > n:
            f = lpp_restrict(f)
        return f
    beta = p  # smallest rank outside the prime subfield
    ind = indicator_poly(field)
    tb = transposition(field, beta, p - 1)
    f = extend(ind, n, 0)
    for i in range(1, n):
        f = f * extend(ind, n, i)
    for i in range(n):
        f = f + extend(tb, n, i)
    return f


def lpp_chain(field: Field, n: int) -> MultiPoly:
    """The recurrence f_1 = x_1, f_i = t(f_{i-1}^{q-2} + x_i^{q-2}): an LPP
    for every q > 3; maximum degree n(q-2) proven only for small n, odd p."""
    q = field.q
    if q <= 3:
        raise UnsupportedField("the recurrence needs q > 3")
    if n < 1:
        raise ValueError("need at least one variable")
    t = t_poly(field)
    inv_mono = monomial(field, 1, (q - 2,))
    f = variable(field, n, 0)
    for i in range(1, n):
        e = [0] * n
        e[i] = q - 2
        g = compose_univariate(inv_mono, f) + monomial(field, n, tuple(e))
        f = compose_univariate(t, g)
    return f


def lpp_three(field: Field, variant: str) -> MultiPoly:
    """Three-variable families reaching degree 3(q-2), one per characteristic:
    A for p >= 5, B for q = 3^r > 3, C for q = 2^r > 2."""
    q = field.q
    p = field.p
    variant = variant.upper()
    t = t_poly(field)

    def mono3(i: int, e: int) -> MultiPoly:
        exps = [0, 0, 0]
        exps[i] = e
        return monomial(field, 3, tuple(exps))

    if variant == "A":
        if p in (2, 3):
            raise UnsupportedField("variant A needs p >= 5")
        f2 = compose_univariate(t, mono3(0, q - 2) + mono3(1, q - 2))
        return compose_univariate(t, f2 + mono3(2, q - 2))
    if variant == "B":
        if p != 3 or q <= 3:
            raise UnsupportedField("variant B needs q = 3^r > 3")
        fbar2 = compose_univariate(t, mono3(0, q - 4) + mono3(1, q - 2))
        return compose_univariate(t, fbar2 + mono3(2, q - 2))
    if variant == "C":
        if p != 2 or q <= 2:
            raise UnsupportedField("variant C needs q = 2^r > 2")
        s = (q - 2) // 2
        h2 = compose_univariate(t, mono3(0, q - 2) + mono3(1, s))
        inv_mono = monomial(field, 1, (q - 2,))
        return compose_univariate(inv_mono, h2 + mono3(2, s))
    raise ValueError(f"unknown variant {variant!r}")


def lpp_linear(field: Field, n: int) -> MultiPoly:
    """x_1 + .. + x_n: for q in {2, 3} every LPP is linear, so this is the
    canonical maximal one."""
    if field.q not in (2, 3):
        raise UnsupportedField("reserved for q in {2, 3}")
    if n < 1:
        raise ValueError("need at least one variable")
    f = variable(field, n, 0)
    for i in range(1, n):
        f = f + variable(field, n, i)
    return f


def lpp_max(field: Field, n: int) -> MultiPoly:
    """A maximum-degree LPP for any field: linear for q <= 3, the dense
    char-2 family for q = 2^r > 2, the indicator/power route otherwise."""
    if field.q in (2, 3):
        return lpp_linear(field, n)
    if field.p == 2:
        return lpp_beta(field, n)
    return lpp_indicator(field, n)


# ---------------------------------------------------------------------------
# registry for the CLI and the suite runner

FAMILY_TAGS = ("pp_hn", "pp_monomial", "pp_dickson", "pp_alpha4", "pp_qnr",
               "pp_noncube", "pp_mersenne", "lpp_beta", "lpp_power",
               "lpp_indicator", "lpp_chain", "lpp_3var_a", "lpp_3var_b",
               "lpp_3var_c", "lpp_linear")


def build_family(tag: str, field: Field, n: int | None = None,
                 b: int | None = None, k: int | None = None,
                 variant: str | None = None,
                 alpha_rank: int | None = None) -> tuple[MultiPoly, dict]:
    """Dispatch a family tag to its builder; returns (poly, resolved params).

    Raises ValueError for unusable flag combinations and the family's own
    errors for predicate failures.
    """
    tag = tag.lower()
    if tag == "pp_product":
        if variant is None:
            raise ValueError("pp_product needs --variant qnr|noncube|mersenne")
        tag = "pp_" + variant.lower()
    if tag == "lpp_three":
        if variant is None:
            raise ValueError("lpp_three needs --variant a|b|c")
        tag = "lpp_3var_" + variant.lower()
    if tag not in FAMILY_TAGS:
        raise ValueError(f"unknown family {tag!r}")

    def need_n() -> int:
        if n is None:
            raise ValueError(f"family {tag} needs --n")
        if n < 1:
            raise ValueError("--n must be positive")
        return n

    if tag in ("pp_hn", "pp_monomial", "pp_dickson", "pp_alpha4", "lpp_beta",
               "lpp_indicator", "lpp_chain", "lpp_linear"):
        builder = globals()[tag]
        return builder(field, need_n()), {}
    if tag in ("pp_qnr", "pp_noncube", "pp_mersenne"):
        var = tag[3:].upper()
        f = pp_product(field, need_n(), var, a_or_alpha=alpha_rank)
        if var == "MERSENNE":
            resolved = 2 if alpha_rank is None else alpha_rank
            return f, {"variant": "mersenne", "alpha": resolved}
        d = 2 if var == "QNR" else 3
        resolved = (_smallest_non_power(field, d) if alpha_rank is None
                    else alpha_rank)
        return f, {"variant": var.lower(), "a": int(resolved)}
    if tag == "lpp_power":
        if b is None:
            raise ValueError("lpp_power needs --b")
        kk = 1 if k is None else k
        if n is not None and n != b**kk:
            raise ValueError(f"lpp_power with b={b}, k={kk} has {b**kk} "
                             f"variables, not {n}")
        return lpp_power(field, b, kk), {"b": b, "k": kk}
    # lpp_3var_a / _b / _c
    if n is not None and n != 3:
        raise ValueError(f"family {tag} is fixed at 3 variables")
    return lpp_three(field, tag[-1]), {"variant": tag[-1]}
