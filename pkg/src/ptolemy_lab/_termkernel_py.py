"""Pure-Python term-map kernel for Laurent polynomial arithmetic.

A term map is a dict sending exponent tuples (one signed int per generator)
to nonzero Python ints.  The zero polynomial is the empty dict.  These
functions are the hot loop of exchange-graph exploration; _termkernel.pyx
is a compiled twin with identical semantics, selected at import time in
ptolemy_lab.laurent.
"""

from __future__ import annotations


def kadd(a: dict, b: dict) -> dict:
    out = dict(a)
    for exps, c in b.items():
        s = out.get(exps, 0) + c
        if s:
            out[exps] = s
        elif exps in out:
            del out[exps]
    return out


def kneg(a: dict) -> dict:
    return {exps: -c for exps, c in a.items()}


def kmul(a: dict, b: dict) -> dict:
    if len(a) > len(b):
        a, b = b, a
    out: dict = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            exps = tuple(x + y for x, y in zip(ea, eb))
            s = out.get(exps, 0) + ca * cb
            if s:
                out[exps] = s
            elif exps in out:
                del out[exps]
    return out


def kpow(a: dict, e: int) -> dict:
    if e < 0:
        raise ValueError("kpow expects a nonnegative exponent")
    n = None
    for exps in a:
        n = len(exps)
        break
    result = {(0,) * n: 1} if n is not None else {}
    if e == 0:
        if n is None:
            raise ValueError("0**0 of unknown arity")
        return result
    base = dict(a)
    while True:
        if e & 1:
            result = kmul(result, base)
        e >>= 1
        if not e:
            return result
        base = kmul(base, base)


def _shift_to_poly(a: dict) -> tuple[dict, tuple]:
    """Factor out the per-generator minimum exponent.

    Returns (p, shift) with a = x**shift * p and p an honest polynomial
    whose per-generator minimum exponent is 0.
    """
    it = iter(a)
    first = next(it)
    mins = list(first)
    for exps in it:
        for i, x in enumerate(exps):
            if x < mins[i]:
                mins[i] = x
    shift = tuple(mins)
    if not any(shift):
        return dict(a), shift
    p = {tuple(x - m for x, m in zip(exps, shift)): c for exps, c in a.items()}
    return p, shift


def kdiv_exact(a: dict, b: dict):
    """Exact division in the Laurent ring over the integers.

    Returns q with q*b == a, or None when no such Laurent polynomial with
    integer coefficients exists.  Raises ZeroDivisionError for b == 0.

    Monomials are units, so both operands are first reduced by their
    monomial content; divisibility is then decided by single-divisor
    polynomial division under descending lexicographic order, which
    reconstructs the quotient exactly when one exists (any term forced
    into a remainder refutes divisibility).
    """
    if not b:
        raise ZeroDivisionError("Laurent division by zero")
    if not a:
        return {}
    pa, sa = _shift_to_poly(a)
    pb, sb = _shift_to_poly(b)
    qshift = tuple(x - y for x, y in zip(sa, sb))

    lead_b = max(pb)
    coeff_b = pb[lead_b]
    rem = dict(pa)
    quot: dict = {}
    while rem:
        lead_r = max(rem)
        mono = tuple(x - y for x, y in zip(lead_r, lead_b))
        if any(x < 0 for x in mono):
            return None
        c, leftover = divmod(rem[lead_r], coeff_b)
        if leftover:
            return None
        quot[mono] = c
        for eb, cb in pb.items():
            exps = tuple(x + y for x, y in zip(mono, eb))
            s = rem.get(exps, 0) - c * cb
            if s:
                rem[exps] = s
            elif exps in rem:
                del rem[exps]
    if any(qshift):
        return {tuple(x + y for x, y in zip(exps, qshift)): c for exps, c in quot.items()}
    return quot
