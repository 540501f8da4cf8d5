# cython: language_level=3
# cython: binding=False
"""Compiled term-map kernel for Laurent arithmetic.

Mirrors ptolemy_lab._termkernel_py exactly; see that module for the
contract.  Terms are dicts mapping exponent tuples to nonzero Python ints.
Coefficients stay PyObject ints throughout (they overflow C types within a
few mutation steps), so the win over the pure kernel comes from tighter
dict/tuple loops, not from native integer math.
"""

cpdef dict kadd(dict a, dict b):
    """Sum of two term maps."""
    cdef dict out
    cdef object exps, coeff, cur
    if len(a) < len(b):
        a, b = b, a
    out = dict(a)
    for exps, coeff in b.items():
        cur = out.get(exps)
        if cur is None:
            out[exps] = coeff
        else:
            cur = cur + coeff
            if cur:
                out[exps] = cur
            else:
                del out[exps]
    return out


cpdef dict kneg(dict a):
    """Negation of a term map."""
    cdef dict out = {}
    cdef object exps, coeff
    for exps, coeff in a.items():
        out[exps] = -coeff
    return out


cdef inline tuple _tadd(tuple u, tuple v):
    cdef Py_ssize_t i, n = len(u)
    cdef list out = [0] * n
    for i in range(n):
        out[i] = u[i] + v[i]
    return tuple(out)


cpdef dict kmul(dict a, dict b):
    """Product of two term maps."""
    cdef dict out = {}
    cdef object ea, ca, eb, cb, cur, coeff
    cdef tuple key
    if not a or not b:
        return out
    if len(a) > len(b):
        a, b = b, a
    for ea, ca in a.items():
        for eb, cb in b.items():
            key = _tadd(<tuple> ea, <tuple> eb)
            coeff = ca * cb
            cur = out.get(key)
            if cur is None:
                out[key] = coeff
            else:
                cur = cur + coeff
                if cur:
                    out[key] = cur
                else:
                    del out[key]
    return out


cpdef dict kpow(dict a, long long e):
    """Nonnegative power of a term map by binary exponentiation."""
    cdef dict base, result
    cdef object exps
    cdef Py_ssize_t n
    if e < 0:
        raise ValueError("kpow exponent must be nonnegative")
    if e == 0:
        if not a:
            raise ValueError("kpow of empty map to power 0 has unknown arity")
        for exps in a:
            n = len(<tuple> exps)
            break
        return {(0,) * n: 1}
    base = a
    result = None
    while True:
        if e & 1:
            result = dict(base) if result is None else kmul(result, base)
        e >>= 1
        if e == 0:
            return result
        base = kmul(base, base)


cdef tuple _shift_to_poly(dict a):
    """Clear per-generator minimum exponents; return (poly map, shift)."""
    cdef object exps, coeff
    cdef tuple first, t
    cdef list mins
    cdef Py_ssize_t i, n
    cdef bint all_zero
    first = None
    for exps in a:
        first = <tuple> exps
        break
    n = len(first)
    mins = list(first)
    for exps in a:
        t = <tuple> exps
        for i in range(n):
            if t[i] < mins[i]:
                mins[i] = t[i]
    all_zero = True
    for i in range(n):
        if mins[i] != 0:
            all_zero = False
            break
    if all_zero:
        return a, tuple([0] * n)
    cdef dict shifted = {}
    cdef list out
    for exps, coeff in a.items():
        t = <tuple> exps
        out = [0] * n
        for i in range(n):
            out[i] = t[i] - mins[i]
        shifted[tuple(out)] = coeff
    return shifted, tuple(mins)


cpdef kdiv_exact(dict a, dict b):
    """Exact quotient map q with kmul(q, b) == a, else None.

    Both inputs are shifted to honest polynomials first; the quotient of the
    shifts is reapplied at the end, so division by a unit monomial always
    succeeds.  Raises ZeroDivisionError when b is empty.
    """
    cdef dict pa, pb, rem, quot
    cdef tuple sa, sb, lead_b, lead_r, mono, key
    cdef list diff
    cdef object cb, cr, c, cur, coeff, eb, exps
    cdef Py_ssize_t i, n
    cdef bint ok
    if not b:
        raise ZeroDivisionError("kernel division by zero")
    if not a:
        return {}
    pa, sa = _shift_to_poly(a)
    pb, sb = _shift_to_poly(b)
    n = len(sa)
    cdef tuple qshift = tuple([sa[i] - sb[i] for i in range(n)])
    lead_b = None
    for exps in pb:
        if lead_b is None or <tuple> exps > lead_b:
            lead_b = <tuple> exps
    cb = pb[lead_b]
    rem = dict(pa)
    quot = {}
    while rem:
        lead_r = None
        for exps in rem:
            if lead_r is None or <tuple> exps > lead_r:
                lead_r = <tuple> exps
        diff = [0] * n
        ok = True
        for i in range(n):
            diff[i] = lead_r[i] - lead_b[i]
            if diff[i] < 0:
                ok = False
                break
        if not ok:
            return None
        cr = rem[lead_r]
        if cr % cb:
            return None
        c = cr // cb
        mono = tuple(diff)
        quot[mono] = c
        for eb, coeff in pb.items():
            key = _tadd(mono, <tuple> eb)
            coeff = c * coeff
            cur = rem.get(key)
            if cur is None:
                rem[key] = -coeff
            else:
                cur = cur - coeff
                if cur:
                    rem[key] = cur
                else:
                    del rem[key]
    cdef bint shift_zero = True
    for i in range(n):
        if qshift[i] != 0:
            shift_zero = False
            break
    if shift_zero:
        return quot
    cdef dict out = {}
    for exps, coeff in quot.items():
        out[_tadd(<tuple> exps, qshift)] = coeff
    return out
