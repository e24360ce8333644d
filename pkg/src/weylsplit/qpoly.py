"""Tiny exact integer polynomial arithmetic in one variable q.

Polynomials are lists of int coefficients, index = exponent.  Used for
Dynkin polynomials and rank generating functions, where denominators always
divide exactly.
"""


def trim(p):
    while p and p[-1] == 0:
        p.pop()
    return p


def mul(a, b):
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return trim(out)


def divexact(num, den):
    """Exact division; raises if the remainder is nonzero."""
    num = list(num)
    den = list(den)
    trim(num)
    trim(den)
    if not den:
        raise ZeroDivisionError
    if not num:
        return []
    lead = den[-1]
    out = [0] * (len(num) - len(den) + 1)
    for k in range(len(out) - 1, -1, -1):
        c = num[k + len(den) - 1]
        if c % lead:
            raise ValueError("inexact polynomial division")
        q = c // lead
        out[k] = q
        if q:
            for j, y in enumerate(den):
                num[k + j] -= q * y
    if any(num):
        raise ValueError("inexact polynomial division")
    return trim(out)


def one_minus_qk(k):
    p = [0] * (k + 1)
    p[0], p[k] = 1, -1
    return p


def q_int(k):
    """[k]_q = 1 + q + ... + q^(k-1)."""
    return [1] * k


def prod(polys):
    out = [1]
    for p in polys:
        out = mul(out, p)
    return out


def eval_at_one(p):
    return sum(p)


def is_palindromic(p):
    return list(p) == list(reversed(p))


def is_unimodal(p):
    rising = True
    for a, b in zip(p, p[1:]):
        if b > a and not rising:
            return False
        if b < a:
            rising = False
    return True


def quotient_rgf(num_exponents, den_exponents):
    """prod(1-q^c) / prod(1-q^e), exact."""
    num = prod([one_minus_qk(c) for c in num_exponents])
    den = prod([one_minus_qk(e) for e in den_exponents])
    return divexact(num, den)
