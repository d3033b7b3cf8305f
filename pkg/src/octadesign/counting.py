"""Closed-form counts: design parameters and scalar-orbit formulas.

Everything here is exact integer or Fraction arithmetic.  The central
quantity is the number of orbits of the Frobenius map on projective scalars
modulo fourth roots of unity; the minimum attainable number of associate
classes for the full symmetry group is twice that minus one.  The package
computes the same number two ways (a divisor sum with a cohomological
correction factor, and a direct orbit walk in the field) and insists they
agree.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .errors import BadCongruence, MissingFourthRoot, NonIntegerResult
from .gf import Field, prime_factors


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def euler_phi(n: int) -> int:
    out = n
    for ell in prime_factors(n):
        out = out // ell * (ell - 1)
    return out


def check_congruence(p: int, alpha: int) -> None:
    """Require q = p**alpha = 1 (mod 4)."""
    if p % 4 == 1 or (p % 4 == 3 and alpha % 2 == 0):
        return
    raise BadCongruence(f"q = {p}**{alpha} is not 1 mod 4")


def h_factor(p: int, n: int, d: int) -> Fraction:
    """Correction factor for the degree-d term of the scalar orbit sum.

    For p = 1 (mod 4) the fourth roots of unity live in the prime field and
    the factor counts homomorphisms from a cyclic group of order n/d into
    them, so it is gcd(n/d, 4).  For p = 3 (mod 4) they only appear in even
    degrees and the factor is fractional.
    """
    if n % d != 0:
        raise ValueError(f"{d} does not divide {n}")
    m = n // d
    if p % 4 == 1:
        return Fraction(gcd(m, 4))
    if d % 2 == 1:
        return Fraction(1)
    if m % 4 == 0:
        return Fraction(1)
    if m % 2 == 0:
        return Fraction(1, 2)
    return Fraction(1, 4)


def orbit_count_formula(p: int, alpha: int) -> int:
    """Frobenius orbits on nonzero scalars modulo fourth roots of unity."""
    check_congruence(p, alpha)
    n = alpha
    total = Fraction(0)
    for d in divisors(n):
        size = Fraction(p**d - 1, 4) if p % 4 == 1 else Fraction(p**d - 1)
        total += euler_phi(n // d) * h_factor(p, n, d) * size
    total /= n
    if total.denominator != 1:
        raise NonIntegerResult(f"orbit sum for q={p}**{alpha} gave {total}")
    return int(total)


def orbit_count_direct(field: Field) -> int:
    """The same count by walking Frobenius orbits in the field itself."""
    i = field.i_elem
    if i is None:
        raise MissingFourthRoot(f"GF({field.q}) has no primitive fourth root of unity")

    def canon(a):
        return min(a, -a, i * a, -i * a, key=lambda e: e.coeffs)

    seen = set()
    count = 0
    for a in field.elements():
        if a.is_zero():
            continue
        rep = canon(a)
        if rep.coeffs in seen:
            continue
        count += 1
        x = rep
        while x.coeffs not in seen:
            seen.add(x.coeffs)
            x = canon(x**field.p)
    return count


def min_associate_classes(p: int, alpha: int) -> int:
    """Associate classes of the scheme from the full symmetry group."""
    return 2 * orbit_count_formula(p, alpha) - 1


def design_counts(p: int, alpha: int) -> dict:
    """Closed-form parameters of the design on (F_q^2 minus 0)/<i>.

    In characteristic 5 the basic block is stabilized by a group of order 60
    and every adjacent pair lies in exactly one block; otherwise the
    stabilizer is the rotation group of the octahedron (order 12) and pairs
    split into edges (concurrence 4) and diagonals (concurrence 1).
    """
    check_congruence(p, alpha)
    q = p**alpha
    counts = {
        "q": q,
        "p": p,
        "alpha": alpha,
        "v": (q * q - 1) // 4,
        "k": 6,
        "m": (q - 3) // 2,
        "group_order": q * (q * q - 1) // 2,
    }
    if p == 5:
        counts["b"] = q * (q * q - 1) // 120
        counts["r"] = 5 ** (alpha - 1)
        counts["block_stabilizer_order"] = 60
        counts["lambda_by_class"] = {"adjacent": 1}
        counts["adjacent_pairs"] = q * (q * q - 1) // 8
    else:
        counts["b"] = q * (q * q - 1) // 24
        counts["r"] = q
        counts["block_stabilizer_order"] = 12
        counts["lambda_by_class"] = {"edge": 4, "diagonal": 1}
        counts["edge_pairs"] = q * (q * q - 1) // 8
        counts["diagonal_pairs"] = q * (q * q - 1) // 8
    return counts
