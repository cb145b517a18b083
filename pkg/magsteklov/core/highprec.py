"""
High-Precision Reference Functions
==================================
mpmath versions of the special functions, used to audit closed-form radial
solutions and to fix reference constants in tests.
"""

from mpmath import mp, mpf

DEFAULT_DPS = 50


def mp_kummer(  # type: ignore[no-untyped-def]
    a: float, b: float, x: float, terms: int | None = None
):
    """
    Regularized Kummer series at the working precision.

    With ``terms`` the series is summed to exactly that many terms; otherwise
    until the terms drop below the working epsilon.
    """
    a, b, x = mpf(a), mpf(b), mpf(x)
    total = mpf(0)
    coeff = mpf(1)
    cap = terms if terms is not None else 4000
    settled_after = abs(a) + abs(b) + x + 2
    for n in range(cap):
        term = coeff * mp.rgamma(b + n)
        total += term
        coeff *= (a + n) * x / (n + 1)
        if terms is None and n > settled_after and abs(term) <= mp.eps * abs(total):
            break
    return total


def mp_laguerre(nu: float, alpha: float, x):  # type: ignore[no-untyped-def]
    """L_nu^(alpha)(x) through the regularized Kummer series."""
    nu, alpha = mpf(nu), mpf(alpha)
    if nu == 0:
        return mpf(1)
    return mp.gamma(nu + alpha + 1) / mp.gamma(nu + 1) * mp_kummer(-nu, alpha + 1, x)


def mp_exp_remainder(k: int, x):  # type: ignore[no-untyped-def]
    """e^x minus its Taylor polynomial of degree k."""
    # The difference cancels like x^{k+1}; carry guard digits for small x.
    with mp.extradps(30 + 2 * k):
        x = mpf(x)
        partial = mp.fsum(x**j / mp.factorial(j) for j in range(k + 1))
        value = mp.exp(x) - partial
    return +value
