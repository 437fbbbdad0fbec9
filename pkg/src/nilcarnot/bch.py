"""Baker-Campbell-Hausdorff coefficients by exact symbolic expansion.

``log(exp(X) exp(Y))`` is expanded in the free associative algebra on two
letters, truncated at a given degree.  The degree-n part is a Lie
polynomial P_n, and by the Dynkin-Specht-Wever lemma
``P_n = (1/n) * sum_w coeff(w) * [...[[w_1, w_2], w_3], ..., w_n]``.
The resulting word/coefficient lists are what :func:`bch_series` returns.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial

Word = tuple[int, ...]  # letters: 0 = X, 1 = Y
Poly = dict[Word, Fraction]

MAX_CACHED_STEP = 6


def _mul(a: Poly, b: Poly, depth: int) -> Poly:
    out: Poly = {}
    for wa, ca in a.items():
        for wb, cb in b.items():
            if len(wa) + len(wb) > depth:
                continue
            w = wa + wb
            out[w] = out.get(w, Fraction(0)) + ca * cb
    return {w: c for w, c in out.items() if c}


def _exp_letter(letter: int, depth: int) -> Poly:
    return {(letter,) * k: Fraction(1, factorial(k)) for k in range(depth + 1)}


def _log_one_plus(z: Poly, depth: int) -> Poly:
    # z has no constant term, so z^k vanishes beyond k = depth
    out: Poly = {}
    power: Poly = {(): Fraction(1)}
    for k in range(1, depth + 1):
        power = _mul(power, z, depth)
        sign = Fraction((-1) ** (k + 1), k)
        for w, c in power.items():
            out[w] = out.get(w, Fraction(0)) + sign * c
    return {w: c for w, c in out.items() if c}


@lru_cache(maxsize=None)
def bch_words(depth: int) -> tuple[tuple[Fraction, Word], ...]:
    """Pairs ``(coefficient, word)`` such that

    ``log(e^X e^Y) = sum coefficient * leftnormed(word)`` up to degree ``depth``,
    where ``leftnormed((a, b, c)) = [[a, b], c]`` and a one-letter word is the letter.
    """
    if depth < 1:
        return ()
    prod = _mul(_exp_letter(0, depth), _exp_letter(1, depth), depth)
    prod.pop((), None)
    log = _log_one_plus(prod, depth)
    out = []
    for w, c in sorted(log.items(), key=lambda kv: (len(kv[0]), kv[0])):
        # [w1, w1] = 0 kills every left-normed word starting with a repeated letter
        if len(w) > 1 and w[0] == w[1]:
            continue
        out.append((c / len(w), w))
    return tuple(out)


def bch_series(depth: int) -> tuple[tuple[Fraction, Word], ...]:
    return bch_words(depth)
