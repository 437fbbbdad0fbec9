"""Random rational data and small independent oracles shared by the tests."""

import random
from fractions import Fraction

from nilcarnot.carnot import GradedLieAlgebra, associated_graded
from nilcarnot.catalog import free_nilpotent, preset
from nilcarnot.exactlin import mat
from nilcarnot.lie import change_basis
from nilcarnot.morphisms import induce_map, underlying, validate_hom


def rand_q(rng: random.Random, span: int = 5, den: int = 4) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.randint(1, den))


def rand_vec(rng: random.Random, n: int, span: int = 5, den: int = 4) -> tuple:
    return tuple(rand_q(rng, span, den) for _ in range(n))


def rand_pos(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(1, 9), rng.randint(1, 9))


def witt(rank: int, k: int) -> int:
    """Dimension of degree-k component of the free Lie algebra on ``rank`` letters."""

    def mobius(n):
        out, p, m = 1, 2, n
        while p * p <= m:
            if m % p == 0:
                m //= p
                if m % p == 0:
                    return 0
                out = -out
            p += 1
        return -out if m > 1 else out

    return sum(mobius(d) * rank ** (k // d) for d in range(1, k + 1) if k % d == 0) // k


# H3 oracle: (a, b, c) <-> strictly upper triangular [[0, a, c], [0, 0, b], [0, 0, 0]]


def _mm(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(3)) for j in range(3)] for i in range(3)]


def h3_exp(v):
    a, b, c = v
    n = [[0, a, c], [0, 0, b], [0, 0, 0]]
    n2 = _mm(n, n)
    return [[(1 if i == j else 0) + n[i][j] + Fraction(n2[i][j]) / 2 for j in range(3)] for i in range(3)]


def h3_log(u):
    n = [[u[i][j] - (1 if i == j else 0) for j in range(3)] for i in range(3)]
    n2 = _mm(n, n)
    m = [[n[i][j] - Fraction(n2[i][j]) / 2 for j in range(3)] for i in range(3)]
    return (m[0][1], m[1][2], m[0][2])


def h3_product(x, y):
    return h3_log(_mm(h3_exp(x), h3_exp(y)))


def bch_closed_form(L, x, y):
    """log(e^x e^y) through degree 4, the classical closed form."""
    br = L.bracket

    def comb(*terms):
        out = [Fraction(0)] * L.dim
        for c, v in terms:
            for k, a in enumerate(v):
                out[k] += c * a
        return tuple(out)

    xy = br(x, y)
    return comb(
        (1, x), (1, y),
        (Fraction(1, 2), xy),
        (Fraction(1, 12), br(x, xy)),
        (Fraction(-1, 12), br(y, xy)),
        (Fraction(-1, 24), br(y, br(x, xy))),
    )


# homomorphism corpus: free nilpotent sources extend any choice of generator images


def _free_sources():
    g = lambda name: associated_graded(preset(name))
    sheared = change_basis(preset("filiform4"), mat([[1, 0, 0, 0], [0, 1, 1, 0], [0, 0, 1, 0], [0, 0, 0, 1]]))
    return [
        (associated_graded(free_nilpotent(2, 3)), [g("h3"), g("filiform4"), g("free32"), g("ab2"), g("ab3"), sheared]),
        (associated_graded(free_nilpotent(3, 2)), [g("h3"), g("twostep_d7"), g("h3_plus_ab2"), g("ab3"), g("h3_scrambled")]),
        (associated_graded(free_nilpotent(4, 2)), [g("h5"), g("h3_plus_ab2"), g("twostep_d7"), g("ab4"), g("h3")]),
    ]


def hom_corpus(seed: int, count: int):
    """Valid homomorphisms of mixed kinds: graded of full or low rank, and ungraded."""
    rng = random.Random(seed)
    pairs = [(s, t) for s, targets in _free_sources() for t in targets]
    out = []
    while len(out) < count:
        S, T = rng.choice(pairs)
        k = S.layer_dims[0]
        n = underlying(T).dim
        graded_target = isinstance(T, GradedLieAlgebra)
        width = T.layer_dims[0] if graded_target else n
        mode = rng.choice(["full", "low", "mixed", "zero"])
        if mode == "mixed" or not graded_target:
            imgs = [tuple(Fraction(rng.randint(-2, 2), rng.randint(1, 2)) for _ in range(n)) for _ in range(k)]
        elif mode == "zero":
            imgs = [(Fraction(0),) * n for _ in range(k)]
        else:
            u = [Fraction(rng.randint(-3, 3)) for _ in range(width)]
            rows = []
            for _ in range(k):
                if mode == "low":
                    c = Fraction(rng.randint(-2, 2), rng.randint(1, 3))
                    rows.append(tuple(c * x for x in u))
                else:
                    rows.append(tuple(Fraction(rng.randint(-3, 3)) for _ in range(width)))
            imgs = [r + (Fraction(0),) * (n - width) for r in rows]
        F = induce_map(S, T, imgs)
        assert validate_hom(F), "free sources extend every assignment"
        out.append(F)
    return out
