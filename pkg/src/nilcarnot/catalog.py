"""Built-in nilpotent Lie algebras (all brackets 1-based, as in .nilg files)."""

from __future__ import annotations

from fractions import Fraction
from itertools import product

from .exactlin import Subspace, rref_with_pivots
from .lie import LieAlgebra


def ab(k: int) -> LieAlgebra:
    return LieAlgebra.abelian(k, f"ab{k}")


def h3() -> LieAlgebra:
    return LieAlgebra.from_brackets(3, {(1, 2): {3: 1}}, name="h3", one_based=True)


def h3_scrambled() -> LieAlgebra:
    """h3 in the basis (z, x+y, x-y): central vector first, [f2, f3] = -2 f1."""
    return LieAlgebra.from_brackets(3, {(2, 3): {1: -2}}, name="h3_scrambled", one_based=True)


def h5() -> LieAlgebra:
    return LieAlgebra.from_brackets(5, {(1, 2): {5: 1}, (3, 4): {5: 1}}, name="h5", one_based=True)


def h3_plus_ab2() -> LieAlgebra:
    return LieAlgebra.from_brackets(5, {(1, 2): {3: 1}}, name="h3_plus_ab2", one_based=True)


def filiform4() -> LieAlgebra:
    return LieAlgebra.from_brackets(
        4, {(1, 2): {3: 1}, (1, 3): {4: 1}}, name="filiform4", one_based=True
    )


def free32() -> LieAlgebra:
    return LieAlgebra.from_brackets(
        5, {(1, 2): {3: 1}, (1, 3): {4: 1}, (2, 3): {5: 1}}, name="free32", one_based=True
    )


def twostep_d7() -> LieAlgebra:
    return LieAlgebra.from_brackets(
        5, {(1, 2): {4: 1}, (1, 3): {5: 1}}, name="twostep_d7", one_based=True
    )


def free_nilpotent(rank: int, step: int) -> LieAlgebra:
    """Free nilpotent Lie algebra of the given rank and step.

    Built inside the free associative algebra: left-normed brackets of the
    generators are reduced to a basis degree by degree, and structure
    constants are read off by taking commutators and truncating.
    """
    Poly = dict

    def commutator(a: Poly, b: Poly) -> Poly:
        out: Poly = {}
        for wa, ca in a.items():
            for wb, cb in b.items():
                if len(wa) + len(wb) > step:
                    continue
                out[wa + wb] = out.get(wa + wb, 0) + ca * cb
                out[wb + wa] = out.get(wb + wa, 0) - ca * cb
        return {w: c for w, c in out.items() if c}

    basis: list[Poly] = [{(g,): Fraction(1)} for g in range(rank)]
    by_degree = [list(basis)]
    for d in range(2, step + 1):
        words = [w for w in product(range(rank), repeat=d)]
        cands = [commutator({(g,): Fraction(1)}, p) for g in range(rank) for p in by_degree[-1]]
        rows = [tuple(c.get(w, Fraction(0)) for w in words) for c in cands]
        keep = []
        acc: list[tuple] = []
        for c, row in zip(cands, rows):
            trial = acc + [row]
            if len(rref_with_pivots(trial)[1]) == len(trial):
                acc = trial
                keep.append(c)
        by_degree.append(keep)
        basis.extend(keep)

    n = len(basis)
    words_all = sorted({w for p in basis for w in p}, key=lambda w: (len(w), w))
    coords_matrix = [tuple(p.get(w, Fraction(0)) for w in words_all) for p in basis]
    space = Subspace.span(coords_matrix, len(words_all))

    def express(p: Poly) -> tuple:
        target = tuple(p.get(w, Fraction(0)) for w in words_all)
        # solve a · coords_matrix = target; basis polys are independent
        aug = [tuple(col) for col in zip(*coords_matrix, target)]
        red, piv = rref_with_pivots(aug)
        if n in piv:
            raise AssertionError("bracket left the span of the basis")
        sol = [Fraction(0)] * n
        for row, pc in zip(red, piv):
            sol[pc] = row[n]
        return tuple(sol)

    assert space.dim == n
    brackets = {}
    for i in range(n):
        for j in range(i + 1, n):
            c = commutator(basis[i], basis[j])
            if c:
                brackets[(i, j)] = express(c)
    return LieAlgebra.from_brackets(n, brackets, name=f"free_r{rank}_s{step}")


PRESETS = {
    "h3": h3,
    "h3_scrambled": h3_scrambled,
    "h5": h5,
    "h3_plus_ab2": h3_plus_ab2,
    "filiform4": filiform4,
    "free32": free32,
    "twostep_d7": twostep_d7,
    **{f"ab{k}": (lambda k=k: ab(k)) for k in range(1, 7)},
}


def preset(name: str) -> LieAlgebra:
    try:
        return PRESETS[name]()
    except KeyError:
        raise KeyError(f"unknown preset {name!r}; known: {', '.join(sorted(PRESETS))}") from None


def catalog() -> list[LieAlgebra]:
    """Every nonabelian preset plus ab1..ab4."""
    return [
        h3(), h3_scrambled(), h5(), h3_plus_ab2(), filiform4(), free32(), twostep_d7(),
        ab(1), ab(2), ab(3), ab(4),
    ]
