"""Graded isomorphism testing for Carnot algebras.

Non-isomorphism is certified by isomorphism invariants; isomorphism by an
explicit, re-verified witness.  Anything else is reported as Unknown.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, fields
from itertools import product
from typing import Iterator

from .carnot import GradedLieAlgebra, associated_graded, is_carnot
from .exactlin import det, rank
from .lie import center, derived_series, lower_central_series
from .morphisms import Homomorphism, induce_graded_map, validate_hom

PANEL_CAP = 256
DEFAULT_BUDGET = 20000

# comparison order for certificates; bracket_rank_samples is basis-dependent
# and deliberately not listed
CERTIFYING = ("step", "dim", "layer_dims", "lcs_dims", "derived_dims", "center_dim", "center_layer_dims")


@dataclass(frozen=True)
class InvariantProfile:
    dim: int
    step: int
    layer_dims: tuple[int, ...]
    lcs_dims: tuple[int, ...]
    derived_dims: tuple[int, ...]
    center_dim: int
    center_layer_dims: tuple[int, ...]
    bracket_rank_samples: tuple[int, ...]

    def first_difference(self, other: "InvariantProfile") -> tuple[str, object, object] | None:
        for name in CERTIFYING:
            a, b = getattr(self, name), getattr(other, name)
            if a != b:
                return name, a, b
        return None

    def as_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}


def _graded(G) -> GradedLieAlgebra:
    return G if isinstance(G, GradedLieAlgebra) else associated_graded(G)


def covector_panel(k: int, cap: int = PANEL_CAP) -> list[tuple[int, ...]]:
    """Nonzero 0/±1 covectors up to sign (first nonzero entry +1), lexicographic."""
    out = []
    for xi in product((-1, 0, 1), repeat=k):
        nz = next((c for c in xi if c), 0)
        if nz == 1:
            out.append(xi)
            if len(out) == cap:
                break
    return out


def _bracket_rank_samples(G: GradedLieAlgebra) -> tuple[int, ...]:
    top = list(G.layer_indices(G.step - 1))
    n = G.dim
    table = G.algebra.table
    ranks = []
    for xi in covector_panel(len(top)):
        form = [
            tuple(sum(c * table[a][b][t] for c, t in zip(xi, top)) for b in range(n))
            for a in range(n)
        ]
        ranks.append(rank(form))
    return tuple(sorted(ranks))


def invariant_profile(G) -> InvariantProfile:
    G = _graded(G)
    L = G.algebra
    lcs = lower_central_series(L)
    z = center(L)
    return InvariantProfile(
        dim=L.dim,
        step=lcs.step,
        layer_dims=G.layer_dims,
        lcs_dims=lcs.dims,
        derived_dims=derived_series(L).dims,
        center_dim=z.dim,
        center_layer_dims=tuple(z.intersect(G.layer_subspace(i)).dim for i in range(G.step)),
        bracket_rank_samples=_bracket_rank_samples(G) if G.step else (),
    )


def _candidate_blocks(k: int, budget: int, seed: int) -> Iterator[tuple[tuple[int, ...], ...]]:
    def shape(flat):
        return tuple(tuple(flat[r * k:(r + 1) * k]) for r in range(k))

    emitted = 0
    yield shape([1 if r == c else 0 for r in range(k) for c in range(k)])
    emitted += 1
    for span in ((-1, 0, 1), (-2, -1, 0, 1, 2)):
        for flat in product(span, repeat=k * k):
            if emitted >= budget:
                return
            if span[0] == -2 and max(abs(x) for x in flat) < 2:
                continue
            yield shape(flat)
            emitted += 1
    rng = random.Random(seed)
    while emitted < budget:
        yield shape([rng.randint(-3, 3) for _ in range(k * k)])
        emitted += 1


def is_graded_isomorphism(F: Homomorphism) -> bool:
    return F.graded and validate_hom(F) and F.is_bijective


def find_graded_isomorphism(G, H, budget: int = DEFAULT_BUDGET, seed: int = 0) -> Homomorphism | None:
    """Search first-layer blocks, inducing the remaining layers by brackets."""
    G, H = _graded(G), _graded(H)
    if G.layer_dims != H.layer_dims or not (is_carnot(G) and is_carnot(H)):
        return None
    if G.dim == 0:
        return Homomorphism.identity(G)
    k = G.layer_dims[0]
    for block in _candidate_blocks(k, budget, seed):
        if det(block) == 0:
            continue
        F = induce_graded_map(G, H, block)
        if is_graded_isomorphism(F):
            return F
    return None


@dataclass(frozen=True)
class IsoVerdict:
    kind: str  # "Isomorphic" | "NonIsomorphic" | "Unknown"
    witness: Homomorphism | None = None
    certificate: tuple[str, object, object] | None = None
    note: str = ""

    def to_dict(self) -> dict:
        out: dict = {"kind": self.kind, "note": self.note}
        if self.certificate is not None:
            name, a, b = self.certificate
            out["certificate"] = {"invariant": name, "left": _plain(a), "right": _plain(b)}
        if self.witness is not None:
            out["witness"] = {
                "matrix": [[str(x) for x in row] for row in self.witness.matrix],
                "verified": is_graded_isomorphism(self.witness),
            }
        return out


def _plain(x):
    return list(x) if isinstance(x, tuple) else x


def iso_verdict(G, H, budget: int = DEFAULT_BUDGET, seed: int = 0) -> IsoVerdict:
    G, H = _graded(G), _graded(H)
    if not (is_carnot(G) and is_carnot(H)):
        raise ValueError("both algebras must be Carnot")
    diff = invariant_profile(G).first_difference(invariant_profile(H))
    if diff is not None:
        name, a, b = diff
        return IsoVerdict("NonIsomorphic", certificate=diff, note=f"{name} differs: {a} vs {b}")
    F = find_graded_isomorphism(G, H, budget, seed)
    if F is not None:
        if not is_graded_isomorphism(F):
            raise AssertionError("witness failed re-verification")
        return IsoVerdict("Isomorphic", witness=F, note="graded isomorphism found and verified")
    return IsoVerdict(
        "Unknown",
        note=f"invariants agree and no witness among {budget} first-layer candidates (seed {seed})",
    )

