"""Rational polyhedral cones with explicit lineality.

A cone is stored as a minimal set of primitive ray generators together with
a canonical basis of its lineality space.  Ray representatives are reduced
modulo the lineality space and sorted, so equal cones are syntactically
identical.  Normal cones of lower-dimensional polytopes carry the orthogonal
complement of the affine hull as lineality, which makes flat bodies
first-class citizens of the fan machinery.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from . import linalg
from .lp import lp_feasible, lp_maximize
from .ratio import dot


@dataclass(frozen=True)
class Cone:
    ambient: int
    rays: tuple[linalg.IntVec, ...]
    lineality: tuple[linalg.IntVec, ...]

    @staticmethod
    def make(
        ambient: int,
        generators: Iterable[Sequence] = (),
        lineality: Iterable[Sequence] = (),
        reduce: bool = True,
    ) -> "Cone":
        lin = linalg.saturated_span_basis(list(lineality), ambient)
        gens = []
        for g in generators:
            if all(Fraction(x) == 0 for x in g):
                continue
            gens.append(linalg.primitive(g))

        if reduce:
            # Hidden lineality: a generator whose negative also lies in the cone.
            changed = True
            while changed:
                changed = False
                for g in gens:
                    if _in_cone(ambient, gens, lin, [-x for x in g]):
                        lin = linalg.saturated_span_basis(list(lin) + [g], ambient)
                        gens = [h for h in gens if h != g]
                        changed = True
                        break

        reduced = []
        seen = set()
        for g in gens:
            r = _mod_lineality(g, lin)
            if r is None:
                continue
            if r not in seen:
                seen.add(r)
                reduced.append(r)

        if reduce and len(reduced) > 1:
            keep = list(reduced)
            i = 0
            while i < len(keep):
                others = keep[:i] + keep[i + 1 :]
                if _in_cone(ambient, others, lin, keep[i]):
                    keep.pop(i)
                else:
                    i += 1
            reduced = keep

        return Cone(ambient, tuple(sorted(reduced)), tuple(lin))

    @property
    def dim(self) -> int:
        if not self.rays and not self.lineality:
            return 0
        return linalg.span_dim(list(self.rays) + list(self.lineality))

    def span_basis(self) -> list[linalg.IntVec]:
        return linalg.saturated_span_basis(list(self.rays) + list(self.lineality), self.ambient)

    def perp_basis(self) -> list[linalg.IntVec]:
        return linalg.perp_basis(list(self.rays) + list(self.lineality), self.ambient)

    def contains(self, v: Sequence) -> bool:
        if all(Fraction(x) == 0 for x in v):
            return True
        return _in_cone(self.ambient, list(self.rays), list(self.lineality), v)

    def relint_contains(self, v: Sequence) -> bool:
        """Exact membership of v in the relative interior."""
        if not self.rays:
            # The cone is a linear subspace; its relative interior is itself.
            if all(Fraction(x) == 0 for x in v):
                return True
            if not self.lineality:
                return False
            try:
                linalg.coords_in_basis(self.lineality, v)
                return True
            except ValueError:
                return False
        k, m = len(self.rays), len(self.lineality)
        # variables: lambda_1..k (nonneg), mu_1..m (free), t (free);
        # maximize t with lambda_i - t >= 0 and t <= 1
        nv = k + m + 1
        c = [Fraction(0)] * (k + m) + [Fraction(1)]
        a_eq, b_eq = [], []
        for j in range(self.ambient):
            row = [Fraction(r[j]) for r in self.rays]
            row += [Fraction(l[j]) for l in self.lineality]
            row += [Fraction(0)]
            a_eq.append(row)
            b_eq.append(Fraction(v[j]))
        a_ub, b_ub = [], []
        for i in range(k):
            row = [Fraction(0)] * nv
            row[i] = Fraction(-1)
            row[k + m] = Fraction(1)
            a_ub.append(row)
            b_ub.append(Fraction(0))
        row = [Fraction(0)] * nv
        row[k + m] = Fraction(1)
        a_ub.append(row)
        b_ub.append(Fraction(1))
        res = lp_maximize(
            c, a_ub, b_ub, a_eq, b_eq, nonneg=[True] * k + [False] * (m + 1)
        )
        return res.status == "optimal" and res.value is not None and res.value > 0

    def to_json(self) -> dict:
        return {
            "generators": [list(r) for r in self.rays],
            "lineality": [list(b) for b in self.lineality],
        }

    @staticmethod
    def from_json(data: dict, ambient: int | None = None) -> "Cone":
        gens = [tuple(int(x) for x in g) for g in data.get("generators", [])]
        lin = [tuple(int(x) for x in b) for b in data.get("lineality", [])]
        if ambient is None:
            sample = gens or lin
            if not sample:
                raise ValueError("cannot infer ambient dimension of an empty cone")
            ambient = len(sample[0])
        return Cone.make(ambient, gens, lin)


def _mod_lineality(g: Sequence, lin: Sequence[linalg.IntVec]) -> linalg.IntVec | None:
    """Canonical ray representative modulo the lineality space (None if inside it)."""
    if not lin:
        return linalg.primitive(g)
    coeff = linalg.solve_linear(linalg.gram_matrix(lin), [dot(b, g) for b in lin])
    assert coeff is not None
    proj = [Fraction(x) - sum(c * b[j] for c, b in zip(coeff, lin)) for j, x in enumerate(g)]
    if all(x == 0 for x in proj):
        return None
    return linalg.primitive(proj)


def _in_cone(ambient: int, rays: Sequence[Sequence], lin: Sequence[Sequence], v: Sequence) -> bool:
    k, m = len(rays), len(lin)
    if k + m == 0:
        return all(Fraction(x) == 0 for x in v)
    a_eq, b_eq = [], []
    for j in range(ambient):
        row = [Fraction(r[j]) for r in rays] + [Fraction(l[j]) for l in lin]
        a_eq.append(row)
        b_eq.append(Fraction(v[j]))
    return lp_feasible((), (), a_eq, b_eq, nvar=k + m, nonneg=[True] * k + [False] * m)


def cone_from_h(
    ambient: int,
    a_rows: Sequence[Sequence],
    eq_rows: Sequence[Sequence] = (),
) -> Cone:
    """V-description of {x : a.x <= 0 for a in a_rows, e.x = 0 for e in eq_rows}.

    Brute-force edge enumeration over active-constraint subsets; exact and
    meant for desk scale (ambient dimension <= 4, tens of rows).
    """
    a_rows = [tuple(Fraction(x) for x in r) for r in a_rows]
    eq_rows = [tuple(Fraction(x) for x in r) for r in eq_rows]
    base = [r for r in list(a_rows) + list(eq_rows) if any(x != 0 for x in r)]
    if not base:
        lin = [tuple(1 if i == j else 0 for j in range(ambient)) for i in range(ambient)]
        return Cone.make(ambient, (), lin, reduce=False)
    lin = linalg.integer_kernel_basis([list(r) for r in base])
    lin_dim = len(lin)
    target = lin_dim + 1
    nonzero_a = [r for r in a_rows if any(x != 0 for x in r)]
    nonzero_eq = [r for r in eq_rows if any(x != 0 for x in r)]
    rays: list[linalg.IntVec] = []
    max_size = min(len(nonzero_a), ambient)
    for size in range(0, max_size + 1):
        for subset in combinations(nonzero_a, size):
            stack = [list(r) for r in subset] + [list(r) for r in nonzero_eq]
            if not stack:
                if ambient != target:
                    continue
                kernel = [tuple(1 if i == j else 0 for j in range(ambient)) for i in range(ambient)]
            else:
                kernel = linalg.integer_kernel_basis(stack)
            if len(kernel) != target:
                continue
            cand = next((b for b in kernel if _mod_lineality(b, lin) is not None), None)
            if cand is None:
                continue
            for g in (cand, tuple(-x for x in cand)):
                if all(dot(a, g) <= 0 for a in nonzero_a):
                    rays.append(g)
    return Cone.make(ambient, rays, lin, reduce=True)
