"""Twisted-trace counting versus folded multiplicities.

The left side of the verified identity is defined combinatorially: the trace
of the twist on a weight space is the number of twist-invariant polytope data
of the matching coweight.  The right side is a plain multiplicity over the
folded root datum.  A report compares the two for every invariant weight of
one highest-coweight module.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .characters import CharPoly, _freudenthal_table, freudenthal_multiplicity
from .folding import FoldedDatum, PinnedAut, SigmaWord, fold, sigma_compatible_word
from .mv_calculus import mv_calculus
from .root_datum import Coweight, RootDatum, Weight


@dataclass(frozen=True)
class TwiningRow:
    """One invariant weight: invariant-datum count against folded multiplicity."""

    lam: Coweight
    lhs_trace: int
    rhs_mult: int
    passed: bool


@dataclass(frozen=True)
class OrbitPair:
    """A non-invariant weight with its twist image and shared multiplicity."""

    lam: Coweight
    image: Coweight
    mult: int


@dataclass(frozen=True)
class TwiningReport:
    mu: Coweight
    rows: tuple[TwiningRow, ...]
    overall: bool
    non_invariant: tuple[OrbitPair, ...]

    def to_json_dict(self) -> dict:
        return {
            "mu": list(self.mu.coords),
            "rows": [
                {
                    "lambda": list(r.lam.coords),
                    "lhs_trace": r.lhs_trace,
                    "rhs_mult": r.rhs_mult,
                    "pass": r.passed,
                }
                for r in self.rows
            ],
            "overall": self.overall,
            "non_invariant": [
                {
                    "lambda": list(p.lam.coords),
                    "image": list(p.image.coords),
                    "mult": p.mult,
                }
                for p in self.non_invariant
            ],
        }


def _require_invariant(sigma: PinnedAut, v: Coweight, name: str) -> None:
    if sigma.apply_to_coweight(v) != v:
        raise ValueError(f"{name} must be invariant under the automorphism")


def _require_inputs(
    datum: RootDatum, sigma: PinnedAut, mu: Coweight, lam: Optional[Coweight]
) -> None:
    if not datum.is_dominant(mu):
        raise ValueError("mu must be dominant")
    _require_invariant(sigma, mu, "mu")
    if lam is not None:
        _require_invariant(sigma, lam, "lambda")


def twining_trace(
    datum: RootDatum,
    sigma: PinnedAut,
    mu: Coweight,
    lam: Coweight,
    sw: Optional[SigmaWord] = None,
) -> int:
    """Count invariant polytope data of coweight lam - mu inside hull(W mu)."""
    _require_inputs(datum, sigma, mu, lam)
    if lam.coords not in _freudenthal_table(datum, mu):
        return 0
    if sw is None:
        sw = sigma_compatible_word(datum, sigma)
    calc = mv_calculus(datum)
    count = 0
    for lus in calc.enumerate_block_data(sw, lam - mu):
        if calc.is_mv(lus, mu):
            count += 1
    return count


def folded_multiplicity(
    datum: RootDatum, sigma: PinnedAut, mu: Coweight, lam: Coweight
) -> int:
    """Multiplicity of the projected weight over the folded root datum."""
    _require_inputs(datum, sigma, mu, lam)
    fd = fold(datum, sigma)
    return freudenthal_multiplicity(
        fd.datum, fd.project_coweight(mu), fd.project_coweight(lam)
    )


def _invariant_split(datum: RootDatum, sigma: PinnedAut, mu: Coweight):
    """Weights of the mu-module split into invariant ones and swapped pairs."""
    table = _freudenthal_table(datum, mu)
    invariant = []
    pairs = []
    for coords in table:
        lam = Coweight(coords)
        image = sigma.apply_to_coweight(lam)
        if image == lam:
            invariant.append(lam)
        elif lam.coords < image.coords:
            if table[lam.coords] != table[image.coords]:
                raise AssertionError("twist image has a different multiplicity")
            pairs.append(OrbitPair(lam=lam, image=image, mult=table[lam.coords]))
    def order(v: Coweight):
        return (-datum.height2(v), v.coords)

    invariant.sort(key=order)
    pairs.sort(key=lambda p: order(p.lam))
    return invariant, pairs


def twining_character(datum: RootDatum, sigma: PinnedAut, mu: Coweight) -> CharPoly:
    """Invariant-datum counts over all invariant weights, as a character."""
    _require_inputs(datum, sigma, mu, None)
    sw = sigma_compatible_word(datum, sigma)
    invariant, _ = _invariant_split(datum, sigma, mu)
    return CharPoly.from_map(
        datum, {lam: twining_trace(datum, sigma, mu, lam, sw) for lam in invariant}
    )


def verify_jantzen(datum: RootDatum, sigma: PinnedAut, mu: Coweight) -> TwiningReport:
    """Compare both pipelines on every invariant weight of the mu-module."""
    _require_inputs(datum, sigma, mu, None)
    sw = sigma_compatible_word(datum, sigma)
    fd = fold(datum, sigma)
    mu_f = fd.project_coweight(mu)
    invariant, pairs = _invariant_split(datum, sigma, mu)
    rows = []
    for lam in invariant:
        lhs = twining_trace(datum, sigma, mu, lam, sw)
        rhs = freudenthal_multiplicity(fd.datum, mu_f, fd.project_coweight(lam))
        rows.append(TwiningRow(lam=lam, lhs_trace=lhs, rhs_mult=rhs, passed=lhs == rhs))
    return TwiningReport(
        mu=mu,
        rows=tuple(rows),
        overall=all(r.passed for r in rows),
        non_invariant=tuple(pairs),
    )


def dual_datum(datum: RootDatum) -> RootDatum:
    """Same lattices with the roles of roots and coroots exchanged."""
    dual = RootDatum(
        d=datum.d,
        simple_roots=[Weight(v.coords) for v in datum.simple_coroots],
        simple_coroots=[Coweight(x.coords) for x in datum.simple_roots],
    )
    dual.require_valid()
    return dual


def dual_sigma(datum: RootDatum, sigma: PinnedAut) -> PinnedAut:
    """The automorphism transported to the dual datum's character lattice."""
    return PinnedAut(perm=sigma.perm, matrix_on_X=sigma.matrix_on_coweights())


def double_fold_roots(datum: RootDatum, sigma: PinnedAut) -> tuple[Weight, ...]:
    """All roots of the fold of the dual datum, negatives included."""
    fd = fold(dual_datum(datum), dual_sigma(datum, sigma))
    pos = fd.datum.positive_roots()
    return tuple(-a for a in reversed(pos)) + pos


def double_fold(datum: RootDatum, sigma: PinnedAut) -> FoldedDatum:
    """The fold of the dual datum itself, for callers needing more than roots."""
    return fold(dual_datum(datum), dual_sigma(datum, sigma))
