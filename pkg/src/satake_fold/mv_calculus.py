"""Lusztig data, GGMS vertex maps, and the polytope membership test.

A Lusztig datum is a reduced word i for w0 together with nonnegative integers
n_k, one per letter.  Walking the word turns it into a lattice path: with
w_k the prefix product, the k-th step direction is -w_{k-1}(alpha_{i_k}^vee)
and the path moves by n_k such steps.  The endpoint only depends on the datum
up to braid transitions; changing the word transports the entries through
piecewise-linear moves, which need every braid order to be 2 or 3.

Vertices for the full polytope come from prefix transports: for each Weyl
element w we move the datum onto a word of w0 starting with a reduced word of
w and read off the path point after l(w) letters.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional, Sequence

from .errors import NonSimplyLacedError
from .folding import FoldedDatum, PinnedAut, SigmaWord, fold, sigma_compatible_word
from .root_datum import Coweight, RootDatum, Weight
from .weyl import WeylElement, WeylGroup, weyl_group
from . import linalg


@dataclass(frozen=True)
class LusztigDatum:
    """Reduced word for w0 plus one nonnegative entry per letter."""

    word: tuple[int, ...]
    entries: tuple[int, ...]

    def __post_init__(self):
        if len(self.word) != len(self.entries):
            raise ValueError("word and entries must have equal length")
        if any(n < 0 for n in self.entries):
            raise ValueError("entries must be nonnegative")


@dataclass(frozen=True)
class PathVertices:
    """Path points nu_0 = 0, ..., nu_l and the step coweights between them."""

    word: tuple[int, ...]
    points: tuple[Coweight, ...]
    steps: tuple[Coweight, ...]


@dataclass(frozen=True)
class GGMSDatum:
    """Vertex coweight nu_w for every Weyl group element."""

    vertices: tuple[tuple[WeylElement, Coweight], ...]

    def vertex(self, w: WeylElement) -> Coweight:
        for el, v in self.vertices:
            if el == w:
                return v
        raise KeyError(w)

    def as_dict(self) -> dict[WeylElement, Coweight]:
        return dict(self.vertices)


class MVCalculus:
    """Shared caches for one datum: word graph, transports, prefix targets."""

    def __init__(self, datum: RootDatum):
        datum.require_valid()
        self.datum = datum
        self.group: WeylGroup = weyl_group(datum)
        self._graph: Optional[dict] = None
        self._trees: dict = {}
        self._prefix_targets: Optional[tuple] = None
        self._kostant_memo: dict = {}

    # -- plain path geometry -------------------------------------------------

    def require_word(self, word: Sequence[int]) -> tuple[int, ...]:
        word = tuple(word)
        w0 = self.group.longest_element()
        if len(word) != w0.length or self.group.element(word) != w0:
            raise ValueError(f"{word} is not a reduced word for the longest element")
        return word

    def step_coweights(self, word: tuple[int, ...]) -> tuple[Coweight, ...]:
        """Step directions -w_{k-1}(alpha_{i_k}^vee) along the word."""
        key = ("steps", word)
        got = self.datum._cache.get(key)
        if got is None:
            steps = []
            mat = self.group.identity_matrix
            for i in word:
                coroot = self.datum.simple_coroots[i - 1].coords
                img = linalg.mat_vec(mat, coroot)
                steps.append(Coweight(tuple(-x for x in img)))
                mat = linalg.mat_mul(mat, self.group.reflection_matrix(i))
            got = tuple(steps)
            self.datum._cache[key] = got
        return got

    def path_vertices(self, lus: LusztigDatum) -> PathVertices:
        word = self.require_word(lus.word)
        steps = self.step_coweights(word)
        points = [Coweight((0,) * self.datum.d)]
        for n, step in zip(lus.entries, steps):
            points.append(points[-1] + step.scale(n))
        return PathVertices(word=word, points=tuple(points), steps=steps)

    def coweight(self, lus: LusztigDatum) -> Coweight:
        word = self.require_word(lus.word)
        steps = self.step_coweights(word)
        total = (0,) * self.datum.d
        for n, step in zip(lus.entries, steps):
            total = tuple(a + n * b for a, b in zip(total, step.coords))
        return Coweight(total)

    # -- braid transitions -----------------------------------------------------

    def braid_transition(
        self, lus: LusztigDatum, k: int, m: Optional[int] = None
    ) -> LusztigDatum:
        """Move the datum across the braid move starting at 1-based position k.

        Orders 2 and 3 only; larger orders have no piecewise-linear transport
        here and are refused.  When m is given it must match the braid order
        of the two letters at the window.
        """
        word = tuple(lus.word)
        if not 1 <= k <= len(word) - 1:
            raise ValueError(f"braid position {k} out of range")
        a, b = word[k - 1], word[k]
        if a == b:
            raise ValueError(f"no braid move starts at position {k}")
        order = self.group.coxeter_order(a, b)
        if m is not None and m != order:
            raise ValueError(
                f"letters {a} and {b} have braid order {order}, not {m}"
            )
        m = order
        if m > 3:
            raise NonSimplyLacedError(
                f"braid order {m} at position {k}; entry transport supports orders 2 and 3 only"
            )
        if k - 1 + m > len(word):
            raise ValueError(f"braid window at position {k} runs off the word")
        window = word[k - 1 : k - 1 + m]
        expect = tuple(a if t % 2 == 0 else b for t in range(m))
        if window != expect:
            raise ValueError(f"no braid move of order {m} starts at position {k}")
        flipped = tuple(b if t % 2 == 0 else a for t in range(m))
        new_word = word[: k - 1] + flipped + word[k - 1 + m :]
        n = lus.entries
        if m == 2:
            new_entries = n[: k - 1] + (n[k], n[k - 1]) + n[k + 1 :]
        else:
            p = min(n[k - 1], n[k + 1])
            triple = (n[k] + n[k + 1] - p, p, n[k - 1] + n[k] - p)
            new_entries = n[: k - 1] + triple + n[k + 2 :]
        return LusztigDatum(word=new_word, entries=new_entries)

    # -- word graph and transport ------------------------------------------------

    def _word_graph(self) -> dict:
        if self._graph is None:
            for i in self.group.simple_indices:
                for j in self.group.simple_indices:
                    if i < j and self.group.coxeter_order(i, j) > 3:
                        raise NonSimplyLacedError(
                            "transport needs braid orders 2 and 3 everywhere; "
                            f"order {self.group.coxeter_order(i, j)} at ({i}, {j})"
                        )
            words = self.group.reduced_words(self.group.longest_element())
            adj = {}
            for word in words:
                adj[word] = tuple(
                    (k, nb) for k, m, nb in self.group.braid_neighbors(word)
                )
            self._graph = adj
        return self._graph

    def _tree_from(self, src: tuple[int, ...]) -> dict:
        """Breadth-first parents: node -> (previous node, move position)."""
        tree = self._trees.get(src)
        if tree is None:
            adj = self._word_graph()
            if src not in adj:
                raise ValueError(f"{src} is not a reduced word for the longest element")
            tree = {src: None}
            frontier = [src]
            while frontier:
                nxt = []
                for node in frontier:
                    for k, nb in adj[node]:
                        if nb not in tree:
                            tree[nb] = (node, k)
                            nxt.append(nb)
                frontier = nxt
            self._trees[src] = tree
        return tree

    def transport_path(self, src: tuple[int, ...], dst: tuple[int, ...]) -> tuple[int, ...]:
        """Braid move positions leading from src to dst (already verified words)."""
        tree = self._tree_from(src)
        if dst not in tree:
            raise ValueError("words are not connected by braid moves")
        moves = []
        cur = dst
        while tree[cur] is not None:
            prev, k = tree[cur]
            moves.append(k)
            cur = prev
        return tuple(reversed(moves))

    def transport(self, lus: LusztigDatum, target: Sequence[int]) -> LusztigDatum:
        src = self.require_word(lus.word)
        dst = self.require_word(target)
        cur = lus
        for k in self.transport_path(src, dst):
            cur = self.braid_transition(cur, k)
        if cur.word != dst:
            raise AssertionError("transport did not land on the target word")
        return cur

    # -- GGMS vertices -------------------------------------------------------------

    def _prefix_target_list(self) -> tuple:
        """For each w: a word of w0 with a reduced word of w as prefix."""
        if self._prefix_targets is None:
            w0 = self.group.longest_element()
            out = []
            for w in self.group.elements():
                completion = w.inverse() * w0
                target = w.word + completion.word
                if len(target) != w0.length:
                    raise AssertionError("prefix completion is not reduced")
                out.append((w, target, w.length))
            self._prefix_targets = tuple(out)
        return self._prefix_targets

    def ggms_datum(self, lus: LusztigDatum) -> GGMSDatum:
        """All polytope vertices of the datum, by prefix transport."""
        vertices = []
        for w, target, plen in self._prefix_target_list():
            moved = self.transport(lus, target)
            steps = self.step_coweights(target)
            total = (0,) * self.datum.d
            for n, step in zip(moved.entries[:plen], steps[:plen]):
                total = tuple(a + n * b for a, b in zip(total, step.coords))
            vertices.append((w, Coweight(total)))
        return GGMSDatum(vertices=tuple(vertices))

    def validate_ggms(self, g: GGMSDatum) -> bool:
        """Pairwise vertex compatibility: nu_w >=_w nu_w' in integer mode."""
        items = g.vertices
        for w, vw in items:
            for _, vu in items:
                if not self.datum.le_w(w, vu, vw, "integer"):
                    return False
        return True

    # -- the membership test -------------------------------------------------------

    def is_mv(self, lus: LusztigDatum, mu: Coweight) -> bool:
        """Does the polytope of the datum, shifted to mu, stay in hull(W mu)?

        mu must be dominant and lambda = mu + coweight must lie in the weight
        set of mu; the test then checks nu_w + mu <=_w w(mu) at every vertex,
        with rational cone coefficients.
        """
        if not self.datum.is_dominant(mu):
            raise ValueError("is_mv needs a dominant mu")
        lam = mu + self.coweight(lus)
        dom = self.datum.dominant_representative(lam)
        if not self.datum.dominance_le(dom, mu, "rational"):
            raise ValueError(
                f"lambda {lam.coords} lies outside hull(W mu); not a weight of mu"
            )
        for w, nu_w in self.ggms_datum(lus).vertices:
            winv = w.inverse()
            lhs = winv.apply(nu_w + mu)
            if not self.datum.dominance_le(lhs, mu, "rational"):
                return False
        return True

    # -- enumeration ------------------------------------------------------------------

    def _target_cocoeffs(self, nu: Coweight) -> Optional[tuple[int, ...]]:
        """Coefficients of -nu over the simple coroots, when nonneg integral."""
        coeffs = self.datum.coroot_coefficients(-nu)
        if coeffs is None:
            return None
        if any(c.denominator != 1 or c < 0 for c in coeffs):
            return None
        return tuple(int(c) for c in coeffs)

    def enumerate_data(self, word: Sequence[int], nu: Coweight) -> tuple[LusztigDatum, ...]:
        """All data on the word with path endpoint nu, in lexicographic order."""
        word = self.require_word(word)
        target = self._target_cocoeffs(nu)
        if target is None:
            return ()
        table = self.datum.coroot_coefficient_table()
        step_coeffs = []
        for step in self.step_coweights(word):
            pos = tuple(-x for x in step.coords)
            step_coeffs.append(table[pos])
        sols = _nonneg_solutions(step_coeffs, target)
        return tuple(LusztigDatum(word=word, entries=s) for s in sols)

    def enumerate_block_data(
        self, sw: SigmaWord, nu: Coweight
    ) -> tuple[LusztigDatum, ...]:
        """Data on the sigma-compatible word, constant on blocks, endpoint nu."""
        word = self.require_word(sw.word)
        target = self._target_cocoeffs(nu)
        if target is None:
            return ()
        table = self.datum.coroot_coefficient_table()
        steps = self.step_coweights(word)
        block_coeffs = []
        for block in sw.blocks:
            acc = (0,) * self.datum.rank
            for pos in block:
                step = steps[pos - 1]
                coeff = table[tuple(-x for x in step.coords)]
                acc = tuple(a + b for a, b in zip(acc, coeff))
            block_coeffs.append(acc)
        sols = _nonneg_solutions(block_coeffs, target)
        out = []
        for s in sols:
            entries = [0] * len(word)
            for value, block in zip(s, sw.blocks):
                for pos in block:
                    entries[pos - 1] = value
            out.append(LusztigDatum(word=word, entries=tuple(entries)))
        return tuple(out)

    def kostant(self, nu: Coweight) -> int:
        """Number of multiset decompositions of -nu into positive coroots.

        Counted straight over the coroot list, with no reference to words or
        Lusztig data, so it can serve as an independent cross-check.
        """
        target = self._target_cocoeffs(nu)
        if target is None:
            return 0
        coeffs = tuple(self.datum.coroot_coefficient_table().values())

        def count(idx: int, rem: tuple[int, ...]) -> int:
            if all(x == 0 for x in rem):
                return 1
            if idx == len(coeffs):
                return 0
            key = (idx, rem)
            got = self._kostant_memo.get(key)
            if got is None:
                got = count(idx + 1, rem)
                step = coeffs[idx]
                if all(r >= s for r, s in zip(rem, step)):
                    got += count(idx, tuple(r - s for r, s in zip(rem, step)))
                self._kostant_memo[key] = got
            return got

        return count(0, target)


def _nonneg_solutions(
    step_coeffs: Sequence[tuple[int, ...]], target: tuple[int, ...]
) -> list[tuple[int, ...]]:
    """All nonnegative integer x with sum_k x_k * step_coeffs[k] == target.

    Each step vector is nonnegative and nonzero, so a depth-first scan with
    componentwise bounds terminates; solutions come out lexicographically.
    """
    out: list[tuple[int, ...]] = []
    n = len(step_coeffs)

    def rec(idx: int, rem: tuple[int, ...], acc: list[int]) -> None:
        if idx == n:
            if all(x == 0 for x in rem):
                out.append(tuple(acc))
            return
        step = step_coeffs[idx]
        # Bound from the tightest coordinate; steps are nonzero by construction.
        bound = min(rem[j] // step[j] for j in range(len(rem)) if step[j] > 0)
        # Nothing after idx can reduce a coordinate the remaining steps miss.
        for val in range(bound + 1):
            rec(idx + 1, tuple(r - val * s for r, s in zip(rem, step)), acc + [val])

    if not n:
        return [()] if all(x == 0 for x in target) else []
    rec(0, target, [])
    return out


@lru_cache(maxsize=None)
def mv_calculus(datum: RootDatum) -> MVCalculus:
    return MVCalculus(datum)


def path_vertices(datum: RootDatum, lus: LusztigDatum) -> PathVertices:
    return mv_calculus(datum).path_vertices(lus)


def coweight(datum: RootDatum, lus: LusztigDatum) -> Coweight:
    return mv_calculus(datum).coweight(lus)


def braid_transition(
    datum: RootDatum, lus: LusztigDatum, k: int, m: Optional[int] = None
) -> LusztigDatum:
    return mv_calculus(datum).braid_transition(lus, k, m)


def transport(datum: RootDatum, lus: LusztigDatum, target: Sequence[int]) -> LusztigDatum:
    return mv_calculus(datum).transport(lus, target)


def ggms_datum(datum: RootDatum, lus: LusztigDatum) -> GGMSDatum:
    return mv_calculus(datum).ggms_datum(lus)


def is_mv(datum: RootDatum, lus: LusztigDatum, mu: Coweight) -> bool:
    return mv_calculus(datum).is_mv(lus, mu)


def enumerate_data(datum: RootDatum, word: Sequence[int], nu: Coweight):
    return mv_calculus(datum).enumerate_data(word, nu)


def kostant(datum: RootDatum, nu: Coweight) -> int:
    return mv_calculus(datum).kostant(nu)


def is_sigma_invariant(
    datum: RootDatum,
    sigma: PinnedAut,
    lus: LusztigDatum,
    sw: Optional[SigmaWord] = None,
) -> bool:
    """Entries constant on every block of the sigma-compatible word."""
    if sw is None:
        sw = sigma_compatible_word(datum, sigma)
    if tuple(lus.word) != sw.word:
        raise ValueError("datum does not live on the sigma-compatible word")
    for block in sw.blocks:
        vals = {lus.entries[pos - 1] for pos in block}
        if len(vals) > 1:
            return False
    return True


def fold_lusztig_datum(
    datum: RootDatum,
    sigma: PinnedAut,
    lus: LusztigDatum,
    sw: Optional[SigmaWord] = None,
) -> LusztigDatum:
    """Collapse an invariant datum to one entry per block, on the folded word.

    The folded datum lives over the folded root datum and keeps the same path
    endpoint under the inclusion of invariant coweights.
    """
    if sw is None:
        sw = sigma_compatible_word(datum, sigma)
    if not is_sigma_invariant(datum, sigma, lus, sw):
        raise ValueError("datum is not sigma-invariant")
    folded_entries = tuple(lus.entries[block[0] - 1] for block in sw.blocks)
    return LusztigDatum(word=sw.word_sigma, entries=folded_entries)
