"""Finite group actions and their delooped chain 2-categories.

A left action of a finite group G on a finite set E induces an
equivalence on E: x ~ y iff some g sends x to y.  The same relation is
recovered by the witnessed 2-categorical search: chains over E form the
1-cells of a one-object strict 2-category whose 2-cells relabel a chain
pointwise by transporter elements, and two letters are equivalent there
iff they lie in the same orbit.  Chains of different lengths never bound
a 2-cell, which is what forces the comparison chains in any witness to
be empty.

The delooping itself is infinite; :func:`deloop_slice` materializes the
finite sub-2-category of chains of length <= max_chain_length + 1.  To
keep every table total on boundary-compatible pairs, concatenations that
would exceed the length bound are collapsed onto a single absorbing
1-cell (id ``!overflow``) whose only 2-cell is its identity.  The
absorbing cell can never bound a transporter 2-cell, so verdicts agree
with the unbounded delooping for every bound.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .catkernel import Cell, Finite2Category, FiniteCategory, FunctorData, MorphismFunction, Violation
from .equivalence import EquivData, are_equivalent
from .errors import InvalidInstance, UnknownElement

OVERFLOW = "!overflow"
_RESERVED = set("[],>#!")


class FiniteGroup:
    """A finite group as an element list and a multiplication table."""

    def __init__(self, elements, mul, unit, *, validate=True):
        self.elements = tuple(elements)
        self.mul_table = dict(mul)
        self.unit = unit
        if validate:
            report = self.validate()
            if report:
                raise InvalidInstance(report)
        self.inverse_of = {}
        eset = set(self.elements)
        for g in self.elements:
            for h in self.elements:
                if self.mul_table.get((g, h)) == self.unit and self.mul_table.get((h, g)) == self.unit:
                    self.inverse_of[g] = h
                    break
        if validate and set(self.inverse_of) != eset:
            raise InvalidInstance([Violation("group-inverse", "some element has no inverse")])

    def mul(self, g, h):
        try:
            return self.mul_table[(g, h)]
        except KeyError:
            raise UnknownElement(f"({g!r}, {h!r}) not in multiplication table") from None

    def validate(self):
        bad = []
        eset = set(self.elements)
        if self.unit not in eset:
            return [Violation("group-unit", f"unit {self.unit!r} not an element")]
        for g in self.elements:
            for h in self.elements:
                v = self.mul_table.get((g, h))
                if v is None or v not in eset:
                    bad.append(Violation("group-closure", f"({g}, {h})"))
        if bad:
            return bad
        for g in self.elements:
            if self.mul_table[(self.unit, g)] != g or self.mul_table[(g, self.unit)] != g:
                bad.append(Violation("group-unit", g))
        for g in self.elements:
            for h in self.elements:
                gh = self.mul_table[(g, h)]
                for k in self.elements:
                    if self.mul_table[(gh, k)] != self.mul_table[(g, self.mul_table[(h, k)])]:
                        bad.append(Violation("group-assoc", f"({g}, {h}, {k})"))
        return bad

    @classmethod
    def cyclic(cls, n):
        els = [f"g{i}" for i in range(n)]
        mul = {(els[i], els[j]): els[(i + j) % n] for i in range(n) for j in range(n)}
        return cls(els, mul, els[0])

    @classmethod
    def from_dict(cls, data, *, validate=True):
        return cls(data["elements"], {(g, h): k for g, h, k in data["mul"]}, data["unit"], validate=validate)


class GroupAction:
    """A left action of a finite group on a finite carrier, as a table."""

    def __init__(self, group: FiniteGroup, carrier, act, *, validate=True):
        self.group = group
        self.carrier = tuple(carrier)
        self.act_table = dict(act)
        if validate:
            report = self.validate()
            if report:
                raise InvalidInstance(report)
        self._transporters = None
        self._slices = {}

    def act(self, g, x):
        try:
            return self.act_table[(g, x)]
        except KeyError:
            raise UnknownElement(f"({g!r}, {x!r}) not in action table") from None

    def validate(self):
        bad = []
        cset = set(self.carrier)
        for g in self.group.elements:
            for x in self.carrier:
                v = self.act_table.get((g, x))
                if v is None or v not in cset:
                    bad.append(Violation("action-totality", f"({g}, {x})"))
        if bad:
            return bad
        for x in self.carrier:
            if self.act_table[(self.group.unit, x)] != x:
                bad.append(Violation("action-unit", x))
        for g in self.group.elements:
            for h in self.group.elements:
                gh = self.group.mul_table[(g, h)]
                for x in self.carrier:
                    if self.act_table[(g, self.act_table[(h, x)])] != self.act_table[(gh, x)]:
                        bad.append(Violation("action-compat", f"({g}, {h}, {x})"))
        return bad

    def transporters(self, x, y):
        """Group elements sending x to y, in element order."""
        if self._transporters is None:
            table = {}
            for g in self.group.elements:
                for x0 in self.carrier:
                    table.setdefault((x0, self.act_table[(g, x0)]), []).append(g)
            self._transporters = table
        return tuple(self._transporters.get((x, y), ()))

    @classmethod
    def from_dict(cls, data, *, validate=True):
        group = FiniteGroup.from_dict(data["group"], validate=validate)
        return cls(group, data["carrier"], {(g, x): y for g, x, y in data["act"]}, validate=validate)


def orbit_equivalent(a: GroupAction, x, y):
    """Decide orbit membership; return (verdict, least transporter or None).

    "Least" means first in the group's element order.
    """
    for z in (x, y):
        if z not in a.carrier:
            raise UnknownElement(f"{z!r} not in carrier")
    ts = a.transporters(x, y)
    order = {g: i for i, g in enumerate(a.group.elements)}
    if not ts:
        return False, None
    return True, min(ts, key=order.__getitem__)


def orbit_partition(a: GroupAction):
    """Orbits as sorted blocks, sorted by least member."""
    seen = set()
    blocks = []
    for x in a.carrier:
        if x in seen:
            continue
        orbit = {a.act_table[(g, x)] for g in a.group.elements}
        seen |= orbit
        blocks.append(sorted(orbit))
    blocks.sort(key=lambda b: b[0])
    return blocks


@dataclass(frozen=True)
class WordTwoCell:
    """A pointwise relabelling of one chain into another."""

    src: tuple
    tgt: tuple
    labels: tuple


def chain_two_cells(a: GroupAction, src, tgt):
    """All 2-cells between two chains: pointwise transporter labellings.

    Chains of different lengths bound no 2-cell at all.  The result is
    ordered by the group's element order position by position.
    """
    src, tgt = tuple(src), tuple(tgt)
    if len(src) != len(tgt):
        return []
    pools = [a.transporters(x, y) for x, y in zip(src, tgt)]
    if any(not p for p in pools):
        return []
    return [WordTwoCell(src, tgt, labels) for labels in itertools.product(*pools)]


def _word_id(word):
    return "[" + ",".join(word) + "]"


def _cell_id(src_id, tgt_id, labels):
    return f"{src_id}>{tgt_id}#{','.join(labels)}"


class DeloopedSlice:
    """The materialized bounded delooping plus its identity parameter bundle."""

    def __init__(self, action: GroupAction, max_chain_length: int):
        if max_chain_length < 0:
            raise ValueError("max_chain_length must be >= 0")
        for name in itertools.chain(action.carrier, action.group.elements):
            if _RESERVED & set(name):
                raise ValueError(f"name {name!r} uses a reserved character")
        self.action = action
        self.max_chain_length = max_chain_length
        bound = max_chain_length + 1
        obj = "*"

        words = [()]
        frontier = [()]
        for _ in range(bound):
            frontier = [w + (x,) for w in frontier for x in action.carrier]
            words.extend(frontier)
        self.words = words
        wid = {w: _word_id(w) for w in words}
        one_cells = [(wid[w], obj, obj) for w in words] + [(OVERFLOW, obj, obj)]

        compose = {}
        ids = [wid[w] for w in words] + [OVERFLOW]
        for g in words:
            for f in words:
                cat = g + f  # letters of the outer chain precede the inner one
                compose[(wid[g], wid[f])] = wid[cat] if len(cat) <= bound else OVERFLOW
        for m in ids:
            compose[(m, OVERFLOW)] = OVERFLOW
            compose[(OVERFLOW, m)] = OVERFLOW

        unit = action.group.unit
        mul = action.group.mul_table
        cells = []
        id2 = {}
        cell_ids = {}  # (src word, tgt word, labels) -> id
        by_len = {}
        for w in words:
            by_len.setdefault(len(w), []).append(w)
        for length, ws in by_len.items():
            for src in ws:
                sid = wid[src]
                for tgt in ws:
                    tid = wid[tgt]
                    for two in chain_two_cells(action, src, tgt):
                        cid = _cell_id(sid, tid, two.labels)
                        cells.append(Cell(cid, sid, tid))
                        cell_ids[(src, tgt, two.labels)] = cid
                        if src == tgt and all(l == unit for l in two.labels):
                            id2[sid] = cid
        over_id2 = _cell_id(OVERFLOW, OVERFLOW, ())
        cells.append(Cell(over_id2, OVERFLOW, OVERFLOW))
        id2[OVERFLOW] = over_id2
        self._cell_ids = cell_ids

        cells_from = {}
        for (src, tgt, labels), cid in cell_ids.items():
            cells_from.setdefault(src, []).append((tgt, labels, cid))
        vcomp = {}
        for (src, mid, l1), aid in cell_ids.items():
            for tgt, l2, bid in cells_from[mid]:
                labels = tuple(mul[(b, a)] for b, a in zip(l2, l1))
                vcomp[(bid, aid)] = cell_ids[(src, tgt, labels)]
        vcomp[(over_id2, over_id2)] = over_id2

        wl = {}
        wr = {}
        unit_labels = {n: (unit,) * n for n in range(bound + 1)}
        for (src, tgt, labels), cid in cell_ids.items():
            n = len(src)
            for k in words:
                if len(k) + n <= bound:
                    ks, kt = k + src, k + tgt
                    wl[(wid[k], cid)] = cell_ids[(ks, kt, unit_labels[len(k)] + labels)]
                    wr[(cid, wid[k])] = cell_ids[(src + k, tgt + k, labels + unit_labels[len(k)])]
                else:
                    wl[(wid[k], cid)] = over_id2
                    wr[(cid, wid[k])] = over_id2
            wl[(OVERFLOW, cid)] = over_id2
            wr[(cid, OVERFLOW)] = over_id2
        for m in ids:
            wl[(m, over_id2)] = over_id2
            wr[(over_id2, m)] = over_id2

        self.two_category = Finite2Category(
            [obj], one_cells, {obj: wid[()]}, compose,
            cells, id2, vcomp, wl, wr, validate=False,
        )
        self.category = FiniteCategory([obj], one_cells, {obj: wid[()]}, compose, validate=False)
        omap = {obj: obj}
        mmap = {m: m for m in ids}
        self.equiv = EquivData(
            self.category,
            self.two_category,
            MorphismFunction(self.category, self.two_category, omap, mmap, validate=False),
            FunctorData(self.category, self.two_category, omap, mmap, validate=False),
            FunctorData(self.category, self.two_category, omap, mmap, validate=False),
            validate=False,
        )

    def embed(self, x):
        """The 1-cell carrying the single-letter chain (x,)."""
        if x not in self.action.carrier:
            raise UnknownElement(f"{x!r} not in carrier")
        return _word_id((x,))

    def letter_of(self, morphism_id):
        """Inverse of embed where defined, else None."""
        for x in self.action.carrier:
            if _word_id((x,)) == morphism_id:
                return x
        return None


def deloop_slice(a: GroupAction, max_chain_length: int) -> DeloopedSlice:
    """Build (or fetch the cached) bounded delooping slice."""
    if max_chain_length not in a._slices:
        a._slices[max_chain_length] = DeloopedSlice(a, max_chain_length)
    return a._slices[max_chain_length]


def delooped_equivalent(a: GroupAction, x, y, max_chain_length: int):
    """Run the witnessed search for the two letters inside the bounded slice.

    The verdict is independent of the bound: chains of different lengths
    bound no 2-cell, so any witness must use empty comparison chains.
    """
    s = deloop_slice(a, max_chain_length)
    ok, witness = are_equivalent(s.equiv, s.embed(x), s.embed(y))
    return ok, witness
