"""Witnessed equivalence of morphisms relative to a 2-categorical parameter.

The parameter is a bundle (c, d, sigma, tau1, tau2): a finite category
``c``, a finite strict 2-category ``d``, two functors ``tau1``, ``tau2``
and a bare morphism assignment ``sigma``, all three agreeing on objects.
Two morphisms ``m: A -> B`` and ``mt: At -> Bt`` of ``c`` are equivalent
when there are comparison morphisms ``u1: B -> Bt``, ``u2: At -> A``,
``v1: Bt -> B``, ``v2: A -> At`` in ``c`` together with 2-cells of ``d``

    phi:       tau1(u1) . sigma(m) . tau2(u2) => sigma(mt)
    phi_tilde: sigma(mt) => tau1(u1) . sigma(m) . tau2(u2)
    psi:       tau1(v1) . sigma(mt) . tau2(v2) => sigma(m)
    psi_tilde: sigma(m) => tau1(v1) . sigma(mt) . tau2(v2)

Witness search is deterministic: identifiers are enumerated in
lexicographic order and the first witness found is returned.
"""

from __future__ import annotations

from dataclasses import dataclass

from .catkernel import FiniteCategory, Finite2Category, FunctorData, MorphismFunction
from .errors import InvalidInstance, InvalidPremise, NotComposable, UnknownId
from .catkernel import Violation


@dataclass(frozen=True)
class Witness:
    """The eight components of one equivalence witness."""

    u1: str
    u2: str
    v1: str
    v2: str
    phi: str
    phi_tilde: str
    psi: str
    psi_tilde: str


@dataclass(frozen=True)
class VerifyResult:
    ok: bool
    failure: str | None = None

    def __bool__(self):
        return self.ok


class EquivData:
    """The parameter bundle (c, d, sigma, tau1, tau2)."""

    def __init__(self, c: FiniteCategory, d: Finite2Category, sigma: MorphismFunction,
                 tau1: FunctorData, tau2: FunctorData, *, validate=True):
        self.c = c
        self.d = d
        self.sigma = sigma
        self.tau1 = tau1
        self.tau2 = tau2
        if validate:
            bad = []
            for part, name in ((sigma, "sigma"), (tau1, "tau1"), (tau2, "tau2")):
                if part.source is not c or part.target is not d:
                    bad.append(Violation("wrong-ends", name))
            if not bad:
                if tau1.object_map != sigma.object_map or tau2.object_map != sigma.object_map:
                    bad.append(Violation("object-map-disagree", "sigma/tau1/tau2"))
                bad.extend(Violation("sigma:" + v.code, v.detail) for v in sigma.validate())
                bad.extend(Violation("tau1:" + v.code, v.detail) for v in tau1.validate())
                bad.extend(Violation("tau2:" + v.code, v.detail) for v in tau2.validate())
            if bad:
                raise InvalidInstance(bad)

    def composite(self, u1, m, u2):
        """The 1-cell tau1(u1) . sigma(m) . tau2(u2) of d.

        Requires u1 to start where m ends and u2 to end where m starts.
        """
        c, d = self.c, self.d
        if c.dom(u1) != c.cod(m):
            raise NotComposable(f"dom({u1!r}) != cod({m!r})")
        if c.cod(u2) != c.dom(m):
            raise NotComposable(f"cod({u2!r}) != dom({m!r})")
        inner = d.compose(self.sigma(m), self.tau2(u2))
        return d.compose(self.tau1(u1), inner)


def verify_witness(e: EquivData, m, m_tilde, w: Witness) -> VerifyResult:
    """Check all eight boundary conditions; name the first failing one."""
    c, d = e.c, e.d
    am, at = c.arrow(m), c.arrow(m_tilde)
    sig_m, sig_mt = e.sigma(m), e.sigma(m_tilde)

    u1, u2, v1, v2 = (c.arrow(w.u1), c.arrow(w.u2), c.arrow(w.v1), c.arrow(w.v2))
    if (u1.dom, u1.cod) != (am.cod, at.cod):
        return VerifyResult(False, "u1 boundary")
    if (u2.dom, u2.cod) != (at.dom, am.dom):
        return VerifyResult(False, "u2 boundary")
    if (v1.dom, v1.cod) != (at.cod, am.cod):
        return VerifyResult(False, "v1 boundary")
    if (v2.dom, v2.cod) != (am.dom, at.dom):
        return VerifyResult(False, "v2 boundary")

    x = e.composite(w.u1, m, w.u2)
    y = e.composite(w.v1, m_tilde, w.v2)
    phi, phi_t = d.cell(w.phi), d.cell(w.phi_tilde)
    psi, psi_t = d.cell(w.psi), d.cell(w.psi_tilde)
    if (phi.src, phi.tgt) != (x, sig_mt):
        return VerifyResult(False, "phi boundary")
    if (phi_t.src, phi_t.tgt) != (sig_mt, x):
        return VerifyResult(False, "phi_tilde boundary")
    if (psi.src, psi.tgt) != (y, sig_m):
        return VerifyResult(False, "psi boundary")
    if (psi_t.src, psi_t.tgt) != (sig_m, y):
        return VerifyResult(False, "psi_tilde boundary")
    return VerifyResult(True)


def _side_search(e: EquivData, m_from, m_to):
    """First (u1, u2, fwd, bwd) with cells both ways, in lexicographic order.

    Looks for u1: cod(m_from) -> cod(m_to), u2: dom(m_to) -> dom(m_from)
    and 2-cells  tau1(u1).sigma(m_from).tau2(u2) <=> sigma(m_to).
    """
    c, d = e.c, e.d
    a_from, a_to = c.arrow(m_from), c.arrow(m_to)
    target = e.sigma(m_to)
    if target not in d._cell_tgts or target not in d._cell_srcs:
        return None
    sig = e.sigma(m_from)
    tau1, tau2 = e.tau1.morphism_map, e.tau2.morphism_map
    comp = d.skeleton.compose_table
    cells = d._by_boundary
    for u1 in c.hom(a_from.cod, a_to.cod):
        left = comp[(tau1[u1], sig)]
        for u2 in c.hom(a_to.dom, a_from.dom):
            x = comp[(left, tau2[u2])]
            fwd = cells.get((x, target))
            if not fwd:
                continue
            bwd = cells.get((target, x))
            if not bwd:
                continue
            return u1, u2, fwd[0], bwd[0]
    return None


def are_equivalent(e: EquivData, m, m_tilde):
    """Decide equivalence; return (verdict, witness or None).

    The returned witness is the lexicographically first one in the
    component order (u1, u2, phi, phi_tilde, v1, v2, psi, psi_tilde);
    the two sides of the search are independent, so the first witness
    factors into the first u-side and the first v-side.
    """
    e.c.arrow(m)
    e.c.arrow(m_tilde)
    u_side = _side_search(e, m, m_tilde)
    if u_side is None:
        return False, None
    v_side = _side_search(e, m_tilde, m)
    if v_side is None:
        return False, None
    u1, u2, phi, phi_t = u_side
    v1, v2, psi, psi_t = v_side
    return True, Witness(u1, u2, v1, v2, phi, phi_t, psi, psi_t)


def derive_reflexivity(e: EquivData, m) -> Witness:
    """Identity comparison morphisms and identity 2-cells on sigma(m)."""
    c, d = e.c, e.d
    a = c.arrow(m)
    ident = d.id_two(e.sigma(m))
    w = Witness(
        u1=c.id_of(a.cod), u2=c.id_of(a.dom),
        v1=c.id_of(a.cod), v2=c.id_of(a.dom),
        phi=ident, phi_tilde=ident, psi=ident, psi_tilde=ident,
    )
    return w


def derive_symmetry(e: EquivData, m, m_tilde, w: Witness) -> Witness:
    """Swap the two halves of a witness for (m, m_tilde)."""
    got = verify_witness(e, m, m_tilde, w)
    if not got:
        raise InvalidPremise(f"witness fails: {got.failure}")
    return Witness(
        u1=w.v1, u2=w.v2, v1=w.u1, v2=w.u2,
        phi=w.psi, phi_tilde=w.psi_tilde, psi=w.phi, psi_tilde=w.phi_tilde,
    )


def derive_transitivity(e: EquivData, m, m_bar, m_barbar, w1: Witness, w2: Witness) -> Witness:
    """Compose a witness for (m, m_bar) with one for (m_bar, m_barbar).

    Comparison morphisms compose in c; the 2-cells are pasted by
    whiskering the inner cell with the outer comparison images and
    composing vertically with the outer cell.
    """
    for (a, b, w) in ((m, m_bar, w1), (m_bar, m_barbar, w2)):
        got = verify_witness(e, a, b, w)
        if not got:
            raise InvalidPremise(f"witness for ({a!r}, {b!r}) fails: {got.failure}")
    c, d = e.c, e.d
    tau1, tau2 = e.tau1.morphism_map, e.tau2.morphism_map

    def sandwich(cell, left, right):
        # 1_{tau1(left)} *h cell *h 1_{tau2(right)} as two whiskerings
        return d.whisker_left(tau1[left], d.whisker_right(cell, tau2[right]))

    u1 = c.compose(w2.u1, w1.u1)
    u2 = c.compose(w1.u2, w2.u2)
    v1 = c.compose(w1.v1, w2.v1)
    v2 = c.compose(w2.v2, w1.v2)
    phi = d.vcomp(w2.phi, sandwich(w1.phi, w2.u1, w2.u2))
    phi_tilde = d.vcomp(sandwich(w1.phi_tilde, w2.u1, w2.u2), w2.phi_tilde)
    psi = d.vcomp(w1.psi, sandwich(w2.psi, w1.v1, w1.v2))
    psi_tilde = d.vcomp(sandwich(w2.psi_tilde, w1.v1, w1.v2), w1.psi_tilde)
    return Witness(u1, u2, v1, v2, phi, phi_tilde, psi, psi_tilde)


def derive_witness(e: EquivData, mode: str, *args) -> Witness:
    """Dispatch on mode: "refl" (m), "sym" (m, mt, w), "trans" (m, mb, mbb, w1, w2)."""
    if mode == "refl":
        return derive_reflexivity(e, *args)
    if mode == "sym":
        return derive_symmetry(e, *args)
    if mode == "trans":
        return derive_transitivity(e, *args)
    raise ValueError(f"unknown mode {mode!r}")


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}
        self.size = {x: 1 for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:  # path compression
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]


def _blocks(uf, items):
    groups = {}
    for m in items:
        groups.setdefault(uf.find(m), []).append(m)
    blocks = [sorted(g) for g in groups.values()]
    blocks.sort(key=lambda b: b[0])
    return blocks


def equivalence_classes(e: EquivData):
    """Partition of all morphisms of c, exploiting symmetry and transitivity.

    Pairs already joined through earlier unions are skipped; the result
    is observationally identical to the all-pairs search.
    """
    items = sorted(e.c.morphisms)
    uf = _UnionFind(items)
    for i, m in enumerate(items):
        for mt in items[i + 1:]:
            if uf.find(m) == uf.find(mt):
                continue
            ok, _ = are_equivalent(e, m, mt)
            if ok:
                uf.union(m, mt)
    return _blocks(uf, items)


def equivalence_classes_all_pairs(e: EquivData):
    """Oracle variant: run the search on every ordered pair, then partition."""
    items = sorted(e.c.morphisms)
    rel = {}
    for m in items:
        for mt in items:
            rel[(m, mt)] = are_equivalent(e, m, mt)[0]
    uf = _UnionFind(items)
    for (m, mt), ok in rel.items():
        if ok:
            uf.union(m, mt)
    return _blocks(uf, items)
