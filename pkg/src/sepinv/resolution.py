"""Minimal graded free resolutions and depth invariants.

The resolution is built in two stages.  First an iterated syzygy
construction: a reduced Groebner basis presents the ideal, and the
syzygies of a basis, computed with induced module orders, are again a
Groebner basis of the syzygy module, so the construction repeats until
it runs dry.  Ordering each level by component and then by decreasing
lex of the lead monomial makes every level lose one more variable from
its lead terms, which bounds the length by the variable count.  Second,
the resulting complex is far from minimal, so constant entries in the
differentials are cleared by a change of basis that splits off trivial
two-term complexes until none remain.

Everything here requires homogeneous input; the grading is what makes
"minimal" well defined and lets depth be read off the length via the
graded form of the Auslander-Buchsbaum formula.
"""

from __future__ import annotations

from . import config
from .errors import (
    InternalInconsistency,
    NonHomogeneousInput,
    ResourceCapExceeded,
    RingMismatch,
    UnitIdeal,
)
from .poly import Polynomial, is_homogeneous


# ---------------------------------------------------------------------------
# module orders
# ---------------------------------------------------------------------------

class _Level:
    """Key machinery for one free module in the cascade.

    Terms are (component, monomial) pairs.  The base level (parent None)
    compares by the ring order with smaller component winning ties; an
    induced level compares images under its basis leads in the parent,
    again breaking ties toward the smaller component.
    """

    __slots__ = ("ring", "parent", "leads", "_keys")

    def __init__(self, ring, parent=None, leads=None):
        self.ring = ring
        self.parent = parent
        self.leads = leads
        self._keys = {}

    def key(self, t):
        k = self._keys.get(t)
        if k is None:
            c, m = t
            if self.parent is None:
                k = (self.ring.key(m), -c)
            else:
                pc, pm = self.leads[c]
                k = (self.parent.key((pc, self.ring.mono_mul(pm, m))), -c)
            self._keys[t] = k
        return k


def _view(elems, gf2):
    """Reducer view bucketed by lead component: comp -> [(lead mono, tail)]."""
    buckets = {}
    for e in elems:
        (c, m), _ = e[0]
        if gf2:
            tail = tuple(t for t, _ in e[1:])
        else:
            tail = e[1:]
        buckets.setdefault(c, []).append((m, tail))
    return buckets


def _vnf(work, buckets, level, nbasis, index_of, want_quots):
    """Module normal form, general coefficients.  Mutates `work`."""
    ring = level.ring
    fld = ring.field
    key = level.key
    guard = ring.guard
    quots = [None] * nbasis if want_quots else None
    rem = {}
    while work:
        t = max(work, key=key)
        coeff = work.pop(t)
        tc, tm = t
        hit = False
        for bm, tail in buckets.get(tc, ()):
            if ((tm | guard) - bm) & guard == guard:
                q = tm - bm
                if want_quots:
                    idx = index_of[(tc, bm)]
                    qd = quots[idx]
                    if qd is None:
                        qd = quots[idx] = {}
                    v = fld.add(qd.get(q, 0), coeff)
                    if v:
                        qd[q] = v
                    else:
                        qd.pop(q, None)
                for (cc, mm), ct in tail:
                    s = q + mm
                    if s & guard:
                        raise ResourceCapExceeded("monomial overflow in module reduction")
                    u = (cc, s)
                    v = fld.sub(work.get(u, 0), fld.mul(coeff, ct))
                    if v:
                        work[u] = v
                    else:
                        work.pop(u, None)
                hit = True
                break
        if not hit:
            rem[t] = coeff
    return quots, rem


def _vnf2(work, buckets, level, nbasis, index_of, want_quots):
    """Module normal form over F_2: sets of terms, toggling membership."""
    ring = level.ring
    key = level.key
    guard = ring.guard
    quots = [None] * nbasis if want_quots else None
    rem = set()
    while work:
        t = max(work, key=key)
        work.discard(t)
        tc, tm = t
        hit = False
        for bm, tail in buckets.get(tc, ()):
            if ((tm | guard) - bm) & guard == guard:
                q = tm - bm
                if want_quots:
                    idx = index_of[(tc, bm)]
                    qs = quots[idx]
                    if qs is None:
                        qs = quots[idx] = set()
                    if q in qs:
                        qs.discard(q)
                    else:
                        qs.add(q)
                for cc, mm in tail:
                    s = q + mm
                    if s & guard:
                        raise ResourceCapExceeded("monomial overflow in module reduction")
                    u = (cc, s)
                    if u in work:
                        work.discard(u)
                    else:
                        work.add(u)
                hit = True
                break
        if not hit:
            rem.add(t)
    return quots, rem


def _canon_dict(d, level):
    items = sorted(d.items(), key=lambda kv: level.key(kv[0]), reverse=True)
    return tuple(items)


def _canon_set(s, level):
    return tuple((t, 1) for t in sorted(s, key=level.key, reverse=True))


def _index_of(elems):
    """Map lead term -> position; leads must be distinct inside one basis."""
    out = {}
    for i, e in enumerate(elems):
        lead = e[0][0]
        if lead in out:
            raise InternalInconsistency("duplicate lead term in module basis")
        out[lead] = i
    return out


def _vinterreduce(elems, level, gf2):
    """Minimal, monic, tail-reduced form of a module Groebner basis."""
    ring = level.ring
    if not elems:
        return []
    elems = sorted(elems, key=lambda e: level.key(e[0][0]))
    kept = []
    for e in elems:
        c, m = e[0][0]
        if any(k[0][0][0] == c and ring.mono_divides(k[0][0][1], m) for k in kept):
            continue
        kept.append(e)
    out = list(kept)
    for i in range(len(out)):
        others = out[:i] + out[i + 1:]
        buckets = _view(others, gf2)
        idx = _index_of(others)
        if gf2:
            work = {t for t, _ in out[i]}
            _, rem = _vnf2(work, buckets, level, len(others), idx, False)
            out[i] = _canon_set(rem, level)
        else:
            work = dict(out[i])
            _, rem = _vnf(work, buckets, level, len(others), idx, False)
            out[i] = _canon_dict(rem, level)
    return out


def _sort_basis(elems, ring):
    """Component ascending, then lead monomial in decreasing lex.

    This ordering is what drives a variable out of the lead terms at each
    level of the cascade.
    """
    def k(e):
        (c, m), _ = e[0]
        return (c, tuple(-x for x in ring.unpack(m)))
    return sorted(elems, key=k)


def _syzygy_level(level, elems, caps, counter):
    """All pairwise syzygies of a monic module Groebner basis.

    Returns (next level, syzygy elements in next-level coordinates).
    The division remainders must vanish; anything else means the input
    was not a Groebner basis and the cascade is invalid.
    """
    ring = level.ring
    fld = ring.field
    gf2 = ring.field.p == 2 and ring.field.e == 1
    leads = [e[0][0] for e in elems]
    nxt = _Level(ring, level, leads)
    buckets = _view(elems, gf2)
    idx = _index_of(elems)
    guard = ring.guard
    out = []
    bycomp = {}
    for i, (c, _) in enumerate(leads):
        bycomp.setdefault(c, []).append(i)
    for c in sorted(bycomp):
        group = bycomp[c]
        for a in range(len(group)):
            for b in range(a + 1, len(group)):
                i, j = group[a], group[b]
                counter[0] += 1
                if counter[0] > caps.pair_cap:
                    raise ResourceCapExceeded(
                        f"syzygy pair count exceeds cap {caps.pair_cap}"
                    )
                mi, mj = leads[i][1], leads[j][1]
                L = ring.mono_lcm(mi, mj)
                ui = L - mi
                uj = L - mj
                if gf2:
                    work = set()
                    for pair in ((i, ui), (j, uj)):
                        e, shift = elems[pair[0]], pair[1]
                        for (cc, mm), _ in e:
                            s = shift + mm
                            if s & guard:
                                raise ResourceCapExceeded("monomial overflow in S-vector")
                            u = (cc, s)
                            if u in work:
                                work.discard(u)
                            else:
                                work.add(u)
                    quots, rem = _vnf2(work, buckets, level, len(elems), idx, True)
                    if rem:
                        raise InternalInconsistency("syzygy pair left a remainder")
                    syz = {(i, ui), (j, uj)}
                    for t, qs in enumerate(quots):
                        if qs:
                            for q in qs:
                                u = (t, q)
                                if u in syz:
                                    syz.discard(u)
                                else:
                                    syz.add(u)
                    if syz:
                        out.append(_canon_set(syz, nxt))
                else:
                    work = {}
                    for e, shift, sign in ((elems[i], ui, 1), (elems[j], uj, -1)):
                        for (cc, mm), ct in e:
                            s = shift + mm
                            if s & guard:
                                raise ResourceCapExceeded("monomial overflow in S-vector")
                            u = (cc, s)
                            v = ct if sign == 1 else fld.neg(ct)
                            v = fld.add(work.get(u, 0), v)
                            if v:
                                work[u] = v
                            else:
                                work.pop(u, None)
                    quots, rem = _vnf(work, buckets, level, len(elems), idx, True)
                    if rem:
                        raise InternalInconsistency("syzygy pair left a remainder")
                    syz = {(i, ui): 1}
                    v = fld.sub(syz.get((j, uj), 0), 1)
                    if v:
                        syz[(j, uj)] = v
                    else:
                        syz.pop((j, uj), None)
                    for t, qd in enumerate(quots):
                        if qd:
                            for q, cv in qd.items():
                                u = (t, q)
                                v = fld.sub(syz.get(u, 0), cv)
                                if v:
                                    syz[u] = v
                                else:
                                    syz.pop(u, None)
                    if syz:
                        out.append(_canon_dict(syz, nxt))
    return nxt, out


# ---------------------------------------------------------------------------
# the chain complex and its minimalization
# ---------------------------------------------------------------------------

class _Chain:
    """Mutable complex with stable basis ids, as dict-of-columns matrices."""

    def __init__(self, ring, columns):
        # columns[k] for k >= 1: canonical module elements, coordinates in F_{k-1}
        self.ring = ring
        self.live = [[0]]                # live basis ids per level
        self.shifts = [{0: 0}]           # id -> internal degree
        self.d = [None]                  # d[k]: {col id: {row id: Polynomial}}
        for k in range(1, len(columns)):
            ids = list(range(len(columns[k])))
            self.live.append(ids)
            shifts = {}
            mats = {}
            for j, elem in enumerate(columns[k]):
                (c0, m0), _ = elem[0]
                deg = self.shifts[k - 1][c0] + ring.mono_degree(m0)
                shifts[j] = deg
                col = {}
                for (c, m), cf in elem:
                    if self.shifts[k - 1][c] + ring.mono_degree(m) != deg:
                        raise InternalInconsistency("inhomogeneous differential entry")
                    col.setdefault(c, {})[m] = cf
                mats[j] = {c: ring.from_dict(d) for c, d in col.items()}
            self.shifts.append(shifts)
            self.d.append(mats)

    def length(self):
        top = 0
        for k in range(len(self.live)):
            if self.live[k]:
                top = k
        return top

    def minimalize(self):
        fld = self.ring.field
        top = len(self.d) - 1
        progress = True
        while progress:
            progress = False
            for i in range(1, top + 1):
                hit = self._clear_one_unit(i, fld)
                if hit:
                    progress = True
        self._trim()

    def _clear_one_unit(self, i, fld):
        d_i = self.d[i]
        found = None
        for c in sorted(d_i):
            col = d_i[c]
            for r in sorted(col):
                p = col[r]
                if p.terms and len(p.terms) == 1 and p.terms[0][0] == 0:
                    found = (r, c, p.terms[0][1])
                    break
            if found:
                break
        if not found:
            return False
        r, c, u = found
        uinv = fld.inv(u)
        col_c = d_i.pop(c)
        col_c.pop(r)
        for b, colb in d_i.items():
            brb = colb.pop(r, None)
            if brb is None or brb.is_zero():
                continue
            factor = brb.scale(uinv)
            for a, bac in col_c.items():
                delta = bac * factor
                cur = colb.get(a)
                newp = (cur - delta) if cur is not None else -delta
                if newp.is_zero():
                    colb.pop(a, None)
                else:
                    colb[a] = newp
        self.live[i].remove(c)
        self.shifts[i].pop(c)
        self.live[i - 1].remove(r)
        self.shifts[i - 1].pop(r)
        if i + 1 < len(self.d):
            for colx in self.d[i + 1].values():
                colx.pop(c, None)
        if i - 1 >= 1:
            self.d[i - 1].pop(r, None)
        return True

    def _trim(self):
        while len(self.live) > 1 and not self.live[-1]:
            self.live.pop()
            self.shifts.pop()
            self.d.pop()

    def check(self):
        """d_{i-1} after d_i must vanish, and no unit entries may remain."""
        for i in range(1, len(self.d)):
            for c, col in self.d[i].items():
                for r, p in col.items():
                    if p.terms and len(p.terms) == 1 and p.terms[0][0] == 0:
                        raise InternalInconsistency("unit entry survived minimalization")
        for i in range(2, len(self.d)):
            lower = self.d[i - 1]
            for c, col in self.d[i].items():
                acc = {}
                for r, p in col.items():
                    for a, q in lower.get(r, {}).items():
                        prod = q * p
                        cur = acc.get(a)
                        acc[a] = prod if cur is None else cur + prod
                for a, v in acc.items():
                    if not v.is_zero():
                        raise InternalInconsistency("composite differential is nonzero")


# ---------------------------------------------------------------------------
# Hilbert numerator of a monomial ideal
# ---------------------------------------------------------------------------

def _minimal_monos(monos, ring):
    out = []
    for m in sorted(set(monos), key=lambda x: (ring.mono_degree(x), x)):
        if not any(ring.mono_divides(o, m) for o in out):
            out.append(m)
    return out


def _mono_colon(m, g, ring):
    em = ring.unpack(m)
    eg = ring.unpack(g)
    return ring.pack(tuple(max(a - b, 0) for a, b in zip(em, eg)))


def _kpoly(gens, ring, memo):
    if not gens:
        return {0: 1}
    if 0 in gens:
        return {}
    cached = memo.get(gens)
    if cached is not None:
        return cached
    g = max(gens, key=lambda m: (ring.mono_degree(m), m))
    rest = frozenset(gens - {g})
    a = _kpoly(rest, ring, memo)
    colon = frozenset(_minimal_monos([_mono_colon(m, g, ring) for m in rest], ring))
    b = _kpoly(colon, ring, memo)
    out = dict(a)
    dg = ring.mono_degree(g)
    for d, cnt in b.items():
        v = out.get(d + dg, 0) - cnt
        if v:
            out[d + dg] = v
        else:
            out.pop(d + dg, None)
    memo[gens] = out
    return out


def hilbert_numerator(ideal):
    """Numerator of the Hilbert series of R/I over (1-t)^n, as {degree: int}.

    Computed purely combinatorially from the lead-term ideal, so it serves
    as an independent cross-check on resolutions.
    """
    for g in ideal.gens:
        if is_homogeneous(g) is None:
            raise NonHomogeneousInput("Hilbert numerator needs homogeneous generators")
    ring = ideal.ring
    gb = ideal.groebner_basis()
    lms = frozenset(_minimal_monos([g.leading_monomial() for g in gb], ring))
    return _kpoly(lms, ring, {})


# ---------------------------------------------------------------------------
# public resolution API
# ---------------------------------------------------------------------------

class FreeResolution:
    """A minimal graded free resolution of R/I.

    shifts[k] lists the internal degrees of the level-k basis; matrix(k)
    is the differential F_k -> F_{k-1} as rows over the target basis.
    """

    def __init__(self, ring, shifts, matrices):
        self.ring = ring
        self.shifts = shifts
        self._matrices = matrices

    @property
    def length(self):
        return len(self.shifts) - 1

    def betti_numbers(self):
        return [len(s) for s in self.shifts]

    def graded_betti(self):
        out = {}
        for k, degs in enumerate(self.shifts):
            for d in degs:
                out[(k, d)] = out.get((k, d), 0) + 1
        return out

    def matrix(self, k):
        """Differential d_k as a list of rows of polynomials."""
        return self._matrices[k - 1]

    def euler_characteristic(self):
        """Alternating sum of shift monomials, as {degree: int}."""
        out = {}
        sign = 1
        for degs in self.shifts:
            for d in degs:
                v = out.get(d, 0) + sign
                if v:
                    out[d] = v
                else:
                    out.pop(d, None)
            sign = -sign
        return out

    def betti_table(self):
        """Text table: rows are internal degree, columns homological degree."""
        gb = self.graded_betti()
        if not gb:
            return "(zero)"
        cols = range(self.length + 1)
        rows = sorted({d for (_, d) in gb})
        width = max(6, max(len(str(v)) for v in gb.values()) + 2)
        lines = ["    " + "".join(str(k).rjust(width) for k in cols)]
        for d in rows:
            cells = []
            for k in cols:
                v = gb.get((k, d), 0)
                cells.append((str(v) if v else ".").rjust(width))
            lines.append(str(d).rjust(4) + "".join(cells))
        return "\n".join(lines)


def minimal_free_resolution(ideal, caps=None):
    """Minimal graded free resolution of R/I for a homogeneous ideal I."""
    caps = caps or ideal.caps
    ring = ideal.ring
    for g in ideal.gens:
        if is_homogeneous(g) is None:
            raise NonHomogeneousInput(
                "free resolutions require homogeneous generators"
            )
    gb = ideal.groebner_basis()
    if gb and gb[0].leading_monomial() == 0:
        raise UnitIdeal("R/I is the zero ring")
    if not gb:
        return FreeResolution(ring, [(0,)], [])

    start = [tuple(((0, m), cf) for m, cf in g.terms) for g in gb]
    columns = [None, _sort_basis(start, ring)]
    gf2 = ring.field.p == 2 and ring.field.e == 1
    level = _Level(ring)
    cur = columns[1]
    counter = [0]
    while cur:
        if len(columns) > ring.nvars + 2:
            raise InternalInconsistency("syzygy cascade failed to terminate")
        nxt, syz = _syzygy_level(level, cur, caps, counter)
        syz = _vinterreduce(syz, nxt, gf2)
        syz = _sort_basis(syz, ring)
        if syz:
            columns.append(syz)
        cur = syz
        level = nxt

    chain = _Chain(ring, columns)
    chain.minimalize()
    chain.check()

    shifts = []
    matrices = []
    for k in range(len(chain.live)):
        ids = sorted(chain.live[k])
        shifts.append(tuple(chain.shifts[k][i] for i in ids))
        if k >= 1:
            prev_ids = sorted(chain.live[k - 1])
            mat = []
            for r in prev_ids:
                row = []
                for c in ids:
                    row.append(chain.d[k].get(c, {}).get(r, ring.zero()))
                mat.append(tuple(row))
            matrices.append(tuple(mat))
    res = FreeResolution(ring, shifts, matrices)

    expected = hilbert_numerator(ideal)
    if res.euler_characteristic() != expected:
        raise InternalInconsistency(
            "resolution disagrees with the Hilbert numerator"
        )
    return res


def cohen_macaulay_defect(ideal, caps=None):
    """dim R/I minus depth R/I; zero exactly when R/I is Cohen-Macaulay."""
    res = minimal_free_resolution(ideal, caps)
    depth = ideal.ring.nvars - res.length
    return ideal.dimension() - depth


# ---------------------------------------------------------------------------
# graded free modules and syzygies of an arbitrary generating list
# ---------------------------------------------------------------------------

class GradedFreeModule:
    """A free module over a polynomial ring with one degree shift per slot."""

    __slots__ = ("ring", "shifts")

    def __init__(self, ring, shifts):
        self.ring = ring
        self.shifts = tuple(int(s) for s in shifts)

    @property
    def rank(self):
        return len(self.shifts)

    def __eq__(self, other):
        return (
            isinstance(other, GradedFreeModule)
            and self.ring == other.ring
            and self.shifts == other.shifts
        )

    def __hash__(self):
        return hash((self.ring, self.shifts))

    def __repr__(self):
        return f"GradedFreeModule(rank {self.rank}, shifts {list(self.shifts)})"

    def zero(self):
        z = self.ring.zero()
        return ModuleElement(self, (z,) * self.rank)

    def unit(self, i):
        """The i-th standard basis vector."""
        z = self.ring.zero()
        coords = [z] * self.rank
        coords[i] = self.ring.one()
        return ModuleElement(self, coords)


class ModuleElement:
    """A coordinate vector of polynomials over a graded free module."""

    __slots__ = ("module", "coords")

    def __init__(self, module, coords):
        coords = tuple(coords)
        if len(coords) != module.rank:
            raise RingMismatch("coordinate count differs from module rank")
        for p in coords:
            if p.ring != module.ring:
                raise RingMismatch("coordinate outside the module's ring")
        self.module = module
        self.coords = coords

    def is_zero(self):
        return all(p.is_zero() for p in self.coords)

    def degree(self):
        """Common degree of coordinate-plus-shift, or None if mixed.

        The zero element is homogeneous of degree 0 by the same convention
        as the zero polynomial.
        """
        degs = set()
        for p, s in zip(self.coords, self.module.shifts):
            if p.is_zero():
                continue
            d = is_homogeneous(p)
            if d is None:
                return None
            degs.add(d + s)
        if not degs:
            return 0
        if len(degs) > 1:
            return None
        return degs.pop()

    def __eq__(self, other):
        return (
            isinstance(other, ModuleElement)
            and self.module == other.module
            and self.coords == other.coords
        )

    def __hash__(self):
        return hash((self.module, self.coords))

    def __repr__(self):
        return f"ModuleElement({list(self.coords)})"

    def __add__(self, other):
        if not isinstance(other, ModuleElement) or other.module != self.module:
            return NotImplemented
        return ModuleElement(
            self.module, tuple(a + b for a, b in zip(self.coords, other.coords))
        )

    def __sub__(self, other):
        if not isinstance(other, ModuleElement) or other.module != self.module:
            return NotImplemented
        return ModuleElement(
            self.module, tuple(a - b for a, b in zip(self.coords, other.coords))
        )

    def __rmul__(self, poly):
        if not isinstance(poly, Polynomial):
            return NotImplemented
        return ModuleElement(self.module, tuple(poly * p for p in self.coords))

    def __neg__(self):
        return ModuleElement(self.module, tuple(-p for p in self.coords))


def syzygies(gens, caps=None):
    """A generating set of the syzygy module of homogeneous generators.

    Accepts a list of Polynomials (read as elements of the rank-one free
    module) or of ModuleElements over a common module.  Returns
    ModuleElements v, one slot per generator, with
    sum(v[i] * gens[i]) = 0 as a module identity.
    """
    caps = caps or config.DEFAULT
    gens = list(gens)
    if not gens:
        return []
    if isinstance(gens[0], ModuleElement):
        source = gens[0].module
        ring = source.ring
        for g in gens:
            if not isinstance(g, ModuleElement) or g.module != source:
                raise RingMismatch("generators live in different modules")
        elems = gens
    else:
        ring = gens[0].ring
        for g in gens:
            if isinstance(g, ModuleElement) or g.ring != ring:
                raise RingMismatch("generators live in different rings")
        source = GradedFreeModule(ring, (0,))
        elems = [ModuleElement(source, (g,)) for g in gens]
    degs = []
    for g in elems:
        d = g.degree()
        if d is None:
            raise NonHomogeneousInput("syzygies require homogeneous generators")
        degs.append(d)
    target = GradedFreeModule(ring, degs)

    n = len(elems)
    zero = ring.zero()
    out = []
    live = [i for i, g in enumerate(elems) if not g.is_zero()]
    for i, g in enumerate(elems):
        if g.is_zero():
            out.append(target.unit(i).coords)
    if live:
        level = _Level(ring)
        canon = [_elem_terms(elems[i], level) for i in live]
        rows = _module_syzygies(canon, ring, level, caps)
        for row in rows:
            vec = [zero] * n
            for pos, i in enumerate(live):
                vec[i] = row[pos]
            out.append(tuple(vec))
    seen = set()
    final = []
    for v in out:
        if all(p.is_zero() for p in v) or v in seen:
            continue
        seen.add(v)
        for c in range(source.rank):
            check = zero
            for p, g in zip(v, elems):
                check = check + p * g.coords[c]
            if not check.is_zero():
                raise InternalInconsistency("candidate syzygy does not annihilate")
        final.append(ModuleElement(target, v))
    return final


def _elem_terms(elem, level):
    """Canonical monic term tuple (((component, monomial), coeff), ...)."""
    fld = level.ring.field
    d = {}
    for c, p in enumerate(elem.coords):
        for m, cf in p.terms:
            d[(c, m)] = cf
    items = sorted(d.items(), key=lambda kv: level.key(kv[0]), reverse=True)
    lc = items[0][1]
    if lc != 1:
        inv = fld.inv(lc)
        items = [(t, fld.mul(cf, inv)) for t, cf in items]
    return tuple(items), lc


def _module_syzygies(canon, ring, level, caps):
    """Syzygies of nonzero module elements, as rows of polynomials.

    Tracked Buchberger at module level: every basis element carries its
    expression in the input generators, S-vectors are formed only for
    pairs sharing a lead component, and no pair is skipped, because the
    skipped pairs are exactly the syzygies we are after.
    """
    fld = ring.field
    gf2 = fld.p == 2 and fld.e == 1
    guard = ring.guard
    s = len(canon)
    zero = ring.zero()
    basis = []
    rows = []
    for i, (terms, lc) in enumerate(canon):
        basis.append(terms)
        row = [zero] * s
        row[i] = ring.constant(1 if lc == 1 else fld.inv(lc))
        rows.append(row)

    def spair_data(i, j):
        mi = basis[i][0][0][1]
        mj = basis[j][0][0][1]
        L = ring.mono_lcm(mi, mj)
        return L - mi, L - mj

    def shifted(idx, shift, sign):
        """Terms of x^shift * basis[idx], optionally negated."""
        for (cc, mm), ct in basis[idx]:
            t = shift + mm
            if t & guard:
                raise ResourceCapExceeded("monomial overflow in S-vector")
            yield (cc, t), (ct if sign == 1 else fld.neg(ct))

    pairs = []

    def add_pairs(t):
        ct = basis[t][0][0][0]
        for k in range(t):
            if basis[k][0][0][0] == ct:
                pairs.append((k, t))

    for t in range(s):
        add_pairs(t)

    buckets = _view(basis, gf2)
    idx = _index_of(basis)
    pos = 0
    count = 0
    while pos < len(pairs):
        i, j = pairs[pos]
        pos += 1
        count += 1
        if count > caps.pair_cap:
            raise ResourceCapExceeded(f"pair count exceeds cap {caps.pair_cap}")
        ui, uj = spair_data(i, j)
        if gf2:
            work = set()
            for t, _ in shifted(i, ui, 1):
                work.symmetric_difference_update((t,))
            for t, _ in shifted(j, uj, 1):
                work.symmetric_difference_update((t,))
            quots, rem = _vnf2(work, buckets, level, len(basis), idx, True)
        else:
            work = {}
            for t, v in shifted(i, ui, 1):
                nv = fld.add(work.get(t, 0), v)
                if nv:
                    work[t] = nv
                else:
                    del work[t]
            for t, v in shifted(j, uj, -1):
                nv = fld.add(work.get(t, 0), v)
                if nv:
                    work[t] = nv
                else:
                    work.pop(t, None)
            quots, rem = _vnf(work, buckets, level, len(basis), idx, True)
        if not rem:
            continue
        qpolys = _quot_polys(quots, ring, gf2)
        mi = Polynomial(ring, ((ui, 1),))
        mj = Polynomial(ring, ((uj, 1),))
        row = []
        for l in range(s):
            acc = mi * rows[i][l] - mj * rows[j][l]
            for t, q in enumerate(qpolys):
                if q is not None:
                    acc = acc - q * rows[t][l]
            row.append(acc)
        if gf2:
            new = _canon_set(rem, level)
        else:
            new = _canon_dict(rem, level)
            lc = new[0][1]
            if lc != 1:
                inv = fld.inv(lc)
                new = tuple((t, fld.mul(cf, inv)) for t, cf in new)
                row = [p.scale(inv) for p in row]
        t = len(basis)
        basis.append(new)
        rows.append(row)
        buckets = _view(basis, gf2)
        idx = _index_of(basis)
        add_pairs(t)

    # Every remaining pair reduces to zero; its division record is a syzygy
    # of the basis, and the basis rows push it back to the generators.
    out = []
    for i, j in pairs:
        ui, uj = spair_data(i, j)
        if gf2:
            work = set()
            for t, _ in shifted(i, ui, 1):
                work.symmetric_difference_update((t,))
            for t, _ in shifted(j, uj, 1):
                work.symmetric_difference_update((t,))
            quots, rem = _vnf2(work, buckets, level, len(basis), idx, True)
        else:
            work = {}
            for t, v in shifted(i, ui, 1):
                nv = fld.add(work.get(t, 0), v)
                if nv:
                    work[t] = nv
                else:
                    del work[t]
            for t, v in shifted(j, uj, -1):
                nv = fld.add(work.get(t, 0), v)
                if nv:
                    work[t] = nv
                else:
                    work.pop(t, None)
            quots, rem = _vnf(work, buckets, level, len(basis), idx, True)
        if rem:
            raise InternalInconsistency("final basis failed a pair reduction")
        qpolys = _quot_polys(quots, ring, gf2)
        over_basis = [zero] * len(basis)
        over_basis[i] = over_basis[i] + Polynomial(ring, ((ui, 1),))
        over_basis[j] = over_basis[j] - Polynomial(ring, ((uj, 1),))
        for t, q in enumerate(qpolys):
            if q is not None:
                over_basis[t] = over_basis[t] - q
        vec = []
        for l in range(s):
            acc = zero
            for t, w in enumerate(over_basis):
                if not w.is_zero():
                    acc = acc + w * rows[t][l]
            vec.append(acc)
        out.append(tuple(vec))

    # rows of (identity - B*A), where B expresses the generators in the basis
    for jg, (terms, lc) in enumerate(canon):
        if gf2:
            work = {t for t, _ in terms}
            quots, rem = _vnf2(work, buckets, level, len(basis), idx, True)
        else:
            work = dict(terms)
            quots, rem = _vnf(work, buckets, level, len(basis), idx, True)
        if rem:
            raise InternalInconsistency("generator does not reduce to zero")
        qpolys = _quot_polys(quots, ring, gf2)
        scale = ring.constant(lc)
        vec = []
        for l in range(s):
            acc = ring.one() if l == jg else zero
            for t, q in enumerate(qpolys):
                if q is not None:
                    acc = acc - scale * q * rows[t][l]
            vec.append(acc)
        out.append(tuple(vec))
    return out


def _quot_polys(quots, ring, gf2):
    out = []
    for q in quots:
        if not q:
            out.append(None)
        elif gf2:
            out.append(ring.from_dict({m: 1 for m in q}))
        else:
            out.append(ring.from_dict(q))
    return out
