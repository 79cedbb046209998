"""The separating variety of a finite group action.

For a group G acting on a variety X, the pairs of points that no
invariant can tell apart form a subvariety of X x X.  Its irreducible
components are the graphs H = {(x, sigma x) : x in X_i} of group
elements restricted to components of X, so the whole object lives in a
doubled polynomial ring: one x-copy and one y-copy of the coordinates.

The model below builds those graph ideals, deduplicates them (distinct
pairs (sigma, i) can produce the same graph), intersects them into the
radical of the difference ideal, and measures how the components meet.
Every pairwise codimension is computed twice, once in the doubled ring
and once back on X, and the two answers are required to agree.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import (
    DimensionMismatch,
    EquivalenceViolation,
    InternalInconsistency,
    NotInvariant,
)
from .groebner import Ideal
from .group import (
    VarietyPresentation,
    _graph_connected,
    generated_by,
    k_reflections,
    orbit,
    variety_connected_in_codim,
    variety_points,
)
from .poly import GREVLEX, PolynomialRing, compose_affine
from .separating import invariance_offender


def _mirror_names(names):
    """y-side variable names for the doubled ring.

    Names of the shape x<tail> become y<tail>; anything else gets a y_
    prefix.  Falls back to numbered names if that would collide.
    """
    out = []
    for name in names:
        if name.startswith("x"):
            out.append("y" + name[1:])
        else:
            out.append("y_" + name)
    if len(set(out)) != len(out) or set(out) & set(names):
        out = [f"y_{i + 1}" for i in range(len(names))]
    return tuple(out)


class GraphComponent:
    """One component of the separating variety: the graph of sigma over X_i.

    `aliases` records every (element index, component index) pair whose
    graph coincides with this one; the first pair is the representative.
    """

    __slots__ = ("sigma", "component", "ideal", "dimension", "aliases")

    def __init__(self, sigma, component, ideal, dimension, aliases):
        self.sigma = sigma
        self.component = component
        self.ideal = ideal
        self.dimension = dimension
        self.aliases = aliases

    def __repr__(self):
        return (
            f"GraphComponent(element {self.aliases[0][0]}, "
            f"component {self.component}, dim {self.dimension})"
        )


class SepVarietyModel:
    """Everything needed to reason about one group action's separating variety."""

    def __init__(self, variety, group, invariants=None, caps=None):
        ring = variety.ring
        if group.field != ring.field or group.n != ring.nvars:
            raise DimensionMismatch("group and variety disagree on the ambient space")
        variety.check_group_action(group)
        self.variety = variety
        self.group = group
        self.caps = caps or variety.caps
        self.base_ring = ring
        y_names = _mirror_names(ring.variables)
        self.doubled_ring = PolynomialRing(
            ring.field, ring.variables + y_names, GREVLEX
        )
        self.invariants = tuple(invariants) if invariants else ()
        n = ring.nvars
        self._x_map = list(range(n))
        self._y_map = [n + i for i in range(n)]
        self._difference = None
        self._graph = None
        self._radical = None
        self._pair = {}

    def __repr__(self):
        return (
            f"SepVarietyModel(|G| = {len(self.group)}, "
            f"{len(self.variety.components)} variety components)"
        )

    # -- the doubled ring -------------------------------------------------

    def inject_x(self, f):
        """Copy a base-ring polynomial into the x-side of the doubled ring."""
        return f.inject(self.doubled_ring, self._x_map)

    def inject_y(self, f):
        """Copy a base-ring polynomial into the y-side of the doubled ring."""
        return f.inject(self.doubled_ring, self._y_map)

    # -- the difference ideal ----------------------------------------------

    def invariant_difference_ideal(self):
        """The ideal generated by f(x) - f(y) over the supplied invariants.

        When X is a proper subvariety, the vanishing ideal of X x X is
        included on both copies, so the result presents a quotient of the
        coordinate ring of X x X rather than of the doubled ambient space.
        Each invariant is checked against the group generators first; a
        non-invariant entry would silently break every later conclusion.
        """
        if self._difference is None:
            if not self.invariants:
                raise ValueError("the model was built without invariants")
            gens = []
            for f in self.invariants:
                offender = invariance_offender(f, self.group)
                if offender is not None:
                    raise NotInvariant(f, offender)
                gens.append(self.inject_x(f) - self.inject_y(f))
            if not self.variety.is_affine_space():
                for g in self.variety.ideal().gens:
                    gens.append(self.inject_x(g))
                    gens.append(self.inject_y(g))
            self._difference = Ideal(self.doubled_ring, gens, self.caps)
        return self._difference

    # -- graph components ---------------------------------------------------

    def graph_component_ideal(self, sigma, i):
        """The ideal of {(x, sigma x) : x in X_i} in the doubled ring."""
        comp = self.variety.components[i]
        gens = [self.inject_x(g) for g in comp.gens]
        n = self.base_ring.nvars
        for j in range(n):
            image = compose_affine(self.base_ring.var(j), sigma)
            gens.append(self.doubled_ring.var(n + j) - self.inject_x(image))
        return Ideal(self.doubled_ring, gens, self.caps)

    def graph_components(self):
        """Deduplicated graph components, in group enumeration order.

        Two pairs (sigma, i) and (tau, i) coincide exactly when sigma and
        tau agree on X_i; equality is decided on reduced Groebner bases.
        """
        if self._graph is None:
            found = []
            dims = self.variety.component_dimensions()
            for sidx, sigma in enumerate(self.group.elements):
                for i in range(len(self.variety.components)):
                    ideal = self.graph_component_ideal(sigma, i)
                    known = None
                    for gc in found:
                        if gc.ideal == ideal:
                            known = gc
                            break
                    if known is not None:
                        known.aliases = known.aliases + ((sidx, i),)
                        continue
                    d = ideal.dimension()
                    if d != dims[i]:
                        raise InternalInconsistency(
                            "graph component dimension differs from its base component"
                        )
                    found.append(GraphComponent(sigma, i, ideal, d, ((sidx, i),)))
            self._graph = found
        return self._graph

    def separating_variety_radical(self):
        """The vanishing ideal of the separating variety.

        Intersection of all graph component ideals.  Sanity checks: it has
        the dimension of X, and it contains the difference ideal whenever
        invariants were supplied.
        """
        if self._radical is None:
            comps = self.graph_components()
            acc = comps[0].ideal
            for gc in comps[1:]:
                acc = acc.intersect(gc.ideal)
            if acc.dimension() != self.variety.dimension():
                raise InternalInconsistency(
                    "separating variety dimension differs from the variety's"
                )
            if self.invariants:
                for g in self.invariant_difference_ideal().gens:
                    if not acc.contains(g):
                        raise InternalInconsistency(
                            "a difference generator escapes the component intersection"
                        )
            self._radical = acc
        return self._radical

    # -- pairwise intersections ----------------------------------------------

    def pairwise_intersection_codim(self, i, j):
        """Codimension inside the separating variety of one pairwise meet.

        Computed on the doubled ring, then re-derived on the base ring
        (the meet of two graphs is the graph over the locus where the two
        elements agree); disagreement means the implementation is broken.
        """
        if i > j:
            i, j = j, i
        cached = self._pair.get((i, j))
        if cached is not None:
            return cached
        comps = self.graph_components()
        if i == j:
            value = 0
        else:
            a, b = comps[i], comps[j]
            dim = self.variety.dimension()
            both = Ideal(
                self.doubled_ring, a.ideal.gens + b.ideal.gens, self.caps
            )
            doubled = math.inf if both.is_unit() else dim - both.dimension()
            rho = b.sigma.inverse().compose(a.sigma)
            base = self._agreement_codim(rho, a.component, b.component)
            if doubled != base:
                raise InternalInconsistency(
                    "doubled-ring and base-ring intersection codimensions disagree"
                )
            value = doubled
        self._pair[(i, j)] = value
        return value

    def _agreement_codim(self, rho, i, j):
        """Codimension in X of the locus of X_i meet X_j fixed by rho."""
        ring = self.base_ring
        gens = list(self.variety.components[i].gens)
        gens += list(self.variety.components[j].gens)
        for t in range(ring.nvars):
            xt = ring.var(t)
            moved = compose_affine(xt, rho) - xt
            if not moved.is_zero():
                gens.append(moved)
        locus = Ideal(ring, gens, self.caps)
        if locus.is_unit():
            return math.inf
        return self.variety.dimension() - locus.dimension()

    def codim_matrix(self):
        """Symmetric matrix of pairwise intersection codimensions."""
        count = len(self.graph_components())
        return [
            [self.pairwise_intersection_codim(i, j) for j in range(count)]
            for i in range(count)
        ]

    # -- point model ---------------------------------------------------------

    def point_pairs(self, field=None):
        """All same-orbit pairs of variety points over a finite field.

        This is the separating variety's set of rational points: finite
        evidence for cross-checks, never the definition.
        """
        fld = field or self.base_ring.field
        pairs = set()
        for pt in variety_points(self.variety, fld, self.caps):
            for image in orbit(self.group, pt, fld):
                pairs.add((pt, image))
        return sorted(pairs)


# ---------------------------------------------------------------------------
# connectivity in codimension k
# ---------------------------------------------------------------------------

def connected_in_codim(obj, k):
    """Is the component graph connected when edges need codim <= k?

    Accepts either a SepVarietyModel (components of the separating
    variety) or a VarietyPresentation (components of X).  A single
    component is always connected; for k >= dim this is plain
    connectedness.
    """
    if isinstance(obj, SepVarietyModel):
        if k < 0:
            raise ValueError("k must be nonnegative")
        count = len(obj.graph_components())
        return _graph_connected(
            count, lambda a, b: obj.pairwise_intersection_codim(a, b) <= k
        )
    if isinstance(obj, VarietyPresentation):
        return variety_connected_in_codim(obj, k)
    raise TypeError("expected a SepVarietyModel or a VarietyPresentation")


@dataclass(frozen=True)
class EquivalenceReport:
    """Both sides of the connectivity equivalence at one k, already equal."""

    k: int
    sepvar_connected: bool
    variety_connected: bool
    reflections_generate: bool

    @property
    def combined(self):
        return self.variety_connected and self.reflections_generate


def connectivity_equivalence_check(model, k):
    """Separating-variety connectivity against its predicted value.

    The separating variety is connected in codimension k exactly when X
    is connected in codimension k and the group is generated by
    k-reflections.  Both sides are computed from scratch; a mismatch is
    a hard error, because it can only come from a bug here, not from bad
    input.
    """
    left = connected_in_codim(model, k)
    vconn = connected_in_codim(model.variety, k)
    refl = generated_by(
        model.group, k_reflections(model.group, model.variety, k)
    )
    if left != (vconn and refl):
        raise EquivalenceViolation(
            f"separating variety connectivity in codim {k} is {left}, but X "
            f"connectivity is {vconn} and reflection generation is {refl}"
        )
    return EquivalenceReport(k, left, vconn, refl)
