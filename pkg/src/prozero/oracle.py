"""Independent brute-force verification layer.

Nothing here trusts the closed-form arithmetic in `rings`. Elements are
re-expressed as raw monomials of the free presentation (powers of y, at
most two x-factors, powers of t and u), the defining relators are
multiplied out against window monomials, and every reduction is exact
linear algebra against that relation span.

Two structural facts keep this fast. First, every relator row is
homogeneous in (t, u)-bidegree, so the relation span decomposes slice by
slice and each slice span is tiny; spans are built per slice on demand
and cached. Second, rewriting only moves monomials downward in the
canonical order (y-exponents and x-indices shrink), so a slice span whose
caps cover the input also covers everything reduction can produce.

Raw monomial shape: (dt, du, nx, ypow, xs) with xs a sorted tuple of
x-indices and nx = len(xs), so plain tuple comparison is the canonical
term order. The CTRL ring uses its own two-variable shape (dt, xpow).
"""

from __future__ import annotations

from dataclasses import dataclass

from .fields import QQ
from .linalg import Echelon, Subspace, kernel_basis
from .rings import GradedPoly, RingError, system_operators


class OracleError(ValueError):
    pass


class WindowError(OracleError):
    """Raised when a window violates the soundness margin."""


@dataclass(frozen=True)
class Window:
    """Truncation bounds: max t-degree, max u-degree, max x-index/y-exponent.

    The margin Mx >= max(Dt, Du) + 2 guarantees that the enlarged-codomain
    reductions used by every kernel computation cannot silently truncate a
    nonzero image in the coefficient direction.
    """

    Dt: int
    Du: int = 0
    Mx: int = 0

    def __post_init__(self):
        if self.Dt < 0 or self.Du < 0 or self.Mx < 0:
            raise WindowError("window-too-small: negative bound")
        if self.Mx < max(self.Dt, self.Du) + 2:
            raise WindowError(
                "window-too-small: need Mx >= max(Dt, Du) + 2, got "
                "Dt=%d Du=%d Mx=%d" % (self.Dt, self.Du, self.Mx))


def check_window_ring(ring, w):
    if w.Du > 0 and not ring.has_u:
        raise WindowError("window-too-small: Du > 0 needs ring E2")
    if w.Dt > 0 and not ring.has_t:
        raise WindowError("window-too-small: Dt > 0 needs a t-graded ring")


# -- raw monomials ----------------------------------------------------------

def mono_mul(m1, m2):
    dt1, du1, n1, y1, xs1 = m1
    dt2, du2, n2, y2, xs2 = m2
    return (dt1 + dt2, du1 + du2, n1 + n2, y1 + y2,
            tuple(sorted(xs1 + xs2)))


def mono_of_index(idx, dt=0, du=0):
    kind, n = idx
    if kind == "y":
        return (dt, du, 0, n, ())
    return (dt, du, 1, 0, (n,))


def index_of_mono(mono):
    dt, du, nx, ypow, xs = mono
    if nx == 0:
        return ("y", ypow)
    if nx == 1 and ypow == 0:
        return ("x", xs[0])
    raise OracleError("monomial %r is not a reduced basis element" % (mono,))


# -- per-slice relation spans -----------------------------------------------

_span_cache = {}


def _slice_generators(ring, dt, du, xtop):
    """Relator polynomials of bidegree dividing (dt, du), as raw vectors.

    xtop caps the generator x-indices. Tags allow tests to mutate the
    presentation through RingId.omit.
    """
    gens = []
    if ring.variant != "CTRL":
        gens.append(("a0", {(0, 0, 1, 1, (0,)): 1}))
        for i in range(xtop):
            gens.append(("a%d" % (i + 1),
                         {(0, 0, 1, 0, (i,)): 1, (0, 0, 1, 1, (i + 1,)): -1}))
    if ring.variant == "E1":
        for l in range(0, min(xtop, dt - ring.m) + 1):
            gens.append(("n%d" % l, {(l + ring.m, 0, 1, 0, (l,)): 1}))
    elif ring.variant == "E2":
        for l in range(0, min(xtop, dt - 2) + 1):
            gens.append(("n%d" % l, {(l + 2, 0, 1, 0, (l,)): 1}))
        if du >= 1:
            for l in range(0, min(xtop, dt) + 1):
                gens.append(("np%d" % l, {(l, 1, 1, 0, (l,)): 1}))
    return [(tag, vec) for tag, vec in gens if tag not in ring.omit]


def slice_span(ring, dt, du, ycap, xcap, pairs=False, field=QQ):
    """Echelon of the relation span inside one (dt, du) bidegree slice.

    With pairs=False the ambient carries at most one x-factor and relator
    multipliers are x-free. With pairs=True multipliers may carry one
    x-factor, so the span also proves where two-x monomials die.
    """
    key = (ring, dt, du, ycap, xcap, pairs, field.name)
    hit = _span_cache.get(key)
    if hit is not None:
        return hit
    ech = Echelon(field)
    one = field.one()
    xtop = xcap
    for gtag, gvec in _slice_generators(ring, dt, du, xtop):
        gdt, gdu = next(iter(gvec))[0:2]
        mdt, mdu = dt - gdt, du - gdu
        if mdt < 0 or mdu < 0:
            continue
        mults = [(mdt, mdu, 0, a, ()) for a in range(ycap + 1)]
        if pairs:
            mults += [(mdt, mdu, 1, a, (k,))
                      for a in range(ycap + 1) for k in range(xcap + 1)]
        for m in mults:
            row = {}
            ok = True
            for gm, c in gvec.items():
                p = mono_mul(gm, m)
                if p[3] > ycap or (p[4] and p[4][-1] > xcap):
                    ok = False
                    break
                row[p] = field.from_int(c)
            if ok and row:
                ech.insert(row)
    _span_cache[key] = ech
    return ech


def _ctrl_vanishes_raw(ring, dt, xpow):
    # the single relator x*t^2 and its multiples
    return "n0" not in ring.omit and xpow >= 1 and dt >= 2


def reduce_raw(ring, vec, ycap, xcap, pairs=False, field=QQ):
    """Normal form of a raw vector modulo the relation span, slice by slice."""
    if ring.variant == "CTRL":
        return {m: c for m, c in vec.items()
                if not _ctrl_vanishes_raw(ring, m[0], m[1])}
    by_slice = {}
    for m, c in vec.items():
        by_slice.setdefault((m[0], m[1]), {})[m] = c
    out = {}
    for (dt, du), sub in sorted(by_slice.items()):
        ech = slice_span(ring, dt, du, ycap, xcap, pairs, field)
        out.update(ech.reduce(sub))
    return out


# -- windowed monomial bases ------------------------------------------------

@dataclass(frozen=True)
class MonoBasis:
    """Ordered reduced monomial basis of a window, with position lookup."""

    ring: object
    window: Window
    monos: tuple

    def positions(self):
        return {m: i for i, m in enumerate(self.monos)}


def window_basis(ring, w, field=QQ):
    """The canonical reduced basis of the window, from the presentation.

    Per slice: ambient monomials that are not pivots of the slice span.
    """
    check_window_ring(ring, w)
    monos = []
    if ring.variant == "CTRL":
        for dt in range(w.Dt + 1):
            monos.append((dt, 0))
            for a in range(1, w.Mx + 1):
                if not _ctrl_vanishes_raw(ring, dt, a):
                    monos.append((dt, a))
        return MonoBasis(ring, w, tuple(sorted(monos)))
    ycap, xcap = w.Mx + 2, w.Mx
    for dt in range(w.Dt + 1):
        for du in range(w.Du + 1):
            ech = slice_span(ring, dt, du, ycap, xcap, False, field)
            pivots = ech.pivots()
            for a in range(w.Mx + 1):
                m = (dt, du, 0, a, ())
                if m not in pivots:
                    monos.append(m)
            for i in range(w.Mx + 1):
                m = (dt, du, 1, 0, (i,))
                if m not in pivots:
                    monos.append(m)
    return MonoBasis(ring, w, tuple(sorted(monos)))


def relation_span(ring, w, pairs=False, field=QQ):
    """Combined relation span over all window slices, as one Subspace.

    Exposed for direct membership tests; heavy lifting stays per slice.
    """
    check_window_ring(ring, w)
    if ring.variant == "CTRL":
        rows = [{(dt, a): field.one()}
                for dt in range(w.Dt + 1) for a in range(1, w.Mx + 1)
                if _ctrl_vanishes_raw(ring, dt, a)]
        return Subspace.spanned_by(rows, field)
    cap2 = 2 * w.Mx + 2
    ycap = cap2 if pairs else w.Mx + 2
    xcap = cap2 if pairs else w.Mx
    sp = Subspace(field)
    for dt in range(w.Dt + 1):
        for du in range(w.Du + 1):
            ech = slice_span(ring, dt, du, ycap, xcap, pairs, field)
            for row in ech.basis():
                sp.add(row)
    return sp


def quotient_reduce(ring, w, vec, pairs=False, field=QQ):
    """Canonical residue of a raw vector modulo the window's relations."""
    check_window_ring(ring, w)
    if ring.variant == "CTRL":
        return reduce_raw(ring, vec, 0, 0, False, field)
    cap2 = 2 * w.Mx + 2
    ycap = cap2 if pairs else w.Mx + 2
    xcap = cap2 if pairs else w.Mx
    return reduce_raw(ring, vec, ycap, xcap, pairs, field)


# -- elements <-> vectors ----------------------------------------------------

def vectorize(p):
    """Raw vector of a reduced graded polynomial."""
    out = {}
    if p.ring.variant == "CTRL":
        for (dt, du), coeffs in p.terms.items():
            for (kind, n), c in coeffs.items():
                out[(dt, n if kind == "x" else 0)] = c
        return out
    for (dt, du), coeffs in p.terms.items():
        for idx, c in coeffs.items():
            out[mono_of_index(idx, dt, du)] = c
    return out


def poly_of_vec(ring, vec, field=QQ):
    terms = {}
    if ring.variant == "CTRL":
        for (dt, a), c in vec.items():
            idx = ("x", a) if a else ("y", 0)
            terms.setdefault((dt, 0), {})[idx] = c
        return GradedPoly(ring, terms, field)
    for m, c in vec.items():
        dt, du = m[0], m[1]
        terms.setdefault((dt, du), {})[index_of_mono(m)] = c
    return GradedPoly(ring, terms, field)


# -- linear maps and kernels -------------------------------------------------

@dataclass
class LinMap:
    """Multiplication by a fixed element, domain monomial by monomial."""

    ring: object
    window: Window
    domain: MonoBasis
    images: dict  # domain mono -> reduced raw vector in the enlarged window
    field: object


def _raw_images_ctrl(ring, gvec, domain, field):
    images = {}
    for m in domain.monos:
        img = {}
        for (gdt, ga), c in gvec.items():
            p = (m[0] + gdt, m[1] + ga)
            if not _ctrl_vanishes_raw(ring, p[0], p[1]):
                acc = img.get(p)
                img[p] = field.add(acc, c) if acc is not None else c
        images[m] = {k: v for k, v in img.items() if not field.is_zero(v)}
    return images


def mul_map(ring, g, w, field=None):
    """Exact multiplication-by-g map from the window's reduced basis.

    Images are computed in the enlarged codomain (degree and coefficient
    caps grow by g's degrees), then reduced against the relation span, so
    a kernel vector here really multiplies to zero.
    """
    if isinstance(g, GradedPoly):
        if g.ring != ring:
            raise RingError("ring mismatch in mul_map")
        field = g.field
        gvec = vectorize(g)
    else:
        gvec = dict(g)
        field = field or QQ
    check_window_ring(ring, w)
    domain = window_basis(ring, w, field)
    if ring.variant == "CTRL":
        return LinMap(ring, w, domain, _raw_images_ctrl(ring, gvec, domain, field), field)
    g_has_x = any(m[2] for m in gvec)
    g_ymax = max((m[3] for m in gvec), default=0)
    if g_has_x:
        xcap = 2 * w.Mx + 2
        ycap = xcap + g_ymax
        pairs = True
    else:
        xcap = w.Mx
        ycap = w.Mx + 2 + g_ymax
        pairs = False
    images = {}
    for m in domain.monos:
        raw = {}
        for gm, c in gvec.items():
            p = mono_mul(m, gm)
            acc = raw.get(p)
            raw[p] = field.add(acc, c) if acc is not None else c
        images[m] = reduce_raw(ring, raw, ycap, xcap, pairs, field)
    return LinMap(ring, w, domain, images, field)


class WindowSubspace:
    """A subspace of a window's reduced coefficient space.

    Vectors are dicts over reduced monomials; the basis is kept in reduced
    echelon form, so equal subspaces render identical bases.
    """

    def __init__(self, ring, window, vectors, field=QQ):
        self.ring = ring
        self.window = window
        self.field = field
        self.space = Subspace.spanned_by(vectors, field)

    @property
    def dim(self):
        return self.space.dim

    def contains(self, vec):
        return self.space.contains(vec)

    def contains_poly(self, p):
        return self.contains(vectorize(p))

    def basis(self):
        return self.space.basis()

    def basis_polys(self):
        return [poly_of_vec(self.ring, v, self.field) for v in self.basis()]

    def __eq__(self, other):
        if not isinstance(other, WindowSubspace):
            return NotImplemented
        return self.space == other.space


def map_kernel(lm):
    """Exact null space of a LinMap, echelonized over the domain order."""
    vecs = kernel_basis(list(lm.domain.monos), lambda m: lm.images[m], lm.field)
    return WindowSubspace(lm.ring, lm.window, vecs, lm.field)


def kernel_of(ring, g, w, field=None):
    return map_kernel(mul_map(ring, g, w, field))


def joint_kernel(ring, maps):
    """Common null space of several LinMaps over one domain."""
    first = maps[0]
    dom = list(first.domain.monos)
    for lm in maps[1:]:
        if lm.domain.monos != first.domain.monos:
            raise OracleError("joint kernel needs a shared domain")

    def image(m):
        out = {}
        for k, lm in enumerate(maps):
            for mono, c in lm.images[m].items():
                out[(k, mono)] = c
        return out

    vecs = kernel_basis(dom, image, first.field)
    return WindowSubspace(first.ring, first.window, vecs, first.field)


def system_kernel(ring, system, w, field=QQ):
    """Windowed solutions of the named operator system."""
    ops = system_operators(system, ring, field)
    maps = [mul_map(ring, op, w) for _, op in ops]
    return joint_kernel(ring, maps)


# -- annihilators and torsion -------------------------------------------------

def annihilator_oracle(ring, dt, du, w, field=QQ):
    """Windowed annihilator of t^dt u^du inside the coefficient slice.

    Domain: the (t, u)-degree-zero part of the window basis. A vector is
    kept iff its product with the monomial reduces to zero.
    """
    check_window_ring(ring, w)
    if dt > w.Dt or du > w.Du:
        raise WindowError("window-too-small: shift degree exceeds window")
    shift = {(dt, du, 0, 0, ()): field.one()} if ring.variant != "CTRL" \
        else {(dt, 0): field.one()}
    lm = mul_map(ring, shift, w, field)
    slice0 = [m for m in lm.domain.monos
              if (m[0], m[1]) == (0, 0)] if ring.variant != "CTRL" \
        else [m for m in lm.domain.monos if m[0] == 0]
    vecs = kernel_basis(slice0, lambda m: lm.images[m], field)
    return WindowSubspace(ring, w, vecs, field)


def torsion_subspace(ring, w, K=None, field=QQ):
    """Window vectors killed by t^K (and u^K in E2). Default K = Dt+Du+2."""
    check_window_ring(ring, w)
    if K is None:
        K = w.Dt + w.Du + 2
    if K < 1:
        raise OracleError("torsion exponent must be >= 1")
    if ring.variant == "CTRL":
        shifts = [{(K, 0): field.one()}]
    else:
        shifts = [{(K, 0, 0, 0, ()): field.one()}]
        if ring.has_u:
            shifts.append({(0, K, 0, 0, ()): field.one()})
    maps = [mul_map(ring, s, w, field) for s in shifts]
    return joint_kernel(ring, maps)


# -- window hygiene -----------------------------------------------------------

def boundary_touch(vec, w, ring=None):
    """True if the vector leans on the coefficient-direction window edge.

    Contact at y-exponent Mx or x-index Mx means enlarging Mx could reveal
    more of whatever subspace the vector belongs to; t-degree support is
    part of the windowed statement itself and is not flagged.
    """
    for m in vec:
        if len(m) == 2:  # CTRL
            if m[1] >= w.Mx:
                return True
        elif m[3] >= w.Mx or (m[4] and m[4][-1] >= w.Mx):
            return True
    return False


def subspace_boundary_touch(sub):
    return any(boundary_touch(v, sub.window) for v in sub.basis())
