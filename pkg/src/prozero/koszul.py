"""Koszul homology windows, transition maps, and the pro-zero test.

Stage i of the one-variable system is the windowed annihilator of t^i;
stage i of the two-variable system on E2 is the three-term complex of
(t^i, u^i). Windows shrink with the stage: the degree shifts deg = i on
the complex generators make every differential and every transition map
degree-preserving, so images land exactly inside the target stage's
window and "nonzero" verdicts are certified, not truncation artifacts.

Transitions from stage j to stage i < j are multiplication by t^(j-i)
(identity on the degree-0 part, extended to the quotient modules in the
two-variable case). A reported witness is always replayable: the witness
vector, its image, and the nonzero-ness of that image in the target are
all recomputed from the relation span.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .fields import QQ
from .linalg import Echelon, Subspace, kernel_basis, rank_of
from .oracle import (OracleError, Window, WindowSubspace, check_window_ring,
                     kernel_of, mono_mul, mul_map, poly_of_vec, reduce_raw,
                     window_basis)


def _shift_mono(ring, dt, du, field):
    if ring.variant == "CTRL":
        if du:
            raise OracleError("CTRL has no second variable")
        return {(dt, 0): field.one()}
    return {(dt, du, 0, 0, ()): field.one()}


def _sub_window(w, ddt, ddu=0):
    return Window(max(w.Dt - ddt, 0), max(w.Du - ddu, 0), w.Mx)


def _mult_reduced(ring, vec, dt, du, w, field):
    """Multiply a reduced vector by t^dt u^du and reduce again."""
    raw = {}
    for m, c in vec.items():
        if ring.variant == "CTRL":
            raw[(m[0] + dt, m[1])] = c
        else:
            raw[mono_mul(m, (dt, du, 0, 0, ()))] = c
    return reduce_raw(ring, raw, w.Mx + 2, w.Mx, False, field)


def koszul_h1_single(ring, a, i, w, field=QQ):
    """Windowed annihilator of a^i over the full window, a in {t, u}."""
    if a not in ("t", "u"):
        raise OracleError("sequence element must be t or u")
    if a == "u" and not ring.has_u:
        raise OracleError("u does not exist in ring %s" % ring.describe())
    if i < 1:
        raise OracleError("stage must be >= 1")
    shift = _shift_mono(ring, i if a == "t" else 0,
                        i if a == "u" else 0, field)
    return kernel_of(ring, shift, w, field)


def _r_slice_witness(ring, sub, image_of):
    """The highest constant-slice basis vector with nonzero image."""
    rows = []
    for v in sub.basis():
        if ring.variant == "CTRL":
            if all(m[0] == 0 for m in v):
                rows.append(v)
        elif all(m[0] == 0 and m[1] == 0 for m in v):
            rows.append(v)
    rows.sort(key=lambda v: max(v), reverse=True)
    for v in rows:
        if image_of(v):
            return v
    for v in sub.basis():
        if image_of(v):
            return v
    return None


def transition_zero(ring, a, j, i, w, field=QQ):
    """Is the stage-j to stage-i transition the zero map?

    Returns (True, None) or (False, witness_vector). The stage-j module
    is computed in the window shrunk by j so that multiplication by
    a^(j-i) lands inside the window shrunk by i.
    """
    if not 0 < i < j:
        raise OracleError("transition needs stage indices 0 < i < j")
    dom_w = _sub_window(w, j if a == "t" else 0, j if a == "u" else 0)
    ann_j = koszul_h1_single(ring, a, j, dom_w, field)
    step = (j - i if a == "t" else 0, j - i if a == "u" else 0)

    def image_of(vec):
        return _mult_reduced(ring, vec, step[0], step[1], w, field)

    wit = _r_slice_witness(ring, ann_j, image_of)
    if wit is None:
        return True, None
    return False, wit


@dataclass
class KoszulStage:
    """The windowed three-term complex of (t^i, u^i) with its homology."""

    ring: object
    i: int
    window: Window
    h0_dim: int
    h0_direct_count: int
    h1_dim: int
    h2_dim: int
    cycles: list          # basis of ker d1, tagged ("et"|"eu", mono) -> c
    boundaries_rank: int
    d_squared_zero: bool


def koszul_pair(ring, i, w, field=QQ):
    """Build stage i of the two-variable windowed Koszul complex."""
    if not ring.has_u:
        raise OracleError("pair complex needs a two-variable ring")
    if i < 1:
        raise OracleError("stage must be >= 1")
    check_window_ring(ring, w)
    k2 = window_basis(ring, _sub_window(w, i, i), field)
    k1t = window_basis(ring, _sub_window(w, i, 0), field)
    k1u = window_basis(ring, _sub_window(w, 0, i), field)
    k0 = window_basis(ring, w, field)

    def d1_image(lab):
        slot, m = lab
        dt, du = (i, 0) if slot == "et" else (0, i)
        return _mult_reduced(ring, {m: field.one()}, dt, du, w, field)

    domain = [("et", m) for m in k1t.monos] + [("eu", m) for m in k1u.monos]
    cycles = kernel_basis(domain, d1_image, field)

    def d2_image(m):
        out = {}
        v = _mult_reduced(ring, {m: field.one()}, 0, i, w, field)
        for mono, c in v.items():
            out[("et", mono)] = field.neg(c)
        v = _mult_reduced(ring, {m: field.one()}, i, 0, w, field)
        for mono, c in v.items():
            out[("eu", mono)] = c
        return out

    boundaries = [d2_image(m) for m in k2.monos]
    d_sq_zero = True
    for b in boundaries:
        total = {}
        for lab, c in b.items():
            for mono, cc in d1_image(lab).items():
                acc = total.get(mono, field.zero())
                acc = field.add(acc, field.mul(c, cc))
                if field.is_zero(acc):
                    total.pop(mono, None)
                else:
                    total[mono] = acc
        if total:
            d_sq_zero = False
    b_rank = rank_of(boundaries, field)
    h1_dim = len(cycles) - b_rank
    h0_rank = rank_of([d1_image(lab) for lab in domain], field)
    h0_dim = len(k0.monos) - h0_rank
    direct = sum(1 for m in k0.monos if m[0] < i and m[1] < i)
    h2 = kernel_basis(list(k2.monos), d2_image, field)
    return KoszulStage(ring, i, w, h0_dim, direct, h1_dim, len(h2),
                       cycles, b_rank, d_sq_zero)


class QuotientSpace:
    """num / den with a canonical complement: representatives are reduced
    against the denominator's echelon, so equal classes render equally."""

    def __init__(self, ring, window, num, den_vectors, field=QQ):
        self.ring = ring
        self.window = window
        self.field = field
        self.num = num                      # WindowSubspace
        self.den = Subspace.spanned_by(den_vectors, field)
        if not all(num.contains(v) for v in self.den.basis()):
            raise OracleError("denominator escapes numerator")

    @property
    def dim(self):
        return self.num.dim - self.den.dim

    def class_nonzero(self, vec):
        if not self.num.contains(vec):
            raise OracleError("vector outside numerator")
        return not self.den.contains(vec)

    def rep(self, vec):
        return self.den.reduce(vec)


def h0_of_h1(ring, i, w, field=QQ):
    """Windowed Ann(t^i) / u^i Ann(t^i), stage-i window discipline."""
    if not ring.has_u:
        raise OracleError("quotient homology needs a two-variable ring")
    num = koszul_h1_single(ring, "t", i, _sub_window(w, i, 0), field)
    inner = koszul_h1_single(ring, "t", i, _sub_window(w, i, i), field)
    den = [_mult_reduced(ring, v, 0, i, w, field) for v in inner.basis()]
    den = [v for v in den if v]
    return QuotientSpace(ring, w, num, den, field)


def h1_of_h0(ring, i, w, field=QQ):
    """Windowed H1 of u^i acting on the quotient by t^i.

    Numerator: w-slice vectors whose u^i multiple falls inside the image
    of t^i. Denominator: the image of t^i one u-slice down.
    """
    if not ring.has_u:
        raise OracleError("quotient homology needs a two-variable ring")
    big = window_basis(ring, _sub_window(w, i, 0), field)
    t_image = Echelon(field)
    for m in big.monos:
        t_image.insert(_mult_reduced(ring, {m: field.one()}, i, 0, w, field))
    dom = window_basis(ring, _sub_window(w, 0, i), field)

    def image_of(m):
        v = _mult_reduced(ring, {m: field.one()}, 0, i, w, field)
        return t_image.reduce(v)

    num_vecs = kernel_basis(list(dom.monos), image_of, field)
    num = WindowSubspace(ring, w, num_vecs, field)
    small = window_basis(ring, _sub_window(w, i, i), field)
    den = [_mult_reduced(ring, {m: field.one()}, i, 0, w, field)
           for m in small.monos]
    den = [v for v in den if v]
    return QuotientSpace(ring, w, num, den, field)


def ses_row_check(ring, i, w, field=QQ):
    """Exactness of the windowed row

        0 -> H0(u^i; H1(t^i)) -> H1(t^i, u^i) -> H1(u^i; H0(t^i)) -> 0

    with the left map [z] -> [(z, 0)] and the right map [(v, w)] -> [w].
    Verified by exact dimension accounting plus the two structural facts
    (the composite vanishes, the left map's kernel is the denominator).
    """
    left = h0_of_h1(ring, i, w, field)
    stage = koszul_pair(ring, i, w, field)
    right = h1_of_h0(ring, i, w, field)

    # left map injectivity: span(boundaries + embedded numerator basis)
    # must grow by exactly dim(left)
    ech = Echelon(field)
    k2 = window_basis(ring, _sub_window(w, i, i), field)
    for m in k2.monos:
        v = {}
        for mono, c in _mult_reduced(ring, {m: field.one()}, 0, i, w, field).items():
            v[("et", mono)] = field.neg(c)
        for mono, c in _mult_reduced(ring, {m: field.one()}, i, 0, w, field).items():
            v[("eu", mono)] = c
        ech.insert(v)
    base = ech.dim
    grew = 0
    for v in left.num.basis():
        if ech.insert({("et", mono): c for mono, c in v.items()}) is not None:
            grew += 1
    inj = grew == left.dim

    # right map: rank of projected cycle classes must equal dim(right),
    # and the composite (numerator basis -> second slot) must die
    proj = Echelon(field)
    for v in right.den.basis():
        proj.insert(v)
    den_rank = proj.dim
    for cyc in stage.cycles:
        proj.insert({m: c for (slot, m), c in cyc.items() if slot == "eu"})
    psi_rank = proj.dim - den_rank
    surj = psi_rank == right.dim
    # the left map lands in cycles (so the composite with the right map
    # is zero on the nose: the second slot of (z, 0) is empty)
    lands_in_cycles = all(
        not _mult_reduced(ring, v, i, 0, w, field) for v in left.num.basis())

    return (inj and surj and lands_in_cycles
            and stage.h1_dim == left.dim + right.dim
            and stage.d_squared_zero)


@dataclass
class ProZeroRow:
    """One target stage of the pro-zero search.

    A row with no zero transition counts against pro-zero only when the
    window let it test a gap of at least 2: a single nonzero gap-1
    transition is compatible with a gap-2 pro-zero system, so such a row
    is marked window-limited instead of witnessed.
    """

    n: int
    least_zero_m: int = 0                 # 0 when no tested m gives the zero map
    witnesses: list = dc_field(default_factory=list)  # (m, vector) per failing m
    window_limited: bool = False


@dataclass
class ProZeroReport:
    ring: object
    system: object
    max_stage: int
    window: Window
    rows: list
    verdict: str  # "pro-zero-up-to-window" | "NOT-pro-zero-witnessed"


def _h_module(ring, system, i, w, field):
    """Stage module of the named inverse system, with its denominator."""
    if system.kind == "H1(t)":
        sub = koszul_h1_single(ring, "t", i, _sub_window(w, i, 0), field)
        return QuotientSpace(ring, w, sub, [], field)
    if system.kind == "H0(u;H1(t))":
        return h0_of_h1(ring, i, w, field)
    raise OracleError("%s is not an inverse system" % system.describe())


def pro_zero_test(ring, system, max_stage, w, field=QQ):
    """Search each target stage for a later stage with zero transition.

    For n in 2..max_stage-1, try m in n+1..max_stage: the transition
    multiplies representatives by t^(m-n). If some m sends every stage-m
    class to the zero class, record the least such m; otherwise record a
    replayable nonzero witness for every tested m.
    """
    if max_stage < 3:
        raise OracleError("pro-zero search needs max_stage >= 3")
    check_window_ring(ring, w)
    rows = []
    targets = {}
    for n in range(2, max_stage):
        if n not in targets:
            targets[n] = _h_module(ring, system, n, w, field)
        tgt = targets[n]
        row = ProZeroRow(n=n)
        for m in range(n + 1, max_stage + 1):
            src = _h_module(ring, system, m, w, field)

            def image_class(vec, step=m - n):
                img = _mult_reduced(ring, vec, step, 0, w, field)
                return tgt.rep(img)

            wit = _r_slice_witness(ring, src.num, image_class)
            if wit is None:
                row.least_zero_m = m
                break
            row.witnesses.append((m, wit))
        if not row.least_zero_m and max_stage - n < 2:
            row.window_limited = True
        rows.append(row)
    witnessed = any(not r.least_zero_m and not r.window_limited for r in rows)
    verdict = "NOT-pro-zero-witnessed" if witnessed else "pro-zero-up-to-window"
    return ProZeroReport(ring, system, max_stage, w, rows, verdict)


def transition_witness_replay(ring, system, m, n, w, witness, field=QQ):
    """Re-verify one reported witness from scratch: membership in the
    stage-m module and nonzero image class at stage n."""
    src = _h_module(ring, system, m, w, field)
    tgt = _h_module(ring, system, n, w, field)
    if not src.num.contains(witness):
        return False
    img = _mult_reduced(ring, witness, m - n, 0, w, field)
    return tgt.class_nonzero(img)
