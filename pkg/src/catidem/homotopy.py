"""Null-homotopy search, contractibility and homotopy equivalence certificates.

Every decision comes back as a HomotopyCertificate with an explicit tier:

  bounded_exact        complete decision; both outcomes are certified
  periodic_ansatz      a homotopy with literally periodic tails was found and
                       certified by two-period checks (failure is inconclusive)
  window_interior      the identity was verified on the interior of a finite
                       window only; the weakest tier
  homology_obstruction a nonzero induced map on homology certifies "no"

Every "found" homotopy is re-verified after the solve by recomputing
d.h + (-1)^n h.d degree by degree and comparing against the target map.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .complexes import (
    ChainMap,
    Complex,
    HomologyData,
    OutsideKnownWindow,
    PeriodicMapTail,
    PeriodicTail,
    TruncatedTail,
    ZeroTail,
    build_chain_map,
    cone,
    homology,
    identity_chain_map,
    tensor_map,
)
from .group_modules import hom_basis, is_projective_quick, restrict_action
from .linalg import Mat, nullspace, rank, solve


@dataclass(frozen=True)
class HomotopyCertificate:
    status: str                     # "found" | "certified_no" | "inconclusive" | "precondition_failed"
    tier: str                       # see module docstring; "none" when not applicable
    homotopy: object = None         # ChainMap (chain_condition off) when status == "found"
    detail: str = ""
    obstruction_degree: object = None

    @property
    def found(self):
        return self.status == "found"


# ---------------------------------------------------------------------------
# homology representatives and induced maps

def homology_class_reps(hd: HomologyData):
    """Cycle columns forming a basis of the homology, plus a coordinate solver.

    coord_fn(column Mat) -> list of coefficients of the class, or None when the
    vector is not a cycle of the recorded cycle space.
    """
    p = hd.cycles.p
    reps = []
    current = hd.boundaries
    base_rank = rank(current)
    for j in range(hd.cycles.ncols):
        col = Mat.from_cols(p, [hd.cycles.col(j)])
        cand = current.hstack(col)
        r = rank(cand)
        if r > base_rank:
            reps.append(col)
            current = cand
            base_rank = r
        if len(reps) == hd.dim:
            break
    rep_mat = reps[0] if reps else Mat.zero(p, hd.cycles.nrows, 0)
    for col in reps[1:]:
        rep_mat = rep_mat.hstack(col)
    span = rep_mat.hstack(hd.boundaries)

    def coord_fn(v: Mat):
        res = solve(span, v)
        if res is None:
            return None
        x = res[0]
        return [x.rows[i][0] for i in range(rep_mat.ncols)]

    return rep_mat, coord_fn


def induced_on_homology(f: ChainMap, k: int) -> Mat:
    """Matrix of H^k(source) -> H^{k+deg}(target) in the chosen rep bases."""
    hs = homology(f.source, k)
    ht = homology(f.target, k + f.degree)
    reps_s, _ = homology_class_reps(hs)
    reps_t, coord_t = homology_class_reps(ht)
    p = f.p
    cols = []
    fk = f.comp(k)
    for j in range(reps_s.ncols):
        v = fk @ Mat.from_cols(p, [reps_s.col(j)])
        coords = coord_t(v)
        if coords is None:
            raise RuntimeError("image of a cycle is not a cycle; differential data inconsistent")
        cols.append(coords)
    if not cols:
        return Mat.zero(p, reps_t.ncols, 0)
    return Mat.from_cols(p, cols)


# ---------------------------------------------------------------------------
# the homotopy boundary and post-hoc verification

def homotopy_boundary(h: ChainMap, n: int) -> ChainMap:
    """d.h + (-1)^n h.d for h of degree n-1, as a bare graded map of degree n."""
    src, tgt = h.source, h.target
    p = h.p
    sgn = 1 if n % 2 == 0 else p - 1

    def comp_fn(k):
        first = tgt.diff(k + n - 1) @ h.comp(k)
        second = h.comp(k + 1) @ src.diff(k)
        return first + second.scale(sgn)

    left = _tail_spec(h.left_tail)
    right = _tail_spec(h.right_tail)
    lo, hi = h.lo, h.hi
    if right[0] == "trunc":
        hi = max(lo, h.hi - 1)
    return build_chain_map(src, tgt, n, comp_fn, lo, hi, left, right,
                           chain_condition=False)


def _tail_spec(tail):
    if isinstance(tail, ZeroTail):
        return ("zero",)
    if isinstance(tail, TruncatedTail):
        return ("trunc", tail.note)
    return ("per", tail.period)


def _verify_null_homotopy(f: ChainMap, h: ChainMap, degrees) -> bool:
    p = f.p
    sgn = 1 if f.degree % 2 == 0 else p - 1
    for k in degrees:
        try:
            lhs = f.target.diff(k + f.degree - 1) @ h.comp(k) + (h.comp(k + 1) @ f.source.diff(k)).scale(sgn)
            if lhs != f.comp(k):
                return False
        except OutsideKnownWindow:
            continue
    return True


# ---------------------------------------------------------------------------
# linear solve over hom-space coefficients

class _BlockSystem:
    """Linear system whose unknowns are coefficients in hom-space bases."""

    def __init__(self, p):
        self.p = p
        self.blocks = {}        # key -> (offset, basis list)
        self.order = []
        self.total = 0
        self.rows = []
        self.rhs = []

    def add_block(self, key, basis):
        if key in self.blocks:
            return
        self.blocks[key] = (self.total, basis)
        self.order.append(key)
        self.total += len(basis)

    def add_equation(self, terms, rhs: Mat):
        """terms: list of (block_key, side, mat, sign); side "L" composes the
        basis element on the left with mat (mat @ B), side "R" on the right."""
        nr, nc = rhs.nrows, rhs.ncols
        if nr * nc == 0:
            return
        cells = nr * nc
        cols_per_term = []
        for (key, side, mat, sign) in terms:
            if key is None or key not in self.blocks:
                cols_per_term.append(None)
                continue
            off, basis = self.blocks[key]
            prods = []
            for b in basis:
                m = (mat @ b) if side == "L" else (b @ mat)
                if sign % self.p != 1:
                    m = m.scale(sign)
                prods.append(m)
            cols_per_term.append((off, prods))
        for r in range(nr):
            for c in range(nc):
                row = [0] * self.total
                for entry in cols_per_term:
                    if entry is None:
                        continue
                    off, prods = entry
                    for i, m in enumerate(prods):
                        v = m.rows[r][c]
                        if v:
                            row[off + i] = (row[off + i] + v) % self.p
                self.rows.append(row)
                self.rhs.append(rhs.rows[r][c])

    def solve(self):
        """Returns {key: Mat or None} or None when the system is inconsistent."""
        if self.total == 0:
            if any(v % self.p for v in self.rhs):
                return None
            return {key: None for key in self.order}
        sys_mat = Mat(self.p, self.rows, ncols=self.total)
        rhs = Mat.col_vector(self.p, self.rhs)
        res = solve(sys_mat, rhs)
        if res is None:
            return None
        x = res[0]
        out = {}
        for key in self.order:
            off, basis = self.blocks[key]
            acc = None
            for i, b in enumerate(basis):
                c = x.rows[off + i][0]
                if c:
                    t = b if c == 1 else b.scale(c)
                    acc = t if acc is None else acc + t
            if acc is None and basis:
                acc = Mat.zero(self.p, basis[0].nrows, basis[0].ncols)
            out[key] = acc
        return out


# ---------------------------------------------------------------------------
# null homotopy tiers

def _tails_of(f: ChainMap):
    return [f.source.left_tail, f.source.right_tail,
            f.target.left_tail, f.target.right_tail,
            f.left_tail, f.right_tail]


def _regime(f: ChainMap) -> str:
    tails = _tails_of(f)
    if any(isinstance(t, TruncatedTail) for t in tails):
        return "truncated"
    if any(isinstance(t, (PeriodicTail, PeriodicMapTail)) for t in tails):
        return "periodic"
    return "bounded"


def _base_period(f: ChainMap) -> int:
    qs = [t.period for t in _tails_of(f) if isinstance(t, (PeriodicTail, PeriodicMapTail))]
    return math.lcm(*qs) if qs else 1


def _obstruction_scan(f: ChainMap, degrees):
    for k in degrees:
        try:
            hs = homology(f.source, k)
            ht = homology(f.target, k + f.degree)
            if not (hs.reliable and ht.reliable):
                continue
            if hs.dim == 0 or ht.dim == 0:
                continue
            if not induced_on_homology(f, k).is_zero():
                return k
        except OutsideKnownWindow:
            continue
    return None


def _solve_homotopy_over(f: ChainMap, var_of, slot_mods, eq_degrees):
    """Shared assembly: unknowns h(k) live in hom(X^k, Y^{k+n-1}) per slot."""
    n = f.degree
    sgn = 1 if n % 2 == 0 else f.p - 1
    system = _BlockSystem(f.p)
    for key, (src_m, tgt_m) in slot_mods.items():
        system.add_block(key, hom_basis(src_m, tgt_m))
    for k in eq_degrees:
        try:
            rhs = f.comp(k)
            d_tgt = f.target.diff(k + n - 1)
            d_src = f.source.diff(k)
        except OutsideKnownWindow:
            continue
        system.add_equation(
            [(var_of(k), "L", d_tgt, 1), (var_of(k + 1), "R", d_src, sgn)], rhs)
    return system.solve()


def null_homotopy(f: ChainMap, budget: int = 4) -> HomotopyCertificate:
    """Decide whether f is null-homotopic.

    Bounded inputs get a complete decision from one global solve.  Periodic
    inputs get a periodic-tail ansatz with period multipliers 1..budget.
    Truncated inputs get a window-interior solve.  A nonzero induced map on
    homology at any reliable degree certifies "no" before anything is solved.
    """
    n = f.degree
    regime = _regime(f)
    src, tgt = f.source, f.target
    q = _base_period(f)
    scan_lo = min(src.lo, tgt.lo - n, f.lo) - 2 * q - 2
    scan_hi = max(src.hi, tgt.hi - n, f.hi) + 2 * q + 2
    obs = _obstruction_scan(f, range(scan_lo, scan_hi + 1))
    if obs is not None:
        return HomotopyCertificate("certified_no", "homology_obstruction",
                                   detail=f"induced map on homology is nonzero in degree {obs}",
                                   obstruction_degree=obs)

    if regime == "bounded":
        vlo = min(src.lo, tgt.lo - n + 1)
        vhi = max(src.hi, tgt.hi - n + 1) + 1
        slot_mods = {}
        for k in range(vlo, vhi + 1):
            sm, tm = src.term(k), tgt.term(k + n - 1)
            if sm.dim and tm.dim:
                slot_mods[k] = (sm, tm)

        def var_of(k):
            return k if k in slot_mods else None

        sol = _solve_homotopy_over(f, var_of, slot_mods, range(vlo - 1, vhi + 2))
        if sol is None:
            return HomotopyCertificate("certified_no", "bounded_exact",
                                       detail="the bounded homotopy system is inconsistent")
        h = _build_h(f, sol, var_of, slot_mods, vlo, vhi, ("zero",), ("zero",))
        if not _verify_null_homotopy(f, h, range(vlo - 1, vhi + 2)):
            raise RuntimeError("solver returned a homotopy that fails re-verification")
        return HomotopyCertificate("found", "bounded_exact", homotopy=h)

    if regime == "periodic":
        vlo = min(src.lo, tgt.lo - n + 1, f.lo)
        vhi = max(src.hi, tgt.hi - n + 1, f.hi)
        for m in range(1, budget + 1):
            big_q = q * m
            slot_mods = {}
            for k in range(vlo, vhi + 1):
                slot_mods[("c", k)] = (src.term(k), tgt.term(k + n - 1))
            for t in range(big_q):
                kl = vlo - 1 - t
                kr = vhi + 1 + t
                slot_mods[("l", t)] = (src.term(kl), tgt.term(kl + n - 1))
                slot_mods[("r", t)] = (src.term(kr), tgt.term(kr + n - 1))

            def var_of(k, _q=big_q):
                if k < vlo:
                    return ("l", (vlo - 1 - k) % _q)
                if k > vhi:
                    return ("r", (k - vhi - 1) % _q)
                return ("c", k)

            sol = _solve_homotopy_over(f, var_of, slot_mods,
                                       range(vlo - 2 * big_q - 2, vhi + 2 * big_q + 3))
            if sol is None:
                continue
            h = _build_h(f, sol, var_of, slot_mods, vlo, vhi, ("per", big_q), ("per", big_q))
            if not _verify_null_homotopy(f, h, range(vlo - 2 * big_q - 2, vhi + 2 * big_q + 3)):
                raise RuntimeError("solver returned a homotopy that fails re-verification")
            return HomotopyCertificate("found", "periodic_ansatz", homotopy=h,
                                       detail=f"tail period {big_q}")
        return HomotopyCertificate("inconclusive", "periodic_ansatz",
                                   detail=f"no periodic homotopy up to period multiplier {budget}")

    # truncated: window-interior solve
    lows = [x for x in (src.min_known(), None if tgt.min_known() is None else tgt.min_known() - n + 1) if x is not None]
    highs = [x for x in (src.max_known(), None if tgt.max_known() is None else tgt.max_known() - n + 1) if x is not None]
    wlo = max(lows) if lows else min(src.lo, tgt.lo - n + 1)
    whi = min(highs) if highs else max(src.hi, tgt.hi - n + 1)
    slot_mods = {}
    for k in range(wlo, whi + 1):
        try:
            sm, tm = src.term(k), tgt.term(k + n - 1)
        except OutsideKnownWindow:
            continue
        if sm.dim and tm.dim:
            slot_mods[k] = (sm, tm)

    def var_of(k):
        return k if k in slot_mods else None

    sol = _solve_homotopy_over(f, var_of, slot_mods, range(wlo, whi))
    if sol is None:
        return HomotopyCertificate("inconclusive", "window_interior",
                                   detail="window system inconsistent; truncation effects possible")
    h = _build_h(f, sol, var_of, slot_mods, wlo, whi, ("trunc", "homotopy window"), ("trunc", "homotopy window"))
    if not _verify_null_homotopy(f, h, range(wlo, whi)):
        raise RuntimeError("solver returned a homotopy that fails re-verification")
    return HomotopyCertificate("found", "window_interior", homotopy=h,
                               detail=f"identity verified for degrees {wlo}..{whi - 1}")


def _build_h(f, sol, var_of, slot_mods, lo, hi, left, right):
    n = f.degree

    def comp_fn(k):
        key = var_of(k)
        if key is not None and key in sol and sol[key] is not None:
            return sol[key]
        try:
            return Mat.zero(f.p, f.target.term(k + n - 1).dim, f.source.term(k).dim)
        except OutsideKnownWindow:
            return Mat.zero(f.p, 0, 0)

    return build_chain_map(f.source, f.target, n - 1, comp_fn, lo, hi, left, right,
                           chain_condition=False)


def homotopic(f: ChainMap, g: ChainMap, budget: int = 4) -> HomotopyCertificate:
    return null_homotopy(f - g, budget=budget)


# ---------------------------------------------------------------------------
# contractions

def contraction_via_retractions(cx: Complex, lo=None, hi=None) -> HomotopyCertificate:
    """Contract an acyclic complex degreewise, without projectivity assumptions.

    For each degree a module retraction of the cycle submodule is solved for;
    the contraction is glued from the resulting splittings.  The method is
    local, so a finite window of an unbounded complex yields a window-interior
    certificate; bounded complexes get a complete decision.
    """
    bounded = cx.is_bounded()
    if lo is None:
        lo = cx.lo if (bounded or cx.min_known() is not None) else None
    if hi is None:
        hi = cx.hi if (bounded or cx.max_known() is not None) else None
    if lo is None or hi is None:
        return HomotopyCertificate("precondition_failed", "none",
                                   detail="periodic tails need an explicit window here")
    p = cx.p

    z_cols = {}
    pi_mat = {}
    w_cols = {}
    for k in range(lo, hi + 1):
        hd = homology(cx, k)
        if hd.reliable and hd.dim != 0:
            return HomotopyCertificate("certified_no", "homology_obstruction",
                                       detail=f"homology has dimension {hd.dim} in degree {k}",
                                       obstruction_degree=k)
        try:
            cx.diff(k)
            z = hd.cycles
        except OutsideKnownWindow:
            # the outgoing differential is beyond the window, so the honest
            # cycle candidates here are the incoming boundaries
            z = hd.boundaries
        z_cols[k] = z
        term = cx.term(k)
        if z.ncols == 0:
            pi_mat[k] = Mat.zero(p, 0, term.dim)
            w_cols[k] = Mat.identity(p, term.dim)
            continue
        sub, _incl = restrict_action(term, z)
        system = _BlockSystem(p)
        system.add_block("pi", hom_basis(term, sub))
        system.add_equation([("pi", "R", z, 1)], Mat.identity(p, z.ncols))
        sol = system.solve()
        if sol is None:
            if bounded:
                return HomotopyCertificate("certified_no", "bounded_exact",
                                           detail=f"cycle submodule in degree {k} is not a direct summand",
                                           obstruction_degree=k)
            return HomotopyCertificate("inconclusive", "window_interior",
                                       detail=f"no retraction of the cycle submodule in degree {k}")
        pi_mat[k] = sol["pi"]
        w_cols[k] = nullspace(sol["pi"])

    h = {}
    for k in range(lo + 1, hi + 1):
        z = z_cols[k]
        term = cx.term(k)
        if z.ncols == 0:
            h[k] = Mat.zero(p, cx.term(k - 1).dim, term.dim)
            continue
        m = cx.diff(k - 1) @ w_cols[k - 1]
        res = solve(m, z)
        if res is None:
            if bounded:
                return HomotopyCertificate("certified_no", "bounded_exact",
                                           detail=f"cycles in degree {k} are not hit by the differential",
                                           obstruction_degree=k)
            return HomotopyCertificate("inconclusive", "window_interior",
                                       detail=f"window cycles in degree {k} not hit; truncation effects possible")
        h[k] = w_cols[k - 1] @ res[0] @ pi_mat[k]

    if bounded:
        h[lo] = Mat.zero(p, cx.term(lo - 1).dim, cx.term(lo).dim)
        h[hi + 1] = Mat.zero(p, cx.term(hi).dim, cx.term(hi + 1).dim)
        check = range(lo - 1, hi + 2)
        tier = "bounded_exact"
    else:
        check = range(lo + 1, hi)
        tier = "window_interior"

    def h_at(k):
        if k in h:
            return h[k]
        try:
            return Mat.zero(p, cx.term(k - 1).dim, cx.term(k).dim)
        except OutsideKnownWindow:
            return Mat.zero(p, 0, 0)

    for k in check:
        try:
            ident = Mat.identity(p, cx.term(k).dim)
            got = cx.diff(k - 1) @ h_at(k) + h_at(k + 1) @ cx.diff(k)
        except OutsideKnownWindow:
            continue
        if got != ident:
            if bounded:
                raise RuntimeError("retraction contraction failed re-verification on a bounded complex")
            return HomotopyCertificate("inconclusive", "window_interior",
                                       detail=f"contraction identity fails at degree {k}")

    if bounded:
        hmap = build_chain_map(cx, cx, -1, h_at, lo, hi + 1, ("zero",), ("zero",),
                               chain_condition=False)
        detail = "contraction on full support"
    else:
        side = ("trunc", "contraction window")
        hmap = build_chain_map(cx, cx, -1, h_at, lo + 1, hi, side, side,
                               chain_condition=False)
        detail = f"identity verified for degrees {lo + 1}..{hi - 1}"
    return HomotopyCertificate("found", tier, homotopy=hmap, detail=detail)


def contract_projective_acyclic(cx: Complex, down_to=None, up_to=None) -> HomotopyCertificate:
    """Degreewise lifting contraction for acyclic complexes of projectives.

    Needs one bounded side to start from: descends from the top when the
    right tail is zero, ascends from the bottom when the left tail is zero.
    Terms are required to be projective (PreconditionFailed otherwise).
    Bounded complexes give an exact certificate, otherwise window-interior.
    """
    p = cx.p
    right_zero = isinstance(cx.right_tail, ZeroTail)
    left_zero = isinstance(cx.left_tail, ZeroTail)
    if not right_zero and not left_zero:
        return HomotopyCertificate("precondition_failed", "none",
                                   detail="no bounded side to start the lifting from")

    if right_zero:
        start = cx.hi
        stop = down_to if down_to is not None else cx.lo
        mk = cx.min_known()
        if mk is not None and stop <= mk:
            stop = mk + 1
        degrees = list(range(start, stop - 1, -1))
    else:
        start = cx.lo
        stop = up_to if up_to is not None else cx.hi
        mk = cx.max_known()
        if mk is not None and stop >= mk:
            stop = mk - 1
        degrees = list(range(start, stop + 1))

    for k in degrees:
        try:
            term = cx.term(k)
        except OutsideKnownWindow:
            return HomotopyCertificate("precondition_failed", "none",
                                       detail=f"degree {k} is beyond the complex's known window",
                                       obstruction_degree=k)
        if term.dim and not is_projective_quick(term):
            return HomotopyCertificate("precondition_failed", "none",
                                       detail=f"term in degree {k} is not projective",
                                       obstruction_degree=k)
        hd = homology(cx, k)
        if hd.reliable and hd.dim != 0:
            return HomotopyCertificate("certified_no", "homology_obstruction",
                                       detail=f"homology has dimension {hd.dim} in degree {k}",
                                       obstruction_degree=k)

    h = {}

    def h_at(k):
        if k in h:
            return h[k]
        try:
            return Mat.zero(p, cx.term(k - 1).dim, cx.term(k).dim)
        except OutsideKnownWindow:
            return Mat.zero(p, 0, 0)

    if right_zero:
        for k in degrees:
            term = cx.term(k)
            prev = cx.term(k - 1)
            rhs = Mat.identity(p, term.dim) - h_at(k + 1) @ cx.diff(k)
            system = _BlockSystem(p)
            system.add_block("h", hom_basis(term, prev))
            system.add_equation([("h", "L", cx.diff(k - 1), 1)], rhs)
            sol = system.solve()
            if sol is None:
                return HomotopyCertificate("inconclusive", "window_interior",
                                           detail=f"lifting failed in degree {k}")
            h[k] = sol["h"] if sol["h"] is not None else Mat.zero(p, prev.dim, term.dim)
        solved_range = range(stop, start + 1)
        exact = left_zero and stop <= cx.lo
    else:
        for k in degrees:
            term = cx.term(k)
            nxt = cx.term(k + 1)
            rhs = Mat.identity(p, term.dim) - cx.diff(k - 1) @ h_at(k)
            system = _BlockSystem(p)
            system.add_block("h", hom_basis(nxt, term))
            system.add_equation([("h", "R", cx.diff(k), 1)], rhs)
            sol = system.solve()
            if sol is None:
                return HomotopyCertificate("inconclusive", "window_interior",
                                           detail=f"co-lifting failed in degree {k}")
            h[k + 1] = sol["h"] if sol["h"] is not None else Mat.zero(p, term.dim, nxt.dim)
        solved_range = range(start, stop + 1)
        exact = right_zero and stop >= cx.hi

    for k in solved_range:
        ident = Mat.identity(p, cx.term(k).dim)
        if cx.diff(k - 1) @ h_at(k) + h_at(k + 1) @ cx.diff(k) != ident:
            raise RuntimeError("lifting contraction failed re-verification")

    if exact:
        tier = "bounded_exact"
        side_l = side_r = ("zero",)
        lo_w, hi_w = cx.lo, cx.hi + 1
        detail = "contraction on full support"
    else:
        tier = "window_interior"
        detail = f"identity verified for degrees {min(solved_range)}..{max(solved_range)}"
        if right_zero:
            side_l, side_r = ("trunc", "lifting window"), ("zero",)
            lo_w, hi_w = stop, cx.hi + 1
        else:
            side_l, side_r = ("zero",), ("trunc", "lifting window")
            lo_w, hi_w = cx.lo, stop + 1
    hmap = build_chain_map(cx, cx, -1, h_at, lo_w, hi_w, side_l, side_r, chain_condition=False)
    return HomotopyCertificate("found", tier, homotopy=hmap, detail=detail)


def is_contractible(cx: Complex, budget: int = 4, window=None) -> HomotopyCertificate:
    """Contractibility with the appropriate tier for the complex's tail regime."""
    any_trunc = isinstance(cx.left_tail, TruncatedTail) or isinstance(cx.right_tail, TruncatedTail)
    if cx.is_bounded():
        return contraction_via_retractions(cx)
    if any_trunc:
        lo, hi = window if window else (cx.lo, cx.hi)
        return contraction_via_retractions(cx, lo, hi)
    if window is not None:
        return contraction_via_retractions(cx, window[0], window[1])
    # periodic regime: homology obstruction, then the periodic ansatz on the identity
    q = math.lcm(*[t.period for t in (cx.left_tail, cx.right_tail) if isinstance(t, PeriodicTail)])
    for k in range(cx.lo - 2 * q - 2, cx.hi + 2 * q + 3):
        hd = homology(cx, k)
        if hd.reliable and hd.dim != 0:
            return HomotopyCertificate("certified_no", "homology_obstruction",
                                       detail=f"homology has dimension {hd.dim} in degree {k}",
                                       obstruction_degree=k)
    return null_homotopy(identity_chain_map(cx), budget=budget)


def is_homotopy_equivalence(f: ChainMap, budget: int = 4, window=None) -> HomotopyCertificate:
    """f is an equivalence exactly when its cone contracts; the certificate of
    the cone contraction is returned with its tier."""
    if f.degree != 0:
        raise ValueError("homotopy equivalence is a question about degree-0 maps")
    cd = cone(f)
    return is_contractible(cd.complex, budget=budget, window=window)


def tensor_contraction(x: Complex, y: Complex, h: ChainMap, xy: Complex) -> ChainMap:
    """Lift a contraction h of y to the contraction (-1)^i id (x) h of x (x) y."""
    ident = identity_chain_map(x)
    return tensor_map(ident, h, source=xy, target=xy, chain_condition=False)
