"""Cochain complexes of finite dimensional modules, with controlled infinite tails.

A Complex stores a finite core window [lo, hi] of terms and differentials
(d raises degree by one) plus a tail descriptor per side:

  ZeroTail       the complex is literally zero beyond the core
  PeriodicTail   terms and differentials repeat with a fixed period forever
  TruncatedTail  the complex continues but we only know this window

Periodic tails are certified at construction time: every identity (shapes,
intertwining, d.d = 0) is checked on the core plus two full periods beyond
each seam, and the stored data repeats literally after that, so the checks
cover all degrees.

Chain maps carry a degree n and satisfy d.f = (-1)^n f.d, checked the same
way.  Composition of graded maps is componentwise with no extra sign; the
Koszul signs live in tensor products of maps, not in composition.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .group_modules import (
    AlgebraMismatch,
    FdModule,
    GroupAlgebra,
    direct_sum_module,
    dual_module,
    tensor_module,
    trivial_module,
    zero_module,
)
from .linalg import Mat, nullspace, rref


class OutsideKnownWindow(Exception):
    """A term or differential was requested beyond a truncated tail."""


class InfiniteRank(Exception):
    def __init__(self, degree, msg=""):
        self.degree = degree
        super().__init__(msg or f"term in degree {degree} would be infinite dimensional")


class WindowRequired(ValueError):
    pass


class NotAComplex(ValueError):
    pass


class NotAChainMap(ValueError):
    pass


@dataclass(frozen=True)
class ZeroTail:
    pass


@dataclass(frozen=True)
class PeriodicTail:
    period: int
    modules: tuple  # of FdModule, length = period
    diffs: tuple    # of Mat, length = period; orientation depends on the side
    seam: Mat       # differential crossing the core boundary


@dataclass(frozen=True)
class TruncatedTail:
    note: str = ""


@dataclass(frozen=True)
class PeriodicMapTail:
    period: int
    mats: tuple  # of Mat, length = period


def _is_zero(t):
    return isinstance(t, ZeroTail)


def _is_per(t):
    return isinstance(t, (PeriodicTail, PeriodicMapTail))


def _is_trunc(t):
    return isinstance(t, TruncatedTail)


def _check_intertwines(src: FdModule, tgt: FdModule, mat: Mat, what: str):
    if mat.nrows != tgt.dim or mat.ncols != src.dim:
        raise NotAComplex(f"{what}: shape {mat.nrows}x{mat.ncols} vs modules {tgt.dim}x{src.dim}")
    for gs, gt in zip(src.gen_action, tgt.gen_action):
        if (mat @ gs) != (gt @ mat):
            raise NotAComplex(f"{what}: matrix is not a module map")


class Complex:
    """Cochain complex over a fixed group algebra; see module docstring."""

    __slots__ = ("alg", "lo", "hi", "terms", "diffs", "left_tail", "right_tail")

    def __init__(self, alg, lo, hi, terms, diffs, left_tail=ZeroTail(), right_tail=ZeroTail(), validate=True):
        self.alg = alg
        self.lo = int(lo)
        self.hi = int(hi)
        self.terms = tuple(terms)
        self.diffs = tuple(diffs)
        self.left_tail = left_tail
        self.right_tail = right_tail
        if self.hi < self.lo:
            raise NotAComplex("empty core window")
        if len(self.terms) != self.hi - self.lo + 1:
            raise NotAComplex("terms length does not match window")
        if len(self.diffs) != self.hi - self.lo:
            raise NotAComplex("diffs length does not match window")
        if validate:
            self._validate()

    # -- accessors ------------------------------------------------------

    @property
    def p(self):
        return self.alg.p

    def term(self, k: int) -> FdModule:
        if self.lo <= k <= self.hi:
            return self.terms[k - self.lo]
        t = self.left_tail if k < self.lo else self.right_tail
        if _is_zero(t):
            return zero_module(self.alg)
        if _is_trunc(t):
            raise OutsideKnownWindow(f"term({k}) beyond truncated tail: {t.note}")
        j = (self.lo - k) if k < self.lo else (k - self.hi)
        return t.modules[(j - 1) % t.period]

    def diff(self, k: int) -> Mat:
        """Differential X^k -> X^{k+1} as a matrix."""
        if self.lo <= k < self.hi:
            return self.diffs[k - self.lo]
        if k < self.lo:
            t = self.left_tail
            if _is_zero(t):
                return Mat.zero(self.p, self.term(k + 1).dim, 0)
            if _is_trunc(t):
                raise OutsideKnownWindow(f"diff({k}) beyond truncated tail: {t.note}")
            j = self.lo - k
            if j == 1:
                return t.seam
            return t.diffs[(j - 2) % t.period]
        # k >= hi
        t = self.right_tail
        if _is_zero(t):
            return Mat.zero(self.p, 0, self.term(k).dim)
        if _is_trunc(t):
            raise OutsideKnownWindow(f"diff({k}) beyond truncated tail: {t.note}")
        j = k - self.hi
        if j == 0:
            return t.seam
        return t.diffs[(j - 1) % t.period]

    def min_known(self):
        """Lowest degree with a known term, or None if unbounded below."""
        return self.lo if _is_trunc(self.left_tail) else None

    def max_known(self):
        return self.hi if _is_trunc(self.right_tail) else None

    def support_min(self):
        """Lowest possibly-nonzero degree: an int for a zero tail, None if infinite,
        or the truncation edge for a truncated tail (model semantics)."""
        if _is_per(self.left_tail):
            return None
        return self.lo

    def support_max(self):
        if _is_per(self.right_tail):
            return None
        return self.hi

    def is_bounded(self):
        return _is_zero(self.left_tail) and _is_zero(self.right_tail)

    def materialize(self, a: int, b: int):
        return [self.term(k) for k in range(a, b + 1)], [self.diff(k) for k in range(a, b)]

    def __repr__(self):
        kinds = {ZeroTail: "0", PeriodicTail: "per", TruncatedTail: "trunc"}
        lt = kinds[type(self.left_tail)]
        rt = kinds[type(self.right_tail)]
        dims = ",".join(str(t.dim) for t in self.terms)
        return f"Complex[{lt}|{self.lo}..{self.hi}|{rt}](dims {dims})"

    # -- validation -----------------------------------------------------

    def _check_window(self):
        wlo = self.lo
        whi = self.hi
        if _is_per(self.left_tail):
            wlo = self.lo - 2 * self.left_tail.period - 2
        if _is_per(self.right_tail):
            whi = self.hi + 2 * self.right_tail.period + 2
        return wlo, whi

    def _validate(self):
        for t in self.terms:
            if not isinstance(t, FdModule) or t.alg != self.alg:
                raise NotAComplex("terms must be modules over the complex's algebra")
        for side, tail in (("left", self.left_tail), ("right", self.right_tail)):
            if _is_per(tail):
                if not isinstance(tail, PeriodicTail):
                    raise NotAComplex("complex tails must be PeriodicTail")
                if tail.period < 1 or len(tail.modules) != tail.period or len(tail.diffs) != tail.period:
                    raise NotAComplex(f"{side} periodic tail data has wrong lengths")
                for m in tail.modules:
                    if m.alg != self.alg:
                        raise NotAComplex(f"{side} tail module over wrong algebra")
        wlo, whi = self._check_window()
        for k in range(wlo, whi):
            d = self.diff(k)
            _check_intertwines(self.term(k), self.term(k + 1), d, f"diff({k})")
        for k in range(wlo, whi - 1):
            comp = self.diff(k + 1) @ self.diff(k)
            if not comp.is_zero():
                raise NotAComplex(f"d.d != 0 from degree {k}")


# ---------------------------------------------------------------------------
# tail combination and generic builders

def _side_kind(tail):
    if _is_zero(tail):
        return ("zero",)
    if _is_trunc(tail):
        return ("trunc", tail.note)
    return ("per", tail.period)


def combine_sides(*kinds):
    """Resolve the tail kind of a construction from its inputs' tail kinds."""
    notes = [k[1] for k in kinds if k[0] == "trunc"]
    if notes:
        return ("trunc", "; ".join(n for n in notes if n) or "truncated input")
    periods = [k[1] for k in kinds if k[0] == "per"]
    if periods:
        return ("per", math.lcm(*periods))
    return ("zero",)


def build_complex(alg, lo, hi, term_fn, diff_fn, left, right, validate=True) -> Complex:
    """Assemble a Complex by sampling term_fn/diff_fn.

    left/right are ("zero",), ("trunc", note) or ("per", q).  Periodic sides
    are sampled for one period and re-sampled for a second period to certify
    literal repetition before the constructor's identity checks run.
    """
    terms = [term_fn(k) for k in range(lo, hi + 1)]
    diffs = [diff_fn(k) for k in range(lo, hi)]

    def build_side(spec, is_left):
        if spec[0] == "zero":
            return ZeroTail()
        if spec[0] == "trunc":
            return TruncatedTail(spec[1])
        q = spec[1]
        if is_left:
            modules = tuple(term_fn(lo - 1 - t) for t in range(q))
            seam = diff_fn(lo - 1)
            tdiffs = tuple(diff_fn(lo - 2 - t) for t in range(q))
            for t in range(q):
                if term_fn(lo - 1 - q - t) != modules[t] or diff_fn(lo - 2 - q - t) != tdiffs[t]:
                    raise NotAComplex("left tail is not literally periodic with the stated period")
        else:
            modules = tuple(term_fn(hi + 1 + t) for t in range(q))
            seam = diff_fn(hi)
            tdiffs = tuple(diff_fn(hi + 1 + t) for t in range(q))
            for t in range(q):
                if term_fn(hi + 1 + q + t) != modules[t] or diff_fn(hi + 1 + q + t) != tdiffs[t]:
                    raise NotAComplex("right tail is not literally periodic with the stated period")
        return PeriodicTail(q, modules, tdiffs, seam)

    lt = build_side(left, True)
    rt = build_side(right, False)
    return Complex(alg, lo, hi, terms, diffs, lt, rt, validate=validate)


# ---------------------------------------------------------------------------
# chain maps

class ChainMap:
    """Graded map f: source -> target of fixed degree n, d.f = (-1)^n f.d.

    Components are stored on a core window with the same three tail regimes
    as complexes (zero / periodic / truncated-knowledge).
    """

    __slots__ = ("source", "target", "degree", "lo", "hi", "comps", "left_tail", "right_tail", "chain_checked")

    def __init__(self, source, target, degree, lo, hi, comps, left_tail=ZeroTail(), right_tail=ZeroTail(),
                 validate=True, chain_condition=True):
        if source.alg != target.alg:
            raise AlgebraMismatch("chain map across different algebras")
        self.source = source
        self.target = target
        self.degree = int(degree)
        self.lo = int(lo)
        self.hi = int(hi)
        self.comps = tuple(comps)
        self.left_tail = left_tail
        self.right_tail = right_tail
        self.chain_checked = bool(chain_condition)
        if len(self.comps) != self.hi - self.lo + 1:
            raise NotAChainMap("component count does not match window")
        if validate:
            self._validate()

    @property
    def p(self):
        return self.source.alg.p

    def comp(self, k: int) -> Mat:
        """Component X^k -> Y^{k+degree}."""
        if self.lo <= k <= self.hi:
            return self.comps[k - self.lo]
        t = self.left_tail if k < self.lo else self.right_tail
        if _is_zero(t):
            return Mat.zero(self.p, self.target.term(k + self.degree).dim, self.source.term(k).dim)
        if _is_trunc(t):
            raise OutsideKnownWindow(f"component({k}) beyond truncated tail: {t.note}")
        j = (self.lo - k) if k < self.lo else (k - self.hi)
        return t.mats[(j - 1) % t.period]

    def _check_window(self):
        wlo, whi = self.lo, self.hi
        periods = [1]
        for c in (self.source, self.target):
            for t in (c.left_tail, c.right_tail):
                if _is_per(t):
                    periods.append(t.period)
        if _is_per(self.left_tail):
            wlo = self.lo - 2 * math.lcm(self.left_tail.period, *periods) - 2
        else:
            wlo = self.lo - 1
        if _is_per(self.right_tail):
            whi = self.hi + 2 * math.lcm(self.right_tail.period, *periods) + 2
        else:
            whi = self.hi + 1
        return wlo, whi

    def _validate(self):
        sign = -1 if self.degree % 2 else 1
        wlo, whi = self._check_window()
        for k in range(wlo, whi + 1):
            try:
                f_k = self.comp(k)
                src_t = self.source.term(k)
                tgt_t = self.target.term(k + self.degree)
            except OutsideKnownWindow:
                continue
            if f_k.nrows != tgt_t.dim or f_k.ncols != src_t.dim:
                raise NotAChainMap(f"component({k}) has wrong shape")
            for gs, gt in zip(src_t.gen_action, tgt_t.gen_action):
                if (f_k @ gs) != (gt @ f_k):
                    raise NotAChainMap(f"component({k}) is not a module map")
            if not self.chain_checked:
                continue
            try:
                lhs = self.target.diff(k + self.degree) @ f_k
                rhs = self.comp(k + 1) @ self.source.diff(k)
            except OutsideKnownWindow:
                continue
            rhs = rhs if sign == 1 else rhs.scale(self.p - 1)
            if lhs != rhs:
                raise NotAChainMap(f"graded chain condition fails at degree {k}")

    def __repr__(self):
        return f"ChainMap(deg {self.degree}, window {self.lo}..{self.hi})"

    # -- algebra ---------------------------------------------------------

    def __matmul__(self, other: "ChainMap") -> "ChainMap":
        """Composition self . other, degrees add, no sign (see module docstring)."""
        if other.target.alg != self.source.alg:
            raise NotAChainMap("composition across different algebras")
        left = combine_sides(_map_side(other.left_tail), _map_side(self.left_tail))
        right = combine_sides(_map_side(other.right_tail), _map_side(self.right_tail))
        pick_lo = max if left[0] == "trunc" else min
        pick_hi = min if right[0] == "trunc" else max
        lo = pick_lo(other.lo, self.lo - other.degree)
        hi = pick_hi(other.hi, self.hi - other.degree)
        return build_chain_map(
            other.source, self.target, self.degree + other.degree,
            lambda k: self.comp(k + other.degree) @ other.comp(k),
            lo, hi, left, right,
            chain_condition=self.chain_checked and other.chain_checked)

    def _pointwise(self, other, op_name):
        if other.source != self.source or other.target != self.target or other.degree != self.degree:
            raise NotAChainMap(f"{op_name} needs equal sources, targets and degrees")
        left = combine_sides(_map_side(self.left_tail), _map_side(other.left_tail))
        right = combine_sides(_map_side(self.right_tail), _map_side(other.right_tail))
        lo = (max if left[0] == "trunc" else min)(self.lo, other.lo)
        hi = (min if right[0] == "trunc" else max)(self.hi, other.hi)
        return lo, hi, left, right

    def __add__(self, other):
        lo, hi, left, right = self._pointwise(other, "sum")
        return build_chain_map(self.source, self.target, self.degree,
                               lambda k: self.comp(k) + other.comp(k), lo, hi, left, right,
                               chain_condition=self.chain_checked and other.chain_checked)

    def __sub__(self, other):
        lo, hi, left, right = self._pointwise(other, "difference")
        return build_chain_map(self.source, self.target, self.degree,
                               lambda k: self.comp(k) - other.comp(k), lo, hi, left, right,
                               chain_condition=self.chain_checked and other.chain_checked)

    def scale(self, c):
        return build_chain_map(self.source, self.target, self.degree,
                               lambda k: self.comp(k).scale(c), self.lo, self.hi,
                               _map_side(self.left_tail), _map_side(self.right_tail),
                               chain_condition=self.chain_checked)

    def __neg__(self):
        return self.scale(self.p - 1)

    def is_zero_map(self):
        wlo, whi = self._check_window()
        for k in range(wlo, whi + 1):
            try:
                if not self.comp(k).is_zero():
                    return False
            except OutsideKnownWindow:
                continue
        return True


def _map_side(tail):
    if _is_zero(tail):
        return ("zero",)
    if _is_trunc(tail):
        return ("trunc", tail.note)
    return ("per", tail.period)


def build_chain_map(source, target, degree, comp_fn, lo, hi, left, right, validate=True,
                    chain_condition=True) -> ChainMap:
    """Assemble a ChainMap by sampling comp_fn; periodic sides are certified
    by a second-period literal-equality check (same contract as build_complex).
    chain_condition=False builds a bare graded map (used for homotopies)."""
    comps = [comp_fn(k) for k in range(lo, hi + 1)]

    def build_side(spec, is_left):
        if spec[0] == "zero":
            return ZeroTail()
        if spec[0] == "trunc":
            return TruncatedTail(spec[1])
        q = spec[1]
        if is_left:
            mats = tuple(comp_fn(lo - 1 - t) for t in range(q))
            for t in range(q):
                if comp_fn(lo - 1 - q - t) != mats[t]:
                    raise NotAChainMap("left map tail is not literally periodic")
        else:
            mats = tuple(comp_fn(hi + 1 + t) for t in range(q))
            for t in range(q):
                if comp_fn(hi + 1 + q + t) != mats[t]:
                    raise NotAChainMap("right map tail is not literally periodic")
        return PeriodicMapTail(q, mats)

    lt = build_side(left, True)
    rt = build_side(right, False)
    return ChainMap(source, target, degree, lo, hi, comps, lt, rt,
                    validate=validate, chain_condition=chain_condition)


def identity_chain_map(a: Complex) -> ChainMap:
    return build_chain_map(a, a, 0, lambda k: Mat.identity(a.p, a.term(k).dim),
                           a.lo, a.hi, _side_kind(a.left_tail), _side_kind(a.right_tail))


def zero_chain_map(a: Complex, b: Complex, degree: int = 0) -> ChainMap:
    lo = max(a.lo, b.lo - degree)
    hi = max(lo, min(a.hi, b.hi - degree))
    return build_chain_map(a, b, degree,
                           lambda k: Mat.zero(a.p, b.term(k + degree).dim, a.term(k).dim),
                           lo, hi, ("zero",), ("zero",))


def single_component_map(a: Complex, b: Complex, degree: int, at: int, mat: Mat) -> ChainMap:
    return build_chain_map(a, b, degree,
                           lambda k: mat if k == at else Mat.zero(a.p, b.term(k + degree).dim, a.term(k).dim),
                           at, at, ("zero",), ("zero",))


# ---------------------------------------------------------------------------
# basic constructions

def complex_from_module(m: FdModule, at: int = 0) -> Complex:
    return Complex(m.alg, at, at, [m], [], ZeroTail(), ZeroTail(), validate=False)


def unit_complex(alg: GroupAlgebra) -> Complex:
    """The tensor unit: the trivial module in degree 0."""
    return complex_from_module(trivial_module(alg))


def zero_complex(alg: GroupAlgebra) -> Complex:
    return complex_from_module(zero_module(alg))


def shift(a: Complex, n: int) -> Complex:
    """a[n], with a[n]^k = a^{k+n} and differential (-1)^n d."""
    if n == 0:
        return a
    sign = 1 if n % 2 == 0 else -1

    def diff_fn(k):
        d = a.diff(k + n)
        return d if sign == 1 else d.scale(a.p - 1)

    return build_complex(a.alg, a.lo - n, a.hi - n, lambda k: a.term(k + n), diff_fn,
                         _side_kind(a.left_tail), _side_kind(a.right_tail), validate=False)


def shift_map(f: ChainMap, n: int) -> ChainMap:
    """f[n]: source[n] -> target[n] with the same components, reindexed."""
    return build_chain_map(shift(f.source, n), shift(f.target, n), f.degree,
                           lambda k: f.comp(k + n), f.lo - n, f.hi - n,
                           _map_side(f.left_tail), _map_side(f.right_tail),
                           chain_condition=f.chain_checked)


def direct_sum(a: Complex, b: Complex) -> Complex:
    if a.alg != b.alg:
        raise AlgebraMismatch("direct sum over different algebras")
    left = combine_sides(_side_kind(a.left_tail), _side_kind(b.left_tail))
    right = combine_sides(_side_kind(a.right_tail), _side_kind(b.right_tail))
    lo = min(a.lo, b.lo)
    hi = max(a.hi, b.hi)
    if left[0] == "trunc":
        lo = max(x for x in (a.min_known(), b.min_known()) if x is not None)
    if right[0] == "trunc":
        hi = min(x for x in (a.max_known(), b.max_known()) if x is not None)
    p = a.p

    def diff_fn(k):
        da, db = a.diff(k), b.diff(k)
        return Mat.block(p, [[da, Mat.zero(p, da.nrows, db.ncols)],
                             [Mat.zero(p, db.nrows, da.ncols), db]])

    return build_complex(a.alg, lo, hi, lambda k: direct_sum_module(a.term(k), b.term(k)),
                         diff_fn, left, right)


def sum_inclusion(a: Complex, b: Complex, s: Complex, which: int) -> ChainMap:
    """Inclusion of a (which=0) or b (which=1) into s = direct_sum(a, b)."""
    p = a.p

    def comp_fn(k):
        da, db = a.term(k).dim, b.term(k).dim
        i_a = Mat.identity(p, da)
        i_b = Mat.identity(p, db)
        if which == 0:
            return Mat.block(p, [[i_a], [Mat.zero(p, db, da)]])
        return Mat.block(p, [[Mat.zero(p, da, db)], [i_b]])

    src = a if which == 0 else b
    return build_chain_map(src, s, 0, comp_fn, s.lo, s.hi,
                           _side_kind(s.left_tail), _side_kind(s.right_tail))


def sum_projection(a: Complex, b: Complex, s: Complex, which: int) -> ChainMap:
    p = a.p

    def comp_fn(k):
        da, db = a.term(k).dim, b.term(k).dim
        i_a = Mat.identity(p, da)
        i_b = Mat.identity(p, db)
        if which == 0:
            return Mat.block(p, [[i_a, Mat.zero(p, da, db)]])
        return Mat.block(p, [[Mat.zero(p, db, da), i_b]])

    tgt = a if which == 0 else b
    return build_chain_map(s, tgt, 0, comp_fn, s.lo, s.hi,
                           _side_kind(s.left_tail), _side_kind(s.right_tail))


def dual(a: Complex) -> Complex:
    """(a*)^k = (a^{-k})* with differential (-1)^{k+1} (d_{a,-k-1}) transposed."""
    p = a.p

    def term_fn(k):
        return dual_module(a.term(-k))

    def diff_fn(k):
        d = a.diff(-k - 1).transpose()
        return d if (k + 1) % 2 == 0 else d.scale(p - 1)

    def dual_side(tail):
        kind = _side_kind(tail)
        if kind[0] != "per":
            return kind
        q = kind[1]
        if p != 2 and q % 2 == 1:
            q *= 2  # the alternating sign halves the symmetry unless p = 2
        return ("per", q)

    return build_complex(a.alg, -a.hi, -a.lo, term_fn, diff_fn,
                         dual_side(a.right_tail), dual_side(a.left_tail))


def dual_chain_map(f: ChainMap) -> ChainMap:
    """Dual of a degree-0 chain map: components transposed and reindexed."""
    if f.degree != 0:
        raise NotAChainMap("dual is implemented for degree-0 maps; shift first")
    src = dual(f.target)
    tgt = dual(f.source)

    def dual_side(tail):
        kind = _map_side(tail)
        if kind[0] != "per":
            return kind
        q = kind[1]
        periods = [q]
        for c in (f.source, f.target):
            for t in (c.left_tail, c.right_tail):
                if _is_per(t):
                    periods.append(t.period)
        return ("per", math.lcm(*periods))

    return build_chain_map(src, tgt, 0, lambda k: f.comp(-k).transpose(),
                           -f.hi, -f.lo, dual_side(f.right_tail), dual_side(f.left_tail))


def double_dual_iso(a: Complex) -> ChainMap:
    """The canonical degree-0 isomorphism a -> a**, (-1)^k . id in degree k."""
    dd = dual(dual(a))
    p = a.p

    def comp_fn(k):
        i = Mat.identity(p, a.term(k).dim)
        return i if k % 2 == 0 else i.scale(p - 1)

    left = _side_kind(a.left_tail)
    right = _side_kind(a.right_tail)
    if p != 2:
        left = ("per", math.lcm(left[1], 2)) if left[0] == "per" else left
        right = ("per", math.lcm(right[1], 2)) if right[0] == "per" else right
    return build_chain_map(a, dd, 0, comp_fn, a.lo, a.hi, left, right)


# ---------------------------------------------------------------------------
# cones

@dataclass(frozen=True)
class ConeData:
    complex: Complex
    inclusion: ChainMap   # target of f  ->  cone
    projection: ChainMap  # cone  ->  source[1]


def cone(f: ChainMap) -> ConeData:
    """Cone(f)^k = A^{k+1} (+) B^k with d = [[-d_A, 0], [f, d_B]].

    Returns the cone with its two structure maps; projection . inclusion = 0
    holds on the nose.
    """
    if f.degree != 0:
        raise NotAChainMap("cones are formed on degree-0 maps")
    a, b = f.source, f.target
    p = a.p
    left = combine_sides(_side_kind(a.left_tail), _side_kind(b.left_tail), _map_side(f.left_tail))
    right = combine_sides(_side_kind(a.right_tail), _side_kind(b.right_tail), _map_side(f.right_tail))
    lo = min(a.lo - 1, b.lo)
    hi = max(a.hi - 1, b.hi)
    if left[0] == "trunc":
        lo = max([x - 1 for x in (a.min_known(),) if x is not None] + [x for x in (b.min_known(),) if x is not None])
    if right[0] == "trunc":
        hi = min([x - 1 for x in (a.max_known(),) if x is not None] + [x for x in (b.max_known(),) if x is not None])

    def term_fn(k):
        return direct_sum_module(a.term(k + 1), b.term(k))

    def diff_fn(k):
        da = a.diff(k + 1)
        db = b.diff(k)
        fk = f.comp(k + 1)
        return Mat.block(p, [
            [da.scale(p - 1), Mat.zero(p, da.nrows, db.ncols)],
            [fk, db],
        ])

    c = build_complex(a.alg, lo, hi, term_fn, diff_fn, left, right)
    a1 = shift(a, 1)

    def incl_fn(k):
        na = a.term(k + 1).dim
        nb = b.term(k).dim
        return Mat.block(p, [[Mat.zero(p, na, nb)], [Mat.identity(p, nb)]])

    def proj_fn(k):
        na = a.term(k + 1).dim
        nb = b.term(k).dim
        return Mat.block(p, [[Mat.identity(p, na), Mat.zero(p, na, nb)]])

    incl = build_chain_map(b, c, 0, incl_fn, c.lo, c.hi, left, right)
    proj = build_chain_map(c, a1, 0, proj_fn, c.lo, c.hi, left, right)
    return ConeData(c, incl, proj)


# ---------------------------------------------------------------------------
# truncation

def truncate(a: Complex, lo: int, hi: int, note: str = "window truncation") -> Complex:
    """Restrict knowledge of a to [lo, hi]; sides that were honestly bounded
    inside the window stay ZeroTail, everything else becomes TruncatedTail."""
    mk, xk = a.min_known(), a.max_known()
    if mk is not None and lo < mk:
        raise OutsideKnownWindow(f"cannot truncate to {lo}: known only from {mk}")
    if xk is not None and hi > xk:
        raise OutsideKnownWindow(f"cannot truncate to {hi}: known only up to {xk}")
    if hi < lo:
        raise NotAComplex("empty truncation window")
    left = ("zero",) if (_is_zero(a.left_tail) and lo <= a.lo) else ("trunc", note)
    right = ("zero",) if (_is_zero(a.right_tail) and hi >= a.hi) else ("trunc", note)
    return build_complex(a.alg, lo, hi, a.term, a.diff, left, right, validate=False)


# ---------------------------------------------------------------------------
# tensor products

def tensor_summands(a: Complex, b: Complex, k: int):
    """Summand bookkeeping for (a (x) b)^k: list of (i, dim a^i, dim b^{k-i}),
    ascending i, zero-dimensional summands skipped.  Raises InfiniteRank when
    the index set is genuinely infinite."""
    a_min, a_max = a.support_min(), a.support_max()
    b_min, b_max = b.support_min(), b.support_max()
    lo_candidates = []
    if a_min is not None:
        lo_candidates.append(a_min)
    if b_max is not None:
        lo_candidates.append(k - b_max)
    hi_candidates = []
    if a_max is not None:
        hi_candidates.append(a_max)
    if b_min is not None:
        hi_candidates.append(k - b_min)
    if not lo_candidates or not hi_candidates:
        raise InfiniteRank(k)
    i_lo = max(lo_candidates)
    i_hi = min(hi_candidates)
    out = []
    for i in range(i_lo, i_hi + 1):
        da = a.term(i).dim
        db = b.term(k - i).dim
        if da > 0 and db > 0:
            out.append((i, da, db))
    return out


def _summand_offsets(summands):
    offs = []
    pos = 0
    for (i, da, db) in summands:
        offs.append((i, pos, da * db))
        pos += da * db
    return offs, pos


def tensor(a: Complex, b: Complex, mode: str = "sum", window=None) -> Complex:
    """Tensor product complex with the Koszul sign on the second differential.

    mode is "sum" or "prod"; at finite ranks the two coincide degreewise and
    both refuse genuinely infinite-dimensional degrees (InfiniteRank), so the
    flag only documents intent.  Unbounded results need an explicit window
    and come back with truncated-knowledge tails.
    """
    if mode not in ("sum", "prod"):
        raise ValueError("mode must be 'sum' or 'prod'")
    if a.alg != b.alg:
        raise AlgebraMismatch("tensor over different algebras")
    p = a.p
    a_min, a_max = a.support_min(), a.support_max()
    b_min, b_max = b.support_min(), b.support_max()
    if (a_min is None and b_max is None) or (a_max is None and b_min is None):
        # every degree has infinitely many nonzero summands
        raise InfiniteRank(0, "tensor factors are unbounded in opposite directions")
    bounded_left = a_min is not None and b_min is not None and not (_is_trunc(a.left_tail) or _is_trunc(b.left_tail))
    bounded_right = a_max is not None and b_max is not None and not (_is_trunc(a.right_tail) or _is_trunc(b.right_tail))
    if window is None:
        if (a_min is None or b_min is None) or (a_max is None or b_max is None):
            raise WindowRequired("tensor of unbounded complexes needs an explicit window")
        window = (a_min + b_min, a_max + b_max)
    wlo, whi = window
    if bounded_left:
        wlo = max(wlo, a_min + b_min)
        left = ("zero",)
    else:
        left = ("trunc", "tensor window")
    if bounded_right:
        whi = min(whi, a_max + b_max)
        right = ("zero",)
    else:
        right = ("trunc", "tensor window")
    if whi < wlo:
        return zero_complex(a.alg)

    def term_fn(k):
        parts = tensor_summands(a, b, k)
        if not parts:
            return zero_module(a.alg)
        mods = [tensor_module(a.term(i), b.term(k - i)) for (i, _, _) in parts]
        out = mods[0]
        for m in mods[1:]:
            out = direct_sum_module(out, m)
        return out

    def diff_fn(k):
        src = tensor_summands(a, b, k)
        tgt = tensor_summands(a, b, k + 1)
        _, src_dim = _summand_offsets(src)
        _, tgt_dim = _summand_offsets(tgt)
        if not src or not tgt:
            return Mat.zero(p, tgt_dim, src_dim)
        grid = []
        for (i2, da2, db2) in tgt:
            row = []
            for (i1, da1, db1) in src:
                if i2 == i1 + 1:
                    blockmat = a.diff(i1).kron(Mat.identity(p, db1))
                elif i2 == i1:
                    blockmat = Mat.identity(p, da1).kron(b.diff(k - i1))
                    if i1 % 2 != 0:
                        blockmat = blockmat.scale(p - 1)
                else:
                    blockmat = Mat.zero(p, da2 * db2, da1 * db1)
                row.append(blockmat)
            grid.append(row)
        return Mat.block(p, grid)

    return build_complex(a.alg, wlo, whi, term_fn, diff_fn, left, right)


def tensor_map(f: ChainMap, g: ChainMap, source: Complex = None, target: Complex = None, window=None,
               chain_condition=None) -> ChainMap:
    """(f (x) g) with the Koszul sign: on the summand A^i (x) B^j the component
    is (-1)^{i.|g|} f_i (x) g_j.  source/target must be tensor complexes built
    by tensor() on (f.source, g.source) and (f.target, g.target)."""
    if source is None:
        source = tensor(f.source, g.source, window=window)
    if target is None:
        target = tensor(f.target, g.target, window=window)
    p = f.p
    deg = f.degree + g.degree

    def comp_fn(k):
        src = tensor_summands(f.source, g.source, k)
        tgt = tensor_summands(f.target, g.target, k + deg)
        _, src_dim = _summand_offsets(src)
        _, tgt_dim = _summand_offsets(tgt)
        if not src or not tgt:
            return Mat.zero(p, tgt_dim, src_dim)
        grid = []
        for (i2, da2, db2) in tgt:
            row = []
            for (i1, da1, db1) in src:
                if i2 == i1 + f.degree:
                    blockmat = f.comp(i1).kron(g.comp(k - i1))
                    if (i1 * g.degree) % 2 != 0:
                        blockmat = blockmat.scale(p - 1)
                else:
                    blockmat = Mat.zero(p, da2 * db2, da1 * db1)
                row.append(blockmat)
            grid.append(row)
        return Mat.block(p, grid)

    left = combine_sides(_side_kind(source.left_tail), _side_kind(target.left_tail))
    right = combine_sides(_side_kind(source.right_tail), _side_kind(target.right_tail))
    lo = source.lo
    hi = source.hi
    if left[0] == "trunc":
        known = [x for x in (source.min_known(), None if target.min_known() is None else target.min_known() - deg) if x is not None]
        lo = max(known) if known else lo
    if right[0] == "trunc":
        known = [x for x in (source.max_known(), None if target.max_known() is None else target.max_known() - deg) if x is not None]
        hi = min(known) if known else hi
    if chain_condition is None:
        chain_condition = f.chain_checked and g.chain_checked
    return build_chain_map(source, target, deg, comp_fn, lo, hi, left, right,
                           chain_condition=chain_condition)


# ---------------------------------------------------------------------------
# homology

def _colspace_basis(m: Mat) -> Mat:
    """Matrix whose columns are an independent basis of the column space."""
    r, pivots, _ = rref(m.transpose())
    rows = [r.rows[i] for i in range(len(pivots))]
    return Mat(m.p, rows, ncols=m.nrows).transpose()


@dataclass(frozen=True)
class HomologyData:
    degree: int
    dim: int
    reliable: bool
    cycles: Mat      # columns span ker d_k
    boundaries: Mat  # columns are an independent basis of im d_{k-1}


def homology(a: Complex, k: int) -> HomologyData:
    """Cohomology at degree k; reliable=False when a truncated tail hides one
    of the two neighbouring differentials (missing data treated as zero)."""
    reliable = True
    try:
        dk = a.diff(k)
    except OutsideKnownWindow:
        dk = Mat.zero(a.p, 0, a.term(k).dim)
        reliable = False
    try:
        dkm1 = a.diff(k - 1)
    except OutsideKnownWindow:
        dkm1 = Mat.zero(a.p, a.term(k).dim, 0)
        reliable = False
    cycles = nullspace(dk)
    bounds = _colspace_basis(dkm1)
    return HomologyData(k, cycles.ncols - bounds.ncols, reliable, cycles, bounds)


def homology_dims(a: Complex, lo: int, hi: int) -> dict:
    return {k: homology(a, k).dim for k in range(lo, hi + 1)}
