"""Group algebras kappa[G] over prime fields and their finite dimensional modules.

G is always a finite product of cyclic groups, presented by one generator per
factor.  A module is stored as one action matrix per generator; validity
(generator orders and pairwise commutation) pins down an actual representation
of the whole group.  Module maps are validated intertwiners.

Everything here is exact linear algebra from .linalg; no floats anywhere.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .linalg import Mat, NonPrimeModulus, PrimeField, inverse, nullspace, rank, rref, solve


class AlgebraMismatch(ValueError):
    pass


class FieldMismatch(ValueError):
    pass


class NotARepresentation(ValueError):
    pass


class NotAModuleMap(ValueError):
    pass


def parse_group_spec(spec) -> tuple:
    """Flatten {"cyclic": n} / {"product": [...]} into a tuple of cyclic orders."""
    if isinstance(spec, dict):
        if "cyclic" in spec:
            n = int(spec["cyclic"])
            if n < 1:
                raise ValueError("cyclic order must be >= 1")
            return (n,)
        if "product" in spec:
            out = ()
            for sub in spec["product"]:
                out += parse_group_spec(sub)
            return out
    if isinstance(spec, (list, tuple)):
        out = ()
        for sub in spec:
            out += parse_group_spec(sub)
        return out
    if isinstance(spec, int):
        return (int(spec),)
    raise ValueError(f"unrecognized group spec: {spec!r}")


class GroupAlgebra:
    """kappa[G] for kappa = F_p and G = Z/n1 x ... x Z/nk."""

    __slots__ = ("field", "p", "factors", "dim", "_elements", "_index")

    def __init__(self, p: int, factors: tuple):
        self.field = PrimeField(p)
        self.p = p
        self.factors = tuple(int(n) for n in factors)
        d = 1
        for n in self.factors:
            d *= n
        self.dim = d
        elems = list(itertools.product(*[range(n) for n in self.factors]))
        self._elements = elems
        self._index = {e: i for i, e in enumerate(elems)}

    def __eq__(self, other):
        return isinstance(other, GroupAlgebra) and other.p == self.p and other.factors == self.factors

    def __hash__(self):
        return hash(("GroupAlgebra", self.p, self.factors))

    def __repr__(self):
        return f"GroupAlgebra(F_{self.p}[{'x'.join(f'Z/{n}' for n in self.factors)}])"

    # group structure ------------------------------------------------

    def elements(self):
        return list(self._elements)

    def element_index(self, e) -> int:
        return self._index[tuple(e)]

    def identity(self):
        return tuple(0 for _ in self.factors)

    def mult(self, a, b):
        return tuple((x + y) % n for x, y, n in zip(a, b, self.factors))

    def inv_elem(self, a):
        return tuple((-x) % n for x, n in zip(a, self.factors))

    def generators(self):
        gens = []
        for i in range(len(self.factors)):
            e = [0] * len(self.factors)
            e[i] = 1
            gens.append(tuple(e))
        return gens

    def gen_names(self):
        return [f"g{i}" for i in range(len(self.factors))]

    def is_local(self) -> bool:
        """True when G is a p-group, i.e. kappa[G] is a local algebra."""
        for n in self.factors:
            while n % self.p == 0:
                n //= self.p
            if n != 1:
                return False
        return True

    def sylow_data(self):
        """Per factor: (exponent m, p-part order q) with gen^m generating the p-part."""
        out = []
        for n in self.factors:
            q = 1
            while n % self.p == 0:
                n //= self.p
                q *= self.p
            out.append((n, q))
        return out


def group_algebra(p: int, spec) -> GroupAlgebra:
    if not isinstance(p, int) or p < 2:
        raise NonPrimeModulus(f"modulus {p} is not prime")
    return GroupAlgebra(p, parse_group_spec(spec))


class FdModule:
    """Finite dimensional left kappa[G]-module: one action matrix per generator."""

    __slots__ = ("alg", "dim", "gen_action", "_elem_cache")

    def __init__(self, alg: GroupAlgebra, gen_action, validate: bool = True):
        self.alg = alg
        self.gen_action = tuple(gen_action)
        if len(self.gen_action) != len(alg.factors):
            raise NotARepresentation("need one action matrix per group generator")
        self.dim = self.gen_action[0].nrows if self.gen_action else 0
        for m in self.gen_action:
            if m.nrows != m.ncols or m.nrows != self.dim or m.p != alg.p:
                raise NotARepresentation("action matrices must be square, equal size, right field")
        if validate:
            self._validate()
        self._elem_cache = {}

    def _validate(self):
        d = self.dim
        ident = Mat.identity(self.alg.p, d)
        for m, n in zip(self.gen_action, self.alg.factors):
            acc = ident
            for _ in range(n):
                acc = m @ acc
            if acc != ident:
                raise NotARepresentation("generator order not respected")
        for i in range(len(self.gen_action)):
            for j in range(i + 1, len(self.gen_action)):
                a, b = self.gen_action[i], self.gen_action[j]
                if (a @ b) != (b @ a):
                    raise NotARepresentation("generator actions do not commute")

    def key(self):
        return (self.alg.p, self.alg.factors, self.dim, self.gen_action)

    def __eq__(self, other):
        return isinstance(other, FdModule) and other.key() == self.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"FdModule(dim={self.dim} over {self.alg!r})"

    def action(self, elem) -> Mat:
        elem = tuple(elem)
        cached = self._elem_cache.get(elem)
        if cached is not None:
            return cached
        m = Mat.identity(self.alg.p, self.dim)
        for g, e in zip(self.gen_action, elem):
            for _ in range(e):
                m = g @ m
        self._elem_cache[elem] = m
        return m


@dataclass(frozen=True)
class ModuleMap:
    """An intertwiner source -> target; the matrix is (dim target) x (dim source)."""

    source: FdModule
    target: FdModule
    matrix: Mat

    def __post_init__(self):
        if self.source.alg != self.target.alg:
            raise AlgebraMismatch("module map across different algebras")
        if self.matrix.nrows != self.target.dim or self.matrix.ncols != self.source.dim:
            raise NotAModuleMap("matrix shape does not match modules")
        for gs, gt in zip(self.source.gen_action, self.target.gen_action):
            if (self.matrix @ gs) != (gt @ self.matrix):
                raise NotAModuleMap("matrix does not intertwine the actions")

    def compose(self, other: "ModuleMap") -> "ModuleMap":
        if other.target != self.source:
            raise NotAModuleMap("composition mismatch")
        return ModuleMap(other.source, self.target, self.matrix @ other.matrix)


# ---------------------------------------------------------------------------
# standard modules

def regular_module(alg: GroupAlgebra) -> FdModule:
    """kappa[G] acting on itself by left translation, basis = group elements."""
    mats = []
    elems = alg._elements
    n = len(elems)
    for g in alg.generators():
        rows = [[0] * n for _ in range(n)]
        for j, e in enumerate(elems):
            rows[alg.element_index(alg.mult(g, e))][j] = 1
        mats.append(Mat(alg.p, rows, ncols=n))
    return FdModule(alg, mats, validate=False)


def trivial_module(alg: GroupAlgebra) -> FdModule:
    one = Mat.identity(alg.p, 1)
    return FdModule(alg, [one] * len(alg.factors), validate=False)


def zero_module(alg: GroupAlgebra) -> FdModule:
    z = Mat.zero(alg.p, 0, 0)
    return FdModule(alg, [z] * len(alg.factors), validate=False)


def tensor_module(m: FdModule, n: FdModule) -> FdModule:
    """Internal tensor over kappa with the diagonal G-action."""
    if m.alg != n.alg:
        raise AlgebraMismatch("tensor_module needs a common algebra")
    mats = [a.kron(b) for a, b in zip(m.gen_action, n.gen_action)]
    return FdModule(m.alg, mats, validate=False)


def dual_module(m: FdModule) -> FdModule:
    """Dual module via the antipode: g acts by action(g^{-1}) transposed."""
    mats = []
    for g, order in zip(m.gen_action, m.alg.factors):
        acc = Mat.identity(m.alg.p, m.dim)
        for _ in range((order - 1) % order if order > 1 else 0):
            acc = g @ acc
        mats.append(acc.transpose())
    return FdModule(m.alg, mats, validate=False)


def dual_map_matrix(f: Mat) -> Mat:
    return f.transpose()


def direct_sum_module(m: FdModule, n: FdModule) -> FdModule:
    if m.alg != n.alg:
        raise AlgebraMismatch("direct sum needs a common algebra")
    p = m.alg.p
    mats = []
    for a, b in zip(m.gen_action, n.gen_action):
        mats.append(Mat.block(p, [[a, Mat.zero(p, a.nrows, b.ncols)], [Mat.zero(p, b.nrows, a.ncols), b]]))
    return FdModule(m.alg, mats, validate=False)


def external_product(m: FdModule, n: FdModule) -> FdModule:
    """Module over kappa[G1 x G2] from modules over kappa[G1], kappa[G2]."""
    if m.alg.p != n.alg.p:
        raise FieldMismatch("external product needs a common ground field")
    alg = GroupAlgebra(m.alg.p, m.alg.factors + n.alg.factors)
    im = Mat.identity(alg.p, m.dim)
    im2 = Mat.identity(alg.p, n.dim)
    mats = [a.kron(im2) for a in m.gen_action] + [im.kron(b) for b in n.gen_action]
    return FdModule(alg, mats, validate=False)


def inflate_module(m: FdModule, big: GroupAlgebra, at: int) -> FdModule:
    """Pull m back along the projection of big onto its factor block at `at`.

    m's algebra factors must match big.factors[at : at + len(m.alg.factors)]
    as a contiguous block; generators outside the block act as the identity.
    """
    if m.alg.p != big.p:
        raise FieldMismatch("inflation needs a common ground field")
    small = m.alg.factors
    if big.factors[at:at + len(small)] != small:
        raise AlgebraMismatch(
            f"factors {small} do not sit at position {at} of {big.factors}")
    ident = Mat.identity(big.p, m.dim)
    mats = []
    for i in range(len(big.factors)):
        if at <= i < at + len(small):
            mats.append(m.gen_action[i - at])
        else:
            mats.append(ident)
    return FdModule(big, mats, validate=False)


# ---------------------------------------------------------------------------
# hom spaces

_HOM_CACHE: dict = {}


def hom_basis(m: FdModule, n: FdModule) -> list:
    """kappa-basis of Hom_A(m, n) as a list of (dim n) x (dim m) matrices.

    Solves the intertwining system F.act_m(g) = act_n(g).F for all generators
    at once; the answer is cached since tensor terms repeat heavily.
    """
    if m.alg != n.alg:
        raise AlgebraMismatch("hom between modules over different algebras")
    ck = (m.key(), n.key())
    hit = _HOM_CACHE.get(ck)
    if hit is not None:
        return hit
    p = m.alg.p
    dn, dm = n.dim, m.dim
    if dn == 0 or dm == 0:
        _HOM_CACHE[ck] = []
        return []
    blocks = []
    i_m = Mat.identity(p, dm)
    i_n = Mat.identity(p, dn)
    for gm, gn in zip(m.gen_action, n.gen_action):
        # row-major vec:  vec(GN @ F) = (GN kron I) vec(F);  vec(F @ GM) = (I kron GM^T) vec(F)
        blocks.append(gn.kron(i_m) - i_n.kron(gm.transpose()))
    if not blocks:
        sys_mat = Mat.zero(p, 0, dn * dm)
    else:
        sys_mat = blocks[0]
        for b in blocks[1:]:
            sys_mat = sys_mat.vstack(b)
    kb = nullspace(sys_mat)
    out = []
    for j in range(kb.ncols):
        v = kb.col(j)
        rows = [v[i * dm : (i + 1) * dm] for i in range(dn)]
        out.append(Mat(p, rows, ncols=dm))
    _HOM_CACHE[ck] = out
    return out


def hom_coords_solver(m: FdModule, n: FdModule):
    """Returns (basis, to_coords) where to_coords maps an intertwiner matrix to
    its coefficient list in that basis (None if it is not in the span)."""
    basis = hom_basis(m, n)
    p = m.alg.p
    if not basis:
        def to_coords_empty(f: Mat):
            return [] if f.is_zero() else None
        return basis, to_coords_empty
    cols = [sum((list(b.rows[i]) for i in range(b.nrows)), []) for b in basis]
    bmat = Mat.from_cols(p, cols)

    def to_coords(f: Mat):
        v = sum((list(f.rows[i]) for i in range(f.nrows)), [])
        res = solve(bmat, Mat.col_vector(p, v))
        if res is None:
            return None
        return [res[0].rows[i][0] for i in range(len(basis))]

    return basis, to_coords


# ---------------------------------------------------------------------------
# projectivity

def action_map_matrix(m: FdModule) -> Mat:
    """Matrix of A tensor M -> M, a (x) v -> a.v, basis of A = group elements."""
    alg = m.alg
    blocks = [[m.action(e) for e in alg._elements]]
    return Mat.block(alg.p, blocks)


def free_module(alg: GroupAlgebra, rank_: int) -> FdModule:
    reg = regular_module(alg)
    out = reg
    if rank_ == 0:
        return zero_module(alg)
    for _ in range(rank_ - 1):
        out = direct_sum_module(out, reg)
    return out


def is_projective(m: FdModule) -> bool:
    """Section test: m is projective iff the action map A (x) m -> m splits.

    We solve for a module map s: m -> A (x) m with act . s = id.  Here
    A (x) m means the free module A^{dim m} (left translation on the A leg).
    """
    if m.dim == 0:
        return True
    alg = m.alg
    p = alg.p
    reg = regular_module(alg)
    dm = m.dim
    da = alg.dim
    # free module structure on A (x) m: g . (a (x) v) = (ga) (x) v
    i_m = Mat.identity(p, dm)
    free_gens = [g.kron(i_m) for g in reg.gen_action]
    # basis of A (x) m is (a, j) with a-major ordering, matching both kron and
    # the horizontal block layout below, so mu needs no column permutation
    mu = Mat.block(p, [[m.action(e) for e in alg._elements]])
    nm = da * dm
    i_nm = Mat.identity(p, nm)
    rowsys = []
    for gf, gm in zip(free_gens, m.gen_action):
        rowsys.append(gf.kron(i_m) - i_nm.kron(gm.transpose()))
    # mu . s = id_m, as linear conditions on vec(s)
    rowsys.append(mu.kron(Mat.identity(p, dm)))
    sys_mat = rowsys[0]
    for b in rowsys[1:]:
        sys_mat = sys_mat.vstack(b)
    rhs_rows = [0] * (sys_mat.nrows - dm * dm)
    ident_vec = []
    for i in range(dm):
        for j in range(dm):
            ident_vec.append(1 if i == j else 0)
    rhs = Mat.col_vector(p, rhs_rows + ident_vec)
    return solve(sys_mat, rhs) is not None


def is_projective_quick(m: FdModule) -> bool:
    """Rank test via the Sylow restriction; fast enough for large tensor terms.

    Restriction to the p-Sylow subgroup detects projectivity, and over the
    local algebra kappa[P] projective = free, which is a dimension count
    against the minimal cover rank.
    """
    if m.dim == 0:
        return True
    alg = m.alg
    syl = alg.sylow_data()
    p_order = 1
    syl_gens = []
    for (mexp, q), g in zip(syl, m.gen_action):
        p_order *= q
        if q > 1:
            acc = Mat.identity(alg.p, m.dim)
            for _ in range(mexp):
                acc = g @ acc
            syl_gens.append(acc)
    if p_order == 1:
        return True
    if m.dim % p_order != 0:
        return False
    ident = Mat.identity(alg.p, m.dim)
    stacked = None
    for s in syl_gens:
        d = s - ident
        stacked = d if stacked is None else stacked.hstack(d)
    r = rank(stacked)
    cover_rank = m.dim - r
    return cover_rank * p_order == m.dim


def radical_span(m: FdModule) -> Mat:
    """Columns spanning rad(A).m for the Sylow part (augmentation ideal action)."""
    alg = m.alg
    ident = Mat.identity(alg.p, m.dim)
    stacked = None
    for (mexp, q), g in zip(alg.sylow_data(), m.gen_action):
        if q > 1:
            acc = ident
            for _ in range(mexp):
                acc = g @ acc
            d = acc - ident
            stacked = d if stacked is None else stacked.hstack(d)
    if stacked is None:
        return Mat.zero(alg.p, m.dim, 0)
    # reduce to an independent spanning set
    r, pivots, _ = rref(stacked.transpose())
    rows = [r.rows[i] for i in range(len(pivots))]
    return Mat(alg.p, rows, ncols=m.dim).transpose()


def restrict_action(m: FdModule, basis_cols: Mat) -> tuple:
    """Module structure on the column span of basis_cols (must be invariant).

    Returns (submodule, inclusion ModuleMap).
    """
    alg = m.alg
    mats = []
    for g in m.gen_action:
        img = g @ basis_cols
        res = solve(basis_cols, img)
        if res is None:
            raise NotARepresentation("span is not invariant")
        mats.append(res[0])
    sub = FdModule(alg, mats, validate=False)
    return sub, ModuleMap(sub, m, basis_cols)


# ---------------------------------------------------------------------------
# isomorphism testing

@dataclass(frozen=True)
class IsoResult:
    kind: str  # "iso" | "no" | "inconclusive"
    witness: object = None  # ModuleMap when kind == "iso"
    detail: str = ""


DETERMINISTIC_CANDIDATE_CAP = 10_000
RANDOM_CANDIDATE_COUNT = 256


def is_isomorphic(m: FdModule, n: FdModule, seed: int = 0) -> IsoResult:
    """Search hom_basis coefficient space for an invertible intertwiner.

    Dimension or hom-dimension mismatches certify "no".  Candidate sweep is
    deterministic lexicographic up to a cap, then seeded random; running out
    of candidates is reported as inconclusive, never as "no".
    """
    if m.alg != n.alg:
        raise AlgebraMismatch("isomorphism across different algebras")
    if m.dim != n.dim:
        return IsoResult("no", detail="dimension mismatch")
    if m.dim == 0:
        return IsoResult("iso", ModuleMap(m, n, Mat.zero(m.alg.p, 0, 0)), "both zero")
    basis = hom_basis(m, n)
    if not basis:
        return IsoResult("no", detail="no nonzero module maps at all")
    if len(hom_basis(m, m)) != len(hom_basis(n, n)):
        return IsoResult("no", detail="endomorphism dimensions differ")
    p = m.alg.p
    h = len(basis)
    d = m.dim

    def try_coeffs(coeffs):
        f = None
        for c, b in zip(coeffs, basis):
            if c:
                t = b if c == 1 else b.scale(c)
                f = t if f is None else f + t
        if f is None:
            return None
        if rank(f) == d:
            return f
        return None

    total = p ** h if h * (p.bit_length()) < 64 else None
    if total is not None and total - 1 <= DETERMINISTIC_CANDIDATE_CAP:
        for coeffs in itertools.product(range(p), repeat=h):
            f = try_coeffs(coeffs)
            if f is not None:
                return IsoResult("iso", ModuleMap(m, n, f), "deterministic sweep")
    else:
        count = 0
        for coeffs in itertools.product(range(p), repeat=h):
            if count >= DETERMINISTIC_CANDIDATE_CAP:
                break
            count += 1
            f = try_coeffs(coeffs)
            if f is not None:
                return IsoResult("iso", ModuleMap(m, n, f), "deterministic sweep")
        rng = random.Random(seed)
        for _ in range(RANDOM_CANDIDATE_COUNT):
            coeffs = [rng.randrange(p) for _ in range(h)]
            f = try_coeffs(coeffs)
            if f is not None:
                return IsoResult("iso", ModuleMap(m, n, f), "random sweep")
    return IsoResult("inconclusive", detail="candidate budget exhausted")
