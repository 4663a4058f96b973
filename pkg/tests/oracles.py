"""Independent oracles for the test suite.

Nothing here uses the package's resolution or hom-complex machinery beyond
raw matrices and the trivial-group vector-space wrapper, so agreement between
these oracles and the engine is meaningful evidence.

normalized_cochain_complex builds the normalized cochain complex of a cyclic
group with coefficients in the prime field: degree-n cochains are functions
on n-tuples of non-identity elements, and the usual alternating-sum
differential drops every term whose adjacent product hits the identity.

cup_class multiplies two cocycles by the front-face/back-face formula and
returns the product's coordinates in a chosen homology basis.
"""

from itertools import product as iproduct

from catidem.complexes import Complex, homology
from catidem.hom_rings import scalar_algebra, _vector_space
from catidem.homotopy import homology_class_reps
from catidem.linalg import Mat


def _tuples(order, n):
    """All n-tuples of non-identity exponents 1..order-1, in lex order."""
    return list(iproduct(range(1, order), repeat=n))


def normalized_cochain_complex(p, order, top):
    """Cochain complex of Z/order with F_p coefficients in degrees 0..top."""
    alg0 = scalar_algebra(p)
    dims = [(order - 1) ** n for n in range(top + 1)]
    terms = [_vector_space(alg0, d) for d in dims]
    diffs = []
    for n in range(top):
        src = _tuples(order, n)
        tgt = _tuples(order, n + 1)
        src_index = {t: i for i, t in enumerate(src)}
        rows = [[0] * dims[n] for _ in range(dims[n + 1])]
        for r, t in enumerate(tgt):
            # delta f (a_0,...,a_n) = f(a_1..a_n)
            #   + sum_i (-1)^i f(..., a_{i-1}+a_i, ...)   [dropped if sum = e]
            #   + (-1)^{n+1} f(a_0..a_{n-1})
            contributions = [(t[1:], 1)]
            for i in range(1, n + 1):
                merged = (t[i - 1] + t[i]) % order
                if merged != 0:
                    s = t[:i - 1] + (merged,) + t[i + 1:]
                    contributions.append((s, (-1) ** i))
            contributions.append((t[:-1], (-1) ** (n + 1)))
            for s, c in contributions:
                rows[r][src_index[s]] = (rows[r][src_index[s]] + c) % p
        diffs.append(Mat(p, rows, ncols=dims[n]))
    return Complex(alg0, 0, top, terms, diffs)


def cohomology_dims(p, order, top):
    cx = normalized_cochain_complex(p, order, top + 1)
    return {n: homology(cx, n).dim for n in range(top + 1)}


def cocycle_reps(cx, n):
    """Homology basis at degree n as explicit cochain column vectors."""
    hd = homology(cx, n)
    reps, coord_fn = homology_class_reps(hd)
    return reps, coord_fn


def cup_vector(p, order, f_vec, m, g_vec, n):
    """Coordinates of the cup product cochain of an m- and an n-cochain."""
    src_m = _tuples(order, m)
    src_n = _tuples(order, n)
    idx_m = {t: i for i, t in enumerate(src_m)}
    idx_n = {t: i for i, t in enumerate(src_n)}
    out = []
    for t in _tuples(order, m + n):
        a = f_vec[idx_m[t[:m]]]
        b = g_vec[idx_n[t[m:]]]
        out.append((a * b) % p)
    return out


def cup_class(p, order, cx, m, n):
    """Class coordinates of (generator of H^m) cup (generator of H^n), in the
    H^{m+n} basis of the given cochain complex.  Assumes dims are all 1, which
    holds for cyclic groups of prime order with matching coefficients."""
    reps_m, _ = cocycle_reps(cx, m)
    reps_n, _ = cocycle_reps(cx, n)
    reps_sum, coord_fn = cocycle_reps(cx, m + n)
    f_vec = [reps_m.rows[i][0] for i in range(reps_m.nrows)]
    g_vec = [reps_n.rows[i][0] for i in range(reps_n.nrows)]
    cup = cup_vector(p, order, f_vec, m, g_vec, n)
    return coord_fn(Mat.col_vector(p, cup))


def brute_pair_count(a_dims, b_dims, k):
    """Total dimension of the degree-k part of a tensor bigrading."""
    return sum(da * b_dims.get(k - i, 0) for i, da in a_dims.items())
