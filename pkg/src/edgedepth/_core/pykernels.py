"""Pure-Python kernels.

Same contracts as the compiled twin in ``_kernels.pyx``.  Selected at
import time by ``edgedepth._core`` when the extension is missing or
``EDGEDEPTH_PURE`` is set, and used as the reference implementation in
the kernel equivalence tests.  Exponents and matrix entries are plain
Python ints, so the exact-rank path never overflows.
"""

from __future__ import annotations

from ..errors import ResourceLimitError

BACKEND = "pure"

MAX_SUPPORT = 22


def minimal_indices(vecs):
    """Indices of componentwise-minimal vectors.

    ``vecs`` must be distinct exponent tuples sorted ascending by
    (total degree, lex).  A vector is dropped iff some other vector
    divides it; only strictly smaller-degree vectors can divide, so the
    scan per vector stops at its own degree class.
    """
    degs = [sum(v) for v in vecs]
    kept = []
    for i, v in enumerate(vecs):
        di = degs[i]
        dominated = False
        for j in kept:
            if degs[j] >= di:
                break
            w = vecs[j]
            for a, b in zip(w, v):
                if a > b:
                    break
            else:
                dominated = True
                break
        if not dominated:
            kept.append(i)
    return kept


def lcm_closure(gens, cap):
    """All joins (componentwise max) of nonempty subsets of ``gens``.

    Breadth-first closure under join with the generators; deduplicated.
    Raises ResourceLimitError when the closure grows past ``cap``.
    """
    seen = set(gens)
    frontier = list(seen)
    while frontier:
        fresh = []
        for b in frontier:
            for g in gens:
                j = tuple(x if x >= y else y for x, y in zip(b, g))
                if j not in seen:
                    seen.add(j)
                    if len(seen) > cap:
                        raise ResourceLimitError(
                            f"lcm lattice exceeded cap of {cap} multidegrees", cap
                        )
                    fresh.append(j)
        frontier = fresh
    return sorted(seen)


def _xgcd(a, b):
    x, nx, y, ny, g, ng = 1, 0, 0, 1, a, b
    while ng:
        q = g // ng
        x, nx = nx, x - q * nx
        y, ny = ny, y - q * ny
        g, ng = ng, g - q * ng
    return x, y, g


def _strip_content(v, start, nrows):
    # divide v[start:] by its gcd; only the rank is wanted, so scaling a
    # single inserted vector is harmless and keeps entries small
    from math import gcd

    g = 0
    for i in range(start, nrows):
        g = gcd(g, v[i])
        if g == 1:
            return
    if g > 1:
        for i in range(start, nrows):
            v[i] //= g


def rank_exact(cols, nrows):
    """Rank over the rationals of the integer matrix with the given columns.

    Columns are inserted one by one into a row-echelon basis of the
    column space; gcd-based row combinations keep all arithmetic in the
    integers, so the result is exact.
    """
    basis = {}
    rank = 0
    for col in cols:
        v = list(col)
        while True:
            lead = -1
            for i, x in enumerate(v):
                if x:
                    lead = i
                    break
            if lead < 0:
                break
            _strip_content(v, lead, nrows)
            w = basis.get(lead)
            if w is None:
                basis[lead] = v
                rank += 1
                break
            a, b = w[lead], v[lead]
            if b % a == 0:
                q = b // a
                for i in range(lead, nrows):
                    v[i] -= q * w[i]
            else:
                x, y, g = _xgcd(a, b)
                mbg, ag = -b // g, a // g
                for i in range(lead, nrows):
                    wi, vi = w[i], v[i]
                    w[i] = x * wi + y * vi
                    v[i] = mbg * wi + ag * vi
                _strip_content(w, lead, nrows)
    return rank


def rank_mod_p(cols, nrows, p):
    """Rank of the matrix with the given columns over the field F_p."""
    basis = {}
    rank = 0
    for col in cols:
        v = [x % p for x in col]
        lead = next((i for i in range(nrows) if v[i]), -1)
        while lead >= 0:
            w = basis.get(lead)
            if w is None:
                basis[lead] = v
                rank += 1
                break
            q = (v[lead] * pow(w[lead], p - 2, p)) % p
            nxt = -1
            for k in range(lead, nrows):
                v[k] = (v[k] - q * w[k]) % p
                if nxt < 0 and v[k]:
                    nxt = k
            lead = nxt
    return rank


def homology_ranks(facets, s, charac):
    """Reduced homology ranks of a simplicial complex on ``s`` vertices.

    ``facets`` are vertex-subset bitmasks; the complex is the downward
    closure of their union.  Returns a list ``h`` of length s + 1 with
    ``h[d + 1]`` the rank of the reduced homology in dimension d, for
    d = -1 .. s - 1, over Q (char 0) or F_char.  An empty facet list is
    the void complex: all ranks zero.  The single facet 0 (the empty
    face alone) has rank 1 in dimension -1.
    """
    out = [0] * (s + 1)
    if not facets:
        return out
    if s > MAX_SUPPORT:
        raise ResourceLimitError(
            f"complex on {s} vertices exceeds the {MAX_SUPPORT}-vertex kernel cap",
            MAX_SUPPORT,
        )
    size = 1 << s
    face = bytearray(size)
    for a in facets:
        sub = a
        while True:
            face[sub] = 1
            if sub == 0:
                break
            sub = (sub - 1) & a
    by_card = [[] for _ in range(s + 1)]
    for m in range(size):
        if face[m]:
            by_card[bin(m).count("1")].append(m)
    counts = [len(lst) for lst in by_card]
    maxcard = max(c for c in range(s + 1) if counts[c])
    # ranks[c] = rank of the boundary map from c-sets to (c-1)-sets
    ranks = [0] * (s + 2)
    for c in range(1, maxcard + 1):
        if not counts[c] or not counts[c - 1]:
            continue
        index = {m: i for i, m in enumerate(by_card[c - 1])}
        cols = []
        nrows = counts[c - 1]
        for m in by_card[c]:
            col = [0] * nrows
            sign = 1
            mm = m
            while mm:
                bit = mm & -mm
                col[index[m & ~bit]] = sign
                sign = -sign
                mm &= mm - 1
            cols.append(col)
        if charac == 0:
            ranks[c] = rank_exact(cols, nrows)
        else:
            ranks[c] = rank_mod_p(cols, nrows, charac)
    for c in range(0, maxcard + 1):
        h = counts[c] - ranks[c] - ranks[c + 1]
        if h:
            out[c] = h
    return out


def koszul_facets(b, gens):
    """Support positions and facet bitmasks of the upper Koszul complex at b.

    A generator g dividing x^b allows exactly the faces W avoiding the
    support positions where g is tight (g_i = b_i): removing any other
    set of support variables keeps g dividing the quotient.  The complex
    is therefore the union of the full simplices on those allowed sets,
    and its facets are the maximal ones.
    """
    n = len(b)
    support = [k for k in range(n) if b[k] > 0]
    pos = {k: i for i, k in enumerate(support)}
    masks = set()
    for g in gens:
        if all(ge <= be for ge, be in zip(g, b)):
            amask = 0
            for k in support:
                if g[k] < b[k]:
                    amask |= 1 << pos[k]
            masks.add(amask)
    masks = sorted(masks)
    facets = [a for a in masks if not any(a != c and (a & c) == a for c in masks)]
    return support, facets


def koszul_homology(b, gens, charac):
    """Reduced homology ranks of the upper Koszul complex at b.

    Output as in homology_ranks for the complex on the support of b.
    Cones (a support position left slack by every dividing generator)
    are contractible and skipped without building the complex.
    """
    support, facets = koszul_facets(b, gens)
    s = len(support)
    if not facets:
        return [0] * (s + 1)
    if s > 0:
        inter = facets[0]
        for a in facets:
            inter &= a
        if inter:
            return [0] * (s + 1)
    return homology_ranks(facets, s, charac)
