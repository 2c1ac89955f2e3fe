# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: minimalization, lcm closure, Koszul homology, ranks.

Twin of ``pykernels``; byte-identical results on every input.  The
exact-rank path works in int64 with a magnitude guard of 2^30 and raises
OverflowError when an entry would leave the guarded range; the dispatch
layer reruns that call on the pure backend, whose Python ints cannot
overflow.
"""

from cpython.bytes cimport PyBytes_FromStringAndSize
from libc.stdlib cimport free, malloc
from libc.string cimport memset

from ..errors import ResourceLimitError

cdef extern from *:
    int __builtin_popcountll(unsigned long long x)

BACKEND = "compiled"

cdef long long LIMIT = 1 << 30
cdef int MAX_SUPPORT = 22


cdef long long *_flatten(list vecs, Py_ssize_t m, Py_ssize_t n) except NULL:
    cdef long long *flat = <long long *> malloc(m * n * sizeof(long long))
    if flat == NULL:
        raise MemoryError()
    cdef Py_ssize_t i, k
    cdef tuple row
    for i in range(m):
        row = vecs[i]
        for k in range(n):
            flat[i * n + k] = row[k]
    return flat


def minimal_indices(list vecs):
    """See pykernels.minimal_indices."""
    cdef Py_ssize_t m = len(vecs)
    if m == 0:
        return []
    cdef Py_ssize_t n = len(<tuple> vecs[0])
    cdef long long *flat = _flatten(vecs, m, n)
    cdef long long *degs = <long long *> malloc(m * sizeof(long long))
    cdef Py_ssize_t *kept = <Py_ssize_t *> malloc(m * sizeof(Py_ssize_t))
    if degs == NULL or kept == NULL:
        free(flat)
        free(degs)
        free(kept)
        raise MemoryError()
    cdef Py_ssize_t i, j, jj, k, nkept = 0
    cdef long long d
    cdef bint dominated, ok
    out = []
    try:
        for i in range(m):
            d = 0
            for k in range(n):
                d += flat[i * n + k]
            degs[i] = d
        for i in range(m):
            dominated = False
            for jj in range(nkept):
                j = kept[jj]
                if degs[j] >= degs[i]:
                    break
                ok = True
                for k in range(n):
                    if flat[j * n + k] > flat[i * n + k]:
                        ok = False
                        break
                if ok:
                    dominated = True
                    break
            if not dominated:
                kept[nkept] = i
                nkept += 1
                out.append(i)
        return out
    finally:
        free(flat)
        free(degs)
        free(kept)


def lcm_closure(list gens, long long cap):
    """See pykernels.lcm_closure."""
    cdef Py_ssize_t m = len(gens)
    if m == 0:
        return []
    cdef Py_ssize_t n = len(<tuple> gens[0])
    cdef long long *flat = _flatten(gens, m, n)
    cdef long long *buf = <long long *> malloc(n * sizeof(long long))
    cdef long long *cur = <long long *> malloc(n * sizeof(long long))
    if buf == NULL or cur == NULL:
        free(flat)
        free(buf)
        free(cur)
        raise MemoryError()
    cdef Py_ssize_t g, k
    cdef long long x, y
    cdef bint changed
    cdef bytes key
    cdef const char *ptr
    cdef const long long *bvec
    seen = set()
    frontier = []
    try:
        for g in range(m):
            key = PyBytes_FromStringAndSize(
                <char *> (flat + g * n), n * sizeof(long long))
            if key not in seen:
                seen.add(key)
                frontier.append(key)
        while frontier:
            fresh = []
            for item in frontier:
                ptr = <const char *> (<bytes> item)
                bvec = <const long long *> ptr
                for g in range(m):
                    changed = False
                    for k in range(n):
                        x = bvec[k]
                        y = flat[g * n + k]
                        if y > x:
                            buf[k] = y
                            changed = True
                        else:
                            buf[k] = x
                    if not changed:
                        continue
                    key = PyBytes_FromStringAndSize(
                        <char *> buf, n * sizeof(long long))
                    if key not in seen:
                        seen.add(key)
                        if len(seen) > cap:
                            raise ResourceLimitError(
                                f"lcm lattice exceeded cap of {cap} multidegrees",
                                cap)
                        fresh.append(key)
            frontier = fresh
        out = []
        for item in seen:
            ptr = <const char *> (<bytes> item)
            bvec = <const long long *> ptr
            out.append(tuple([bvec[k] for k in range(n)]))
        out.sort()
        return out
    finally:
        free(flat)
        free(buf)
        free(cur)


cdef long long _xgcd(long long a, long long b, long long *px, long long *py):
    # a, b > 0; returns g with px*a + py*b == g
    cdef long long x = 1, nx = 0, y = 0, ny = 1, g = a, ng = b, q, t
    while ng:
        q = g / ng
        t = nx; nx = x - q * nx; x = t
        t = ny; ny = y - q * ny; y = t
        t = ng; ng = g - q * ng; g = t
    px[0] = x
    py[0] = y
    return g


cdef long long _gcd_ll(long long a, long long b):
    if a < 0:
        a = -a
    if b < 0:
        b = -b
    cdef long long t
    while b:
        t = a % b
        a = b
        b = t
    return a


cdef void _strip_content(long long *v, Py_ssize_t start, Py_ssize_t nrows):
    # divide v[start:] by its gcd; only the rank is wanted, so scaling a
    # single inserted vector is harmless and keeps entries small
    cdef long long g = 0
    cdef Py_ssize_t i
    for i in range(start, nrows):
        g = _gcd_ll(g, v[i])
        if g == 1:
            return
    if g > 1:
        for i in range(start, nrows):
            v[i] /= g


cdef struct Echelon:
    long long *rows      # rank * nrows storage
    Py_ssize_t *pivot    # nrows entries: row index -> basis slot or -1
    Py_ssize_t nrows
    Py_ssize_t nbasis


cdef int _echelon_init(Echelon *e, Py_ssize_t nrows, Py_ssize_t maxrank) except -1:
    e.rows = <long long *> malloc(maxrank * nrows * sizeof(long long))
    e.pivot = <Py_ssize_t *> malloc(nrows * sizeof(Py_ssize_t))
    if e.rows == NULL or e.pivot == NULL:
        free(e.rows)
        free(e.pivot)
        raise MemoryError()
    e.nrows = nrows
    e.nbasis = 0
    cdef Py_ssize_t i
    for i in range(nrows):
        e.pivot[i] = -1
    return 0


cdef void _echelon_free(Echelon *e):
    free(e.rows)
    free(e.pivot)


cdef int _insert_exact(Echelon *e, long long *v) except -1:
    """Insert column v (length e.nrows) into the integer echelon basis.

    Returns 1 if the rank grew.  Raises OverflowError if an entry would
    leave the guarded int64 range.
    """
    cdef Py_ssize_t lead = -1, i, k, slot, prev
    cdef long long *w
    cdef long long a, b, q, g, x, y, mbg, ag, wi, vi
    for i in range(e.nrows):
        if v[i]:
            lead = i
            break
    while lead >= 0:
        _strip_content(v, lead, e.nrows)
        slot = e.pivot[lead]
        if slot < 0:
            w = e.rows + e.nbasis * e.nrows
            for i in range(e.nrows):
                w[i] = v[i]
            e.pivot[lead] = e.nbasis
            e.nbasis += 1
            return 1
        w = e.rows + slot * e.nrows
        a = w[lead]
        b = v[lead]
        if b % a == 0:
            q = b / a
            for k in range(lead, e.nrows):
                v[k] -= q * w[k]
                if v[k] > LIMIT or v[k] < -LIMIT:
                    raise OverflowError("exact-rank entry left guarded range")
        else:
            g = _xgcd(a if a > 0 else -a, b if b > 0 else -b, &x, &y)
            if a < 0:
                x = -x
            if b < 0:
                y = -y
            mbg = -(b / g)
            ag = a / g
            for k in range(lead, e.nrows):
                wi = w[k]
                vi = v[k]
                w[k] = x * wi + y * vi
                v[k] = mbg * wi + ag * vi
                if (w[k] > LIMIT or w[k] < -LIMIT or
                        v[k] > LIMIT or v[k] < -LIMIT):
                    raise OverflowError("exact-rank entry left guarded range")
            _strip_content(w, lead, e.nrows)
        prev = lead
        lead = -1
        for i in range(prev + 1, e.nrows):
            if v[i]:
                lead = i
                break
    return 0


cdef long long _modpow(long long base, long long exp, long long p):
    cdef long long r = 1
    base %= p
    while exp:
        if exp & 1:
            r = (r * base) % p
        base = (base * base) % p
        exp >>= 1
    return r


cdef int _insert_mod_p(Echelon *e, long long *v, long long p) except -1:
    cdef Py_ssize_t lead = -1, i, k, slot, nxt
    cdef long long *w
    cdef long long q
    for i in range(e.nrows):
        v[i] %= p
        if v[i] < 0:
            v[i] += p
    for i in range(e.nrows):
        if v[i]:
            lead = i
            break
    while lead >= 0:
        slot = e.pivot[lead]
        if slot < 0:
            w = e.rows + e.nbasis * e.nrows
            for i in range(e.nrows):
                w[i] = v[i]
            e.pivot[lead] = e.nbasis
            e.nbasis += 1
            return 1
        w = e.rows + slot * e.nrows
        q = (v[lead] * _modpow(w[lead], p - 2, p)) % p
        nxt = -1
        for k in range(lead, e.nrows):
            v[k] = (v[k] - q * w[k]) % p
            if v[k] < 0:
                v[k] += p
            if nxt < 0 and v[k]:
                nxt = k
        lead = nxt
    return 0


def rank_exact(list cols, Py_ssize_t nrows):
    """See pykernels.rank_exact; raises OverflowError past the int64 guard."""
    cdef Py_ssize_t ncols = len(cols)
    cdef Py_ssize_t maxrank = nrows if nrows < ncols else ncols
    if ncols == 0 or nrows == 0:
        return 0
    cdef Echelon e
    _echelon_init(&e, nrows, maxrank)
    cdef long long *v = <long long *> malloc(nrows * sizeof(long long))
    if v == NULL:
        _echelon_free(&e)
        raise MemoryError()
    cdef Py_ssize_t i, k, rank = 0
    try:
        for i in range(ncols):
            col = cols[i]
            for k in range(nrows):
                v[k] = col[k]
                if v[k] > LIMIT or v[k] < -LIMIT:
                    raise OverflowError("exact-rank entry left guarded range")
            rank += _insert_exact(&e, v)
        return rank
    finally:
        free(v)
        _echelon_free(&e)


def rank_mod_p(list cols, Py_ssize_t nrows, long long p):
    """See pykernels.rank_mod_p."""
    cdef Py_ssize_t ncols = len(cols)
    if ncols == 0 or nrows == 0:
        return 0
    cdef Py_ssize_t maxrank = nrows if nrows < ncols else ncols
    cdef Echelon e
    _echelon_init(&e, nrows, maxrank)
    cdef long long *v = <long long *> malloc(nrows * sizeof(long long))
    if v == NULL:
        _echelon_free(&e)
        raise MemoryError()
    cdef Py_ssize_t i, k, rank = 0
    try:
        for i in range(ncols):
            col = cols[i]
            for k in range(nrows):
                v[k] = col[k]
            rank += _insert_mod_p(&e, v, p)
        return rank
    finally:
        free(v)
        _echelon_free(&e)


def homology_ranks(list facets, int s, long long charac):
    """See pykernels.homology_ranks."""
    out = [0] * (s + 1)
    cdef Py_ssize_t nf = len(facets)
    if nf == 0:
        return out
    if s > MAX_SUPPORT:
        raise ResourceLimitError(
            f"complex on {s} vertices exceeds the {MAX_SUPPORT}-vertex kernel cap",
            MAX_SUPPORT)
    cdef Py_ssize_t size = (<Py_ssize_t> 1) << s
    cdef char *face = <char *> malloc(size)
    cdef int *idx = <int *> malloc(size * sizeof(int))
    cdef Py_ssize_t *counts = <Py_ssize_t *> malloc((s + 2) * sizeof(Py_ssize_t))
    cdef Py_ssize_t *ranks = <Py_ssize_t *> malloc((s + 2) * sizeof(Py_ssize_t))
    if face == NULL or idx == NULL or counts == NULL or ranks == NULL:
        free(face); free(idx); free(counts); free(ranks)
        raise MemoryError()
    memset(face, 0, size)
    cdef unsigned long long a, sub, mm, bit
    cdef Py_ssize_t i, m, c, maxcard, nrows, h
    cdef int sign
    cdef long long *v = NULL
    cdef unsigned long long **by_card = NULL
    cdef Py_ssize_t *fill = NULL
    cdef Echelon e
    cdef bint have_echelon = False
    try:
        for i in range(nf):
            a = facets[i]
            sub = a
            while True:
                face[sub] = 1
                if sub == 0:
                    break
                sub = (sub - 1) & a
        for c in range(s + 2):
            counts[c] = 0
            ranks[c] = 0
        for m in range(size):
            if face[m]:
                counts[__builtin_popcountll(m)] += 1
        maxcard = 0
        for c in range(s + 1):
            if counts[c]:
                maxcard = c
        by_card = <unsigned long long **> malloc((s + 1) * sizeof(void *))
        fill = <Py_ssize_t *> malloc((s + 1) * sizeof(Py_ssize_t))
        if by_card == NULL or fill == NULL:
            raise MemoryError()
        for c in range(s + 1):
            by_card[c] = NULL
        for c in range(s + 1):
            if counts[c]:
                by_card[c] = <unsigned long long *> malloc(
                    counts[c] * sizeof(unsigned long long))
                if by_card[c] == NULL:
                    raise MemoryError()
            fill[c] = 0
        for m in range(size):
            if face[m]:
                c = __builtin_popcountll(m)
                idx[m] = <int> fill[c]
                by_card[c][fill[c]] = m
                fill[c] += 1
        nrows = 1
        for c in range(maxcard):
            if counts[c] > nrows:
                nrows = counts[c]
        v = <long long *> malloc(nrows * sizeof(long long))
        if v == NULL:
            raise MemoryError()
        for c in range(1, maxcard + 1):
            if counts[c] == 0 or counts[c - 1] == 0:
                continue
            nrows = counts[c - 1]
            _echelon_init(&e, nrows,
                          nrows if nrows < counts[c] else counts[c])
            have_echelon = True
            for i in range(counts[c]):
                m = <Py_ssize_t> by_card[c][i]
                for h in range(nrows):
                    v[h] = 0
                sign = 1
                mm = m
                while mm:
                    bit = mm & (~mm + 1)
                    v[idx[m & ~bit]] = sign
                    sign = -sign
                    mm &= mm - 1
                if charac == 0:
                    _insert_exact(&e, v)
                else:
                    _insert_mod_p(&e, v, charac)
            ranks[c] = e.nbasis
            _echelon_free(&e)
            have_echelon = False
        for c in range(maxcard + 1):
            h = counts[c] - ranks[c] - ranks[c + 1]
            if h:
                out[c] = h
        return out
    finally:
        if have_echelon:
            _echelon_free(&e)
        free(v)
        if by_card != NULL:
            for c in range(s + 1):
                free(by_card[c])
        free(by_card)
        free(fill)
        free(face)
        free(idx)
        free(counts)
        free(ranks)


def koszul_facets(tuple b, list gens):
    """Support positions and facet bitmasks of the upper Koszul complex at b.

    Returns ``(support, facets)``: support is the 0-based list of
    positions with b positive; facets are maximal bitmasks (over the
    support, lowest bit = first support position) of the faces W such
    that x^b / x^W lies in the ideal.  A generator g dividing x^b
    contributes the mask of support positions where g < b: any W
    avoiding the tight positions of some such g keeps g dividing the
    quotient.
    """
    cdef Py_ssize_t n = len(b)
    cdef Py_ssize_t m = len(gens)
    cdef Py_ssize_t i, k, j
    support = [k for k in range(n) if b[k] > 0]
    cdef Py_ssize_t s = len(support)
    cdef long long *bvec = <long long *> malloc(n * sizeof(long long))
    cdef Py_ssize_t *spos = <Py_ssize_t *> malloc(
        (s if s else 1) * sizeof(Py_ssize_t))
    if bvec == NULL or spos == NULL:
        free(bvec)
        free(spos)
        raise MemoryError()
    cdef unsigned long long amask, full
    cdef bint div
    cdef long long gk
    cdef tuple g
    masks = []
    try:
        for k in range(n):
            bvec[k] = b[k]
        for i in range(s):
            spos[i] = support[i]
        full = ((<unsigned long long> 1) << s) - 1 if s else 0
        for j in range(m):
            g = gens[j]
            div = True
            for k in range(n):
                gk = g[k]
                if gk > bvec[k]:
                    div = False
                    break
            if not div:
                continue
            amask = 0
            for i in range(s):
                k = spos[i]
                if (<long long> g[k]) < bvec[k]:
                    amask |= (<unsigned long long> 1) << i
            masks.append(amask)
        masks = sorted(set(masks))
        facets = [a for a in masks
                  if not any(a != c and (a & c) == a for c in masks)]
        return support, facets
    finally:
        free(bvec)
        free(spos)


def koszul_homology(tuple b, list gens, long long charac):
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
