"""Exact rational linear algebra on dense coordinate vectors.

Vectors are lists of Rat in the coordinates of an ordered slice basis
(the formal basis order).  Everything here is plain fraction-free-ish
Gaussian elimination; no pivoting heuristics beyond "first usable
column", which is what makes the formal-basis style and costyle
deterministic.
"""

from .rational import Rat, ZERO


class Echelon:
    """Growing reduced row space with membership tests and reduction.

    Rows are kept reduced against each other; ``pivots`` maps pivot
    column -> row index.  ``reduce`` returns the residual of a vector
    against the space, optionally tracking the combination used.
    """

    def __init__(self, dim):
        self.dim = dim
        self.rows = []
        self.pivots = {}
        self.history = []  # combination of inserted vectors for each row

    def rank(self):
        return len(self.rows)

    def reduce(self, vec, want_combo=False):
        """Residual of vec modulo the row space; combo c with
        vec = residual + sum c_i * inserted_i when requested."""
        v = list(vec)
        combo = {}
        for col, ridx in sorted(self.pivots.items()):
            if v[col] == 0:
                continue
            factor = v[col]
            row = self.rows[ridx]
            for c in range(self.dim):
                if row[c] != 0:
                    v[c] -= factor * row[c]
            if want_combo:
                for idx, coef in self.history[ridx].items():
                    combo[idx] = combo.get(idx, ZERO) + factor * coef
        if want_combo:
            return v, combo
        return v

    def insert(self, vec, tag=None):
        """Reduce and add vec (tagged by its insertion index or ``tag``);
        returns True if the rank grew."""
        v, combo = self.reduce(vec, want_combo=True)
        piv = next((c for c in range(self.dim) if v[c] != 0), None)
        if piv is None:
            return False
        inv = Rat(1) / v[piv]
        v = [x * inv for x in v]
        own = {} if tag is None else {tag: inv}
        for idx, coef in combo.items():
            own[idx] = own.get(idx, ZERO) - inv * coef
        # keep rows mutually reduced
        for col, ridx in list(self.pivots.items()):
            row = self.rows[ridx]
            if row[piv] != 0:
                f = row[piv]
                self.rows[ridx] = [a - f * b for a, b in zip(row, v)]
                hist = self.history[ridx]
                for idx, coef in own.items():
                    hist[idx] = hist.get(idx, ZERO) - f * coef
        self.pivots[piv] = len(self.rows)
        self.rows.append(v)
        self.history.append(own)
        return True

    def contains(self, vec):
        return all(x == 0 for x in self.reduce(vec))


def nullspace(columns, dim):
    """Basis of {c : sum_i c_i columns_i = 0}.

    columns: list of coordinate vectors (length dim).  Returns a list of
    coefficient vectors (length len(columns)), echelonized with free
    variables chosen in column order (earlier columns preferred as free).
    """
    ncols = len(columns)
    if ncols == 0:
        return []
    # Row-reduce the transpose-augmented system A c = 0.
    rows = [[columns[c][r] for c in range(ncols)] for r in range(dim)]
    pivots = []
    rank_rows = []
    for row in rows:
        v = list(row)
        for piv, prow in zip(pivots, rank_rows):
            if v[piv] != 0:
                f = v[piv]
                v = [a - f * b for a, b in zip(v, prow)]
        piv = next((c for c in range(ncols) if v[c] != 0), None)
        if piv is None:
            continue
        inv = Rat(1) / v[piv]
        v = [x * inv for x in v]
        for i, (p2, r2) in enumerate(zip(pivots, rank_rows)):
            if r2[piv] != 0:
                f = r2[piv]
                rank_rows[i] = [a - f * b for a, b in zip(r2, v)]
        pivots.append(piv)
        rank_rows.append(v)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        vec = [ZERO] * ncols
        vec[f] = Rat(1)
        for piv, row in zip(pivots, rank_rows):
            if row[f] != 0:
                vec[piv] = -row[f]
        basis.append(vec)
    return basis


def solve_in_span(columns, target, dim):
    """Costyle solve: coefficients c with sum c_i columns_i = target,
    or None if target is outside the span.

    Gaussian elimination with pivot search in column order; free
    variables are zero, so the earliest usable generators realize the
    elimination (formal basis costyle).
    """
    ncols = len(columns)
    if all(x == 0 for x in target):
        return [ZERO] * ncols
    if ncols == 0:
        return None
    ech = Echelon(dim)
    for i, col in enumerate(columns):
        ech.insert(col, tag=i)
    resid, combo = ech.reduce(list(target), want_combo=True)
    if any(x != 0 for x in resid):
        return None
    out = [ZERO] * ncols
    for idx, coef in combo.items():
        out[idx] = coef
    return out


def complement_split(w_vectors, dim):
    """Formal-basis-style complement of W = span(w_vectors) in F^dim.

    Returns (complement_indices, project) where complement_indices are the
    greedily chosen coordinate indices e_i with e_i not in
    W + span(earlier chosen), and project(vec) = the W-part of vec under
    V = W (+) span(complement).
    """
    grown = Echelon(dim)
    for v in w_vectors:
        grown.insert(list(v))
    complement = []
    for i in range(dim):
        unit = [ZERO] * dim
        unit[i] = Rat(1)
        if grown.insert(unit):
            complement.append(i)

    # Mixed basis (W vectors first, then complement units) decomposes any
    # vector of the slice uniquely; the W-part is read off the combination.
    mixed = Echelon(dim)
    for i, wv in enumerate(w_vectors):
        mixed.insert(list(wv), tag=("w", i))
    for ci in complement:
        unit = [ZERO] * dim
        unit[ci] = Rat(1)
        mixed.insert(unit, tag=("c", ci))

    def project(vec):
        resid, combo = mixed.reduce(list(vec), want_combo=True)
        if any(x != 0 for x in resid):
            raise ValueError("vector outside W + complement")
        out = [ZERO] * dim
        for (kind, idx), coef in combo.items():
            if kind == "w":
                wv = w_vectors[idx]
                for c in range(dim):
                    if wv[c] != 0:
                        out[c] += coef * wv[c]
        return out

    return complement, project
