"""Per-grade, per-level elimination engine.

Levels are repeated sweeps over the grade filtration:

* Pass 1 solves each grade slice with grade-homogeneous generators
  through their leading action on the rotation Y_10 (the classical
  first-level normal form) and records the exact kernel of that map.
* Each later pass re-derives, against the current field, the space of
  generator combinations that act trivially on every grade below the
  target, and spends their actions on the target slice.  Complements are
  chosen in formal-basis order; when several generators can realize an
  elimination the earliest independent columns win (the costyle).

The distorted scheme withholds the time monomials Z_{N0} mu^b from all
passes below the release level 2*N0 + 1 and spends them there against
the amplitude tail X_(2N0+1)(2N0) mu^b.  Spending them shifts lower
grades, which is legal only inside the declared invariant degenerate
spaces; every application asserts that.
"""

from dataclasses import dataclass, field as _dc_field

from .errors import (
    BadLinearPart,
    DegenerateInput,
    DimensionMismatch,
    HopfnfError,
    NoParametricDimension,
    NotGeneric,
)
from .lie import (
    GeneratorTriple,
    apply_linear_reparam,
    apply_triple,
    differential,
)
from .linalg import Echelon, complement_split, nullspace, solve_in_span
from .rational import Rat, ZERO
from .series import ParamSeries, ParamVectorField, TimeSeries
from .slices import param_slice, state_slice, time_slice
from .terms import BasisTerm, Grading, TimeTerm, grade_state, grade_time, mu_abs, mu_unit

MODE_STATE = "state"
MODE_STATE_PARAM = "state+param"
MODE_STATE_TIME = "state+time"
MODE_FULL = "full"
MODES = (MODE_STATE, MODE_STATE_PARAM, MODE_STATE_TIME, MODE_FULL)

STYLE_SPECTRAL = "spectral"
STYLE_DISTORTED = "distorted"
STYLES = (STYLE_SPECTRAL, STYLE_DISTORTED)

AUTO = "auto"

_FIXPOINT_CAP = 40


def _uses_time(mode):
    return mode in (MODE_STATE_TIME, MODE_FULL)


def _uses_param(mode):
    return mode in (MODE_STATE_PARAM, MODE_FULL)


@dataclass
class NormalizationConfig:
    """Knobs for a normalization run.

    alpha and max_level accept the string "auto": alpha becomes
    2*N0 + 1 once the parametric dimension N0 is detected, max_level
    becomes the collapse level 2*N0 + 1 (one confirmation sweep is
    always added on top).
    """

    degree: int
    mode: str = MODE_FULL
    style: str = STYLE_SPECTRAL
    alpha: object = AUTO
    max_level: object = AUTO
    alt_orbital: bool = False  # nonparametric only: trade the rho^(4N0+1)
    # amplitude term for one retained phase term

    def __post_init__(self):
        if self.degree < 1:
            raise ValueError("degree must be >= 1")
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.style not in STYLES:
            raise ValueError(f"unknown style {self.style!r}")
        if self.style == STYLE_DISTORTED and self.mode != MODE_FULL:
            raise ValueError("distorted style requires full mode")
        if self.alpha != AUTO and (not isinstance(self.alpha, int) or self.alpha < 1):
            raise ValueError("alpha must be 'auto' or a positive integer")
        if self.max_level != AUTO and (not isinstance(self.max_level, int) or self.max_level < 1):
            raise ValueError("max_level must be 'auto' or a positive integer")


@dataclass
class LogEntry:
    level: int
    grade: int
    triple: GeneratorTriple


@dataclass
class TransformLog:
    """Replayable record: optional linear reparametrization applied first,
    then generator triples in order (state, time, reparam each)."""

    entries: list = _dc_field(default_factory=list)
    linear_reparam: object = None  # m x m Rat matrix (list of rows) or None
    sigma: object = None  # tuple of 1-based parameter indices or None


@dataclass
class GenericityReport:
    n0: int
    m: int
    a1_matrix: list  # N0 x m rows of Rat
    rank: int
    generic: bool
    sigma: object = None
    linear_reparam: object = None


class LevelReport:
    """Table (grade, level) -> dimension of the remaining slice."""

    def __init__(self):
        self.table = {}
        self.levels = 0
        self.degree = 0

    def record(self, grade, level, dim):
        self.table[(grade, level)] = dim
        self.levels = max(self.levels, level)
        self.degree = max(self.degree, grade)

    def dim(self, grade, level):
        return self.table.get((grade, level))

    def collapse_level(self):
        """Smallest level from which every grade's dimension is constant."""
        if self.levels == 0:
            return 1
        level = self.levels
        while level > 1:
            prev = level - 1
            same = all(
                self.dim(n, prev) == self.dim(n, self.levels)
                for n in range(1, self.degree + 1)
            )
            if not same:
                break
            level = prev
        return level

    def rows(self):
        for n in range(1, self.degree + 1):
            yield n, [self.dim(n, r) for r in range(1, self.levels + 1)]


class DegenerateSpaces:
    """Invariant degenerate spaces and reserved time subspaces.

    d_spans maps grade -> list of BasisTerm allowed to move at that grade
    when reserved time is spent; reserved is the set of withheld
    TimeTerm monomials.  Defaults realize the distorted scheme for a
    generalized Hopf singularity of parametric dimension n0.
    """

    def __init__(self, d_spans, reserved, release_level):
        self.d_spans = {n: set(ts) for n, ts in d_spans.items()}
        self.reserved = set(TimeTerm(*t) for t in reserved)
        self.release_level = release_level

    @classmethod
    def hopf_default(cls, n0, g: Grading, m, degree, with_param_block=True):
        alpha = g.alpha
        spans = {0: [BasisTerm("Y", 1, 0, (0,) * m)]}
        r = 0
        while 2 * n0 + alpha * r <= degree:
            n = 2 * n0 + alpha * r
            terms = [
                BasisTerm("Y", n0 + 1, n0, mu)
                for mu in _mu_exps(m, r)
            ]
            if r == 0:
                terms.insert(0, BasisTerm("X", n0 + 1, n0, (0,) * m))
            spans.setdefault(n, []).extend(terms)
            r += 1
        if with_param_block and m:
            for i in range(1, n0 + 1):
                n = 2 * (i - 1) + alpha
                if n <= degree:
                    spans.setdefault(n, []).extend(
                        BasisTerm("X", i, i - 1, mu_unit(m, j)) for j in range(m)
                    )
        reserved = []
        r = 0
        while 2 * n0 + alpha * r <= degree:
            reserved.extend(TimeTerm(n0, mu) for mu in _mu_exps(m, r))
            r += 1
        return cls(spans, reserved, 2 * n0 + 1)

    def validate(self, g: Grading):
        """Invariance condition on the data: a time subspace still reserved
        at level r may only map degenerate spaces of grades k < r into
        degenerate spaces.  The binding case is the last withheld level,
        release_level - 2 in 1-based sweep numbering."""
        from .terms import mu_add

        bound = self.release_level - 2
        for tt in self.reserved:
            dr = grade_time(tt.i, tt.mu, g)
            for k, terms in self.d_spans.items():
                if k >= bound:
                    continue
                for t in terms:
                    image = BasisTerm(t.kind, t.j + tt.i, t.k + tt.i, mu_add(t.mu, tt.mu))
                    tgt = self.d_spans.get(k + dr, set())
                    if image not in tgt:
                        raise HopfnfError(
                            f"reserved {tt} maps degenerate term {t} outside "
                            f"the degenerate space at grade {k + dr}"
                        )

    def allows(self, diff_field):
        """True if every term of diff_field lies in the degenerate spans."""
        g = diff_field.grading
        for t in diff_field.terms:
            if t not in self.d_spans.get(grade_state(t, g), set()):
                return False
        return True


def _mu_exps(m, total):
    from .slices import mu_exponents

    return mu_exponents(m, total)


def _zero_triple(g, m, degree):
    return GeneratorTriple(
        ParamSeries(g, m, degree), TimeSeries(g, m, degree), ParamVectorField(g, m, degree)
    )


def _triple_axpy(base, coef, other):
    """base + coef * other over generator triples."""
    return GeneratorTriple(
        base.yP + other.yP.scale(coef),
        base.yT + other.yT.scale(coef),
        base.yS + other.yS.scale(coef),
    )


def _combine(triples, coeffs, g, m, degree):
    out = _zero_triple(g, m, degree)
    for T, c in zip(triples, coeffs):
        if c != 0:
            out = _triple_axpy(out, c, T)
    return out


class _Engine:
    def __init__(self, v, degree, mode, reserved=frozenset(), dspaces=None, release_pass=None):
        self.v = v
        self.g = v.grading
        self.m = v.m
        self.D = degree
        self.mode = mode
        self.reserved = frozenset(TimeTerm(*t) for t in reserved)
        self.dspaces = dspaces
        self.release_pass = release_pass
        self.entries = []
        self.removable = {}
        self.report = LevelReport()
        self.k1 = {}
        self._slices = {}
        self._leading = {}  # grade -> (unit triples, leading columns)
        self._dirty_below = False

    # -- slice bookkeeping -------------------------------------------------

    def slice_terms(self, n):
        got = self._slices.get(n)
        if got is None:
            terms = state_slice(n, self.g, self.m)
            got = (terms, {t: i for i, t in enumerate(terms)})
            self._slices[n] = got
        return got

    def coords(self, field_part, n):
        terms, idx = self.slice_terms(n)
        vec = [ZERO] * len(terms)
        for t, c in field_part.terms.items():
            vec[idx[t]] = c
        return vec

    def removable_space(self, n):
        got = self.removable.get(n)
        if got is None:
            got = Echelon(len(self.slice_terms(n)[0]))
            self.removable[n] = got
        return got

    # -- generators ----------------------------------------------------------

    def unit_triples(self, n):
        """Grade-n generator basis in costyle order: state, time, param."""
        g, m, D = self.g, self.m, self.D
        out = []
        for t in state_slice(n, g, m):
            out.append(
                GeneratorTriple(
                    ParamSeries(g, m, D),
                    TimeSeries(g, m, D),
                    ParamVectorField(g, m, D, {t: Rat(1)}),
                )
            )
        if _uses_time(self.mode):
            for tt in time_slice(n, g, m):
                if tt in self.reserved:
                    continue
                out.append(
                    GeneratorTriple(
                        ParamSeries(g, m, D),
                        TimeSeries(g, m, D, {tt: Rat(1)}),
                        ParamVectorField(g, m, D),
                    )
                )
        if _uses_param(self.mode):
            for mu, comp in param_slice(n, g, m):
                comps = [dict() for _ in range(m)]
                comps[comp][mu] = Rat(1)
                out.append(
                    GeneratorTriple(
                        ParamSeries(g, m, D, comps),
                        TimeSeries(g, m, D),
                        ParamVectorField(g, m, D),
                    )
                )
        return out

    def action_at(self, triple, gen_grade, target):
        """Grade-target component of d(v, triple) for a homogeneous triple.

        Grade additivity of all three pieces of the differential means only
        the field part at grade target - gen_grade contributes.
        """
        part = self.v.graded_part(target - gen_grade)
        if part.is_zero():
            return ParamVectorField(self.g, self.m, self.D)
        return differential(part, triple, self.D).graded_part(target)

    # -- applications ----------------------------------------------------------

    def apply(self, triple, level, n, allow_d_below):
        before = self.v
        self.v = apply_triple(self.v, triple, self.D)
        diff = self.v - before
        below = diff.truncate(n - 1)
        if not below.is_zero():
            if not (allow_d_below and self.dspaces and self.dspaces.allows(below)):
                raise HopfnfError(
                    f"stage safety violated at level {level}, grade {n}: "
                    f"lower grades changed by {below!r}"
                )
            self._dirty_below = True
        zero_slice = self.v.graded_part(0)
        if dict(zero_slice.terms) != {BasisTerm("Y", 1, 0, (0,) * self.m): Rat(1)}:
            raise HopfnfError("linear part drifted off Y_10")
        self.entries.append(LogEntry(level, n, triple))

    def reduce_slice(self, n, tagged_cols, level, allow_d_flags=None):
        """Eliminate the removable part of the grade-n slice.

        tagged_cols: list of (triple, coord-vector).  allow_d_flags marks
        the columns whose use may legally shift lower grades (released
        reserved time).  Iterates because applying a combination can feed
        quadratic corrections back into the same grade.
        """
        terms, _ = self.slice_terms(n)
        dim = len(terms)
        space = self.removable_space(n)
        live = [(T, col) for T, col in tagged_cols if any(x != 0 for x in col)]
        # Degenerate-space slots are never counted removable in the level
        # table: the distorted scheme keeps them in every complement, and
        # release side effects would otherwise make two snapshots of one
        # kernel combination span a protected direction.
        mask = None
        if self.dspaces is not None:
            span = self.dspaces.d_spans.get(n)
            if span:
                mask = [i for i, t in enumerate(terms) if t in span]
        for _, col in live:
            rec = list(col)
            if mask:
                for i in mask:
                    rec[i] = ZERO
            space.insert(rec)
        if not live:
            return
        cols = [col for _, col in live]
        complement, project = complement_split(cols, dim)
        allow = False
        if allow_d_flags:
            allow = any(allow_d_flags.get(id(T), False) for T, _ in live)
        for _ in range(_FIXPOINT_CAP):
            vec = self.coords(self.v.graded_part(n), n)
            w = project(vec)
            if all(x == 0 for x in w):
                return
            coeffs = solve_in_span(cols, [-x for x in w], dim)
            if coeffs is None:
                raise HopfnfError("projection left the removable span")
            triple = _combine([T for T, _ in live], coeffs, self.g, self.m, self.D)
            if triple.is_zero():
                return
            used_allow = allow and allow_d_flags and any(
                allow_d_flags.get(id(T), False) and c != 0
                for (T, _), c in zip(live, coeffs)
            )
            self.apply(triple, level, n, used_allow)
        raise HopfnfError(f"no fixpoint at level {level}, grade {n}")

    # -- passes ----------------------------------------------------------------

    def leading_columns(self, n):
        """Unit generators of grade n and their leading-action columns.

        The leading action only sees the grade-0 part Y_10, which never
        changes, so this is computed once per grade.
        """
        got = self._leading.get(n)
        if got is None:
            gens = self.unit_triples(n)
            part0 = self.v.graded_part(0)
            cols = [
                self.coords(differential(part0, T, self.D).graded_part(n), n)
                for T in gens
            ]
            got = (gens, cols)
            self._leading[n] = got
        return got

    def pass_one(self):
        self._assert_linear_part()
        for n in range(1, self.D + 1):
            gens, cols = self.leading_columns(n)
            terms, _ = self.slice_terms(n)
            if gens:
                self.reduce_slice(n, list(zip(gens, cols)), level=1)
                self.k1[n] = [
                    _combine(gens, vec, self.g, self.m, self.D)
                    for vec in nullspace(cols, len(terms))
                ]
            else:
                self.k1[n] = []
            self.report.record(n, 1, len(terms) - self.removable_space(n).rank())

    def pass_higher(self, level):
        usable = {g: list(self.k1.get(g, [])) for g in range(1, self.D + 1)}
        refined = {g: g for g in usable}
        release_active = (
            self.release_pass is not None and level >= self.release_pass and self.reserved
        )
        for n in range(1, self.D + 1):
            if self._dirty_below:
                usable = {g: list(self.k1.get(g, [])) for g in range(1, self.D + 1)}
                refined = {g: g for g in usable}
                self._dirty_below = False
            tagged = []
            flags = {}
            # Fresh grade-n generators: level r stays inside the level-1
            # complement, so feedback into level-1-removable directions is
            # cleaned as part of every sweep.
            gens, cols = self.leading_columns(n)
            tagged.extend(zip(gens, cols))
            for g in range(1, n):
                pool = usable[g]
                if not pool:
                    continue
                for n2 in range(refined[g] + 1, n):
                    cols = [self.coords(self.action_at(T, g, n2), n2) for T in pool]
                    if any(any(x != 0 for x in col) for col in cols):
                        vecs = nullspace(cols, len(self.slice_terms(n2)[0]))
                        pool = [
                            _combine(pool, vec, self.g, self.m, self.D) for vec in vecs
                        ]
                    if not pool:
                        break
                refined[g] = max(refined[g], n - 1)
                usable[g] = pool
                for T in pool:
                    tagged.append((T, self.coords(self.action_at(T, g, n), n)))
            if release_active:
                for tt in sorted(self.reserved):
                    dr = grade_time(tt.i, tt.mu, self.g)
                    if dr + (self.dspaces.release_level - 1) == n:
                        T = GeneratorTriple(
                            ParamSeries(self.g, self.m, self.D),
                            TimeSeries(self.g, self.m, self.D, {tt: Rat(1)}),
                            ParamVectorField(self.g, self.m, self.D),
                        )
                        tagged.append((T, self.coords(self.action_at(T, dr, n), n)))
                        flags[id(T)] = True
            self.reduce_slice(n, tagged, level, allow_d_flags=flags)
            terms, _ = self.slice_terms(n)
            self.report.record(n, level, len(terms) - self.removable_space(n).rank())

    def _assert_linear_part(self):
        zero_slice = self.v.graded_part(0)
        if dict(zero_slice.terms) != {BasisTerm("Y", 1, 0, (0,) * self.m): Rat(1)}:
            raise BadLinearPart(f"grade-0 part is {zero_slice!r}, expected Y_10")

    def run(self, passes):
        self.pass_one()
        for level in range(2, passes + 1):
            self.pass_higher(level)
        return self.v


# -- parametric dimension & genericity -----------------------------------------


def detect_parametric_dimension(v: ParamVectorField, degree=None):
    """Least k with a nonzero X_(k+1)k coefficient (at mu = 0) in the
    first-level normal form; None if there is none within the degree.

    The mu = 0 block never feeds on parameter terms, so detection runs on
    the restricted field and is independent of the parameter weight.
    """
    if degree is None:
        degree = v.degree
    g1 = Grading(1)
    restricted = ParamVectorField(
        g1,
        0,
        degree,
        {
            BasisTerm(t.kind, t.j, t.k, ()): c
            for t, c in v.terms.items()
            if mu_abs(t.mu) == 0
        },
    )
    eng = _Engine(restricted, degree, MODE_STATE)
    eng.pass_one()
    v1 = eng.v
    k = 1
    while 2 * k <= degree:
        if v1.coeff(BasisTerm("X", k + 1, k, ())) != 0:
            return k
        k += 1
    return None


def level_one(v: ParamVectorField, cfg: NormalizationConfig):
    """First-level extended partial parametric normal form."""
    v, _, _ = _prepare(v, cfg)
    eng = _Engine(v, cfg.degree, cfg.mode)
    eng.pass_one()
    log = TransformLog(entries=eng.entries)
    return eng.v, log


def genericity(v1: ParamVectorField, n0=None) -> GenericityReport:
    """Genericity analysis of a first-level output.

    Builds the N0 x m matrix of parameter-linear resonant amplitude
    coefficients; generic means full rank N0.  With m == N0 the report
    carries the invertible linear reparametrization reducing the block to
    permutation form, the permutation read off the Gaussian pivots
    (smallest column first).
    """
    m = v1.m
    if n0 is None:
        n0 = detect_parametric_dimension(v1)
    if n0 is None:
        raise NoParametricDimension(
            "no nonzero resonant amplitude coefficient within the degree"
        )
    rows = []
    for k in range(n0):
        rows.append(
            [v1.coeff(BasisTerm("X", k + 1, k, mu_unit(m, j))) for j in range(m)]
        )
    rank, pivots = _row_reduce_pivots([list(r) for r in rows])
    generic = rank == n0
    sigma = None
    linear = None
    if generic and m == n0 and m > 0:
        sigma = tuple(p + 1 for p in pivots)
        perm = [[Rat(1) if sigma[k] == j + 1 else ZERO for j in range(m)] for k in range(n0)]
        linear = _mat_solve(rows, perm)
    return GenericityReport(
        n0=n0,
        m=m,
        a1_matrix=rows,
        rank=rank,
        generic=generic,
        sigma=sigma,
        linear_reparam=linear,
    )


def _row_reduce_pivots(rows):
    """Rank and greedy pivot columns (formal-basis order: row order fixed,
    smallest usable column first)."""
    if not rows:
        return 0, []
    ncols = len(rows[0])
    pivots = []
    reduced = []
    for row in rows:
        v = list(row)
        for piv, prow in reduced:
            if v[piv] != 0:
                f = v[piv]
                v = [a - f * b for a, b in zip(v, prow)]
        piv = next((c for c in range(ncols) if v[c] != 0), None)
        if piv is None:
            continue
        inv = Rat(1) / v[piv]
        v = [x * inv for x in v]
        reduced.append((piv, v))
        pivots.append(piv)
    return len(pivots), pivots


def _mat_solve(a_rows, b_rows):
    """Solve A L = B for L, A square invertible, exact."""
    n = len(a_rows)
    aug = [list(a_rows[r]) + list(b_rows[r]) for r in range(n)]
    for col in range(n):
        sel = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[sel] = aug[sel], aug[col]
        pv = aug[col][col]
        aug[col] = [x / pv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


# -- pipelines -----------------------------------------------------------------


def _prepare(v, cfg):
    """Resolve auto alpha, rebuild the field in the working grading, and
    detect the parametric dimension.  Returns (field, n0, alpha)."""
    _check_linear(v)
    n0 = detect_parametric_dimension(v, cfg.degree)
    if cfg.alpha == AUTO:
        if n0 is None:
            raise NoParametricDimension(
                "alpha='auto' needs a detectable parametric dimension"
            )
        alpha = 2 * n0 + 1
    else:
        alpha = cfg.alpha
    g = Grading(alpha)
    if v.grading != g or v.degree != cfg.degree:
        v = ParamVectorField(g, v.m, cfg.degree, v.terms)
    return v, n0, alpha


def _check_linear(v):
    zero_slice = v.graded_part(0)
    if dict(zero_slice.terms) != {BasisTerm("Y", 1, 0, (0,) * v.m): Rat(1)}:
        raise BadLinearPart(f"grade-0 part is {zero_slice!r}, expected Y_10")


def _passes(cfg, n0):
    if cfg.max_level == AUTO:
        if n0 is None:
            raise NoParametricDimension("max_level='auto' needs the parametric dimension")
        return 2 * n0 + 2  # collapse level plus one confirmation sweep
    return max(cfg.max_level + 1, 2)


def _finalize_linear(out, eng, n0):
    """Normalize the parameter-linear amplitude block of the finished field.

    The sweeps leave an invertible block A (rows: X_(k+1)k, k < N0;
    columns: parameters); the outermost invertible linear
    reparametrization mu <- L nu with L = A^-1 P_sigma turns it into the
    permutation form.  Every logged triple is conjugated through L so a
    replay may apply L first.
    """
    m = out.m
    rows = [
        [out.coeff(BasisTerm("X", k + 1, k, mu_unit(m, j))) for j in range(m)]
        for k in range(n0)
    ]
    rank, pivots = _row_reduce_pivots([list(r) for r in rows])
    if rank != n0:
        raise NotGeneric(rank, n0)
    sigma = tuple(p + 1 for p in pivots)
    perm = [[Rat(1) if sigma[k] == j + 1 else ZERO for j in range(m)] for k in range(n0)]
    linear = _mat_solve(rows, perm)
    ident = [[Rat(1) if i == j else ZERO for j in range(m)] for i in range(m)]
    linv = _mat_solve(linear, ident)
    from .lie import conjugate_triple

    final = apply_linear_reparam(out, linear, out.degree)
    entries = [
        LogEntry(e.level, e.grade, conjugate_triple(e.triple, linear, linv))
        for e in eng.entries
    ]
    return final, TransformLog(entries=entries, linear_reparam=linear, sigma=sigma)


def hypernormalize(v: ParamVectorField, cfg: NormalizationConfig):
    """Infinite-level normal form in the requested mode, spectral style.

    For parameter-generic inputs with m == N0 in a mode that includes
    reparametrization, the invertible linear reparametrization that fixes
    the mu-linear amplitude block is computed from the finished field
    (it is the outermost map) and folded into the log so replays apply it
    first.
    """
    if cfg.style == STYLE_DISTORTED:
        return distorted_normalize(v, cfg)
    v, n0, alpha = _prepare(v, cfg)
    passes = _passes(cfg, n0)
    normalize_block = False
    if _uses_param(cfg.mode) and v.m > 0 and n0 is not None:
        eng0 = _Engine(v.copy(), cfg.degree, cfg.mode)
        eng0.pass_one()
        rep = genericity(eng0.v, n0)
        normalize_block = rep.generic and rep.m == rep.n0
    eng = _Engine(v, cfg.degree, cfg.mode)
    out = eng.run(passes)
    if normalize_block:
        out, log = _finalize_linear(out, eng, n0)
    else:
        log = TransformLog(entries=eng.entries)
    return out, log, eng.report


def distorted_normalize(v: ParamVectorField, cfg: NormalizationConfig):
    """The bifurcation-ready parametric normal form (distorted scheme).

    Needs full mode, a parameter-generic input, and m == N0.  Output
    support is asserted against the target span {Y_10, X_(i+1)i mu_sigma,
    X_(N0+1)N0, Y_(N0+1)N0 mu^n}.
    """
    if cfg.mode != MODE_FULL:
        raise DimensionMismatch("distorted style requires full mode")
    v, n0, alpha = _prepare(v, cfg)
    if n0 is None:
        raise NoParametricDimension("distorted scheme needs a parametric dimension")
    if v.m != n0:
        raise DimensionMismatch(f"m = {v.m} but parametric dimension is {n0}")
    eng0 = _Engine(v.copy(), cfg.degree, cfg.mode)
    eng0.pass_one()
    rep = genericity(eng0.v, n0)
    if not rep.generic:
        raise NotGeneric(rep.rank, n0)
    dspaces = DegenerateSpaces.hopf_default(n0, v.grading, v.m, cfg.degree)
    dspaces.validate(v.grading)
    passes = max(_passes(cfg, n0), dspaces.release_level + 1)
    eng = _Engine(
        v,
        cfg.degree,
        cfg.mode,
        reserved=dspaces.reserved,
        dspaces=dspaces,
        release_pass=dspaces.release_level,
    )
    out = eng.run(passes)
    out, log = _finalize_linear(out, eng, n0)
    _assert_distorted_support(out, n0, log.sigma)
    return out, log, eng.report


def _assert_distorted_support(out, n0, sigma):
    m = out.m
    allowed = {BasisTerm("Y", 1, 0, (0,) * m), BasisTerm("X", n0 + 1, n0, (0,) * m)}
    for i in range(n0):
        allowed.add(BasisTerm("X", i + 1, i, mu_unit(m, sigma[i] - 1)))
    for t in out.terms:
        if t in allowed:
            continue
        if t.kind == "Y" and t.j == n0 + 1 and t.k == n0:
            continue
        raise HopfnfError(f"distorted output has unexpected term {t}")


def nonparametric_normalize(v: ParamVectorField, cfg: NormalizationConfig):
    """Simplest normal form / orbital equivalence for m = 0 systems.

    mode=state: amplitude rho^(2N0+1), rho^(4N0+1) plus retained phase
    terms.  mode=state+time: same amplitudes with phase 1; under
    alt_orbital the rho^(4N0+1) term is traded for one phase term.
    """
    if v.m != 0:
        raise DimensionMismatch("nonparametric reduction needs m = 0")
    if cfg.mode not in (MODE_STATE, MODE_STATE_TIME):
        raise ValueError("nonparametric modes are 'state' and 'state+time'")
    _check_linear(v)
    n0 = detect_parametric_dimension(v, cfg.degree)
    if n0 is None:
        raise DegenerateInput("no resonant amplitude term within the degree")
    alpha = 2 * n0 + 1 if cfg.alpha == AUTO else cfg.alpha
    g = Grading(alpha)
    vv = ParamVectorField(g, 0, cfg.degree, v.terms)
    reserved = frozenset()
    dspaces = None
    release = None
    if cfg.alt_orbital:
        if cfg.mode != MODE_STATE_TIME:
            raise ValueError("alt_orbital needs mode='state+time'")
        dspaces = DegenerateSpaces.hopf_default(n0, g, 0, cfg.degree, with_param_block=False)
        dspaces.validate(g)
        reserved = frozenset(dspaces.reserved)
        release = dspaces.release_level
    passes = max(_passes(cfg, n0), (release or 0) + 1)
    eng = _Engine(
        vv, cfg.degree, cfg.mode, reserved=reserved, dspaces=dspaces, release_pass=release
    )
    out = eng.run(passes)
    return out, TransformLog(entries=eng.entries), eng.report


def mode_suite(v: ParamVectorField, degree: int):
    """All four transformation modes on one parametric input.

    Returns {mode: (normal_form, log, pages)} with the state+time run in
    the reserved-time costyle (orbital form keeping the phase family) and
    the full run distorted.
    """
    if v.m == 0:
        raise DimensionMismatch("mode suite needs parameters; use the nonparametric entry")
    out = {}
    for mode in (MODE_STATE, MODE_STATE_PARAM):
        cfg = NormalizationConfig(degree=degree, mode=mode, style=STYLE_SPECTRAL)
        out[mode] = hypernormalize(v, cfg)
    out[MODE_STATE_TIME] = _orbital_reserved(v, degree)
    cfg = NormalizationConfig(degree=degree, mode=MODE_FULL, style=STYLE_DISTORTED)
    out[MODE_FULL] = distorted_normalize(v, cfg)
    return out


def _orbital_reserved(v: ParamVectorField, degree: int):
    """state+time with the reserved-time costyle: the (timestate) form."""
    cfg = NormalizationConfig(degree=degree, mode=MODE_STATE_TIME, style=STYLE_SPECTRAL)
    v2, n0, alpha = _prepare(v, cfg)
    if n0 is None:
        raise NoParametricDimension("orbital reduction needs a parametric dimension")
    dspaces = DegenerateSpaces.hopf_default(n0, v2.grading, v2.m, degree, with_param_block=False)
    dspaces.validate(v2.grading)
    passes = max(_passes(cfg, n0), dspaces.release_level + 1)
    eng = _Engine(
        v2,
        degree,
        MODE_STATE_TIME,
        reserved=dspaces.reserved,
        dspaces=dspaces,
        release_pass=dspaces.release_level,
    )
    out = eng.run(passes)
    # orbital trade succeeded: no amplitude-tail family in the output
    for t in out.terms:
        if t.kind == "X" and (t.j, t.k) == (2 * n0 + 1, 2 * n0):
            raise HopfnfError(f"orbital reduction kept a tail term {t}")
    return out, TransformLog(entries=eng.entries), eng.report
