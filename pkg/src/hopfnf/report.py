"""Deterministic rendering of normalization results (text and JSON)."""

import json
from dataclasses import dataclass

from .polar import to_polar
from .rational import rat_str
from .series import ParamVectorField
from .terms import grade_state

FORMAT_VERSION = 1


@dataclass
class RunResult:
    """Everything one normalization run produced."""

    normal_form: ParamVectorField
    log: object  # TransformLog
    pages: object  # LevelReport or None
    mode: str
    style: str
    alpha: int
    degree: int
    n0: object = None
    generic: object = None
    param_names: tuple = ()
    verified: object = None

    def polar(self):
        return to_polar(self.normal_form)


def _term_dict(t, c):
    return {
        "kind": t.kind,
        "j": t.j,
        "k": t.k,
        "mu": list(t.mu),
        "coeff": rat_str(c),
    }


def _matrix(mat):
    if mat is None:
        return None
    return [[rat_str(x) for x in row] for row in mat]


def _transforms_dict(log, full):
    out = {
        "linear_reparam": _matrix(log.linear_reparam),
        "sigma": list(log.sigma) if log.sigma else None,
        "count": len(log.entries),
    }
    if full:
        entries = []
        for e in log.entries:
            entries.append(
                {
                    "level": e.level,
                    "grade": e.grade,
                    "state": [_term_dict(t, c) for t, c in e.triple.yS.sorted_terms()],
                    "time": [
                        {"i": tt.i, "mu": list(tt.mu), "coeff": rat_str(c)}
                        for tt, c in e.triple.yT.sorted_terms()
                    ],
                    "param": [
                        {"mu": list(mu), "component": j + 1, "coeff": rat_str(c)}
                        for mu, j, c in e.triple.yP.sorted_entries()
                    ],
                }
            )
        out["entries"] = entries
    return out


def result_document(res: RunResult, show_transforms=False):
    """JSON-compatible document with a stable layout."""
    v = res.normal_form
    polar = res.polar()
    doc = {
        "format_version": FORMAT_VERSION,
        "parametric_dimension": res.n0,
        "generic": res.generic,
        "sigma": list(res.log.sigma) if res.log.sigma else None,
        "alpha": res.alpha,
        "degree": res.degree,
        "mode": res.mode,
        "style": res.style,
        "normal_form": [_term_dict(t, c) for t, c in v.sorted_terms()],
        "polar": {
            "amplitude": [
                {"rho_power": p, "mu": list(mu), "coeff": rat_str(c)}
                for (p, mu), c in polar.amplitude_entries()
            ],
            "phase": [
                {"rho_power": p, "mu": list(mu), "coeff": rat_str(c)}
                for (p, mu), c in polar.phase_entries()
            ],
            # retained non-constant phase rho-powers; reported, not asserted
            "phase_power_range": _phase_range(polar),
        },
        "pages": _pages_list(res.pages),
        "transforms": _transforms_dict(res.log, show_transforms),
    }
    if res.verified is not None:
        doc["verified"] = res.verified
    return doc


def _phase_range(polar):
    powers = sorted({p for (p, _) in polar.phase if p > 0})
    if not powers:
        return None
    return [powers[0], powers[-1]]


def _pages_list(pages):
    if pages is None:
        return None
    return {
        "collapse_level": pages.collapse_level(),
        "dimensions": [
            {"grade": n, "by_level": dims} for n, dims in pages.rows()
        ],
    }


def render_report(res: RunResult, fmt="text", show_transforms=False):
    """Deterministic serialization; identical runs give identical bytes."""
    if fmt == "json":
        return json.dumps(result_document(res, show_transforms), indent=2) + "\n"
    if fmt != "text":
        raise ValueError(f"unknown format {fmt!r}")
    v = res.normal_form
    g = v.grading
    names = res.param_names or tuple(f"mu{i+1}" for i in range(v.m))
    lines = []
    lines.append(f"mode:  {res.mode}    style: {res.style}")
    lines.append(f"alpha: {res.alpha}    degree: {res.degree}")
    if res.n0 is not None:
        lines.append(f"parametric dimension: {res.n0}")
    if res.generic is not None:
        lines.append(f"parameter generic: {'yes' if res.generic else 'no'}")
    if res.log.sigma:
        lines.append("sigma: " + " ".join(f"{i+1}->{s}" for i, s in enumerate(res.log.sigma)))
    lines.append("")
    lines.append("normal form:")
    if v.is_zero():
        lines.append("  0")
    for t, c in v.sorted_terms():
        mu = "".join(
            f"*{names[i]}" + (f"^{e}" if e > 1 else "")
            for i, e in enumerate(t.mu)
            if e
        )
        lines.append(
            f"  ({rat_str(c)}) {t.kind}[{t.j},{t.k}]{mu}   [grade {grade_state(t, g)}]"
        )
    polar = res.polar()
    lines.append("")
    lines.append("polar form:")
    lines.append("  " + polar.amplitude_text(names))
    lines.append("  " + polar.phase_text(names))
    if res.pages is not None:
        lines.append("")
        lines.append(f"collapse level: {res.pages.collapse_level()}")
        lines.append("slice dimensions (grade: by level):")
        for n, dims in res.pages.rows():
            lines.append("  " + f"{n:2d}: " + " ".join(str(d) for d in dims))
    lines.append("")
    lines.append(f"transformations: {len(res.log.entries)} generator triples")
    if res.log.linear_reparam is not None:
        lines.append("linear reparametrization:")
        for row in res.log.linear_reparam:
            lines.append("  [" + ", ".join(rat_str(x) for x in row) + "]")
    if show_transforms:
        for e in res.log.entries:
            lines.append(f"  level {e.level} grade {e.grade}:")
            if not e.triple.yS.is_zero():
                lines.append(f"    state: {e.triple.yS!r}")
            if not e.triple.yT.is_zero():
                lines.append(f"    time:  {e.triple.yT!r}")
            if not e.triple.yP.is_zero():
                lines.append(f"    param: {e.triple.yP!r}")
    if res.verified is not None:
        lines.append(f"replay verification: {'PASS' if res.verified else 'FAIL'}")
    return "\n".join(lines) + "\n"
