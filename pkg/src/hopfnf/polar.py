"""Polar amplitude/phase form of a resonant normal form.

Resonant terms convert as X_(k+1)k mu^n -> rho^(2k+1) mu^n in the
amplitude equation and Y_(k+1)k mu^n -> rho^(2k) mu^n in the phase
equation; the rotation Y_10 is the phase constant 1.
"""

from dataclasses import dataclass, field

from .errors import NonResonantTerm
from .rational import ZERO, rat_str
from .series import ParamVectorField
from .terms import mu_abs


@dataclass
class PolarForm:
    """amplitude: (rho power, mu) -> coeff; phase likewise (constant 1
    stored at rho power 0, mu = 0)."""

    m: int
    amplitude: dict = field(default_factory=dict)
    phase: dict = field(default_factory=dict)

    def amplitude_entries(self):
        return sorted(self.amplitude.items(), key=lambda e: (e[0][0], mu_abs(e[0][1]), e[0][1]))

    def phase_entries(self):
        return sorted(self.phase.items(), key=lambda e: (e[0][0], mu_abs(e[0][1]), e[0][1]))

    def amplitude_text(self, names=None):
        """rho' factored as rho * ( ... ) to expose the bifurcation shape."""
        if not self.amplitude:
            return "rho' = 0"
        bits = []
        for (p, mu), c in self.amplitude_entries():
            bits.append(_monomial(c, p - 1, mu, names or _default_names(self.m)))
        return "rho' = rho*(" + _join(bits) + ")"

    def phase_text(self, names=None):
        bits = []
        for (p, mu), c in self.phase_entries():
            bits.append(_monomial(c, p, mu, names or _default_names(self.m)))
        return "theta' = " + (_join(bits) if bits else "0")


def _default_names(m):
    return tuple(f"mu{i+1}" for i in range(m))


def _monomial(c, rho_pow, mu, names):
    factors = []
    if rho_pow:
        factors.append("rho" + (f"^{rho_pow}" if rho_pow > 1 else ""))
    for name, e in zip(names, mu):
        if e:
            factors.append(name + (f"^{e}" if e > 1 else ""))
    cs = rat_str(c)
    if not factors:
        return cs
    if cs == "1":
        return "*".join(factors)
    if cs == "-1":
        return "-" + "*".join(factors)
    return cs + "*" + "*".join(factors)


def _join(bits):
    out = bits[0]
    for b in bits[1:]:
        out += " - " + b[1:] if b.startswith("-") else " + " + b
    return out


def to_polar(v: ParamVectorField) -> PolarForm:
    """Convert a resonant field; NonResonantTerm on anything else."""
    form = PolarForm(v.m)
    for t, c in v.terms.items():
        if t.j != t.k + 1:
            raise NonResonantTerm(f"{t} is not resonant")
        if t.kind == "X":
            key = (2 * t.k + 1, t.mu)
            form.amplitude[key] = form.amplitude.get(key, ZERO) + c
        else:
            key = (2 * t.k, t.mu)
            form.phase[key] = form.phase.get(key, ZERO) + c
    for tbl in (form.amplitude, form.phase):
        for key in [k for k, val in tbl.items() if val == 0]:
            del tbl[key]
    return form
