"""Physical parameters of the effective two-atom model.

The model: two identical two-level atoms coupled to a single f-deformed
cavity mode through 2k-photon transitions, with a deformed Kerr medium
(chi), detuning (delta) and intensity-dependent Stark shifts (beta1 on the
upper level, beta2 on the lower one). All frequencies are dimensionless
multiples of the effective coupling g, and time is measured in units of
1/g. The atoms start in cos(theta/2)|ee> + sin(theta/2)|gg>, the field in
a coherent state of amplitude alpha.

This module is the single source of truth for parameter validation and for
the five standard parameter sets (labels "a".."e") used by the plotting
presets everywhere else in the package.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

SCENARIO_LABELS = ("a", "b", "c", "d", "e")

# label -> (delta, chi, beta1, beta2)
_SCENARIO_TABLE = {
    "a": (0.0, 0.0, 0.0, 0.0),
    "b": (10.0, 0.0, 0.0, 0.0),
    "c": (0.0, 0.5, 0.0, 0.0),
    "d": (0.0, 0.0, 6.0, 1.0),
    "e": (10.0, 0.5, 6.0, 1.0),
}

_DEFORMATION_KINDS = ("unity", "sqrt-n", "tabulated")

_PICTURES = ("interaction", "include-free-phase")


@dataclass(frozen=True)
class DeformationFunction:
    """Intensity-dependence rule f(n) entering the deformed ladder operators.

    ``unity`` reduces to the ordinary harmonic ladder, ``sqrt-n`` is the
    f(n) = sqrt(n) rule used for all preset runs, and ``tabulated`` reads
    f(n) from ``table[n-1]``. f(n) is only ever evaluated at n >= 1; the
    empty product convention handles n = 0. Table coverage is checked at
    the point of use, not at construction, because the required Fock range
    is only known once a truncation is chosen.
    """

    kind: str = "sqrt-n"
    table: tuple[float, ...] | None = None

    def __post_init__(self):
        if self.kind not in _DEFORMATION_KINDS:
            raise ValueError(f"unknown deformation kind {self.kind!r}")
        if self.kind == "tabulated":
            if not self.table:
                raise ValueError("tabulated deformation requires a non-empty table")
            tab = tuple(float(x) for x in self.table)
            if any(not math.isfinite(x) or x <= 0.0 for x in tab):
                raise ValueError("deformation table entries must be finite and > 0")
            object.__setattr__(self, "table", tab)
        elif self.table is not None:
            raise ValueError(f"table is only meaningful for kind='tabulated', not {self.kind!r}")

    @classmethod
    def unity(cls) -> "DeformationFunction":
        return cls(kind="unity")

    @classmethod
    def sqrt_n(cls) -> "DeformationFunction":
        return cls(kind="sqrt-n")

    @classmethod
    def tabulated(cls, table) -> "DeformationFunction":
        return cls(kind="tabulated", table=tuple(table))

    def value(self, n: int) -> float:
        """f(n) for integer n >= 1."""
        if n < 1:
            raise ValueError(f"f(n) is only used for n >= 1, got n={n}")
        if self.kind == "unity":
            return 1.0
        if self.kind == "sqrt-n":
            return math.sqrt(n)
        if n > len(self.table):
            raise ValueError(
                f"deformation table too short: need f({n}) but only "
                f"{len(self.table)} entries are tabulated"
            )
        return self.table[n - 1]

    def check_coverage(self, n_needed: int) -> None:
        """Fail early if a tabulated rule cannot reach f(n_needed)."""
        if self.kind == "tabulated" and n_needed > len(self.table):
            raise ValueError(
                f"deformation table too short: need f up to n={n_needed}, "
                f"have {len(self.table)} entries"
            )


@dataclass(frozen=True)
class ModelParams:
    """All constants of the effective model.

    k is the photon multiplicity of the underlying ladder (the effective
    atomic transition exchanges 2k photons). g > 0 sets the unit of
    frequency and is kept independent of beta1/beta2: the preset figures
    use beta1=6, beta2=1 on a g-scaled time axis, which is only consistent
    if g is its own parameter. ``validate`` can optionally warn when
    g != sqrt(beta1*beta2).

    ``picture`` selects whether the free-evolution phase (frequency
    ``free_frequency``) is reinstated on the assembled state. It is a
    local unitary at matched photon number, so every entanglement measure
    is unaffected; the option exists to make that checkable.
    """

    k: int = 1
    g: float = 1.0
    chi: float = 0.0
    delta: float = 0.0
    beta1: float = 0.0
    beta2: float = 0.0
    theta: float = 0.0
    alpha: complex = 5.0 + 0.0j
    deformation: DeformationFunction = field(default_factory=DeformationFunction.sqrt_n)
    picture: str = "interaction"
    free_frequency: float = 1.0

    @property
    def mean_photon_number(self) -> float:
        return abs(self.alpha) ** 2


def validate(params: ModelParams, check_coupling_consistency: bool = False) -> ModelParams:
    """Return params unchanged if every invariant holds, else raise ValueError.

    Idempotent by construction. With ``check_coupling_consistency`` a
    warning (never an error) is emitted when g deviates from
    sqrt(beta1*beta2), the relation the adiabatic elimination would impose.
    """
    if not isinstance(params.k, int) or params.k < 1:
        raise ValueError(f"k must be an integer >= 1, got {params.k!r}")
    if not (params.g > 0.0) or not math.isfinite(params.g):
        raise ValueError(f"g must be finite and > 0, got {params.g!r}")
    if params.chi < 0.0 or not math.isfinite(params.chi):
        raise ValueError(f"chi must be finite and >= 0, got {params.chi!r}")
    if not math.isfinite(params.delta):
        raise ValueError(f"delta must be finite, got {params.delta!r}")
    for name, beta in (("beta1", params.beta1), ("beta2", params.beta2)):
        if beta < 0.0 or not math.isfinite(beta):
            raise ValueError(f"{name} must be finite and >= 0, got {beta!r}")
    if not (0.0 <= params.theta <= math.pi):
        raise ValueError(f"theta out of [0, pi]: {params.theta!r}")
    if not math.isfinite(abs(params.alpha)):
        raise ValueError(f"|alpha|^2 must be finite, got alpha={params.alpha!r}")
    if not isinstance(params.deformation, DeformationFunction):
        raise ValueError("deformation must be a DeformationFunction")
    if params.picture not in _PICTURES:
        raise ValueError(f"unknown picture {params.picture!r}, expected one of {_PICTURES}")
    if check_coupling_consistency and params.beta1 > 0.0 and params.beta2 > 0.0:
        g_elim = math.sqrt(params.beta1 * params.beta2)
        if abs(params.g - g_elim) > 1e-12 * max(1.0, g_elim):
            warnings.warn(
                f"g={params.g} differs from sqrt(beta1*beta2)={g_elim:.6g}; "
                "the preset figures intentionally treat g as independent",
                stacklevel=2,
            )
    return params


@dataclass(frozen=True)
class ScenarioPreset:
    """One row of the standard five-scenario table (labels a..e)."""

    label: str
    delta: float
    chi: float
    beta1: float
    beta2: float

    def to_params(
        self,
        k: int = 1,
        theta: float = 0.0,
        alpha: complex = 5.0,
        deformation: DeformationFunction | None = None,
        g: float = 1.0,
    ) -> ModelParams:
        """Full parameter set with the common preset defaults filled in.

        Defaults match the plotted runs: |alpha|^2 = 25, theta = 0,
        f(n) = sqrt(n), g = 1.
        """
        if deformation is None:
            deformation = DeformationFunction.sqrt_n()
        return validate(
            ModelParams(
                k=k,
                g=g,
                chi=self.chi,
                delta=self.delta,
                beta1=self.beta1,
                beta2=self.beta2,
                theta=theta,
                alpha=complex(alpha),
                deformation=deformation,
            )
        )


def scenario_preset(label: str) -> ScenarioPreset:
    """The preset for one of the labels 'a'..'e'.

    (a) resonant, no Kerr, no Stark; (b) detuned (delta=10); (c) Kerr only
    (chi=0.5); (d) Stark only (beta1=6, beta2=1); (e) all three combined.
    """
    try:
        delta, chi, beta1, beta2 = _SCENARIO_TABLE[label]
    except KeyError:
        raise ValueError(f"unknown scenario label {label!r}, expected one of {SCENARIO_LABELS}") from None
    return ScenarioPreset(label=label, delta=delta, chi=chi, beta1=beta1, beta2=beta2)
