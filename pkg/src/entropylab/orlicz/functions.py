"""Superlinear Orlicz test functions Ψ and their tail-ratio profile φ(T).

All built-in kinds are convex with Ψ(0) = 0, so Ψ(t)/t is nondecreasing and
φ(T) = sup_{t >= T} t / Ψ(t) is attained at T for T >= 1.
"""
import math
from dataclasses import dataclass, field

import numpy as np
import scipy.optimize

KINDS = ("power", "tlog1p", "tloge", "tlogpow", "tloglog", "exp")
_PARAMETRIZED = {"power": "ALPHA", "tlogpow": "P", "exp": "S"}


class DomainError(ValueError):
    """Exception raised when an argument lies outside a function's domain.

    Attributes:
        name -- name of the offending argument
        value -- offending value
    """

    def __init__(
        self,
        name: str,
        value: float,
        message: str = "Argument outside of the allowed domain.",
    ) -> None:
        self.name = name
        self.value = value
        self.message = message
        super().__init__(self.message)

    def __str__(self) -> str:
        return f"{self.message} Got: {self.name}={self.value!r}."


class PsiNotFoundError(ValueError):
    """Exception raised when a Ψ selector string cannot be parsed.

    Attributes:
        selector -- input selector which caused the error
        kinds -- allowed selector kinds
    """

    def __init__(
        self,
        selector: str,
        message: str = "Input Ψ selector is not an allowed value.",
    ) -> None:
        self.selector = selector
        self.kinds = tuple(
            f"{kind}:{_PARAMETRIZED[kind]}" if kind in _PARAMETRIZED else kind
            for kind in KINDS
        )
        self.message = message
        super().__init__(self.message)

    def __str__(self) -> str:
        return (
            f"{self.message} Allowed values: {self.kinds}."
            f" Got: {self.selector}."
        )


@dataclass(frozen=True)
class OrliczFn:
    """Built-in Orlicz function Ψ.

    ``param`` is α for ``power`` (α > 1), p for ``tlogpow`` (p >= 1) and s
    for ``exp`` (s > 0, Ψ(t) = e^{st} - 1); it is unused otherwise.
    """

    kind: str
    param: float | None = field(default=None)

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise PsiNotFoundError(self.kind)
        if self.kind in _PARAMETRIZED and self.param is None:
            raise DomainError(f"{self.kind} parameter", math.nan)
        if self.kind == "power" and not self.param > 1:  # type: ignore
            raise DomainError("alpha", self.param)  # type: ignore
        if self.kind == "tlogpow" and not self.param >= 1:  # type: ignore
            raise DomainError("p", self.param)  # type: ignore
        if self.kind == "exp" and not self.param > 0:  # type: ignore
            raise DomainError("s", self.param)  # type: ignore

    @property
    def name(self) -> str:
        if self.kind in _PARAMETRIZED:
            return f"{self.kind}:{self.param:g}"
        return self.kind

    def __str__(self) -> str:
        return self.name


def power(alpha: float) -> OrliczFn:
    """Ψ(t) = t^α."""
    return OrliczFn("power", float(alpha))


def parse_psi(selector: str) -> OrliczFn:
    """Parse a CLI selector such as ``"power:1.5"`` or ``"tlog1p"``."""
    kind, _, param = selector.strip().lower().partition(":")
    if kind not in KINDS:
        raise PsiNotFoundError(selector)
    if kind in _PARAMETRIZED:
        try:
            return OrliczFn(kind, float(param))
        except ValueError as error:
            if isinstance(error, DomainError):
                raise
            raise PsiNotFoundError(selector) from error
    if param:
        raise PsiNotFoundError(selector)
    return OrliczFn(kind)


def _check_t(t: float) -> None:
    if math.isnan(t) or t < 0:
        raise DomainError("t", t)


def psi_eval(psi: OrliczFn, t: float) -> float:
    """Evaluate Ψ(t) for t >= 0; returns inf where Ψ overflows.

    Raises:
        DomainError: ``t`` is negative or NaN.
    """
    _check_t(t)
    if t == 0:
        return 0.0
    if math.isinf(t):
        return math.inf
    match psi.kind:
        case "power":
            try:
                return t**psi.param  # type: ignore
            except OverflowError:
                return math.inf
        case "tlog1p":
            return t * math.log1p(t)
        case "tloge":
            return t * math.log(math.e + t)
        case "tlogpow":
            return t * math.log(math.e + t) ** psi.param  # type: ignore
        case "tloglog":
            return t * math.log1p(math.log1p(t))
        case "exp":
            try:
                return math.expm1(psi.param * t)  # type: ignore
            except OverflowError:
                return math.inf
    raise PsiNotFoundError(psi.kind)


def psi_log_eval(psi: OrliczFn, t: float) -> float:
    """Evaluate log Ψ(t) without overflow; -inf at t = 0."""
    _check_t(t)
    if t == 0:
        return -math.inf
    if math.isinf(t):
        return math.inf
    log_t = math.log(t)
    match psi.kind:
        case "power":
            return psi.param * log_t  # type: ignore
        case "tlog1p":
            return log_t + math.log(math.log1p(t))
        case "tloge":
            return log_t + math.log(math.log(math.e + t))
        case "tlogpow":
            return log_t + psi.param * math.log(  # type: ignore
                math.log(math.e + t)
            )
        case "tloglog":
            return log_t + math.log(math.log1p(math.log1p(t)))
        case "exp":
            exponent = psi.param * t  # type: ignore
            return exponent + math.log(-math.expm1(-exponent))
    raise PsiNotFoundError(psi.kind)


def phi(psi: OrliczFn, T: float, n_grid: int = 257) -> float:
    """Tail ratio φ(T) = sup_{t >= T} t / Ψ(t).

    For T >= 1 this is T / Ψ(T). For T < 1 the supremum over [T, 1] is taken
    on a geometric grid of ``n_grid`` points and joined with the value at 1.

    Raises:
        DomainError: ``T`` is not positive.
    """
    if math.isnan(T) or T <= 0:
        raise DomainError("T", T)
    if T >= 1:
        return _ratio_inverse(psi, T)
    grid = np.geomspace(T, 1.0, n_grid)
    return max(_ratio_inverse(psi, float(t)) for t in grid)


def _ratio_inverse(psi: OrliczFn, t: float) -> float:
    return math.exp(math.log(t) - psi_log_eval(psi, t))


def threshold_t0(psi: OrliczFn) -> float:
    """A T₀ with Ψ(t) >= t for every t >= T₀ (never below e)."""
    if psi.kind == "tloglog":
        # log(1 + log(1 + t)) >= 1  <=>  t >= e^(e - 1) - 1
        return max(math.e, math.expm1(math.e - 1.0))
    if psi.kind == "exp" and psi.param < 1:  # type: ignore
        s = psi.param  # type: ignore

        def excess(t: float) -> float:
            return math.expm1(s * t) - t

        lower = math.log(1.0 / s) / s
        upper = 2.0 * lower
        while excess(upper) <= 0:
            upper *= 2.0
        return max(math.e, scipy.optimize.brentq(excess, lower, upper))
    return math.e


@dataclass(frozen=True)
class SuperlinearityReport:
    """Grid evidence for Ψ(t)/t -> ∞; never a proof."""

    ratios: list[float]
    monotone_beyond_1: bool
    final_ratio: float
    is_proof: bool = False


def superlinearity_report(
    psi: OrliczFn, grid_max_exponent: int
) -> SuperlinearityReport:
    """Evaluate Ψ(t)/t at t = 2^k for k = 0..grid_max_exponent.

    The ratios are compared in log space, so grids beyond the float range
    are allowed and saturated ratios still count as nondecreasing.
    ``monotone_beyond_1`` reports whether the ratios are nondecreasing from
    t = 2 onward.
    """
    if grid_max_exponent < 4:
        raise DomainError("grid_max_exponent", grid_max_exponent)
    log_ratios = np.array(
        [
            log_ratio_at(psi, k * math.log(2.0))
            for k in range(grid_max_exponent + 1)
        ]
    )
    monotone = bool(np.all(log_ratios[2:] >= log_ratios[1:-1]))
    ratios = [_exp_or_inf(value) for value in log_ratios.tolist()]
    return SuperlinearityReport(
        ratios=ratios, monotone_beyond_1=monotone, final_ratio=ratios[-1]
    )


def log_ratio_at(psi: OrliczFn, log_t: float) -> float:
    """log(Ψ(t)/t) given log t; valid for t beyond the float range."""
    match psi.kind:
        case "power":
            return (psi.param - 1.0) * log_t  # type: ignore
        case "tlog1p":
            return math.log(np.logaddexp(0.0, log_t))
        case "tloge":
            return math.log(np.logaddexp(1.0, log_t))
        case "tlogpow":
            return psi.param * math.log(  # type: ignore
                np.logaddexp(1.0, log_t)
            )
        case "tloglog":
            return math.log(math.log1p(np.logaddexp(0.0, log_t)))
        case "exp":
            exponent = _exp_or_inf(math.log(psi.param) + log_t)  # type: ignore
            if math.isinf(exponent):
                return math.inf
            return exponent + math.log(-math.expm1(-exponent)) - log_t
    raise PsiNotFoundError(psi.kind)


def _exp_or_inf(value: float) -> float:
    try:
        return math.exp(value)
    except OverflowError:
        return math.inf
