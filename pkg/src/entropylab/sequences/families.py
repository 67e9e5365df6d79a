"""Parametric density sequences n -> f_n and their limits."""
import math
from abc import ABC, abstractmethod
from dataclasses import dataclass, field

from entropylab.density import Piece, PiecewisePdf, make_pdf, uniform

MAX_N = 10**6
# support endpoint 2n + e^n / n must stay a finite float
CONVERSE_FAILS_MAX_N = 700


class RangeError(ValueError):
    """Exception raised when n lies outside a family's range.

    Attributes:
        family -- name of the family
        n -- requested index
        n_min, n_max -- admissible range (n_max None means unbounded)
    """

    def __init__(
        self,
        family: str,
        n: int,
        n_min: int,
        n_max: int | None,
        message: str = "Index n outside of the family's range.",
    ) -> None:
        self.family = family
        self.n = n
        self.n_min = n_min
        self.n_max = n_max
        self.message = message
        super().__init__(self.message)

    def __str__(self) -> str:
        upper = "∞" if self.n_max is None else self.n_max
        return (
            f"{self.message} Family: {self.family}."
            f" Allowed: {self.n_min} <= n <= {upper}. Got: {self.n}."
        )


class FamilyNotFoundError(ValueError):
    """Exception raised when an unknown family name is requested.

    Attributes:
        name -- input name which caused the error
        families -- allowed names
    """

    def __init__(
        self,
        name: str,
        families,
        message: str = "Input family is not an allowed value.",
    ) -> None:
        self.name = name
        self.families = tuple(families)
        self.message = message
        super().__init__(self.message)

    def __str__(self) -> str:
        return (
            f"{self.message} Allowed values: {self.families}."
            f" Got: {self.name}."
        )


def log_grid(n_min: int, n_max: int) -> list[int]:
    """Log-spaced indices {1, 3} x 10^k inside [n_min, n_max], plus ends."""
    values = {n_min, n_max}
    decade = 1
    while decade <= n_max:
        for mantissa in (1, 3):
            candidate = mantissa * decade
            if n_min <= candidate <= n_max:
                values.add(candidate)
        decade *= 10
    return sorted(values)


@dataclass(frozen=True)
class Family(ABC):
    """Basic representation of a density sequence n -> f_n with a limit."""

    name: str = field(init=False, default="family")
    n_min: int = field(init=False, default=2)
    n_max: int | None = field(init=False, default=None)

    def check_n(self, n: int) -> None:
        if n < self.n_min or (self.n_max is not None and n > self.n_max):
            raise RangeError(self.name, n, self.n_min, self.n_max)

    def generate(self, n: int) -> PiecewisePdf:
        """Validated member f_n."""
        self.check_n(n)
        return make_pdf(self._pieces(n))

    @abstractmethod
    def _pieces(self, n: int) -> list[Piece]:
        """Pieces of f_n for an admissible n."""

    def limit(self) -> PiecewisePdf:
        """Limit density f."""
        return uniform(0.0, 1.0)

    def members(self, n_range: tuple[int, int]) -> list[int]:
        """All admissible indices in the closed range ``n_range``."""
        n_low, n_high = n_range
        _check_order(self.name, n_low, n_high, self.n_max)
        self.check_n(n_low)
        self.check_n(n_high)
        return list(range(n_low, n_high + 1))

    def default_n_values(self) -> list[int]:
        n_high = MAX_N if self.n_max is None else self.n_max
        return log_grid(self.n_min, n_high)


def _check_order(
    family: str, n_low: int, n_high: int, n_max: int | None
) -> None:
    if n_low > n_high:
        raise RangeError(
            family,
            n_high,
            n_low,
            n_max,
            message="Range of n is empty: upper end below lower end.",
        )


def _spike_with_background(
    log_spike_height: float, log_spike_width: float, background_mass: float
) -> list[Piece]:
    """Spike on [0, δ) and constant background on [δ, 1)."""
    delta = math.exp(log_spike_width)
    log_background = math.log1p(-delta)
    return [
        Piece(0.0, log_spike_width, log_spike_height),
        Piece(
            delta,
            log_background,
            math.log(background_mass) - log_background,
        ),
    ]


@dataclass(frozen=True)
class GhCounterexample(Family):
    """Spike e^n on width e^-n / n over a background c_n on [0, 1).

    Moving exponents α_n = 1 + 1/log n keep the α_n-moments bounded by e + 1
    while H(f_n) -> -1 and H(f) = 0.
    """

    name: str = field(init=False, default="gh-counterexample")
    n_min: int = field(init=False, default=3)
    n_max: int | None = field(init=False, default=MAX_N)

    def _pieces(self, n: int) -> list[Piece]:
        return _spike_with_background(
            log_spike_height=float(n),
            log_spike_width=-n - math.log(n),
            background_mass=1.0 - 1.0 / n,
        )

    @staticmethod
    def spike_width(n: int) -> float:
        """δ_n = e^-n / n."""
        return math.exp(-n - math.log(n))

    @staticmethod
    def background_value(n: int) -> float:
        """c_n = (1 - 1/n) / (1 - δ_n)."""
        return (1.0 - 1.0 / n) / (1.0 - GhCounterexample.spike_width(n))


@dataclass(frozen=True)
class ConverseFails(Family):
    """Background 1 - 2/n on [0, 1) plus two spikes of mass 1/n each.

    The tall spike (height e^n at x = n) and the short spike (height e^-n at
    x = 2n) cancel in H(f_n) but each carries entropy-integrand mass 1, and
    the short spike escapes every fixed window.
    """

    name: str = field(init=False, default="converse-fails")
    n_min: int = field(init=False, default=3)
    n_max: int | None = field(init=False, default=CONVERSE_FAILS_MAX_N)

    def _pieces(self, n: int) -> list[Piece]:
        log_n = math.log(n)
        return [
            Piece(0.0, 0.0, math.log1p(-2.0 / n)),
            Piece(float(n), -n - log_n, float(n)),
            Piece(2.0 * n, n - log_n, float(-n)),
        ]


@dataclass(frozen=True)
class OrliczSpike(Family):
    """Spike e^n on width δ_n = 1 / (n e^n log(1 + n)) over a background.

    The t log(1 + t) moment of the spike is exactly 1, while every fixed
    α-moment grows like n^(α - 1) / log(1 + n).
    """

    name: str = field(init=False, default="orlicz-spike")
    n_min: int = field(init=False, default=2)
    n_max: int | None = field(init=False, default=MAX_N)

    def _pieces(self, n: int) -> list[Piece]:
        log_log1p = math.log(math.log1p(n))
        return _spike_with_background(
            log_spike_height=float(n),
            log_spike_width=-n - math.log(n) - log_log1p,
            background_mass=1.0 - math.exp(-math.log(n) - log_log1p),
        )


@dataclass(frozen=True)
class BoundedRatio(Family):
    """1 + 1/n on [0, 1/2) and 1 - 1/n on [1/2, 1); f_n / f <= 1 + 1/n."""

    name: str = field(init=False, default="bounded-ratio")

    def _pieces(self, n: int) -> list[Piece]:
        half = math.log(0.5)
        return [
            Piece(0.0, half, math.log1p(1.0 / n)),
            Piece(0.5, half, math.log1p(-1.0 / n)),
        ]


@dataclass(frozen=True)
class ShrinkingUniform(Family):
    """Uniform on [0, 1 + 1/n); bounded by 1 with bounded moments."""

    name: str = field(init=False, default="shrinking-uniform")

    def _pieces(self, n: int) -> list[Piece]:
        log_width = math.log1p(1.0 / n)
        return [Piece(0.0, log_width, -log_width)]


@dataclass(frozen=True)
class CustomFamily(Family):
    """Family given by explicit members {n: f_n} and a limit."""

    pdfs: dict[int, PiecewisePdf] = field(default_factory=dict)
    limit_pdf: PiecewisePdf | None = None
    name: str = field(init=False, default="custom")

    def __post_init__(self) -> None:
        if not self.pdfs or self.limit_pdf is None:
            raise ValueError(
                "A custom family needs at least one member and a limit."
            )
        object.__setattr__(self, "n_min", min(self.pdfs))
        object.__setattr__(self, "n_max", max(self.pdfs))

    def check_n(self, n: int) -> None:
        if n not in self.pdfs:
            raise RangeError(self.name, n, self.n_min, self.n_max)

    def generate(self, n: int) -> PiecewisePdf:
        self.check_n(n)
        return self.pdfs[n]

    def _pieces(self, n: int) -> list[Piece]:
        return list(self.pdfs[n].pieces)

    def limit(self) -> PiecewisePdf:
        return self.limit_pdf  # type: ignore

    def members(self, n_range: tuple[int, int]) -> list[int]:
        n_low, n_high = n_range
        _check_order(self.name, n_low, n_high, self.n_max)
        members = sorted(n for n in self.pdfs if n_low <= n <= n_high)
        if not members:
            raise RangeError(
                self.name,
                n_low,
                self.n_min,
                self.n_max,
                message="No member of the family lies in the range.",
            )
        return members

    def default_n_values(self) -> list[int]:
        return sorted(self.pdfs)


FAMILIES: dict[str, type[Family]] = {
    "gh-counterexample": GhCounterexample,
    "converse-fails": ConverseFails,
    "orlicz-spike": OrliczSpike,
    "bounded-ratio": BoundedRatio,
    "shrinking-uniform": ShrinkingUniform,
}


def get_family(name: str) -> Family:
    """Create and return the built-in family registered under ``name``.

    Parameters
    ----------
    name : str
        Allowed values: "gh-counterexample", "converse-fails",
        "orlicz-spike", "bounded-ratio", "shrinking-uniform".

    Returns
    -------
    Family
        Instance of the requested family.
    """
    key = name.lower()
    if key not in FAMILIES:
        raise FamilyNotFoundError(name, FAMILIES)
    return FAMILIES[key]()


def generate(spec: Family, n: int) -> PiecewisePdf:
    """Member f_n of ``spec``; raises :class:`RangeError` outside range."""
    return spec.generate(n)


def limit(spec: Family) -> PiecewisePdf:
    """Limit density of ``spec``."""
    return spec.limit()


def gh_alpha(n: int) -> float:
    """Moving exponent α_n = 1 + 1/log n of the GH conjecture (n >= 3)."""
    if n < 3:
        raise RangeError("gh_alpha", n, 3, None)
    return 1.0 + 1.0 / math.log(n)
