"""Read and write piecewise densities and custom families as JSON.

A density is an array of ``{"start", "log_length", "log_value"}`` objects; the
value 0 is written as ``"-inf"``. A custom family file has the layout
``{"pdfs": [{"n": int, "pieces": [...]}, ...], "limit": {"pieces": [...]}}``.
"""
import json
import math
from collections.abc import Iterable, Sequence
from pathlib import Path
from typing import Any

from entropylab.density import DensityError, Piece, PiecewisePdf, make_pdf
from entropylab.sequences import CustomFamily, Family

NON_FINITE = {"inf": math.inf, "-inf": -math.inf}


class FamilyFileError(ValueError):
    """Exception raised when a custom family file cannot be used.

    Attributes:
        path -- file which caused the error
        reason -- what went wrong
    """

    def __init__(
        self,
        path: Path | str,
        reason: str,
        message: str = "Custom family file could not be read.",
    ) -> None:
        self.path = Path(path)
        self.reason = reason
        self.message = message
        super().__init__(self.message)

    def __str__(self) -> str:
        return f"{self.message} File: {self.path}. Reason: {self.reason}"


def encode_float(value: float) -> float | str:
    """Finite floats unchanged; ``±inf`` becomes ``"inf"`` or ``"-inf"``."""
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return value


def decode_float(value: float | int | str) -> float:
    if isinstance(value, str):
        if value not in NON_FINITE:
            raise ValueError(f"Unknown float encoding: {value!r}.")
        return NON_FINITE[value]
    return float(value)


def pieces_to_json(pieces: Iterable[Piece]) -> list[dict[str, Any]]:
    return [
        {
            "start": encode_float(piece.start),
            "log_length": encode_float(piece.log_length),
            "log_value": encode_float(piece.log_value),
        }
        for piece in pieces
    ]


def pieces_from_json(items: Sequence[dict[str, Any]]) -> list[Piece]:
    return [
        Piece(
            start=decode_float(item["start"]),
            log_length=decode_float(item["log_length"]),
            log_value=decode_float(item["log_value"]),
        )
        for item in items
    ]


def pdf_to_json(pdf: PiecewisePdf) -> list[dict[str, Any]]:
    """Serializable form of ``pdf``."""
    return pieces_to_json(pdf.pieces)


def pdf_from_json(items: Sequence[dict[str, Any]]) -> PiecewisePdf:
    """Validated density from its serialized form."""
    return make_pdf(pieces_from_json(items))


def family_to_json(
    members: dict[int, PiecewisePdf], limit_pdf: PiecewisePdf
) -> dict[str, Any]:
    """Custom family layout for the given members and limit."""
    return {
        "pdfs": [
            {"n": n, "pieces": pdf_to_json(members[n])}
            for n in sorted(members)
        ],
        "limit": {"pieces": pdf_to_json(limit_pdf)},
    }


def dump_family(
    spec: Family, n_values: Sequence[int], path: Path | str
) -> None:
    """Write members ``n_values`` of ``spec`` and its limit to ``path``."""
    members = {n: spec.generate(n) for n in n_values}
    with open(path, "w", encoding="utf-8", newline="\n") as file:
        json.dump(family_to_json(members, spec.limit()), file, indent=2)
        file.write("\n")


def load_family(path: Path | str) -> CustomFamily:
    """Read a custom family file.

    Raises:
        FamilyFileError: the file is missing, not JSON, lacks required keys
            or holds an invalid density.
    """
    path = Path(path)
    try:
        with open(path, encoding="utf-8") as file:
            content = json.load(file)
        members = {
            int(item["n"]): pdf_from_json(item["pieces"])
            for item in content["pdfs"]
        }
        limit_pdf = pdf_from_json(content["limit"]["pieces"])
    except OSError as error:
        raise FamilyFileError(path, str(error)) from error
    except json.JSONDecodeError as error:
        raise FamilyFileError(path, f"invalid JSON ({error})") from error
    except (KeyError, TypeError) as error:
        raise FamilyFileError(
            path, f"missing or malformed entry {error}"
        ) from error
    except DensityError as error:
        raise FamilyFileError(path, str(error)) from error
    except ValueError as error:
        raise FamilyFileError(path, str(error)) from error
    if not members:
        raise FamilyFileError(path, "no member densities")
    return CustomFamily(pdfs=members, limit_pdf=limit_pdf)
