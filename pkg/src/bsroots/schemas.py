"""Request models for the batch front end."""
from __future__ import annotations

from typing import Any, Dict, List, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator

from .errors import ParseError
from .rational import to_rational

COMMANDS = (
    "solve-b", "snc-bound", "candidates", "lct", "membership",
    "jumps", "budur-saito", "min-exponent", "newton-resolve",
)

PolyInput = Union[str, List[List[Any]]]
RationalInput = Union[str, int]
BoundsInput = Union[str, List[int]]


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid", populate_by_name=True)


def _rational(v):
    try:
        to_rational(v)
    except ParseError as exc:
        raise ValueError(str(exc)) from None
    return v


class ProblemSpec(_Strict):
    command: Literal[COMMANDS]  # type: ignore[valid-type]
    payload: Dict[str, Any] = Field(default_factory=dict)


class DivisorModel(_Strict):
    label: Optional[str] = None
    a: int = Field(ge=0)
    k: int = Field(ge=0)
    b: int = Field(default=0, ge=0)
    exceptional: bool = False


class ResolutionModel(_Strict):
    divisors: List[DivisorModel] = Field(min_length=1)
    reduced: bool = False
    strict_transform_smooth: bool = False


class SolveBPayload(_Strict):
    vars: int = Field(ge=1)
    f: PolyInput
    g: PolyInput = "1"
    bounds: Optional[BoundsInput] = None


class SncBoundPayload(_Strict):
    kind: Literal["general", "m0", "smooth_factor", "shift"] = "general"
    a: Optional[List[int]] = None
    b: Optional[List[int]] = None
    m: int = Field(default=0, ge=0)
    roots: Optional[List[RationalInput]] = None

    @field_validator("roots")
    @classmethod
    def _check_roots(cls, v):
        return v if v is None else [_rational(x) for x in v]


class CandidatesPayload(_Strict):
    resolution: ResolutionModel
    kind: Literal["lichtin", "g1", "remark"] = "lichtin"
    m: int = Field(default=0, ge=0)
    ell_max: int = Field(default=3, ge=0)
    exceptional_only: bool = False


class LctPayload(_Strict):
    resolution: ResolutionModel


class MembershipPayload(_Strict):
    resolution: ResolutionModel
    lam: RationalInput = Field(alias="lambda")

    @field_validator("lam")
    @classmethod
    def _check_lambda(cls, v):
        return _rational(v)


class JumpsPayload(_Strict):
    a: List[int] = Field(min_length=1)
    T: RationalInput = "1"

    @field_validator("T")
    @classmethod
    def _check_T(cls, v):
        return _rational(v)


class BudurSaitoPayload(_Strict):
    a: List[int] = Field(min_length=1)
    alpha: Union[RationalInput, List[RationalInput]]
    cap: int = Field(default=2, ge=0)
    bounds: Optional[BoundsInput] = None

    @field_validator("alpha")
    @classmethod
    def _check_alpha(cls, v):
        for x in v if isinstance(v, list) else [v]:
            _rational(x)
        return v


class MinExponentPayload(_Strict):
    vars: int = Field(default=2, ge=1)
    f: PolyInput
    resolution: Optional[ResolutionModel] = None
    shifts: List[int] = Field(default_factory=lambda: [0, 1, 2])
    bounds: Optional[BoundsInput] = None


class NewtonResolvePayload(_Strict):
    f: PolyInput
    g: List[int] = Field(default_factory=lambda: [0, 0], min_length=2, max_length=2)


PAYLOAD_MODELS = {
    "solve-b": SolveBPayload,
    "snc-bound": SncBoundPayload,
    "candidates": CandidatesPayload,
    "lct": LctPayload,
    "membership": MembershipPayload,
    "jumps": JumpsPayload,
    "budur-saito": BudurSaitoPayload,
    "min-exponent": MinExponentPayload,
    "newton-resolve": NewtonResolvePayload,
}
