import enum
import re
from typing import Any, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from app.algebra.tgraph import family_info

FAMILY_URI_RE = re.compile(r"^family:([A-Za-z-]+):(\d+)$")

Pair = Tuple[int, int]


class ClaimId(str, enum.Enum):
    part_a = "part_a"
    part_b = "part_b"
    whitney = "whitney"
    feng = "feng"
    restriction = "restriction"
    stabilizer = "stabilizer"
    arc_transitivity = "arc_transitivity"
    connectivity = "connectivity"
    bipartite = "bipartite"


# Verification schemas
class VerificationReport(BaseModel):
    claim: ClaimId
    n: int = Field(..., ge=1)
    s: List[Pair]
    s2: Optional[List[Pair]] = None
    fast: Any
    oracle: Any
    agree: bool
    asserted: bool = True
    exploratory: bool = False
    ms_fast: Optional[float] = None
    ms_oracle: Optional[float] = None
    details: dict[str, Any] = {}

    @model_validator(mode="after")
    def validate_agreement(self):
        if self.agree != (self.fast == self.oracle):
            raise ValueError("agree must equal (fast == oracle)")
        return self

    def instance_key(self) -> tuple:
        return (self.claim.value, self.n, len(self.s), self.s, self.s2 or [])

    @property
    def failed(self) -> bool:
        return self.asserted and not self.agree


class SweepReport(BaseModel):
    claim: ClaimId
    n: int
    total: int
    agreed: int
    failed: int
    reports: List[VerificationReport]


class VerificationRun(BaseModel):
    n: int
    sweeps: List[SweepReport]
    skipped: dict[str, str] = {}

    @property
    def failed(self) -> int:
        return sum(sweep.failed for sweep in self.sweeps)


# Input schemas
class InputSpec(BaseModel):
    source: str
    kind: str = "file"
    family: Optional[str] = None
    degree: Optional[int] = None
    options: dict[str, Any] = {}

    @model_validator(mode="after")
    def validate_source(self):
        if self.source.startswith("family:"):
            match = FAMILY_URI_RE.match(self.source)
            if not match:
                raise ValueError(
                    f"family URI must look like family:<name>:<n>, got {self.source!r}"
                )
            name, degree = match.group(1), int(match.group(2))
            family_info(name)
            self.kind = "family"
            self.family = name
            self.degree = degree
        else:
            self.kind = "file"
        return self


# Analysis schemas
class CayleyStats(BaseModel):
    vertices: int
    edges: int
    regular_degree: int
    bipartite: bool
    parity_bipartition: bool
    aut_order: Optional[int] = None
    g_e_order: Optional[int] = None
    l_e_order: Optional[int] = None
    connectivity: Optional[int] = None


class AnalysisReport(BaseModel):
    source: str
    n: int
    num_generators: int
    generators: List[Pair]
    generating: bool
    t_edge_transitive: Optional[bool] = None
    t_aut_order: Optional[int] = None
    cayley_edge_transitive: Optional[bool] = None
    in_theorem_range: Optional[bool] = None
    cayley_name: Optional[str] = None
    cayley: Optional[CayleyStats] = None
    note: Optional[str] = None


class EnumerationEntry(BaseModel):
    n: int
    m: int
    edges: List[Pair]

    model_config = ConfigDict(
        from_attributes=True,
    )

    @field_validator("edges")
    def validate_edges(cls, v):
        for i, j in v:
            if not i < j:
                raise ValueError(f"edge ({i},{j}) must satisfy i < j")
        return v


class EnumerationReport(BaseModel):
    n: int
    classes: int
    items: List[EnumerationEntry]


class ErrorResponse(BaseModel):
    detail: str
