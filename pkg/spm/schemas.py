# spm/schemas.py
from typing import List, Literal, Optional

from pydantic import BaseModel, Field


# ============================================================
# 🕸 DIAGRAM DOCUMENTS
# ============================================================

class DiagramDocument(BaseModel):
    kind: Literal["single", "upto"]
    n: int = Field(..., ge=0)
    coords: Optional[Literal["finite", "infinite"]] = None
    nodes: List[List[int]]
    edges: List[List[int]] = Field(..., description="[source id, label, target id] triples")


# ============================================================
# ✅ VERIFICATION REPORTS
# ============================================================

class CheckResult(BaseModel):
    name: str
    passed: bool
    failures: List[str] = Field(default_factory=list)


class LatticeReport(BaseModel):
    n: int
    nodes: int
    edges: int
    checks: List[CheckResult] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


class FilterReport(BaseModel):
    n: int
    big_n: int
    checks: List[CheckResult] = Field(default_factory=list)
    fallback_activations: int = 0

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


class QClassReport(BaseModel):
    k: int
    size: int
    maximum: Optional[List[int]]
    lattice: bool
    reachable_from_maximum: bool
    internal_labels_above_i: bool
    meet_closed: bool


# ============================================================
# 🪜 STRATIFICATION / THEOREM 3
# ============================================================

class StratificationReport(BaseModel):
    n: int
    p_sizes: List[int]
    i_sizes: List[int]
    c_sizes: List[int]


class Theorem3Report(BaseModel):
    i: int
    n: int = Field(..., description="the grain count n+2 the decomposition describes")
    status: Literal["ok", "multiset-mismatch"]
    duplicates: List[List[int]] = Field(default_factory=list)
    missing: List[List[int]] = Field(default_factory=list)
    extra: List[List[int]] = Field(default_factory=list)
    rhs_size: int
    true_size: int


# ============================================================
# 📊 RECONCILIATION
# ============================================================

class ReconciliationRow(BaseModel):
    formula: str
    variant: str
    args: str
    formula_value: Optional[int]
    oracle_value: Optional[int]
    status: Literal["match", "mismatch", "ok", "multiset-mismatch"]


class ReconciliationReport(BaseModel):
    max_n: int
    max_l: int
    max_k: int
    notes: List[str] = Field(default_factory=list)
    rows: List[ReconciliationRow] = Field(default_factory=list)

    def mismatches(self, formula: Optional[str] = None, variant: Optional[str] = None) -> List[ReconciliationRow]:
        return [
            r for r in self.rows
            if r.status in ("mismatch", "multiset-mismatch")
            and (formula is None or r.formula == formula)
            and (variant is None or r.variant == variant)
        ]


# ============================================================
# ⏱ BENCH / TREE ROWS
# ============================================================

class BenchRow(BaseModel):
    n: int
    nodes: int
    edges: int
    seconds: float
    seconds_per_element: float


class ChainRow(BaseModel):
    level: int
    node: str
    attachment: str
