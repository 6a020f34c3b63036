"""
验证结果的结构化报告
"""
import math
from dataclasses import dataclass, field
from typing import Any, List, Optional

from kernels.geometry import CPoint


class Expectation:
    PASS = "pass"
    FAIL = "fail"   # 反例对照，检查本身应当失败


def _json_witness(witness: Any) -> Any:
    if witness is None:
        return None
    if isinstance(witness, CPoint):
        return str(witness)
    if isinstance(witness, (tuple, list)):
        return [_json_witness(item) for item in witness]
    return witness


def _json_number(value: float) -> Optional[float]:
    return float(value) if math.isfinite(value) else None


@dataclass
class PropertyCheck:
    """单项检查：passed 当且仅当 measured <= threshold"""
    name: str
    measured: float
    threshold: float
    witness: Any = None
    expect: str = Expectation.PASS

    @property
    def passed(self) -> bool:
        return bool(self.measured <= self.threshold)

    @property
    def as_expected(self) -> bool:
        return bool(self.passed == (self.expect == Expectation.PASS))

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "expect": self.expect,
            "passed": self.passed,
            "measured": _json_number(self.measured),
            "threshold": _json_number(self.threshold),
            # 失败的检查总是带着触发输入
            "witness": _json_witness(self.witness) if not self.passed else None,
        }


@dataclass
class PropertyReport:
    """一组检查"""
    checks: List[PropertyCheck] = field(default_factory=list)

    def add(self, check: PropertyCheck) -> PropertyCheck:
        self.checks.append(check)
        return check

    def extend(self, other: "PropertyReport") -> None:
        self.checks.extend(other.checks)

    @property
    def all_as_expected(self) -> bool:
        return all(check.as_expected for check in self.checks)

    def unexpected(self) -> List[PropertyCheck]:
        return [check for check in self.checks if not check.as_expected]

    def by_name(self, name: str) -> PropertyCheck:
        for check in self.checks:
            if check.name == name:
                return check
        raise KeyError(name)

    def as_list(self) -> list:
        return [check.as_dict() for check in self.checks]


@dataclass
class ConvergenceReport:
    """Nakai 逼近的误差随 t 的变化"""
    t_values: List[float]
    errors: List[float]
    fitted_rate: Optional[float]
    seed: int
    samples: List[tuple]

    def __post_init__(self):
        if len(self.t_values) != len(self.errors):
            raise ValueError("t_values and errors must have equal length")

    @property
    def strictly_decreasing(self) -> bool:
        return all(b < a for a, b in zip(self.errors, self.errors[1:]))

    def as_dict(self) -> dict:
        return {
            "t": list(self.t_values),
            "sup_error": [float(error) for error in self.errors],
            "fitted_rate": None if self.fitted_rate is None else float(self.fitted_rate),
            "seed": self.seed,
            "samples": [[str(p), str(q)] for p, q in self.samples],
        }
