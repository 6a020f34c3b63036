"""
复平面上的点及复数字面量解析
"""
import math
import re
from dataclasses import dataclass

from .errors import DomainError, ParameterError, PoleError

# 形如 "a+bi"、"-1e-3-2.5i"、"3"、"-i" 的字面量
_NUMBER = r"[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
_LITERAL = re.compile(
    rf"^(?:(?P<re>{_NUMBER})(?P<im>[+-](?:\d+\.?\d*|\.\d+)?(?:[eE][+-]?\d+)?)i"
    rf"|(?P<only_im>[+-]?(?:\d+\.?\d*|\.\d+)?(?:[eE][+-]?\d+)?)i"
    rf"|(?P<only_re>{_NUMBER}))$"
)


def _imag_part(text: str) -> float:
    if text in ("", "+"):
        return 1.0
    if text == "-":
        return -1.0
    return float(text)


@dataclass(frozen=True)
class CPoint:
    """复平面上的点 re + i*im，分量必须有限"""
    re: float
    im: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.re) and math.isfinite(self.im)):
            raise ParameterError(f"parameter: non-finite point ({self.re}, {self.im})")
        # 统一成 float，保证 0 与 0.0 比较一致
        object.__setattr__(self, "re", float(self.re))
        object.__setattr__(self, "im", float(self.im))

    @classmethod
    def from_complex(cls, z: complex) -> "CPoint":
        return cls(z.real, z.imag)

    @classmethod
    def polar(cls, radius: float, angle: float, center: "CPoint | None" = None) -> "CPoint":
        """以 center 为圆心的极坐标点"""
        base = center if center is not None else ORIGIN
        return cls(base.re + radius * math.cos(angle), base.im + radius * math.sin(angle))

    @classmethod
    def parse(cls, text: str) -> "CPoint":
        """解析 a+bi 形式的复数字面量"""
        match = _LITERAL.match(text.strip().replace(" ", ""))
        if match is None:
            raise ParameterError(f"parameter: cannot parse complex literal {text!r}")
        if match.group("only_re") is not None:
            return cls(float(match.group("only_re")), 0.0)
        if match.group("only_im") is not None:
            return cls(0.0, _imag_part(match.group("only_im")))
        return cls(float(match.group("re")), _imag_part(match.group("im")))

    def to_complex(self) -> complex:
        return complex(self.re, self.im)

    def modulus(self) -> float:
        return math.hypot(self.re, self.im)

    def distance(self, other: "CPoint") -> float:
        return math.hypot(self.re - other.re, self.im - other.im)

    def shifted(self, h: float, direction: complex) -> "CPoint":
        """返回 self + h*direction"""
        return CPoint(self.re + h * direction.real, self.im + h * direction.imag)

    def __str__(self) -> str:
        sign = "-" if math.copysign(1.0, self.im) < 0 else "+"
        return f"{self.re!r}{sign}{abs(self.im)!r}i"


ORIGIN = CPoint(0.0, 0.0)
ONE = CPoint(1.0, 0.0)

# 极限方向 {1, i, -1, -i}
UNIT_DIRECTIONS = (1 + 0j, 1j, -1 + 0j, -1j)


def log_distance(p: CPoint, q: CPoint) -> float:
    """log|p - q|，只对模取对数，不经过复对数"""
    return math.log(math.hypot(p.re - q.re, p.im - q.im))


def require_outside(z: CPoint, punctures) -> None:
    """z 落在穿孔点上时抛出 DomainError"""
    for c in punctures:
        if z == c:
            raise DomainError(f"domain: point {z} is a puncture")


def require_distinct(p: CPoint, q: CPoint) -> None:
    """按分量判断 p == q"""
    if p == q:
        raise PoleError("pole: p equals q")
