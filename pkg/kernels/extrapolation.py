"""
Richardson 外推
"""
from typing import List, Sequence


def richardson_tableau(step_ratio: float, values: Sequence[float]) -> List[List[float]]:
    """逐层消去 h^1, h^2, ... 项，返回整张外推表

    values[i] 为步长 h_0 / step_ratio^i 处的取值，第 m 层第 i 项消去 h^m 项。
    """
    levels = [list(values)]
    for m in range(1, len(values)):
        mult = step_ratio ** m
        factor = 1.0 / (mult - 1.0)
        last_level = levels[-1]
        levels.append([
            factor * (mult * last_level[i + 1] - last_level[i])
            for i in range(len(last_level) - 1)
        ])
    return levels
