"""
边界增长指数估计与 b_max 极小化
"""
