"""
定义公理、极限定理与有限差分 Green 函数对照的数值验证
"""
