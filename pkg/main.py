"""
Evans-Selberg 势数值工具主程序入口
子命令：eval 求值、grid 导出网格、converge Nakai 收敛、verify 公理检查、bmax 指数极小化
"""
import argparse
import csv
import json
import logging
import math
import sys
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from analysis.asymptotics import Domain, b_max_of_family, empirical_exponents, kernel_for, minimize_b_max
from kernels.errors import (ConvergenceError, DomainError, KernelError, NumericalError, ParameterError,
                           PoleError)
from kernels.geometry import ONE, ORIGIN, CPoint
from kernels.green_kernel import DEFAULT_TOL, AnnulusSpec, green_negative
from kernels.metric import fundamental_metric_punctured, fundamental_metric_twice
from kernels.punctured_kernel import PuncturedParams, evans_kernel_punctured, evans_selberg_punctured
from kernels.twice_punctured_kernel import TwicePuncturedParams, evans_kernel_twice, evans_selberg_twice
from verification.nakai_study import DEFAULT_SAMPLE_COUNT, DEFAULT_T_VALUES, nakai_convergence_study, standard_samples
from verification.suite import PLANE_POLE, run_axiom_suite

logger = logging.getLogger("evans_selberg")

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_NUMERICAL = 3
EXIT_INTERRUPTED = 130

KERNELS = ("evans", "evans-selberg", "green", "metric")
POINT_OPTIONS = ("--p", "--q")
EXPONENT_AGREEMENT = 1e-3


@dataclass(frozen=True)
class GridSpec:
    """矩形网格，y 为外层循环；离穿孔点或极点不到 mask_radius 的格点输出 nan"""
    x_min: float
    x_max: float
    y_min: float
    y_max: float
    nx: int
    ny: int
    mask_radius: float = 0.0

    def __post_init__(self):
        if not (self.x_min < self.x_max and self.y_min < self.y_max):
            raise ParameterError("parameter: grid bounds must satisfy min < max")
        if self.nx < 2 or self.ny < 2:
            raise ParameterError("parameter: nx and ny must be at least 2")
        if not self.mask_radius >= 0.0:
            raise ParameterError("parameter: mask radius must be non-negative")

    def xs(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.nx)

    def ys(self) -> np.ndarray:
        return np.linspace(self.y_min, self.y_max, self.ny)


@dataclass
class Evaluator:
    """命令行参数确定的标量场 p -> value"""
    value: Callable[[CPoint], float]
    singular_points: Tuple[CPoint, ...]
    contains: Callable[[CPoint], bool] = lambda z: True


def format_scalar(value: float) -> str:
    """16 位有效数字，指数不补零：6.931471805599453e-1"""
    if not math.isfinite(value):
        return repr(value)
    mantissa, exponent = f"{value:.15e}".split("e")
    return f"{mantissa}e{int(exponent)}"


def _required(args, name: str) -> float:
    value = getattr(args, name)
    if value is None:
        raise ParameterError(f"parameter: --{name} is required for --domain {args.domain}")
    return value


def _annulus(args) -> AnnulusSpec:
    if args.r is not None and args.t is not None:
        raise ParameterError("parameter: give either --r or --t, not both")
    if args.t is not None:
        return AnnulusSpec.from_t(args.t, args.tol)
    return AnnulusSpec(_required(args, "r"), args.tol)


def build_evaluator(args, q: Optional[CPoint]) -> Evaluator:
    """按 --domain 与 --kernel 组装求值函数"""
    domain, kernel = args.domain, args.kernel
    if kernel != "metric" and q is None:
        raise ParameterError(f"parameter: --q is required for --kernel {kernel}")

    if domain == Domain.PUNCTURED:
        punctures = (ORIGIN,)
        if kernel == "evans":
            l = _required(args, "l")
            return Evaluator(lambda p: evans_kernel_punctured(p, q, l), punctures + (q,))
        if kernel == "evans-selberg":
            params = PuncturedParams(_required(args, "k"), _required(args, "l"))
            return Evaluator(lambda p: evans_selberg_punctured(p, q, params), punctures + (q,))
        if kernel == "metric":
            s = _required(args, "s")
            return Evaluator(lambda p: fundamental_metric_punctured(p, s), punctures)
    elif domain == Domain.TWICE_PUNCTURED:
        punctures = (ORIGIN, ONE)
        if kernel == "evans":
            k, m = _required(args, "k"), _required(args, "m")
            return Evaluator(lambda p: evans_kernel_twice(p, q, k, m), punctures + (q,))
        if kernel == "evans-selberg":
            params = TwicePuncturedParams(_required(args, "k"), _required(args, "l"),
                                          _required(args, "m"), _required(args, "n"))
            return Evaluator(lambda p: evans_selberg_twice(p, q, params), punctures + (q,))
        if kernel == "metric":
            s, j = _required(args, "s"), _required(args, "j")
            return Evaluator(lambda p: fundamental_metric_twice(p, s, j), punctures)
    elif domain == Domain.ANNULUS and kernel == "green":
        annulus = _annulus(args)
        if not annulus.contains(q):
            raise DomainError(f"domain: pole {q} lies outside the annulus")
        return Evaluator(lambda p: green_negative(p, q, annulus), (q,), annulus.contains)
    raise ParameterError(f"parameter: kernel {kernel} is not defined on domain {domain}")


def cmd_eval(args) -> int:
    evaluator = build_evaluator(args, args.q)
    print(format_scalar(evaluator.value(args.p)))
    return EXIT_OK


def _grid_cell(evaluator: Evaluator, spec: GridSpec, p: CPoint) -> str:
    if not evaluator.contains(p):
        return "nan"
    if any(p.distance(c) < spec.mask_radius for c in evaluator.singular_points):
        return "nan"
    try:
        value = evaluator.value(p)
    except (DomainError, PoleError):
        # 格点正好落在穿孔点或极点上
        return "nan"
    return f"{value:.17g}"


def cmd_grid(args) -> int:
    spec = GridSpec(args.x_min, args.x_max, args.y_min, args.y_max, args.nx, args.ny, args.mask_radius)
    evaluator = build_evaluator(args, args.q)
    rows = []
    for y in spec.ys():
        for x in spec.xs():
            rows.append([f"{x:.17g}", f"{y:.17g}", _grid_cell(evaluator, spec, CPoint(float(x), float(y)))])
    # 全部算完再写文件，出错时不留下半个文件
    with open(args.out, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(["x", "y", "value"])
        writer.writerows(rows)
    logger.info("wrote %d grid rows to %s", len(rows), args.out)
    return EXIT_OK


def _t_list(text: str) -> List[float]:
    try:
        values = [float(item) for item in text.split(",") if item.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid t list {text!r}")
    if not values:
        raise argparse.ArgumentTypeError("t list must not be empty")
    return values


def _dump(payload) -> None:
    print(json.dumps(payload, indent=2, ensure_ascii=False))


def cmd_converge(args) -> int:
    samples = standard_samples(args.seed, args.samples)
    try:
        report = nakai_convergence_study(samples, args.t_list, args.tol, args.seed)
    except (DomainError, PoleError) as e:
        raise ConvergenceError(f"evaluation failed: {e}") from e
    _dump(report.as_dict())
    return EXIT_OK


def _plane_params(args):
    if args.domain == Domain.PUNCTURED:
        return PuncturedParams(_required(args, "k"), _required(args, "l"))
    return TwicePuncturedParams(_required(args, "k"), _required(args, "l"),
                                _required(args, "m"), _required(args, "n"))


def cmd_verify(args) -> int:
    if args.domain == Domain.ANNULUS:
        report = run_axiom_suite(args.domain, r=_annulus(args).r, tol=args.tol,
                                 include_oracle=args.include_oracle)
    else:
        report = run_axiom_suite(args.domain, _plane_params(args))
    _dump(report.as_list())
    for check in report.unexpected():
        print(f"unexpected outcome: {check.name} measured={check.measured!r} "
              f"threshold={check.threshold!r}", file=sys.stderr)
    return EXIT_OK if report.all_as_expected else EXIT_VERIFY_FAILED


def cmd_bmax(args) -> int:
    argmin, value = minimize_b_max(args.domain, args.grid_step)
    if args.domain == Domain.PUNCTURED:
        params = PuncturedParams(argmin["k"], argmin["k"])
    else:
        params = TwicePuncturedParams(argmin["k"], argmin["k"], argmin["m"], argmin["m"])
    analytic = b_max_of_family(args.domain, params)
    empirical = empirical_exponents(kernel_for(args.domain, params), PLANE_POLE)
    pairs = [(analytic.b0, empirical.b0), (analytic.b_inf, empirical.b_inf)]
    if analytic.b1 is not None:
        pairs.append((analytic.b1, empirical.b1))
    error = max(abs(a - e) for a, e in pairs)
    _dump({
        "argmin": argmin,
        "min_b_max": value,
        "empirical_check": {
            "analytic": analytic.as_dict(),
            "estimated": empirical.as_dict(),
            "max_abs_error": float(error),
            "agrees": bool(error <= EXPONENT_AGREEMENT),
        },
    })
    return EXIT_OK


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--debug", action="store_true", help="启用调试模式，日志输出到标准错误")
    parser.add_argument("--meta", action="store_true", help="在标准错误输出运行信息")


def _add_kernel_flags(parser: argparse.ArgumentParser, with_p: bool) -> None:
    parser.add_argument("--domain", required=True, choices=[Domain.PUNCTURED, Domain.TWICE_PUNCTURED, Domain.ANNULUS],
                        help="区域：c0 = C\\{0}，c01 = C\\{0,1}，annulus = 对称圆环")
    parser.add_argument("--kernel", required=True, choices=KERNELS, help="核函数")
    if with_p:
        parser.add_argument("--p", required=True, type=CPoint.parse, help="求值点，形如 a+bi")
    parser.add_argument("--q", type=CPoint.parse, help="极点，形如 a+bi")
    for name in ("k", "l", "m", "n", "s", "j", "r", "t"):
        parser.add_argument(f"--{name}", type=float, help=f"参数 {name}")
    parser.add_argument("--tol", type=float, default=DEFAULT_TOL, help="圆环核截断容差 (默认: 1e-12)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description="Evans-Selberg 势、Evans 核与圆环 Green 核的数值工具")
    commands = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    _add_common(common)

    eval_parser = commands.add_parser("eval", parents=[common], help="在一点求核函数值")
    _add_kernel_flags(eval_parser, with_p=True)
    eval_parser.set_defaults(handler=cmd_eval)

    grid_parser = commands.add_parser("grid", parents=[common], help="在矩形网格上求值并写出 CSV")
    _add_kernel_flags(grid_parser, with_p=False)
    for name in ("x-min", "x-max", "y-min", "y-max"):
        grid_parser.add_argument(f"--{name}", type=float, required=True, help="网格范围")
    grid_parser.add_argument("--nx", type=int, required=True, help="x 方向点数 (>= 2)")
    grid_parser.add_argument("--ny", type=int, required=True, help="y 方向点数 (>= 2)")
    grid_parser.add_argument("--mask-radius", type=float, default=0.0,
                             help="离穿孔点或极点小于该距离的格点输出 nan (默认: 0)")
    grid_parser.add_argument("--out", required=True, help="输出 CSV 路径")
    grid_parser.set_defaults(handler=cmd_grid)

    converge_parser = commands.add_parser("converge", parents=[common], help="Nakai 逼近的收敛研究")
    converge_parser.add_argument("--t-list", type=_t_list, default=list(DEFAULT_T_VALUES),
                                 help="逗号分隔的 t 值 (默认: 1,2,3,4)")
    converge_parser.add_argument("--tol", type=float, default=DEFAULT_TOL, help="截断容差 (默认: 1e-12)")
    converge_parser.add_argument("--seed", type=int, default=0, help="Halton 序列跳过的点数 (默认: 0)")
    converge_parser.add_argument("--samples", type=int, default=DEFAULT_SAMPLE_COUNT, help="样本点对数 (默认: 12)")
    converge_parser.set_defaults(handler=cmd_converge)

    verify_parser = commands.add_parser("verify", parents=[common], help="运行公理检查")
    verify_parser.add_argument("--domain", required=True,
                               choices=[Domain.PUNCTURED, Domain.TWICE_PUNCTURED, Domain.ANNULUS])
    for name in ("k", "l", "m", "n", "r", "t"):
        verify_parser.add_argument(f"--{name}", type=float, help=f"参数 {name}")
    verify_parser.add_argument("--tol", type=float, default=DEFAULT_TOL, help="截断容差 (默认: 1e-12)")
    verify_parser.add_argument("--include-oracle", action="store_true", help="加入有限差分对照解比较")
    verify_parser.set_defaults(handler=cmd_verify)

    bmax_parser = commands.add_parser("bmax", parents=[common], help="在参数网格上极小化 b_max")
    bmax_parser.add_argument("--domain", required=True, choices=[Domain.PUNCTURED, Domain.TWICE_PUNCTURED])
    bmax_parser.add_argument("--grid-step", type=float, required=True, help="参数网格步长 (0, 0.5]")
    bmax_parser.set_defaults(handler=cmd_bmax)
    return parser


def _configure_logging(debug: bool) -> None:
    logging.basicConfig(
        level=logging.DEBUG if debug else logging.WARNING,
        stream=sys.stderr,
        format="%(asctime)s %(name)s %(levelname)s: %(message)s",
        force=True,
    )


def attach_point_values(argv: Sequence[str]) -> List[str]:
    """把 "--q -1+0i" 合并成 "--q=-1+0i"，以免 argparse 把负实部复数当成选项"""
    tokens = list(argv)
    joined = []
    i = 0
    while i < len(tokens):
        token = tokens[i]
        if token in POINT_OPTIONS and i + 1 < len(tokens) and tokens[i + 1].startswith("-"):
            joined.append(f"{token}={tokens[i + 1]}")
            i += 2
        else:
            joined.append(token)
            i += 1
    return joined


def main(argv: Optional[Sequence[str]] = None) -> int:
    """主函数，返回退出码"""
    parser = build_parser()
    if argv is None:
        argv = sys.argv[1:]
    try:
        args = parser.parse_args(attach_point_values(argv))
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    _configure_logging(args.debug)

    if args.meta:
        print(f"# evans-selberg {args.command}: {' '.join(argv)}",
              file=sys.stderr)

    try:
        return args.handler(args)
    except (DomainError, PoleError, ParameterError) as e:
        print(str(e), file=sys.stderr)
        return EXIT_USAGE
    except NumericalError as e:
        print(f"numerical: {e}", file=sys.stderr)
        return EXIT_NUMERICAL
    except KeyboardInterrupt:
        print("\n用户中断程序", file=sys.stderr)
        return EXIT_INTERRUPTED
    except (KernelError, OSError) as e:
        print(f"程序运行出错: {e}", file=sys.stderr)
        if args.debug:
            import traceback
            traceback.print_exc()
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
