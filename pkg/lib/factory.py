from fractions import Fraction

from loguru import logger

from lib.errors import InvalidKernel, KernelSpecError
from lib.kernels import (ExpDemand, LinearG, LogDemand, PayoffKernel, PolyG, PowerGap,
                         PowerRatio, Tullock)

KERNEL_HELP = "tullock | linear:a=A | exp:a=A,b=B | log | power | poly:c0,c1,... | gap:a=A,c=C,s=S"


def _number(text: str, spec: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise KernelSpecError(f"cannot read number {text!r} in kernel spec {spec!r}")


def _params(body: str, spec: str, allowed: tuple) -> dict:
    params = {}
    for item in filter(None, body.split(",")):
        key, sep, value = item.partition("=")
        key = key.strip()
        if not sep or key not in allowed:
            raise KernelSpecError(f"unexpected parameter {item!r} in {spec!r}, expected {allowed}")
        params[key] = _number(value, spec)
    return params


def create_kernel(spec: str) -> PayoffKernel:
    """Build a kernel from its command-line spelling, e.g. ``exp:a=1/2,b=2``."""
    if not spec:
        raise KernelSpecError(f"empty kernel spec, expected {KERNEL_HELP}")
    name, _, body = spec.strip().partition(":")
    name = name.lower()
    try:
        if name.startswith("tullock"):
            kernel = Tullock()
        elif name.startswith("linear"):
            kernel = LinearG(**_params(body, spec, ("a",)))
        elif name.startswith("exp"):
            kernel = ExpDemand(**_params(body, spec, ("a", "b")))
        elif name.startswith("log"):
            kernel = LogDemand()
        elif name.startswith("power"):
            kernel = PowerRatio()
        elif name.startswith("poly"):
            coefficients = tuple(_number(c, spec) for c in body.split(",") if c.strip())
            if not coefficients:
                raise KernelSpecError(f"poly kernel needs coefficients, got {spec!r}")
            kernel = PolyG(coefficients)
        elif name.startswith("gap"):
            kernel = PowerGap(**_params(body, spec, ("a", "c", "s")))
        else:
            raise KernelSpecError(f"{spec} is not supported yet, expected {KERNEL_HELP}")
    except InvalidKernel as e:
        raise KernelSpecError(str(e)) from e
    logger.debug("kernel {} from {!r}", kernel.spec, spec)
    return kernel
