"""Thin wrapper around the msolve binary.

msolve computes Groebner bases and rational parametrizations over Q and
returns certified isolating boxes for the real solutions of
zero-dimensional systems.  We use it as the exact backend behind the
point-counting oracle.
"""

from __future__ import annotations

import importlib.util
import os
import re
import shutil
import subprocess
import tempfile
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from pathlib import Path

from .errors import BackendFailure, BackendUnavailable, DimensionMismatch
from .intervals import Interval
from .poly import SparsePoly, integer_primitive

DEFAULT_TIMEOUT = 900


@lru_cache(maxsize=1)
def binary() -> str:
    spec = importlib.util.find_spec("sage_wheels")
    if spec is not None and spec.submodule_search_locations:
        for loc in spec.submodule_search_locations:
            cand = Path(loc) / "bin" / "msolve"
            if cand.exists():
                return str(cand)
    found = shutil.which("msolve")
    if found:
        return found
    raise BackendUnavailable("msolve binary not found; install passagemath-msolve")


def format_poly(p: SparsePoly, names) -> str:
    ints = integer_primitive(p)
    parts = []
    for e in sorted(ints, reverse=True):
        c = ints[e]
        mono = "*".join(f"{names[i]}^{k}" if k > 1 else names[i]
                        for i, k in enumerate(e) if k)
        if mono:
            parts.append(f"{c}*{mono}")
        else:
            parts.append(str(c))
    return "+".join(parts).replace("+-", "-")


_TOKEN = re.compile(r"\s*(?:(\[)|(\])|(,)|'([^']*)'|(-?\d+)\s*/\s*2\^(\d+)|(-?\d+)\s*/\s*(\d+)|(-?\d+))")


def parse_output(text: str):
    """Parse msolve's bracketed output into nested Python lists."""
    text = text.strip()
    if text.endswith(":"):
        text = text[:-1]
    text = "[" + text + "]"
    pos = 0
    stack = [[]]
    while True:
        m = _TOKEN.match(text, pos)
        if not m:
            rest = text[pos:].strip()
            if rest:
                raise BackendFailure(f"cannot parse msolve output near {rest[:40]!r}")
            break
        pos = m.end()
        if m.group(1):
            stack.append([])
        elif m.group(2):
            done = stack.pop()
            stack[-1].append(done)
        elif m.group(3):
            continue
        elif m.group(4) is not None:
            stack[-1].append(m.group(4))
        elif m.group(5) is not None:
            stack[-1].append(Fraction(int(m.group(5)), 2 ** int(m.group(6))))
        elif m.group(7) is not None:
            stack[-1].append(Fraction(int(m.group(7)), int(m.group(8))))
        else:
            stack[-1].append(int(m.group(9)))
    if len(stack) != 1 or len(stack[0]) != 1:
        raise BackendFailure("unbalanced msolve output")
    return stack[0][0]


@dataclass
class MsolveResult:
    status: str                      # "empty", "positive", or "finite"
    boxes: list = field(default_factory=list)
    eliminant: list | None = None    # dense integer coefficients, if requested
    raw: str = ""

    @property
    def real_count(self):
        return len(self.boxes)


def solve(polys, nvars, *, parametrize=False, precision=128, threads=1,
          timeout=DEFAULT_TIMEOUT) -> MsolveResult:
    """Run msolve on real-coefficient polynomials in ``nvars`` variables."""
    polys = [p for p in polys if not p.is_zero()]
    for p in polys:
        if p.nvars != nvars:
            raise DimensionMismatch("polynomial arity differs from nvars")
        if p.is_complex:
            raise DimensionMismatch("msolve needs rational coefficients")
    if any(p.is_constant() for p in polys):
        return MsolveResult("empty")
    if nvars == 0:
        return MsolveResult("finite", boxes=[[]], eliminant=[0, 1])
    if not polys:
        return MsolveResult("positive")
    names = [f"x{i}" for i in range(nvars)]
    used = sorted({i for p in polys for i in p.used_variables()})
    if len(used) < nvars:
        # a free coordinate: the solution set is empty or positive dimensional
        sub = solve([_restrict(p, used) for p in polys], len(used), precision=precision,
                    threads=threads, timeout=timeout)
        return MsolveResult("empty" if sub.status == "empty" else "positive")
    body = ",\n".join(format_poly(p, names) for p in polys)
    with tempfile.TemporaryDirectory(prefix="crag-ms-") as tmp:
        src = os.path.join(tmp, "in.ms")
        dst = os.path.join(tmp, "out.ms")
        with open(src, "w") as fh:
            fh.write(",".join(names) + "\n0\n" + body + "\n")
        cmd = [binary(), "-f", src, "-o", dst, "-p", str(int(precision)), "-t", str(threads)]
        if parametrize:
            cmd += ["-P", "1"]
        try:
            proc = subprocess.run(cmd, capture_output=True, text=True, timeout=timeout)
        except subprocess.TimeoutExpired as exc:
            raise BackendFailure(f"msolve timed out after {timeout}s") from exc
        if proc.returncode != 0 or not os.path.exists(dst):
            raise BackendFailure(f"msolve failed ({proc.returncode}): {proc.stderr.strip()[:200]}")
        with open(dst) as fh:
            raw = fh.read()
    return interpret(parse_output(raw), nvars, raw)


def _restrict(p, used):
    return SparsePoly(len(used), {tuple(e[i] for i in used): c for e, c in p.terms.items()})


def interpret(tree, nvars, raw="") -> MsolveResult:
    # tree is the list of top-level items
    if tree == [[-1]]:
        return MsolveResult("empty", raw=raw)
    head = tree[0]
    if isinstance(head, list) and len(head) >= 3 and head[0] == 1 and head[2] == -1:
        return MsolveResult("positive", raw=raw)
    if not (isinstance(head, list) and head and head[0] == 0):
        raise BackendFailure(f"unexpected msolve output: {raw[:120]!r}")
    elim = None
    box_part = None
    for item in head[1:]:
        if isinstance(item, list) and len(item) >= 2 and item[0] == 0 and isinstance(item[1], int):
            elim = _eliminant(item)
        elif isinstance(item, list) and len(item) == 2 and item[0] == 1:
            box_part = item[1]
        elif isinstance(item, list) and len(item) == 2 and item[0] == -1:
            return MsolveResult("positive", raw=raw)
    if box_part is None:
        raise BackendFailure(f"no solution block in msolve output: {raw[:120]!r}")
    boxes = []
    for b in box_part:
        if len(b) < nvars:
            raise BackendFailure("box with too few coordinates")
        boxes.append([Interval(lo, hi) for lo, hi in b[:nvars]])
    return MsolveResult("finite", boxes=boxes, eliminant=elim, raw=raw)


def _eliminant(param):
    # [0, nvars, dim, vars, linear form, [1, [[deg, coeffs], ...]]]
    data = param[5]
    if isinstance(data, list) and len(data) == 2 and data[0] == 1:
        first = data[1][0]
        return [int(c) for c in first[1]]
    raise BackendFailure("unrecognised parametrization block")
