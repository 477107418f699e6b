"""DIMACS CNF reader/writer with a one-line metadata comment.

The metadata line looks like::

    c biased-ksat k=3 p=0.4 seed=7 mode=discrete

``p`` is written with ``repr`` so it round-trips to the same double.
"""

import io
import re

from .formula import BiasParams, Formula, InvalidParameters

META_RE = re.compile(
    r"^c biased-ksat k=(?P<k>\d+) p=(?P<p>\S+) seed=(?P<seed>\d+) mode=(?P<mode>discrete|poisson)\s*$"
)


class DimacsError(ValueError):
    def __init__(self, msg, lineno=None):
        self.lineno = lineno
        super().__init__(f"line {lineno}: {msg}" if lineno is not None else msg)


def dumps(f: Formula) -> bytes:
    out = io.StringIO()
    out.write(f"c biased-ksat k={f.k} p={f.bias.p!r} seed={f.seed} mode={f.mode}\n")
    out.write(f"p cnf {f.n} {f.m}\n")
    for clause in f.clauses:
        out.write(" ".join(map(str, clause)))
        out.write(" 0\n")
    return out.getvalue().encode("ascii")


def write(f: Formula, fh) -> None:
    fh.write(dumps(f))


def loads(data) -> Formula:
    text = data.decode("ascii") if isinstance(data, (bytes, bytearray)) else data
    meta = None
    header = None
    clauses = []
    pending = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("c"):
            mt = META_RE.match(line)
            if mt:
                meta = mt
            continue
        if line.startswith("p"):
            parts = line.split()
            if header is not None or len(parts) != 4 or parts[1] != "cnf":
                raise DimacsError(f"bad header {line!r}", lineno)
            try:
                header = (int(parts[2]), int(parts[3]))
            except ValueError:
                raise DimacsError(f"bad header {line!r}", lineno) from None
            continue
        if header is None:
            raise DimacsError("clause before 'p cnf' header", lineno)
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise DimacsError(f"bad literal {tok!r}", lineno) from None
            if lit == 0:
                try:
                    clauses.append(_check(pending, header[0]))
                except InvalidParameters as e:
                    raise DimacsError(str(e), lineno) from None
                pending = []
            else:
                pending.append(lit)
    if header is None:
        raise DimacsError("missing 'p cnf' header")
    if pending:
        raise DimacsError("last clause not terminated by 0")
    n, m = header
    if len(clauses) != m:
        raise DimacsError(f"header announces {m} clauses, found {len(clauses)}")
    if meta is not None:
        k, p = int(meta["k"]), float(meta["p"])
        seed, mode = int(meta["seed"]), meta["mode"]
    else:
        k = max((len(c) for c in clauses), default=0)
        p, seed, mode = 0.5, 0, "discrete"
    try:
        return Formula(n, k, BiasParams(p), tuple(clauses), seed, mode)
    except InvalidParameters as e:
        raise DimacsError(str(e)) from None


def read(fh) -> Formula:
    return loads(fh.read())


def _check(lits, n):
    vars_ = [abs(l) for l in lits]
    if len(set(vars_)) != len(vars_):
        raise InvalidParameters(f"repeated variable in clause {lits}")
    if any(v > n for v in vars_):
        raise InvalidParameters(f"variable out of range in clause {lits}")
    return tuple(lits)
