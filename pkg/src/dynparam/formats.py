"""Text formats for instances and operation streams.

Instances::

    CS n L sigma d        DF n k                 ED k [nx ny]
    <n lines of L chars>  <n integers in [1,k]>  <x line>
                                                 <y line>

Closest String words use the first ``sigma`` characters of :data:`ALPHABET`.
Operation lines are ``Q`` or ``U <i> <pos> <sym>`` (CS), ``U <pos> <sym>``
(DF), ``U x|y <pos> <sym>`` (ED).  Blank lines and ``#`` comments are ignored
in operation streams.  A file may carry its operations after a ``---`` line.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

from .errors import FormatError

ALPHABET = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789"
SEPARATOR = "---"


@dataclass
class CsInstance:
    n: int
    L: int
    sigma: int
    d: int
    words: list[list[int]]
    kind: str = field(default="CS", init=False)


@dataclass
class DfInstance:
    n: int
    k: int
    word: list[int]
    kind: str = field(default="DF", init=False)


@dataclass
class EdInstance:
    k: int
    x: str
    y: str
    kind: str = field(default="ED", init=False)


Instance = Union[CsInstance, DfInstance, EdInstance]


@dataclass(frozen=True)
class Op:
    line: int
    kind: str  # "U" or "Q"
    args: tuple = ()


def _int(tok: str, line: int, col: int, what: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise FormatError(f"{what} must be an integer, got {tok!r}", line, col) from None


def _columns(text: str) -> list[tuple[str, int]]:
    out = []
    col = 1
    for part in text.split(" "):
        if part:
            out.append((part, col))
        col += len(part) + 1
    return out


def split_document(text: str) -> tuple[str, str | None]:
    lines = text.splitlines()
    for idx, raw in enumerate(lines):
        if raw.strip() == SEPARATOR:
            return "\n".join(lines[:idx]) + "\n", "\n".join(lines[idx + 1:]) + "\n"
    return text, None


def parse_instance(text: str) -> Instance:
    lines = text.splitlines()
    if not lines or not lines[0].strip():
        raise FormatError("missing header", 1, 1)
    header = _columns(lines[0].strip())
    kind = header[0][0]
    if kind == "CS":
        return _parse_cs(header, lines)
    if kind == "DF":
        return _parse_df(header, lines)
    if kind == "ED":
        return _parse_ed(header, lines)
    raise FormatError(f"unknown instance kind {kind!r}", 1, 1)


def _header_ints(header, names, line=1) -> list[int]:
    if len(header) != len(names) + 1:
        raise FormatError(f"header expects {len(names)} parameters ({' '.join(names)})", line, 1)
    vals = [_int(tok, line, col, name) for (tok, col), name in zip(header[1:], names)]
    for (tok, col), name, v in zip(header[1:], names, vals):
        if v < 0:
            raise FormatError(f"{name} must be non-negative", line, col)
    return vals


def _parse_cs(header, lines) -> CsInstance:
    n, L, sigma, d = _header_ints(header, ["n", "L", "sigma", "d"])
    if n < 1:
        raise FormatError("n must be at least 1", 1, header[1][1])
    if not 1 <= sigma <= len(ALPHABET):
        raise FormatError(f"sigma must lie in [1, {len(ALPHABET)}]", 1, header[3][1])
    body = lines[1:]
    while len(body) > n and not body[-1].strip():
        body.pop()
    if len(body) != n:
        raise FormatError(f"expected {n} word lines, found {len(body)}", min(len(body), n) + 2, 1)
    code = {c: i + 1 for i, c in enumerate(ALPHABET[:sigma])}
    words = []
    for ln, raw in enumerate(body, 2):
        w = raw.rstrip("\r")
        if len(w) != L:
            raise FormatError(f"word has length {len(w)}, expected {L}", ln, min(len(w), L) + 1)
        row = []
        for col, ch in enumerate(w, 1):
            if ch not in code:
                raise FormatError(f"symbol {ch!r} not among the first {sigma} alphabet characters", ln, col)
            row.append(code[ch])
        words.append(row)
    return CsInstance(n, L, sigma, d, words)


def _parse_df(header, lines) -> DfInstance:
    n, k = _header_ints(header, ["n", "k"])
    if k < 1:
        raise FormatError("k must be at least 1", 1, header[2][1])
    word = []
    for ln, raw in enumerate(lines[1:], 2):
        for tok, col in _columns(raw.strip()):
            v = _int(tok, ln, col, "symbol")
            if not 1 <= v <= k:
                raise FormatError(f"symbol {v} outside [1, {k}]", ln, col)
            word.append(v)
    if len(word) != n:
        raise FormatError(f"expected {n} symbols, found {len(word)}", len(lines), 1)
    return DfInstance(n, k, word)


def _parse_ed(header, lines) -> EdInstance:
    if len(header) == 2:
        (k,) = _header_ints(header, ["k"])
        declared = None
    else:
        k, nx, ny = _header_ints(header, ["k", "nx", "ny"])
        declared = (nx, ny)
    body = [raw.rstrip("\r") for raw in lines[1:]]
    while len(body) > 2 and not body[-1].strip():
        body.pop()
    while len(body) < 2 and declared is not None and 0 in declared:
        body.append("")
    if len(body) != 2:
        raise FormatError(f"expected 2 word lines, found {len(body)}", min(len(lines) + 1, 4), 1)
    for ln, w in enumerate(body, 2):
        for col, ch in enumerate(w, 1):
            if ch.isspace():
                raise FormatError("whitespace inside a word", ln, col)
    if declared is not None:
        for ln, (w, want) in enumerate(zip(body, declared), 2):
            if len(w) != want:
                raise FormatError(f"word has length {len(w)}, declared {want}", ln, 1)
    return EdInstance(k, body[0], body[1])


def serialize_instance(inst: Instance) -> str:
    if isinstance(inst, CsInstance):
        rows = ["".join(ALPHABET[a - 1] for a in w) for w in inst.words]
        return "\n".join([f"CS {inst.n} {inst.L} {inst.sigma} {inst.d}", *rows]) + "\n"
    if isinstance(inst, DfInstance):
        return f"DF {inst.n} {inst.k}\n" + " ".join(map(str, inst.word)) + "\n"
    return f"ED {inst.k} {len(inst.x)} {len(inst.y)}\n{inst.x}\n{inst.y}\n"


def parse_ops(text: str, inst: Instance, first_line: int = 1) -> list[Op]:
    """Parse and bounds-check an operation stream against ``inst``."""
    ops = []
    for ln, raw in enumerate(text.splitlines(), first_line):
        body = raw.split("#", 1)[0].strip()
        if not body:
            continue
        toks = _columns(body)
        head = toks[0][0]
        if head == "Q":
            if len(toks) != 1:
                raise FormatError("Q takes no arguments", ln, toks[1][1])
            ops.append(Op(ln, "Q"))
            continue
        if head != "U":
            raise FormatError(f"unknown operation {head!r}", ln, 1)
        ops.append(Op(ln, "U", _parse_update(toks[1:], inst, ln)))
    return ops


def _parse_update(toks, inst: Instance, ln: int) -> tuple:
    if isinstance(inst, CsInstance):
        if len(toks) != 3:
            raise FormatError("CS update is 'U <i> <pos> <sym>'", ln, 1)
        i = _int(toks[0][0], ln, toks[0][1], "word index")
        pos = _int(toks[1][0], ln, toks[1][1], "position")
        sym, col = toks[2]
        if len(sym) != 1 or sym not in ALPHABET[: inst.sigma]:
            raise FormatError(f"symbol {sym!r} not among the first {inst.sigma} alphabet characters", ln, col)
        return (i, pos, ALPHABET.index(sym) + 1)
    if isinstance(inst, DfInstance):
        if len(toks) != 2:
            raise FormatError("DF update is 'U <pos> <sym>'", ln, 1)
        return (_int(toks[0][0], ln, toks[0][1], "position"), _int(toks[1][0], ln, toks[1][1], "symbol"))
    if len(toks) != 3 or toks[0][0] not in ("x", "y"):
        raise FormatError("ED update is 'U x|y <pos> <sym>'", ln, 1)
    sym, col = toks[2]
    if len(sym) != 1:
        raise FormatError("ED symbol must be a single character", ln, col)
    return (toks[0][0], _int(toks[1][0], ln, toks[1][1], "position"), sym)


def serialize_ops(ops: list[Op], inst: Instance) -> str:
    out = []
    for op in ops:
        if op.kind == "Q":
            out.append("Q")
        elif isinstance(inst, CsInstance):
            i, pos, a = op.args
            out.append(f"U {i} {pos} {ALPHABET[a - 1]}")
        else:
            out.append("U " + " ".join(map(str, op.args)))
    return "\n".join(out) + ("\n" if out else "")
