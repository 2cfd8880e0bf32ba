"""Functions V_n -> Z_{2^k}: truth tables, digit components, ANF, parsing.

Index conventions
-----------------
Two integer<->bit-vector maps coexist and must never be confused:

* ``enc(x1, ..., xn) = sum x_j * 2**(n-j)`` -- x1 is the most significant
  bit.  Truth tables, vertices, and spectra are indexed by enc; it is the
  lexicographic order in which tables like (0 0 2 3) are written.
* ``iota(c0, ..., c_{s-1}) = sum c_j * 2**j`` -- little-endian.  Used only
  for digit/weight-class constructions, where the j-th coordinate selects
  the coefficient of 2**j.

Composing one with the inverse of the other is the bit-reversal
permutation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

MAX_N = 24
MAX_K = 8


class GbentError(Exception):
    """Base class for errors raised by this package."""


class DimensionMismatch(GbentError, ValueError):
    pass


class CapExceeded(GbentError, ValueError):
    pass


class BudgetExceeded(GbentError, RuntimeError):
    pass


class ExpressionError(GbentError, ValueError):
    """Syntax or range error in a function expression, with position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class SpectrumDecodingError(GbentError, ValueError):
    pass


# ---------------------------------------------------------------------------
# index conventions
# ---------------------------------------------------------------------------

def enc(bits: Sequence[int]) -> int:
    """Big-endian bit vector to index: first coordinate is the MSB."""
    v = 0
    for b in bits:
        v = (v << 1) | (b & 1)
    return v


def dec(index: int, n: int) -> tuple:
    """Inverse of enc: index -> (x1, ..., xn)."""
    return tuple((index >> (n - 1 - j)) & 1 for j in range(n))


def iota(bits: Sequence[int]) -> int:
    """Little-endian injection: (c0, ..., c_{s-1}) -> sum c_j * 2**j."""
    v = 0
    for j, b in enumerate(bits):
        v |= (b & 1) << j
    return v


def iota_inv(value: int, s: int) -> tuple:
    """Inverse of iota on s coordinates."""
    return tuple((value >> j) & 1 for j in range(s))


def _as_table(table, n: int, q: int) -> np.ndarray:
    arr = np.asarray(table)
    if arr.ndim != 1 or arr.shape[0] != (1 << n):
        raise DimensionMismatch(
            f"table must have length 2**{n} = {1 << n}, got shape {arr.shape}"
        )
    arr = arr.astype(np.uint8) if q <= 256 else arr.astype(np.int64)
    vals = np.asarray(table, dtype=np.int64)
    if vals.min() < 0 or vals.max() >= q:
        raise ValueError(f"table entries must lie in 0..{q - 1}")
    arr.flags.writeable = False
    return arr


class BooleanFunction:
    """A function V_n -> {0, 1} given by its truth table in enc order."""

    __slots__ = ("n", "table")

    def __init__(self, n: int, table):
        if n < 1 or n > MAX_N:
            raise CapExceeded(f"n must be in 1..{MAX_N}, got {n}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "table", _as_table(table, n, 2))

    def __setattr__(self, name, value):
        raise AttributeError("BooleanFunction is immutable")

    def __eq__(self, other):
        if not isinstance(other, BooleanFunction):
            return NotImplemented
        return self.n == other.n and bool(np.array_equal(self.table, other.table))

    def __hash__(self):
        return hash((self.n, self.table.tobytes()))

    def __xor__(self, other: "BooleanFunction") -> "BooleanFunction":
        if self.n != other.n:
            raise DimensionMismatch("mixed variable counts")
        return BooleanFunction(self.n, self.table ^ other.table)

    def __repr__(self):
        return f"BooleanFunction(n={self.n}, table={self.table.tolist()})"


class GeneralizedBooleanFunction:
    """A function V_n -> Z_q, q = 2**k, given by its truth table in enc order."""

    __slots__ = ("n", "k", "table")

    def __init__(self, n: int, k: int, table):
        if n < 1 or n > MAX_N:
            raise CapExceeded(f"n must be in 1..{MAX_N}, got {n}")
        if k < 1 or k > MAX_K:
            raise CapExceeded(f"k must be in 1..{MAX_K}, got {k}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "table", _as_table(table, n, 1 << k))

    def __setattr__(self, name, value):
        raise AttributeError("GeneralizedBooleanFunction is immutable")

    @property
    def q(self) -> int:
        return 1 << self.k

    def __eq__(self, other):
        if not isinstance(other, GeneralizedBooleanFunction):
            return NotImplemented
        return (
            self.n == other.n
            and self.k == other.k
            and bool(np.array_equal(self.table, other.table))
        )

    def __hash__(self):
        return hash((self.n, self.k, self.table.tobytes()))

    def __repr__(self):
        return (
            f"GeneralizedBooleanFunction(n={self.n}, k={self.k}, "
            f"table={self.table.tolist()})"
        )


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------

def evaluate(f: GeneralizedBooleanFunction, x: Sequence[int]) -> int:
    if len(x) != f.n:
        raise DimensionMismatch(f"expected {f.n} bits, got {len(x)}")
    return int(f.table[enc(x)])


def components(f: GeneralizedBooleanFunction) -> tuple:
    """Digit decomposition f = a0 + 2*a1 + ... + 2**(k-1)*a_{k-1}."""
    return tuple(
        BooleanFunction(f.n, (f.table >> i) & 1) for i in range(f.k)
    )


def from_components(parts: Sequence[BooleanFunction]) -> GeneralizedBooleanFunction:
    if not parts:
        raise DimensionMismatch("need at least one component")
    n = parts[0].n
    if any(p.n != n for p in parts):
        raise DimensionMismatch("components have mixed variable counts")
    k = len(parts)
    table = np.zeros(1 << n, dtype=np.int64)
    for i, p in enumerate(parts):
        table += p.table.astype(np.int64) << i
    return GeneralizedBooleanFunction(n, k, table)


def complement_function(f: GeneralizedBooleanFunction) -> GeneralizedBooleanFunction:
    """Entrywise q-1-f; components become bitwise complements."""
    return GeneralizedBooleanFunction(f.n, f.k, (f.q - 1) - f.table.astype(np.int64))


def boolean_anf(g: BooleanFunction) -> np.ndarray:
    """Binary Moebius transform of the truth table.

    Entry m is the coefficient of the monomial whose variable set is the
    enc-support of m; re-applying the transform recovers the table.
    """
    a = g.table.astype(np.uint8).copy()
    size = a.shape[0]
    h = 1
    while h < size:
        view = a.reshape(size // (2 * h), 2, h)
        view[:, 1, :] ^= view[:, 0, :]
        h *= 2
    return a


def anf_to_truth_table(anf: np.ndarray, n: int) -> BooleanFunction:
    """Inverse of boolean_anf (the Moebius transform is an involution)."""
    g = BooleanFunction(n, anf)
    return BooleanFunction(n, boolean_anf(g))


def algebraic_degree(g: BooleanFunction) -> int:
    anf = boolean_anf(g)
    nz = np.nonzero(anf)[0]
    if nz.size == 0:
        return 0
    return max(int(m).bit_count() for m in nz)


def hamming_weight(g: BooleanFunction) -> int:
    return int(g.table.sum())


def hamming_distance(g: BooleanFunction, h: BooleanFunction) -> int:
    if g.n != h.n:
        raise DimensionMismatch("mixed variable counts")
    return int((g.table ^ h.table).sum())


# ---------------------------------------------------------------------------
# expression parser
# ---------------------------------------------------------------------------
#
# Grammar (loosest to tightest binding):
#
#   expr    := term (('+' | '-') term)*        addition mod q
#   term    := factor ('(+)' factor)*          bitwise XOR
#   factor  := unary (('*' unary) | unary)*    product mod q, juxtaposition ok
#   unary   := '-' unary | atom
#   atom    := INT | 'x' INDEX | '(' expr ')'
#
# XOR is spelled (+) so it cannot clash with mod-q '+'.  Integer literals
# reduce mod q.  On 0/1-valued operands '*' is AND and '(+)' is XOR, so
# c0*T0 + 2*T1 + ... enters digit decompositions verbatim.

_TOK_INT = "int"
_TOK_VAR = "var"
_TOK_OP = "op"
_TOK_END = "end"


def _tokenize(src: str):
    tokens = []
    i = 0
    length = len(src)
    while i < length:
        ch = src[i]
        if ch.isspace():
            i += 1
            continue
        if src.startswith("(+)", i):
            tokens.append((_TOK_OP, "(+)", i))
            i += 3
            continue
        if ch in "+-*()":
            tokens.append((_TOK_OP, ch, i))
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < length and src[j].isdigit():
                j += 1
            tokens.append((_TOK_INT, int(src[i:j]), i))
            i = j
            continue
        if ch == "x":
            j = i + 1
            while j < length and src[j].isdigit():
                j += 1
            if j == i + 1:
                raise ExpressionError("variable needs an index, e.g. x1", i)
            tokens.append((_TOK_VAR, int(src[i + 1 : j]), i))
            i = j
            continue
        raise ExpressionError(f"unexpected character {ch!r}", i)
    tokens.append((_TOK_END, None, length))
    return tokens


class _Parser:
    def __init__(self, src: str, n: int, q: int):
        self.tokens = _tokenize(src)
        self.pos = 0
        self.n = n
        self.q = q
        idx = np.arange(1 << n)
        # column j is the value vector of x_{j+1} under enc (x1 = MSB)
        self.var_columns = [
            ((idx >> (n - 1 - j)) & 1).astype(np.int64) for j in range(n)
        ]

    def peek(self):
        return self.tokens[self.pos]

    def advance(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def parse(self) -> np.ndarray:
        value = self.expr()
        kind, _, at = self.peek()
        if kind != _TOK_END:
            raise ExpressionError("trailing input after expression", at)
        return value

    def expr(self) -> np.ndarray:
        value = self.term()
        while True:
            kind, text, _ = self.peek()
            if kind == _TOK_OP and text in ("+", "-"):
                self.advance()
                rhs = self.term()
                value = (value + rhs) % self.q if text == "+" else (value - rhs) % self.q
            else:
                return value

    def term(self) -> np.ndarray:
        value = self.factor()
        while True:
            kind, text, _ = self.peek()
            if kind == _TOK_OP and text == "(+)":
                self.advance()
                value = value ^ self.factor()
            else:
                return value

    def factor(self) -> np.ndarray:
        value = self.unary()
        while True:
            kind, text, _ = self.peek()
            if kind == _TOK_OP and text == "*":
                self.advance()
                value = (value * self.unary()) % self.q
            elif kind in (_TOK_INT, _TOK_VAR) or (kind == _TOK_OP and text == "("):
                value = (value * self.unary()) % self.q  # juxtaposition
            else:
                return value

    def unary(self) -> np.ndarray:
        kind, text, at = self.peek()
        if kind == _TOK_OP and text == "-":
            self.advance()
            return (-self.unary()) % self.q
        return self.atom()

    def atom(self) -> np.ndarray:
        kind, text, at = self.advance()
        if kind == _TOK_INT:
            return np.full(1 << self.n, text % self.q, dtype=np.int64)
        if kind == _TOK_VAR:
            if not 1 <= text <= self.n:
                raise ExpressionError(
                    f"variable x{text} out of range for n={self.n}", at
                )
            return self.var_columns[text - 1].copy()
        if kind == _TOK_OP and text == "(":
            value = self.expr()
            kind, text, at = self.advance()
            if not (kind == _TOK_OP and text == ")"):
                raise ExpressionError("expected ')'", at)
            return value
        raise ExpressionError("expected integer, variable, or '('", at)


def parse_expression(src: str, n: int, k: int) -> GeneralizedBooleanFunction:
    """Build a truth table by evaluating src at all 2**n points mod q."""
    if n < 1 or n > MAX_N:
        raise CapExceeded(f"n must be in 1..{MAX_N}, got {n}")
    if k < 1 or k > MAX_K:
        raise CapExceeded(f"k must be in 1..{MAX_K}, got {k}")
    table = _Parser(src, n, 1 << k).parse()
    return GeneralizedBooleanFunction(n, k, table)


def parse_boolean_expression(src: str, n: int) -> BooleanFunction:
    """Parse with q=2; convenience for plain Boolean formulas."""
    f = parse_expression(src, n, 1)
    return BooleanFunction(n, f.table)


# ---------------------------------------------------------------------------
# .gbf truth-table text format
# ---------------------------------------------------------------------------
#
# line 1:  n=<int> k=<int>
# then:    2**n whitespace-separated decimal values in enc order
# '#' starts a comment anywhere; blank lines ignored.


def parse_gbf(text: str) -> GeneralizedBooleanFunction:
    lines = []
    for raw in text.splitlines():
        stripped = raw.split("#", 1)[0].strip()
        if stripped:
            lines.append(stripped)
    if not lines:
        raise ValueError("empty .gbf input")
    header = lines[0].replace(",", " ").split()
    params = {}
    for item in header:
        if "=" not in item:
            raise ValueError(f"bad .gbf header item {item!r}")
        key, _, val = item.partition("=")
        params[key.strip()] = int(val)
    if "n" not in params or "k" not in params:
        raise ValueError(".gbf header must give n=<int> k=<int>")
    n, k = params["n"], params["k"]
    values = [int(tok) for line in lines[1:] for tok in line.split()]
    if len(values) != (1 << n):
        raise DimensionMismatch(
            f".gbf body has {len(values)} values, expected {1 << n}"
        )
    return GeneralizedBooleanFunction(n, k, values)


def format_gbf(f: GeneralizedBooleanFunction) -> str:
    return f"n={f.n} k={f.k}\n" + " ".join(str(int(v)) for v in f.table) + "\n"


def read_gbf(path) -> GeneralizedBooleanFunction:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_gbf(fh.read())


def write_gbf(f: GeneralizedBooleanFunction, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_gbf(f))
