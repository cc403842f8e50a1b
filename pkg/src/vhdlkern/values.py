"""Runtime value universe: scalars, nine-valued logic, vectors, records.

Scalars cover bit, boolean, character, 64-bit checked integers, binary64
reals, time (integer femtoseconds) and the nine-valued logic carrier
'U X 0 1 Z W L H -'.  Vectors come in two endiannesses: a ``vec_to``
vector stores elements in ascending index order, a ``vec_downto`` vector
stores them in descending index order (source-literal order), so logical
index i of a downto vector lives at storage position (len-1) - i.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import EvalError

INT_MIN = -(2**63)
INT_MAX = 2**63 - 1

LOGIC9 = "UX01ZWLH-"

SCALAR_KINDS = ("bit", "boolean", "char", "integer", "real", "time", "logic")


@dataclass(frozen=True, slots=True)
class Scalar:
    kind: str
    value: object

    def __repr__(self):
        return f"Scalar({self.kind}, {self.value!r})"


def bit_s(b) -> Scalar:
    return _BITS[1 if b in (1, "1", True) else 0]


def bool_s(b) -> Scalar:
    return _BOOLS[bool(b)]


def char_s(c: str) -> Scalar:
    return Scalar("char", c)


def int_s(n: int) -> Scalar:
    return Scalar("integer", check_int(n))


def real_s(x: float) -> Scalar:
    return Scalar("real", float(x))


def time_s(fs: int) -> Scalar:
    return Scalar("time", int(fs))


def logic_s(c: str) -> Scalar:
    try:
        return _LOGICS[c]
    except KeyError:
        raise EvalError(f"not a nine-valued logic literal: {c!r}") from None


_BITS = (Scalar("bit", 0), Scalar("bit", 1))
_BOOLS = {False: Scalar("boolean", False), True: Scalar("boolean", True)}
_LOGICS = {c: Scalar("logic", c) for c in LOGIC9}


def check_int(n: int) -> int:
    if n < INT_MIN or n > INT_MAX:
        raise EvalError(f"integer overflow: {n}")
    return n


@dataclass(frozen=True, slots=True)
class Val:
    """A runtime value: scalar, big/little-endian vector, or record."""

    tag: str  # scalar | vec_to | vec_downto | record
    scalar: Scalar | None = None
    elems: tuple["Val", ...] = ()
    field_names: tuple[str, ...] = ()

    def is_vector(self) -> bool:
        return self.tag in ("vec_to", "vec_downto")

    def __repr__(self):
        if self.tag == "scalar":
            return f"Val({self.scalar.kind}:{self.scalar.value!r})"
        if self.tag == "record":
            inner = ", ".join(
                f"{n}={e!r}" for n, e in zip(self.field_names, self.elems)
            )
            return f"Val(record {inner})"
        return f"Val({self.tag} {fmt_val(self)})"


def scalar_val(s: Scalar) -> Val:
    return Val("scalar", s)


def bit_val(b) -> Val:
    return Val("scalar", bit_s(b))


def bool_val(b) -> Val:
    return Val("scalar", bool_s(b))


def int_val(n: int) -> Val:
    return Val("scalar", int_s(n))


def real_val(x: float) -> Val:
    return Val("scalar", real_s(x))


def char_val(c: str) -> Val:
    return Val("scalar", char_s(c))


def logic_val(c: str) -> Val:
    return Val("scalar", logic_s(c))


def time_val(fs: int) -> Val:
    return Val("scalar", time_s(fs))


def vec(elems, down: bool = False) -> Val:
    elems = tuple(elems)
    if any(e.tag != "scalar" for e in elems):
        raise EvalError("vector elements must be scalars")
    if len({e.scalar.kind for e in elems}) > 1:
        raise EvalError("vector elements must share one scalar kind")
    return Val("vec_downto" if down else "vec_to", None, elems)


def record_val(names, elems) -> Val:
    names = tuple(names)
    elems = tuple(elems)
    if len(names) != len(elems) or len(set(names)) != len(names):
        raise EvalError("record field names must be unique and match elements")
    return Val("record", None, elems, names)


def bits_from_str(text: str, down: bool = False, kind: str = "bit") -> Val:
    if kind == "bit":
        return vec((bit_val(c) for c in text), down)
    if kind == "logic":
        return vec((logic_val(c) for c in text), down)
    if kind == "char":
        return vec((char_val(c) for c in text), down)
    raise EvalError(f"cannot build a vector of {kind} from a string")


def elem_kind(v: Val) -> str:
    if not v.is_vector() or not v.elems:
        raise EvalError("expected a non-empty vector")
    return v.elems[0].scalar.kind


# ---------------------------------------------------------------------------
# Operator kinds
# ---------------------------------------------------------------------------

UOPS = frozenset(("not", "abs", "-", "+"))
LOPS = frozenset(("and", "or", "nand", "nor", "xor", "xnor"))
ROPS = frozenset(("=", "/=", "<", "<=", ">", ">="))
SOPS = frozenset(("sll", "srl", "sla", "sra", "rol", "ror"))
AOPS = frozenset(("+", "-", "*", "/", "mod", "rem", "**", "&"))

_CLASS_SYMBOLS = {"uop": UOPS, "lop": LOPS, "rop": ROPS, "sop": SOPS, "aop": AOPS}


@dataclass(frozen=True, slots=True)
class OpKind:
    cls: str
    symbol: str
    # numeric interpretation for vector arithmetic/relations, assigned by the
    # frontend from declared operand types (None = plain/dictionary semantics)
    numeric: str | None = None

    def __post_init__(self):
        if self.cls not in _CLASS_SYMBOLS:
            raise EvalError(f"unknown operator class: {self.cls}")
        if self.symbol not in _CLASS_SYMBOLS[self.cls]:
            raise EvalError(f"{self.symbol!r} is not a {self.cls} operator")


# ---------------------------------------------------------------------------
# IEEE-1164 tables (row = left operand, column = right operand, order UX01ZWLH-)
# ---------------------------------------------------------------------------

_AND9 = (
    "UU0UUU0UU",
    "UX0XXX0XX",
    "000000000",
    "UX01XX01X",
    "UX0XXX0XX",
    "UX0XXX0XX",
    "000000000",
    "UX01XX01X",
    "UX0XXX0XX",
)

_OR9 = (
    "UUU1UUU1U",
    "UXX1XXX1X",
    "UX01XX01X",
    "111111111",
    "UXX1XXX1X",
    "UXX1XXX1X",
    "UX01XX01X",
    "111111111",
    "UXX1XXX1X",
)

_XOR9 = (
    "UUUUUUUUU",
    "UXXXXXXXX",
    "UX01XX01X",
    "UX10XX10X",
    "UXXXXXXXX",
    "UXXXXXXXX",
    "UX01XX01X",
    "UX10XX10X",
    "UXXXXXXXX",
)

_NOT9 = "UX10XX10X"

_RESOLVE9 = (
    "UUUUUUUUU",
    "UXXXXXXXX",
    "UX0X0000X",
    "UXX11111X",
    "UX01ZWLHX",
    "UX01WWWWX",
    "UX01LWLWX",
    "UX01HWWHX",
    "UXXXXXXXX",
)

_L9IDX = {c: i for i, c in enumerate(LOGIC9)}


def logic_and(a: str, b: str) -> str:
    return _AND9[_L9IDX[a]][_L9IDX[b]]


def logic_or(a: str, b: str) -> str:
    return _OR9[_L9IDX[a]][_L9IDX[b]]


def logic_xor(a: str, b: str) -> str:
    return _XOR9[_L9IDX[a]][_L9IDX[b]]


def logic_not(a: str) -> str:
    return _NOT9[_L9IDX[a]]


def resolve_logic9(drivers) -> Scalar:
    """Left-fold of the IEEE-1164 resolution table over a nonempty list."""
    drivers = list(drivers)
    if not drivers:
        raise EvalError("resolution of an empty driver list")
    acc = drivers[0].value
    for d in drivers[1:]:
        acc = _RESOLVE9[_L9IDX[acc]][_L9IDX[d.value]]
    return logic_s(acc)


# ---------------------------------------------------------------------------
# Vector access
# ---------------------------------------------------------------------------

def vec_nth(v: Val, i: int) -> Val:
    """Element at logical index i (downto indices count from the tail)."""
    if not v.is_vector():
        raise EvalError("nth applied to a non-vector")
    n = len(v.elems)
    if i < 0 or i >= n:
        raise EvalError(f"vector index {i} out of range 0..{n - 1}")
    pos = (n - 1) - i if v.tag == "vec_downto" else i
    return v.elems[pos]


def vec_slice(v: Val, start: int, length: int) -> Val:
    """Subvector of ``length`` elements whose first logical index is ``start``.

    For downto vectors the slice runs toward lower indices, as a
    ``(start downto start-length+1)`` subrange does.
    """
    if not v.is_vector():
        raise EvalError("slice applied to a non-vector")
    if length < 0:
        raise EvalError(f"negative slice length {length}")
    n = len(v.elems)
    if length == 0:
        return Val(v.tag, None, ())
    if v.tag == "vec_downto":
        lo_index = start - length + 1
        if start < 0 or start >= n or lo_index < 0:
            raise EvalError(f"slice ({start} downto {lo_index}) escapes 0..{n - 1}")
        pos = (n - 1) - start
    else:
        if start < 0 or start + length > n:
            raise EvalError(f"slice ({start}, len {length}) escapes 0..{n - 1}")
        pos = start
    return Val(v.tag, None, v.elems[pos : pos + length])


def to_vector(v: Val, reversed_: bool = False) -> Val:
    """Promote a scalar to a singleton vector; retag an existing vector."""
    tag = "vec_downto" if reversed_ else "vec_to"
    if v.tag == "scalar":
        return Val(tag, None, (v,))
    if v.is_vector():
        return Val(tag, None, v.elems)
    raise EvalError("cannot convert a record to a vector")


# ---------------------------------------------------------------------------
# Numeric helpers for vector arithmetic (two's complement / unsigned)
# ---------------------------------------------------------------------------

def _bitint(e: Val) -> int:
    s = e.scalar
    if s.kind == "bit":
        return s.value
    if s.kind == "boolean":
        return 1 if s.value else 0
    if s.kind == "logic":
        if s.value in ("0", "L"):
            return 0
        if s.value in ("1", "H"):
            return 1
        raise EvalError(f"non-binary logic value {s.value!r} in arithmetic")
    raise EvalError(f"vector of {s.kind} has no numeric interpretation")


def vec_to_uint(v: Val) -> int:
    acc = 0
    # storage order of vec_downto is MSB first; for vec_to treat the first
    # (lowest-index) element as the MSB as well, matching the written literal
    for e in v.elems:
        acc = (acc << 1) | _bitint(e)
    return acc


def vec_to_sint(v: Val) -> int:
    n = len(v.elems)
    if n == 0:
        raise EvalError("empty vector in signed arithmetic")
    u = vec_to_uint(v)
    return u - (1 << n) if u >= (1 << (n - 1)) else u


def uint_to_vec(n: int, width: int, like: Val) -> Val:
    n &= (1 << width) - 1 if width else 0
    kind = elem_kind(like)
    mk = bit_val if kind == "bit" else logic_val if kind == "logic" else None
    if mk is None:
        raise EvalError(f"vector of {like.elems[0].scalar.kind} has no numeric interpretation")
    bits = []
    for i in range(width - 1, -1, -1):
        b = (n >> i) & 1
        bits.append(mk(str(b) if kind == "logic" else b))
    return Val(like.tag, None, tuple(bits))


# ---------------------------------------------------------------------------
# Operator evaluation
# ---------------------------------------------------------------------------

def _type_of(v: Val) -> str:
    if v.tag == "scalar":
        return v.scalar.kind
    if v.is_vector():
        return f"{v.tag} of {v.elems[0].scalar.kind if v.elems else '?'}"
    return "record"


def _lop_scalar(sym: str, a: Scalar, b: Scalar) -> Scalar:
    if a.kind != b.kind:
        raise EvalError(f"{sym}: operand kinds differ ({a.kind} vs {b.kind})")
    if a.kind == "logic":
        fn = {"and": logic_and, "or": logic_or, "xor": logic_xor}
        if sym in fn:
            return logic_s(fn[sym](a.value, b.value))
        base = {"nand": logic_and, "nor": logic_or, "xnor": logic_xor}[sym]
        return logic_s(logic_not(base(a.value, b.value)))
    if a.kind in ("bit", "boolean"):
        x, y = bool(a.value), bool(b.value)
        r = {
            "and": x and y,
            "or": x or y,
            "xor": x != y,
            "nand": not (x and y),
            "nor": not (x or y),
            "xnor": x == y,
        }[sym]
        return bit_s(r) if a.kind == "bit" else bool_s(r)
    raise EvalError(f"{sym} not defined on {a.kind}")


def _not_scalar(s: Scalar) -> Scalar:
    if s.kind == "logic":
        return logic_s(logic_not(s.value))
    if s.kind == "bit":
        return bit_s(1 - s.value)
    if s.kind == "boolean":
        return bool_s(not s.value)
    raise EvalError(f"not is not defined on {s.kind}")


def eval_unop(op: OpKind, v: Val) -> Val:
    if op.cls != "uop":
        raise EvalError(f"{op.symbol} is not a unary operator")
    sym = op.symbol
    if sym == "not":
        if v.tag == "scalar":
            return Val("scalar", _not_scalar(v.scalar))
        if v.is_vector():
            return Val(v.tag, None, tuple(Val("scalar", _not_scalar(e.scalar)) for e in v.elems))
        raise EvalError("not applied to a record")
    if v.is_vector():
        # numeric negation / abs of signed vectors, width preserved (wraps)
        if sym in ("-", "abs") and op.numeric == "signed":
            n = vec_to_sint(v)
            n = -n if (sym == "-" or n < 0) else n
            return uint_to_vec(n, len(v.elems), v)
        if sym == "+" and op.numeric in ("signed", "unsigned"):
            return v
        raise EvalError(f"{sym} not defined on {_type_of(v)}")
    if v.tag != "scalar":
        raise EvalError(f"{sym} applied to a record")
    s = v.scalar
    if s.kind == "integer":
        if sym == "abs":
            return int_val(abs(s.value))
        if sym == "-":
            return int_val(-s.value)
        if sym == "+":
            return v
    if s.kind == "real":
        if sym == "abs":
            return real_val(abs(s.value))
        if sym == "-":
            return real_val(-s.value)
        if sym == "+":
            return v
    if s.kind == "time":
        if sym == "abs":
            return time_val(abs(s.value))
        if sym == "-":
            return time_val(-s.value)
        if sym == "+":
            return v
    raise EvalError(f"{sym} not defined on {s.kind}")


def _trunc_div(a: int, b: int) -> int:
    if b == 0:
        raise EvalError("division by zero")
    q = abs(a) // abs(b)
    return -q if (a < 0) != (b < 0) else q


def _int_arith(sym: str, a: int, b: int) -> int:
    if sym == "+":
        return check_int(a + b)
    if sym == "-":
        return check_int(a - b)
    if sym == "*":
        return check_int(a * b)
    if sym == "/":
        return check_int(_trunc_div(a, b))
    if sym == "mod":
        if b == 0:
            raise EvalError("mod by zero")
        return check_int(a % b)  # Python % carries the divisor's sign, as VHDL mod
    if sym == "rem":
        return check_int(a - _trunc_div(a, b) * b)
    if sym == "**":
        if b < 0:
            raise EvalError("** requires a non-negative exponent")
        acc = 1
        for _ in range(b):
            acc = check_int(acc * a)
        return acc
    raise EvalError(f"unknown arithmetic operator {sym}")


_ORD_KINDS = ("integer", "real", "time", "char", "bit", "boolean", "logic")


def _scalar_key(s: Scalar):
    if s.kind == "logic":
        return _L9IDX[s.value]
    if s.kind == "char":
        return ord(s.value)
    if s.kind == "boolean":
        return int(s.value)
    return s.value


def _vals_equal(a: Val, b: Val) -> bool:
    if a.tag == "scalar" and b.tag == "scalar":
        if a.scalar.kind != b.scalar.kind:
            raise EvalError(
                f"= on different scalar kinds ({a.scalar.kind} vs {b.scalar.kind})"
            )
        return a.scalar.value == b.scalar.value
    if a.is_vector() and b.is_vector():
        if len(a.elems) != len(b.elems):
            return False  # arrays of different lengths compare unequal
        return all(_vals_equal(x, y) for x, y in zip(a.elems, b.elems))
    if a.tag == "record" and b.tag == "record":
        if a.field_names != b.field_names:
            raise EvalError("= on records of different shapes")
        return all(_vals_equal(x, y) for x, y in zip(a.elems, b.elems))
    raise EvalError(f"= on incompatible values ({_type_of(a)} vs {_type_of(b)})")


def _vec_lex_cmp(a: Val, b: Val) -> int:
    for x, y in zip(a.elems, b.elems):
        kx, ky = _scalar_key(x.scalar), _scalar_key(y.scalar)
        if kx != ky:
            return -1 if kx < ky else 1
    la, lb = len(a.elems), len(b.elems)
    return 0 if la == lb else (-1 if la < lb else 1)


def _relational(op: OpKind, a: Val, b: Val) -> Val:
    sym = op.symbol
    if sym == "=":
        return bool_val(_vals_equal(a, b))
    if sym == "/=":
        return bool_val(not _vals_equal(a, b))
    if a.tag == "scalar" and b.tag == "scalar":
        if a.scalar.kind != b.scalar.kind:
            raise EvalError(f"{sym} on different scalar kinds")
        if a.scalar.kind not in _ORD_KINDS:
            raise EvalError(f"{sym} not defined on {a.scalar.kind}")
        ka, kb = _scalar_key(a.scalar), _scalar_key(b.scalar)
        c = 0 if ka == kb else (-1 if ka < kb else 1)
    elif a.is_vector() and b.is_vector():
        if op.numeric == "signed":
            ia, ib = vec_to_sint(a), vec_to_sint(b)
            c = 0 if ia == ib else (-1 if ia < ib else 1)
        elif op.numeric == "unsigned":
            ia, ib = vec_to_uint(a), vec_to_uint(b)
            c = 0 if ia == ib else (-1 if ia < ib else 1)
        else:
            c = _vec_lex_cmp(a, b)  # dictionary order in written order
    else:
        raise EvalError(f"{sym} on incompatible values")
    r = {"<": c < 0, "<=": c <= 0, ">": c > 0, ">=": c >= 0}[sym]
    return bool_val(r)


def _shift_fill(kind: str) -> Val:
    if kind == "bit":
        return bit_val(0)
    if kind == "boolean":
        return bool_val(False)
    if kind == "logic":
        return logic_val("0")
    raise EvalError(f"shift not defined on vectors of {kind}")


def _shift(op: OpKind, v: Val, count: int) -> Val:
    sym = op.symbol
    if count < 0:
        flipped = {"sll": "srl", "srl": "sll", "sla": "sra", "sra": "sla",
                   "rol": "ror", "ror": "rol"}[sym]
        return _shift(OpKind("sop", flipped), v, -count)
    n = len(v.elems)
    if n == 0 or count == 0:
        return v
    es = v.elems
    if sym in ("rol", "ror"):
        k = count % n
        out = es[k:] + es[:k] if sym == "rol" else es[-k:] + es[:-k]
        return Val(v.tag, None, out)
    kind = es[0].scalar.kind
    if sym == "sll":
        fill = _shift_fill(kind)
    elif sym == "srl":
        fill = _shift_fill(kind)
    elif sym == "sla":
        fill = es[-1]
    else:  # sra
        fill = es[0]
    k = min(count, n)
    if sym in ("sll", "sla"):
        out = es[k:] + (fill,) * k
    else:
        out = (fill,) * k + es[:-k] if k < n else (fill,) * n
    return Val(v.tag, None, out)


def _vec_numeric_arith(op: OpKind, a: Val, b: Val) -> Val:
    sym = op.symbol
    signed = op.numeric == "signed"
    conv = vec_to_sint if signed else vec_to_uint

    if a.is_vector() and b.is_vector():
        width = max(len(a.elems), len(b.elems))
        ia, ib, like = conv(a), conv(b), a
    elif a.is_vector() and b.tag == "scalar" and b.scalar.kind == "integer":
        width, ia, ib, like = len(a.elems), conv(a), b.scalar.value, a
    elif b.is_vector() and a.tag == "scalar" and a.scalar.kind == "integer":
        width, ia, ib, like = len(b.elems), a.scalar.value, conv(b), b
    else:
        raise EvalError(f"{sym} on incompatible operands")
    if sym in ("/", "mod", "rem") and ib == 0:
        raise EvalError("division by zero")
    r = {
        "+": lambda: ia + ib,
        "-": lambda: ia - ib,
        "*": lambda: ia * ib,
        "/": lambda: _trunc_div(ia, ib),
        "mod": lambda: ia % ib,
        "rem": lambda: ia - _trunc_div(ia, ib) * ib,
    }
    if sym not in r:
        raise EvalError(f"{sym} not defined on {op.numeric} vectors")
    return uint_to_vec(r[sym](), width, like)


def eval_binop(op: OpKind, a: Val, b: Val) -> Val:
    cls, sym = op.cls, op.symbol
    if cls == "lop":
        if a.tag == "scalar" and b.tag == "scalar":
            return Val("scalar", _lop_scalar(sym, a.scalar, b.scalar))
        if a.is_vector() and b.is_vector():
            if a.tag != b.tag:
                raise EvalError(f"{sym} on vectors of different endianness")
            if len(a.elems) != len(b.elems):
                raise EvalError(
                    f"{sym} on vectors of different lengths "
                    f"({len(a.elems)} vs {len(b.elems)})"
                )
            return Val(a.tag, None, tuple(
                Val("scalar", _lop_scalar(sym, x.scalar, y.scalar))
                for x, y in zip(a.elems, b.elems)
            ))
        raise EvalError(f"{sym} on incompatible values ({_type_of(a)} vs {_type_of(b)})")

    if cls == "rop":
        return _relational(op, a, b)

    if cls == "sop":
        if not a.is_vector():
            raise EvalError(f"{sym} requires a vector left operand")
        if b.tag != "scalar" or b.scalar.kind != "integer":
            raise EvalError(f"{sym} requires an integer shift count")
        return _shift(op, a, b.scalar.value)

    if cls == "aop":
        if sym == "&":
            if a.is_vector() and b.is_vector():
                if a.tag != b.tag:
                    raise EvalError("& on vectors of different endianness")
                if a.elems and b.elems and elem_kind(a) != elem_kind(b):
                    raise EvalError("& on vectors of different element kinds")
                return Val(a.tag, None, a.elems + b.elems)
            raise EvalError("& requires two vectors (convert scalars first)")
        if op.numeric in ("signed", "unsigned") and (a.is_vector() or b.is_vector()):
            return _vec_numeric_arith(op, a, b)
        if a.tag == "scalar" and b.tag == "scalar":
            sa, sb = a.scalar, b.scalar
            if sa.kind == "integer" and sb.kind == "integer":
                return int_val(_int_arith(sym, sa.value, sb.value))
            if sa.kind == "real" and sb.kind == "real":
                if sym == "+":
                    return real_val(sa.value + sb.value)
                if sym == "-":
                    return real_val(sa.value - sb.value)
                if sym == "*":
                    return real_val(sa.value * sb.value)
                if sym == "/":
                    if sb.value == 0.0:
                        raise EvalError("division by zero")
                    return real_val(sa.value / sb.value)
                raise EvalError(f"{sym} not defined on real")
            if sa.kind == "time" and sb.kind == "time" and sym in ("+", "-"):
                return time_val(sa.value + sb.value if sym == "+" else sa.value - sb.value)
            if sa.kind == "time" and sb.kind == "integer" and sym in ("*", "/"):
                if sym == "*":
                    return time_val(sa.value * sb.value)
                return time_val(_trunc_div(sa.value, sb.value))
            if sa.kind == "integer" and sb.kind == "time" and sym == "*":
                return time_val(sa.value * sb.value)
        raise EvalError(f"{sym} on incompatible values ({_type_of(a)} vs {_type_of(b)})")

    raise EvalError(f"{sym} is not a binary operator")


# ---------------------------------------------------------------------------
# Formatting (state dumps, traces, diagnostics)
# ---------------------------------------------------------------------------

def fmt_scalar(s: Scalar) -> str:
    if s.kind == "bit":
        return f"'{s.value}'"
    if s.kind == "logic":
        return f"'{s.value}'"
    if s.kind == "char":
        return f"'{s.value}'"
    if s.kind == "boolean":
        return "true" if s.value else "false"
    if s.kind == "real":
        return repr(s.value)
    if s.kind == "time":
        return f"{s.value} fs"
    return str(s.value)


def fmt_val(v: Val) -> str:
    if v.tag == "scalar":
        return fmt_scalar(v.scalar)
    if v.is_vector():
        if v.elems and v.elems[0].scalar.kind in ("bit", "logic", "char"):
            return '"' + "".join(str(e.scalar.value) for e in v.elems) + '"'
        return "(" + ", ".join(fmt_val(e) for e in v.elems) + ")"
    return "(" + ", ".join(
        f"{n} => {fmt_val(e)}" for n, e in zip(v.field_names, v.elems)
    ) + ")"
