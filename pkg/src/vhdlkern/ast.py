"""Core design representation: types, expressions, statements, designs.

Signals, ports and variables are stored as *leaves* with fully qualified
dotted names; record declarations are flattened at load time and grouped
in ``Spl`` trees so whole-record reads and assignments can be decomposed.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .values import OpKind, Val

# ---------------------------------------------------------------------------
# Type descriptors
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class ScalarType:
    kind: str  # bit | boolean | char | integer | real | time | logic
    lo: int | None = None  # integer range constraint (natural, positive, ...)
    hi: int | None = None


@dataclass(frozen=True, slots=True)
class VectorType:
    elem: str  # element scalar kind
    direction: str  # "to" | "downto"
    lo: int  # lower declared index bound
    hi: int  # upper declared index bound
    numeric: str | None = None  # None | "signed" | "unsigned"

    @property
    def width(self) -> int:
        return self.hi - self.lo + 1


@dataclass(frozen=True, slots=True)
class RecordType:
    fields: tuple[tuple[str, "TypeDesc"], ...]


TypeDesc = ScalarType | VectorType | RecordType

BIT = ScalarType("bit")
BOOLEAN = ScalarType("boolean")
INTEGER = ScalarType("integer")
NATURAL = ScalarType("integer", 0, None)
POSITIVE = ScalarType("integer", 1, None)
REAL = ScalarType("real")
TIME = ScalarType("time")
CHAR = ScalarType("char")
LOGIC = ScalarType("logic")


# ---------------------------------------------------------------------------
# Signals / ports / variables
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class SigPrt:
    name: str  # fully qualified leaf name
    kind: str  # "signal" | "port"
    mode: str  # in | out | inout | internal
    typ: TypeDesc
    init: Val


@dataclass(frozen=True, slots=True)
class Spnl:
    """A named group of signal/port leaves (a record instance)."""

    name: str
    children: tuple["Spl", ...]


Spl = SigPrt | Spnl


def flatten_spl(s: Spl) -> list[SigPrt]:
    if isinstance(s, SigPrt):
        return [s]
    out: list[SigPrt] = []
    for c in s.children:
        out.extend(flatten_spl(c))
    return out


def record_field(s: Spl, path: list[str]) -> Spl:
    """Navigate a record tree by simple (unqualified) field names."""
    if not path:
        raise KeyError("empty record path")
    cur = s
    for name in path:
        if isinstance(cur, SigPrt):
            raise KeyError(f"{cur.name} is a leaf, cannot select {name!r}")
        for c in cur.children:
            simple = (c.name if isinstance(c, Spnl) else c.name).rsplit(".", 1)[-1]
            if simple == name:
                cur = c
                break
        else:
            raise KeyError(f"no field {name!r} in record {cur.name!r}")
    return cur


@dataclass(frozen=True, slots=True)
class Variable:
    name: str  # fully qualified (process or subprogram scope)
    typ: TypeDesc
    init: Val


# ---------------------------------------------------------------------------
# Expressions
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class Uexp:
    op: OpKind
    e: "Expression"


@dataclass(frozen=True, slots=True)
class Bexp:
    op: OpKind
    a: "Expression"
    b: "Expression"


@dataclass(frozen=True, slots=True)
class ExpSig:
    name: str


@dataclass(frozen=True, slots=True)
class ExpPrt:
    name: str


@dataclass(frozen=True, slots=True)
class ExpVar:
    name: str


@dataclass(frozen=True, slots=True)
class ExpCon:
    val: Val


@dataclass(frozen=True, slots=True)
class ExpNth:
    e: "Expression"
    idx: "Expression"


@dataclass(frozen=True, slots=True)
class ExpSl:
    e: "Expression"
    start: "Expression"
    length: "Expression"


@dataclass(frozen=True, slots=True)
class ExpTl:
    e: "Expression"


@dataclass(frozen=True, slots=True)
class ExpTrl:
    e: "Expression"


@dataclass(frozen=True, slots=True)
class ExpR:
    items: tuple["AsmtRhs", ...]


Expression = (
    Uexp | Bexp | ExpSig | ExpPrt | ExpVar | ExpCon | ExpNth | ExpSl | ExpTl | ExpTrl | ExpR
)


# ---------------------------------------------------------------------------
# Assignment right- and left-hand sides
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class RhsE:
    e: Expression


@dataclass(frozen=True, slots=True)
class RhsO:
    """``others => e``: fill every element of the target with e."""

    e: Expression


AsmtRhs = RhsE | RhsO


@dataclass(frozen=True, slots=True)
class DiscreteRange:
    lo: Expression  # lower bound (declared index space)
    hi: Expression  # upper bound
    direction: str  # "to" | "downto"


@dataclass(frozen=True, slots=True)
class SpLhs:
    name: str  # leaf or record-group name
    rng: DiscreteRange | None = None


@dataclass(frozen=True, slots=True)
class VLhs:
    name: str
    rng: DiscreteRange | None = None


# ---------------------------------------------------------------------------
# Sequential statements
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class SubProgCall:
    callee: str
    args: tuple[VLhs, ...]  # arguments are variables in the core model
    ret_type: TypeDesc | None = None


@dataclass(frozen=True, slots=True)
class SstSa:
    name: str
    lhs: SpLhs
    rhs: AsmtRhs


@dataclass(frozen=True, slots=True)
class SstVa:
    name: str
    lhs: VLhs
    rhs: AsmtRhs


@dataclass(frozen=True, slots=True)
class SstIf:
    name: str
    cond: Expression
    then_body: tuple["SeqStmt", ...]
    else_body: tuple["SeqStmt", ...]


@dataclass(frozen=True, slots=True)
class SstL:
    name: str
    cond: Expression
    body: tuple["SeqStmt", ...]


@dataclass(frozen=True, slots=True)
class SstFn:
    name: str
    lhs: VLhs
    call: SubProgCall


@dataclass(frozen=True, slots=True)
class SstRt:
    name: str
    rhs: AsmtRhs | None  # None: plain procedure return


@dataclass(frozen=True, slots=True)
class SstPc:
    name: str
    call: SubProgCall


@dataclass(frozen=True, slots=True)
class SstN:
    name: str
    loop_name: str
    cond: Expression


@dataclass(frozen=True, slots=True)
class SstE:
    name: str
    loop_name: str
    cond: Expression


@dataclass(frozen=True, slots=True)
class SstNl:
    pass


SeqStmt = SstSa | SstVa | SstIf | SstL | SstFn | SstRt | SstPc | SstN | SstE | SstNl


# ---------------------------------------------------------------------------
# Concurrent statements, subprograms, designs
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class CstPs:
    name: str
    sensitivity: tuple[str, ...]  # qualified leaf names
    body: tuple[SeqStmt, ...]


@dataclass(frozen=True, slots=True)
class Formal:
    name: str  # qualified: <subprogram>.<formal>
    mode: str  # in | out | inout
    typ: TypeDesc


@dataclass(frozen=True, slots=True)
class Subprogram:
    name: str
    kind: str  # "function" | "procedure"
    formals: tuple[Formal, ...]
    locals_: tuple[Variable, ...]
    body: tuple[SeqStmt, ...]
    ret_type: TypeDesc | None = None


@dataclass(frozen=True, slots=True)
class Instance:
    label: str
    design_name: str
    # flattened (component port leaf, outer signal/port leaf) pairs
    portmap: tuple[tuple[str, str], ...]


@dataclass(frozen=True)
class Env:
    sp_roots: tuple[Spl, ...] = ()
    variables: tuple[Variable, ...] = ()
    # record shape of variable groups, keyed by qualified group prefix
    var_shapes: dict[str, RecordType] = field(default_factory=dict)

    def sp_leaves(self) -> list[SigPrt]:
        cached = self.__dict__.get("_leaves")
        if cached is None:
            cached = []
            for root in self.sp_roots:
                cached.extend(flatten_spl(root))
            object.__setattr__(self, "_leaves", cached)
        return cached

    def _sp_index(self) -> dict[str, Spl]:
        cached = self.__dict__.get("_spidx")
        if cached is None:
            cached = {}

            def add(node: Spl):
                cached[node.name] = node
                if isinstance(node, Spnl):
                    for c in node.children:
                        add(c)

            for root in self.sp_roots:
                add(root)
            object.__setattr__(self, "_spidx", cached)
        return cached

    def lookup_sp(self, name: str) -> Spl | None:
        return self._sp_index().get(name)

    def _var_index(self) -> dict[str, Variable]:
        cached = self.__dict__.get("_varidx")
        if cached is None:
            cached = {v.name: v for v in self.variables}
            object.__setattr__(self, "_varidx", cached)
        return cached

    def lookup_var(self, name: str) -> Variable | None:
        return self._var_index().get(name)

    def var_group_fields(self, prefix: str) -> list[Variable]:
        pre = prefix + "."
        return [v for v in self.variables if v.name.startswith(pre)]


@dataclass(frozen=True)
class Design:
    name: str
    env: Env
    res_fn: dict[str, str] = field(default_factory=dict)  # leaf -> fn name
    processes: tuple[CstPs, ...] = ()
    subprograms: tuple[Subprogram, ...] = ()
    instances: tuple[Instance, ...] = ()
    # static drivers: leaf -> process names in declaration order (computed)
    drivers: dict[str, tuple[str, ...]] = field(default_factory=dict)

    def __post_init__(self):
        if not self.drivers:
            object.__setattr__(self, "drivers", compute_drivers(self))

    def subprogram(self, name: str) -> Subprogram | None:
        for s in self.subprograms:
            if s.name == name:
                return s
        return None


def _assign_targets(body, env: Env) -> list[str]:
    """Leaf names of all signal-assignment targets in a statement list."""
    out: list[str] = []

    def walk(stmts):
        for s in stmts:
            if isinstance(s, SstSa):
                node = env.lookup_sp(s.lhs.name)
                if node is None:
                    out.append(s.lhs.name)
                else:
                    out.extend(leaf.name for leaf in flatten_spl(node))
            elif isinstance(s, SstIf):
                walk(s.then_body)
                walk(s.else_body)
            elif isinstance(s, SstL):
                walk(s.body)

    walk(body)
    return out


def compute_drivers(design: Design) -> dict[str, tuple[str, ...]]:
    """A process statically drives sp iff its body syntactically assigns it.

    Subprogram bodies are included for processes that call them.
    """
    sub_targets: dict[str, list[str]] = {}
    for sub in design.subprograms:
        sub_targets[sub.name] = _assign_targets(sub.body, design.env)

    drivers: dict[str, list[str]] = {}
    for proc in design.processes:
        targets = list(_assign_targets(proc.body, design.env))
        for callee in _called_subprograms(proc.body):
            targets.extend(sub_targets.get(callee, ()))
        for leaf in targets:
            procs = drivers.setdefault(leaf, [])
            if proc.name not in procs:
                procs.append(proc.name)
    return {k: tuple(v) for k, v in drivers.items()}


def _called_subprograms(body) -> list[str]:
    out: list[str] = []

    def walk(stmts):
        for s in stmts:
            if isinstance(s, (SstFn, SstPc)):
                out.append(s.call.callee)
            elif isinstance(s, SstIf):
                walk(s.then_body)
                walk(s.else_body)
            elif isinstance(s, SstL):
                walk(s.body)

    walk(body)
    return out


# ---------------------------------------------------------------------------
# Diagnostics and well-formedness checking
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class Diagnostic:
    severity: str  # "error" | "warning"
    message: str
    path: str | None = None
    line: int | None = None
    col: int | None = None

    def __str__(self):
        loc = ""
        if self.path is not None:
            loc = f"{self.path}:"
            if self.line is not None:
                loc += f"{self.line}:{self.col}:"
            loc += " "
        return f"{loc}{self.severity}: {self.message}"


def _expr_names(e: Expression) -> list[tuple[str, str]]:
    """(kind, name) pairs of every name referenced in an expression."""
    out: list[tuple[str, str]] = []

    def walk(x):
        if isinstance(x, (ExpSig, ExpPrt)):
            out.append(("sp", x.name))
        elif isinstance(x, ExpVar):
            out.append(("var", x.name))
        elif isinstance(x, Uexp):
            walk(x.e)
        elif isinstance(x, Bexp):
            walk(x.a)
            walk(x.b)
        elif isinstance(x, ExpNth):
            walk(x.e)
            walk(x.idx)
        elif isinstance(x, ExpSl):
            walk(x.e)
            walk(x.start)
            walk(x.length)
        elif isinstance(x, (ExpTl, ExpTrl)):
            walk(x.e)
        elif isinstance(x, ExpR):
            for item in x.items:
                walk(item.e)

    walk(e)
    return out


def check_design(design: Design) -> list[Diagnostic]:
    """Static well-formedness diagnostics; an empty list means well-formed."""
    diags: list[Diagnostic] = []
    err = lambda msg: diags.append(Diagnostic("error", msg))
    env = design.env

    def known_sp(name: str) -> bool:
        return env.lookup_sp(name) is not None

    def known_var(name: str) -> bool:
        return env.lookup_var(name) is not None or bool(env.var_group_fields(name))

    seen_procs: set[str] = set()
    for p in design.processes:
        if p.name in seen_procs:
            err(f"duplicate process name {p.name!r}")
        seen_procs.add(p.name)
    seen_subs: set[str] = set()
    for s in design.subprograms:
        if s.name in seen_subs:
            err(f"duplicate subprogram name {s.name!r}")
        seen_subs.add(s.name)

    def check_expr(e: Expression, where: str):
        for kind, name in _expr_names(e):
            if kind == "sp" and not known_sp(name):
                err(f"unknown signal/port {name!r} in {where}")
            elif kind == "var" and not known_var(name):
                err(f"unknown variable {name!r} in {where}")

    def check_rhs(rhs: AsmtRhs | None, where: str, target_typ: TypeDesc | None):
        if rhs is None:
            return
        if isinstance(rhs, RhsO) and isinstance(target_typ, (ScalarType, RecordType)):
            err(f"'others =>' used on a non-vector target in {where}")
        if isinstance(rhs.e, ExpR):
            if not isinstance(target_typ, (RecordType, type(None))):
                err(f"record aggregate assigned to a non-record target in {where}")
            for item in rhs.e.items:
                check_expr(item.e, where)
        else:
            check_expr(rhs.e, where)

    def check_range(rng: DiscreteRange | None, where: str, target_typ):
        if rng is None:
            return
        if isinstance(target_typ, (ScalarType, RecordType)):
            err(f"range on a non-vector target in {where}")
        check_expr(rng.lo, where)
        check_expr(rng.hi, where)

    def sp_typ(name: str) -> TypeDesc | None:
        node = env.lookup_sp(name)
        if isinstance(node, SigPrt):
            return node.typ
        if isinstance(node, Spnl):
            return RecordType(())  # shape detail not needed here
        return None

    def var_typ(name: str) -> TypeDesc | None:
        v = env.lookup_var(name)
        if v is not None:
            return v.typ
        if env.var_group_fields(name):
            return RecordType(())
        return None

    def check_stmts(stmts, where: str, loops: tuple[str, ...], in_function: bool):
        for s in stmts:
            if isinstance(s, SstSa):
                if not known_sp(s.lhs.name):
                    err(f"assignment to unknown signal/port {s.lhs.name!r} in {where}")
                else:
                    node = env.lookup_sp(s.lhs.name)
                    if isinstance(node, SigPrt) and node.kind == "port" and node.mode == "in":
                        err(f"assignment to in-mode port {s.lhs.name!r} in {where}")
                    check_range(s.lhs.rng, where, sp_typ(s.lhs.name))
                    check_rhs(s.rhs, where, sp_typ(s.lhs.name))
            elif isinstance(s, SstVa):
                if not known_var(s.lhs.name):
                    err(f"assignment to unknown variable {s.lhs.name!r} in {where}")
                else:
                    check_range(s.lhs.rng, where, var_typ(s.lhs.name))
                    check_rhs(s.rhs, where, var_typ(s.lhs.name))
            elif isinstance(s, SstIf):
                check_expr(s.cond, where)
                check_stmts(s.then_body, where, loops, in_function)
                check_stmts(s.else_body, where, loops, in_function)
            elif isinstance(s, SstL):
                check_expr(s.cond, where)
                check_stmts(s.body, where, loops + (s.name,), in_function)
            elif isinstance(s, (SstN, SstE)):
                check_expr(s.cond, where)
                if s.loop_name not in loops:
                    kind = "next" if isinstance(s, SstN) else "exit"
                    err(f"{kind} names unknown loop {s.loop_name!r} in {where}")
            elif isinstance(s, (SstFn, SstPc)):
                sub = design.subprogram(s.call.callee)
                if sub is None:
                    err(f"call to unknown subprogram {s.call.callee!r} in {where}")
                else:
                    if isinstance(s, SstFn) and sub.kind != "function":
                        err(f"{sub.name!r} is not a function (in {where})")
                    if isinstance(s, SstPc) and sub.kind != "procedure":
                        err(f"{sub.name!r} is not a procedure (in {where})")
                    if len(s.call.args) != len(sub.formals):
                        err(
                            f"call to {sub.name!r} passes {len(s.call.args)} "
                            f"arguments, expected {len(sub.formals)} (in {where})"
                        )
                for a in s.call.args:
                    if not known_var(a.name):
                        err(f"unknown variable {a.name!r} as argument in {where}")
                if isinstance(s, SstFn) and not known_var(s.lhs.name):
                    err(f"unknown variable {s.lhs.name!r} as call target in {where}")
            elif isinstance(s, SstRt):
                if not in_function and s.rhs is not None:
                    check_rhs(s.rhs, where, None)
                elif s.rhs is not None:
                    check_rhs(s.rhs, where, None)

    for p in design.processes:
        for name in p.sensitivity:
            if not known_sp(name):
                err(f"unknown signal/port {name!r} in sensitivity list of {p.name!r}")
        check_stmts(p.body, f"process {p.name!r}", (), False)

    for sub in design.subprograms:
        check_stmts(sub.body, f"{sub.kind} {sub.name!r}", (), sub.kind == "function")
        if sub.kind == "function" and not _always_returns(sub.body):
            err(f"function {sub.name!r} has a path that does not return")

    return diags


def _always_returns(stmts) -> bool:
    for s in stmts:
        if isinstance(s, SstRt):
            return True
        if isinstance(s, SstIf):
            if _always_returns(s.then_body) and _always_returns(s.else_body):
                return True
    return False
