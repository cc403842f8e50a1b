"""Sequential-statement interpreter.

All statement forms of the core syntax: signal/variable assignment with
record decomposition, ``others`` fills and ranged targets, if, while with
the next/exit flag protocol, function and procedure calls with the
snapshot-restore argument discipline, return, next, exit, null.

Expressions always read *current* values; driving values written earlier
in the same process run are never visible to later reads.
"""

from __future__ import annotations

from dataclasses import dataclass

from .ast import (
    Bexp,
    Design,
    DiscreteRange,
    ExpCon,
    ExpNth,
    ExpPrt,
    ExpR,
    ExpSig,
    ExpSl,
    ExpTl,
    ExpTrl,
    ExpVar,
    RecordType,
    RhsE,
    RhsO,
    ScalarType,
    SigPrt,
    SpLhs,
    Spnl,
    SstE,
    SstFn,
    SstIf,
    SstL,
    SstN,
    SstNl,
    SstPc,
    SstRt,
    SstSa,
    SstVa,
    SubProgCall,
    Uexp,
    VectorType,
    VLhs,
)
from .errors import EvalError, SimError
from .state import SimState, get_driving, set_driving
from .values import (
    Val,
    eval_binop,
    eval_unop,
    fmt_val,
    record_val,
    to_vector,
    vec_nth,
    vec_slice,
)


@dataclass
class ExecCtx:
    """Per-process-activation execution context."""

    proc: str
    design: Design
    budget_left: int = 100_000
    trace: object | None = None  # optional callable(proc, stmt, before, after)


class _Return(Exception):
    """Internal unwinding signal raised by sst_rt."""

    def __init__(self, value: Val | None):
        self.value = value


# ---------------------------------------------------------------------------
# Expression evaluation
# ---------------------------------------------------------------------------


def _read_sp(design: Design, st: SimState, name: str) -> Val:
    v = st.sp.get(name)
    if v is not None:
        return v
    node = design.env.lookup_sp(name)
    if isinstance(node, Spnl):
        return _record_of_spl(design, st, node)
    raise EvalError(f"read of unknown signal/port {name!r}")


def _record_of_spl(design: Design, st: SimState, node: Spnl) -> Val:
    names, vals = [], []
    for c in node.children:
        simple = c.name.rsplit(".", 1)[-1]
        names.append(simple)
        if isinstance(c, Spnl):
            vals.append(_record_of_spl(design, st, c))
        else:
            vals.append(st.sp[c.name])
    return record_val(names, vals)


def _read_var(design: Design, st: SimState, name: str) -> Val:
    v = st.var.get(name)
    if v is not None:
        return v
    shape = design.env.var_shapes.get(name)
    if shape is not None:
        return _record_of_var(design, st, name, shape)
    raise EvalError(f"read of unknown variable {name!r}")


def _record_of_var(design: Design, st: SimState, prefix: str, shape: RecordType) -> Val:
    names, vals = [], []
    for fname, ftyp in shape.fields:
        names.append(fname)
        qual = f"{prefix}.{fname}"
        if isinstance(ftyp, RecordType):
            vals.append(_record_of_var(design, st, qual, ftyp))
        else:
            vals.append(st.var[qual])
    return record_val(names, vals)


def _as_index(v: Val, what: str) -> int:
    if v.tag == "scalar" and v.scalar.kind == "integer":
        n = v.scalar.value
        if n < 0:
            raise EvalError(f"{what} must be non-negative, got {n}")
        return n
    raise EvalError(f"{what} must be an integer")


def eval_expr(design: Design, st: SimState, e) -> Val:
    t = type(e)
    if t is ExpCon:
        return e.val
    if t is ExpSig or t is ExpPrt:
        return _read_sp(design, st, e.name)
    if t is ExpVar:
        return _read_var(design, st, e.name)
    if t is Bexp:
        return eval_binop(e.op, eval_expr(design, st, e.a), eval_expr(design, st, e.b))
    if t is Uexp:
        return eval_unop(e.op, eval_expr(design, st, e.e))
    if t is ExpNth:
        v = eval_expr(design, st, e.e)
        i = _as_index(eval_expr(design, st, e.idx), "vector index")
        return vec_nth(v, i)
    if t is ExpSl:
        v = eval_expr(design, st, e.e)
        start = _as_index(eval_expr(design, st, e.start), "slice start")
        length = _as_index(eval_expr(design, st, e.length), "slice length")
        return vec_slice(v, start, length)
    if t is ExpTl:
        return to_vector(eval_expr(design, st, e.e), False)
    if t is ExpTrl:
        return to_vector(eval_expr(design, st, e.e), True)
    if t is ExpR:
        raise EvalError("record aggregate outside a whole-record assignment")
    raise EvalError(f"cannot evaluate {e!r}")


def truthy(v: Val, what: str = "condition") -> bool:
    if v.tag == "scalar" and v.scalar.kind == "boolean":
        return v.scalar.value
    raise EvalError(f"{what} is not boolean: {fmt_val(v)}")


# ---------------------------------------------------------------------------
# Assignment helpers
# ---------------------------------------------------------------------------


def _check_constraint(typ, v: Val, target: str):
    if isinstance(typ, ScalarType) and typ.kind == "integer":
        if v.tag == "scalar" and v.scalar.kind == "integer":
            n = v.scalar.value
            if typ.lo is not None and n < typ.lo:
                raise EvalError(f"{target}: value {n} below range constraint")
            if typ.hi is not None and n > typ.hi:
                raise EvalError(f"{target}: value {n} above range constraint")


def _check_shape(typ, v: Val, target: str):
    if isinstance(typ, ScalarType):
        if v.tag != "scalar" or v.scalar.kind != typ.kind:
            raise EvalError(
                f"{target}: expected {typ.kind}, got {fmt_val(v)}"
            )
        _check_constraint(typ, v, target)
    elif isinstance(typ, VectorType):
        if not v.is_vector():
            raise EvalError(f"{target}: expected a vector, got {fmt_val(v)}")
        if len(v.elems) != typ.width:
            raise EvalError(
                f"{target}: width mismatch (expected {typ.width}, got {len(v.elems)})"
            )
        if v.elems and v.elems[0].scalar.kind != typ.elem:
            raise EvalError(
                f"{target}: element kind mismatch "
                f"(expected {typ.elem}, got {v.elems[0].scalar.kind})"
            )


def _coerce_direction(typ, v: Val) -> Val:
    # a value of the right width adopts the target's endianness; storage
    # stays in written order either way
    if isinstance(typ, VectorType) and v.is_vector():
        want = "vec_downto" if typ.direction == "downto" else "vec_to"
        if v.tag != want:
            return Val(want, None, v.elems)
    return v


def _range_positions(typ: VectorType, lo: int, hi: int, direction: str, target: str):
    """Storage positions covered by a declared-index range, ascending."""
    if direction != typ.direction:
        raise EvalError(f"{target}: range direction must match the vector's")
    if lo > hi:
        raise EvalError(f"{target}: empty or inverted range {lo}..{hi}")
    if lo < typ.lo or hi > typ.hi:
        raise EvalError(
            f"{target}: range {lo}..{hi} escapes declared bounds {typ.lo}..{typ.hi}"
        )
    nlo, nhi = lo - typ.lo, hi - typ.lo
    if typ.direction == "downto":
        w = typ.width
        return (w - 1) - nhi, (w - 1) - nlo  # contiguous ascending positions
    return nlo, nhi


def _eval_range(design, st, rng: DiscreteRange, target: str) -> tuple[int, int]:
    lo_v = eval_expr(design, st, rng.lo)
    hi_v = eval_expr(design, st, rng.hi)
    if (
        lo_v.tag != "scalar"
        or lo_v.scalar.kind != "integer"
        or hi_v.tag != "scalar"
        or hi_v.scalar.kind != "integer"
    ):
        raise EvalError(f"{target}: range bounds must be integers")
    return lo_v.scalar.value, hi_v.scalar.value


def _fill_value(design, st, e, typ: VectorType, count: int, target: str) -> Val:
    v = eval_expr(design, st, e)
    if v.tag != "scalar":
        raise EvalError(f"{target}: 'others =>' requires a scalar element")
    _check_shape(ScalarType(typ.elem), v, target)
    return Val(
        "vec_downto" if typ.direction == "downto" else "vec_to",
        None,
        (v,) * count,
    )


def _ranged_value(
    design, st, base: Val, typ: VectorType, rng: DiscreteRange, rhs, target: str
) -> Val:
    lo, hi = _eval_range(design, st, rng, target)
    p0, p1 = _range_positions(typ, lo, hi, rng.direction, target)
    count = p1 - p0 + 1
    if isinstance(rhs, RhsO):
        piece = _fill_value(design, st, rhs.e, typ, count, target)
    else:
        piece = eval_expr(design, st, rhs.e)
        if piece.tag == "scalar":
            if count != 1:
                raise EvalError(f"{target}: scalar assigned to a {count}-wide range")
            _check_shape(ScalarType(typ.elem), piece, target)
            piece = Val(base.tag, None, (piece,))
        elif piece.is_vector():
            if len(piece.elems) != count:
                raise EvalError(
                    f"{target}: range width {count} but value width {len(piece.elems)}"
                )
        else:
            raise EvalError(f"{target}: record assigned to a vector range")
    elems = list(base.elems)
    elems[p0 : p1 + 1] = piece.elems
    return Val(base.tag, None, tuple(elems))


def _record_pairs(design, st, shape_fields, rhs, target: str):
    """Pairs (field name, value) for a whole-record assignment."""
    if isinstance(rhs, RhsO):
        raise EvalError(f"{target}: 'others =>' on a record target")
    if isinstance(rhs.e, ExpR):
        items = rhs.e.items
        if len(items) != len(shape_fields):
            raise EvalError(
                f"{target}: aggregate has {len(items)} items, record has "
                f"{len(shape_fields)} fields"
            )
        return [
            (fname, item) for (fname, _), item in zip(shape_fields, items)
        ]
    v = eval_expr(design, st, rhs.e)
    if v.tag != "record":
        raise EvalError(f"{target}: record target assigned a non-record value")
    if len(v.elems) != len(shape_fields):
        raise EvalError(f"{target}: record shapes differ")
    return [
        (fname, RhsE(ExpCon(elem)))
        for (fname, _), elem in zip(shape_fields, v.elems)
    ]


# ---------------------------------------------------------------------------
# Signal assignment
# ---------------------------------------------------------------------------


def exec_signal_assign(ctx: ExecCtx, lhs, rhs, st: SimState) -> SimState:
    design = ctx.design
    node = design.env.lookup_sp(lhs.name)
    if node is None:
        raise EvalError(f"assignment to unknown signal/port {lhs.name!r}")
    if isinstance(node, Spnl):
        if lhs.rng is not None:
            raise EvalError(f"{lhs.name}: range on a record target")
        fields = [(c.name.rsplit(".", 1)[-1], None) for c in node.children]
        for fname, item_rhs in _record_pairs(design, st, fields, rhs, lhs.name):
            st = exec_signal_assign(ctx, SpLhs(f"{lhs.name}.{fname}"), item_rhs, st)
        return st

    leaf: SigPrt = node
    typ = leaf.typ
    if lhs.rng is None:
        if isinstance(rhs, RhsO):
            if not isinstance(typ, VectorType):
                raise EvalError(f"{leaf.name}: 'others =>' on a non-vector")
            v = _fill_value(design, st, rhs.e, typ, typ.width, leaf.name)
        else:
            v = eval_expr(design, st, rhs.e)
            v = _coerce_direction(typ, v)
            _check_shape(typ, v, leaf.name)
    else:
        if not isinstance(typ, VectorType):
            raise EvalError(f"{leaf.name}: range on a non-vector")
        prev = get_driving(st, leaf.name, ctx.proc)
        base = prev if prev is not None else st.sp[leaf.name]
        v = _ranged_value(design, st, base, typ, lhs.rng, rhs, leaf.name)
    return set_driving(st, leaf.name, ctx.proc, v)


# ---------------------------------------------------------------------------
# Variable assignment
# ---------------------------------------------------------------------------


def assign_variable_value(ctx: ExecCtx, lhs: VLhs, v: Val, st: SimState) -> SimState:
    """Write an already-evaluated value through a variable lhs."""
    design = ctx.design
    var = design.env.lookup_var(lhs.name)
    if var is None:
        shape = design.env.var_shapes.get(lhs.name)
        if shape is not None:
            return _assign_var_record(ctx, lhs.name, shape, v, st)
        raise EvalError(f"assignment to unknown variable {lhs.name!r}")
    if lhs.rng is not None:
        if not isinstance(var.typ, VectorType):
            raise EvalError(f"{lhs.name}: range on a non-vector")
        base = st.var[lhs.name]
        v = _ranged_value(
            design, st, base, var.typ, lhs.rng, RhsE(ExpCon(v)), lhs.name
        )
    else:
        v = _coerce_direction(var.typ, v)
        _check_shape(var.typ, v, lhs.name)
    return st.with_var(lhs.name, v)


def _assign_var_record(ctx, prefix: str, shape: RecordType, v: Val, st) -> SimState:
    if v.tag != "record":
        raise EvalError(f"{prefix}: record target assigned a non-record value")
    if len(v.elems) != len(shape.fields):
        raise EvalError(f"{prefix}: record shapes differ")
    for (fname, ftyp), elem in zip(shape.fields, v.elems):
        qual = f"{prefix}.{fname}"
        if isinstance(ftyp, RecordType):
            st = _assign_var_record(ctx, qual, ftyp, elem, st)
        else:
            st = assign_variable_value(ctx, VLhs(qual), elem, st)
    return st


def exec_var_assign(ctx: ExecCtx, lhs: VLhs, rhs, st: SimState) -> SimState:
    design = ctx.design
    var = design.env.lookup_var(lhs.name)
    if var is None:
        shape = design.env.var_shapes.get(lhs.name)
        if shape is not None:
            if lhs.rng is not None:
                raise EvalError(f"{lhs.name}: range on a record target")
            for fname, item_rhs in _record_pairs(design, st, shape.fields, rhs, lhs.name):
                st = exec_var_assign(ctx, VLhs(f"{lhs.name}.{fname}"), item_rhs, st)
            return st
        raise EvalError(f"assignment to unknown variable {lhs.name!r}")

    typ = var.typ
    if lhs.rng is None:
        if isinstance(rhs, RhsO):
            if not isinstance(typ, VectorType):
                raise EvalError(f"{lhs.name}: 'others =>' on a non-vector")
            v = _fill_value(design, st, rhs.e, typ, typ.width, lhs.name)
        else:
            v = eval_expr(design, st, rhs.e)
            v = _coerce_direction(typ, v)
            _check_shape(typ, v, lhs.name)
        return st.with_var(lhs.name, v)
    if not isinstance(typ, VectorType):
        raise EvalError(f"{lhs.name}: range on a non-vector")
    base = st.var[lhs.name]
    v = _ranged_value(design, st, base, typ, lhs.rng, rhs, lhs.name)
    return st.with_var(lhs.name, v)


# ---------------------------------------------------------------------------
# Control flow
# ---------------------------------------------------------------------------


def exec_stmt_list(ctx: ExecCtx, stmts, st: SimState) -> SimState:
    for s in stmts:
        if st.next_flag[1] or st.exit_flag[1]:
            break
        st = exec_stmt(ctx, s, st)
    return st


def exec_stmt(ctx: ExecCtx, s, st: SimState) -> SimState:
    before = st if ctx.trace is not None else None
    t = type(s)
    if t is SstSa:
        st = exec_signal_assign(ctx, s.lhs, s.rhs, st)
    elif t is SstVa:
        st = exec_var_assign(ctx, s.lhs, s.rhs, st)
    elif t is SstIf:
        st = exec_if(ctx, s.cond, s.then_body, s.else_body, st)
    elif t is SstL:
        st = exec_loop_stmt(ctx, s, st)
    elif t is SstN:
        st = exec_next(ctx, s.loop_name, s.cond, st)
    elif t is SstE:
        st = exec_exit(ctx, s.loop_name, s.cond, st)
    elif t is SstFn:
        st = exec_fn_call(ctx, s.lhs, s.call, st)
    elif t is SstPc:
        st = exec_proc_call(ctx, s.call, st)
    elif t is SstRt:
        value = None
        if s.rhs is not None:
            if isinstance(s.rhs, RhsO):
                raise EvalError("return 'others =>' requires a sized context")
            value = eval_expr(ctx.design, st, s.rhs.e)
        raise _Return(value)
    elif t is SstNl:
        pass
    else:
        raise EvalError(f"unknown statement {s!r}")
    if before is not None:
        ctx.trace(ctx.proc, s, before, st)
    return st


def exec_if(ctx: ExecCtx, cond, then_body, else_body, st: SimState) -> SimState:
    if truthy(eval_expr(ctx.design, st, cond)):
        return exec_stmt_list(ctx, then_body, st)
    return exec_stmt_list(ctx, else_body, st)


def exec_loop_stmt(ctx: ExecCtx, s: SstL, st: SimState) -> SimState:
    """Flag dispatch of the while loop; iterative to keep the stack flat."""
    n = s.name
    while True:
        if st.exit_flag[1]:
            if st.exit_flag[0] == n:
                return st.with_exit_flag(("", False))
            return st  # exit targets an outer loop: leave, keep the flag
        if st.next_flag[1]:
            if st.next_flag[0] == n:
                st = st.with_next_flag(("", False))
            else:
                return st  # next targets an outer loop
        if not truthy(eval_expr(ctx.design, st, s.cond), f"loop {n!r} condition"):
            return st
        ctx.budget_left -= 1
        if ctx.budget_left < 0:
            raise SimError(f"loop budget exceeded in loop {n!r}")
        st = exec_stmt_list(ctx, s.body, st)


def rec_loop(ctx: ExecCtx, s: SstL, st: SimState) -> SimState:
    """One conditional body execution followed by the loop dispatch."""
    if not truthy(eval_expr(ctx.design, st, s.cond), f"loop {s.name!r} condition"):
        return st
    ctx.budget_left -= 1
    if ctx.budget_left < 0:
        raise SimError(f"loop budget exceeded in loop {s.name!r}")
    st = exec_stmt_list(ctx, s.body, st)
    return exec_loop_stmt(ctx, s, st)


def exec_next(ctx: ExecCtx, loop_name: str, cond, st: SimState) -> SimState:
    if truthy(eval_expr(ctx.design, st, cond), "next condition"):
        return st.with_next_flag((loop_name, True))
    return st


def exec_exit(ctx: ExecCtx, loop_name: str, cond, st: SimState) -> SimState:
    if truthy(eval_expr(ctx.design, st, cond), "exit condition"):
        return st.with_exit_flag((loop_name, True))
    return st


# ---------------------------------------------------------------------------
# Subprogram calls
# ---------------------------------------------------------------------------


def _scope_names(sub) -> list[str]:
    return [f.name for f in sub.formals] + [v.name for v in sub.locals_]


def _read_arg(ctx: ExecCtx, st: SimState, arg: VLhs) -> Val:
    v = _read_var(ctx.design, st, arg.name)
    if arg.rng is not None:
        var = ctx.design.env.lookup_var(arg.name)
        if var is None or not isinstance(var.typ, VectorType):
            raise EvalError(f"{arg.name}: range on a non-vector argument")
        lo, hi = _eval_range(ctx.design, st, arg.rng, arg.name)
        p0, p1 = _range_positions(var.typ, lo, hi, arg.rng.direction, arg.name)
        v = Val(v.tag, None, v.elems[p0 : p1 + 1])
    return v


def _enter_subprogram(ctx: ExecCtx, sub, st: SimState):
    snapshot = {}
    for name in _scope_names(sub):
        if name in st.var:
            snapshot[name] = st.var[name]
        else:
            raise SimError(f"subprogram scope variable {name!r} missing from state")
    # locals re-initialize on every call
    for v in sub.locals_:
        st = st.with_var(v.name, v.init)
    return snapshot, st


def _restore(st: SimState, snapshot: dict[str, Val]) -> SimState:
    var = dict(st.var)
    var.update(snapshot)
    return SimState(
        sp=st.sp,
        var=var,
        eff=st.eff,
        drv=st.drv,
        next_flag=st.next_flag,
        exit_flag=st.exit_flag,
    )


def exec_fn_call(ctx: ExecCtx, lhs: VLhs, call: SubProgCall, st: SimState) -> SimState:
    sub = ctx.design.subprogram(call.callee)
    if sub is None or sub.kind != "function":
        raise EvalError(f"call to unknown function {call.callee!r}")
    if len(call.args) != len(sub.formals):
        raise EvalError(
            f"{sub.name}: expected {len(sub.formals)} arguments, got {len(call.args)}"
        )
    arg_vals = [_read_arg(ctx, st, a) for a in call.args]
    snapshot, st = _enter_subprogram(ctx, sub, st)
    for formal, v in zip(sub.formals, arg_vals):
        st = assign_variable_value(ctx, VLhs(formal.name), v, st)
    try:
        st = exec_stmt_list(ctx, sub.body, st)
    except _Return as r:
        if r.value is None:
            raise EvalError(f"function {sub.name!r} returned no value") from None
        st = _restore(st, snapshot)
        return assign_variable_value(ctx, lhs, r.value, st)
    raise EvalError(f"function {sub.name!r} ended without a return")


def exec_proc_call(ctx: ExecCtx, call: SubProgCall, st: SimState) -> SimState:
    sub = ctx.design.subprogram(call.callee)
    if sub is None or sub.kind != "procedure":
        raise EvalError(f"call to unknown procedure {call.callee!r}")
    if len(call.args) != len(sub.formals):
        raise EvalError(
            f"{sub.name}: expected {len(sub.formals)} arguments, got {len(call.args)}"
        )
    in_vals = [
        (formal, _read_arg(ctx, st, a))
        for formal, a in zip(sub.formals, call.args)
        if formal.mode in ("in", "inout")
    ]
    snapshot, st = _enter_subprogram(ctx, sub, st)
    for formal, v in in_vals:
        st = assign_variable_value(ctx, VLhs(formal.name), v, st)
    try:
        st = exec_stmt_list(ctx, sub.body, st)
    except _Return as r:
        if r.value is not None:
            raise EvalError(f"procedure {sub.name!r} returned a value") from None
    out_vals = [
        (arg, st.var[formal.name])
        for formal, arg in zip(sub.formals, call.args)
        if formal.mode in ("out", "inout")
    ]
    st = _restore(st, snapshot)
    for arg, v in out_vals:
        st = assign_variable_value(ctx, arg, v, st)
    return st
