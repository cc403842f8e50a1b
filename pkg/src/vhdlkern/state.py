"""Simulation state and the driving-value / effective-value machinery.

SimState is treated as a value: every operation returns a new state that
shares the untouched maps with its predecessor.  Current values are what
expressions read; driving values are per-(signal, process) contributions;
effective values are the resolved externally-observable values, promoted
into current values between delta iterations.

External events (clock flips, CLI stimuli, hierarchy port passing) write
the new value into the current map and leave the previous value in the
effective map as an activity marker: the signal then shows up in
``active_sigprts`` and ``comp_eff_val`` heals the marker (the zero-driver
rule: effective := current) before ``update_sigprt`` runs.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .ast import Design, RecordType, ScalarType, SigPrt, Spnl, VectorType
from .errors import SimError
from .values import Val, bit_val, bool_val, char_val, fmt_val, int_val, logic_val, real_val, resolve_logic9, time_val, vec


@dataclass(frozen=True)
class SimState:
    sp: dict[str, Val]
    var: dict[str, Val]
    eff: dict[str, Val | None]
    drv: dict[str, dict[str, Val | None]]
    next_flag: tuple[str, bool] = ("", False)
    exit_flag: tuple[str, bool] = ("", False)

    # -- functional field updates ------------------------------------------

    def with_sp(self, name: str, v: Val) -> "SimState":
        sp = dict(self.sp)
        sp[name] = v
        return replace(self, sp=sp)

    def with_var(self, name: str, v: Val) -> "SimState":
        var = dict(self.var)
        var[name] = v
        return replace(self, var=var)

    def with_eff(self, name: str, v: Val | None) -> "SimState":
        eff = dict(self.eff)
        eff[name] = v
        return replace(self, eff=eff)

    def with_next_flag(self, flag: tuple[str, bool]) -> "SimState":
        return replace(self, next_flag=flag)

    def with_exit_flag(self, flag: tuple[str, bool]) -> "SimState":
        return replace(self, exit_flag=flag)


def default_val(typ) -> Val:
    if isinstance(typ, ScalarType):
        if typ.kind == "bit":
            return bit_val(0)
        if typ.kind == "boolean":
            return bool_val(False)
        if typ.kind == "integer":
            return int_val(typ.lo if typ.lo is not None and typ.lo > 0 else 0)
        if typ.kind == "real":
            return real_val(0.0)
        if typ.kind == "time":
            return time_val(0)
        if typ.kind == "char":
            return char_val("\x00")
        if typ.kind == "logic":
            return logic_val("U")
        raise SimError(f"no default value for scalar kind {typ.kind}")
    if isinstance(typ, VectorType):
        elem = default_val(ScalarType(typ.elem))
        return vec((elem,) * typ.width, typ.direction == "downto")
    if isinstance(typ, RecordType):
        from .values import record_val

        return record_val(
            [n for n, _ in typ.fields], [default_val(t) for _, t in typ.fields]
        )
    raise SimError(f"no default value for {typ!r}")


def init_state(design: Design) -> SimState:
    sp: dict[str, Val] = {}
    eff: dict[str, Val | None] = {}
    for leaf in design.env.sp_leaves():
        sp[leaf.name] = leaf.init
        eff[leaf.name] = leaf.init
    var = {v.name: v.init for v in design.env.variables}
    return SimState(sp=sp, var=var, eff=eff, drv={})


def set_driving(st: SimState, sp_name: str, proc: str, v: Val | None) -> SimState:
    """Record the driving value of (sp, proc); later writes overwrite."""
    drv = dict(st.drv)
    cell = dict(drv.get(sp_name, ()))
    cell[proc] = v
    drv[sp_name] = cell
    return replace(st, drv=drv)


def get_driving(st: SimState, sp_name: str, proc: str) -> Val | None:
    cell = st.drv.get(sp_name)
    if cell is None:
        return None
    return cell.get(proc)


def get_drivers(st: SimState, sp_name: str, design: Design) -> list[Val]:
    """Present driving values of sp across processes, in declaration order."""
    procs = design.drivers.get(sp_name)
    if not procs:
        return []
    cell = st.drv.get(sp_name)
    if not cell:
        return []
    out = []
    for p in procs:
        v = cell.get(p)
        if v is not None:
            out.append(v)
    return out


_RESOLUTION_FNS = {"resolved": resolve_logic9}


def _apply_resolution(fn_name: str, drivers: list[Val], sp_name: str) -> Val | None:
    fn = _RESOLUTION_FNS.get(fn_name)
    if fn is None:
        return None
    first = drivers[0]
    if first.tag == "scalar":
        return Val("scalar", fn([d.scalar for d in drivers]))
    if first.is_vector():
        width = len(first.elems)
        if any(len(d.elems) != width for d in drivers):
            raise SimError(f"resolution of {sp_name!r}: driver widths differ")
        cols = [
            fn([d.elems[i].scalar for d in drivers]) for i in range(width)
        ]
        return Val(first.tag, None, tuple(Val("scalar", c) for c in cols))
    return None


def effective_value(st: SimState, sp_name: str, design: Design) -> Val | None:
    """No drivers -> current value; one -> that value; several -> resolved
    (or absent when the signal has no resolution function)."""
    drivers = get_drivers(st, sp_name, design)
    if not drivers:
        return st.sp[sp_name]
    if len(drivers) == 1:
        return drivers[0]
    fn_name = design.res_fn.get(sp_name)
    if fn_name is None:
        return None
    return _apply_resolution(fn_name, drivers, sp_name)


def comp_eff_val(
    design: Design, st: SimState, procs_run=None
) -> SimState:
    """Recompute stored effective values.

    ``procs_run`` limits the recompute to leaves statically driven by those
    processes (the affected set); ``None`` recomputes every driven leaf.
    Driverless leaves whose current value moved away from their stored
    effective value (external events) are healed to the current value, which
    is the zero-driver case of the effective-value algorithm.
    """
    eff = dict(st.eff)
    if procs_run is None:
        targets = design.drivers.keys()
    else:
        run = set(procs_run)
        targets = [
            leaf for leaf, procs in design.drivers.items() if run & set(procs)
        ]
    new_st = replace(st, eff=eff)
    for leaf in targets:
        eff[leaf] = effective_value(st, leaf, design)
    for leaf, cur in st.sp.items():
        if not design.drivers.get(leaf) and eff.get(leaf) != cur:
            eff[leaf] = cur
    return new_st


def active_sigprts(st: SimState, design: Design) -> list[str]:
    """Leaves whose current value differs from a present effective value."""
    out = []
    for leaf in design.env.sp_leaves():
        e = st.eff.get(leaf.name)
        if e is not None and e != st.sp[leaf.name]:
            out.append(leaf.name)
    return out


def update_sigprt(st: SimState, names) -> SimState:
    """Copy present effective values into current values."""
    sp = None
    for name in names:
        e = st.eff.get(name)
        if e is not None and st.sp.get(name) != e:
            if sp is None:
                sp = dict(st.sp)
            sp[name] = e
    if sp is None:
        return st
    return replace(st, sp=sp)


def mark_event(st: SimState, name: str, new: Val) -> SimState:
    """External write: new value now, old value kept in eff as the marker."""
    old = st.sp.get(name)
    if old is None:
        raise SimError(f"unknown signal/port {name!r}")
    if old == new:
        return st
    sp = dict(st.sp)
    sp[name] = new
    eff = dict(st.eff)
    eff[name] = old
    return replace(st, sp=sp, eff=eff)


# ---------------------------------------------------------------------------
# Dumps
# ---------------------------------------------------------------------------


def state_dump(st: SimState, design: Design) -> str:
    """Signal/port current values, one ``name = value`` line, sorted."""
    lines = [
        f"{leaf.name} = {fmt_val(st.sp[leaf.name])}"
        for leaf in design.env.sp_leaves()
    ]
    return "\n".join(sorted(lines)) + "\n"
