"""Delta-cycle engine: run activated processes, recompute effective values,
promote them, iterate to fixpoint, then advance the clock."""

from __future__ import annotations

from dataclasses import dataclass, field

from .ast import CstPs, Design
from .errors import SimError
from .seq_exec import ExecCtx, _Return, exec_stmt_list
from .state import (
    SimState,
    active_sigprts,
    comp_eff_val,
    mark_event,
    update_sigprt,
)
from .values import Val, bit_val, logic_val


class TraceSink:
    """Receiver for kernel events; all hooks are optional no-ops.

    The sink keeps its own cycle counter so composed ``simulation`` calls
    (the CLI advances one cycle at a time to interleave stimuli) number
    cycles continuously.
    """

    def on_cycle(self) -> None:
        pass

    def on_delta(self, delta: int, active, transitions) -> None:
        """One delta iteration: active leaf names and (name, old, new) promotions."""

    def on_stmt(self, proc, stmt, before, after) -> None:
        pass


@dataclass
class SimConfig:
    cycles: int = 0
    clock: str | None = None
    delta_limit: int = 1000
    loop_budget: int = 100_000
    trace: bool = False
    full_recompute: bool = False  # differential mode: recompute every driven leaf
    recorder: TraceSink | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.delta_limit < 1:
            raise SimError("delta_limit must be at least 1")


def procs_activated(design: Design, sps) -> list[CstPs]:
    """Processes whose sensitivity list intersects the active set."""
    if not sps:
        return []
    actives = set(sps)
    return [p for p in design.processes if actives & set(p.sensitivity)]


def has_active_processes(design: Design, sps) -> bool:
    return bool(procs_activated(design, sps))


def exec_proc_all(design: Design, sps, st: SimState, cfg: SimConfig) -> SimState:
    """Run every activated process once, in declaration order."""
    stmt_trace = None
    if cfg.recorder is not None and cfg.trace:
        stmt_trace = cfg.recorder.on_stmt
    for p in procs_activated(design, sps):
        ctx = ExecCtx(
            proc=p.name, design=design, budget_left=cfg.loop_budget, trace=stmt_trace
        )
        try:
            st = exec_stmt_list(ctx, p.body, st)
        except _Return:
            raise SimError(f"return outside a subprogram in process {p.name!r}")
        if st.next_flag[1] or st.exit_flag[1]:
            raise SimError(
                f"process {p.name!r} ended with a raised next/exit flag"
            )
    return st


def resume_processes(
    design: Design, sps, st: SimState, fuel: int, cfg: SimConfig | None = None
) -> SimState:
    """Iterate delta cycles until no process has an active signal.

    One iteration: run activated processes, recompute effective values over
    the driver-affected set, collect the newly active signals, promote
    effective values into current values.
    """
    if cfg is None:
        cfg = SimConfig(delta_limit=fuel)
    all_leaves = [leaf.name for leaf in design.env.sp_leaves()]
    delta = 0
    while True:
        if delta >= fuel:
            still = ", ".join(sorted(sps)) or "none"
            raise SimError(
                f"delta cycle limit exceeded ({fuel}); still active: {still}"
            )
        ran = procs_activated(design, sps)
        st = exec_proc_all(design, sps, st, cfg)
        st = comp_eff_val(
            design, st, None if cfg.full_recompute else [p.name for p in ran]
        )
        act1 = active_sigprts(st, design)
        if cfg.recorder is not None:
            transitions = [(n, st.sp[n], st.eff[n]) for n in act1]
            cfg.recorder.on_delta(delta, list(sps), transitions)
        st = update_sigprt(st, all_leaves)
        delta += 1
        if not has_active_processes(design, act1):
            return st
        sps = act1


def exec_sim_cyc(design: Design, st: SimState, cfg: SimConfig) -> SimState:
    act = active_sigprts(st, design)
    if has_active_processes(design, act):
        return resume_processes(design, act, st, cfg.delta_limit, cfg)
    return st


def _flipped(v: Val, name: str) -> Val:
    if v.tag == "scalar" and v.scalar.kind == "bit":
        return bit_val(1 - v.scalar.value)
    if v.tag == "scalar" and v.scalar.kind == "logic":
        if v.scalar.value == "0":
            return logic_val("1")
        if v.scalar.value == "1":
            return logic_val("0")
        raise SimError(f"clock {name!r} holds non-binary value {v.scalar.value!r}")
    raise SimError(f"clock {name!r} is not a bit or logic signal")


def flip_clk(st: SimState, cfg: SimConfig, design: Design) -> SimState:
    """Negate the clock; the old value stays in eff so the edge is active."""
    if cfg.clock is None:
        return st
    cur = st.sp.get(cfg.clock)
    if cur is None:
        raise SimError(f"clock {cfg.clock!r} is not declared in the design")
    return mark_event(st, cfg.clock, _flipped(cur, cfg.clock))


def simulation(n: int, design: Design, st: SimState, cfg: SimConfig) -> SimState:
    """n repetitions of: execute one simulation cycle, then flip the clock."""
    if n < 0:
        raise SimError("cycle count must be non-negative")
    for _ in range(n):
        if cfg.recorder is not None:
            cfg.recorder.on_cycle()
        st = flip_clk(exec_sim_cyc(design, st, cfg), cfg, design)
    return st
