"""Rule derivation from service descriptors and forward chaining to quiescence."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any, Protocol

from nlcompose.composition.rules import (
    MISSING,
    And,
    Cmp,
    CompositionalRule,
    InvokeAction,
    Literal,
    Or,
    PutAction,
    RemoveAction,
    ResultsRef,
    WmGet,
    eval_condition,
    eval_expr,
)
from nlcompose.composition.wm import WorkingMemory
from nlcompose.errors import IterationCapExceeded, NLComposeError, RuleTypeError
from nlcompose.registry.descriptors import AbstractServiceDescriptor

log = logging.getLogger(__name__)

DEFAULT_PASS_CAP = 100


class Invoker(Protocol):
    """Resolves and runs one abstract method invocation during chaining."""

    def invoke(self, service_id: str, method_id: str, wm: WorkingMemory) -> Any: ...


def qualified_key(service_id: str, method_id: str, arg_name: str) -> str:
    return f"{service_id}.{method_id}.{arg_name}"


def derive_chain_rules(service: AbstractServiceDescriptor) -> list[CompositionalRule]:
    """One rule per method: fire when every argument is in working memory.

    Each argument is satisfied by its qualified `<service>.<method>.<arg>`
    key or by a bare key equal to the argument name, so a method whose
    argument is named after another method's returns key chains onto it.
    Firing invokes the method and puts the result under the returns key.
    """
    rules: list[CompositionalRule] = []
    for method in service.methods:
        conjuncts = []
        for arg in method.args:
            qualified = Cmp("!=", WmGet(qualified_key(service.service_id, method.method_id, arg.name)), Literal(None))
            bare = Cmp("!=", WmGet(arg.name), Literal(None))
            conjuncts.append(Or((qualified, bare)))
        when = And(tuple(conjuncts)) if conjuncts else Literal(True)

        actions: list = [InvokeAction(service.service_id, method.method_id)]
        if method.returns_key is not None:
            actions.append(PutAction(method.returns_key, ResultsRef()))
        rules.append(
            CompositionalRule(
                name=f"chain-{service.service_id}-{method.method_id}",
                description=method.capabilities[0],
                when=when,
                then=tuple(actions),
            )
        )
    return rules


@dataclass(frozen=True)
class FiringRecord:
    rule_name: str
    pass_index: int
    status: str  # "FIRED" | "FAILED"
    error: str | None = None
    wm_ops: tuple = ()


@dataclass
class FiringTrace:
    firings: list[FiringRecord] = field(default_factory=list)
    passes: int = 0
    quiescent: bool = False

    def fired_rule_names(self) -> list[str]:
        return [f.rule_name for f in self.firings]


def fire_rules(
    rules: list[CompositionalRule],
    wm: WorkingMemory,
    invoker: Invoker | None = None,
    pass_cap: int = DEFAULT_PASS_CAP,
) -> FiringTrace:
    """Forward-chain rules until a full pass fires nothing.

    Rules are evaluated in priority-then-name order each pass. A rule fires
    at most once per working-memory fingerprint, so re-putting identical
    state cannot livelock. Condition type errors skip the rule with a
    diagnostic; action errors mark the firing FAILED and chaining continues.
    Raises IterationCapExceeded when the pass cap is hit (a rule cycle).
    """
    names = [r.name for r in rules]
    if len(set(names)) != len(names):
        raise ValueError("rule names must be unique")
    ordered = sorted(rules, key=lambda r: (-r.priority, r.name))
    already_fired: set[tuple[str, int]] = set()
    trace = FiringTrace()

    for pass_index in range(pass_cap):
        trace.passes = pass_index + 1
        fired_this_pass = 0
        for rule in ordered:
            fingerprint = wm.fingerprint()
            if (rule.name, fingerprint) in already_fired:
                continue
            try:
                if not eval_condition(rule.when, wm):
                    continue
            except RuleTypeError as exc:
                log.warning("rule %s condition error, skipping: %s", rule.name, exc)
                continue
            already_fired.add((rule.name, fingerprint))
            fired_this_pass += 1
            rule.fired_count += 1
            record = _run_actions(rule, wm, invoker, pass_index)
            trace.firings.append(record)
        if fired_this_pass == 0:
            trace.quiescent = True
            return trace

    raise IterationCapExceeded(f"no quiescence after {pass_cap} passes (rule cycle?)")


def _run_actions(
    rule: CompositionalRule,
    wm: WorkingMemory,
    invoker: Invoker | None,
    pass_index: int,
) -> FiringRecord:
    audit_start = len(wm.audit)
    results: Any = MISSING
    try:
        for action in rule.then:
            if isinstance(action, InvokeAction):
                if invoker is None:
                    raise NLComposeError(
                        f"rule {rule.name} invokes {action.service_id}.{action.method_id} "
                        "but no invoker was supplied"
                    )
                results = invoker.invoke(action.service_id, action.method_id, wm)
            elif isinstance(action, PutAction):
                value = eval_expr(action.expr, wm, results)
                wm.put(action.key, None if value is MISSING else value, source=rule.name)
            elif isinstance(action, RemoveAction):
                wm.remove(action.key, source=rule.name)
            else:
                raise NLComposeError(f"unknown action {action!r}")
    except NLComposeError as exc:
        log.warning("rule %s action failed: %s", rule.name, exc)
        return FiringRecord(
            rule.name, pass_index, "FAILED", str(exc), tuple(wm.audit[audit_start:])
        )
    return FiringRecord(rule.name, pass_index, "FIRED", None, tuple(wm.audit[audit_start:]))
