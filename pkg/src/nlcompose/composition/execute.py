"""Executors, invocation resolution, composition plans, and plan execution.

An executor is any callable ``(concrete_id, method_id, args) -> value``; the
registry enforces a per-invocation timeout. Out-of-process executors speak
JSON: request ``{concrete_id, method_id, args}``, response ``{"ok": value}``
or ``{"error": message}``.
"""

from __future__ import annotations

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from concurrent.futures import TimeoutError as FutureTimeout
from dataclasses import dataclass, field
from typing import Any, Callable

from nlcompose.composition.chain import qualified_key
from nlcompose.composition.qos import DeviceContext, select_concrete
from nlcompose.composition.wm import WorkingMemory
from nlcompose.errors import ExecutionError, ExecutorTimeout, NLComposeError
from nlcompose.registry.descriptors import (
    ConcreteServiceDescriptor,
    MethodDescriptor,
    RegistrySnapshot,
)
from nlcompose.registry.store import lookup_concretes

log = logging.getLogger(__name__)

Executor = Callable[[str, str, dict[str, Any]], Any]

STEP_PENDING = "PENDING"
STEP_READY = "READY"
STEP_EXECUTED = "EXECUTED"
STEP_FAILED = "FAILED"


def mock_executor(concrete_id: str, method_id: str, args: dict[str, Any]) -> Any:
    """Deterministic stand-in executor: echoes what it was asked to run."""
    return {
        "service": concrete_id,
        "method": method_id,
        "args": {k: args[k] for k in sorted(args)},
        "status": "ok",
    }


class HttpExecutor:
    """Executor that forwards invocations to an HTTP endpoint as JSON."""

    def __init__(self, url: str, timeout: float = 10.0):
        self.url = url
        self.timeout = timeout

    def __call__(self, concrete_id: str, method_id: str, args: dict[str, Any]) -> Any:
        import httpx

        payload = {"concrete_id": concrete_id, "method_id": method_id, "args": args}
        try:
            response = httpx.post(self.url, json=payload, timeout=self.timeout)
            response.raise_for_status()
            body = response.json()
        except httpx.HTTPError as exc:
            raise ExecutionError(f"executor endpoint {self.url} failed: {exc}") from exc
        if "error" in body:
            raise ExecutionError(str(body["error"]))
        if "ok" not in body:
            raise ExecutionError(f"executor endpoint {self.url} returned no 'ok' field")
        return body["ok"]


class ExecutorRegistry:
    """Named executors plus the per-invocation timeout contract."""

    def __init__(self, executors: dict[str, Executor] | None = None, timeout: float = 10.0):
        self._executors: dict[str, Executor] = dict(executors or {})
        self._executors.setdefault("mock", mock_executor)
        self.timeout = timeout
        self._pool = ThreadPoolExecutor(max_workers=4, thread_name_prefix="executor")

    def register(self, name: str, executor: Executor) -> None:
        self._executors[name] = executor

    def run(self, name: str, concrete_id: str, method_id: str, args: dict[str, Any]) -> Any:
        executor = self._executors.get(name)
        if executor is None:
            raise ExecutionError(f"no executor registered under {name!r}")
        future = self._pool.submit(executor, concrete_id, method_id, args)
        try:
            return future.result(timeout=self.timeout)
        except FutureTimeout:
            future.cancel()
            raise ExecutorTimeout(
                f"{concrete_id}.{method_id} exceeded the {self.timeout}s executor timeout"
            ) from None
        except NLComposeError:
            raise
        except Exception as exc:
            raise ExecutionError(f"{concrete_id}.{method_id} raised: {exc}") from exc


def resolve_arg(wm: WorkingMemory, service_id: str, method_id: str, arg_name: str) -> Any:
    """Working-memory value for one argument: qualified key, bare key, then
    any dotted key ending in the argument name. Missing -> internal marker."""
    qualified = qualified_key(service_id, method_id, arg_name)
    if wm.has(qualified):
        return wm.get(qualified)
    if wm.has(arg_name):
        return wm.get(arg_name)
    suffix = f".{arg_name}"
    for key in wm.keys():
        if key.endswith(suffix):
            return wm.get(key)
    return _UNRESOLVED


_UNRESOLVED = object()


def _resolve_args(
    wm: WorkingMemory, service_id: str, method: MethodDescriptor
) -> tuple[dict[str, Any], list[str]]:
    args: dict[str, Any] = {}
    missing: list[str] = []
    for arg in method.args:
        value = resolve_arg(wm, service_id, method.method_id, arg.name)
        if value is _UNRESOLVED:
            missing.append(arg.name)
        else:
            args[arg.name] = value
    return args, missing


class ServiceInvoker:
    """Resolves an abstract invocation to a concrete execution."""

    def __init__(
        self,
        snapshot: RegistrySnapshot,
        executors: ExecutorRegistry,
        context: DeviceContext | None = None,
    ):
        self.snapshot = snapshot
        self.executors = executors
        self.context = context or DeviceContext()

    def _ground(self, service_id: str, method_id: str) -> tuple[MethodDescriptor, ConcreteServiceDescriptor]:
        method = self.snapshot.method(service_id, method_id)
        concretes = lookup_concretes(self.snapshot, service_id)
        if not concretes:
            raise ExecutionError(f"no concrete service implements {service_id!r}")
        concrete = select_concrete(concretes, method_id, self.context)
        return method, concrete

    def invoke(self, service_id: str, method_id: str, wm: WorkingMemory) -> Any:
        method, concrete = self._ground(service_id, method_id)
        args, missing = _resolve_args(wm, service_id, method)
        if missing:
            raise ExecutionError(
                f"{service_id}.{method_id} missing arguments {missing} in working memory"
            )
        return self.executors.run(
            concrete.executor_binding, concrete.concrete_id, method_id, args
        )


@dataclass
class PlanStep:
    service_id: str
    method: MethodDescriptor
    concrete: ConcreteServiceDescriptor
    status: str = STEP_PENDING

    @property
    def method_id(self) -> str:
        return self.method.method_id


@dataclass
class CompositionPlan:
    steps: list[PlanStep] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.steps)


class PlanningInvoker(ServiceInvoker):
    """Dry-run invoker: grounds each invocation into a plan step and feeds a
    placeholder result back so chaining can continue during planning."""

    def __init__(self, snapshot, executors, context=None):
        super().__init__(snapshot, executors, context)
        self.plan = CompositionPlan()

    def invoke(self, service_id: str, method_id: str, wm: WorkingMemory) -> Any:
        method, concrete = self._ground(service_id, method_id)
        _, missing = _resolve_args(wm, service_id, method)
        if missing:
            raise ExecutionError(
                f"{service_id}.{method_id} missing arguments {missing} in working memory"
            )
        self.plan.steps.append(PlanStep(service_id=service_id, method=method, concrete=concrete))
        return {"planned": f"{service_id}.{method_id}"}


@dataclass(frozen=True)
class StepReport:
    service_id: str
    method_id: str
    concrete_id: str
    status: str
    duration_ms: float
    returns_key: str | None = None
    error: str | None = None
    note: str | None = None


@dataclass
class ExecutionReport:
    steps: list[StepReport] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(s.status == STEP_EXECUTED for s in self.steps)

    def summary(self) -> str:
        if not self.steps:
            return "nothing to execute"
        parts = [f"{s.service_id}.{s.method_id}:{s.status}" for s in self.steps]
        return ", ".join(parts)


def execute_plan(
    plan: CompositionPlan, wm: WorkingMemory, executors: ExecutorRegistry
) -> ExecutionReport:
    """Run plan steps in order, feeding each result back into working memory.

    A step is executed only when every argument resolves from the working
    memory at its turn; a failed step therefore leaves its dependents
    PENDING with a note explaining the chain break.
    """
    report = ExecutionReport()
    for step in plan.steps:
        args, missing = _resolve_args(wm, step.service_id, step.method)
        if missing:
            step.status = STEP_PENDING
            report.steps.append(
                StepReport(
                    step.service_id,
                    step.method_id,
                    step.concrete.concrete_id,
                    STEP_PENDING,
                    0.0,
                    step.method.returns_key,
                    note=f"waiting on {', '.join(missing)} (upstream step did not produce it)",
                )
            )
            continue
        step.status = STEP_READY
        started = time.perf_counter()
        try:
            result = executors.run(
                step.concrete.executor_binding, step.concrete.concrete_id, step.method_id, args
            )
        except NLComposeError as exc:
            step.status = STEP_FAILED
            report.steps.append(
                StepReport(
                    step.service_id,
                    step.method_id,
                    step.concrete.concrete_id,
                    STEP_FAILED,
                    (time.perf_counter() - started) * 1000.0,
                    step.method.returns_key,
                    error=str(exc),
                )
            )
            continue
        step.status = STEP_EXECUTED
        if step.method.returns_key is not None:
            wm.put(step.method.returns_key, result, source=f"step:{step.service_id}.{step.method_id}")
        report.steps.append(
            StepReport(
                step.service_id,
                step.method_id,
                step.concrete.concrete_id,
                STEP_EXECUTED,
                (time.perf_counter() - started) * 1000.0,
                step.method.returns_key,
            )
        )
    return report
