"""Working memory, compositional rules, chaining, QoS selection, execution."""

from nlcompose.composition.chain import (
    FiringRecord,
    FiringTrace,
    derive_chain_rules,
    fire_rules,
    qualified_key,
)
from nlcompose.composition.execute import (
    CompositionPlan,
    ExecutionReport,
    ExecutorRegistry,
    HttpExecutor,
    PlanningInvoker,
    PlanStep,
    ServiceInvoker,
    StepReport,
    execute_plan,
    mock_executor,
)
from nlcompose.composition.qos import DeviceContext, select_concrete
from nlcompose.composition.rules import (
    CompositionalRule,
    eval_condition,
    eval_expr,
    parse_expression,
    parse_rule,
    parse_rule_file,
)
from nlcompose.composition.wm import AuditEvent, WorkingMemory, replay_audit

__all__ = [
    "AuditEvent",
    "CompositionPlan",
    "CompositionalRule",
    "DeviceContext",
    "ExecutionReport",
    "ExecutorRegistry",
    "FiringRecord",
    "FiringTrace",
    "HttpExecutor",
    "PlanStep",
    "PlanningInvoker",
    "ServiceInvoker",
    "StepReport",
    "WorkingMemory",
    "derive_chain_rules",
    "eval_condition",
    "eval_expr",
    "execute_plan",
    "fire_rules",
    "mock_executor",
    "parse_expression",
    "parse_rule",
    "parse_rule_file",
    "qualified_key",
    "replay_audit",
    "select_concrete",
]
