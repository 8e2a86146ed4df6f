"""Session engine: request -> match -> disambiguate -> bind -> chain -> execute.

One engine serves many independent sessions; within a session requests are
processed strictly one at a time. A session pins the registry snapshot
version it was created against, so a manifest reload never shifts the corpus
mid-conversation.
"""

from __future__ import annotations

import itertools
import logging
import threading
import time
from dataclasses import dataclass, field
from typing import Any

from nlcompose.composition.chain import derive_chain_rules, fire_rules, qualified_key
from nlcompose.composition.execute import (
    ExecutionReport,
    ExecutorRegistry,
    HttpExecutor,
    PlanningInvoker,
    execute_plan,
    mock_executor,
)
from nlcompose.composition.qos import DeviceContext
from nlcompose.composition.rules import CompositionalRule, parse_rule_file
from nlcompose.composition.wm import WorkingMemory
from nlcompose.embedding.index import EmbeddedCorpus, index_corpus, rank_candidates
from nlcompose.embedding.model import EmbeddingModel, embed_sentence
from nlcompose.entities.binding import bind_arguments
from nlcompose.entities.lexicon import default_noun_lexicon
from nlcompose.entities.recognize import EntityRecognizer
from nlcompose.entities.synonyms import SynonymMatcher, SynonymTable, default_synonym_table
from nlcompose.entities.types import EntityKind
from nlcompose.errors import (
    EmptyInput,
    InvalidAnswer,
    NLComposeError,
    PendingQuestionOpen,
    UnknownSession,
)
from nlcompose.matching import (
    MatchCandidate,
    NeedsDisambiguation,
    NoMatch,
    Selected,
    select_service,
)
from nlcompose.registry.descriptors import RegistrySnapshot
from nlcompose.registry.store import build_corpus
from nlcompose.registry.watcher import ManifestWatcher
from nlcompose.service.config import EngineConfig

log = logging.getLogger(__name__)

REPLY_EXECUTED = "executed"
REPLY_ASK_METHOD_CHOICE = "ask_method_choice"
REPLY_ASK_ARG_VALUE = "ask_arg_value"
REPLY_REPHRASE = "rephrase"
REPLY_ERROR = "error"


@dataclass(frozen=True)
class EngineReply:
    kind: str
    text: str
    payload: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        return {"kind": self.kind, "text": self.text, "payload": self.payload}


@dataclass(frozen=True)
class MethodChoice:
    candidates: tuple[MatchCandidate, ...]


@dataclass(frozen=True)
class ArgValue:
    service_id: str
    method_id: str
    arg_name: str
    prompt: str
    expected_kind: str | None


PendingQuestion = MethodChoice | ArgValue


@dataclass
class Session:
    session_id: str
    wm: WorkingMemory
    registry_version_pinned: int
    pending: PendingQuestion | None = None
    transcript: list[tuple[str, str, float]] = field(default_factory=list)
    last_utterance: str = ""
    lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    def say(self, speaker: str, text: str) -> None:
        self.transcript.append((speaker, text, time.time()))


class Engine:
    def __init__(
        self,
        snapshot_source: ManifestWatcher | RegistrySnapshot,
        model: EmbeddingModel,
        config: EngineConfig | None = None,
        executors: ExecutorRegistry | None = None,
        recognizer: EntityRecognizer | None = None,
        synonyms: SynonymMatcher | None = None,
    ):
        self.config = config or EngineConfig()
        self._source = snapshot_source
        self.model = model
        self.executors = executors or _executors_from_config(self.config)
        self.recognizer = recognizer or EntityRecognizer()
        self.synonyms = synonyms or SynonymMatcher(table=default_synonym_table(), model=model)
        self.device_context = DeviceContext(levels=dict(self.config.device_context))
        self.extra_rules: list[CompositionalRule] = []
        if self.config.rules_path:
            from pathlib import Path

            self.extra_rules = parse_rule_file(Path(self.config.rules_path).read_text("utf-8"))
        self._sessions: dict[str, Session] = {}
        self._session_counter = itertools.count(1)
        self._indices: dict[int, EmbeddedCorpus] = {}
        self._lock = threading.Lock()

    # -- snapshots -------------------------------------------------------------

    def latest_snapshot(self) -> RegistrySnapshot:
        if isinstance(self._source, ManifestWatcher):
            return self._source.current
        return self._source

    def _snapshot_for(self, version: int) -> RegistrySnapshot:
        latest = self.latest_snapshot()
        if latest.version == version:
            return latest
        # An old pinned version after a reload: serve the latest corpus for
        # lookups that need descriptors; indices keep per-version embeddings.
        return latest

    def index_for(self, snapshot: RegistrySnapshot) -> EmbeddedCorpus:
        with self._lock:
            index = self._indices.get(snapshot.version)
            if index is None:
                index = index_corpus(self.model, build_corpus(snapshot), snapshot.version)
                self._indices[snapshot.version] = index
            return index

    # -- sessions ----------------------------------------------------------------

    def create_session(self) -> Session:
        snapshot = self.latest_snapshot()
        self.index_for(snapshot)
        wm = WorkingMemory()
        for key, value in sorted(self.config.context_facts.items()):
            wm.put(key, value, source="context")
        with self._lock:
            session_id = f"s{next(self._session_counter):04d}"
            session = Session(
                session_id=session_id, wm=wm, registry_version_pinned=snapshot.version
            )
            self._sessions[session_id] = session
        return session

    def get_session(self, session_id: str) -> Session:
        session = self._sessions.get(session_id)
        if session is None:
            raise UnknownSession(f"no session {session_id!r}")
        return session

    def drop_session(self, session_id: str) -> None:
        self._sessions.pop(session_id, None)

    # -- conversation turns --------------------------------------------------------

    def handle_utterance(self, session: Session | str, text: str) -> EngineReply:
        session = self._resolve(session)
        with session.lock:
            if session.pending is not None:
                return self._reply(
                    session,
                    EngineReply(
                        REPLY_ERROR,
                        "a question is pending; answer it first",
                        {"error": PendingQuestionOpen.__name__},
                    ),
                    user_text=text,
                )
            session.say("user", text)
            session.last_utterance = text
            try:
                return self._match_and_continue(session, text)
            except NLComposeError as exc:
                return self._reply(
                    session,
                    EngineReply(REPLY_ERROR, f"error: {exc}", {"error": type(exc).__name__}),
                )

    def answer_pending(self, session: Session | str, answer: str) -> EngineReply:
        session = self._resolve(session)
        with session.lock:
            if session.pending is None:
                return self._reply(
                    session,
                    EngineReply(
                        REPLY_ERROR,
                        "nothing is pending; send an utterance",
                        {"error": InvalidAnswer.__name__},
                    ),
                    user_text=answer,
                )
            session.say("user", answer)
            try:
                if isinstance(session.pending, MethodChoice):
                    return self._answer_method_choice(session, answer)
                return self._answer_arg_value(session, answer)
            except NLComposeError as exc:
                return self._reply(
                    session,
                    EngineReply(REPLY_ERROR, f"error: {exc}", {"error": type(exc).__name__}),
                )

    # -- pipeline ------------------------------------------------------------------

    def _match_and_continue(self, session: Session, text: str) -> EngineReply:
        snapshot = self._snapshot_for(session.registry_version_pinned)
        index = self.index_for(snapshot)
        try:
            request = embed_sentence(self.model, text)
        except EmptyInput:
            return self._reply(session, _rephrase_reply())
        candidates = rank_candidates(index, request)
        outcome = select_service(candidates, self.config.thresholds)

        if isinstance(outcome, NoMatch):
            return self._reply(session, _rephrase_reply())
        if isinstance(outcome, NeedsDisambiguation):
            session.pending = MethodChoice(outcome.candidates)
            return self._reply(session, self._method_choice_reply(snapshot, outcome.candidates))
        assert isinstance(outcome, Selected)
        return self._continue_with_method(
            session, outcome.candidate.service_id, outcome.candidate.method_id
        )

    def _continue_with_method(
        self, session: Session, service_id: str, method_id: str
    ) -> EngineReply:
        snapshot = self._snapshot_for(session.registry_version_pinned)
        method = snapshot.method(service_id, method_id)
        entities = self.recognizer.recognize(session.last_utterance)
        binding = bind_arguments(method, entities, session.wm, self.synonyms)

        for name, bound in binding.bound.items():
            key = qualified_key(service_id, method_id, name)
            if session.wm.get(key) != bound.value:
                session.wm.put(key, bound.value, source="binding")

        if binding.unresolved:
            arg = method.arg(binding.unresolved[0])
            session.pending = ArgValue(
                service_id=service_id,
                method_id=method_id,
                arg_name=arg.name,
                prompt=arg.description,
                expected_kind=arg.declared_kind,
            )
            return self._reply(
                session,
                EngineReply(
                    REPLY_ASK_ARG_VALUE,
                    f"please provide {arg.name}: {arg.description}",
                    {
                        "service_id": service_id,
                        "method_id": method_id,
                        "arg_name": arg.name,
                        "prompt": arg.description,
                        "expected_kind": arg.declared_kind,
                    },
                ),
            )
        return self._compose_and_execute(session)

    def _compose_and_execute(self, session: Session) -> EngineReply:
        snapshot = self._snapshot_for(session.registry_version_pinned)
        rules = [
            rule
            for service_id in sorted(snapshot.abstracts)
            for rule in derive_chain_rules(snapshot.abstracts[service_id])
        ]
        rules.extend(self.extra_rules)

        planner = PlanningInvoker(snapshot, self.executors, self.device_context)
        scratch = session.wm.copy()
        trace = fire_rules(rules, scratch, planner)
        plan = planner.plan
        if not plan.steps:
            return self._reply(
                session,
                EngineReply(
                    REPLY_ERROR,
                    "no executable composition found for the resolved arguments",
                    {"error": "EmptyPlan", "passes": trace.passes},
                ),
            )
        report = execute_plan(plan, session.wm, self.executors)
        return self._reply(session, _executed_reply(report))

    # -- answers ----------------------------------------------------------------------

    def _answer_method_choice(self, session: Session, answer: str) -> EngineReply:
        assert isinstance(session.pending, MethodChoice)
        candidates = session.pending.candidates
        try:
            choice = int(answer.strip())
        except ValueError:
            choice = -1
        if not 1 <= choice <= len(candidates):
            snapshot = self._snapshot_for(session.registry_version_pinned)
            reply = self._method_choice_reply(
                snapshot, candidates, note=f"invalid choice {answer!r}; pick 1-{len(candidates)}"
            )
            return self._reply(session, reply)
        chosen = candidates[choice - 1]
        session.pending = None
        return self._continue_with_method(session, chosen.service_id, chosen.method_id)

    def _answer_arg_value(self, session: Session, answer: str) -> EngineReply:
        assert isinstance(session.pending, ArgValue)
        pending = session.pending
        value = self._parse_answer(answer, pending.expected_kind)
        if value is None:
            return self._reply(
                session,
                EngineReply(
                    REPLY_ASK_ARG_VALUE,
                    f"that does not look like {pending.expected_kind or 'a value'}; "
                    f"please provide {pending.arg_name}: {pending.prompt}",
                    {
                        "service_id": pending.service_id,
                        "method_id": pending.method_id,
                        "arg_name": pending.arg_name,
                        "prompt": pending.prompt,
                        "expected_kind": pending.expected_kind,
                        "note": "invalid answer",
                    },
                ),
            )
        key = qualified_key(pending.service_id, pending.method_id, pending.arg_name)
        session.wm.put(key, value, source="user")
        session.pending = None
        return self._continue_with_method(session, pending.service_id, pending.method_id)

    def _parse_answer(self, answer: str, expected_kind: str | None) -> Any:
        text = answer.strip()
        if not text:
            return None
        if expected_kind is None:
            return text
        kind = EntityKind(expected_kind)
        entities = [e for e in self.recognizer.recognize(text) if e.kind == kind]
        if entities:
            return entities[0].normalized
        return None

    # -- replies -----------------------------------------------------------------------

    def _method_choice_reply(
        self,
        snapshot: RegistrySnapshot,
        candidates: tuple[MatchCandidate, ...],
        note: str | None = None,
    ) -> EngineReply:
        options = []
        for i, cand in enumerate(candidates, start=1):
            method = snapshot.method(cand.service_id, cand.method_id)
            options.append(
                {
                    "index": i,
                    "service_id": cand.service_id,
                    "method_id": cand.method_id,
                    "similarity": round(cand.similarity, 4),
                    "description": method.capabilities[0],
                }
            )
        lines = [
            f"{o['index']}) {o['service_id']}.{o['method_id']} - {o['description']}"
            for o in options
        ]
        prefix = f"{note}\n" if note else ""
        payload: dict[str, Any] = {"options": options}
        if note:
            payload["note"] = note
        return EngineReply(
            REPLY_ASK_METHOD_CHOICE,
            prefix + "which one did you mean?\n" + "\n".join(lines),
            payload,
        )

    def _reply(
        self, session: Session, reply: EngineReply, user_text: str | None = None
    ) -> EngineReply:
        if user_text is not None:
            session.say("user", user_text)
        session.say("engine", reply.text)
        return reply

    def _resolve(self, session: Session | str) -> Session:
        if isinstance(session, Session):
            return session
        return self.get_session(session)


def _rephrase_reply() -> EngineReply:
    return EngineReply(
        REPLY_REPHRASE,
        "no service matches that request; please re-phrase it",
        {},
    )


def _executed_reply(report: ExecutionReport) -> EngineReply:
    steps_payload = [
        {
            "service_id": s.service_id,
            "method_id": s.method_id,
            "concrete_id": s.concrete_id,
            "status": s.status,
            "returns_key": s.returns_key,
            "error": s.error,
            "note": s.note,
            "duration_ms": round(s.duration_ms, 3),
        }
        for s in report.steps
    ]
    lines = []
    for s in report.steps:
        extra = f" ({s.error})" if s.error else (f" ({s.note})" if s.note else "")
        lines.append(f"{s.service_id}.{s.method_id} via {s.concrete_id}: {s.status}{extra}")
    return EngineReply(
        REPLY_EXECUTED,
        "composition executed:\n" + "\n".join(lines),
        {"steps": steps_payload, "ok": report.ok},
    )


def _executors_from_config(config: EngineConfig) -> ExecutorRegistry:
    registry = ExecutorRegistry(timeout=config.executor_timeout)
    for name, spec in config.executors.items():
        kind = spec.get("type", "mock")
        if kind == "http":
            registry.register(name, HttpExecutor(spec["url"], timeout=config.executor_timeout))
        elif kind == "mock":
            registry.register(name, mock_executor)
        else:
            raise ValueError(f"unknown executor type {kind!r} for {name!r}")
    return registry


def load_entity_tables(config: EngineConfig) -> tuple[EntityRecognizer, SynonymMatcher]:
    """Build recognizer and synonym matcher from configured table paths."""
    from pathlib import Path

    gazetteers = None
    if config.gazetteer_paths:
        gazetteers = {}
        for kind_name, path in config.gazetteer_paths.items():
            surfaces = [
                line.strip()
                for line in Path(path).read_text("utf-8").splitlines()
                if line.strip() and not line.startswith("#")
            ]
            gazetteers[EntityKind(kind_name)] = surfaces
    lexicon = None
    if config.noun_lexicon_path:
        lexicon = frozenset(
            line.strip().lower()
            for line in Path(config.noun_lexicon_path).read_text("utf-8").splitlines()
            if line.strip() and not line.startswith("#")
        )
    recognizer = EntityRecognizer(gazetteers=gazetteers, noun_lexicon=lexicon)
    if config.synonyms_path:
        table = SynonymTable.parse(Path(config.synonyms_path).read_text("utf-8"))
    else:
        table = default_synonym_table()
    return recognizer, SynonymMatcher(table=table)
