"""JSON-over-HTTP service: exact values, live engine games, advisor sessions.

Tables for both modes are solved once at startup and shared read-only.
Game sessions hold the full GameState server-side; the engine's secret is
never serialized until the game is over.  Advisor sessions track a human
playing a physical game and trust the client's reported counts.
"""

from __future__ import annotations

import dataclasses
import os
import random
import threading
import time
import uuid
import warnings
from typing import Optional

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel

from .core import (
    GuessWhoError,
    InvalidQuestionError,
    RefereeIntegrityError,
    Guess,
    decision_sort_key,
    encode_decision,
    format_rational,
    validate_mode,
)
from .engine import (
    ANSWERS,
    DEFAULT_ROSTER,
    GameState,
    Question,
    answer_question,
    apply_answer,
    guess,
    is_irrational_guess,
    new_game,
    realize_decision,
    validate_question,
)
from .strategies import table_strategy
from .tables import SolveTable, load_or_solve

DEFAULT_N_MAX = 24
DEFAULT_TTL_SECONDS = 3600.0
ADDR_ENV = "GW_ADDR"
UI_ORIGIN_ENV = "GW_UI_ORIGIN"


class SessionRequest(BaseModel):
    variant: str = "slider"
    mode: str = "bi"
    engine_seat: int = 1
    advisor: bool = False
    seed: Optional[int] = None


class QuestionBody(BaseModel):
    x: list = []
    y: list = []


class AnswerBody(BaseModel):
    x: list = []
    y: list = []
    value: str


class FlipBody(BaseModel):
    names: list = []
    opponent_count: Optional[int] = None


class MoveRequest(BaseModel):
    question: Optional[QuestionBody] = None
    guess: Optional[str] = None
    answer: Optional[AnswerBody] = None
    flip: Optional[FlipBody] = None


@dataclasses.dataclass
class GameSession:
    id: str
    mode: str
    variant: str
    engine_seat: int
    state: GameState
    rng: random.Random
    events: list = dataclasses.field(default_factory=list)
    touched: float = dataclasses.field(default_factory=time.monotonic)

    @property
    def human_seat(self) -> int:
        return 1 - self.engine_seat


@dataclasses.dataclass
class AdvisorSession:
    id: str
    mode: str
    variant: str
    up: tuple
    opponent_count: int
    touched: float = dataclasses.field(default_factory=time.monotonic)


class SessionStore:
    """In-memory sessions with TTL purge; mutations serialized per store."""

    def __init__(self, ttl: float = DEFAULT_TTL_SECONDS):
        self.ttl = ttl
        self._sessions: dict = {}
        self._lock = threading.Lock()

    def put(self, session) -> None:
        with self._lock:
            self._purge()
            self._sessions[session.id] = session

    def get(self, session_id: str):
        with self._lock:
            self._purge()
            session = self._sessions.get(session_id)
            if session is None:
                raise HTTPException(status_code=404, detail="unknown or expired session")
            session.touched = time.monotonic()
            return session

    def _purge(self) -> None:
        now = time.monotonic()
        stale = [
            sid for sid, s in self._sessions.items() if now - s.touched > self.ttl
        ]
        for sid in stale:
            del self._sessions[sid]


def create_app(n_max: int = DEFAULT_N_MAX, session_ttl: float = DEFAULT_TTL_SECONDS) -> FastAPI:
    if n_max < DEFAULT_N_MAX:
        raise ValueError(f"session play needs n_max >= {DEFAULT_N_MAX}, got {n_max}")
    app = FastAPI(title="guesswho", version="0.1.0")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=[os.environ.get(UI_ORIGIN_ENV, "*")],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    tables = {
        "bi": load_or_solve("bi", n_max),
        "tri": load_or_solve("tri", n_max),
    }
    store = SessionStore(ttl=session_ttl)
    app.state.tables = tables
    app.state.store = store

    @app.get("/v1/value")
    def get_value(mode: str, n: int, m: int) -> dict:
        table = _table_for(tables, mode)
        if not (1 <= n <= table.n_max and 1 <= m <= table.n_max):
            raise HTTPException(
                status_code=400, detail=f"n and m must be in 1..{table.n_max}"
            )
        p = table.value(n, m)
        return {
            "mode": mode,
            "n": n,
            "m": m,
            "p": format_rational(p),
            "p_decimal": _decimal(p),
            "optimal": [encode_decision(d) for d in table.optimal(n, m)],
        }

    @app.post("/v1/session", status_code=201)
    def create_session(body: SessionRequest) -> dict:
        mode = _checked_mode(body.mode)
        if body.variant not in ("slider", "card"):
            raise HTTPException(status_code=422, detail=f"unknown variant {body.variant!r}")
        seed = body.seed if body.seed is not None else random.SystemRandom().getrandbits(48)
        if body.advisor:
            session = AdvisorSession(
                id=uuid.uuid4().hex,
                mode=mode,
                variant=body.variant,
                up=DEFAULT_ROSTER,
                opponent_count=24 if body.variant == "slider" else 23,
            )
            store.put(session)
            return _advisor_payload(session, tables)
        if body.engine_seat not in (0, 1):
            raise HTTPException(status_code=422, detail="engine_seat must be 0 or 1")
        session = GameSession(
            id=uuid.uuid4().hex,
            mode=mode,
            variant=body.variant,
            engine_seat=body.engine_seat,
            state=new_game(body.variant, mode, seed),
            rng=random.Random(f"engine:{seed}"),
        )
        engine_moves = _advance_engine(session, tables)
        store.put(session)
        return _game_payload(session, tables, engine_moves)

    @app.get("/v1/session/{session_id}")
    def get_session(session_id: str) -> dict:
        session = store.get(session_id)
        if isinstance(session, AdvisorSession):
            return _advisor_payload(session, tables)
        return _game_payload(session, tables, [])

    @app.get("/v1/session/{session_id}/transcript")
    def get_transcript(session_id: str) -> dict:
        session = store.get(session_id)
        if isinstance(session, AdvisorSession):
            raise HTTPException(status_code=422, detail="advisor sessions have no transcript")
        return {"id": session.id, "events": session.events}

    @app.post("/v1/session/{session_id}/move")
    def post_move(session_id: str, body: MoveRequest) -> dict:
        session = store.get(session_id)
        fields = [
            name
            for name in ("question", "guess", "answer", "flip")
            if getattr(body, name) is not None
        ]
        if len(fields) != 1:
            raise HTTPException(
                status_code=422, detail="exactly one of question/guess/answer/flip required"
            )
        kind = fields[0]
        try:
            if isinstance(session, AdvisorSession):
                return _advisor_move(session, kind, body, tables)
            return _game_move(session, kind, body, tables)
        except RefereeIntegrityError as exc:
            raise HTTPException(status_code=500, detail=f"referee integrity: {exc}")
        except InvalidQuestionError as exc:
            raise HTTPException(status_code=422, detail=str(exc))

    return app


def _table_for(tables: dict, mode: str) -> SolveTable:
    try:
        validate_mode(mode)
    except ValueError as exc:
        raise HTTPException(status_code=422, detail=str(exc))
    return tables[mode]


def _checked_mode(mode: str) -> str:
    try:
        return validate_mode(mode)
    except ValueError as exc:
        raise HTTPException(status_code=422, detail=str(exc))


def _decimal(p) -> str:
    return f"{float(p):.6f}"


def _game_move(session: GameSession, kind: str, body: MoveRequest, tables: dict) -> dict:
    if kind in ("answer", "flip"):
        raise HTTPException(
            status_code=422, detail="state edits are for advisor sessions; play a question or guess"
        )
    state = session.state
    if not state.ongoing():
        raise HTTPException(status_code=409, detail="game over")
    human = session.human_seat
    if state.turn != human:
        raise HTTPException(status_code=409, detail="not your turn")
    if kind == "question":
        question = Question(x=tuple(body.question.x), y=tuple(body.question.y))
        validate_question(state, human, question)
        answer = answer_question(state.boards[session.engine_seat].secret, question)
        session.state = apply_answer(state, human, question, answer)
        session.events.append(
            _event(len(session.events), human, "question", question, answer, session.state)
        )
    else:
        target = body.guess
        if target not in state.roster:
            raise HTTPException(status_code=422, detail=f"{target!r} is not on the roster")
        irrational = is_irrational_guess(state, human, target)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            session.state = guess(state, human, target)
        correct = session.state.outcome == human
        event = _event(
            len(session.events),
            human,
            "guess",
            Question(x=(target,)),
            "yes" if correct else "no",
            session.state,
        )
        if irrational:
            event["irrational"] = True
        session.events.append(event)
    engine_moves = _advance_engine(session, tables)
    return _game_payload(session, tables, engine_moves)


def _advance_engine(session: GameSession, tables: dict) -> list:
    """Let the engine play until it is the human's turn or the game ends."""
    strategy = table_strategy(tables[session.mode])
    engine = session.engine_seat
    moves = []
    while session.state.ongoing() and session.state.turn == engine:
        state = session.state
        board = state.boards[engine]
        n, m = board.count(), state.boards[1 - engine].count()
        decision = strategy(session.mode, n, m)
        if isinstance(decision, Guess):
            candidates = board.remaining
            target = candidates[0] if n == 1 else session.rng.choice(candidates)
            session.state = guess(state, engine, target)
            correct = session.state.outcome == engine
            event = _event(
                len(session.events),
                engine,
                "guess",
                Question(x=(target,)),
                "yes" if correct else "no",
                session.state,
            )
        else:
            question = realize_decision(state, decision)
            answer = answer_question(state.boards[1 - engine].secret, question)
            session.state = apply_answer(state, engine, question, answer)
            event = _event(
                len(session.events), engine, "question", question, answer, session.state
            )
        session.events.append(event)
        moves.append(event)
    return moves


def _event(
    turn: int, player: int, action: str, question: Question, answer: str, state: GameState
) -> dict:
    return {
        "turn": turn,
        "player": player,
        "action": action,
        "x": list(question.x),
        "y": list(question.y),
        "answer": answer,
        "counts_after": list(state.counts()),
    }


def _win_chance(session: GameSession, tables: dict):
    state = session.state
    human = session.human_seat
    if state.outcome is not None:
        return {"p": "1" if state.outcome == human else "0",
                "p_decimal": "1.000000" if state.outcome == human else "0.000000"}
    table = tables[session.mode]
    counts = state.counts()
    n_mover = counts[state.turn]
    m_other = counts[1 - state.turn]
    p_mover = table.value(n_mover, m_other)
    p_human = p_mover if state.turn == human else 1 - p_mover
    return {"p": format_rational(p_human), "p_decimal": _decimal(p_human)}


def _game_payload(session: GameSession, tables: dict, engine_moves: list) -> dict:
    state = session.state
    human = session.human_seat
    payload = {
        "id": session.id,
        "kind": "game",
        "variant": session.variant,
        "mode": session.mode,
        "turn": state.turn,
        "outcome": state.outcome,
        "human_seat": human,
        "engine_seat": session.engine_seat,
        "counts": list(state.counts()),
        "your_secret": state.boards[human].secret,
        "your_board": list(state.boards[human].remaining),
        "engine_count": state.boards[session.engine_seat].count(),
        "win_chance": _win_chance(session, tables),
        "engine_moves": engine_moves,
        "roster": list(state.roster),
    }
    if state.outcome is not None:
        payload["engine_secret"] = state.boards[session.engine_seat].secret
        payload["winner"] = "you" if state.outcome == human else "engine"
    return payload


def _advisor_move(
    session: AdvisorSession, kind: str, body: MoveRequest, tables: dict
) -> dict:
    if kind in ("question", "guess"):
        raise HTTPException(
            status_code=422,
            detail="advisor sessions accept state edits (flip, answer) only",
        )
    if kind == "flip":
        names = tuple(body.flip.names)
        unknown = [name for name in names if name not in DEFAULT_ROSTER]
        if unknown:
            raise HTTPException(status_code=422, detail=f"not on the roster: {unknown}")
        up = set(session.up)
        for name in names:
            if name in up:
                up.remove(name)
            else:
                up.add(name)
        if not up:
            raise HTTPException(status_code=422, detail="cannot flip every face down")
        if body.flip.opponent_count is not None:
            count = body.flip.opponent_count
            if not (1 <= count <= 24):
                raise HTTPException(status_code=422, detail="opponent_count must be in 1..24")
            session.opponent_count = count
        session.up = tuple(name for name in DEFAULT_ROSTER if name in up)
    else:
        answer = body.answer
        if answer.value not in ANSWERS:
            raise HTTPException(status_code=422, detail=f"unknown answer {answer.value!r}")
        x, y = tuple(answer.x), tuple(answer.y)
        if answer.value == "explode" and not y:
            raise HTTPException(status_code=422, detail="explode requires a nonempty y")
        up = set(session.up)
        if not set(x) <= up or not set(y) <= up:
            raise HTTPException(status_code=422, detail="answer names flipped-down faces")
        if set(x) & set(y):
            raise HTTPException(status_code=422, detail="x and y overlap")
        if answer.value == "yes":
            kept = set(x)
        elif answer.value == "explode":
            kept = set(y)
        else:
            kept = up - set(x) - set(y)
        if not kept:
            raise HTTPException(status_code=422, detail="that answer leaves no suspects")
        session.up = tuple(name for name in DEFAULT_ROSTER if name in kept)
    return _advisor_payload(session, tables)


def _advisor_payload(session: AdvisorSession, tables: dict) -> dict:
    table = tables[session.mode]
    n, m = len(session.up), session.opponent_count
    p = table.value(n, m)
    optimal = table.optimal(n, m)
    first = min(optimal, key=decision_sort_key)
    if isinstance(first, Guess):
        suggestion = {"guess": session.up[0]}
    else:
        parts = first.parts(n)
        if len(parts) == 2:
            suggestion = {"x": list(session.up[: parts[0]]), "y": []}
        else:
            i, j, _ = parts
            suggestion = {
                "x": list(session.up[:i]),
                "y": list(session.up[i : i + j]),
            }
    return {
        "id": session.id,
        "kind": "advisor",
        "variant": session.variant,
        "mode": session.mode,
        "up": list(session.up),
        "counts": [n, m],
        "recommendation": {
            "p": format_rational(p),
            "p_decimal": _decimal(p),
            "optimal": [encode_decision(d) for d in optimal],
            "suggestion": suggestion,
        },
    }


def run(addr: Optional[str] = None, n_max: int = DEFAULT_N_MAX) -> None:
    """Serve the app with uvicorn; addr host:port, default from GW_ADDR."""
    import uvicorn

    addr = addr or os.environ.get(ADDR_ENV) or "127.0.0.1:8000"
    host, _, port = addr.rpartition(":")
    host = host or "127.0.0.1"
    uvicorn.run(create_app(n_max=n_max), host=host, port=int(port))
