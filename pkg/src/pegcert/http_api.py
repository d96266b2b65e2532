"""HTTP facade: boards, problems, pipeline runs with polling and
cancellation, interactive move application, and reach diagrams."""

from __future__ import annotations

import itertools
import threading

from fastapi import Body, FastAPI, HTTPException

from . import engine, reach
from .board import (Board, BoardError, IllegalMoveError, Move, Position,
                    apply_move, legal_moves, parse_board, parse_position,
                    render_grid, standard_board)
from .problem import Problem
from .verdict import cell_key, parse_cell_key


class _Run:
    def __init__(self):
        self.state = "running"
        self.progress = {"stage": None, "nodes": 0}
        self.report: engine.Report | None = None
        self.cancelled = False


class _ProblemEntry:
    def __init__(self, pid: str, board_id: str, problem: Problem):
        self.id = pid
        self.board_id = board_id
        self.problem = problem
        self.working = problem.start
        self.run: _Run | None = None


class Store:
    """In-memory id-keyed stores; no persistence."""

    def __init__(self):
        self._lock = threading.Lock()
        self._counter = itertools.count(1)
        self.boards: dict[str, Board] = {}
        self.problems: dict[str, _ProblemEntry] = {}

    def new_id(self, prefix: str) -> str:
        with self._lock:
            return f"{prefix}{next(self._counter)}"


def _board_json(board_id: str, board: Board) -> dict:
    return {"id": board_id, "cells": len(board), "moves": len(board.moves),
            "grid": render_grid(board)}


def _parse_move(board: Board, data: dict) -> Move:
    try:
        m = Move(parse_cell_key(data["p"]), parse_cell_key(data["q"]),
                 parse_cell_key(data["r"]))
    except (KeyError, ValueError, TypeError):
        raise HTTPException(400, "malformed move")
    if m not in board.move_index:
        raise HTTPException(409, "not a move of this board")
    return m


def _move_json(m: Move) -> dict:
    return {"p": cell_key(m.p), "q": cell_key(m.q), "r": cell_key(m.r)}


def create_app(store: Store | None = None) -> FastAPI:
    app = FastAPI(title="pegcert")
    store = store or Store()
    app.state.store = store

    def get_board(board_id: str) -> Board:
        board = store.boards.get(board_id)
        if board is None:
            raise HTTPException(404, "unknown board")
        return board

    def get_problem(pid: str) -> _ProblemEntry:
        entry = store.problems.get(pid)
        if entry is None:
            raise HTTPException(404, "unknown problem")
        return entry

    @app.post("/boards", status_code=201)
    def post_board(payload: dict = Body(...)):
        if "name" in payload:
            try:
                board = standard_board(payload["name"])
            except BoardError as ex:
                raise HTTPException(400, str(ex))
        else:
            try:
                board = parse_board(payload.get("grid", ""))
            except BoardError as ex:
                raise HTTPException(400, str(ex))
        board_id = store.new_id("b")
        store.boards[board_id] = board
        return _board_json(board_id, board)

    @app.get("/boards/{board_id}")
    def get_board_route(board_id: str):
        return _board_json(board_id, get_board(board_id))

    @app.post("/problems", status_code=201)
    def post_problem(payload: dict = Body(...)):
        start_grid = payload.get("start")
        end_grid = payload.get("end")
        if not isinstance(start_grid, str) or not isinstance(end_grid, str):
            raise HTTPException(400, "start and end grids required")
        try:
            board = parse_board(start_grid)
            start = parse_position(board, start_grid)
        except BoardError as ex:
            raise HTTPException(400, str(ex))
        try:
            end = parse_position(board, end_grid)
        except BoardError as ex:
            # The end grid parsed but does not fit the start grid's shape.
            raise HTTPException(422, str(ex))
        board_id = store.new_id("b")
        store.boards[board_id] = board
        pid = store.new_id("p")
        entry = _ProblemEntry(pid, board_id, Problem(board, start, end))
        store.problems[pid] = entry
        return {"id": pid, "board_id": board_id,
                "start": render_grid(board, pegs=start),
                "end": render_grid(board, pegs=end)}

    @app.get("/problems/{pid}")
    def get_problem_route(pid: str):
        entry = get_problem(pid)
        board = entry.problem.board
        return {"id": pid, "board_id": entry.board_id,
                "start": render_grid(board, pegs=entry.problem.start),
                "end": render_grid(board, pegs=entry.problem.end),
                "working": render_grid(board, pegs=entry.working)}

    @app.post("/problems/{pid}/run", status_code=202)
    def post_run(pid: str, payload: dict = Body(default={})):
        entry = get_problem(pid)
        if entry.run is not None and entry.run.state == "running":
            raise HTTPException(409, "run already in progress")
        config = engine.PipelineConfig.from_json(payload or {})
        run = _Run()
        entry.run = run

        def progress(stage: str, nodes: int) -> None:
            run.progress = {"stage": stage, "nodes": nodes}

        def work() -> None:
            report = engine.run_pipeline(entry.problem, config,
                                         cancel=lambda: run.cancelled,
                                         progress=progress)
            run.report = report
            run.state = "cancelled" if run.cancelled else "done"

        threading.Thread(target=work, daemon=True).start()
        return {"id": pid, "state": run.state}

    @app.post("/problems/{pid}/cancel")
    def post_cancel(pid: str):
        entry = get_problem(pid)
        if entry.run is None:
            raise HTTPException(404, "no run to cancel")
        entry.run.cancelled = True
        return {"id": pid, "state": entry.run.state}

    @app.get("/problems/{pid}/report")
    def get_report(pid: str):
        entry = get_problem(pid)
        run = entry.run
        if run is None:
            return {"id": pid, "state": "idle", "report": None}
        return {"id": pid, "state": run.state, "progress": run.progress,
                "report": run.report.to_json() if run.report else None}

    @app.post("/problems/{pid}/moves")
    def post_move(pid: str, payload: dict = Body(...)):
        entry = get_problem(pid)
        board = entry.problem.board
        if payload.get("reset"):
            entry.working = entry.problem.start
        else:
            move = _parse_move(board, payload.get("move", {}))
            try:
                entry.working = apply_move(entry.working, move)
            except IllegalMoveError as ex:
                raise HTTPException(409, str(ex))
        live = engine.run_pipeline(
            Problem(board, entry.working, entry.problem.end),
            engine.PipelineConfig(node_budget=10_000))
        return {"id": pid,
                "working": render_grid(board, pegs=entry.working),
                "legal_moves": [_move_json(m)
                                for m in legal_moves(board, entry.working)],
                "live": live.to_json()}

    @app.get("/boards/{board_id}/reach")
    def get_reach(board_id: str, mode: str = "height",
                  problem: str | None = None):
        board = get_board(board_id)
        if mode not in ("height", "depth"):
            raise HTTPException(400, "mode must be height or depth")
        if problem is not None:
            entry = get_problem(problem)
            if entry.problem.board != board:
                raise HTTPException(409, "problem is on a different board")
            base = entry.problem.start
        else:
            base = board.full()
        frontier = reach.bounded_search(board, base, mode=mode)
        values = {}
        for a in board.cells:
            if mode == "depth":
                values[a] = reach.depth_lower_bound(board, a, base, frontier)
            else:
                values[a] = reach.height_lower_bound(board, a, base, frontier)
        return {"id": board_id, "mode": mode,
                "grid": reach.diagram_grid(board, values),
                "text": reach.render_diagram(board, values)}

    return app
