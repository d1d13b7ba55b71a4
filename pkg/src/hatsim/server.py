"""Stateless HTTP JSON API over the simulation library."""

from __future__ import annotations

import os
import time
from typing import Any

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .core import ValidationError, profile_from_dict, validate_profile
from .engine import simulate
from .params import load_params
from .sweeps import SweepSpec, preset_profiles, run_sweep
from .core import profile_to_dict

MAX_TRIALS = 10_000_000

#: Wall-clock budget per request in seconds (0 disables the budget).
REQUEST_BUDGET_ENV = "HATSIM_REQUEST_BUDGET_S"


class ApiError(Exception):
    def __init__(self, status: int, code: str, message: str,
                 field_path: str | None = None):
        super().__init__(message)
        self.status = status
        self.code = code
        self.message = message
        self.field_path = field_path

    def body(self) -> dict[str, Any]:
        out = {"code": self.code, "message": self.message}
        if self.field_path:
            out["field_path"] = self.field_path
        return out


def _budget_s() -> float:
    try:
        return float(os.environ.get(REQUEST_BUDGET_ENV, "60"))
    except ValueError:
        return 60.0


def _parse_common(doc: dict) -> tuple:
    if not isinstance(doc, dict):
        raise ApiError(400, "bad_request", "request body must be a JSON object")
    preset = doc.get("params_preset", "kb-probabilistic")
    overrides = doc.get("overrides", {})
    if not isinstance(overrides, dict):
        raise ApiError(400, "bad_request", "overrides must be an object", "overrides")
    try:
        params = load_params(preset, overrides)
    except ValidationError as e:
        raise ApiError(400, "bad_params", str(e), e.field_path)
    seed = doc.get("seed", 0)
    if isinstance(seed, bool) or not isinstance(seed, int):
        raise ApiError(400, "bad_request", "seed must be an integer", "seed")
    return params, seed


def _parse_profile(doc: dict, key: str):
    if key not in doc:
        raise ApiError(400, "missing_field", f"missing field {key!r}", key)
    try:
        profile = profile_from_dict(doc[key], path=key)
    except ValidationError as e:
        raise ApiError(400, "bad_profile", str(e), e.field_path)
    violations = validate_profile(profile)
    if violations:
        v = violations[0]
        raise ApiError(422, "invalid_profile", v.message, f"{key}.{v.field}")
    return profile


def create_app() -> FastAPI:
    app = FastAPI(title="hatsim", version="0.1.0")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=[os.environ.get("HATSIM_CORS_ORIGIN", "*")],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.exception_handler(ApiError)
    async def api_error_handler(_req: Request, exc: ApiError):
        headers = {"Retry-After": "5"} if exc.status == 503 else None
        return JSONResponse(status_code=exc.status, content=exc.body(), headers=headers)

    @app.get("/healthz")
    async def healthz():
        return {"status": "ok"}

    @app.get("/api/v1/profiles")
    async def profiles():
        return {name: profile_to_dict(p) for name, p in preset_profiles().items()}

    @app.post("/api/v1/predict")
    async def predict(request: Request):
        doc = await _json_body(request)
        params, seed = _parse_common(doc)
        home = _parse_profile(doc, "home")
        away = _parse_profile(doc, "away")
        trials = doc.get("trials", 100_000)
        if isinstance(trials, bool) or not isinstance(trials, int) or not 1 <= trials <= MAX_TRIALS:
            raise ApiError(400, "bad_request",
                           f"trials must be an integer in 1..{MAX_TRIALS}", "trials")
        budget = _budget_s()
        deadline = time.monotonic() + budget if budget > 0 else None
        try:
            report = simulate(home, away, params, trials=trials, seed=seed,
                              deadline=deadline)
        except TimeoutError:
            raise ApiError(503, "budget_exceeded",
                           "simulation exceeded the request budget; "
                           "retry with fewer trials")
        return report.to_json_dict()

    @app.post("/api/v1/sweep")
    async def sweep(request: Request):
        doc = await _json_body(request)
        params, seed = _parse_common(doc)
        base_home = _parse_profile(doc, "base_home")
        base_away = _parse_profile(doc, "base_away")
        points = doc.get("points")
        if not isinstance(points, list) or not points:
            raise ApiError(400, "bad_request", "points must be a non-empty list", "points")
        spec = SweepSpec(
            base_home=base_home, base_away=base_away,
            vary=str(doc.get("vary", "")), points=points,
            trials_per_point=doc.get("trials_per_point", 20_000),
            seed=seed, delta=bool(doc.get("delta", False)),
        )
        try:
            spec.validate()
            result = run_sweep(spec, params)
        except ValidationError as e:
            raise ApiError(400, "bad_sweep", str(e), e.field_path)
        return result.to_json_dict()

    return app


async def _json_body(request: Request) -> dict:
    try:
        return await request.json()
    except Exception:
        raise ApiError(400, "bad_request", "request body is not valid JSON")


app = create_app()
