"""Command-line front-end.

Subcommands: combine, check, risk, simulate, portfolio, laws, serve.  By
default every subcommand runs the calculation in process through the same
handler functions the HTTP service uses; --server URL switches to posting
the identical request to a running service instead, with identical output.

Exit codes: 0 success (and any positive verdict), 1 negative verdict
(candidate rejected, set incoherent, risk unacceptable, a law failed),
2 usage or input error, 3 solver failure.

Numbers print with 6 significant digits by default; --precision full
prints shortest-round-trip values, and --precision N any other width.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import fileio
from .config import DEFAULT_TOLERANCES, CliConfig, load_config
from .errors import GambleCalcError, ParseError, SolverFailure
from .service import handlers, schemas
from .svgplot import render_growth_svg

__all__ = ["main", "build_parser"]

_EXIT_OK = 0
_EXIT_VERDICT = 1
_EXIT_USAGE = 2
_EXIT_SOLVER = 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gamble-calc",
        description=(
            "Evaluate gambles under nonlinear utility: combine them, check "
            "acceptance sets for coherence, score risk, simulate ensemble "
            "versus time-average growth, and audit operator laws."
        ),
    )
    parser.add_argument(
        "--config",
        metavar="PATH",
        help="JSON config file (also read from $GAMBLE_CALC_CONFIG); "
        "flags override config values, config overrides defaults",
    )
    parser.add_argument(
        "--server",
        metavar="URL",
        help="send the request to a running gamble-calc service instead of "
        "computing in process",
    )
    parser.add_argument(
        "--precision",
        default="6",
        metavar="N|full",
        help="significant digits for printed numbers (default 6), or "
        "'full' for shortest round-trip values",
    )
    sub = parser.add_subparsers(dest="command", metavar="command")

    p_combine = sub.add_parser(
        "combine", help="fold gambles with the generalized combination operator"
    )
    p_combine.add_argument("--utility", metavar="SPEC")
    p_combine.add_argument("files", nargs="+", metavar="GAMBLE")
    p_combine.add_argument("--out", metavar="PATH", help="write the JSON report here")

    p_check = sub.add_parser(
        "check", help="coherence of an acceptance set, optionally with a candidate"
    )
    p_check.add_argument("--utility", metavar="SPEC")
    p_check.add_argument("--set", required=True, metavar="SET", dest="set_path")
    p_check.add_argument("--gamble", metavar="GAMBLE")
    p_check.add_argument("--epsilon", type=float, metavar="E")
    p_check.add_argument("--out", metavar="PATH", help="write the JSON report here")

    p_risk = sub.add_parser("risk", help="risk premium of one or more gambles")
    p_risk.add_argument("--utility", metavar="SPEC")
    p_risk.add_argument("--measure", metavar="MEASURE")
    p_risk.add_argument(
        "--set",
        metavar="SET",
        dest="set_path",
        help="derive the evaluation measure from this acceptance set when "
        "no --measure is given",
    )
    p_risk.add_argument("--id", dest="gamble_id", metavar="NAME")
    p_risk.add_argument(
        "--format", choices=("json", "csv"), dest="out_format", help="report format"
    )
    p_risk.add_argument(
        "files",
        nargs="+",
        metavar="GAMBLE",
        help="gamble files; a batch .csv (header id,<state>,...) scores one "
        "gamble per row",
    )
    p_risk.add_argument("--out", metavar="PATH", help="write the report here")

    p_sim = sub.add_parser("simulate", help="Monte Carlo ensemble of repeated gambles")
    p_sim.add_argument("--gamble", required=True, metavar="GAMBLE")
    p_sim.add_argument("--measure", required=True, metavar="MEASURE")
    p_sim.add_argument("--periods", type=int, default=30)
    p_sim.add_argument("--trajectories", type=int, default=1000)
    p_sim.add_argument("--seed", type=int, default=None)
    p_sim.add_argument("--mode", choices=("multiplicative", "additive"), default="multiplicative")
    p_sim.add_argument("--initial-wealth", type=float, default=1.0)
    p_sim.add_argument(
        "--out", metavar="CSV", help="write all trajectories here (trajectory,period,wealth)"
    )
    p_sim.add_argument("--svg", metavar="SVG", help="write the two-curve growth plot here")

    p_port = sub.add_parser("portfolio", help="compare historical return series")
    p_port.add_argument("returns", metavar="RETURNS_CSV")
    p_port.add_argument("--utility", metavar="SPEC")
    p_port.add_argument("--out", metavar="PATH", help="write the JSON report here")

    p_laws = sub.add_parser("laws", help="randomized audit of the operator laws")
    p_laws.add_argument("--utility", metavar="SPEC")
    p_laws.add_argument("--trials", type=int, default=10_000)
    p_laws.add_argument("--seed", type=int, default=None)
    p_laws.add_argument("--states", type=int, default=3)
    p_laws.add_argument("--threshold", type=float, default=None)
    p_laws.add_argument("--out", metavar="PATH", help="write the JSON report here")

    p_serve = sub.add_parser("serve", help="run the HTTP service")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8000)

    return parser


def _round_floats(obj, digits: int):
    if isinstance(obj, float):
        return float(f"{obj:.{digits}g}")
    if isinstance(obj, dict):
        return {k: _round_floats(v, digits) for k, v in obj.items()}
    if isinstance(obj, list):
        return [_round_floats(v, digits) for v in obj]
    return obj


class _Cli:
    def __init__(self, args: argparse.Namespace):
        self.args = args
        self.cfg: CliConfig = load_config(args.config)
        precision = args.precision
        if precision != "full":
            try:
                digits = int(precision)
            except ValueError:
                raise ParseError(
                    f"--precision expects an integer or 'full', got {precision!r}"
                ) from None
            if not 1 <= digits <= 17:
                raise ParseError("--precision must lie in 1..17")
            self.digits = digits
        else:
            self.digits = None

    # -- plumbing ---------------------------------------------------------

    def _utility(self, flag_value: str | None, fallback: str) -> str:
        return flag_value or self.cfg.utility or fallback

    def _seed(self, flag_value: int | None) -> int:
        if flag_value is not None:
            return flag_value
        if self.cfg.seed is not None:
            return self.cfg.seed
        return 0

    def _call(self, endpoint: str, request, runner) -> dict:
        """Run a request locally, or post it to --server; same payload out."""
        if not self.args.server:
            return runner(request).model_dump(mode="json")
        import httpx

        url = self.args.server.rstrip("/") + "/v1/" + endpoint
        try:
            reply = httpx.post(url, json=request.model_dump(mode="json", by_alias=True), timeout=120.0)
        except httpx.HTTPError as exc:
            raise ParseError(f"cannot reach {url}: {exc}") from None
        if reply.status_code >= 400:
            try:
                detail = reply.json().get("error", {})
            except ValueError:
                detail = {}
            kind = detail.get("type", f"HTTP {reply.status_code}")
            message = detail.get("message", reply.text[:500])
            if kind == "SolverFailure":
                raise SolverFailure(f"server: {message}")
            raise ParseError(f"server rejected the request ({kind}): {message}")
        return reply.json()

    def _emit(self, payload: dict, out_path: str | None) -> None:
        if self.digits is not None:
            payload = _round_floats(payload, self.digits)
        text = json.dumps(payload, indent=2) + "\n"
        if out_path:
            Path(out_path).write_text(text)
        else:
            sys.stdout.write(text)

    def _load_gamble_model(self, path: str) -> schemas.GambleModel:
        return schemas.GambleModel.from_core(fileio.load_gamble(path))

    def _load_measure_model(self, path: str | None) -> schemas.MeasureModel | None:
        if path is None:
            return None
        return schemas.MeasureModel.from_core(fileio.load_measure(path))

    def _load_set_model(self, path: str | None) -> schemas.AcceptanceSetModel | None:
        if path is None:
            return None
        data = fileio._parse_json(fileio._read(path, "acceptance set"), "acceptance set")
        try:
            return schemas.AcceptanceSetModel.model_validate(data)
        except ValueError as exc:
            raise ParseError(f"acceptance set {path}: {exc}") from None

    # -- subcommands ------------------------------------------------------

    def combine(self) -> int:
        request = schemas.CombineRequest(
            utility=self._utility(self.args.utility, "log1p"),
            gambles=[self._load_gamble_model(p) for p in self.args.files],
        )
        payload = self._call("combine", request, handlers.run_combine)
        self._emit(payload, self.args.out)
        return _EXIT_OK

    def check(self) -> int:
        epsilon = self.args.epsilon
        if epsilon is None:
            epsilon = self.cfg.tolerance("partial_loss")
        request = schemas.CheckRequest(
            utility=self._utility(self.args.utility, "identity"),
            set=self._load_set_model(self.args.set_path),
            gamble=(
                self._load_gamble_model(self.args.gamble) if self.args.gamble else None
            ),
            epsilon=epsilon,
        )
        payload = self._call("check", request, handlers.run_check)
        self._emit(payload, self.args.out)
        if payload.get("membership") is not None:
            return _EXIT_OK if payload["membership"]["accepted"] else _EXIT_VERDICT
        return _EXIT_OK if payload["coherent"] else _EXIT_VERDICT

    def risk(self) -> int:
        utility = self._utility(self.args.utility, "log1p")
        measure = self._load_measure_model(self.args.measure)
        set_model = self._load_set_model(self.args.set_path)
        files = self.args.files
        batch_csv = len(files) == 1 and files[0].lower().endswith(".csv")
        if len(files) == 1 and not batch_csv:
            request = schemas.RiskRequest(
                utility=utility,
                gamble=self._load_gamble_model(files[0]),
                gamble_id=self.args.gamble_id or Path(files[0]).stem,
                measure=measure,
                set=set_model,
            )
            payload = self._call("risk", request, handlers.run_risk)
            self._emit_risk(payload, [payload])
            return _EXIT_OK if payload["acceptable"] else _EXIT_VERDICT
        if batch_csv:
            named = fileio.gambles_from_batch_csv(Path(files[0]).read_text())
        else:
            named = [
                (Path(p).stem, fileio.load_gamble(p)) for p in files
            ]
        request = schemas.RiskBatchRequest(
            utility=utility,
            gambles=[schemas.GambleModel.from_core(g) for _, g in named],
            gamble_ids=[name for name, _ in named],
            measure=measure,
            set=set_model,
        )
        payload = self._call("risk/batch", request, handlers.run_risk_batch)
        self._emit_risk(payload, payload["reports"])
        return _EXIT_OK if payload["all_acceptable"] else _EXIT_VERDICT

    def _emit_risk(self, payload: dict, reports: list[dict]) -> None:
        out_format = self.args.out_format or self.cfg.output or "json"
        if out_format == "json":
            self._emit(payload, self.args.out)
            return
        lines = ["id,utility,rho,acceptable,arithmetic_expectation,expected_log_return"]
        for r in reports:
            log_part = "" if r["expected_log_return"] is None else self._num(r["expected_log_return"])
            lines.append(
                f'{r["gamble_id"]},{r["utility"]},{self._num(r["rho"])},'
                f'{str(r["acceptable"]).lower()},{self._num(r["arithmetic_expectation"])},'
                f"{log_part}"
            )
        text = "\n".join(lines) + "\n"
        if self.args.out:
            Path(self.args.out).write_text(text)
        else:
            sys.stdout.write(text)

    def _num(self, v: float) -> str:
        if self.digits is None:
            return repr(float(v))
        return f"{float(v):.{self.digits}g}"

    def simulate(self) -> int:
        want_paths = bool(self.args.out or self.args.svg)
        request = schemas.SimulateRequest(
            gamble=self._load_gamble_model(self.args.gamble),
            measure=schemas.MeasureModel.from_core(fileio.load_measure(self.args.measure)),
            periods=self.args.periods,
            trajectories=self.args.trajectories,
            initial_wealth=self.args.initial_wealth,
            seed=self._seed(self.args.seed),
            mode=self.args.mode,
            include_paths=want_paths,
        )
        payload = self._call("simulate", request, handlers.run_simulate)
        paths = payload.pop("wealth_paths", None)
        if self.args.out:
            Path(self.args.out).write_text(fileio.paths_to_csv(np.asarray(paths)))
        if self.args.svg:
            steps = np.arange(payload["periods"] + 1)
            svg = render_growth_svg(
                steps,
                np.asarray(payload["ensemble_mean_path"]),
                np.asarray(payload["median_path"]),
            )
            Path(self.args.svg).write_text(svg)
        self._emit(payload, None)
        return _EXIT_OK

    def portfolio(self) -> int:
        try:
            text = Path(self.args.returns).read_text()
        except OSError as exc:
            raise ParseError(f"cannot read {self.args.returns}: {exc}") from None
        from .portfolio import parse_returns_csv

        request = schemas.PortfolioRequest(
            utility=self._utility(self.args.utility, "log1p"),
            returns=parse_returns_csv(text),
        )
        payload = self._call("portfolio", request, handlers.run_portfolio)
        self._emit(payload, self.args.out)
        return _EXIT_OK

    def laws(self) -> int:
        threshold = self.args.threshold
        if threshold is None:
            threshold = self.cfg.tolerance("law_residual")
        request = schemas.LawsRequest(
            utility=self._utility(self.args.utility, "log1p"),
            trials=self.args.trials,
            seed=self._seed(self.args.seed),
            states=self.args.states,
            threshold=threshold,
        )
        payload = self._call("laws", request, handlers.run_laws)
        self._emit(payload, self.args.out)
        return _EXIT_OK if payload["all_passed"] else _EXIT_VERDICT

    def serve(self) -> int:
        import uvicorn

        uvicorn.run(
            "gamble_calc.service.app:app", host=self.args.host, port=self.args.port
        )
        return _EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if not args.command:
        parser.print_help(sys.stderr)
        return _EXIT_USAGE
    try:
        cli = _Cli(args)
        return getattr(cli, args.command)()
    except SolverFailure as exc:
        print(f"gamble-calc: solver failure: {exc}", file=sys.stderr)
        return _EXIT_SOLVER
    except (GambleCalcError, ValueError, OSError) as exc:
        print(f"gamble-calc: {exc}", file=sys.stderr)
        return _EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
