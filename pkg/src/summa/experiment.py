"""Config-driven batch runner: bundles, checks, oracles, deterministic reports.

A run is a pure function of its JSON config.  Reports carry no timestamps,
no hostnames, and render numbers through one formatter, so identical
configs produce byte-identical report files; that property is load-bearing
(tests diff report bytes) and worth protecting when editing here.

Artifacts per run directory:
  report.json            full machine-readable result, sorted keys
  trace_*.csv            checkpointed partial-sum traces (4-column format)
  transforms.csv         per-index transform dump (transform_dump mode)
"""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .cesaro import compute_transforms
from .checker import (FamilyBundle, GrowthVerdict, Tolerances,
                      check_main_theorem, check_theorem_a,
                      conclusion_diagnostic, dyadic_checkpoints)
from .functionals import WeightKind, WeightSpec
from .oracle import run_all_suites
from .rendering import render_number
from .sequences import (CesaroParams, RealSequence, SequenceSpec,
                        forward_difference, materialize)

__all__ = [
    "ConfigError",
    "ExperimentConfig",
    "RunReport",
    "BUILTIN_FAMILY_NAMES",
    "builtin_family",
    "default_majorant",
    "family_catalog_lines",
    "load_config",
    "run",
]

MODES = ("check_main", "check_theorem_a", "oracle", "transform_dump")
BUILTIN_FAMILY_NAMES = ("F1", "F2", "F3")

_CONFIG_FIELDS = {"mode", "n", "family", "overrides", "bundle", "params",
                  "checkpoints", "tolerances", "seed", "trials", "sequence",
                  "out"}
_OVERRIDE_KEYS = {"alpha", "k", "beta", "epsilon"}


class ConfigError(ValueError):
    """Schema violation with a pointer to the offending field."""

    def __init__(self, pointer: str, message: str):
        self.pointer = pointer
        super().__init__(f"{pointer}: {message}")


def _forbid(obj: dict, mode: str, *keys: str) -> None:
    for key in keys:
        if key in obj:
            raise ConfigError(key, f"not allowed in mode {mode!r}")


def _dyadic_within(checkpoints, n: int) -> tuple[int, ...]:
    if (not isinstance(checkpoints, (list, tuple))
            or any(not isinstance(c, int) or isinstance(c, bool)
                   for c in checkpoints)):
        raise ConfigError("checkpoints", "must be a list of integers")
    cps = tuple(int(c) for c in checkpoints)
    if len(cps) < 4:
        raise ConfigError("checkpoints", "at least 4 checkpoints required")
    if cps[0] < 1 or cps[-1] > n:
        raise ConfigError("checkpoints", f"must lie within 1..{n}")
    for a, b in zip(cps, cps[1:]):
        if a != b // 2:
            raise ConfigError("checkpoints",
                              f"not dyadic: {a} is not {b} // 2")
    return cps


@dataclass(frozen=True)
class ExperimentConfig:
    """Parsed, validated run description; round-trips through JSON."""

    mode: str
    n: int | None = None
    family: str | None = None
    overrides: dict = field(default_factory=dict)
    bundle: dict | None = None
    params: CesaroParams | None = None
    checkpoints: tuple[int, ...] | None = None
    tolerances: Tolerances | None = None
    seed: int | None = None
    trials: int | None = None
    sequence: SequenceSpec | None = None
    out: str | None = None

    def to_json(self) -> dict:
        obj: dict = {"mode": self.mode}
        if self.n is not None:
            obj["n"] = self.n
        if self.family is not None:
            obj["family"] = self.family
        if self.overrides:
            obj["overrides"] = {k: float(v)
                                for k, v in sorted(self.overrides.items())}
        if self.bundle is not None:
            obj["bundle"] = self.bundle
        if self.params is not None:
            obj["params"] = self.params.to_json()
        if self.checkpoints is not None:
            obj["checkpoints"] = list(self.checkpoints)
        if self.tolerances is not None:
            obj["tolerances"] = self.tolerances.to_json()
        if self.seed is not None:
            obj["seed"] = self.seed
        if self.trials is not None:
            obj["trials"] = self.trials
        if self.sequence is not None:
            obj["sequence"] = self.sequence.to_json()
        if self.out is not None:
            obj["out"] = self.out
        return obj

    @classmethod
    def from_json(cls, obj) -> "ExperimentConfig":
        if not isinstance(obj, dict):
            raise ConfigError("$", "config must be a JSON object")
        for key in obj:
            if key not in _CONFIG_FIELDS:
                raise ConfigError(key, "unknown field")

        mode = obj.get("mode")
        if mode not in MODES:
            raise ConfigError("mode", f"must be one of {', '.join(MODES)}")

        out = obj.get("out")
        if out is not None and not isinstance(out, str):
            raise ConfigError("out", "must be a string path")

        seed = obj.get("seed")
        if seed is not None:
            if not isinstance(seed, int) or isinstance(seed, bool):
                raise ConfigError("seed", "must be an integer")
            if not (0 <= seed < 2 ** 64):
                raise ConfigError("seed", "must fit in an unsigned 64-bit int")

        kw: dict = {"mode": mode, "seed": seed, "out": out}

        if mode in ("check_main", "check_theorem_a"):
            _forbid(obj, mode, "trials", "sequence")
            n = obj.get("n")
            if not isinstance(n, int) or isinstance(n, bool) or n < 8:
                raise ConfigError("n", "must be an integer >= 8")
            kw["n"] = n

            family = obj.get("family")
            bundle = obj.get("bundle")
            if (family is None) == (bundle is None):
                raise ConfigError("family",
                                  "exactly one of family and bundle required")
            if family is not None:
                if family not in BUILTIN_FAMILY_NAMES:
                    raise ConfigError(
                        "family",
                        f"unknown; choices: {', '.join(BUILTIN_FAMILY_NAMES)}")
                _forbid(obj, mode, "params")
                overrides = obj.get("overrides", {})
                if not isinstance(overrides, dict):
                    raise ConfigError("overrides", "must be an object")
                for key, val in overrides.items():
                    if key not in _OVERRIDE_KEYS:
                        raise ConfigError(
                            f"overrides.{key}",
                            f"unknown; choices: {', '.join(sorted(_OVERRIDE_KEYS))}")
                    if not isinstance(val, (int, float)) or isinstance(val, bool):
                        raise ConfigError(f"overrides.{key}", "must be a number")
                kw["family"] = family
                kw["overrides"] = {k: float(v) for k, v in overrides.items()}
            else:
                _forbid(obj, mode, "overrides")
                if not isinstance(bundle, dict):
                    raise ConfigError("bundle", "must be an object")
                _validate_bundle_spec(bundle, mode)
                kw["bundle"] = bundle
                if "params" not in obj:
                    raise ConfigError("params", "required with a custom bundle")
                try:
                    kw["params"] = CesaroParams.from_json(obj["params"])
                except (TypeError, ValueError) as e:
                    raise ConfigError("params", str(e)) from e

            if "checkpoints" in obj:
                kw["checkpoints"] = _dyadic_within(obj["checkpoints"], n)
            if "tolerances" in obj:
                try:
                    kw["tolerances"] = Tolerances.from_json(obj["tolerances"])
                except (TypeError, ValueError) as e:
                    raise ConfigError("tolerances", str(e)) from e

        elif mode == "oracle":
            _forbid(obj, mode, "n", "family", "overrides", "bundle", "params",
                    "checkpoints", "tolerances", "sequence")
            if seed is None:
                raise ConfigError("seed", "required in oracle mode")
            trials = obj.get("trials")
            if trials is not None and (not isinstance(trials, int)
                                       or isinstance(trials, bool) or trials < 1):
                raise ConfigError("trials", "must be a positive integer")
            kw["trials"] = trials

        else:  # transform_dump
            _forbid(obj, mode, "n", "family", "overrides", "bundle",
                    "checkpoints", "tolerances", "trials")
            if "sequence" not in obj:
                raise ConfigError("sequence", "required in transform_dump mode")
            try:
                seq = SequenceSpec.from_json(obj["sequence"])
            except (TypeError, ValueError) as e:
                raise ConfigError("sequence", str(e)) from e
            if seq.start != 0:
                raise ConfigError("sequence.start",
                                  "transform dumps need the index-0 term")
            kw["sequence"] = seq
            if "params" in obj:
                try:
                    kw["params"] = CesaroParams.from_json(obj["params"])
                except (TypeError, ValueError) as e:
                    raise ConfigError("params", str(e)) from e

        return cls(**kw)


_ROLE_FIELDS = {"family", "params"}


def _validate_bundle_spec(bundle: dict, mode: str) -> None:
    """Structural check only; materialization errors surface at build time."""
    allowed = {"label", "a", "lambda", "X", "weight", "Q", "delta"}
    for key in bundle:
        if key not in allowed:
            raise ConfigError(f"bundle.{key}", "unknown field")
    for role in ("a", "lambda", "X"):
        if role not in bundle:
            raise ConfigError(f"bundle.{role}", "required")
    if mode == "check_theorem_a":
        for role in ("Q", "delta"):
            if role in bundle:
                raise ConfigError(f"bundle.{role}",
                                  "not allowed in mode 'check_theorem_a'")
    for role in ("a", "lambda", "X", "Q", "delta"):
        spec = bundle.get(role)
        if spec is None:
            continue
        if not isinstance(spec, dict) or set(spec) - _ROLE_FIELDS:
            raise ConfigError(f"bundle.{role}",
                              "must be an object with fields family, params")
        if "family" not in spec:
            raise ConfigError(f"bundle.{role}.family", "required")
    weight = bundle.get("weight")
    if not isinstance(weight, dict):
        raise ConfigError("bundle.weight", "required object")
    kinds = [k.value for k in WeightKind]
    if weight.get("kind") not in kinds:
        raise ConfigError("bundle.weight.kind",
                          f"must be one of {', '.join(kinds)}")
    wallowed = {"kind", "beta", "phi"}
    for key in weight:
        if key not in wallowed:
            raise ConfigError(f"bundle.weight.{key}", "unknown field")
    if weight["kind"] == WeightKind.EXPLICIT_PHI.value and "phi" not in weight:
        raise ConfigError("bundle.weight.phi", "required for explicit_phi")


def _materialize_role(spec: dict, n: int, pointer: str) -> RealSequence:
    try:
        return materialize(SequenceSpec(family=spec["family"], n=n,
                                        params=dict(spec.get("params", {})),
                                        start=1))
    except (TypeError, ValueError) as e:
        raise ConfigError(pointer, str(e)) from e


def _weight_from_spec(spec: dict, n: int) -> WeightSpec:
    kind = WeightKind(spec["kind"])
    if kind is WeightKind.EXPLICIT_PHI:
        phi = _materialize_role(spec["phi"], n, "bundle.weight.phi")
        return WeightSpec(kind=kind, phi=phi)
    beta = spec.get("beta")
    try:
        return WeightSpec(kind=kind,
                          beta=None if beta is None else float(beta))
    except (TypeError, ValueError) as e:
        raise ConfigError("bundle.weight.beta", str(e)) from e


def _bundle_from_spec(spec: dict, n: int, params: CesaroParams) -> FamilyBundle:
    a = _materialize_role(spec["a"], n, "bundle.a")
    lam = _materialize_role(spec["lambda"], n, "bundle.lambda")
    X = _materialize_role(spec["X"], n, "bundle.X")
    Q = (_materialize_role(spec["Q"], n, "bundle.Q")
         if "Q" in spec else None)
    delta = (_materialize_role(spec["delta"], n, "bundle.delta")
             if "delta" in spec else None)
    weight = _weight_from_spec(spec["weight"], n)
    label = spec.get("label", "custom")
    if not isinstance(label, str):
        raise ConfigError("bundle.label", "must be a string")
    return FamilyBundle(label=label, a=a, lam=lam, X=X, weight=weight,
                        params=params, Q=Q, delta=delta)


def default_majorant(lam_extended: RealSequence,
                     pad_power: float = 3.0) -> RealSequence:
    """Q_n = |D lambda_n| + (n+1)^(-pad_power) over the differenced range.

    The padding keeps Q strictly positive (so quasi-monotonicity is
    checkable) while decaying fast enough that sum n Q_n X_n still
    converges for slowly varying X.  No optimality claimed: this is a
    convenience, not the best majorant for a given lambda.
    """
    dlam = forward_difference(lam_extended)
    pad = np.power(dlam.indices() + 1.0, -float(pad_power))
    return RealSequence(start_index=dlam.start_index,
                        values=np.abs(dlam.values) + pad)


def _seq(family: str, n: int, params: dict | None = None) -> RealSequence:
    return materialize(SequenceSpec(family=family, n=n,
                                    params=params or {}, start=1))


def builtin_family(name: str, N: int, overrides: dict | None = None) -> FamilyBundle:
    """Assemble one of the bundled theorem instances at scale N.

    F1  eight-hypothesis instance built to pass every record: alternating
        a, lambda_n = (n+2)^-2, X_n = log(n+2), classic weight at k = 3/2,
        majorant from default_majorant, delta_n = (n+1)^(-3/2).
    F2  five-hypothesis (order-1) instance: lambda_n = 1/(n+2), otherwise
        like F1 without majorant data.
    F3  negative control: lambda_n = 1 makes |lambda_n| X_n grow like
        log n, so the boundedness record must flag growth.

    ``overrides`` replaces CesaroParams fields (alpha, k, beta, epsilon);
    overridden bundles make no promise of passing.
    """
    if name not in BUILTIN_FAMILY_NAMES:
        raise ValueError(f"unknown builtin family {name!r} "
                         f"(choices: {', '.join(BUILTIN_FAMILY_NAMES)})")
    if N < 8:
        raise ValueError("builtin families need N >= 8")

    a = _seq("alternating_unit", N)
    X = _seq("log_shift", N)
    weight = WeightSpec(kind=WeightKind.CLASSIC)
    params = CesaroParams(alpha=1.0, k=1.5, beta=0.0, epsilon=1.0)
    if overrides:
        try:
            params = dataclasses.replace(params, **overrides)
        except (TypeError, ValueError) as e:
            raise ConfigError("overrides", str(e)) from e

    if name == "F2":
        lam = _seq("power_decay", N, {"p": 1.0, "c0": 2.0})
        return FamilyBundle(label="F2", a=a, lam=lam, X=X,
                            weight=weight, params=params)

    # F1 and F3 carry majorant data; lambda is extended one index past N so
    # Q covers all of 1..N through the forward difference
    if name == "F1":
        lam_ext = _seq("power_decay", N + 1, {"p": 2.0, "c0": 2.0})
    else:
        lam_ext = _seq("unit_tail", N + 1)
    lam = RealSequence(start_index=1, values=lam_ext.values[:N])
    Q = default_majorant(lam_ext)
    delta = _seq("power_decay", N, {"p": 1.5, "c0": 1.0})
    return FamilyBundle(label=name, a=a, lam=lam, X=X, weight=weight,
                        params=params, Q=Q, delta=delta)


def family_catalog_lines() -> list[str]:
    return [
        "F1  check_main instance, passes all 8 records: a alternating, "
        "lambda_n = (n+2)^-2, X_n = log(n+2), classic weight, k = 1.5",
        "F2  check_theorem_a instance, passes all 5 records: "
        "lambda_n = 1/(n+2), X_n = log(n+2), classic weight, k = 1.5",
        "F3  negative control for check_main: lambda_n = 1, so "
        "|lambda_n| X_n = log(n+2) grows and cond7 must fail",
    ]


@dataclass(frozen=True)
class RunReport:
    config: ExperimentConfig
    environment: dict
    results: dict
    exit_status: int

    def to_json(self) -> dict:
        return {
            "config": self.config.to_json(),
            "environment": self.environment,
            "results": self.results,
            "exit_status": self.exit_status,
        }


def load_config(path) -> ExperimentConfig:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigError("$", f"cannot read {path}: {e}") from e
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigError("$", f"invalid JSON: {e}") from e
    return ExperimentConfig.from_json(obj)


def _trace_csv(checkpoints, partials, reference=None) -> str:
    # fixed 4-column format; reference and ratio stay empty for plain O(1)
    # traces
    lines = ["checkpoint,partial_sum,reference,ratio"]
    for i, c in enumerate(checkpoints):
        p = float(partials[i])
        if reference is None:
            lines.append(f"{c},{render_number(p)},,")
        else:
            r = float(reference[i])
            lines.append(f"{c},{render_number(p)},{render_number(r)},"
                         f"{render_number(p / r)}")
    return "\n".join(lines) + "\n"


def _transforms_csv(seq, transforms) -> str:
    lines = ["n,a,sigma,t,w"]
    t = transforms.t
    w = transforms.w
    for n in range(seq.start_index, seq.end_index + 1):
        a_cell = render_number(seq.value_at(n))
        s_cell = render_number(transforms.sigma.value_at(n))
        t_cell = render_number(t.value_at(n)) if n >= t.start_index else ""
        w_cell = (render_number(w.value_at(n))
                  if w is not None and n >= w.start_index else "")
        lines.append(f"{n},{a_cell},{s_cell},{t_cell},{w_cell}")
    return "\n".join(lines) + "\n"


def _environment_stamp(seed: int | None) -> dict:
    from . import __version__
    return {"version": __version__, "seed": seed}


def _run_check(config: ExperimentConfig, out: Path) -> RunReport:
    if config.family is not None:
        bundle = builtin_family(config.family, config.n, config.overrides)
    else:
        bundle = _bundle_from_spec(config.bundle, config.n, config.params)
    if config.mode == "check_theorem_a" and (bundle.Q is not None
                                             or bundle.delta is not None):
        bundle = dataclasses.replace(bundle, Q=None, delta=None)

    tol = config.tolerances or Tolerances()
    cps = config.checkpoints or dyadic_checkpoints(config.n)

    try:
        if config.mode == "check_main":
            report = check_main_theorem(bundle, cps, tol)
        else:
            report = check_theorem_a(bundle, cps, tol)
    except ValueError as e:
        raise ConfigError("bundle", str(e)) from e
    trace, conclusion = conclusion_diagnostic(bundle, cps, tol)

    artifacts = {"trace_cond11": "trace_cond11.csv",
                 "trace_conclusion": "trace_conclusion.csv"}
    cond11 = report.traces["cond11"]
    x_ref = [bundle.X.value_at(c) for c in cond11.checkpoints]
    (out / "trace_cond11.csv").write_text(
        _trace_csv(cond11.checkpoints, cond11.partial_sums, x_ref),
        encoding="utf-8")
    (out / "trace_conclusion.csv").write_text(
        _trace_csv(trace.checkpoints, trace.partial_sums), encoding="utf-8")
    if config.mode == "check_main":
        artifacts["trace_series_nqx"] = "trace_series_nqx.csv"
        (out / "trace_series_nqx.csv").write_text(
            _trace_csv(cps, report.traces["series_nQX"]), encoding="utf-8")
    else:
        artifacts["trace_cond8"] = "trace_cond8.csv"
        (out / "trace_cond8.csv").write_text(
            _trace_csv(report.traces["cond8_checkpoints"],
                       report.traces["cond8"]), encoding="utf-8")

    passed = (report.all_passed
              and conclusion.verdict is GrowthVerdict.BOUNDED_CONSISTENT)
    results = {
        "report": report.to_json(),
        "conclusion": conclusion.to_json(),
        "artifacts": artifacts,
    }
    return RunReport(config=config,
                     environment=_environment_stamp(config.seed),
                     results=results, exit_status=0 if passed else 1)


def _run_oracle(config: ExperimentConfig) -> RunReport:
    suites = run_all_suites(config.seed, config.trials)
    clean = all(s.violations == 0 for s in suites)
    results = {"suites": [s.to_json() for s in suites]}
    return RunReport(config=config,
                     environment=_environment_stamp(config.seed),
                     results=results, exit_status=0 if clean else 1)


def _run_transform_dump(config: ExperimentConfig, out: Path) -> RunReport:
    params = config.params or CesaroParams()
    seq = materialize(config.sequence)
    try:
        transforms = compute_transforms(seq, params.alpha)
    except ValueError as e:
        raise ConfigError("sequence", str(e)) from e
    (out / "transforms.csv").write_text(_transforms_csv(seq, transforms),
                                        encoding="utf-8")
    results = {"artifacts": {"transforms": "transforms.csv"},
               "rows": len(seq), "alpha": params.alpha}
    return RunReport(config=config,
                     environment=_environment_stamp(config.seed),
                     results=results, exit_status=0)


def _summary_lines(report: RunReport) -> list[str]:
    lines = [f"mode={report.config.mode}"]
    results = report.results
    if "report" in results:
        body = results["report"]
        lines[0] += f" label={body['label']} n={body['n']}"
        for rec in body["records"]:
            lines.append(f"  {rec['condition']:<16} {rec['verdict']:<18} "
                         f"{rec['notes']}".rstrip())
        conc = results["conclusion"]
        lines.append(f"  {'conclusion':<16} {conc['verdict']:<18} "
                     f"slope={conc['slope']}")
    elif "suites" in results:
        for suite in results["suites"]:
            lines.append(f"  {suite['check']:<22} trials={suite['trials']} "
                         f"violations={suite['violations']}")
    else:
        lines.append(f"  wrote {results['artifacts']['transforms']} "
                     f"({results['rows']} rows)")
    lines.append(f"exit_status={report.exit_status}")
    return lines


def run(config: ExperimentConfig, out_dir=None, quiet: bool = False) -> RunReport:
    """Execute one config; write artifacts; return the report.

    ``out_dir`` beats the config's own ``out`` field; default is the
    current directory.  Summary goes to standard output unless ``quiet``.
    """
    out = Path(out_dir if out_dir is not None else (config.out or "."))
    out.mkdir(parents=True, exist_ok=True)

    if config.mode in ("check_main", "check_theorem_a"):
        report = _run_check(config, out)
    elif config.mode == "oracle":
        report = _run_oracle(config)
    else:
        report = _run_transform_dump(config, out)

    payload = json.dumps(report.to_json(), indent=2, sort_keys=True) + "\n"
    (out / "report.json").write_text(payload, encoding="utf-8")

    if not quiet:
        print("\n".join(_summary_lines(report)))
    return report
