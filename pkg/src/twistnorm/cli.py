"""Command line interface: ``twistnorm alex|norm|reps|cover``.

Every command prints (or writes to ``--out``) a JSON report.  Exit codes:
0 success, 2 parse error, 3 validation error, 4 mathematical inconsistency.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path
from typing import List, Optional, Sequence

from . import fixtures
from .alexander import MathInconsistency, TwistData, check_turaev_identity, compute, one_variable_suite
from .covers import CoverError, cyclic_quotient, reidemeister_schreier
from .fields import Field, FieldError
from .groups import AbelianizationMap, GroupPresentation, PresentationError, abelianization
from .laurent import LaurentPoly
from .norms import fibering_obstruction, norm_ball_2d, seminorm_eval, thurston_bound
from .pd import PDError, parse_pd, wirtinger
from .reps import (PermutationAssignment, Representation, RepresentationError, enumerate_characters,
                   format_cycles, search_symmetric, standard_module)
from .svg import render_ball_svg

EXIT_PARSE, EXIT_VALIDATION, EXIT_MATH = 2, 3, 4


class CliError(Exception):
    def __init__(self, code: int, category: str, message: str):
        super().__init__(message)
        self.code = code
        self.category = category


# ---------------------------------------------------------------------------
# inputs


class Job:
    """Parsed input: a presentation, its map to Z^b and bookkeeping."""

    def __init__(self, pres: GroupPresentation, psi: AbelianizationMap, source: str,
                 kind: str, index: int = 1, mu: Optional[int] = None):
        self.pres = pres
        self.psi = psi
        self.source = source
        self.kind = kind
        self.index = index
        self.mu = mu

    def summary(self) -> dict:
        d = {"source": self.source, "kind": self.kind, "generators": self.pres.ngens,
             "relators": len(self.pres.relators), "b": self.psi.b,
             "rationally_surjective": self.psi.rationally_surjective}
        if self.index != 1:
            d["cover_index"] = self.index
        return d


def _read_input(spec: str) -> tuple:
    p = Path(spec)
    if p.is_file():
        return p.read_text(), p.suffix, str(p)
    name = spec.split("/")[-1]
    try:
        return fixtures.read(name), Path(name).suffix, f"fixture:{name}"
    except FileNotFoundError:
        raise CliError(EXIT_PARSE, "parse", f"no such input file or fixture: {spec}") from None


def load_job(spec: str) -> Job:
    try:
        text, suffix, source = _read_input(spec)
        stripped = text.strip()
        if stripped.startswith("{"):
            data = json.loads(stripped)
            if data.get("command") == "cover":
                data = data["cover"]
            if "pd" in data:
                pd = parse_pd(data)
            elif "presentation" in data and "psi" in data:
                pres = GroupPresentation.from_json(data["presentation"])
                psi = AbelianizationMap.from_json(data["psi"]).check(pres)
                return Job(pres, psi, source, "cover", int(data.get("index", 1)))
            else:
                pres = GroupPresentation.from_json(data)
                if pres.components:
                    mu = max(pres.components.values())
                    imgs = tuple(tuple(int(pres.components[g] == i + 1) for i in range(mu))
                                 for g in pres.generators)
                    psi = AbelianizationMap(mu, imgs).check(pres)
                else:
                    psi = abelianization(pres)
                return Job(pres, psi, source, "presentation")
        else:
            pd = parse_pd(text)
        pres, psi = wirtinger(pd)
        return Job(pres, psi, source, "pd", mu=pd.mu)
    except (PDError, json.JSONDecodeError) as e:
        raise CliError(EXIT_PARSE, "parse", str(e)) from None
    except PresentationError as e:
        raise CliError(EXIT_VALIDATION, "validation", str(e)) from None


def _parse_phi(text: str) -> List[int]:
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise CliError(EXIT_PARSE, "parse", f"bad covector {text!r}") from None


def resolve_reps(job: Job, source: str, p: int, limit: Optional[int]) -> List[tuple]:
    """``[(label, Representation), ...]`` for a --rep value."""
    pres = job.pres
    try:
        F = Field(p)
    except FieldError as e:
        raise CliError(EXIT_VALIDATION, "validation", str(e)) from None
    try:
        if source == "trivial":
            return [("trivial", Representation.trivial(pres, F))]
        if source.startswith("search:"):
            q = int(source.split(":")[1])
            if not p:
                raise CliError(EXIT_VALIDATION, "validation", "search:q needs a prime --field")
            found = search_symmetric(pres, q, limit=limit, nonabelian=True)
            return [(" ".join(format_cycles(s) for s in a.perms), standard_module(a, pres, p)) for a in found]
        if source == "characters":
            if not p:
                raise CliError(EXIT_VALIDATION, "validation", "characters need a prime --field")
            return [(f"character {i}", chi) for i, chi in enumerate(enumerate_characters(pres, p, limit))]
        data = json.loads(Path(source).read_text())
        if "q" in data:
            if not p:
                raise CliError(EXIT_VALIDATION, "validation", "permutation files need a prime --field")
            a = PermutationAssignment.from_json(data, pres)
            return [(source, standard_module(a, pres, p))]
        return [(source, Representation.from_json(data, pres))]
    except (OSError, json.JSONDecodeError, ValueError) as e:
        if isinstance(e, RepresentationError):
            raise CliError(EXIT_VALIDATION, "validation", str(e)) from None
        raise CliError(EXIT_PARSE, "parse", f"cannot read representation {source!r}: {e}") from None


# ---------------------------------------------------------------------------
# commands


def _names(job: Job):
    return ["x", "y"] if job.psi.b == 2 else (["t"] if job.psi.b == 1 else None)


def _alex_one(job: Job, label: str, rep: Representation, args) -> dict:
    data = TwistData(job.pres, job.psi, rep)
    method = "full" if args.full else "wada"
    res = compute(data, method=method, verify=args.verify, minor_cap=args.minor_cap)
    out = {"representation": label, "dim": rep.dim,
           "result": res.to_json(_names(job), timings=not args.no_timings)}
    k = rep.dim * job.index
    bounds, checks = [], []
    for text in args.phi or []:
        phi = _parse_phi(text)
        if len(phi) != job.psi.b:
            raise CliError(EXIT_VALIDATION, "validation", f"covector {text} has wrong length")
        one = one_variable_suite(data, phi, method=method, verify=args.verify)
        row = thurston_bound(one, phi, k=k).to_json()
        row["norm_bound"] = str(seminorm_eval(res.delta1, phi) / k)
        row["delta1_phi"] = one.delta1.to_terms()
        bounds.append(row)
        if job.psi.b > 1 and (args.verify or args.check):
            rep_ = check_turaev_identity(data, phi, res.delta1, method=method)
            checks.append(rep_.to_json())
            if not rep_.holds:
                raise MathInconsistency(f"torsion identity fails at phi={phi}")
    if bounds:
        out["bounds"] = bounds
    if checks:
        out["identity_checks"] = checks
    return out, res


def cmd_alex(args) -> dict:
    job = load_job(args.input)
    reps = resolve_reps(job, args.rep, args.field, args.limit)
    results = []
    for label, rep in reps:
        out, _ = _alex_one(job, label, rep, args)
        results.append(out)
    return {"command": "alex", "input": job.summary(), "field": args.field, "results": results}


def cmd_norm(args) -> dict:
    job = load_job(args.input)
    reps = resolve_reps(job, args.rep, args.field, args.limit)
    results = []
    for i, (label, rep) in enumerate(reps):
        out, res = _alex_one(job, label, rep, args)
        k = rep.dim * job.index
        if job.psi.b == 2:
            ball = norm_ball_2d(res.delta1, k)
            out["ball"] = ball.to_json()
            if args.svg:
                target = Path(args.out or ".") / (f"ball_{i}.svg" if len(reps) > 1 else "ball.svg")
                target.parent.mkdir(parents=True, exist_ok=True)
                target.write_text(render_ball_svg(ball, title=f"{job.source} ({label})"))
                out["svg"] = str(target)
            if args.compare:
                other = norm_ball_2d(_untwisted(job), 1)
                verdicts = []
                for text in args.phi or []:
                    phi = _parse_phi(text)
                    verdicts.append(fibering_obstruction(other, ball, phi).to_json())
                out["fibering"] = verdicts
        else:
            out["ball"] = None
        results.append(out)
    return {"command": "norm", "input": job.summary(), "field": args.field, "results": results}


def _untwisted(job: Job) -> LaurentPoly:
    data = TwistData(job.pres, job.psi, Representation.trivial(job.pres, Field(0)))
    return compute(data).delta1


def cmd_reps(args) -> dict:
    job = load_job(args.input)
    found = search_symmetric(job.pres, args.q, limit=args.limit, nonabelian=not args.all,
                             surjective=args.surjective)
    items = []
    for i, a in enumerate(found):
        entry = a.to_json(job.pres)
        entry["surjective"] = a.is_surjective()
        if args.field:
            entry["standard_module"] = standard_module(a, job.pres, args.field).to_json()
        items.append(entry)
        if args.out:
            d = Path(args.out)
            d.mkdir(parents=True, exist_ok=True)
            (d / f"perm_{i}.json").write_text(json.dumps(a.to_json(job.pres), indent=1, sort_keys=True) + "\n")
            if args.field:
                (d / f"rep_{i}.json").write_text(json.dumps(entry["standard_module"], sort_keys=True) + "\n")
    return {"command": "reps", "input": job.summary(), "q": args.q, "count": len(items), "assignments": items}


def cmd_cover(args) -> dict:
    job = load_job(args.input)
    try:
        if args.perms:
            data = json.loads(Path(args.perms).read_text())
            a = PermutationAssignment.from_json(data, job.pres)
            perms = list(a.perms)
        elif args.character:
            perms = cyclic_quotient(job.psi, _parse_phi(args.character), args.mod)
        else:
            perms = [(0,)] * job.pres.ngens
        cover = reidemeister_schreier(job.pres, perms)
    except (CoverError, RepresentationError) as e:
        raise CliError(EXIT_VALIDATION, "validation", str(e)) from None
    except (OSError, json.JSONDecodeError) as e:
        raise CliError(EXIT_PARSE, "parse", str(e)) from None
    psi = cover.pull_back_map(job.psi)
    out = cover.to_json()
    out["psi"] = psi.to_json()
    out["rationally_surjective"] = psi.rationally_surjective
    return {"command": "cover", "input": job.summary(), "cover": out}


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="twistnorm", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("input", help="PD file, presentation JSON, cover JSON or fixture name")
        p.add_argument("--field", type=int, default=0, help="prime p, or 0 for the rationals")
        p.add_argument("--out", help="directory for output files")
        p.add_argument("--no-timings", action="store_true", help="omit timings (byte-stable output)")
        p.add_argument("--limit", type=int, default=None, help="cap on representations tried")

    for name, fn in (("alex", cmd_alex), ("norm", cmd_norm)):
        p = sub.add_parser(name)
        common(p)
        p.add_argument("--rep", default="trivial", help="trivial | FILE | search:q | characters")
        p.add_argument("--phi", action="append", help="covector a,b,... (repeatable)")
        p.add_argument("--verify", action="store_true", help="cross-check Wada against the minor gcd")
        p.add_argument("--check", action="store_true", help="check the torsion identity at each --phi")
        p.add_argument("--full", action="store_true", help="use the minor gcd instead of Wada")
        p.add_argument("--minor-cap", type=int, default=None)
        if name == "norm":
            p.add_argument("--svg", action="store_true", help="also write an SVG picture of the ball")
            p.add_argument("--compare", action="store_true",
                           help="compare with the untwisted ball at each --phi (fibering obstruction)")
        p.set_defaults(fn=fn)

    p = sub.add_parser("reps")
    common(p)
    p.add_argument("--q", type=int, default=3)
    p.add_argument("--surjective", action="store_true")
    p.add_argument("--all", action="store_true", help="keep abelian images too")
    p.set_defaults(fn=cmd_reps)

    p = sub.add_parser("cover")
    common(p)
    p.add_argument("--character", help="covector a,b,... defining g -> phi(psi(g)) mod n")
    p.add_argument("--mod", type=int, default=2)
    p.add_argument("--perms", help="permutation JSON file for the quotient")
    p.set_defaults(fn=cmd_cover)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    t0 = time.perf_counter()
    try:
        report = args.fn(args)
    except CliError as e:
        print(json.dumps({"error": e.category, "message": str(e)}), file=sys.stderr)
        return e.code
    except MathInconsistency as e:
        print(json.dumps({"error": "math-inconsistency", "message": str(e)}), file=sys.stderr)
        return EXIT_MATH
    except (RepresentationError, CoverError, PresentationError) as e:
        print(json.dumps({"error": "validation", "message": str(e)}), file=sys.stderr)
        return EXIT_VALIDATION
    if not args.no_timings:
        report["seconds"] = round(time.perf_counter() - t0, 3)
    text = json.dumps(report, indent=1, sort_keys=True)
    if args.out:
        d = Path(args.out)
        d.mkdir(parents=True, exist_ok=True)
        (d / f"{args.command}.json").write_text(text + "\n")
    print(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
