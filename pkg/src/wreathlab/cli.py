"""Command-line surface: build, embed, sizes, verify.

Exit codes: 0 success/verified, 1 verification failure, 2 usage error,
3 resource limit (size cap or search budget).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .actions import coset_action, load_action, natural_action, regular_action
from .embeddings import kk_embedding, omega_embedding, verify_embedding
from .errors import SearchBudgetExceededError, SizeLimitError, WreathlabError
from .fields import MultiQuadField, QuadraticTower, quadratic_kummer_embedding, tower_extension
from .groups import (
    FiniteGroup,
    center_subgroup,
    construct_named,
    default_section,
    load_group,
    save_group,
    subgroup_from_elements,
)
from .search import embeds_into, identify_small
from .sizes import FIGURE_CSV_HEADER, figure_data, table1
from .suites import find_normal_subgroup, run_suites, ses_from_subgroup, stabilizer_subgroup
from .wreath import SIZE_CAP_DEFAULT, build_wreath

ENV_SIZE_CAP = "WREATHLAB_SIZE_CAP"
EXIT_OK = 0
EXIT_VERIFICATION = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3


@dataclass
class RunConfig:
    command: str
    fmt: str = "text"
    out: Optional[str] = None
    size_cap: int = SIZE_CAP_DEFAULT
    samples: Optional[int] = None
    seed: int = 0


def _size_cap(args) -> int:
    if getattr(args, "size_cap", None):
        return args.size_cap
    env = os.environ.get(ENV_SIZE_CAP)
    if env:
        return int(env)
    return SIZE_CAP_DEFAULT


def _config(args) -> RunConfig:
    samples = None
    depth = getattr(args, "depth", "exhaustive")
    if depth.startswith("sampled:"):
        samples = int(depth.split(":", 1)[1])
    elif depth != "exhaustive":
        raise ValueError(f"bad depth {depth!r} (use exhaustive or sampled:N)")
    return RunConfig(
        command=args.command,
        fmt=getattr(args, "format", "text"),
        out=getattr(args, "out", None),
        size_cap=_size_cap(args),
        samples=samples,
        seed=getattr(args, "seed", 0),
    )


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        print(text)


def _resolve_subgroup(g: FiniteGroup, spec: str):
    if spec == "center":
        return center_subgroup(g)
    if spec.startswith("stab:"):
        return stabilizer_subgroup(g, int(spec.split(":", 1)[1]))
    named = construct_named(spec)
    hom = embeds_into(named, g)
    if hom is None:
        raise ValueError(f"{g.name} has no subgroup isomorphic to {spec}")
    return subgroup_from_elements(g, hom.image_set())


def _parse_section_pairs(text: str) -> dict[str, str]:
    pairs = {}
    for chunk in text.split(","):
        q_label, sep, g_label = chunk.partition(":")
        if not sep:
            raise ValueError(f"bad section pair {chunk!r} (expected q-label:g-label)")
        pairs[q_label.strip()] = g_label.strip()
    return pairs


def _section_from_pairs(eps, pairs: dict[str, str]):
    overrides = {}
    for q_label, g_label in pairs.items():
        overrides[eps.codomain.label_index(q_label)] = eps.domain.label_index(g_label)
    return default_section(eps, overrides)


# -- build -----------------------------------------------------------------------


def _build_omega(h: Optional[FiniteGroup], mode: str, cfg: RunConfig):
    if mode == "regular":
        return regular_action(h)
    if mode.startswith("natural:"):
        return natural_action(int(mode.split(":", 1)[1]), h)
    if mode.startswith("cosets:"):
        _sub, incl = _resolve_subgroup(h, mode.split(":", 1)[1])
        return coset_action(h, incl)[0]
    if mode.startswith("file:"):
        return load_action(mode.split(":", 1)[1])
    raise ValueError(f"unknown omega mode {mode!r}")


def cmd_build(args) -> int:
    cfg = _config(args)
    k = construct_named(args.k)
    h = construct_named(args.h) if args.h else None
    omega = _build_omega(h, args.omega, cfg)
    w = build_wreath(k, omega, size_cap=cfg.size_cap)
    identified = None
    if w.order <= 64 and isinstance(w.product, FiniteGroup):
        identified = identify_small(w.product)
    if cfg.fmt == "json":
        payload = {
            "order": w.order,
            "identified": identified,
            "base_order": k.order,
            "omega_size": omega.size,
            "top_order": omega.group.order,
        }
        _emit(json.dumps(payload), None)
    else:
        line = f"order {w.order}"
        if identified is not None:
            line += f", identified {identified}"
        _emit(line, None)
    if args.out:
        if not isinstance(w.product, FiniteGroup):
            raise SizeLimitError(
                f"order {w.order} exceeds the dense-table cap; JSON export unavailable",
                w.order)
        save_group(w.product, args.out)
    return EXIT_OK


# -- embed -----------------------------------------------------------------------


def _print_embedding(domain, w, phi, report, cfg: RunConfig, extra: Optional[dict] = None) -> int:
    if cfg.fmt == "json":
        payload = {
            "phi": [
                {"domain": domain.labels[x], "image": w.element_str(phi(x)), "index": phi(x)}
                for x in range(domain.order)
            ],
            "report": report.to_json(),
        }
        if extra:
            payload.update(extra)
        _emit(json.dumps(payload), cfg.out)
    else:
        lines = [f"{domain.labels[x]} -> {w.element_str(phi(x))}" for x in range(domain.order)]
        lines.append(
            f"homomorphism: {report.is_homomorphism}, injective: {report.is_injective}, "
            f"image order {report.image_order} of {report.wreath_order}, "
            f"full: {report.image_is_full}")
        if extra:
            lines.extend(f"{key}: {value}" for key, value in extra.items())
        _emit("\n".join(lines), cfg.out)
    return EXIT_OK if (report.is_homomorphism and report.is_injective) else EXIT_VERIFICATION


def _parse_tower(args) -> QuadraticTower:
    gens = [int(v) for v in args.field.split(",") if v]
    k_gens = [int(v) for v in args.K.split(",")] if args.K else []
    return QuadraticTower(MultiQuadField(gens), k_gens, Fraction(args.alpha))


def cmd_embed(args) -> int:
    cfg = _config(args)
    if args.mode == "kk":
        g = construct_named(args.group)
        _n, incl = find_normal_subgroup(g, args.normal)
        ses = ses_from_subgroup(g, incl)
        section = None
        if args.section:
            section = _section_from_pairs(ses.g_to_q, _parse_section_pairs(args.section))
        w, phi = kk_embedding(ses, section, size_cap=cfg.size_cap)
        return _print_embedding(g, w, phi, verify_embedding(phi), cfg)
    if args.mode == "omega":
        g = construct_named(args.group)
        _sub, incl = _resolve_subgroup(g, args.subgroup)
        w, phi = omega_embedding(g, incl, size_cap=cfg.size_cap)
        return _print_embedding(g, w, phi, verify_embedding(phi), cfg)
    if args.mode == "tower":
        t = _parse_tower(args)
        w, phi, report = quadratic_kummer_embedding(t, size_cap=cfg.size_cap)
        extra = None
        if args.section:
            ses = tower_extension(t)
            section = _section_from_pairs(ses.g_to_q, _parse_section_pairs(args.section))
            _wk, phi_kk = kk_embedding(ses, section, size_cap=cfg.size_cap)
            agree = bool((phi_kk.image == phi.image).all())
            extra = {"section_cross_check": "agree" if agree else "DISAGREE"}
        return _print_embedding(phi.domain, w, phi, report, cfg, extra)
    raise ValueError(f"unknown embed mode {args.mode!r}")


# -- sizes -----------------------------------------------------------------------


def cmd_sizes(args) -> int:
    cfg = _config(args)
    if args.emit == "table1":
        rows = table1(args.kf)
        if cfg.fmt == "json":
            payload = {
                "kf": args.kf,
                "rows": [
                    {"group": r.group_name, "kc": r.kc,
                     "regular": r.regular_formula(), "omega": r.omega_formula()}
                    for r in rows
                ],
            }
            _emit(json.dumps(payload), cfg.out)
        else:
            lines = [
                f"{r.group_name}: kc={r.kc}, regular={r.regular_formula()}, omega={r.omega_formula()}"
                for r in rows
            ]
            _emit("\n".join(lines), cfg.out)
        return EXIT_OK
    if not args.group:
        raise ValueError("--group is required unless --emit table1 is used")
    rows = figure_data(args.kf, args.group, args.m_max)
    if cfg.fmt == "json":
        payload = {
            "kf": args.kf,
            "group": args.group,
            "rows": [
                {"m": r.m, "log_regular": r.log_regular,
                 "log_omega": r.log_omega, "marker": r.marker}
                for r in rows
            ],
        }
        _emit(json.dumps(payload), cfg.out)
    else:
        lines = [FIGURE_CSV_HEADER]
        lines += [f"{r.m},{r.log_regular!r},{r.log_omega!r},{r.marker}" for r in rows]
        _emit("\n".join(lines), cfg.out)
    return EXIT_OK


# -- verify ----------------------------------------------------------------------


def cmd_verify(args) -> int:
    cfg = _config(args)
    verdicts = []
    if args.group_json:
        try:
            g = load_group(args.group_json)
            verdicts.append({"suite": "json", "property": "group_invariants",
                             "pass": True, "detail": f"order {g.order} valid"})
        except (WreathlabError, KeyError, ValueError) as exc:
            verdicts.append({"suite": "json", "property": "group_invariants",
                             "pass": False, "detail": str(exc)})
    else:
        verdicts = [v.to_json() for v in run_suites(args.suite, cfg.samples, cfg.seed)]
    all_passed = all(v["pass"] for v in verdicts)
    if cfg.fmt == "json":
        _emit(json.dumps({"verdicts": verdicts, "all_passed": all_passed}), cfg.out)
    else:
        lines = [
            f"{'PASS' if v['pass'] else 'FAIL'} {v['suite']}: {v['property']}"
            + (f" ({v['detail']})" if v["detail"] else "")
            for v in verdicts
        ]
        lines.append("all passed" if all_passed else "FAILURES present")
        _emit("\n".join(lines), cfg.out)
    return EXIT_OK if all_passed else EXIT_VERIFICATION


# -- parser ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wreathlab",
                                     description="wreath products, extension embeddings, "
                                                 "multiquadratic towers, size tables")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="materialize a wreath product")
    p.add_argument("--k", required=True, help="base group spec (e.g. C:2, S:3, AGL:3)")
    p.add_argument("--h", help="top group spec")
    p.add_argument("--omega", default="regular",
                   help="regular | natural:n | cosets:SUB | file:PATH")
    p.add_argument("--out", help="write the product group JSON here")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--size-cap", type=int, default=None)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("embed", help="construct and verify an embedding")
    p.add_argument("--mode", choices=["kk", "omega", "tower"], required=True)
    p.add_argument("--group", help="ambient group spec (kk/omega modes)")
    p.add_argument("--normal", help="normal subgroup spec (kk mode); 'center' allowed")
    p.add_argument("--subgroup", help="subgroup spec (omega mode); stab:k and center allowed")
    p.add_argument("--field", help="tower generators, e.g. 5,7")
    p.add_argument("--K", help="middle-field generators, e.g. 5")
    p.add_argument("--alpha", help="rational alpha with sqrt(alpha) in L")
    p.add_argument("--section", help="comma-separated q-label:g-label overrides")
    p.add_argument("--out")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--size-cap", type=int, default=None)
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("sizes", help="size formulas, catalog rows and figure data")
    p.add_argument("--kf", type=int, required=True)
    p.add_argument("--group")
    p.add_argument("--m-max", type=int, default=120)
    p.add_argument("--emit", choices=["figure", "table1"], default="figure")
    p.add_argument("--out")
    p.add_argument("--format", choices=["text", "csv", "json"], default="text")
    p.set_defaults(func=cmd_sizes)

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument("--suite", default="all",
                   choices=["all", "theta", "kk", "omega", "cocycle", "iso"])
    p.add_argument("--depth", default="exhaustive",
                   help="exhaustive | sampled:N")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--group-json", help="validate a group exchange file instead")
    p.add_argument("--out")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (SizeLimitError, SearchBudgetExceededError) as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (WreathlabError, ValueError, KeyError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
