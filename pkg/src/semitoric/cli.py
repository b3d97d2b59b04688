"""Command line entry point: ``semitoric [global flags] COMMAND [options]``.

Exit codes: 0 success, 1 bad input or validation error, 2 a verification check failed.
Global flags may be given before or after the command name.
"""

import argparse
import json
import random
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from . import crystal, geomlift, polyhedra, reparam, rootdata, tropical
from .errors import SemitoricError, ValidationFailed

EXIT_OK, EXIT_INVALID, EXIT_FAILED = 0, 1, 2


class VerificationFailed(Exception):
    def __init__(self, payload):
        super().__init__("verification failed")
        self.payload = payload


def parse_ints(text, what="value"):
    text = (text or "").strip()
    if text in ("", "e", "id"):
        return ()
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad {what} {text!r}: expected comma separated integers") from None


@dataclass
class JobConfig:
    cartan: rootdata.CartanData
    type_name: str = None
    word: tuple = None
    lam: tuple = None
    out: Path = None
    radius: int = 3
    seed: int = 0
    extra: dict = field(default_factory=dict)

    @classmethod
    def from_args(cls, args):
        if args.cartan_file:
            data = json.loads(Path(args.cartan_file).read_text())
            matrix = data["cartan"] if isinstance(data, dict) else data
            c, name = rootdata.validate_cartan(matrix), None
        else:
            name = args.type or "A2"
            c = rootdata.validate_cartan(name)
        word = parse_ints(args.word, "word") if args.word else None
        if word is not None:
            rootdata.make_word(c, word)
        lam = parse_ints(args.lam, "weight") if args.lam else (1,) * c.n
        crystal.check_dominant(c, lam)
        if args.radius is not None and args.radius < 0:
            raise ValueError("radius must be nonnegative")
        out = Path(args.out) if args.out else None
        return cls(c, name, word, lam, out, 3 if args.radius is None else args.radius, args.seed or 0)

    def crystal(self):
        reparam.ensure_moves(self.cartan)
        return crystal.generate(self.cartan, self.word, self.lam)


def _emit(cfg, text, name):
    if cfg.out is None:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
        return
    cfg.out.mkdir(parents=True, exist_ok=True)
    path = cfg.out / name
    path.write_text(text if text.endswith("\n") else text + "\n")
    print(path)


def _dumps(obj):
    return json.dumps(obj, indent=2, sort_keys=True)


# ---------------------------------------------------------------------------
# commands


def cmd_crystal(cfg, args):
    g = cfg.crystal()
    _emit(cfg, crystal.dumps(g), "crystal.json")
    if cfg.out is not None:
        _emit(cfg, crystal.to_dot(g), "crystal.dot")
    return EXIT_OK


def cmd_reparam(cfg, args):
    c = cfg.cartan
    reparam.ensure_moves(c)
    src = cfg.word or rootdata.w0_word(c)
    coords = parse_ints(args.coords, "coordinates")
    if len(coords) != len(src):
        raise ValueError(f"expected {len(src)} coordinates for word {src}")
    out = {"from_word": list(src), "coords": list(coords), "map": args.map}
    if args.map == "transition":
        dst = parse_ints(args.to, "word") if args.to else rootdata.star_word(c, src)
        pv = reparam.transition(reparam.ParamVector(args.flavor, src, coords, c), dst)
        out.update(flavor=args.flavor, to_word=list(pv.word), result=list(pv.coords))
    elif args.map == "phi":
        out.update(to_word=list(rootdata.star_word(c, src)),
                   result=list(reparam.phi_forward(c, src, cfg.lam, coords).coords))
    elif args.map == "omega":
        res = reparam.omega(c, src, cfg.lam, coords)
        out.update(to_word=list(rootdata.star_word(c, src)), result=list(res.coords))
    else:
        out.update(result=list(reparam.phi_inverse(c, src, cfg.lam, coords).coords))
    _emit(cfg, _dumps(out), "reparam.json")
    return EXIT_OK


def cmd_involution(cfg, args):
    g = cfg.crystal()
    prop = crystal.eta_involution(g)
    via = crystal.eta_via_omega(g)
    pairs = [{"string": list(b.coords), "image": list(g.elements[prop[b.id]].coords)} for b in g.elements]
    payload = {"word": list(g.word), "lambda": list(g.lam), "pairs": pairs,
               "routes_agree": list(prop) == list(via)}
    _emit(cfg, _dumps(payload), "involution.json")
    if not payload["routes_agree"]:
        raise VerificationFailed(payload)
    return EXIT_OK


def cmd_polytope(cfg, args):
    g = cfg.crystal()
    poly = polyhedra.string_polytope(g)
    _emit(cfg, polyhedra.dumps(poly.to_json()), "polytope.json")
    if cfg.out is not None and poly.dim == 3:
        _emit(cfg, poly.to_off(), "polytope.off")
    return EXIT_OK


def _richardson_job(g, poly, type_name, pair):
    w, tau = pair
    return polyhedra.report_json(g, polyhedra.degeneration_report(g, w, tau, poly), type_name)


def cmd_richardson(cfg, args):
    c = cfg.cartan
    g = cfg.crystal()
    poly = polyhedra.string_polytope(g)
    if args.all_pairs:
        elems = rootdata.all_elements(c)
        pairs = [(w, t) for w in elems for t in elems]
    else:
        w = rootdata.WeylElement.from_word(c, parse_ints(args.w, "word"))
        tau = rootdata.WeylElement.from_word(c, parse_ints(args.tau, "word"))
        pairs = [(w, tau)]
    with ThreadPoolExecutor(max_workers=max(1, args.jobs)) as pool:
        reports = list(pool.map(lambda p: _richardson_job(g, poly, cfg.type_name, p), pairs))
    payload = reports if args.all_pairs else reports[0]
    _emit(cfg, _dumps(payload), "richardson.json")
    if any(not r["is_face_union"] for r in reports):
        raise VerificationFailed(payload)
    return EXIT_OK


# verification suite

def _a2_bridge(radius):
    rep = geomlift.sl_rep(2)
    p = tropical.p
    table = reparam.move_table((-1, -1))
    box = dict(lo=-radius, hi=radius)
    return {
        "bridge_lusztig_move": geomlift.tropical_bridge(
            geomlift.transition_components(rep, (1, 2, 1), (2, 1, 2)), table.lusztig_move, **box),
        "bridge_string_move": geomlift.tropical_bridge(
            geomlift.transition_components(rep, (-1, -2, -1), (-2, -1, -2)), table.string_move, **box),
        "bridge_eta": geomlift.tropical_bridge(
            geomlift.eta_components(rep, (1, 2, 1), (1, 2, 1)), (p(1), p(3), p(2) - p(3)), **box),
    }


def run_checks(cfg):
    c = cfg.cartan
    g = cfg.crystal()
    rng = random.Random(cfg.seed)
    elems = list(g.elements)
    sample = elems if len(elems) <= 200 else rng.sample(elems, 200)
    checks = {}

    checks["phi_round_trip"] = all(
        reparam.phi_inverse(c, g.word, g.lam, reparam.phi_forward(c, g.word, g.lam, b.coords).coords).coords
        == b.coords
        for b in elems)
    words = rootdata.w0_word_graph(c).words
    ok = True
    for u in words:
        for flavor in (reparam.STRING, reparam.LUSZTIG):
            for b in sample:
                x = b.coords if flavor == reparam.STRING else crystal.lusztig_params(g, b).coords
                there = reparam.transition_coords(c, flavor, g.word, u, x)
                ok &= reparam.transition_coords(c, flavor, u, g.word, there) == tuple(x)
    checks["transition_round_trip"] = ok
    eta = crystal.eta_involution(g)
    checks["eta_squared"] = all(eta[eta[k]] == k for k in range(len(eta)))
    checks["eta_routes_agree"] = list(eta) == list(crystal.eta_via_omega(g))
    ok = True
    for u in words:
        chains = reparam.chains_between(c, g.word, u, limit=24)
        for b in sample:
            results = {reparam.apply_chain(ch, reparam.STRING, b.coords) for ch in chains}
            ok &= len(results) <= 1
    checks["chain_independence"] = ok

    report = {name: "pass" if v else "fail" for name, v in checks.items()}
    details = {}
    if c.a == rootdata.validate_cartan("A2").a:
        for name, rep in _a2_bridge(cfg.radius).items():
            report[name] = rep["status"]
            details[name] = rep
    return {"type": cfg.type_name, "lambda": list(g.lam), "word": list(g.word), "seed": cfg.seed,
            "radius": cfg.radius, "checks": report, "details": details,
            "status": "pass" if all(v == "pass" for v in report.values()) else "fail"}


def cmd_verify(cfg, args):
    payload = run_checks(cfg)
    _emit(cfg, _dumps(payload), "verify.json")
    if payload["status"] != "pass":
        raise VerificationFailed(payload)
    return EXIT_OK


def cmd_derive_moves(cfg, args):
    try:
        tables = geomlift.derive_rank2_moves(args.local_type)
    except ValidationFailed as exc:
        raise VerificationFailed({"error": str(exc)}) from exc
    payload = [{"local_type": t.local_type, "key": list(t.key), "provenance": t.provenance,
                "string_move": [e.to_json() for e in t.string_move],
                "lusztig_move": [e.to_json() for e in t.lusztig_move]} for t in tables]
    _emit(cfg, _dumps(payload), "moves.json")
    return EXIT_OK


COMMANDS = {
    "crystal": cmd_crystal,
    "reparam": cmd_reparam,
    "involution": cmd_involution,
    "polytope": cmd_polytope,
    "richardson": cmd_richardson,
    "verify": cmd_verify,
    "derive-moves": cmd_derive_moves,
}


def _add_global(p, suppress):
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    grp = p.add_argument_group("global options")
    src = grp.add_mutually_exclusive_group()
    src.add_argument("--type", default=d(None), help="preset such as A2, A3, B2")
    src.add_argument("--cartan-file", default=d(None), help="JSON file with a Cartan matrix")
    grp.add_argument("--lambda", dest="lam", default=d(None), help="dominant weight, e.g. 1,1")
    grp.add_argument("--word", default=d(None), help="reduced word for w0, e.g. 1,2,1")
    grp.add_argument("--out", default=d(None), help="output directory (stdout if omitted)")
    grp.add_argument("--radius", type=int, default=d(None), help="box radius for verification")
    grp.add_argument("--seed", type=int, default=d(0), help="seed for sampled checks")


def build_parser():
    parser = argparse.ArgumentParser(prog="semitoric", description=__doc__.splitlines()[0])
    _add_global(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)
    parsers = {name: sub.add_parser(name) for name in COMMANDS}
    for p in parsers.values():
        _add_global(p, suppress=True)
    rp = parsers["reparam"]
    rp.add_argument("--coords", required=True)
    rp.add_argument("--map", choices=["transition", "phi", "omega", "phi-inverse"], default="transition")
    rp.add_argument("--flavor", choices=[reparam.STRING, reparam.LUSZTIG], default=reparam.STRING)
    rp.add_argument("--to", help="target word (default: the starred word)")
    rc = parsers["richardson"]
    rc.add_argument("--w", default="", help="word for w (empty for the identity)")
    rc.add_argument("--tau", default="", help="word for tau (empty for the identity)")
    rc.add_argument("--all-pairs", action="store_true")
    rc.add_argument("--jobs", type=int, default=1)
    parsers["derive-moves"].add_argument("--local-type", default="B2", choices=["A1xA1", "A2", "B2", "G2"])
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INVALID
    try:
        cfg = JobConfig.from_args(args)
        return COMMANDS[args.command](cfg, args)
    except VerificationFailed:
        print("semitoric: verification failed", file=sys.stderr)
        return EXIT_FAILED
    except (SemitoricError, ValueError, KeyError, argparse.ArgumentTypeError, OSError) as exc:
        print(f"semitoric: error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
