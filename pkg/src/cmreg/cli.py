"""Batch front end: read a ring document, run one computation or a campaign.

Document format::

    ring 3 32003
    # comment
    ideal two_points
    x2
    x0*x1
    end
    arrangement lines
    subspace x0; x1
    subspace x2; x3
    end

Exit codes: 0 all checks pass, 1 a checked statement failed, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from pathlib import Path

from .arrangements import LinearSubspace, arrangement_ideal, linear_subspace
from .cohomology import DEFAULT_WINDOW_EXTRA, cohomology_table, sheaf_regularity
from .groebner import NonHomogeneousError
from .harness import CAMPAIGNS, CampaignConfig, run_campaign
from .ideal import Ideal, krull_dim, product, saturate
from .resolution import betti_table, minimal_free_resolution, regularity
from .ring import DEFAULT_PRIME, RingContext, is_prime

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class DocumentError(ValueError):
    def __init__(self, path, line: int | None, message: str):
        where = f"{path}:{line}" if line is not None else str(path)
        super().__init__(f"{where}: {message}")


@dataclass
class InputDocument:
    ctx: RingContext
    ideals: dict[str, Ideal] = field(default_factory=dict)
    arrangements: dict[str, list[LinearSubspace]] = field(default_factory=dict)

    def lookup(self, name: str) -> Ideal:
        if name in self.ideals:
            return self.ideals[name]
        if name in self.arrangements:
            return arrangement_ideal(self.arrangements[name])
        known = ", ".join(sorted([*self.ideals, *self.arrangements])) or "none"
        raise KeyError(f"no ideal or arrangement named {name!r} (known: {known})")


def parse_document(text: str, path="<input>") -> InputDocument:
    ctx = None
    doc = None
    block = None  # (kind, name, start line, items)
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        words = line.split()
        if block is None:
            if words[0] == "ring":
                if ctx is not None:
                    raise DocumentError(path, lineno, "duplicate ring header")
                if len(words) != 3:
                    raise DocumentError(path, lineno, "expected 'ring <num_vars> <p>'")
                try:
                    nv, p = int(words[1]), int(words[2])
                    if not is_prime(p):
                        raise ValueError(f"{p} is not prime")
                    ctx = RingContext(nv, p)
                except ValueError as exc:
                    raise DocumentError(path, lineno, str(exc)) from None
                doc = InputDocument(ctx)
            elif words[0] in ("ideal", "arrangement"):
                if ctx is None:
                    raise DocumentError(path, lineno, "the ring header must come first")
                if len(words) != 2:
                    raise DocumentError(path, lineno, f"expected '{words[0]} <name>'")
                name = words[1]
                if name in doc.ideals or name in doc.arrangements:
                    raise DocumentError(path, lineno, f"duplicate name {name!r}")
                block = (words[0], name, lineno, [])
            else:
                raise DocumentError(path, lineno, f"unexpected {words[0]!r}")
            continue
        kind, name, start, items = block
        if line == "end":
            if kind == "ideal":
                doc.ideals[name] = Ideal(ctx, items)
            else:
                if not items:
                    raise DocumentError(path, start, f"arrangement {name!r} has no subspaces")
                doc.arrangements[name] = items
            block = None
            continue
        try:
            if kind == "ideal":
                f = ctx.parse(line)
                if f and not f.is_homogeneous():
                    raise NonHomogeneousError(f"{line} is not homogeneous")
                items.append(f)
            else:
                if words[0] != "subspace":
                    raise DocumentError(path, lineno, "expected 'subspace <form>; <form>; ...'")
                body = line[len("subspace") :]
                forms = [ctx.parse(t) for t in body.split(";") if t.strip()]
                items.append(linear_subspace(forms, ctx))
        except DocumentError:
            raise
        except ValueError as exc:
            raise DocumentError(path, lineno, str(exc)) from None
    if block is not None:
        raise DocumentError(path, block[2], f"{block[0]} {block[1]!r} is missing 'end'")
    if doc is None:
        raise DocumentError(path, None, "no ring header")
    return doc


def load_document(path) -> InputDocument:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise DocumentError(path, None, exc.strerror or str(exc)) from None
    return parse_document(text, path)


def _gens_block(I: Ideal) -> list[str]:
    return [f"  {g}" for g in I.generators] or ["  0"]


def _reg_str(r) -> str:
    return "-inf" if r == float("-inf") else str(int(r))


def cmd_reg(doc, args, out):
    I = doc.lookup(args.ideal)
    out.append(f"regularity = {_reg_str(regularity(I))}")
    out.append(betti_table(minimal_free_resolution(I)).render())
    return EXIT_OK


def cmd_betti(doc, args, out):
    I = doc.lookup(args.ideal)
    res = minimal_free_resolution(I)
    table = betti_table(res)
    out.append(table.render())
    for (i, j), b in sorted(table.entries.items()):
        out.append(f"beta_{i}_{j}={b}")
    out.append(f"projective_dimension={res.length}")
    return EXIT_OK


def cmd_sheaf_reg(doc, args, out):
    I = doc.lookup(args.ideal)
    s = sheaf_regularity(I)
    n = I.ctx.ambient_n
    window = args.window if args.window is not None else I.ctx.num_vars + DEFAULT_WINDOW_EXTRA
    out.append(f"sheaf_regularity = {s}")
    out.append(cohomology_table(I, range(s - n - 1, s + window + 1)).render())
    return EXIT_OK


def cmd_saturate(doc, args, out):
    I = doc.lookup(args.ideal)
    S = saturate(I)
    out.append("saturation:")
    out.extend(_gens_block(S))
    out.append(f"already_saturated={'true' if S == I else 'false'}")
    return EXIT_OK


def cmd_product(doc, args, out):
    I, J = doc.lookup(args.i), doc.lookup(args.j)
    if I.ctx != J.ctx:
        raise KeyError("the two ideals live in different rings")
    IJ = product(I, J)
    r_i, r_j, r_ij = regularity(I), regularity(J), regularity(IJ)
    out.append("product:")
    out.extend(_gens_block(IJ))
    out.append(f"reg_I={_reg_str(r_i)}")
    out.append(f"reg_J={_reg_str(r_j)}")
    out.append(f"regularity = {_reg_str(r_ij)}")
    meet = krull_dim(I + J)
    out.append(f"meet_dim={max(meet - 1, -1)}")
    if meet <= 1:
        ok = r_ij <= r_i + r_j
        out.append(f"verdict={'pass' if ok else 'fail'}")
        return EXIT_OK if ok else EXIT_FAIL
    out.append("verdict=not_applicable")
    return EXIT_OK


def cmd_campaign(args, out):
    cfg = CampaignConfig(
        campaign=args.name,
        trials=args.trials,
        seed=args.seed,
        ambient_n=args.n,
        d=args.d,
        char_p=args.p,
        window=args.window,
    )
    result = run_campaign(cfg)
    out.append(result.report().rstrip("\n"))
    if args.replay_dir is not None:
        for path in result.write_replays(Path(args.replay_dir)):
            out.append(f"replay={path}")
    return EXIT_OK if result.ok else EXIT_FAIL


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(f"{self.prog}: {message}")


class _UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="cmreg", description="Castelnuovo-Mumford regularity toolkit")
    sub = ap.add_subparsers(dest="command", parser_class=_Parser, required=True)
    for name, helptext in [
        ("reg", "Betti-table regularity"),
        ("betti", "Betti table of the minimal resolution"),
        ("sheaf-reg", "regularity of the ideal sheaf and its cohomology table"),
        ("saturate", "saturation with respect to the irrelevant ideal"),
    ]:
        sp = sub.add_parser(name, help=helptext)
        sp.add_argument("file")
        sp.add_argument("ideal")
        if name == "sheaf-reg":
            sp.add_argument("--window", type=int)
    sp = sub.add_parser("product", help="regularity of I*J against reg I + reg J")
    sp.add_argument("file")
    sp.add_argument("i")
    sp.add_argument("j")
    sp = sub.add_parser("campaign", help="run a randomized campaign")
    sp.add_argument("name", choices=sorted(CAMPAIGNS))
    sp.add_argument("--trials", type=int, default=100)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--n", type=int)
    sp.add_argument("--d", type=int)
    sp.add_argument("--p", type=int, default=DEFAULT_PRIME)
    sp.add_argument("--window", type=int)
    sp.add_argument("--replay-dir")
    return ap


COMMANDS = {
    "reg": cmd_reg,
    "betti": cmd_betti,
    "sheaf-reg": cmd_sheaf_reg,
    "saturate": cmd_saturate,
    "product": cmd_product,
}


def run(argv=None) -> tuple[int, str]:
    """Execute one command; returns (exit code, stdout text).  Errors go into the text."""
    out: list[str] = []
    try:
        args = build_parser().parse_args(argv)
        if args.command == "campaign":
            code = cmd_campaign(args, out)
        else:
            doc = load_document(args.file)
            code = COMMANDS[args.command](doc, args, out)
    except _UsageError as exc:
        return EXIT_USAGE, f"error: {exc}\n"
    except DocumentError as exc:
        return EXIT_USAGE, f"error: {exc}\n"
    except KeyError as exc:
        return EXIT_USAGE, f"error: {exc.args[0]}\n"
    except ValueError as exc:
        return EXIT_USAGE, f"error: {exc}\n"
    return code, "\n".join(out) + "\n"


def main(argv=None) -> int:
    code, text = run(argv)
    (sys.stdout if code != EXIT_USAGE else sys.stderr).write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
