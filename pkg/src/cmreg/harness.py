"""Randomized campaigns checking regularity bounds on hypothesis-satisfying instances.

Every trial draws from a generator seeded by (campaign seed, trial, attempt),
so a configuration reproduces its records exactly.  Draws that violate a
campaign's hypothesis are recorded as ``rejected`` and re-drawn, up to
``max_redraws`` times per trial.
"""

from __future__ import annotations

import logging
import time
from concurrent.futures import Executor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

import numpy as np

from .arrangements import (
    MAX_RETRIES,
    RandomDrawFailure,
    LinearSubspace,
    arrangement_ideal,
    cone_ideal,
    pairwise_intersection_dims,
    points_ideal,
    random_point,
    random_point_on,
    random_subspace,
    subspace_through,
)
from .cohomology import cohomological_regularity, regdef_equivalence_check, sheaf_regularity
from .ideal import Ideal, krull_dim, product, saturate
from .resolution import regularity
from .ring import DEFAULT_PRIME, Polynomial, RingContext, monomials_of_degree

log = logging.getLogger(__name__)

PASS, FAIL, REJECTED = "pass", "fail", "rejected"

# desk-scale caps
MAX_VARS = 6
MAX_COMPONENTS = 5
MAX_DEGREE = 4


@dataclass(frozen=True)
class CampaignConfig:
    campaign: str
    trials: int = 100
    seed: int = 0
    ambient_n: int | None = None
    d: int | None = None
    char_p: int = DEFAULT_PRIME
    window: int | None = None
    max_redraws: int = 20

    def __post_init__(self):
        if self.campaign not in CAMPAIGNS:
            raise ValueError(f"unknown campaign {self.campaign!r}; choose from {', '.join(CAMPAIGNS)}")
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        if self.ambient_n is not None and not 1 <= self.ambient_n <= MAX_VARS - 1:
            raise ValueError(f"ambient dimension must lie in 1..{MAX_VARS - 1}")
        if self.d is not None and not 1 <= self.d <= MAX_COMPONENTS:
            raise ValueError(f"d must lie in 1..{MAX_COMPONENTS}")


@dataclass
class TrialRecord:
    campaign: str
    trial: int
    attempt: int
    verdict: str
    ambient_n: int
    instance: dict[str, list[str]]
    quantities: dict[str, object] = field(default_factory=dict)
    note: str = ""
    wall_time: float = field(default=0.0, compare=False)

    def line(self) -> str:
        q = " ".join(f"{k}={_fmt(v)}" for k, v in self.quantities.items())
        tail = f" note={self.note}" if self.note else ""
        return f"trial={self.trial} attempt={self.attempt} verdict={self.verdict} n={self.ambient_n} {q}{tail}".rstrip()

    def replay_text(self, char_p: int) -> str:
        """The instance as an input document the CLI can rerun."""
        lines = [
            f"# campaign {self.campaign} trial {self.trial} attempt {self.attempt}: {self.verdict}",
            f"ring {self.ambient_n + 1} {char_p}",
        ]
        for name, gens in self.instance.items():
            lines.append(f"ideal {name}")
            lines.extend(gens)
            lines.append("end")
        return "\n".join(lines) + "\n"


def _fmt(v) -> str:
    if isinstance(v, (list, tuple)):
        return "[" + ",".join(_fmt(x) for x in v) + "]"
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


@dataclass
class CampaignResult:
    config: CampaignConfig
    records: list[TrialRecord]

    def count(self, verdict: str) -> int:
        return sum(r.verdict == verdict for r in self.records)

    @property
    def accepted(self) -> int:
        return self.count(PASS) + self.count(FAIL)

    @property
    def ok(self) -> bool:
        return self.count(FAIL) == 0 and self.accepted > 0

    def failures(self) -> list[TrialRecord]:
        return [r for r in self.records if r.verdict == FAIL]

    def report(self) -> str:
        cfg = self.config
        out = [r.line() for r in self.records]
        out += [
            f"campaign={cfg.campaign}",
            f"seed={cfg.seed}",
            f"trials={cfg.trials}",
            f"char_p={cfg.char_p}",
            f"accepted={self.accepted}",
            f"passed={self.count(PASS)}",
            f"failed={self.count(FAIL)}",
            f"rejected={self.count(REJECTED)}",
            f"status={'PASS' if self.ok else 'FAIL'}",
        ]
        return "\n".join(out) + "\n"

    def write_replays(self, directory: Path) -> list[Path]:
        paths = []
        for r in self.failures():
            directory.mkdir(parents=True, exist_ok=True)
            path = directory / f"{r.campaign}-seed{self.config.seed}-trial{r.trial}-attempt{r.attempt}.ring"
            path.write_text(r.replay_text(self.config.char_p))
            paths.append(path)
        return paths


class Rejected(Exception):
    """The drawn instance does not satisfy the campaign hypothesis."""

    def __init__(self, reason: str, instance: dict, ambient_n: int):
        super().__init__(reason)
        self.instance = instance
        self.ambient_n = ambient_n


def _gens(I: Ideal) -> list[str]:
    return [str(g) for g in I.generators] or ["0"]


def _trial_rng(cfg: CampaignConfig, trial: int, attempt: int) -> np.random.Generator:
    return np.random.default_rng([cfg.seed, trial, attempt])


def _cross_checked(cfg: CampaignConfig, trial: int) -> bool:
    # seed-selected tenth of the trials
    return (cfg.seed + trial) % 10 == 0


def _run_trials(cfg: CampaignConfig, body: Callable, n_trials: int, executor: Executor | None = None) -> CampaignResult:
    def one(trial: int) -> list[TrialRecord]:
        recs = []
        for attempt in range(cfg.max_redraws):
            t0 = time.perf_counter()
            rng = _trial_rng(cfg, trial, attempt)
            try:
                rec = body(cfg, trial, attempt, rng)
            except Rejected as exc:
                recs.append(
                    TrialRecord(cfg.campaign, trial, attempt, REJECTED, exc.ambient_n, exc.instance, note=str(exc).replace(" ", "_"))
                )
                recs[-1].wall_time = time.perf_counter() - t0
                continue
            rec.wall_time = time.perf_counter() - t0
            recs.append(rec)
            break
        return recs

    if executor is None:
        chunks = [one(t) for t in range(n_trials)]
    else:
        chunks = list(executor.map(one, range(n_trials)))
    records = [r for chunk in chunks for r in chunk]
    for r in records:
        if r.verdict == FAIL:
            log.warning("campaign %s trial %d failed: %s", cfg.campaign, r.trial, r.line())
    return CampaignResult(cfg, records)


# ------------------------------------------------------------ instance families


def _random_form(ctx: RingContext, degree: int, rng: np.random.Generator) -> Polynomial:
    monos = monomials_of_degree(ctx.num_vars, degree)
    coeffs = rng.integers(0, ctx.char_p, size=len(monos))
    return Polynomial(ctx, {m: int(c) for m, c in zip(monos, coeffs)})


def random_points_ideal(ctx: RingContext, count: int, rng) -> Ideal:
    # coincident draws only matter for small p; redraw the whole set
    for _ in range(MAX_RETRIES):
        try:
            return points_ideal([random_point(ctx, rng) for _ in range(count)], ctx)
        except ValueError:
            continue
    raise RandomDrawFailure(f"could not draw {count} distinct points")


def random_complete_intersection(ctx: RingContext, degrees, rng) -> Ideal:
    return Ideal(ctx, [_random_form(ctx, d, rng) for d in degrees])


def random_monomial_ideal(ctx: RingContext, count: int, max_degree: int, rng) -> Ideal:
    """Monomials each supported on at most two variables."""
    gens = []
    nv = ctx.num_vars
    for _ in range(count):
        deg = int(rng.integers(1, max_degree + 1))
        support = rng.choice(nv, size=min(2, nv), replace=False)
        split = int(rng.integers(0, deg + 1))
        e = [0] * nv
        e[int(support[0])] += split
        e[int(support[-1])] += deg - split
        gens.append(ctx.monomial(e))
    return Ideal(ctx, gens)


def _draw_factor(ctx: RingContext, family: str, rng) -> Ideal:
    n = ctx.ambient_n
    if family == "points":
        return random_points_ideal(ctx, int(rng.integers(1, 6)), rng)
    if family == "ci":
        c = int(rng.integers(max(n - 1, 1), n + 1))
        degs = [int(rng.integers(1, 4)) for _ in range(c)]
        return random_complete_intersection(ctx, degs, rng)
    return random_monomial_ideal(ctx, int(rng.integers(1, 5)), MAX_DEGREE, rng)


# ------------------------------------------------------------ campaigns


def check_product(I: Ideal, J: Ideal, cross_check: bool = False) -> tuple[str, dict]:
    """Verdict and quantities for reg(I·J) <= reg(I) + reg(J) on one pair.

    Pairs whose schemes meet in positive dimension are ``rejected``.  With
    ``cross_check`` the regularity of I·J is recomputed from cohomology.
    """
    meet = krull_dim(I + J)
    q: dict = {"dim_meet": max(meet - 1, -1)}
    if meet > 1:
        return REJECTED, q
    IJ = product(I, J)
    r_i, r_j, r_ij = regularity(I), regularity(J), regularity(IJ)
    q.update(reg_I=r_i, reg_J=r_j, reg_IJ=r_ij)
    verdict = PASS if r_ij <= r_i + r_j else FAIL
    if cross_check:
        c_ij = cohomological_regularity(IJ)
        q["coh_reg_IJ"] = c_ij
        if c_ij != r_ij:
            verdict = FAIL
    return verdict, q


def _thm_prod_body(cfg, trial, attempt, rng):
    n = cfg.ambient_n if cfg.ambient_n is not None else 2 + (trial % 2)
    ctx = RingContext(n + 1, cfg.char_p)
    if rng.random() < 0.5:
        fam_i, fam_j = (str(f) for f in rng.choice(["points", "ci"], size=2))
    else:
        fam_i = fam_j = "monomial"
    I = _draw_factor(ctx, fam_i, rng)
    J = _draw_factor(ctx, fam_j, rng)
    instance = {"I": _gens(I), "J": _gens(J)}
    verdict, q = check_product(I, J, _cross_checked(cfg, trial))
    if verdict == REJECTED:
        raise Rejected(f"schemes meet in dimension {q['dim_meet']}", instance, n)
    instance["IJ"] = _gens(product(I, J))
    q = {"family": f"{fam_i}/{fam_j}", **q}
    return TrialRecord(cfg.campaign, trial, attempt, verdict, n, instance, q)


def campaign_thm_prod(cfg: CampaignConfig, executor: Executor | None = None) -> CampaignResult:
    """reg(I·J) <= reg(I) + reg(J) when the schemes of I and J meet in finitely many points."""
    _expect(cfg, "thm-prod")
    return _run_trials(cfg, _thm_prod_body, cfg.trials, executor)


def _arrangement_trial(cfg, trial, attempt, subspaces: list[LinearSubspace], hypothesis, extra=None):
    n = subspaces[0].ambient_n
    dims = pairwise_intersection_dims(subspaces)
    instance = {f"X{k}": [str(f) for f in L.forms] for k, L in enumerate(subspaces)}
    ok, reason = hypothesis(dims)
    if not ok:
        raise Rejected(reason, instance, n)
    A = arrangement_ideal(subspaces)
    instance["union"] = _gens(A)
    d = len(subspaces)
    s_reg = sheaf_regularity(A)
    q = {"d": d, "dims": [L.dim for L in subspaces], "sheaf_reg": s_reg, "bound": d}
    q.update(extra or {})
    verdict = PASS if s_reg <= d else FAIL
    if _cross_checked(cfg, trial):
        b_reg = regularity(A)
        q["betti_reg"] = b_reg
        if b_reg != s_reg:
            verdict = FAIL
    return TrialRecord(cfg.campaign, trial, attempt, verdict, n, instance, q)


def _pairs(dims):
    d = len(dims)
    return [dims[i][j] for i in range(d) for j in range(i + 1, d)]


def _disjoint_union_body(cfg, trial, attempt, rng):
    n = cfg.ambient_n if cfg.ambient_n is not None else 2 + (trial % 3)
    d = cfg.d if cfg.d is not None else int(rng.integers(1, 5))
    subs, top = [], 0
    for _ in range(d):
        dim = int(rng.integers(0, n - top)) if subs else int(rng.integers(0, n))
        subs.append(random_subspace(n, dim, rng, cfg.char_p))
        top = max(top, dim)

    def hyp(dims):
        bad = [x for x in _pairs(dims) if x >= 0]
        return (not bad, "members_intersect")

    return _arrangement_trial(cfg, trial, attempt, subs, hyp)


def campaign_disjoint_union(cfg: CampaignConfig, executor: Executor | None = None) -> CampaignResult:
    """d pairwise disjoint linear spaces: the ideal sheaf of the union is d-regular."""
    _expect(cfg, "disjoint-union")
    return _run_trials(cfg, _disjoint_union_body, cfg.trials, executor)


def _lines_body(cfg, trial, attempt, rng):
    n = cfg.ambient_n if cfg.ambient_n is not None else 3
    d = cfg.d if cfg.d is not None else int(rng.integers(1, 5))
    ctx = RingContext(n + 1, cfg.char_p)
    lines: list[LinearSubspace] = []
    meeting = 0
    for _ in range(d):
        if lines and rng.random() < 0.5:
            anchor = lines[int(rng.integers(0, len(lines)))]
            pts = [random_point_on(anchor, rng), random_point(ctx, rng)]
            meeting += 1
        else:
            pts = [random_point(ctx, rng), random_point(ctx, rng)]
        try:
            lines.append(subspace_through(pts, ctx))
        except ValueError:
            raise Rejected("degenerate_line", {}, n)

    def hyp(dims):
        if any(x > 0 for x in _pairs(dims)):
            return False, "repeated_line"
        return True, ""

    return _arrangement_trial(cfg, trial, attempt, lines, hyp, {"forced_meetings": meeting})


def campaign_lines(cfg: CampaignConfig, executor: Executor | None = None) -> CampaignResult:
    """d lines meeting at most in points: the ideal sheaf of the union is d-regular."""
    _expect(cfg, "lines")
    return _run_trials(cfg, _lines_body, cfg.trials, executor)


def _two_planes_body(cfg, trial, attempt, rng):
    n = cfg.ambient_n if cfg.ambient_n is not None else 3 + (trial % 3)
    d = cfg.d if cfg.d is not None else int(rng.integers(1, 4))
    if n < 3:
        raise ValueError("2-planes need an ambient P^n with n >= 3")
    ctx = RingContext(n + 1, cfg.char_p)
    planes: list[LinearSubspace] = []
    for _ in range(d):
        mode = int(rng.integers(0, 3)) if planes else 0
        if mode == 0:
            pts = [random_point(ctx, rng) for _ in range(3)]
        else:
            anchor = planes[int(rng.integers(0, len(planes)))]
            shared = [random_point_on(anchor, rng) for _ in range(mode)]
            pts = shared + [random_point(ctx, rng) for _ in range(3 - mode)]
        try:
            planes.append(subspace_through(pts, ctx))
        except ValueError:
            raise Rejected("degenerate_plane", {}, n)

    def hyp(dims):
        if any(x > 1 for x in _pairs(dims)):
            return False, "repeated_plane"
        return True, ""

    return _arrangement_trial(cfg, trial, attempt, planes, hyp)


def campaign_two_planes(cfg: CampaignConfig, executor: Executor | None = None) -> CampaignResult:
    """d 2-planes (pairwise intersections of dimension at most one) are d-regular."""
    _expect(cfg, "two-planes")
    return _run_trials(cfg, _two_planes_body, cfg.trials, executor)


# ------------------------------------------------------------ corpus campaigns


def corpus(seed: int = 0, char_p: int = DEFAULT_PRIME) -> list[tuple[str, Ideal]]:
    """The fixed twelve-ideal corpus; random point sets are drawn from ``seed``."""
    P2 = RingContext(3, char_p)
    P3 = RingContext(4, char_p)
    rng = np.random.default_rng([seed, 12])
    out = [
        ("principal_cubic", Ideal.from_strings(P2, ["x0^3 + x1*x2^2"])),
        ("koszul_P3", Ideal(P3, P3.gens())),
        ("two_points", Ideal.from_strings(P2, ["x2", "x0*x1"])),
        ("twisted_cubic", Ideal.from_strings(P3, ["x0*x2 - x1^2", "x0*x3 - x1*x2", "x1*x3 - x2^2"])),
    ]
    for k in range(2, 6):
        out.append((f"random_points_{k}", random_points_ideal(P2, k, rng)))
    out += [
        ("disjoint_lines", Ideal.from_strings(P3, ["x0*x2", "x0*x3", "x1*x2", "x1*x3"])),
        ("non_saturated", Ideal.from_strings(P2, ["x0^2", "x0*x1", "x0*x2"])),
        ("unit", Ideal.unit(P2)),
        ("two_conics", Ideal.from_strings(P2, ["x0^2 - x1*x2", "x1^2 - x0*x2"])),
    ]
    return out


def _corpus_for(cfg):
    items = corpus(cfg.seed, cfg.char_p)
    return items[: min(cfg.trials, len(items))]


def campaign_cone(cfg: CampaignConfig, executor: Executor | None = None) -> CampaignResult:
    """sheaf_regularity(cone(I, m)) == sheaf_regularity(I) for m in {1, 2}."""
    _expect(cfg, "cone")
    items = _corpus_for(cfg)

    def body(cfg, trial, attempt, rng):
        name, I = items[trial]
        base = sheaf_regularity(I)
        # cone over the scheme: the saturated ideal defines the same sheaf
        S = saturate(I)
        cones = [sheaf_regularity(cone_ideal(S, m)) for m in (1, 2)]
        verdict = PASS if all(c == base for c in cones) else FAIL
        q = {"ideal": name, "sheaf_reg": base, "cone_regs": cones}
        return TrialRecord(cfg.campaign, trial, attempt, verdict, I.ctx.ambient_n, {name: _gens(I)}, q)

    return _run_trials(cfg, body, len(items), executor)


def campaign_regdef(cfg: CampaignConfig, executor: Executor | None = None) -> CampaignResult:
    """The three characterisations of m-regularity agree for m in [reg-1, reg+2]."""
    _expect(cfg, "regdef")
    items = _corpus_for(cfg)

    def body(cfg, trial, attempt, rng):
        name, I = items[trial]
        r = int(regularity(I))
        verdicts = []
        agree = True
        for m in range(r - 1, r + 3):
            rep = regdef_equivalence_check(I, m, cfg.window)
            verdicts.append("".join("T" if v else "F" for v in (rep.a, rep.b, rep.c)))
            agree &= rep.agree
        q = {"ideal": name, "reg": r, "m_from": r - 1, "abc": verdicts}
        return TrialRecord(cfg.campaign, trial, attempt, PASS if agree else FAIL, I.ctx.ambient_n, {name: _gens(I)}, q)

    return _run_trials(cfg, body, len(items), executor)


def _expect(cfg: CampaignConfig, name: str):
    if cfg.campaign != name:
        raise ValueError(f"config is for campaign {cfg.campaign!r}, not {name!r}")


CAMPAIGNS: dict[str, Callable] = {
    "thm-prod": campaign_thm_prod,
    "disjoint-union": campaign_disjoint_union,
    "lines": campaign_lines,
    "two-planes": campaign_two_planes,
    "cone": campaign_cone,
    "regdef": campaign_regdef,
}


def run_campaign(cfg: CampaignConfig, executor: Executor | None = None) -> CampaignResult:
    return CAMPAIGNS[cfg.campaign](cfg, executor)
