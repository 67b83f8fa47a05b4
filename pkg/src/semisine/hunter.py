"""Numeric search for solutions of the sine and sine-subtraction laws.

Every trial is a damped Gauss-Newton run on the bilinear residual system

    r_xy(f, g) = f(x y z0) - f(x) g(y) -+ f(y) g(x)     (n^2 equations)
    l(f, g) - 1                                       (one slice equation)

in the 2n complex unknowns.  The residuals are holomorphic, so the complex
Jacobian carries the full real Jacobian on 4n real unknowns.  Steps use the
pseudo-inverse of the Jacobian (the system is underdetermined on the
positive-dimensional solution components) and a backtracking line search on
the squared residual.  All trials run batched in numpy.

Some solution components are singular (non-reduced): there the residual
vanishes to fourth order, so a double-precision root can sit 1e-6 away from
the true one with residual already at rounding level.  A point that does not
classify is therefore refined once more in extended precision (mpmath) with
the same iteration before it is reported as unclassified.
"""
from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field

import mpmath
import numpy as np

from .classify import Classification, classify_solution, classify_subtraction
from .semigroup import Semigroup
from .verifier import CFunc

log = logging.getLogger(__name__)

EQUATIONS = ("sine", "subtraction")


@dataclass(frozen=True)
class HuntConfig:
    trials: int = 200
    tol_converge: float = 1e-6
    tol_dedupe: float = 1e-6
    seed: int = 0
    max_iters: int = 200
    normalization: str = "random-affine"   # or "g-sum": sum of g equals 1
    tol_classify: float = 1e-6
    refine: bool = True
    refine_dps: int = 60
    refine_iters: int = 200

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if min(self.tol_converge, self.tol_dedupe, self.tol_classify) <= 0:
            raise ValueError("tolerances must be positive")
        if self.normalization not in ("random-affine", "g-sum"):
            raise ValueError(f"unknown normalization {self.normalization!r}")


@dataclass
class NumericSolution:
    f: np.ndarray
    g: np.ndarray
    residual: float
    trial: int
    refined: tuple[np.ndarray, np.ndarray] | None = field(default=None, repr=False)
    refine_done: bool = field(default=False, repr=False)

    def cfuncs(self, refined: bool = False) -> tuple[CFunc, CFunc]:
        f, g = self.refined if refined and self.refined is not None else (self.f, self.g)
        return CFunc(tuple(complex(v) for v in f), False), CFunc(tuple(complex(v) for v in g), False)


@dataclass
class HuntResult:
    semigroup: Semigroup
    z0: int
    equation: str
    config: HuntConfig
    solutions: list[NumericSolution] = field(default_factory=list)
    classifications: list[Classification] = field(default_factory=list)
    unclassified: list[NumericSolution] = field(default_factory=list)
    stats: dict = field(default_factory=dict)
    ell: np.ndarray | None = field(default=None, repr=False)

    def tags(self) -> Counter:
        return Counter(str(c) for c in self.classifications)

    def reclassify(self, disabled=()) -> HuntResult:
        """Same solutions run through a classifier with families removed."""
        out = HuntResult(self.semigroup, self.z0, self.equation, self.config, list(self.solutions),
                         stats=dict(self.stats), ell=self.ell)
        _classify_all(out, disabled)
        return out


def _index_arrays(S: Semigroup, z: int):
    t = np.array(S.table)
    n = S.order
    X, Y = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
    X, Y = X.ravel(), Y.ravel()
    M = t[t[X, Y], z]
    eye = np.eye(n)
    return X, Y, M, eye[X], eye[Y], eye[M]


class _System:
    def __init__(self, S: Semigroup, z: int, sign: float, ell: np.ndarray):
        self.n = S.order
        self.X, self.Y, self.M, self.EX, self.EY, self.EM = _index_arrays(S, z)
        self.sign = sign
        self.ell = ell

    def residual(self, u: np.ndarray) -> np.ndarray:
        n = self.n
        f, g = u[:, :n], u[:, n:]
        r = f[:, self.M] - f[:, self.X] * g[:, self.Y] - self.sign * f[:, self.Y] * g[:, self.X]
        slice_ = u @ self.ell - 1.0
        return np.concatenate([r, slice_[:, None]], axis=1)

    def jacobian(self, u: np.ndarray) -> np.ndarray:
        n, s = self.n, self.sign
        f, g = u[:, :n], u[:, n:]
        gX, gY = g[:, self.X, None], g[:, self.Y, None]
        fX, fY = f[:, self.X, None], f[:, self.Y, None]
        Jf = self.EM[None] - self.EX[None] * gY - s * self.EY[None] * gX
        Jg = -fX * self.EY[None] - s * fY * self.EX[None]
        J = np.concatenate([Jf, Jg], axis=2)
        row = np.broadcast_to(self.ell, (u.shape[0], 1, 2 * n))
        return np.concatenate([J, row], axis=1)


def _cost(r):
    return np.sum(np.abs(r) ** 2, axis=1)


def _newton(sys_: _System, u: np.ndarray, cfg: HuntConfig) -> tuple[np.ndarray, np.ndarray]:
    r = sys_.residual(u)
    cost = _cost(r)
    done = np.zeros(len(u), dtype=bool)
    for _ in range(cfg.max_iters):
        # polish until the line search stalls: singular roots converge
        # only linearly and sit at distance ~ sqrt(residual)
        done |= cost == 0.0
        live = ~done
        if not live.any():
            break
        J = sys_.jacobian(u[live])
        step = -np.einsum("tij,tj->ti", np.linalg.pinv(J, rcond=1e-12), r[live])
        alpha = np.ones(live.sum())
        ul, cl = u[live], cost[live]
        accepted = np.zeros(live.sum(), dtype=bool)
        new_u, new_r, new_c = ul.copy(), r[live].copy(), cl.copy()
        for _ in range(30):
            pending = ~accepted
            if not pending.any():
                break
            trial = ul[pending] + alpha[pending, None] * step[pending]
            tr = sys_.residual(trial)
            tc = _cost(tr)
            ok = tc < cl[pending] * (1 - 1e-4 * alpha[pending])
            idx = np.flatnonzero(pending)[ok]
            new_u[idx], new_r[idx], new_c[idx] = trial[ok], tr[ok], tc[ok]
            accepted[idx] = True
            alpha[pending] *= 0.5
        stalled = ~accepted
        li = np.flatnonzero(live)
        u[li], r[li], cost[li] = new_u, new_r, new_c
        done[li[stalled]] = True
    return u, r


def _starts(rng: np.random.Generator, trials: int, n: int) -> np.ndarray:
    # uniform on the unit disk
    rad = np.sqrt(rng.random((trials, 2 * n)))
    ang = rng.random((trials, 2 * n)) * 2 * np.pi
    return rad * np.exp(1j * ang)


def _functional(rng: np.random.Generator, n: int, normalization: str) -> np.ndarray:
    if normalization == "g-sum":
        return np.concatenate([np.zeros(n), np.ones(n)]).astype(complex)
    return rng.standard_normal(2 * n) + 1j * rng.standard_normal(2 * n)


def _project_on_slice(u: np.ndarray, ell: np.ndarray, n: int) -> np.ndarray:
    """Move each start onto the slice by correcting its g block only."""
    lg = ell[n:]
    gap = 1.0 - u @ ell
    u = u.copy()
    u[:, n:] += gap[:, None] * np.conj(lg)[None] / np.vdot(lg, lg).real
    return u


def _canonical(f: np.ndarray, g: np.ndarray, phase: np.ndarray, subtraction: bool):
    """Representative of (f, g) modulo the scalings the equation allows.

    Both laws are linear in f, so f is taken up to a nonzero factor; the
    subtraction law is also invariant under g -> g + c f.
    """
    nf = np.linalg.norm(f)
    if nf == 0:
        return f, g
    fn = f / nf
    if subtraction:
        g = g - np.vdot(fn, g) * fn
    w = np.vdot(phase, fn)
    if abs(w) > 1e-9:
        fn = fn * (abs(w) / w)
    return fn, g


def _dedupe(sols: list[NumericSolution], cfg: HuntConfig, phase: np.ndarray, subtraction: bool):
    reps: list[np.ndarray] = []
    kept = []
    for s in sols:
        fn, g = _canonical(s.f, s.g, phase, subtraction)
        v = np.concatenate([fn, g])
        if np.linalg.norm(s.f) <= cfg.tol_dedupe * max(1.0, np.linalg.norm(s.g)):
            # f = 0 leaves g free: one component, one representative
            v = np.zeros_like(v)
        if any(np.linalg.norm(v - w) <= cfg.tol_dedupe * max(1.0, np.linalg.norm(w)) for w in reps):
            continue
        reps.append(v)
        kept.append(s)
    return kept


class _Refiner:
    """Levenberg-damped Gauss-Newton on the same system at ``dps`` digits.

    Runs in chunks so the caller can stop as soon as the point classifies.
    """

    def __init__(self, S: Semigroup, z: int, equation: str, sol: NumericSolution, ell, dps: int):
        self.sign = 1 if equation == "sine" else -1
        self.n = S.order
        t = S.table
        self.pairs = [(x, y, t[t[x][y]][z]) for x in S.elements for y in S.elements]
        self.dps = dps
        with mpmath.workdps(dps):
            self.u = [mpmath.mpc(complex(v)) for v in np.concatenate([sol.f, sol.g])]
            self.L = [mpmath.mpc(complex(v)) for v in ell]
        self.converged = False

    def _residual(self, u):
        n, s = self.n, self.sign
        F, G = u[:n], u[n:]
        out = [F[m] - F[x] * G[y] - s * F[y] * G[x] for x, y, m in self.pairs]
        out.append(mpmath.fsum(a * b for a, b in zip(self.L, u)) - 1)
        return out

    def run(self, iters: int) -> tuple[np.ndarray, np.ndarray]:
        n, s = self.n, self.sign
        with mpmath.workdps(self.dps):
            mu = mpmath.mpf(10) ** (-(3 * self.dps) // 4)
            stop = mpmath.mpf(10) ** (-self.dps + 5)
            u = self.u
            for _ in range(iters):
                R = self._residual(u)
                if max(abs(v) for v in R) < stop:
                    self.converged = True
                    break
                F, G = u[:n], u[n:]
                J = mpmath.zeros(len(R), 2 * n)
                for i, (x, y, m) in enumerate(self.pairs):
                    J[i, m] += 1
                    J[i, x] -= G[y]
                    J[i, y] -= s * G[x]
                    J[i, n + y] -= F[x]
                    J[i, n + x] -= s * F[y]
                for k in range(2 * n):
                    J[len(self.pairs), k] = self.L[k]
                JH = J.H
                A = JH * J
                for k in range(2 * n):
                    A[k, k] += mu
                d = mpmath.lu_solve(A, JH * mpmath.matrix(R))
                u = [u[k] - d[k] for k in range(2 * n)]
            self.u = u
            out = np.array([complex(v) for v in u])
        return out[:n], out[n:]


def refine(S: Semigroup, z: int, equation: str, sol: NumericSolution, ell, dps: int = 60,
           iters: int = 200) -> tuple[np.ndarray, np.ndarray]:
    """Extended-precision polish of one numeric root."""
    return _Refiner(S, z, equation, sol, ell, dps).run(iters)


def _classify_one(res: HuntResult, s: NumericSolution, disabled, refined: bool):
    S, z = res.semigroup, res.z0
    f, g = s.cfuncs(refined)
    if res.equation == "sine":
        return classify_solution(S, z, f, g, tol=res.config.tol_classify, disabled=disabled)
    return classify_subtraction(S, z, f, g, tol=res.config.tol_classify)


def _classify_all(res: HuntResult, disabled=()):
    res.classifications, res.unclassified = [], []
    cfg = res.config
    for s in res.solutions:
        c = _classify_one(res, s, disabled, False)
        if not c.classified and cfg.refine and res.ell is not None:
            c = _refine_and_classify(res, s, disabled)
        res.classifications.append(c)
        if not c.classified:
            res.unclassified.append(s)


_CHUNK = 15


def _refine_and_classify(res: HuntResult, s: NumericSolution, disabled):
    cfg = res.config
    scale = max(1.0, float(np.max(np.abs(np.concatenate([s.f, s.g])))))

    def attempt():
        shift = np.max(np.abs(np.concatenate([s.refined[0] - s.f, s.refined[1] - s.g])))
        # the refined point must stay a local correction of the found root
        if shift > 1e-3 * scale:
            return None
        c = _classify_one(res, s, disabled, True)
        return c if c.classified else None

    if s.refined is not None and s.refine_done:
        return attempt() or Classification(None)
    runner = _Refiner(res.semigroup, res.z0, res.equation, s, res.ell, cfg.refine_dps)
    done = 0
    while done < cfg.refine_iters:
        step = min(_CHUNK, cfg.refine_iters - done)
        s.refined = runner.run(step)
        done += step
        c = attempt()
        if c is not None or runner.converged:
            break
    s.refine_done = True
    return c or Classification(None)


def hunt(S: Semigroup, z0, equation: str = "sine", cfg: HuntConfig | None = None,
         disabled=()) -> HuntResult:
    """Random-restart Newton search; every converged point is classified."""
    cfg = cfg or HuntConfig()
    if equation not in EQUATIONS:
        raise ValueError(f"equation must be one of {EQUATIONS}")
    z = S.index(z0)
    n = S.order
    rng = np.random.default_rng(cfg.seed)
    ell = _functional(rng, n, cfg.normalization)
    phase = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    u0 = _project_on_slice(_starts(rng, cfg.trials, n), ell, n)
    sys_ = _System(S, z, 1.0 if equation == "sine" else -1.0, ell)
    u, r = _newton(sys_, u0, cfg)
    eq_res = np.max(np.abs(r[:, :-1]), axis=1)
    ok = np.flatnonzero(eq_res <= cfg.tol_converge)
    sols = [NumericSolution(u[k, :n].copy(), u[k, n:].copy(), float(eq_res[k]), int(k)) for k in ok]
    res = HuntResult(S, z, equation, cfg, ell=ell)
    res.solutions = _dedupe(sols, cfg, phase, equation == "subtraction")
    res.stats = {"trials": cfg.trials, "converged": len(sols), "distinct": len(res.solutions),
                 "max_residual": float(max((s.residual for s in sols), default=0.0))}
    _classify_all(res, disabled)
    log.debug("hunt %s z0=%s: %s", S.name, S.labels[z], res.stats)
    return res


def solve_trial(S: Semigroup, z0, f0, g0, equation: str = "sine", cfg: HuntConfig | None = None,
                ell=None) -> NumericSolution | None:
    """One Newton run from an explicit start (used for the zero-start check)."""
    cfg = cfg or HuntConfig(trials=1)
    n = S.order
    z = S.index(z0)
    rng = np.random.default_rng(cfg.seed)
    ell = _functional(rng, n, cfg.normalization) if ell is None else np.asarray(ell, dtype=complex)
    u0 = _project_on_slice(np.concatenate([np.asarray(f0, complex), np.asarray(g0, complex)])[None], ell, n)
    sys_ = _System(S, z, 1.0 if equation == "sine" else -1.0, ell)
    u, r = _newton(sys_, u0, cfg)
    res = float(np.max(np.abs(r[0, :-1])))
    if res > cfg.tol_converge:
        return None
    return NumericSolution(u[0, :n], u[0, n:], res, 0)


@dataclass
class CompletenessReport:
    semigroup: str
    z0: str
    equation: str
    counts: dict
    catalog_families: tuple
    unclassified: int
    trials: int
    converged: int

    @property
    def passed(self) -> bool:
        return self.unclassified == 0

    def lines(self) -> list[str]:
        head = (f"{self.semigroup} z0={self.z0} {self.equation}: trials={self.trials} "
                f"converged={self.converged} distinct={sum(self.counts.values())}")
        tab = "  ".join(f"{k}:{v}" for k, v in sorted(self.counts.items()))
        verdict = "ok" if self.passed else f"RED: {self.unclassified} unclassified"
        fams = ",".join(self.catalog_families) or "-"
        return [head, f"  found  {tab}", f"  exact families present: {fams}", f"  {verdict}"]


def completeness_report(S: Semigroup, z0, result: HuntResult, catalog=None) -> CompletenessReport:
    """Cross-tabulate hunt findings against the exact family catalog."""
    fams = tuple(sorted({w.family for w in catalog})) if catalog is not None else ()
    return CompletenessReport(S.name, S.labels[S.index(z0)], result.equation, dict(result.tags()),
                              fams, len(result.unclassified), result.stats.get("trials", 0),
                              result.stats.get("converged", 0))
