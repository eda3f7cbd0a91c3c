"""Acceptance suite: one test per criterion, each checked against an independent oracle."""

import random
import subprocess
import sys
import time
from itertools import product
from math import prod
from pathlib import Path

import sympy
from sympy.matrices.normalforms import hermite_normal_form

from logiwasawa import (
    ElementaryModule,
    ExtensionPoint,
    LambdaSeries,
    LocalStep,
    TowerConfig,
    compose,
    cyclotomic_isolation,
    fit,
    growth_sequence,
    greenberg_ball,
    intersection_level,
    invariant_map,
    invariants,
    kleine_neighborhood,
    log_indices,
    primitive_classes,
    quotient_order_exponent,
    ramified_primes,
    validate_away_from_ell,
    weierstrass_prepare,
)
from logiwasawa.errors import InfiniteQuotient, NoEventualFit
from logiwasawa.extensions import PrimeData
from logiwasawa.fitting import ExponentSequence
from logiwasawa.ramification import composite_step
from logiwasawa.scenario import Scenario
from logiwasawa.structure import stable_onset

GOLDEN = Path(__file__).parent / "golden"
_T = sympy.Symbol("T")


def _report(k, ok, detail=""):
    print(f"criterion {k}: {'PASS' if ok else 'FAIL'} {detail}".rstrip())


def _vl(x, ell):
    if x == 0:
        return None
    v = 0
    while x % ell == 0:
        x //= ell
        v += 1
    return v


# 1. Weierstrass round trip ------------------------------------------------

def _random_series(rng, ell, N, D):
    mu = rng.choice([0, 0, 1, 2, 3])
    lam = rng.randrange(0, 8)
    coeffs = [rng.randrange(ell**N) for _ in range(D + 1)]
    for i in range(min(lam, D + 1)):
        coeffs[i] = ell * rng.randrange(ell ** (N - 1))
    if lam <= D:
        coeffs[lam] = rng.randrange(1, ell**N)
        while coeffs[lam] % ell == 0:
            coeffs[lam] = rng.randrange(1, ell**N)
    return [c * ell**mu % ell**N for c in coeffs]


def _poly_mul_trunc(a, b, D, m):
    out = [0] * (D + 1)
    for i, x in enumerate(a):
        if i > D:
            break
        for j, y in enumerate(b[: D + 1 - i]):
            out[i + j] += x * y
    return [c % m for c in out]


def test_criterion_1_weierstrass_round_trip():
    rng = random.Random(20261015)
    N, D = 16, 32
    failures = []
    start = time.perf_counter()
    for ell in (2, 3, 5):
        for trial in range(200):
            coeffs = _random_series(rng, ell, N, D)
            f = LambdaSeries(ell, coeffs, N, D)
            prep = weierstrass_prepare(f)
            P = list(prep.poly.coeffs)
            U = [int(c) for c in prep.unit.coeffs]
            ok = (
                P[-1] == 1
                and all(c % ell == 0 for c in P[:-1])
                and U[0] % ell != 0
                and prep.precision == N - prep.mu
            )
            # independent re-multiplication on plain integers
            prod_ = _poly_mul_trunc(P, U, D, ell**N)
            ok = ok and [c * ell**prep.mu % ell**N for c in prod_] == [c % ell**N for c in coeffs]
            ok = ok and prep.recombine() == f
            if not ok:
                failures.append((ell, trial))
    elapsed = time.perf_counter() - start
    _report(1, not failures and elapsed < 10, f"({len(failures)} failures, {elapsed:.2f}s)")
    assert not failures
    assert elapsed < 10


# 2. Growth law ------------------------------------------------------------

def _random_module(rng, ell):
    mus = [rng.randint(1, 3) for _ in range(rng.randint(0, 3))]
    parts = []
    for _ in range(rng.randint(0, 3)):
        deg = rng.randint(1, 4)
        low = [ell * rng.randrange(ell**3) for _ in range(deg)]
        while low[0] == 0:
            low[0] = ell * rng.randrange(1, ell**3)
        parts.append(low + [1])
    return ElementaryModule(ell, mus, parts)


def _omega_mod(P, n, ell):
    return sympy.rem(sympy.expand((1 + _T) ** (ell**n) - 1), sympy.Poly(list(reversed(P)), _T).as_expr(), _T)


def _order_exponent_oracle(P, n, ell):
    """v_l |Z[T]/(P) / omega_n Z[T]/(P)| by Hermite row reduction (sympy).

    The integral quotient also carries prime-to-l torsion; only its l-part
    survives after tensoring with Z_l.
    """
    Pe = sympy.Poly(list(reversed(P)), _T)
    k = Pe.degree()
    w = _omega_mod(P, n, ell)
    cols = []
    for i in range(k):
        r = sympy.Poly(sympy.rem(sympy.expand(w * _T**i), Pe.as_expr(), _T), _T)
        c = list(reversed(r.all_coeffs())) if not r.is_zero else []
        cols.append([int(x) for x in c] + [0] * (k - len(c)))
    M = sympy.Matrix(cols).T
    if M.det() == 0:
        return None
    H = hermite_normal_form(M)
    order = abs(prod(H[i, i] for i in range(k)))
    return _vl(order, ell)


def test_criterion_2_growth_law():
    rng = random.Random(7)
    failures = []
    checked = oracle_checked = 0
    start = time.perf_counter()
    while checked < 100:
        ell = rng.choice([2, 3, 5])
        E = _random_module(rng, ell)
        n_max = stable_onset(E) + 3
        try:
            g = growth_sequence(E, n_max)
        except InfiniteQuotient:
            continue
        checked += 1
        inv = invariants(E)
        mu, lam = sum(E.mu_parts), sum(p.degree for p in E.lambda_parts)
        if (g.fit.mu, g.fit.lam) != (mu, lam) or (inv.mu, inv.lam) != (mu, lam):
            failures.append(("fit", E))
            continue
        if all(p.degree <= 3 for p in E.lambda_parts):
            for n in range(min(2, n_max) + 1):
                parts = [_order_exponent_oracle(list(p.coeffs), n, ell) for p in E.lambda_parts]
                expect = sum(m * ell**n for m in E.mu_parts) + sum(parts)
                oracle_checked += 1
                if g.exponents[n] != expect:
                    failures.append(("order", E, n))
    elapsed = time.perf_counter() - start
    _report(2, not failures and elapsed < 60,
            f"({checked} modules, {oracle_checked} brute-force orders, {elapsed:.1f}s)")
    assert oracle_checked > 50
    assert not failures, failures[:3]
    assert elapsed < 60


# 3. Worked values ---------------------------------------------------------

def _brute_order_mod_ell(ell, n):
    """|F_l[T]/(omega_n)| by enumerating every polynomial of degree <= l**n and reducing."""
    w = sympy.Poly(sympy.expand((1 + _T) ** (ell**n) - 1), _T, modulus=ell)
    seen = set()
    for coeffs in product(range(ell), repeat=ell**n + 1):
        r = sympy.Poly(list(coeffs), _T, modulus=ell).rem(w)
        seen.add(tuple(r.all_coeffs()))
    return len(seen)


def test_criterion_3_worked_values():
    E = ElementaryModule(3, [], [[-3, 1]])
    got = [quotient_order_exponent(E, n) for n in range(5)]
    oracle = [_vl(4 ** (3**n) - 1, 3) for n in range(5)]
    ok = got == oracle == [n + 1 for n in range(5)]
    for ell in (2, 3):
        E = ElementaryModule(ell, [1], [])
        for n in range(3):
            brute = _brute_order_mod_ell(ell, n)
            ok = ok and brute == ell ** (ell**n) and quotient_order_exponent(E, n) == ell**n
    _report(3, ok)
    assert ok


# 4. Logarithmic index laws ------------------------------------------------

def _random_step(rng, p, ell):
    a, b = rng.randint(0, 2), rng.randint(0, 2)
    e, f = ell**a, ell**b
    c = ell ** rng.randint(0, a + b)
    return LocalStep(p, ell, e * f, e, f, c)


def test_criterion_4_log_index_laws():
    rng = random.Random(11)
    failures = 0
    for _ in range(500):
        ell = rng.choice([2, 3, 5])
        p = rng.choice([ell, 7, 11, 13]) if ell != 7 else ell
        steps = [_random_step(rng, p, ell) for _ in range(rng.randint(1, 4))]
        for s in steps:
            idx = log_indices(s)
            if idx.e_log * idx.f_log != s.degree:
                failures += 1
            lint = validate_away_from_ell(s)
            accept = p == ell or s.degree // s.c == s.e
            if (lint == []) != accept:
                failures += 1
        acc, total = steps[0], log_indices(steps[0])
        for s in steps[1:]:
            total = compose((acc, total), s, composite=composite_step(acc, s))
            acc = composite_step(acc, s)
        expect = (prod(s.degree // s.c for s in steps), prod(s.c for s in steps))
        if tuple(total) != expect or total.e_log * total.f_log != prod(s.degree for s in steps):
            failures += 1
    _report(4, failures == 0, f"({failures} failures)")
    assert failures == 0


# 5. Topology oracle -------------------------------------------------------

def _raw_primitive(ell, d, N):
    m = ell**N
    return [v for v in product(range(m), repeat=d) if any(x % ell for x in v)]


def _random_config(rng, N):
    primes = []
    for i in range(rng.randint(0, 3)):
        gens = lambda: [tuple(rng.randrange(16) for _ in range(2)) for _ in range(rng.randint(0, 2))]
        primes.append(PrimeData(f"p{i}", tuple(gens()), tuple(gens())))
    return TowerConfig(2, 2, N, tuple(primes), (1, 0), gross_kuzmin_assumed=False)


def test_criterion_5_topology_oracle():
    start = time.perf_counter()
    ell, d, N = 2, 2, 4
    m = ell**N
    raw = _raw_primitive(ell, d, N)
    units = [u for u in range(m) if u % ell]
    classes = {}
    for v in raw:
        key = min(tuple(u * x % m for x in v) for u in units)
        classes.setdefault(key, set()).add(v)
    points = primitive_classes(ell, d, N)
    ok = len(raw) == 192 and len(points) == len(classes) == 24
    ok = ok and {frozenset(classes[min(tuple(u * x % m for x in p.coords) for u in units)])
                 for p in points} == {frozenset(c) for c in classes.values()}
    orbit = {p: classes[min(tuple(u * x % m for x in p.coords) for u in units)] for p in points}

    def brute_level(a, b):
        best = 0
        for n in range(N + 1):
            mod = ell**n
            if any(all((x - y) % mod == 0 for x, y in zip(v, w)) for v in orbit[a] for w in orbit[b]):
                best = n
        return best

    def brute_ram(v, gens):
        return any(sum(x * y for x, y in zip(v, g)) % m for g in gens)

    levels = {(a, b): brute_level(a, b) for a in points for b in points}
    rng = random.Random(5)
    configs = [_random_config(rng, N) for _ in range(6)]
    mismatches = 0
    for a in points:
        for b in points:
            if intersection_level(a, b) != levels[a, b] or levels[a, b] != levels[b, a]:
                mismatches += 1
    for cfg in configs:
        ram = {(p, lg): frozenset(q.label for q in cfg.primes
                                  if brute_ram(next(iter(orbit[p])),
                                               q.log_inertia if lg else q.inertia))
               for p in points for lg in (False, True)}
        for p in points:
            for lg in (False, True):
                if ramified_primes(p, cfg, lg) != ram[p, lg]:
                    mismatches += 1
        for a in points:
            for n in range(N + 1):
                ball = greenberg_ball(a, n)
                hoods = {lg: kleine_neighborhood(a, n, cfg, lg) for lg in (False, True)}
                want_ball = [b for b in points if levels[a, b] >= n]
                if [b for b in points if b in ball] != want_ball:
                    mismatches += 1
                if ball.enumerate(N) != want_ball:
                    mismatches += 1
                for lg, hood in hoods.items():
                    want = [b for b in want_ball if ram[b, lg] <= ram[a, lg]]
                    if [b for b in points if b in hood] != want or hood.enumerate(N) != want:
                        mismatches += 1
                    if not set(want) <= set(want_ball):
                        mismatches += 1
                if n < N and not set(greenberg_ball(a, n + 1).enumerate(N)) <= set(want_ball):
                    mismatches += 1
    elapsed = time.perf_counter() - start
    ok = ok and mismatches == 0 and elapsed < 5
    _report(5, ok, f"({mismatches} mismatches, {elapsed:.2f}s)")
    assert mismatches == 0
    assert elapsed < 5
    assert ok


# 6. Isolation demo --------------------------------------------------------

def test_criterion_6_isolation_demo(data_dir):
    sc = Scenario.load(data_dir / "isolation_demo.json").validate()
    cfg = sc.config
    cyc = cfg.cyclotomic(4)
    hood = kleine_neighborhood(cyc, 1, cfg, logarithmic=True)
    members = hood.enumerate(4)
    # oracle: every primitive vector mod 16 in the level-1 ball with no log-ramified prime
    gens = [g for p in cfg.primes for g in p.log_inertia]
    survivors = {
        ExtensionPoint(2, v, 4)
        for v in _raw_primitive(2, 2, 4)
        if v[0] % 2 == 1 and v[1] % 2 == 0
        and all(sum(x * y for x, y in zip(v, g)) % 16 == 0 for g in gens)
    }
    ok = members == [cyc] and survivors == {cyc} and cyclotomic_isolation(cfg, 4) == 1
    _report(6, ok, f"({len(members)} member(s))")
    assert ok


# 7. Specialization scan ---------------------------------------------------

def _oracle_scan_csv():
    """Per-point substitution: (1+T)^a1 - (1+T)^a2 expanded over Z, then read off mu and lambda."""
    ell, prec = 2, 3
    m = ell**prec
    center = (1, 1)
    units = [u for u in range(m) if u % ell]
    canon = set()
    for v in product(range(m), repeat=2):
        if not any(x % ell for x in v):
            continue
        if not any(all((u * x - y) % ell == 0 for x, y in zip(v, center)) for u in units):
            continue
        i = next(k for k, x in enumerate(v) if x % ell)
        inv = pow(v[i], -1, m)
        canon.add(tuple(x * inv % m for x in v))
    rows = ["point;mu;lambda;status"]
    for a in sorted(canon, key=lambda v: (next(k for k, x in enumerate(v) if x % ell), v)):
        poly = sympy.Poly(sympy.expand((1 + _T) ** a[0] - (1 + _T) ** a[1]), _T)
        coeffs = list(reversed(poly.all_coeffs())) if not poly.is_zero else []
        label = "(" + ",".join(map(str, a)) + ")"
        if not any(coeffs):
            rows.append(f"{label};;;NotTorsion")
            continue
        vals = [_vl(int(c), ell) for c in coeffs]
        mu = min(v for v in vals if v is not None)
        lam = vals.index(mu)
        rows.append(f"{label};{mu};{lam};ok")
    return "\n".join(rows) + "\n"


def test_criterion_7_specialization_scan(data_dir, tmp_path):
    oracle = _oracle_scan_csv()
    golden = (GOLDEN / "scan_demo.csv").read_text()
    sc = Scenario.load(data_dir / "demo_scan.json").validate()
    result = invariant_map(sc.presentations[0], sc.center_point(), sc.level, sc.sample_precision,
                           cfg=sc.config, topology=sc.topology)
    outputs = []
    for i in range(2):
        out = tmp_path / f"scan{i}.csv"
        proc = subprocess.run([sys.executable, "-m", "logiwasawa", "scan",
                               str(data_dir / "demo_scan.json"), "--output", str(out)],
                              capture_output=True, text=True)
        assert proc.returncode == 0, proc.stderr
        outputs.append(out.read_bytes())
    ok = (
        oracle == golden
        and result.to_csv() == golden
        and outputs[0] == outputs[1] == golden.encode()
        and "NotTorsion" in golden
        and result.max_mu == 0
    )
    _report(7, ok)
    assert oracle == golden
    assert result.to_csv() == golden
    assert outputs[0] == outputs[1] == golden.encode()
    assert result.max_mu == 0


# 8. Fitter robustness -----------------------------------------------------

NONCONFORMING = [
    (2, [0, 0, 1, 0, 0, 0]),
    (2, [0, 5, 1, 9, 2, 7]),
    (3, [1, 2, 4, 3, 5, 4]),
    (5, [0, 1, 0, 1, 0, 1]),
    (2, [3, 2, 1, 0, -1, -3]),
]


def test_criterion_8_fitter_robustness():
    failures = []
    for ell in (2, 3, 5):
        for mu, lam, nu in product(range(6), range(6), range(-10, 11)):
            seq = [mu * ell**n + lam * n + nu for n in range(6)]
            r = fit(ExponentSequence(ell, seq))
            if (r.mu, r.lam, r.nu, r.onset) != (mu, lam, nu, 0):
                failures.append((ell, mu, lam, nu))
            # a nonconforming first term moves the onset to 1
            seq = [seq[0] + 1] + seq[1:] + [mu * ell**6 + lam * 6 + nu]
            r = fit(ExponentSequence(ell, seq))
            if (r.mu, r.lam, r.nu, r.onset) != (mu, lam, nu, 1):
                failures.append(("prefix", ell, mu, lam, nu))
    rejected = 0
    for ell, seq in NONCONFORMING:
        try:
            fit(ExponentSequence(ell, seq))
        except NoEventualFit:
            rejected += 1
    ok = not failures and rejected == len(NONCONFORMING)
    _report(8, ok, f"({len(failures)} failures, {rejected}/{len(NONCONFORMING)} rejected)")
    assert not failures, failures[:5]
    assert rejected == len(NONCONFORMING)
