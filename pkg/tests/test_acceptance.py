"""The eleven acceptance criteria, each run in full and timed.

Every test prints one ``PASS``/``FAIL`` line, which is also collected into
the terminal summary.
"""

import time

import conftest
from instances import g2, partial_z2, z2
from weakmonads import (GF, Algebra, LinMap, PreMonad, Reading, algebra_from_table,
                        build_lifted_coring, characterize_weak_bialgebra, check_algebra,
                        check_coring, check_premonad, check_rholambda, classify_entwining,
                        comonad_lifting_conditions, monad_lifting_conditions, gamma_to_rholambda,
                        induced_composition_checks, induced_iota, induced_pi, law_suite,
                        lift_twocell, lifted_bimodule, lifting_idempotent, lifting_splitting,
                        membership_characterizations, premonad_retract, premonad_to_wreath,
                        psi_R, rank, recover_psi, rholambda_to_gamma, roundtrip_monad_premonad,
                        roundtrip_premonad_monad, vcompose_twocells, weak_smash,
                        wreath_to_premonad)
from weakmonads.sampling import (algebra_pool, random_composition_data, random_entwining,
                                 random_groupoid_wba, random_law_configuration, random_module,
                                 random_omega, random_onecells, random_premonad,
                                 random_strict_wreath, random_twocell, rng_for, sabotaged_wba)

F7 = GF(7)
BUDGET = 60.0


class Criterion:
    """Collects failures for one criterion and reports a single line."""

    def __init__(self, number: int, title: str):
        self.number, self.title = number, title
        self.problems: list[str] = []
        self.start = time.perf_counter()

    def check(self, ok: bool, what: str):
        if not ok and len(self.problems) < 5:
            self.problems.append(what)
        return ok

    def finish(self, summary: str = ""):
        elapsed = time.perf_counter() - self.start
        self.check(elapsed < BUDGET, f"took {elapsed:.1f}s, over the {BUDGET:.0f}s budget")
        status = "PASS" if not self.problems else "FAIL"
        line = f"{status} criterion {self.number}: {self.title} ({elapsed:.1f}s)"
        if summary:
            line += f"; {summary}"
        if self.problems:
            line += "; " + "; ".join(self.problems)
        conftest.ACCEPTANCE_LINES.append(line)
        print(line)
        assert not self.problems, line


def g2_smash_monad():
    h = g2(F7)
    P, A = weak_smash(h)
    return premonad_to_wreath(P, h.dim, A, Reading.MODULE), P, A


def test_criterion_01_law_suite():
    c = Criterion(1, "2-category laws on 200 random configurations over F7")
    nonvacuous = 0
    for i in range(200):
        cfg = random_law_configuration(rng_for([1, i]), F7, max_dim=3)
        rep = law_suite(cfg)
        c.check(rep.ok, f"trial {i}: {[v.tag for v in rep.failures]}")
        if not (cfg.rho.rho.is_zero() or cfg.tau.rho.is_zero() or cfg.rho1.rho.is_zero()):
            nonvacuous += 1
    c.check(nonvacuous >= 50, f"only {nonvacuous} configurations with non-zero cells")
    c.finish(f"{nonvacuous}/200 with non-zero cells")


def test_criterion_02_membership_characterizations():
    c = Criterion(2, "three membership characterizations agree on 100 samples")
    sides = ["free", "iota", "pi", "strict"]
    strict_cases = 0
    pool = algebra_pool(F7)
    for i in range(100):
        rng = rng_for([2, i])
        t0, t1 = (pool[j] for j in rng.integers(0, len(pool), size=2))
        reading = list(Reading)[i % 2]
        a, b = random_onecells(rng, t0, t1, 2, reading, 3)
        omega = random_omega(rng, a, b, sides[i % 4])
        rep = membership_characterizations(omega, a, b)
        for side in ("iota", "pi"):
            vals = [rep.passed(f"{side}.{k}") for k in ("cell", "identity", "normalized")]
            c.check(len(set(vals)) == 1, f"sample {i} {side}: {vals}")
        if rep.passed("both.strict"):
            strict_cases += 1
            same = induced_iota(omega, a, b) == induced_pi(omega, a, b)
            c.check(same and rep.passed("both.cells_equal"), f"sample {i}: induced cells differ")
    c.check(strict_cases > 0, "no two-sided case sampled")
    c.finish(f"{strict_cases} two-sided cases")


def test_criterion_03_composition_formulas():
    c = Criterion(3, "induced 2-cells respect both compositions on 100 samples")
    checked = 0
    for i in range(100):
        side = ("iota", "pi")[i % 2]
        omega, omega_p, kappa, cells = random_composition_data(rng_for([3, i]), F7, side,
                                                               max_dim=2)
        rep = induced_composition_checks(omega, omega_p, kappa, cells)
        c.check(rep.ok, f"sample {i}: {[v.tag for v in rep.failures]}")
        tags = {f"{side}.horizontal", f"{side}.vertical"}
        c.check(tags <= {v.tag for v in rep.verdicts}, f"sample {i}: formulas not reached")
        checked += len(rep.verdicts)
    c.finish(f"{checked} identities checked")


def test_criterion_04_wreath_premonad_roundtrips():
    c = Criterion(4, "monad/pre-monad round trips on 50 strict wreaths and the G2 smash")
    for i in range(50):
        reading = list(Reading)[i % 2]
        m = random_strict_wreath(rng_for([4, i]), F7, reading)
        fwd = roundtrip_monad_premonad(m)
        c.check(fwd.ok, f"wreath {i} forward: {[v.tag for v in fwd.failures]}")
        P, _ = wreath_to_premonad(m)
        c.check(check_algebra(Algebra(F7, P.dim, P.mult, P.unit)).ok,
                f"wreath {i}: product is not unital")
        rev = roundtrip_premonad_monad(P, m.s_dim, m.base, reading)
        c.check(rev.ok, f"wreath {i} reverse: {[v.tag for v in rev.failures]}")
    m, P, A = g2_smash_monad()
    c.check(roundtrip_monad_premonad(m).ok, "G2 smash forward")
    c.check(roundtrip_premonad_monad(P, 2, A, Reading.MODULE).ok, "G2 smash reverse")
    c.check(check_premonad(P).ok, "G2 smash is not a pre-monad")
    unit = check_algebra(Algebra(F7, P.dim, P.mult, P.unit))
    broken = [v for v in unit.failures if v.tag in ("left_unit", "right_unit")]
    c.check(bool(broken) and broken[0].witness is not None, "G2 smash satisfies the unit law")
    c.finish(f"G2 smash unit law fails at {broken[0].tag} {broken[0].witness}" if broken else "")


def test_criterion_05_premonad_retracts():
    c = Criterion(5, "retracts of 100 sampled pre-monads are monads; k^2 corner has dim 1")
    for i in range(100):
        P = random_premonad(rng_for([5, i]), F7)
        c.check(check_premonad(P).ok, f"sample {i} is not a pre-monad")
        R, _ = premonad_retract(P)
        c.check(check_algebra(R).ok, f"sample {i}: retract is not an algebra")
    k2 = algebra_from_table(F7, 2, lambda i, j: {0: 1} if i == j == 0 else {}, [1, 0])
    R, _ = premonad_retract(PreMonad.of(k2))
    c.check(R.dim == 1, f"k^2 corner retract has dim {R.dim}")
    c.finish()


def test_criterion_06_g2_lifting_pipeline():
    c = Criterion(6, "G2 lifting idempotent, iota coring and recovery of psi")
    d = psi_R(g2(F7))
    e = lifting_idempotent(d)
    diag = LinMap.from_rows(F7, [[1, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 1]])
    c.check(rank(e) == 2, f"idempotent has rank {rank(e)}")
    c.check(e == diag, "idempotent is not diag(1, 0, 0, 1)")
    K, rep = build_lifted_coring(d, "iota")
    c.check(rep.ok, f"coring: {[v.tag for v in rep.failures]}")
    c.check(check_coring(K).ok and K.carrier.dim == 2, "coring invariants")
    X, s = lifted_bimodule(d.onecell)
    c.check(recover_psi(d.A, s, X.right_act) == d.psi, "psi not recovered")
    c.finish()


def test_criterion_07_module_roundtrips():
    c = Criterion(7, "module round trips on 50 modules over the G2 smash retract")
    m, P, _ = g2_smash_monad()
    R, _ = premonad_retract(P)
    for i in range(50):
        W, gamma = random_module(rng_for([7, i]), R, m.reading)
        x = gamma_to_rholambda(m, W, gamma)
        c.check(check_rholambda(m, x).ok, f"module {i}: lifted data invalid")
        back = rholambda_to_gamma(m, x)
        c.check(back == gamma, f"module {i}: gamma does not return")
        again = gamma_to_rholambda(m, W, back)
        c.check(again == x, f"module {i}: (rho, lambda) does not return")
    c.finish()


def test_criterion_08_weak_iff_iota_and_pi():
    c = Criterion(8, "weak entwining iff iota comonad and pi monad on 200 samples")
    weak = 0
    for i in range(200):
        d = random_entwining(rng_for([8, i]), F7, max_dim=2)
        verdict = classify_entwining(d).weak
        com, mon = comonad_lifting_conditions(d), monad_lifting_conditions(d)
        iota = com.passed("iota.comult") and com.passed("iota.counit")
        pi = mon.passed("pi.mult") and mon.passed("pi.unit")
        c.check(verdict == (iota and pi), f"sample {i}: weak {verdict}, iota {iota}, pi {pi}")
        weak += verdict
    c.check(0 < weak < 200, f"only one outcome sampled ({weak} weak)")
    c.finish(f"{weak} weak, {200 - weak} not")


def test_criterion_09_weak_bialgebra_characterization():
    c = Criterion(9, "weak bialgebra iff both entwinings weak, on G2, Z2 and 20 sabotaged")
    for name, h in (("G2", g2(F7)), ("Z2", z2(F7))):
        rep = characterize_weak_bialgebra(h)
        c.check(rep.ok, f"{name}: {[v.tag for v in rep.failures]}")
    for i in range(20):
        rng = rng_for([9, i])
        h = sabotaged_wba(rng, random_groupoid_wba(rng, F7))
        rep = characterize_weak_bialgebra(h)
        both = rep.passed("psi_R_weak") and rep.passed("psi_L_weak")
        c.check(not rep.passed("weak_bialgebra") and not both and rep.passed("biconditional"),
                f"sabotaged {i}: {[(v.tag, v.passed) for v in rep.verdicts]}")
    c.finish()


def test_criterion_10_partial_entwining():
    c = Criterion(10, "partial Z2 coaction: partial, not weak; pi coring valid")
    d = partial_z2(F7)
    cl = classify_entwining(d)
    c.check(cl.partial and not cl.weak, f"partial {cl.partial}, weak {cl.weak}")
    K, rep = build_lifted_coring(d, "pi")
    c.check(rep.ok, f"coring: {[v.tag for v in rep.failures]}")
    c.check(check_coring(K).ok, "coring invariants")
    c.finish(f"carrier dim {K.carrier.dim}")


def test_criterion_11_lift_functoriality():
    c = Criterion(11, "lifting respects vertical composition on 50 pairs")
    pool = algebra_pool(F7)
    nonzero = 0
    for i in range(50):
        rng = rng_for([11, i])
        t0, t1 = (pool[j] for j in rng.integers(0, len(pool), size=2))
        a, b, u = random_onecells(rng, t0, t1, 3, Reading.MODULE, 3)
        r, t = random_twocell(rng, a, b), random_twocell(rng, b, u)
        sa, sb, su = (lifting_splitting(x) for x in (a, b, u))
        lhs = lift_twocell(vcompose_twocells(t, r), sa, su)
        c.check(lhs == lift_twocell(t, sb, su) @ lift_twocell(r, sa, sb), f"pair {i}")
        nonzero += not lhs.is_zero()
    c.check(nonzero > 0, "every composite lifted to zero")
    c.finish(f"{nonzero}/50 non-zero composites")

