"""Mechanical verification of structural identities at desk scale.

Every check reduces a stated identity or bound to exact computations on
finite prefixes and returns a VerificationReport.  Values that depend on
window sufficiency are taken from the doubling policy; a check whose inputs
did not converge reports `inconclusive` rather than guessing.  Asymptotic
claims are never asserted against invented constants: the smallest integer
constant that works over the tested range is fitted and reported.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

from .complexity import (
    DEFAULT_POLICY,
    INFINITY,
    WindowPolicy,
    converged_factor_window,
    converged_ones_ranges,
    converged_values,
    lower_profile,
    profile,
    q_sturm,
    upper_profile,
)
from .equivalence import k_abelian_eq, k_abelian_key, occurrences, parikh_vector
from .errors import ConvergenceError, ParameterError
from .words import (
    FIBONACCI,
    PERIOD_DOUBLING,
    STAIRCASE,
    TAU_CHAMPERNOWNE,
    THUE_MORSE,
    BlockSequence,
    MorphicImageSpec,
    Morphism,
    UltimatelyPeriodicSpec,
    UWordSpec,
    Word,
    WordSpec,
    apply_morphism,
    expand,
    perlin_morphism,
    phi_map,
    spec_text,
    thue_morse_morphism,
)

__all__ = [
    "VerificationReport",
    "PeriodicityWitness",
    "verify_srec",
    "verify_s_special_values",
    "verify_tm_sandwich",
    "verify_tm_bounds",
    "verify_tm_balance",
    "verify_phi_classes",
    "verify_phi_identity",
    "verify_tau_champernowne",
    "verify_u_bounds",
    "verify_uniform_recurrence",
    "verify_perlin",
    "verify_sparse_ones",
    "verify_uniform_scaling",
    "verify_tm_growth_shape",
    "verify_sturmian_battery",
    "verify_periodicity_battery",
    "find_periodicity_witness",
    "sturmian_profile_check",
    "report_to_json_dict",
    "ALL_CHECKS",
    "run_all_checks",
]

ONE_SIDED_NOTE = ("checked on one-sided prefixes only; the bi-infinite "
                  "periodicity criterion holds in one direction here")


@dataclass
class VerificationReport:
    """Outcome of one check: pass / fail / inconclusive plus witnesses."""

    check: str
    params: dict
    status: str
    witnesses: list = field(default_factory=list)
    fitted_constants: dict = field(default_factory=dict)
    notes: str = ""

    @property
    def passed(self) -> bool:
        return self.status == "pass"


@dataclass(frozen=True)
class PeriodicityWitness:
    """A (k, n) at which the observed complexity drops below the Sturmian
    profile, certifying ultimate periodicity."""

    k: object
    n: int
    observed: int
    threshold: int

    def __post_init__(self):
        if not self.observed < self.threshold:
            raise ParameterError("witness requires observed < threshold")


def _finish(check, params, failures, blocked, fitted=None, notes=""):
    if failures:
        status = "fail"
    elif blocked:
        status = "inconclusive"
        shown = ", ".join(str(b) for b in list(blocked)[:8])
        extra = f"unconverged at: {shown}"
        notes = f"{notes}; {extra}" if notes else extra
    else:
        status = "pass"
    return VerificationReport(check=check, params=params, status=status,
                              witnesses=failures, fitted_constants=fitted or {},
                              notes=notes)


def _values_and_blocked(spec, k, ns, policy):
    values, conv, _ = converged_values(spec, k, ns, policy)
    blocked = [n for n in sorted(set(ns)) if not conv[n]]
    return values, blocked


def _fit_upper_int(pairs):
    """Smallest integer c with lhs <= c * rhs for every (lhs, rhs) pair."""
    c = 0
    for lhs, rhs in pairs:
        if rhs <= 0:
            raise ParameterError("fit needs positive right-hand sides")
        c = max(c, -(-lhs // rhs))
    return c


# --- period-doubling word ----------------------------------------------------

def verify_srec(n_max: int = 512, policy: WindowPolicy = DEFAULT_POLICY):
    """Abelian-complexity recurrences of the period-doubling word.

    fc(4n-1) = fc(n) + 1, fc(4n) = fc(n), fc(4n+1) = fc(4n+2) = fc(n) + 1
    for n = 1..n_max, seeded by fc(1) = fc(2) = 2, together with the eight
    ones-range recurrences that drive them.
    """
    if n_max < 1:
        raise ParameterError("n_max must be >= 1")
    params = {"n_max": n_max}
    ns = range(1, 4 * n_max + 3)
    values, blocked = _values_and_blocked(PERIOD_DOUBLING, 1, ns, policy)
    ranges, rconv, _ = converged_ones_ranges(PERIOD_DOUBLING, ns, policy)
    blocked += [("pq", n) for n in ns if not rconv[n]]
    failures = []
    for seed_n in (1, 2):
        if values[seed_n] != 2:
            failures.append((seed_n, 2, values[seed_n]))
    for n in range(1, n_max + 1):
        expect = {4 * n - 1: values[n] + 1, 4 * n: values[n],
                  4 * n + 1: values[n] + 1, 4 * n + 2: values[n] + 1}
        for arg, want in expect.items():
            if values[arg] != want:
                failures.append((arg, want, values[arg]))
        p, q = ranges[n].p, ranges[n].q
        want_pq = {4 * n - 1: (p + n - 1, q + n), 4 * n: (p + n, q + n),
                   4 * n + 1: (p + n, q + n + 1), 4 * n + 2: (p + n, q + n + 1)}
        for arg, want in want_pq.items():
            got = (ranges[arg].p, ranges[arg].q)
            if got != want:
                failures.append((("pq", arg), want, got))
    notes = ""
    if failures:
        rows = sorted({(w[0][1] if isinstance(w[0], tuple) else w[0]) % 4
                       for w in failures})
        notes = f"failing arguments lie in the rows 4n+{rows} (mod 4)"
    return _finish("srec", params, failures, blocked, notes=notes)


def verify_s_special_values(m_max: int = 6, pow_m_max: int = 12,
                            policy: WindowPolicy = DEFAULT_POLICY):
    """Special Abelian-complexity values of the period-doubling word.

    fc((2*4^m + 1) / 3) = m + 2 for m = 0..m_max and fc(2^m) = 2 for
    m = 0..pow_m_max; also fits the smallest integer c with
    fc(n) <= c * (log2(n) + 1) over n = 1..2^pow_m_max (reported only).
    """
    params = {"m_max": m_max, "pow_m_max": pow_m_max}
    special = {m: (2 * 4 ** m + 1) // 3 for m in range(m_max + 1)}
    powers = {m: 2 ** m for m in range(pow_m_max + 1)}
    fit_range = 2 ** pow_m_max
    ns = set(special.values()) | set(powers.values()) | set(range(1, fit_range + 1))
    values, blocked = _values_and_blocked(PERIOD_DOUBLING, 1, ns, policy)
    failures = []
    for m, n in special.items():
        if values[n] != m + 2:
            failures.append((n, m + 2, values[n]))
    for m, n in powers.items():
        if values[n] != 2:
            failures.append((n, 2, values[n]))
    fitted = {}
    if not blocked:
        fitted["log_upper"] = max(
            math.ceil(values[n] / (math.log2(n) + 1)) for n in range(1, fit_range + 1))
    return _finish("special-values", params, failures, blocked, fitted)


# --- Thue-Morse word ----------------------------------------------------------

def verify_tm_sandwich(n_max: int = 256, policy: WindowPolicy = DEFAULT_POLICY):
    """fc1_S(n-1) <= fc2_T(n) <= 4 * fc1_S(n-1) for n = 2..n_max."""
    if n_max < 2:
        raise ParameterError("n_max must be >= 2")
    params = {"n_max": n_max}
    t_values, t_blocked = _values_and_blocked(THUE_MORSE, 2, range(2, n_max + 1), policy)
    s_values, s_blocked = _values_and_blocked(PERIOD_DOUBLING, 1, range(1, n_max), policy)
    failures = []
    for n in range(2, n_max + 1):
        low, mid, high = s_values[n - 1], t_values[n], 4 * s_values[n - 1]
        if not low <= mid <= high:
            failures.append((n, (low, high), mid))
    return _finish("tm-sandwich", params, failures, t_blocked + s_blocked)


def verify_tm_bounds(m_max: int = 14, policy: WindowPolicy = DEFAULT_POLICY):
    """2-Abelian complexity bounds of the Thue-Morse word.

    fc(2^m + 1) <= 8 for m = 0..m_max; on the arguments (2*4^m + 4)/3 within
    the same scale the values are strictly increasing, with the smallest
    integer c such that value <= c * (m + 1) reported.
    """
    params = {"m_max": m_max}
    scale = 2 ** m_max + 1
    powers = {m: 2 ** m + 1 for m in range(m_max + 1)}
    theta_args = {}
    m = 0
    while (2 * 4 ** m + 4) // 3 <= scale:
        theta_args[m] = (2 * 4 ** m + 4) // 3
        m += 1
    ns = set(powers.values()) | set(theta_args.values())
    values, blocked = _values_and_blocked(THUE_MORSE, 2, ns, policy)
    failures = []
    for m, n in powers.items():
        if values[n] > 8:
            failures.append((n, "<= 8", values[n]))
    theta_values = [values[theta_args[m]] for m in sorted(theta_args)]
    for i in range(1, len(theta_values)):
        if not theta_values[i] > theta_values[i - 1]:
            failures.append((theta_args[i], f"> {theta_values[i - 1]}", theta_values[i]))
    fitted = {}
    if not blocked:
        fitted["theta_linear_upper"] = _fit_upper_int(
            [(theta_values[m], m + 1) for m in sorted(theta_args)])
    return _finish("tm-bounds", params, failures, blocked, fitted)


def _tau_image_alternation_ok(image: Word) -> bool:
    s = image.symbols
    marks = []
    for pattern, label in ((b"\x00\x00", 0), (b"\x01\x01", 1)):
        pos = s.find(pattern)
        while pos != -1:
            marks.append((pos, label))
            pos = s.find(pattern, pos + 1)
    marks.sort()
    return all(a[1] != b[1] for a, b in zip(marks, marks[1:]))


def verify_tm_balance(n_max: int = 64, trials: int = 1000, seed: int = 0,
                      policy: WindowPolicy = DEFAULT_POLICY):
    """00/11 balance inside the Thue-Morse word.

    Every factor u with |u| <= n_max has | |u|_00 - |u|_11 | <= 1, and in
    images of random binary words under the Thue-Morse morphism the
    occurrences of 00 and 11 strictly alternate.
    """
    params = {"n_max": n_max, "trials": trials, "seed": seed}
    window, conv, _ = converged_factor_window(THUE_MORSE, n_max, policy)
    blocked = [n for n in range(1, n_max + 1) if not conv[n]]
    failures = []
    zz, oo = Word(b"\x00\x00"), Word(b"\x01\x01")
    s = window.symbols
    for n in range(2, n_max + 1):
        for fac in {s[i:i + n] for i in range(len(s) - n + 1)}:
            u = Word(fac)
            c00, c11 = occurrences(u, zz), occurrences(u, oo)
            if abs(c00 - c11) > 1:
                failures.append((n, "|c00 - c11| <= 1", (c00, c11)))
    tau = thue_morse_morphism()
    rng = random.Random(seed)
    for t in range(trials):
        w = Word(bytes(rng.randrange(2) for _ in range(rng.randrange(1, 40))))
        if not _tau_image_alternation_ok(apply_morphism(tau, w)):
            failures.append((("trial", t), "alternating 00/11", w.to_text()))
    return _finish("tm-balance", params, failures, blocked)


def verify_phi_classes(n_max: int = 64, policy: WindowPolicy = DEFAULT_POLICY):
    """Factors of the Thue-Morse word whose pair-derivatives are Abelian
    equivalent fall into at most 4 two-Abelian classes."""
    if n_max < 2:
        raise ParameterError("n_max must be >= 2")
    params = {"n_max": n_max}
    window, conv, _ = converged_factor_window(THUE_MORSE, n_max, policy)
    blocked = [n for n in range(1, n_max + 1) if not conv[n]]
    failures = []
    s = window.symbols
    for n in range(2, n_max + 1):
        groups = {}
        for fac in {s[i:i + n] for i in range(len(s) - n + 1)}:
            u = Word(fac)
            ones = sum(phi_map(u).symbols)
            groups.setdefault(ones, set()).add(k_abelian_key(u, 2))
        for ones, keys in groups.items():
            if len(keys) > 4:
                failures.append(((n, ones), "<= 4 classes", len(keys)))
    return _finish("phi-classes", params, failures, blocked)


def verify_phi_identity(n_max: int = 10_000):
    """The pair-derivative of the Thue-Morse word is the period-doubling word,
    bit-exact over the first n_max symbols."""
    params = {"n_max": n_max}
    derived = phi_map(expand(THUE_MORSE, n_max + 1))
    target = expand(PERIOD_DOUBLING, n_max)
    failures = []
    if derived.symbols != target.symbols:
        first_bad = next(i for i, (a, b) in
                         enumerate(zip(derived.symbols, target.symbols)) if a != b)
        failures.append((first_bad + 1, target.symbols[first_bad],
                         derived.symbols[first_bad]))
    return _finish("phi-identity", params, failures, [])


def verify_tau_champernowne(n_max: int = 512, policy: WindowPolicy = DEFAULT_POLICY):
    """The Thue-Morse image of the binary Champernowne word keeps its Abelian
    complexity at 3 or below for every n = 1..n_max."""
    params = {"n_max": n_max}
    values, blocked = _values_and_blocked(TAU_CHAMPERNOWNE, 1,
                                          range(1, n_max + 1), policy)
    failures = [(n, "<= 3", values[n]) for n in range(1, n_max + 1) if values[n] > 3]
    return _finish("tau-champernowne", params, failures, blocked)


def verify_tm_growth_shape(n_max: int = 2 ** 14 + 1,
                           policy: WindowPolicy = DEFAULT_POLICY):
    """Growth shape of the Thue-Morse 2-Abelian complexity.

    The upper envelope is fitted against log2(n) (smallest integer c with
    upper(n) <= c * (log2(n) + 1), reported); the values on the arguments
    (2*4^m + 4)/3 are strictly increasing; and the lower envelope at the
    horizon n_max stays at 8 or below everywhere.
    """
    params = {"n_max": n_max}
    prof = profile(THUE_MORSE, 2, n_max, policy)
    blocked = [n for n in range(1, n_max + 1) if not prof.is_converged(n)]
    if blocked:
        return _finish("growth-shape", params, [], blocked)
    failures = []
    upper = upper_profile(prof)
    fitted = {"log_upper": max(
        math.ceil(upper[n - 1] / (math.log2(n) + 1)) for n in range(1, n_max + 1))}
    theta_args = []
    m = 0
    while (2 * 4 ** m + 4) // 3 <= n_max:
        theta_args.append((2 * 4 ** m + 4) // 3)
        m += 1
    theta_values = [prof.value(n) for n in theta_args]
    for i in range(1, len(theta_values)):
        if not theta_values[i] > theta_values[i - 1]:
            failures.append((theta_args[i], f"> {theta_values[i - 1]}", theta_values[i]))
    lower = lower_profile(prof, n_max)
    worst = max(lower.values)
    fitted["lower_envelope_max"] = worst
    if worst > 8:
        bad = next(n for n in range(1, n_max + 1) if lower.value(n) > 8)
        failures.append((bad, "<= 8", lower.value(bad)))
    return _finish("growth-shape", params, failures, [], fitted)


# --- periodicity and Sturmian checks ------------------------------------------

def find_periodicity_witness(spec: WordSpec, k_max: int, n_max: int,
                             ks=None, policy: WindowPolicy = DEFAULT_POLICY):
    """First (k, n) in lexicographic order with complexity below the Sturmian
    profile, or None.  Finite levels 1..k_max are scanned, then the factor
    complexity level.  Raises ConvergenceError if an entry that must be
    cleared to continue did not converge."""
    if ks is None:
        ks = list(range(1, k_max + 1)) + [INFINITY]
    for k in ks:
        values, conv, _ = converged_values(spec, k, range(1, n_max + 1), policy)
        for n in range(1, n_max + 1):
            if not conv[n]:
                raise ConvergenceError(
                    f"complexity at k={k}, n={n} did not converge within the cap")
            threshold = q_sturm(k, n)
            if values[n] < threshold:
                return PeriodicityWitness(k, n, values[n], threshold)
    return None


def sturmian_profile_check(spec: WordSpec, k_max: int, n_max: int,
                           ks=None, policy: WindowPolicy = DEFAULT_POLICY):
    """Check that the word's complexity matches the Sturmian profile exactly
    for every tested level and length."""
    if ks is None:
        ks = list(range(1, k_max + 1))
    params = {"spec": spec_text(spec), "ks": [str(k) for k in ks], "n_max": n_max}
    failures = []
    blocked = []
    for k in ks:
        values, conv, _ = converged_values(spec, k, range(1, n_max + 1), policy)
        for n in range(1, n_max + 1):
            if not conv[n]:
                blocked.append((k, n))
                continue
            want = q_sturm(k, n)
            if values[n] != want:
                failures.append(((k, n), want, values[n]))
    return _finish("sturmian", params, failures, blocked, notes=ONE_SIDED_NOTE)


def verify_sturmian_battery(n_max: int = 64, policy: WindowPolicy = DEFAULT_POLICY):
    """Fibonacci word matches the Sturmian profile for k = 1..3, and the word
    0^(2k-1) 1^omega matches it at its own level k for k = 1..3."""
    params = {"n_max": n_max}
    failures = []
    blocked = []
    fib = sturmian_profile_check(FIBONACCI, 3, n_max, policy=policy)
    failures += [(("fibonacci",) + tuple(w[0]),) + tuple(w[1:]) for w in fib.witnesses]
    if fib.status == "inconclusive":
        blocked.append("fibonacci")
    for k in (1, 2, 3):
        spec = UltimatelyPeriodicSpec(bytes(2 * k - 1), b"\x01")
        rep = sturmian_profile_check(spec, k, n_max, ks=[k], policy=policy)
        failures += [((f"0^{2 * k - 1}1^w",) + tuple(w[0]),) + tuple(w[1:])
                     for w in rep.witnesses]
        if rep.status == "inconclusive":
            blocked.append(f"0^{2 * k - 1}1^w")
    return _finish("sturmian-battery", params, failures, blocked,
                   notes=ONE_SIDED_NOTE)


def verify_periodicity_battery(policy: WindowPolicy = DEFAULT_POLICY):
    """Ultimately periodic words yield a periodicity witness within
    k <= period length + 1 and n <= 4 * period length; the Fibonacci and
    Thue-Morse words yield none over the same ranges."""
    periods = [b"\x00\x01\x01\x00", b"\x00\x00\x01", b"\x00\x01\x00\x01\x01\x00\x01"]
    preperiods = [b"", b"\x00", b"\x01\x01"]
    params = {"periods": ["".join(str(c) for c in p) for p in periods]}
    k_cap = max(len(p) for p in periods) + 1
    n_cap = 4 * max(len(p) for p in periods)
    failures = []
    notes = [ONE_SIDED_NOTE]
    try:
        for period in periods:
            for pre in preperiods:
                spec = UltimatelyPeriodicSpec(pre, period)
                wit = find_periodicity_witness(spec, len(period) + 1,
                                               4 * len(period), policy=policy)
                label = spec_text(spec)
                if wit is None:
                    failures.append((label, "a witness", "none"))
                else:
                    notes.append(f"{label}: witness k={wit.k} n={wit.n} "
                                 f"observed={wit.observed} < {wit.threshold}")
        for name, spec in (("fibonacci", FIBONACCI), ("thue-morse", THUE_MORSE)):
            wit = find_periodicity_witness(spec, k_cap, n_cap, policy=policy)
            if wit is not None:
                failures.append((name, "none", (wit.k, wit.n, wit.observed)))
    except ConvergenceError as exc:
        return _finish("periodicity", params, failures, [str(exc)],
                       notes="; ".join(notes))
    return _finish("periodicity", params, failures, [], notes="; ".join(notes))


# --- block-division word -------------------------------------------------------

def _level(blocks: BlockSequence, n: int) -> int:
    """The level n' with m(n'-1) < n <= m(n'); defined for n >= 2."""
    if n < 2:
        raise ParameterError("levels are defined for n >= 2")
    j = 1
    while blocks.m(j) < n:
        j += 1
    return j


def verify_u_bounds(blocks: BlockSequence = BlockSequence((3,)), j_max: int = 4,
                    horizon: int | None = None,
                    policy: WindowPolicy = DEFAULT_POLICY):
    """Abelian-complexity bounds of the block-division word.

    (a) value 2 exactly at the block products m_j, j = 1..j_max;
    (b) value <= n' + 1 everywhere up to the horizon, n' being the level of n;
    (c) value >= (n' + 1) / 2 at n = 2 * sum(m_2j - m_2j-1, j <= J) whenever
        that n fits inside the horizon.
    """
    if horizon is None:
        horizon = blocks.m(j_max + 1)
    if horizon < blocks.m(j_max):
        raise ParameterError("horizon must reach m(j_max)")
    params = {"blocks": list(blocks.blocks), "j_max": j_max, "horizon": horizon}
    spec = UWordSpec(blocks)
    values, blocked = _values_and_blocked(spec, 1, range(1, horizon + 1), policy)
    failures = []
    for j in range(1, j_max + 1):
        mj = blocks.m(j)
        if values[mj] != 2:
            failures.append((mj, 2, values[mj]))
    # the level bound applies from n = 2 on; no level satisfies m(n'-1) < 1
    for n in range(2, horizon + 1):
        bound = _level(blocks, n) + 1
        if values[n] > bound:
            failures.append((n, f"<= {bound}", values[n]))
    big_j = 1
    while True:
        n = 2 * sum(blocks.m(2 * j) - blocks.m(2 * j - 1) for j in range(1, big_j + 1))
        if n > horizon:
            break
        bound = _level(blocks, n) + 1
        if 2 * values[n] < bound:
            failures.append((n, f">= {bound}/2", values[n]))
        big_j += 1
    return _finish("u-bounds", params, failures, blocked)


def _covers_every_window(positions, length, window_len, u_len):
    """True when every length-window_len window of a length-`length` word
    contains an occurrence starting at one of `positions`."""
    if not positions:
        return False
    slack = window_len - u_len
    if positions[0] > slack:
        return False
    for prev, nxt in zip(positions, positions[1:]):
        if nxt - prev > slack + 1:
            return False
    return positions[-1] >= length - window_len


def verify_uniform_recurrence(blocks: BlockSequence = BlockSequence((3,)),
                              sample_length: int = 8, horizon: int = 4096):
    """Uniform recurrence of the block-division word with an explicit gap.

    For each factor u with |u| <= sample_length and j minimal such that u
    occurs inside the first m_j - 1 symbols, every window of length
    m_j + |u| - 1 inside the horizon contains u.
    """
    params = {"blocks": list(blocks.blocks), "sample_length": sample_length,
              "horizon": horizon}
    s = expand(UWordSpec(blocks), horizon).symbols
    failures = []
    for n in range(1, sample_length + 1):
        for fac in sorted({s[i:i + n] for i in range(len(s) - n + 1)}):
            j = 1
            while blocks.m(j) - 1 <= horizon and s[:blocks.m(j) - 1].find(fac) == -1:
                j += 1
            if blocks.m(j) - 1 > horizon:
                raise ParameterError(
                    f"horizon too small to locate factor of length {n}")
            window_len = blocks.m(j) + n - 1
            if window_len > horizon:
                raise ParameterError(
                    f"horizon too small for the claimed window {window_len}")
            positions = []
            pos = s.find(fac)
            while pos != -1:
                positions.append(pos)
                pos = s.find(fac, pos + 1)
            if not _covers_every_window(positions, len(s), window_len, n):
                label = "".join(str(c) for c in fac)
                failures.append((label, f"in every window of {window_len}", "missing"))
    return _finish("uniform-recurrence", params, failures, [])


# --- construction lemmas --------------------------------------------------------

def verify_perlin(k: int, base_spec: WordSpec = STAIRCASE, n_max: int = 32,
                  policy: WindowPolicy = DEFAULT_POLICY):
    """Image construction with equivalent blocks but growing complexity.

    The image of any binary word under the block morphism factors into
    consecutive length-(2k+2) blocks that are pairwise k-Abelian equivalent,
    while its (k+1)-Abelian complexity at the arguments (2k+2)*n stays within
    fitted constant factors of the base word's Abelian complexity (constants
    reported, non-constancy asserted).
    """
    h = perlin_morphism(k)
    width = 2 * k + 2
    params = {"k": k, "base": spec_text(base_spec), "n_max": n_max}
    image_spec = MorphicImageSpec(h, base_spec)
    failures = []

    image = expand(image_spec, width * 512)
    first = image[0:width]
    for b in range(1, 512):
        block = image[b * width:(b + 1) * width]
        if not k_abelian_eq(first, block, k):
            failures.append((("block", b), "k-abelian equivalent to block 0",
                             block.to_text()))
    image_vals, image_blocked = _values_and_blocked(
        image_spec, k + 1, [width * n for n in range(1, n_max + 1)], policy)
    base_vals, base_blocked = _values_and_blocked(
        base_spec, 1, range(1, n_max + 1), policy)
    blocked = image_blocked + base_blocked
    fitted = {}
    if not blocked:
        pairs_up = [(image_vals[width * n], base_vals[n]) for n in range(1, n_max + 1)]
        pairs_down = [(base_vals[n], image_vals[width * n]) for n in range(1, n_max + 1)]
        fitted["image_over_base"] = _fit_upper_int(pairs_up)
        fitted["base_over_image"] = _fit_upper_int(pairs_down)
        if len({image_vals[width * n] for n in range(1, n_max + 1)}) == 1:
            failures.append(("image values", "non-constant", "constant"))
    return _finish("perlin", params, failures, blocked, fitted)


def verify_sparse_ones(spec: WordSpec = UWordSpec(BlockSequence((3,))), k: int = 3,
                       n_max: int = 32, policy: WindowPolicy = DEFAULT_POLICY):
    """For words whose length-k factors hold at most one 1, level-k and
    Abelian complexity stay within fitted constant factors, and two factors
    are k-Abelian equivalent exactly when they are Abelian equivalent with
    equal (k-1)-prefixes and suffixes."""
    params = {"spec": spec_text(spec), "k": k, "n_max": n_max}
    window, conv, _ = converged_factor_window(spec, max(n_max, k), policy)
    s = window.symbols
    for fac in {s[i:i + k] for i in range(len(s) - k + 1)}:
        if sum(fac) > 1:
            raise ParameterError(
                "the word violates the sparsity hypothesis: factor "
                + "".join(str(c) for c in fac))
    k_vals, k_blocked = _values_and_blocked(spec, k, range(1, n_max + 1), policy)
    a_vals, a_blocked = _values_and_blocked(spec, 1, range(1, n_max + 1), policy)
    blocked = k_blocked + a_blocked + [n for n in range(1, n_max + 1) if not conv[n]]
    failures = []
    fitted = {}
    if not k_blocked and not a_blocked:
        fitted["k_over_abelian"] = _fit_upper_int(
            [(k_vals[n], a_vals[n]) for n in range(1, n_max + 1)])
        fitted["abelian_over_k"] = _fit_upper_int(
            [(a_vals[n], k_vals[n]) for n in range(1, n_max + 1)])
    for n in range(1, n_max + 1):
        by_key = {}
        by_triple = {}
        for fac in {s[i:i + n] for i in range(len(s) - n + 1)}:
            u = Word(fac)
            by_key.setdefault(k_abelian_key(u, k), set()).add(fac)
            triple = (parikh_vector(u), fac[:k - 1], fac[len(fac) - (k - 1):] if k > 1 else b"")
            by_triple.setdefault(triple, set()).add(fac)
        if set(map(frozenset, by_key.values())) != set(map(frozenset, by_triple.values())):
            failures.append((n, "identical partitions", "differ"))
    return _finish("sparse-ones", params, failures, blocked, fitted)


def verify_uniform_scaling(spec: WordSpec = THUE_MORSE,
                           morphism: Morphism | None = None, k: int = 3,
                           i: int = 1, n_max: int = 32,
                           policy: WindowPolicy = DEFAULT_POLICY):
    """Fixed points of uniform morphisms: complexity at level k sampled on
    the grid m^i * (n+1) is bounded by a constant multiple of the 2-Abelian
    complexity; the smallest integer constant is reported."""
    if morphism is None:
        morphism = thue_morse_morphism()
    width = morphism.uniform_length()
    if width is None or width < 2:
        raise ParameterError("the morphism must be uniform of length >= 2")
    if k < 2:
        raise ParameterError("k must be >= 2")
    if i < 1:
        raise ParameterError("i must be >= 1")
    if width ** i < k - 1:
        raise ParameterError("need m^i >= k - 1")
    probe = expand(spec, 256)
    grown = apply_morphism(morphism, probe)
    if grown.symbols != expand(spec, len(grown)).symbols:
        raise ParameterError("spec is not a fixed point of the morphism")
    params = {"spec": spec_text(spec), "k": k, "i": i, "n_max": n_max}
    step = width ** i
    lhs, lhs_blocked = _values_and_blocked(
        spec, k, [step * (n + 1) for n in range(1, n_max + 1)], policy)
    rhs, rhs_blocked = _values_and_blocked(spec, 2, range(1, n_max + 1), policy)
    blocked = lhs_blocked + rhs_blocked
    fitted = {}
    if not blocked:
        fitted["scaling_upper"] = _fit_upper_int(
            [(lhs[step * (n + 1)], rhs[n]) for n in range(1, n_max + 1)])
    return _finish("uniform-scaling", params, [], blocked, fitted)


# --- registry -------------------------------------------------------------------

ALL_CHECKS = {
    "srec": verify_srec,
    "special-values": verify_s_special_values,
    "tm-sandwich": verify_tm_sandwich,
    "tm-bounds": verify_tm_bounds,
    "tm-balance": verify_tm_balance,
    "phi-classes": verify_phi_classes,
    "phi-identity": verify_phi_identity,
    "tau-champernowne": verify_tau_champernowne,
    "u-bounds": verify_u_bounds,
    "uniform-recurrence": verify_uniform_recurrence,
    "perlin": lambda policy=DEFAULT_POLICY: [verify_perlin(1, policy=policy),
                                             verify_perlin(2, policy=policy)],
    "sparse-ones": verify_sparse_ones,
    "uniform-scaling": verify_uniform_scaling,
    "sturmian": verify_sturmian_battery,
    "periodicity": verify_periodicity_battery,
    "growth-shape": verify_tm_growth_shape,
}


def run_all_checks(policy: WindowPolicy = DEFAULT_POLICY):
    """Every check at its default desk-scale parameters."""
    reports = []
    for name, fn in ALL_CHECKS.items():
        out = fn(policy=policy) if name != "phi-identity" else fn()
        reports.extend(out if isinstance(out, list) else [out])
    return reports


def _json_safe(value):
    if value == INFINITY:
        return "inf"
    if isinstance(value, bytes):
        return "".join(str(c) for c in value)
    if isinstance(value, (list, tuple)):
        return [_json_safe(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _json_safe(v) for k, v in value.items()}
    return value


def report_to_json_dict(report: VerificationReport) -> dict:
    return {
        "check": report.check,
        "params": _json_safe(report.params),
        "status": report.status,
        "witnesses": [_json_safe(list(w)) for w in report.witnesses],
        "fitted_constants": _json_safe(report.fitted_constants),
        "notes": report.notes,
    }
