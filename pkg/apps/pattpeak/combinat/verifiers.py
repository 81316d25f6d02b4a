"""Verification suites: closed forms, tabulated ι_k expansions, structural identities
and the shuffle formula, each checked against brute-force enumeration.

A suite is a list of `VerificationCheck`s. Checks hold a module-level
function and plain arguments so they can be shipped to worker processes.
"""

import logging
from collections import Counter
from itertools import permutations
from typing import Callable, NamedTuple

from apps.pattpeak.combinat.exceptions import PattpeakException
from apps.pattpeak.combinat.insertion import phi
from apps.pattpeak.combinat.insertion import phi_preimage
from apps.pattpeak.combinat.insertion import rsk
from apps.pattpeak.combinat.insertion import sagan_worley
from apps.pattpeak.combinat.insertion import unmark_class_sizes
from apps.pattpeak.combinat.pattern_peak import APPENDIX
from apps.pattpeak.combinat.pattern_peak import APPENDIX_ERRATA
from apps.pattpeak.combinat.pattern_peak import ClosedFormRow5
from apps.pattpeak.combinat.pattern_peak import TABLE1
from apps.pattpeak.combinat.pattern_peak import closed_form
from apps.pattpeak.combinat.pattern_peak import conjecture_check
from apps.pattpeak.combinat.pattern_peak import include_delta_divergence
from apps.pattpeak.combinat.pattern_peak import include_delta_formula
from apps.pattpeak.combinat.pattern_peak import include_delta_patterns
from apps.pattpeak.combinat.pattern_peak import include_delta_printed
from apps.pattpeak.combinat.pattern_peak import pattern_fundamental
from apps.pattpeak.combinat.pattern_peak import r_n
from apps.pattpeak.combinat.pattern_peak import shuffle_formula_rhs
from apps.pattpeak.combinat.permutations import SYMMETRY_INVERSE
from apps.pattpeak.combinat.permutations import SYMMETRY_REVERSE
from apps.pattpeak.combinat.permutations import PatternSet
from apps.pattpeak.combinat.permutations import Permutation
from apps.pattpeak.combinat.permutations import RELABEL_ASCENDING_TAIL
from apps.pattpeak.combinat.permutations import RELABEL_DESCENDING_TAIL
from apps.pattpeak.combinat.permutations import apply_symmetry
from apps.pattpeak.combinat.permutations import descent_set
from apps.pattpeak.combinat.permutations import enumerate_av
from apps.pattpeak.combinat.permutations import largest_entry_relabel
from apps.pattpeak.combinat.permutations import pattern_set_symmetry
from apps.pattpeak.combinat.permutations import peak_equivalent
from apps.pattpeak.combinat.permutations import peak_set
from apps.pattpeak.combinat.permutations import shuffle_pattern_sets
from apps.pattpeak.combinat.permutations import shuffle_perms
from apps.pattpeak.combinat.qsym import QsymExpr
from apps.pattpeak.combinat.qsym import f_to_m
from apps.pattpeak.combinat.qsym import is_symmetric
from apps.pattpeak.combinat.qsym import k_to_f
from apps.pattpeak.combinat.qsym import peak_label
from apps.pattpeak.combinat.qsym import peak_product
from apps.pattpeak.combinat.qsym import quasi_shuffle_product
from apps.pattpeak.combinat.qsym import reverse_m
from apps.pattpeak.combinat.qsym import to_m
from apps.pattpeak.combinat.schurq import SchurQExpansion
from apps.pattpeak.combinat.schurq import expand_in_schurq
from apps.pattpeak.combinat.schurq import peak_sets
from apps.pattpeak.combinat.tableaux import binomial
from apps.pattpeak.combinat.tableaux import count_two_row_ssht
from apps.pattpeak.combinat.tableaux import enumerate_ssht
from apps.pattpeak.combinat.tableaux import labeled_permutations
from apps.pattpeak.combinat.tableaux import tableau_descents
from apps.pattpeak.combinat.tableaux import tableau_peaks
from apps.pattpeak.combinat.tableaux import two_row_ssht


LOGGER = logging.getLogger(__name__)

SUITE_TABLE1 = 'table1'
SUITE_APPENDIX = 'appendix'
SUITE_IDENTITIES = 'identities'
SUITE_SHUFFLE = 'shuffle'

# Every proper subset of S_3 not containing both 123 and 321
S3 = ('123', '132', '213', '231', '312', '321')


class CheckResult(NamedTuple):
    label: str
    passed: bool
    detail: str = ''
    informational: bool = False


class VerificationCheck(NamedTuple):
    label: str
    func: Callable
    args: tuple = ()

    def run(self) -> CheckResult:
        try:
            outcome = self.func(*self.args)
        except AssertionError as e:
            return CheckResult(self.label, False, f"assertion failed: {e}")
        except PattpeakException as e:
            LOGGER.debug(f"Check '{self.label}' raised {type(e).__name__} at {e.at}")
            return CheckResult(self.label, False, f"{type(e).__name__}: {e}")
        if isinstance(outcome, CheckResult):
            return outcome._replace(label=self.label)
        passed, detail = outcome
        return CheckResult(self.label, passed, detail)


def run_check(check: VerificationCheck) -> CheckResult:
    return check.run()


def _all_perms(n: int):
    return (Permutation._trusted(e) for e in permutations(range(1, n + 1)))


def _ok(detail: str = '') -> tuple:
    return True, detail


def _first_failure(items, predicate, describe) -> tuple:
    count = 0
    for item in items:
        count += 1
        if not predicate(item):
            return False, describe(item)
    return True, f"{count} cases"


def s3_subsets() -> list:
    """Pattern sets Π ⊆ S_3 with {123, 321} ⊄ Π, as canonical text."""
    result = []
    for mask in range(1 << len(S3)):
        chosen = [S3[i] for i in range(len(S3)) if mask >> i & 1]
        if '123' in chosen and '321' in chosen:
            continue
        result.append(','.join(chosen) if chosen else '{}')
    return result


# -- closed forms -------------------------------------------------------------

def _check_table1(row: int, patterns_text: str, n: int) -> tuple:
    patterns = PatternSet.from_str(patterns_text)
    got = expand_in_schurq(r_n(patterns, n))
    expected = closed_form(row, n)
    return got == expected, f"Π={patterns} n={n} got {got} expected {expected}"


def _check_small_n(patterns_text: str, n: int) -> tuple:
    patterns = PatternSet.from_str(patterns_text)
    got = expand_in_schurq(r_n(patterns, n))
    expected = SchurQExpansion.from_pairs(n, [((n,), n)])
    return got == expected, f"Π={patterns} n={n} got {got} expected {expected}"


def _check_symmetry_classification(patterns_text: str, max_n: int) -> tuple:
    patterns = PatternSet.from_str(patterns_text)
    listed = any(patterns in row.pattern_sets() for row in TABLE1)
    symmetric = all(is_symmetric(r_n(patterns, n)) for n in range(1, max_n + 1))
    return symmetric == listed, \
        f"Π={patterns} symmetric up to n={max_n}: {symmetric}, listed: {listed}"


def table1_checks(max_n: int) -> list:
    checks = []
    for row in TABLE1:
        for text in row.PATTERN_SETS:
            for n in range(3, max_n + 1):
                checks.append(VerificationCheck(
                    f"table1 row {row.ROW} Π={{{text}}} n={n}",
                    _check_table1, (row.ROW, text, n)))
    for text in s3_subsets():
        for n in (1, 2):
            if n <= max_n:
                checks.append(VerificationCheck(
                    f"table1 small Π={{{text}}} n={n}",
                    _check_small_n, (text, n)))
    return checks


def classification_checks(max_n: int) -> list:
    return [VerificationCheck(f"classification Π={{{text}}} n<={max_n}",
                              _check_symmetry_classification, (text, max_n))
            for text in s3_subsets()]


# -- tabulated ι_k expansions -------------------------------------------------

def _check_appendix(k: int, n: int) -> tuple:
    report = conjecture_check(k, n)
    expected = APPENDIX[k][n]
    passed = report.symmetric and report.q_positive and \
        report.expansion == expected
    return passed, (f"R_{n}({Permutation.identity(k)}) symmetric={report.symmetric} "
                    f"q_positive={report.q_positive} got {report.expansion} "
                    f"expected {expected}")


def _report_erratum(index: int) -> CheckResult:
    erratum = APPENDIX_ERRATA[index]
    return CheckResult('', True, (
        f"R_{erratum.n}({Permutation.identity(erratum.k)}) printed as "
        f"{erratum.printed}, checked as {erratum.corrected}: {erratum.note}"),
        informational=True)


def appendix_checks(max_n: int) -> list:
    checks = []
    for k in sorted(APPENDIX):
        for n in sorted(APPENDIX[k]):
            if n <= max_n:
                checks.append(VerificationCheck(
                    f"appendix ι_{k} n={n}", _check_appendix, (k, n)))
    for index, erratum in enumerate(APPENDIX_ERRATA):
        if erratum.n <= max_n:
            checks.append(VerificationCheck(
                f"erratum ι_{erratum.k} n={erratum.n}", _report_erratum, (index,)))
    return checks


# -- identities ---------------------------------------------------------------

def _neighbours_left_of(p: Permutation) -> set:
    where = {v: i for i, v in enumerate(p)}
    n = len(p)
    return {v for v in range(2, n) if where[v - 1] < where[v] > where[v + 1]}


def _check_sw_peak_values(n: int) -> tuple:
    return _first_failure(
        _all_perms(n),
        lambda p: set(tableau_peaks(sagan_worley(p).insertion)) ==
        _neighbours_left_of(p),
        lambda p: f"p={p}: Peak(R(p))={tableau_peaks(sagan_worley(p).insertion)}")


def _check_sw_inverse_peaks(n: int) -> tuple:
    return _first_failure(
        _all_perms(n),
        lambda p: tableau_peaks(sagan_worley(
            apply_symmetry(p, SYMMETRY_INVERSE)).insertion) == peak_set(p),
        lambda p: f"p={p}: Peak(p)={peak_set(p)}")


def _check_rsk_descents(n: int) -> tuple:
    return _first_failure(
        _all_perms(n),
        lambda p: tableau_descents(rsk(p).recording) == descent_set(p),
        lambda p: f"p={p}: Des(p)={descent_set(p)}, "
                  f"Des(Q)={tableau_descents(rsk(p).recording)}")


def _check_phi_peaks(n: int, over_all: bool) -> tuple:
    perms = _all_perms(n) if over_all else \
        enumerate_av(n, PatternSet.from_str('321'))
    return _first_failure(
        perms,
        lambda p: tableau_peaks(phi(p)) == peak_set(p),
        lambda p: f"p={p}: Peak(Φ(p))={tableau_peaks(phi(p))}, Peak(p)={peak_set(p)}")


def _check_phi_preimages(n: int) -> tuple:
    av = set(enumerate_av(n, PatternSet.from_str('321')))
    covered = set()
    for t in two_row_ssht(n):
        k = len(t.rows[1]) if t.height == 2 else 0
        pre = phi_preimage(t)
        expected = binomial(n, k + 1) - binomial(n, k - 1)
        if len(pre) != expected:
            return False, f"T={t}: |Φ^-1(T)|={len(pre)}, expected {expected}"
        if covered & pre or not pre <= av:
            return False, f"T={t}: preimages overlap or leave Av_{n}(321)"
        if any(phi(p) != t for p in pre):
            return False, f"T={t}: a preimage does not map back to T"
        covered |= pre
    return covered == av, f"{len(covered)} of {len(av)} permutations covered"


def _check_reversal_m(n: int) -> tuple:
    def holds(p):
        forward = to_m(QsymExpr(n, 'K', {peak_set(p): 1}))
        backward = to_m(QsymExpr(n, 'K', {
            peak_set(apply_symmetry(p, SYMMETRY_REVERSE)): 1}))
        return reverse_m(forward) == backward
    return _first_failure(_all_perms(n), holds, lambda p: f"p={p}")


def _check_symmetric_reversal(patterns_text: str, n: int) -> tuple:
    patterns = PatternSet.from_str(patterns_text)
    expr = r_n(patterns, n)
    if not is_symmetric(expr):
        return _ok(f"Π={patterns} n={n} not symmetric")
    reversed_expr = r_n(pattern_set_symmetry(patterns, SYMMETRY_REVERSE), n)
    return expr == reversed_expr, f"Π={patterns} n={n}: {expr} vs {reversed_expr}"


def _check_two_row_sum(n: int) -> tuple:
    total = sum((n - 2 * k) * count_two_row_ssht(n, k)
                for k in range(n // 2 + 1) if k == 0 or n - k > k)
    return total == 2 ** (n - 1), f"n={n}: sum={total}"


def _check_two_row_counts(n: int) -> tuple:
    for k in range(n // 2 + 1):
        if k and n - k <= k:
            continue
        shape = (n - k, k) if k else (n,)
        enumerated = len(enumerate_ssht(shape))
        if enumerated != count_two_row_ssht(n, k):
            return False, f"SShT{shape}: {enumerated} vs {count_two_row_ssht(n, k)}"
    return _ok()


def _check_v_shaped(n: int) -> tuple:
    av = enumerate_av(n, PatternSet.from_str('132,231'))
    if len(av) != 2 ** (n - 1):
        return False, f"|Av_{n}(132,231)| = {len(av)}"
    return _first_failure(av, lambda p: not peak_set(p).elements,
                          lambda p: f"p={p} has peaks {peak_set(p)}")


def _check_labeled_insertion(n: int) -> tuple:
    for t in two_row_ssht(n):
        for p in labeled_permutations(t):
            if sagan_worley(p).insertion != t:
                return False, f"T={t}: {p} inserts to {sagan_worley(p).insertion}"
    return _ok()


def _check_unmark_sizes(n: int) -> tuple:
    sizes = unmark_class_sizes(n)
    for t, count in sizes.items():
        expected = 2 ** (n - t.height) * len(enumerate_ssht(t.shape))
        if count != expected:
            return False, f"T={t}: {count} permutations, expected {expected}"
    return _ok(f"{len(sizes)} tableaux")


def _check_relabel(n: int, variant: str) -> tuple:
    source = enumerate_av(n, PatternSet.from_str('123,132,312'))
    target = set(enumerate_av(n, PatternSet.from_str(variant)))
    images = [largest_entry_relabel(p, variant) for p in source]
    if set(images) != target or len(set(images)) != len(source):
        return False, f"n={n}: image is not Av_{n}({variant})"
    return _first_failure(
        zip(source, images), lambda pair: peak_set(pair[0]) == peak_set(pair[1]),
        lambda pair: f"{pair[0]} -> {pair[1]} changes the peak set")


def _check_include_delta(j: int, n: int) -> tuple:
    brute = expand_in_schurq(r_n(include_delta_patterns(j), n))
    clipped = include_delta_formula(j, n)
    if brute != clipped:
        return False, f"j={j} n={n}: brute {brute}, clipped {clipped}"
    if n >= 2 * j - 3 and include_delta_printed(j, n) != brute:
        return False, f"j={j} n={n}: printed form {include_delta_printed(j, n)}"
    return _ok()


def _report_include_delta_divergence(j: int, n: int) -> CheckResult:
    shapes = ', '.join(f"Q{s}" for s in include_delta_divergence(j, n))
    return CheckResult('', True, (
        f"printed and clipped forms differ at j={j} n={n} on {shapes}: printed "
        f"{include_delta_printed(j, n)}, clipped {include_delta_formula(j, n)}"),
        informational=True)


def _check_peak_equivalence(a_text: str, b_text: str, n: int) -> tuple:
    a, b = PatternSet.from_str(a_text), PatternSet.from_str(b_text)
    return peak_equivalent(a, b, n), f"{a} vs {b} at n={n}"


def _check_fundamental_equal(a_text: str, b_text: str, n: int) -> tuple:
    a, b = PatternSet.from_str(a_text), PatternSet.from_str(b_text)
    return pattern_fundamental(a, n) == pattern_fundamental(b, n), \
        f"{a} vs {b} at n={n}"


# Largest n for the check of Φ peak preservation over all of S_n
PHI_ALL_PERMS_MAX_N = 6

PEAK_EQUIVALENT_FAMILIES = (
    ('213,231', '213,132', '132,123'),
    ('123,132,312', '132,213,321', '132,213,312'),
)


def identities_checks(max_n: int) -> list:
    checks = []
    for n in range(1, max_n + 1):
        checks += [
            VerificationCheck(f"SW peaks are values right of both neighbours n={n}",
                              _check_sw_peak_values, (n,)),
            VerificationCheck(f"Peak(p) = Peak(R(p^-1)) n={n}",
                              _check_sw_inverse_peaks, (n,)),
            VerificationCheck(f"Des(p) = Des(Q(p)) n={n}", _check_rsk_descents, (n,)),
            VerificationCheck(f"Peak(Φ(p)) = Peak(p) on Av_{n}(321)",
                              _check_phi_peaks, (n, False)),
            VerificationCheck(f"Φ preimages partition Av_{n}(321)",
                              _check_phi_preimages, (n,)),
            VerificationCheck(f"M reversal of K_Peak(p) n={n}",
                              _check_reversal_m, (n,)),
            VerificationCheck(f"two-row SShT counts n={n}",
                              _check_two_row_counts, (n,)),
            VerificationCheck(f"|Av_{n}(132,231)| = 2^(n-1), peakless",
                              _check_v_shaped, (n,)),
            VerificationCheck(f"labeled V-permutations insert to T n={n}",
                              _check_labeled_insertion, (n,)),
            VerificationCheck(f"unmark class sizes n={n}",
                              _check_unmark_sizes, (n,)),
        ]
        if n <= PHI_ALL_PERMS_MAX_N:
            checks.append(VerificationCheck(
                f"Peak(Φ(p)) = Peak(p) on S_{n}", _check_phi_peaks, (n, True)))
        for variant in (RELABEL_DESCENDING_TAIL, RELABEL_ASCENDING_TAIL):
            checks.append(VerificationCheck(
                f"largest-entry relabel to Av({variant}) n={n}",
                _check_relabel, (n, variant)))
        for text in s3_subsets():
            checks.append(VerificationCheck(
                f"symmetric R_n(Π) = R_n(Π^r) Π={{{text}}} n={n}",
                _check_symmetric_reversal, (text, n)))
        for family in PEAK_EQUIVALENT_FAMILIES:
            for other in family[1:]:
                checks.append(VerificationCheck(
                    f"peak-equivalent {{{family[0]}}} ~ {{{other}}} n={n}",
                    _check_peak_equivalence, (family[0], other, n)))
        for other in PEAK_EQUIVALENT_FAMILIES[0][1:]:
            checks.append(VerificationCheck(
                f"equal F-expansions {{213,231}} ~ {{{other}}} n={n}",
                _check_fundamental_equal, ('213,231', other, n)))
        for j in (2, 3, 4, 5):
            checks.append(VerificationCheck(
                f"R_n(132,312,δ_{j}) n={n}", _check_include_delta, (j, n)))
            if include_delta_divergence(j, n):
                checks.append(VerificationCheck(
                    f"R_n(132,312,δ_{j}) printed form n={n}",
                    _report_include_delta_divergence, (j, n)))

    for n in range(1, 21):
        checks.append(VerificationCheck(
            f"Σ (n-2k)|SShT(n-k,k)| = 2^(n-1) n={n}", _check_two_row_sum, (n,)))
    return checks


# -- shuffle formula and products ---------------------------------------------

SHUFFLE_PAIRS = (('12', '1'), ('21', '1'), ('1', '12'))


def _check_shuffle_formula(a_text: str, b_text: str, n: int) -> tuple:
    a, b = PatternSet.from_str(a_text), PatternSet.from_str(b_text)
    direct = r_n(shuffle_pattern_sets(a, b), n)
    formula = shuffle_formula_rhs(a, b, n)
    return direct == formula, f"{a} ⧢ {b} n={n}: direct {direct}, formula {formula}"


def _check_shuffle_set(patterns_text: str, n: int) -> tuple:
    patterns = PatternSet.from_str(patterns_text)
    got = expand_in_schurq(r_n(patterns, n))
    expected = closed_form(ClosedFormRow5.ROW, n)
    return got == expected, f"Π={patterns} n={n}: got {got} expected {expected}"


def _check_product_oracle(n1: int, n2: int) -> tuple:
    for s1 in peak_sets(n1):
        for s2 in peak_sets(n2):
            a = QsymExpr(n1, 'K', {s1: 1})
            b = QsymExpr(n2, 'K', {s2: 1})
            via_k = f_to_m(k_to_f(peak_product(a, b)))
            via_m = quasi_shuffle_product(to_m(a), to_m(b))
            if via_k != via_m:
                label = f"{peak_label(s1)} * {peak_label(s2)}"
                return False, f"{label}: {via_k} vs {via_m}"
    return _ok()


def _check_representative_independence(n1: int, n2: int) -> tuple:
    """Shuffling any π, σ with the given peak sets gives the same K sum as
    the canonical representatives."""
    groups = {}
    for size in {n1, n2}:
        by_peaks = {}
        for p in _all_perms(size):
            by_peaks.setdefault(peak_set(p), []).append(p)
        groups[size] = by_peaks

    for s1, left in groups[n1].items():
        for s2, right in groups[n2].items():
            baseline = peak_product(QsymExpr(n1, 'K', {s1: 1}),
                                    QsymExpr(n2, 'K', {s2: 1}))
            for p in left:
                for q in right:
                    counts = Counter(peak_set(rho) for rho in shuffle_perms(p, q))
                    if QsymExpr(n1 + n2, 'K', counts) != baseline:
                        return False, (f"{peak_label(s1)} * {peak_label(s2)} "
                                       f"differs for {p} ⧢ {q}")
    return _ok()


def shuffle_checks(max_n: int) -> list:
    checks = []
    for a_text, b_text in SHUFFLE_PAIRS:
        for n in range(0, max_n + 1):
            checks.append(VerificationCheck(
                f"shuffle formula {{{a_text}}} ⧢ {{{b_text}}} n={n}",
                _check_shuffle_formula, (a_text, b_text, n)))
    for text in ClosedFormRow5.SHUFFLE_SETS:
        for n in range(ClosedFormRow5.MIN_N, max_n + 1):
            checks.append(VerificationCheck(
                f"shuffle set Π={{{text}}} n={n}", _check_shuffle_set, (text, n)))
    for total in range(0, min(max_n, 7) + 1):
        for n1 in range(total + 1):
            checks.append(VerificationCheck(
                f"peak product oracle degrees ({n1},{total - n1})",
                _check_product_oracle, (n1, total - n1)))
    for total in range(0, min(max_n, 6) + 1):
        for n1 in range(total + 1):
            checks.append(VerificationCheck(
                f"peak product representative independence ({n1},{total - n1})",
                _check_representative_independence, (n1, total - n1)))
    return checks


SUITES = {
    SUITE_TABLE1: lambda max_n: table1_checks(max_n) + classification_checks(
        min(max_n, 7)),
    SUITE_APPENDIX: appendix_checks,
    SUITE_IDENTITIES: identities_checks,
    SUITE_SHUFFLE: shuffle_checks,
}


def build_suite(name: str, max_n: int) -> list:
    try:
        factory = SUITES[name]
    except KeyError:
        raise ValueError(f"Unknown suite '{name}'") from None
    checks = factory(max_n)
    LOGGER.debug(f"Suite {name} up to n={max_n}: {len(checks)} checks")
    return checks


def tally(results) -> Counter:
    return Counter('info' if r.informational else 'pass' if r.passed else 'fail'
                   for r in results)
