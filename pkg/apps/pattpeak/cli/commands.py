"""The pattpeak argument tree and one command class per subcommand."""

import argparse
import logging
import sys
from pathlib import Path
from typing import Callable, Optional

from pydantic import ValidationError

from apps.pattpeak import __version__
from apps.pattpeak.cli import parsing
from apps.pattpeak.cli.cache import HistogramCache
from apps.pattpeak.cli.exceptions import EXIT_OK
from apps.pattpeak.cli.exceptions import EXIT_USAGE
from apps.pattpeak.cli.exceptions import CliException
from apps.pattpeak.cli.exceptions import NotInSpanExit
from apps.pattpeak.cli.exceptions import UsageError
from apps.pattpeak.cli.exceptions import VerificationFailed
from apps.pattpeak.cli.observable import CheckObservable
from apps.pattpeak.cli.render import Renderer
from apps.pattpeak.cli.runner import run_checks
from apps.pattpeak.cli.runner import run_jobs
from apps.pattpeak.combinat.exceptions import PattpeakException
from apps.pattpeak.combinat.insertion import phi
from apps.pattpeak.combinat.insertion import phi_preimage
from apps.pattpeak.combinat.insertion import rsk
from apps.pattpeak.combinat.insertion import sagan_worley
from apps.pattpeak.combinat.pattern_peak import conjecture_check
from apps.pattpeak.combinat.pattern_peak import find_nonsymmetric_witness
from apps.pattpeak.combinat.pattern_peak import iota
from apps.pattpeak.combinat.pattern_peak import r_n_from_histogram
from apps.pattpeak.combinat.permutations import PatternSet
from apps.pattpeak.combinat.permutations import descent_set
from apps.pattpeak.combinat.permutations import peak_equivalent
from apps.pattpeak.combinat.permutations import peak_histogram
from apps.pattpeak.combinat.permutations import peak_set
from apps.pattpeak.combinat.permutations import wilf_equivalent
from apps.pattpeak.combinat.qsym import BASIS_F
from apps.pattpeak.combinat.qsym import BASIS_M
from apps.pattpeak.combinat.qsym import f_to_m
from apps.pattpeak.combinat.qsym import k_to_f
from apps.pattpeak.combinat.schurq import NotInSpan
from apps.pattpeak.combinat.schurq import expand_in_schurq
from apps.pattpeak.combinat.schurq import schur_q
from apps.pattpeak.combinat.utils import find_subclass
from apps.pattpeak.combinat.verifiers import SUITES
from apps.pattpeak.combinat.verifiers import build_suite
from apps.pattpeak.config import OUTPUT_FORMATS
from apps.pattpeak.config import CliConfig


LOGGER = logging.getLogger(__name__)


def _common_options() -> argparse.ArgumentParser:
    # SUPPRESS keeps a subcommand from resetting a flag given before it
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--format', dest='output_format', choices=OUTPUT_FORMATS,
                        default=argparse.SUPPRESS, help='output format')
    common.add_argument('--cache-dir', type=Path, default=argparse.SUPPRESS,
                        help='directory for cached avoidance-class histograms')
    common.add_argument('--jobs', type=parsing.positive_int,
                        default=argparse.SUPPRESS, help='worker processes')
    common.add_argument('--config', dest='config_file', type=Path,
                        default=argparse.SUPPRESS, help='YAML configuration file')
    common.add_argument('--max-n', type=parsing.positive_int,
                        default=argparse.SUPPRESS,
                        help='largest degree to verify or search')
    common.add_argument('--log-level', default=argparse.SUPPRESS,
                        help='logging level (DEBUG, INFO, WARNING, ...)')
    return common


class Command(object):
    """A pattpeak subcommand. `execute()` returns the text for stdout or
    raises a CliException."""

    NAME = None
    HELP = None

    __SUBCLASSES_CACHE = {}

    def __init__(self, args: argparse.Namespace, config: CliConfig,
                 cache: Optional[HistogramCache] = None) -> None:
        self._args = args
        self._config = config
        self._renderer = Renderer.for_format(config.output_format)
        self._cache = cache or HistogramCache(config.cache_dir)

    @classmethod
    def for_name(cls, name: str) -> type:
        klass = find_subclass(cls, name, cache=cls.__SUBCLASSES_CACHE)
        if klass is None:
            raise UsageError(f"Unknown command '{name}'")
        return klass

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> None:
        pass

    @property
    def args(self) -> argparse.Namespace:
        return self._args

    @property
    def config(self) -> CliConfig:
        return self._config

    @property
    def renderer(self) -> Renderer:
        return self._renderer

    @property
    def cache(self) -> HistogramCache:
        return self._cache

    def histogram(self, patterns: PatternSet, n: int):
        histogram = self._cache.get(n, patterns)
        if histogram is None:
            histogram = peak_histogram(n, patterns)
            self._cache.put(n, patterns, histogram)
        return histogram

    def r_n(self, patterns: PatternSet, n: int):
        return r_n_from_histogram(self.histogram(patterns, n), n)

    def histograms(self, patterns: PatternSet, degrees: list) -> dict:
        """Histograms for several degrees; misses are computed on the
        configured number of workers."""
        found = {n: self._cache.get(n, patterns) for n in degrees}
        missing = [n for n in degrees if found[n] is None]
        computed = run_jobs(peak_histogram, [(n, patterns) for n in missing],
                            self._config.jobs)
        for n, histogram in zip(missing, computed):
            self._cache.put(n, patterns, histogram)
            found[n] = histogram
        return found

    def execute(self) -> str:
        raise NotImplementedError


class CommandRn(Command):
    NAME = 'rn'
    HELP = 'R_n(Π) in the K, F, M or Schur Q basis'

    @classmethod
    def add_arguments(cls, parser):
        parser.add_argument('n', type=parsing.degree)
        parser.add_argument('--patterns', type=parsing.pattern_list,
                            default=PatternSet(), help='e.g. 123,132')
        parser.add_argument('--basis', type=parsing.basis, default='K',
                            help='K, F, M or Q')

    def execute(self):
        n, patterns, basis = self.args.n, self.args.patterns, self.args.basis
        expr = self.r_n(patterns, n)

        if basis == BASIS_F:
            return self.renderer.qsym(k_to_f(expr))
        if basis == BASIS_M:
            return self.renderer.qsym(f_to_m(k_to_f(expr)))
        if basis == parsing.BASIS_Q:
            expansion = expand_in_schurq(expr)
            if isinstance(expansion, NotInSpan):
                raise NotInSpanExit(f"R_{n}({patterns}) is not in the span of "
                                    f"the Schur Q-functions",
                                    output=self.renderer.not_in_span(expansion))
            return self.renderer.expansion(expansion)
        return self.renderer.qsym(expr)


class CommandPeaks(Command):
    NAME = 'peaks'
    HELP = 'descent and peak sets of a permutation'

    @classmethod
    def add_arguments(cls, parser):
        parser.add_argument('permutation', type=parsing.permutation)

    def execute(self):
        p = self.args.permutation
        return self.renderer.peaks(p, descent_set(p), peak_set(p))


class CommandInsert(Command):
    NAME = 'insert'
    HELP = 'RSK or Sagan-Worley insertion of a permutation'

    @classmethod
    def add_arguments(cls, parser):
        group = parser.add_mutually_exclusive_group(required=True)
        group.add_argument('--rsk', dest='kind', action='store_const', const='rsk')
        group.add_argument('--sw', dest='kind', action='store_const', const='sw')
        parser.add_argument('permutation', type=parsing.permutation)
        parser.add_argument('--trace', action='store_true',
                            help='print every bump before the tableaux')

    def execute(self):
        insert = rsk if self.args.kind == 'rsk' else sagan_worley
        result = insert(self.args.permutation, trace=self.args.trace)
        return self.renderer.insertion(self.args.kind, result)


class CommandPhi(Command):
    NAME = 'phi'
    HELP = 'the shifted tableau Φ(π)'

    @classmethod
    def add_arguments(cls, parser):
        parser.add_argument('permutation', type=parsing.permutation)

    def execute(self):
        return self.renderer.tableau(phi(self.args.permutation))


class CommandPhiPreimage(Command):
    NAME = 'phi-preimage'
    HELP = 'the permutations in Av_n(321) that Φ sends to a two-row tableau'

    @classmethod
    def add_arguments(cls, parser):
        parser.add_argument('tableau', type=parsing.shifted_tableau,
                            help='rows separated by "/", e.g. 1,2,4,5/3,6')

    def execute(self):
        return self.renderer.permutations(phi_preimage(self.args.tableau))


class CommandSchurq(Command):
    NAME = 'schurq'
    HELP = 'Q_λ in the K, F or M basis'

    @classmethod
    def add_arguments(cls, parser):
        parser.add_argument('shape', type=parsing.strict_partition,
                            help='strict partition, e.g. 3,1')
        parser.add_argument('--basis', type=parsing.basis, default='K',
                            help='K, F or M')

    def execute(self):
        expr = schur_q(self.args.shape)
        if self.args.basis == BASIS_F:
            expr = k_to_f(expr)
        elif self.args.basis == BASIS_M:
            expr = f_to_m(k_to_f(expr))
        elif self.args.basis == parsing.BASIS_Q:
            raise UsageError("schurq renders Q_λ in the K, F or M basis")
        return self.renderer.qsym(expr)


class ProgressReporter(object):
    """Logs each finished check as the observable reports it."""

    def __init__(self, suite: str) -> None:
        self._suite = suite

    def update(self, observable: CheckObservable, index: int, result) -> None:
        status = 'info' if result.informational else \
            'pass' if result.passed else 'FAIL'
        LOGGER.info(f"[{self._suite} {observable.completed}/{observable.total}] "
                    f"{status} {result.label}")

    def __repr__(self):
        return f"<ProgressReporter suite={self._suite}>"


class CommandVerify(Command):
    NAME = 'verify'
    HELP = 'run a verification suite against brute-force enumeration'

    @classmethod
    def add_arguments(cls, parser):
        parser.add_argument('suite', choices=sorted(SUITES))

    def execute(self):
        suite, max_n = self.args.suite, self.config.max_n
        checks = build_suite(suite, max_n)

        observable = CheckObservable(len(checks))
        observable.register(ProgressReporter(suite))
        results = run_checks(checks, self.config.jobs, observable)

        output = self.renderer.verification(suite, max_n, results)
        failed = [r for r in results if not r.passed and not r.informational]
        if failed:
            raise VerificationFailed(
                f"{len(failed)} of {len(results)} {suite} checks failed",
                output=output)
        return output


class CommandSearch(Command):
    NAME = 'search'
    HELP = 'search for the smallest n where R_n(Π) is not symmetric'

    @classmethod
    def add_arguments(cls, parser):
        parser.add_argument('kind', choices=['asymmetry'])
        parser.add_argument('--patterns', type=parsing.pattern_list,
                            required=True, help='e.g. 132')

    def execute(self):
        patterns, max_n = self.args.patterns, self.config.max_n
        n = find_nonsymmetric_witness(patterns, max_n, compute=self.r_n)
        return self.renderer.witness(patterns, n, max_n)


class CommandConjecture(Command):
    NAME = 'conjecture'
    HELP = 'check R_n(ι_k) for symmetry and Schur Q-positivity'

    @classmethod
    def add_arguments(cls, parser):
        parser.add_argument('--iota', type=parsing.positive_int, required=True,
                            help='k, for the pattern 12...k')

    def execute(self):
        k, max_n = self.args.iota, self.config.max_n
        if k < 2:
            raise UsageError(f"--iota needs k >= 2, got {k}")
        patterns = PatternSet([iota(k)])
        degrees = list(range(1, max_n + 1))
        histograms = self.histograms(patterns, degrees)
        reports = [conjecture_check(k, n, r_n_from_histogram(histograms[n], n))
                   for n in degrees]
        return self.renderer.conjecture(reports)


class CommandPeakEquiv(Command):
    NAME = 'peak-equiv'
    HELP = 'compare two pattern sets for peak and Wilf equivalence'

    @classmethod
    def add_arguments(cls, parser):
        parser.add_argument('--a', type=parsing.pattern_list, required=True)
        parser.add_argument('--b', type=parsing.pattern_list, required=True)

    def execute(self):
        a, b, max_n = self.args.a, self.args.b, self.config.max_n
        outcomes = run_jobs(peak_equivalent,
                            [(a, b, n) for n in range(1, max_n + 1)],
                            self.config.jobs)
        return self.renderer.peak_equivalence(
            a, b, max_n, all(outcomes), wilf_equivalent(a, b, max_n))


COMMANDS = (CommandRn, CommandPeaks, CommandInsert, CommandPhi,
            CommandPhiPreimage, CommandSchurq, CommandVerify, CommandSearch,
            CommandConjecture, CommandPeakEquiv)


def build_parser() -> argparse.ArgumentParser:
    common = _common_options()
    parser = argparse.ArgumentParser(
        prog='pattpeak', parents=[common],
        description='Pattern-avoiding peak functions and their Schur Q expansions')
    parser.add_argument('--version', action='version',
                        version=f"%(prog)s {__version__}")
    subparsers = parser.add_subparsers(dest='command', required=True)
    for command in COMMANDS:
        sub = subparsers.add_parser(command.NAME, parents=[common],
                                    help=command.HELP)
        command.add_arguments(sub)
    return parser


def load_config(args: argparse.Namespace) -> CliConfig:
    return CliConfig.load(
        getattr(args, 'config_file', None),
        output_format=getattr(args, 'output_format', None),
        cache_dir=getattr(args, 'cache_dir', None),
        max_n=getattr(args, 'max_n', None),
        jobs=getattr(args, 'jobs', None),
        log_level=getattr(args, 'log_level', None),
    )


def execute(argv: Optional[list] = None,
            setup_logging: Optional[Callable] = None,
            stdout=None, stderr=None) -> int:
    """Run one pattpeak invocation and return its exit code."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr

    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    try:
        config = load_config(args)
    except ValidationError as e:
        print(f"pattpeak: invalid configuration: {e}", file=stderr)
        return EXIT_USAGE

    if setup_logging is not None:
        setup_logging(config.log_level)

    try:
        command = Command.for_name(args.command)(args, config)
        output = command.execute()
    except CliException as e:
        LOGGER.debug(f"{args.command} ended with exit code {e.exit_code} at {e.at}")
        if e.output:
            print(e.output, file=stdout)
        print(f"pattpeak: {e}", file=stderr)
        return e.exit_code
    except PattpeakException as e:
        print(f"pattpeak: {e}", file=stderr)
        return EXIT_USAGE

    print(output, file=stdout)
    return EXIT_OK
