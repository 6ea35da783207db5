#!/usr/bin/env python3
"""
Periplectic Linkage CLI
Command-line front end: JSON results on stdout, a short summary on stderr
"""

import argparse
import json
import logging
import os
import sys
from typing import List, Optional, Sequence

# Add current directory to path
sys.path.append(os.path.dirname(os.path.abspath(__file__)))

from affine_even import Reflection, check_prime, defect, dot_reflect, even_linked
from block_engine import SearchBox, block_census, census_graph, reduce
from certificates import Certificate, verify_certificate
from config import Config, config, setup_logging
from errors import (BudgetExhausted, CensusAssertionFailed, ClaimFailed, HypothesisViolated,
                    PeriplecticError, WeightError)
from graph_export import to_dot, write_dot
from jantzen import (VerdictCache, attach_cache, even_irreducible, f0_member,
                     fast_f0_screen_reason, good_filtration_factors)
from linkage_moves import neighbors
from recipe_replay import RECIPES, RecipeGrid, replay_recipe, verify_all_recipes
from weights import ParityWeight, Weight, sector

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


class UsageError(Exception):
    """Bad command-line input"""


def emit(payload) -> None:
    print(json.dumps(payload, ensure_ascii=False, separators=(",", ":")))


def say(message: str) -> None:
    print(message, file=sys.stderr)


def parse_weights(values: Sequence[str]) -> List[Weight]:
    """Integers after `--`, with "/" separating several weights"""
    groups: List[List[int]] = [[]]
    for token in values:
        if token == "/":
            groups.append([])
            continue
        try:
            groups[-1].append(int(token))
        except ValueError:
            raise UsageError(f"weight entries must be integers, got {token!r}")
    try:
        return [Weight(tuple(group)) for group in groups]
    except WeightError as e:
        raise UsageError(str(e))


def parse_range(text: str) -> range:
    """"lo:hi" inclusive"""
    try:
        lo, hi = (int(part) for part in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected lo:hi, got {text!r}")
    return range(lo, hi + 1)


def parse_primes(text: str) -> List[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma list of primes, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--log-level", default=None, help="DEBUG, INFO, WARNING or ERROR")
    common.add_argument("--strict-eligibility", action="store_true", default=None,
                        help="require defect 0 as well as Jantzen irreducibility for odd moves")
    common.add_argument("--cap", type=int, default=None, help="excursion cap for even reflections")
    common.add_argument("--budget", type=int, default=None, help="expanded-node budget per reduction")
    common.add_argument("--cache", default=None, help="JSON-lines verdict cache file")

    with_p = argparse.ArgumentParser(add_help=False, parents=[common])
    with_p.add_argument("--p", type=int, required=True, help="odd prime")

    weights = argparse.ArgumentParser(add_help=False)
    weights.add_argument("values", nargs="*", help="weight entries after --")

    parser = argparse.ArgumentParser(prog="periplectic",
                                     description="Linkage and blocks for the periplectic supergroup P(n)")
    commands = parser.add_subparsers(dest="command", required=True)

    commands.add_parser("defect", parents=[with_p, weights], help="defect of λ")
    commands.add_parser("jantzen", parents=[with_p, weights], help="Jantzen verdict and failing pairs")
    commands.add_parser("f0", parents=[with_p, weights], help="eligibility for odd moves")
    commands.add_parser("even-linked", parents=[with_p, weights], help="Donkin criterion for λ / μ")
    reflect_cmd = commands.add_parser("reflect", parents=[with_p, weights], help="s_{ε_i−ε_j,kp}•λ")
    for name in ("--i", "--j", "--k"):
        reflect_cmd.add_argument(name, type=int, required=True)
    commands.add_parser("good-filtration", parents=[common, weights], help="factors λ+ε_i+ε_j")
    for name, text in (("neighbors", "all single moves from (λ, ε)"),
                       ("reduce", "certified chain to the block representative")):
        sub = commands.add_parser(name, parents=[with_p, weights], help=text)
        sub.add_argument("--parity", type=int, choices=(0, 1), default=0)

    for name, text in (("block-census", "reduce every label in a box"),
                       ("graph", "DOT export of the restricted move graph")):
        sub = commands.add_parser(name, parents=[with_p], help=text)
        sub.add_argument("--n", type=int, required=True)
        sub.add_argument("--lo", type=int, default=-2)
        sub.add_argument("--hi", type=int, default=2)
        sub.add_argument("--dot", default=None, help="also write the DOT graph here")
        if name == "block-census":
            sub.add_argument("--export", default=None, help=".csv or .xlsx table of rows")
            sub.add_argument("--strict", action="store_true",
                             help="raise instead of reporting when assertions fail")

    verify_cmd = commands.add_parser("verify-chain", parents=[common], help="replay a certificate")
    verify_cmd.add_argument("--file", default="-", help="certificate JSON (default stdin)")

    replay_cmd = commands.add_parser("replay", parents=[common], help="run scripted chains")
    replay_cmd.add_argument("--recipe", choices=sorted(RECIPES), default=None)
    replay_cmd.add_argument("--a", type=int, default=0)
    replay_cmd.add_argument("--i", type=int, default=None)
    replay_cmd.add_argument("--n", type=int, default=None)
    replay_cmd.add_argument("--p", type=int, default=None)
    replay_cmd.add_argument("--parity", type=int, choices=(0, 1), default=0)
    replay_cmd.add_argument("--grid", action="store_true", help="sweep a parameter grid")
    replay_cmd.add_argument("--a-range", type=parse_range, default=range(-2, 3))
    replay_cmd.add_argument("--n-range", type=parse_range, default=range(2, 8))
    replay_cmd.add_argument("--primes", type=parse_primes, default=[3, 5, 7])
    replay_cmd.add_argument("--export", default=None, help=".csv or .xlsx table of rows")
    return parser


class LinkageCli:
    """Runs one parsed command against the configured settings"""

    def __init__(self, args: argparse.Namespace, settings: Config):
        self.args = args
        self.settings = settings

    def run(self) -> int:
        handler = getattr(self, "_cmd_" + self.args.command.replace("-", "_"))
        return handler()

    def _weight(self) -> Weight:
        found = parse_weights(self.args.values)
        if len(found) != 1:
            raise UsageError(f"{self.args.command} takes exactly one weight")
        return found[0]

    def _prime(self, p: Optional[int]) -> int:
        if p is None:
            raise UsageError("--p is required")
        try:
            check_prime(p)
        except WeightError as e:
            raise UsageError(str(e))
        return p

    def _cmd_defect(self) -> int:
        weight = self._weight()
        value = defect(weight, self._prime(self.args.p))
        emit({"defect": value})
        say(f"defect{weight} = {value}")
        return EXIT_OK

    def _cmd_jantzen(self) -> int:
        weight = self._weight()
        verdict = even_irreducible(weight, self._prime(self.args.p))
        emit(verdict.to_json())
        say(f"{'✅ irreducible' if verdict.irreducible else '❌ reducible'}: {weight}")
        return EXIT_OK

    def _cmd_f0(self) -> int:
        weight = self._weight()
        p = self._prime(self.args.p)
        member = f0_member(weight, p, self.settings.strict)
        _, rule = fast_f0_screen_reason(weight, p)
        emit({"f0": member, "mode": self.settings.eligibility_mode, "rule": rule or "jantzen"})
        say(f"{weight} {'is' if member else 'is not'} eligible at p={p}")
        return EXIT_OK

    def _cmd_even_linked(self) -> int:
        found = parse_weights(self.args.values)
        if len(found) != 2:
            raise UsageError("even-linked takes two weights separated by /")
        linked = even_linked(found[0], found[1], self._prime(self.args.p))
        emit({"even_linked": linked})
        say(f"{found[0]} {'∼' if linked else '≁'} {found[1]}")
        return EXIT_OK

    def _cmd_reflect(self) -> int:
        weight = self._weight()
        image = dot_reflect(weight, Reflection(self.args.i, self.args.j, self.args.k),
                            self._prime(self.args.p))
        emit(image.to_json())
        say(f"{weight} -> {image}")
        return EXIT_OK

    def _cmd_good_filtration(self) -> int:
        factors = good_filtration_factors(self._weight())
        emit([factor.to_json() for factor in factors])
        say(f"{len(factors)} factors")
        return EXIT_OK

    def _cmd_neighbors(self) -> int:
        start = ParityWeight(self._weight(), self.args.parity)
        found = neighbors(start, self._prime(self.args.p), self.settings.excursion_cap,
                          self.settings.strict)
        emit([{"target": target.to_json(), "move": move.to_json()} for target, move in found])
        say(f"{len(found)} neighbours of {start}")
        return EXIT_OK

    def _cmd_reduce(self) -> int:
        start = ParityWeight(self._weight(), self.args.parity)
        p = self._prime(self.args.p)
        box = None
        if self.settings.box_margin_top is not None or self.settings.box_margin_bottom is not None:
            box = SearchBox.around(min(start.weight.entries[-1], -1), max(start.weight.entries[0], 0),
                                   start.weight.n, p, self.settings.box_margin_top,
                                   self.settings.box_margin_bottom)
        certificate = reduce(start, p, self.settings.budget, self.settings.excursion_cap,
                             self.settings.strict, box)
        emit(certificate.to_json())
        say(f"✅ {start} -> {certificate.end} in {len(certificate.steps)} steps "
            f"(sector {sector(start).name})")
        return EXIT_OK

    def _cmd_block_census(self) -> int:
        p = self._prime(self.args.p)
        report = block_census(self.args.n, p, (self.args.lo, self.args.hi), self.settings.budget,
                              self.settings.excursion_cap, self.settings.strict,
                              (self.settings.box_margin_top, self.settings.box_margin_bottom))
        emit(report.to_json())
        if self.args.export:
            from report_export import census_to_frame, export_frame
            export_frame(census_to_frame(report), self.args.export)
        if self.args.dot:
            nodes, edges = census_graph(self.args.n, p, (self.args.lo, self.args.hi),
                                        self.settings.excursion_cap, self.settings.strict)
            write_dot(self.args.dot, nodes, edges, f"p{p}_n{self.args.n}")
        say(f"📊 {len(report.rows)} rows, representatives: "
            f"{', '.join(str(pw) for pw in report.representative_set)}")
        if report.assertions_hold:
            say("✅ four representatives, every certificate verifies")
            return EXIT_OK
        for problem in report.problems():
            say(f"❌ {problem}")
        if self.args.strict:
            raise CensusAssertionFailed("; ".join(report.problems()))
        return EXIT_FAILED

    def _cmd_graph(self) -> int:
        p = self._prime(self.args.p)
        nodes, edges = census_graph(self.args.n, p, (self.args.lo, self.args.hi),
                                    self.settings.excursion_cap, self.settings.strict)
        if self.args.dot:
            write_dot(self.args.dot, nodes, edges, f"p{p}_n{self.args.n}")
        print(to_dot(nodes, edges, f"p{p}_n{self.args.n}"), end="")
        say(f"{len(nodes)} nodes, {len(edges)} edges")
        return EXIT_OK

    def _cmd_verify_chain(self) -> int:
        try:
            if self.args.file == "-":
                data = json.load(sys.stdin)
            else:
                with open(self.args.file, 'r', encoding='utf-8') as f:
                    data = json.load(f)
        except (OSError, ValueError) as e:
            raise UsageError(f"cannot read certificate: {e}")
        certificate = Certificate.from_json(data)
        verdict = verify_certificate(certificate, self.settings.strict)
        emit(verdict.to_json())
        if verdict.ok:
            say(f"✅ {certificate.start} -> {certificate.end} verifies")
            return EXIT_OK
        say(f"❌ step {verdict.failing_step}: {verdict.reason}")
        return EXIT_FAILED

    def _cmd_replay(self) -> int:
        if self.args.grid:
            for p in self.args.primes:
                self._prime(p)
            grid = RecipeGrid(self.args.a_range, self.args.n_range, self.args.primes)
            chosen = [self.args.recipe] if self.args.recipe else None
            report = verify_all_recipes(grid, self.settings.strict, chosen)
            emit(report.to_json())
            if self.args.export:
                from report_export import export_frame, recipe_report_to_frame
                export_frame(recipe_report_to_frame(report), self.args.export)
            for recipe_id, row in sorted(report.counts().items()):
                say(f"  {recipe_id}: {row['succeeded']}/{row['applicable']} succeeded")
            return EXIT_OK if report.ok else EXIT_FAILED

        if self.args.recipe is None or self.args.i is None or self.args.n is None:
            raise UsageError("replay needs --recipe, --i, --n and --p (or --grid)")
        run = replay_recipe(self.args.recipe, self.args.a, self.args.i, self.args.n,
                            self._prime(self.args.p), self.args.parity, self.settings.strict)
        emit(run.to_json())
        say(f"✅ {run.recipe}: {run.certificate.start} -> {run.certificate.end}")
        return EXIT_OK


def _settings(args: argparse.Namespace) -> Config:
    mode = "strict" if getattr(args, "strict_eligibility", None) else None
    return config.with_overrides(eligibility_mode=mode,
                                 excursion_cap=getattr(args, "cap", None),
                                 budget=getattr(args, "budget", None),
                                 cache_path=getattr(args, "cache", None),
                                 log_level=getattr(args, "log_level", None))


def dispatch(argv: Optional[Sequence[str]] = None) -> int:
    """Parse `argv`, run the command and return the exit code"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK

    settings = _settings(args)
    setup_logging(settings.log_level)
    checked = settings.with_overrides(p=getattr(args, "p", None), n=getattr(args, "n", None))
    if not checked.is_valid():
        say(checked.get_problems_help())
        return EXIT_USAGE

    cache = VerdictCache(settings.cache_path) if settings.cache_path else None
    attach_cache(cache)
    try:
        return LinkageCli(args, settings).run()
    except (UsageError, WeightError, HypothesisViolated) as e:
        emit({"error": type(e).__name__, "message": str(e)})
        say(f"❌ {e}")
        return EXIT_USAGE
    except ClaimFailed as e:
        logger.error(f"{e}")
        emit({"error": type(e).__name__, "message": str(e), **e.to_json()})
        return EXIT_FAILED
    except (BudgetExhausted, CensusAssertionFailed) as e:
        logger.error(f"{e}")
        emit({"error": type(e).__name__, "message": str(e)})
        return EXIT_FAILED
    except PeriplecticError as e:
        logger.error(f"{e}")
        emit({"error": type(e).__name__, "message": str(e)})
        return EXIT_FAILED
    finally:
        if cache is not None:
            cache.flush()
        attach_cache(None)


def main():
    sys.exit(dispatch())


if __name__ == "__main__":
    main()
