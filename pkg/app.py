#!/usr/bin/env python3
"""
Littlestone Lab
Command-line entry point: dimensions, SOA runs, agnostic-learner simulations
and the acceptance suite.
"""

import functools
import json
import logging
import sys
from typing import Optional

import click

from src import __version__
from src.concept_core import example1_class
from src.data_models import load_class_file, load_sequence_file, write_class_file, write_json_file
from src.data_validation import (PreconditionError, ResourceLimitError, ValidationError,
                                 VerificationError)
from src.dimensions import class_dimensions, class_littlestone_dim, shattered_tree
from src.experiments import (ExperimentConfig, parse_class_gen, report_json, run_experiment,
                             run_verification, write_frame_csv)
from src.oracles import sequential_rademacher, sequential_rademacher_recursive
from src.settings import get_config
from src.soa import soa_run_frame
from src.agnostic_learner import adaptive_expert_halving
from src.visualizations import write_charts_html

logger = logging.getLogger(__name__)

EXIT_CHECK_FAILED = 1
EXIT_ERROR = 2


def handle_errors(func):
    """Map library errors to a one-line message and exit status 2."""
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except (ValidationError, ResourceLimitError, PreconditionError,
                VerificationError, OSError) as e:
            click.echo(f"error: {e}", err=True)
            sys.exit(EXIT_ERROR)
    return wrapper


def load_class(class_file: Optional[str], class_gen: Optional[str]):
    if (class_file is None) == (class_gen is None):
        raise ValidationError("Give exactly one of --class or --class-gen")
    if class_file is not None:
        return load_class_file(class_file)
    return parse_class_gen(class_gen)


def class_options(func):
    func = click.option('--class-gen', 'class_gen', default=None,
                        help='Generator spec: example1:M or random:SEED,NX,NY,NH')(func)
    func = click.option('--class', 'class_file', default=None, type=click.Path(exists=True),
                        help='Class file (JSON with points, labels, hypotheses)')(func)
    return func


@click.group()
@click.version_option(__version__)
def cli():
    """Littlestone Lab: exact online-learning dimensions, learners and bound checks."""


@cli.command()
@class_options
@click.option('--tree', 'show_tree', is_flag=True, help='Include the shattered-tree witness')
@handle_errors
def dims(class_file, class_gen, show_tree):
    """Littlestone and sequential graph dimensions of a class."""
    c = load_class(class_file, class_gen)
    result = class_dimensions(c)
    if show_tree and result['littlestone'] >= 0:
        result['tree'] = shattered_tree(c.full_space(), result['littlestone']).to_dict()
    click.echo(json.dumps(result, indent=2, sort_keys=True))


@cli.command('soa-run')
@click.option('--class', 'class_file', required=True, type=click.Path(exists=True))
@click.option('--sequence', 'sequence_file', required=True, type=click.Path(exists=True))
@click.option('--out', default=None, help='CSV path; stdout when omitted')
@handle_errors
def soa_run_command(class_file, sequence_file, out):
    """Run SOA over a sequence and emit t,pred,correct,mistakes."""
    c = load_class_file(class_file)
    s = load_sequence_file(sequence_file, c)
    frame = soa_run_frame(c, s)
    if out:
        write_frame_csv(frame, out)
    else:
        click.echo(frame.to_csv(index=False, lineterminator='\n'), nl=False)


@cli.command()
@class_options
@click.option('--sequence', 'sequence_file', default=None, type=click.Path(exists=True))
@click.option('--adversary', default='noisy:0.1', show_default=True,
              help='noisy:RATE, greedy, tree or realizable')
@click.option('--learner', type=click.Choice(['aag', 'finitey', 'soa']), default='aag',
              show_default=True)
@click.option('--horizon', type=int, default=16, show_default=True)
@click.option('--trials', type=int, default=1, show_default=True)
@click.option('--seed', type=int, default=0, show_default=True)
@click.option('--budget', type=int, default=None, help='Override L for the expert family')
@click.option('--out', required=True, help='Output prefix for PREFIX.csv and PREFIX.json')
@click.option('--plot', is_flag=True, help='Also write PREFIX.html')
@click.option('--bound-scale', type=float, default=1.0, hidden=True)
@handle_errors
def simulate(class_file, class_gen, sequence_file, adversary, learner, horizon, trials, seed,
             budget, out, plot, bound_scale):
    """Run a learner against a sequence or adversary and check its bounds."""
    config = ExperimentConfig(
        class_path=class_file, class_gen=class_gen, sequence_path=sequence_file,
        adversary=adversary, learner=learner, horizon=horizon, trials=trials, seed=seed,
        out=out, budget=budget, bound_scale=bound_scale)
    report = run_experiment(config)
    if plot:
        write_charts_html(report.traces[0], f"{out}.html")

    first = report.trials[0]
    click.echo(f"{learner}: T={first.horizon} OPT={first.opt} loss={first.cumulative_loss:.6f} "
               f"regret={first.regret:.6f} bound={first.bound:.6f} passed={report.passed}")
    if not report.passed:
        sys.exit(EXIT_CHECK_FAILED)


@cli.command()
@click.option('--seed', type=int, default=0, show_default=True)
@click.option('--quick', is_flag=True, help='Reduced case counts')
@click.option('--out', default=None, help='Write the report to PREFIX.json')
@handle_errors
def verify(seed, quick, out):
    """Run the acceptance suite."""
    report = run_verification(
        seed=seed, quick=quick,
        progress=lambda check: click.echo(
            f"{'PASS' if check.passed else 'FAIL'} {check.name} ({check.cases} cases)"))
    if out:
        with open(f"{out}.json", 'w', encoding='utf-8', newline='\n') as f:
            f.write(report_json(report))
    click.echo(f"passed={report.passed}")
    if not report.passed:
        sys.exit(EXIT_CHECK_FAILED)


@cli.command()
@class_options
@click.option('--horizon', type=int, required=True)
@click.option('--method', type=click.Choice(['enumerate', 'recursive', 'both']), default='both',
              show_default=True)
@handle_errors
def rademacher(class_file, class_gen, horizon, method):
    """Exact sequential Rademacher complexity at toy scale."""
    c = load_class(class_file, class_gen)
    result = {'horizon': horizon}
    if method in ('enumerate', 'both'):
        result['enumerate'] = sequential_rademacher(c, horizon)
    if method in ('recursive', 'both'):
        result['recursive'] = sequential_rademacher_recursive(c, horizon)
    click.echo(json.dumps(result, indent=2, sort_keys=True))
    if method == 'both' and result['enumerate'] != result['recursive']:
        click.echo("error: enumeration and recursion disagree", err=True)
        sys.exit(EXIT_CHECK_FAILED)


@cli.command()
@class_options
@click.option('--depth', type=int, default=None, help='Tree depth; the sequential graph dimension by default')
@click.option('--out', default=None, help='Write the certificate to this JSON file')
@handle_errors
def halving(class_file, class_gen, depth, out):
    """Adaptive-expert halving certificate on a loss-class shattered tree."""
    c = load_class(class_file, class_gen)
    certificate = adaptive_expert_halving(c, depth)
    payload = certificate.to_dict()
    if out:
        write_json_file(out, payload)
    click.echo(json.dumps(payload, indent=2, sort_keys=True))
    if not certificate.holds:
        sys.exit(EXIT_CHECK_FAILED)


@cli.command()
@click.option('--m', 'm', type=int, required=True, help='Number of points')
@click.option('--out', required=True, help='Class file to write')
@handle_errors
def example1(m, out):
    """Write the class {h_A : A ⊆ X} over m points."""
    c = example1_class(m)
    write_class_file(out, c)
    click.echo(f"wrote {out}: {c.n_hypotheses} hypotheses, {c.n_labels} labels, "
               f"Littlestone dimension {class_littlestone_dim(c)}")


def main():
    """Configure logging and run the CLI."""
    try:
        level = get_config()['log_level']
    except ValidationError as e:
        click.echo(f"error: {e}", err=True)
        sys.exit(EXIT_ERROR)
    logging.basicConfig(
        level=getattr(logging, level, logging.INFO),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
    )
    cli()


if __name__ == "__main__":
    main()
