"""
Experiment harness for Littlestone Lab.
Seeded trials of the learners against the adversaries, bound checks, the
acceptance suite behind the verify command, and report writers.
"""

import json
import logging
import math
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Tuple, Union

import numpy as np
import pandas as pd
from scipy import stats

try:
    from .adversaries import (greedy_regret_adversary, noisy_adversary, random_realizable_sequence,
                              tree_walk_adversary)
    from .agnostic_learner import (aag_run, adaptive_expert_halving, best_expert_witness,
                                   enumerate_experts, expert_loss_matrix, finish_trace,
                                   finite_y_learner)
    from .concept_core import (example1_class, full_binary_class, is_realizable, make_rng,
                               random_class, sub_class)
    from .data_models import (PROBABILITY_TOLERANCE, AagTrace, ConceptClass, LabeledSequence,
                              PredictionDistribution, RoundRecord, load_class_file,
                              load_sequence_file, write_json_file)
    from .data_validation import (ResourceLimitError, ValidationError,
                                  validate_experiment_parameters)
    from .dimensions import (class_littlestone_dim, littlestone_dim_bruteforce,
                             sequential_graph_dim, sg_dimension_bound)
    from .experts_mw import run_expert_protocol
    from .oracles import sequential_rademacher, sequential_rademacher_recursive
    from .settings import get_config
    from .soa import SoaState, soa_run
except ImportError:
    from adversaries import (greedy_regret_adversary, noisy_adversary, random_realizable_sequence,
                             tree_walk_adversary)
    from agnostic_learner import (aag_run, adaptive_expert_halving, best_expert_witness,
                                  enumerate_experts, expert_loss_matrix, finish_trace,
                                  finite_y_learner)
    from concept_core import (example1_class, full_binary_class, is_realizable, make_rng,
                              random_class, sub_class)
    from data_models import (PROBABILITY_TOLERANCE, AagTrace, ConceptClass, LabeledSequence,
                             PredictionDistribution, RoundRecord, load_class_file,
                             load_sequence_file, write_json_file)
    from data_validation import (ResourceLimitError, ValidationError,
                                 validate_experiment_parameters)
    from dimensions import (class_littlestone_dim, littlestone_dim_bruteforce,
                            sequential_graph_dim, sg_dimension_bound)
    from experts_mw import run_expert_protocol
    from oracles import sequential_rademacher, sequential_rademacher_recursive
    from settings import get_config
    from soa import SoaState, soa_run

logger = logging.getLogger(__name__)

LEARNERS = ('aag', 'finitey', 'soa')
ADVERSARIES = ('noisy', 'greedy', 'tree', 'realizable')

# Stream offset for the hypothesis labeling a noisy trial
_HYPOTHESIS_STREAM = 1 << 20


def parse_class_gen(spec: str, cap_cells: Optional[int] = None) -> ConceptClass:
    """
    Build a class from a generator spec.

    Args:
        spec: "example1:M" or "random:SEED,NX,NY,NH"

    Raises:
        ValidationError: If the generator string is malformed
    """
    name, _, args = spec.partition(':')
    try:
        values = [int(v) for v in args.split(',')] if args else []
    except ValueError:
        raise ValidationError(f"Generator arguments must be integers: {spec!r}")

    if name == 'example1' and len(values) == 1:
        return example1_class(values[0], cap_cells)
    if name == 'random' and len(values) == 4:
        return random_class(*values, cap_cells=cap_cells)
    raise ValidationError(f"Unknown class generator {spec!r}; use example1:M or random:SEED,NX,NY,NH")


def parse_adversary(spec: str) -> Tuple[str, float]:
    """Split "noisy:RATE" into (name, rate); other adversaries carry rate 0."""
    name, _, arg = spec.partition(':')
    if name not in ADVERSARIES:
        raise ValidationError(f"Unknown adversary {spec!r}; choose from {', '.join(ADVERSARIES)}")
    if name == 'noisy':
        try:
            return name, float(arg) if arg else 0.1
        except ValueError:
            raise ValidationError(f"Noise rate must be a number: {spec!r}")
    if arg:
        raise ValidationError(f"Adversary {name} takes no argument: {spec!r}")
    return name, 0.0


@dataclass
class ExperimentConfig:
    """Everything a run depends on; the seed determines all randomness."""
    class_path: Optional[str] = None
    class_gen: Optional[str] = None
    sequence_path: Optional[str] = None
    adversary: str = 'noisy:0.1'
    learner: str = 'aag'
    horizon: Optional[int] = 16
    trials: int = 1
    seed: int = 0
    out: Optional[str] = None
    caps: Dict[str, int] = field(default_factory=dict)
    budget: Optional[int] = None
    bound_scale: float = 1.0

    def __post_init__(self):
        if (self.class_path is None) == (self.class_gen is None):
            raise ValidationError("Give exactly one of a class file or a class generator")
        if self.learner not in LEARNERS:
            raise ValidationError(f"Unknown learner {self.learner!r}; choose from {', '.join(LEARNERS)}")
        _, rate = parse_adversary(self.adversary)
        horizon = self.horizon if self.horizon is not None else 1
        validate_experiment_parameters(horizon, self.trials, self.seed, rate)
        if self.budget is not None and self.budget < 0:
            raise ValidationError(f"Budget must be non-negative: {self.budget}")
        if self.bound_scale < 0:
            raise ValidationError(f"Bound scale must be non-negative: {self.bound_scale}")
        self.settings = get_config(self.caps)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'class_path': self.class_path,
            'class_gen': self.class_gen,
            'sequence_path': self.sequence_path,
            'adversary': self.adversary,
            'learner': self.learner,
            'horizon': self.horizon,
            'trials': self.trials,
            'seed': self.seed,
            'budget': self.budget,
            'caps': dict(sorted(self.caps.items())),
        }


@dataclass
class TrialResult:
    """Outcome of one trial: regret, bound and every asserted inequality."""
    trial: int
    horizon: int
    opt: int
    cumulative_loss: float
    regret: float
    bound: float
    checks: Dict[str, bool] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def to_dict(self) -> Dict[str, Any]:
        return {
            'trial': self.trial,
            'horizon': self.horizon,
            'opt': self.opt,
            'cumulative_loss': self.cumulative_loss,
            'regret': self.regret,
            'bound': self.bound,
            'checks': dict(sorted(self.checks.items())),
            'passed': self.passed,
        }


@dataclass
class CheckResult:
    """One acceptance check over many cases."""
    name: str
    cases: int = 0
    failures: List[Dict[str, Any]] = field(default_factory=list)
    details: Dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.cases > 0 and not self.failures

    def record(self, ok: bool, **case: Any) -> None:
        self.cases += 1
        if not ok:
            self.failures.append(case)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'name': self.name,
            'cases': self.cases,
            'passed': self.passed,
            'failures': self.failures[:10],
            'failure_count': len(self.failures),
            'details': self.details,
        }


@dataclass
class Report:
    """Per-trial results plus class-level and acceptance checks."""
    kind: str
    parameters: Dict[str, Any]
    trials: List[TrialResult] = field(default_factory=list)
    checks: List[CheckResult] = field(default_factory=list)
    class_checks: Dict[str, Optional[bool]] = field(default_factory=dict)
    traces: List[AagTrace] = field(default_factory=list, repr=False)

    @property
    def passed(self) -> bool:
        return (all(t.passed for t in self.trials)
                and all(c.passed for c in self.checks)
                and all(v is not False for v in self.class_checks.values()))

    def to_dict(self) -> Dict[str, Any]:
        return {
            'kind': self.kind,
            'parameters': self.parameters,
            'passed': self.passed,
            'class_checks': dict(sorted(self.class_checks.items())),
            'trials': [t.to_dict() for t in self.trials],
            'checks': [c.to_dict() for c in self.checks],
            'summary': summarize_report(self),
        }


def summarize_report(report: Report) -> Dict[str, Any]:
    """
    Descriptive statistics of per-trial regret and bound slack.

    Returns:
        Dictionary with trial and check counts and, when trials exist, the
        scipy.stats.describe figures for regret and slack
    """
    summary: Dict[str, Any] = {
        'trials': len(report.trials),
        'trials_failed': sum(1 for t in report.trials if not t.passed),
        'checks': len(report.checks),
        'checks_failed': sum(1 for c in report.checks if not c.passed),
    }
    if not report.trials:
        return summary

    for name, values in (('regret', [t.regret for t in report.trials]),
                         ('slack', [t.bound - t.regret for t in report.trials])):
        described = stats.describe(np.asarray(values, dtype=np.float64))
        summary[name] = {
            'nobs': int(described.nobs),
            'min': float(described.minmax[0]),
            'max': float(described.minmax[1]),
            'mean': float(described.mean),
            'variance': float(described.variance) if described.nobs > 1 else 0.0,
        }
    return summary


# ---------------------------------------------------------------------------
# Simulation runs
# ---------------------------------------------------------------------------

def resolve_class(config: ExperimentConfig) -> ConceptClass:
    cap_cells = config.settings['cap_cells']
    if config.class_path is not None:
        return load_class_file(config.class_path, cap_cells)
    return parse_class_gen(config.class_gen, cap_cells)


def make_sequence(config: ExperimentConfig, c: ConceptClass, trial: int) -> LabeledSequence:
    """The trial's input stream: a sequence file or a seeded adversary."""
    if config.sequence_path is not None:
        return load_sequence_file(config.sequence_path, c)

    name, rate = parse_adversary(config.adversary)
    if name == 'tree':
        return tree_walk_adversary(c, SoaState(c))
    if config.horizon is None:
        raise ValidationError(f"Adversary {name} needs a horizon")
    if name == 'noisy':
        hypothesis = int(make_rng(config.seed, _HYPOTHESIS_STREAM + trial).integers(0, c.n_hypotheses))
        return noisy_adversary(c, hypothesis, rate, config.horizon, config.seed, trial)
    if name == 'greedy':
        return greedy_regret_adversary(c, config.horizon, config.seed, trial, budget=config.budget,
                                       cap=config.settings['expert_cap'])
    return random_realizable_sequence(c, config.horizon, config.seed, trial)


def soa_trace(c: ConceptClass, s: LabeledSequence, bound_scale: float = 1.0) -> AagTrace:
    """
    SOA run expressed as a trace of point-mass predictions.

    The bound is the mistake bound L and applies only when s is realizable.
    """
    predictions, mistakes = soa_run(c, s)
    littlestone = class_littlestone_dim(c)
    trace = AagTrace(learner='soa', horizon=len(s), budget=littlestone, n_experts=1, eta=0.0)
    for t, ((x, y), prediction) in enumerate(zip(s, predictions)):
        loss = int(prediction != y)
        trace.rounds.append(RoundRecord(
            t=t, point=x, label=y, distribution=PredictionDistribution({prediction: 1.0}),
            expert_losses=np.array([loss], dtype=np.int8), expected_loss=float(loss), opt_so_far=0))
    finish_trace(trace, c, s)

    realizable = trace.opt == 0
    trace.bound = littlestone * bound_scale
    trace.bound_holds = mistakes <= trace.bound + PROBABILITY_TOLERANCE if realizable else True
    trace.extra.update({'mistakes': mistakes, 'realizable': realizable, 'bound_applicable': realizable})
    return trace


def run_trial(config: ExperimentConfig, c: ConceptClass, trial: int) -> Tuple[TrialResult, AagTrace]:
    s = make_sequence(config, c, trial)
    if len(s) == 0:
        raise ValidationError("The input sequence is empty")
    expert_cap = config.settings['expert_cap']

    checks: Dict[str, bool] = {}
    if config.learner == 'aag':
        trace = aag_run(c, s, budget=config.budget, cap=expert_cap, bound_scale=config.bound_scale)
        checks['regret_bound'] = trace.bound_holds
        mw_gap = trace.cumulative_expected_loss - trace.best_expert_loss
        checks['mw_regret_bound'] = mw_gap <= math.sqrt(
            trace.horizon / 2.0 * math.log(trace.n_experts)) + PROBABILITY_TOLERANCE
        if trace.extra['bound_applicable']:
            _, _, witness = best_expert_witness(c, s, cap=expert_cap)
            checks['best_expert_witness'] = witness.holds
            trace.extra['witness'] = witness.to_dict()
    elif config.learner == 'finitey':
        trace = finite_y_learner(c, s, budget=config.budget, cap=expert_cap,
                                 bound_scale=config.bound_scale)
        checks['finite_y_regret'] = trace.bound_holds
    else:
        trace = soa_trace(c, s, config.bound_scale)
        checks['soa_mistake_bound'] = trace.bound_holds

    if config.learner != 'soa' and trace.opt == 0:
        _, mistakes = soa_run(c, s)
        checks['soa_mistake_bound'] = mistakes <= class_littlestone_dim(c)

    result = TrialResult(trial=trial, horizon=trace.horizon, opt=trace.opt,
                         cumulative_loss=trace.cumulative_expected_loss, regret=trace.regret,
                         bound=trace.bound, checks=checks)
    if not result.passed:
        logger.error(f"Trial {trial} failed: {checks}")
    return result, trace


def run_experiment(config: ExperimentConfig) -> Report:
    """
    Execute every trial of the configuration and check its inequalities.

    Trials run concurrently and are merged in trial order. When config.out is
    set, PREFIX.csv, PREFIX.json (and PREFIX.trials.csv for several trials)
    are written.

    Returns:
        Report; report.passed is False iff some inequality failed
    """
    c = resolve_class(config)
    trials = 1 if config.sequence_path is not None else config.trials
    report = Report(kind='experiment', parameters=config.to_dict())
    report.class_checks = class_level_checks(c)

    results: List[Optional[Tuple[TrialResult, AagTrace]]] = [None] * trials
    workers = min(trials, config.settings['workers'])
    with ThreadPoolExecutor(max_workers=workers) as executor:
        future_to_trial = {executor.submit(run_trial, config, c, trial): trial
                           for trial in range(trials)}
        for future in as_completed(future_to_trial):
            results[future_to_trial[future]] = future.result()

    for result, trace in results:
        report.trials.append(result)
        report.traces.append(trace)
    logger.info(f"Experiment finished: {trials} trials, passed={report.passed}")

    if config.out:
        write_experiment_outputs(report, config.out)
    return report


def class_level_checks(c: ConceptClass) -> Dict[str, Optional[bool]]:
    """Dimension bound d_SG ≤ 2·L·log₂(e|Y|); None when a cap prevents the check."""
    try:
        littlestone = class_littlestone_dim(c)
        sg = sequential_graph_dim(c)
    except ResourceLimitError as e:
        logger.warning(f"Skipping dimension bound check: {e}")
        return {'sg_dimension_bound': None}
    if littlestone < 0:
        return {'sg_dimension_bound': None}
    return {'sg_dimension_bound': sg <= sg_dimension_bound(littlestone, c.n_labels) + PROBABILITY_TOLERANCE}


# ---------------------------------------------------------------------------
# Writers
# ---------------------------------------------------------------------------

def write_trace_csv(trace: AagTrace, path: Union[str, Path]) -> None:
    trace.to_frame().to_csv(path, index=False, lineterminator='\n')


def write_frame_csv(frame: pd.DataFrame, path: Union[str, Path]) -> None:
    frame.to_csv(path, index=False, lineterminator='\n')


def write_experiment_outputs(report: Report, prefix: str) -> None:
    """Write PREFIX.csv and PREFIX.json for the first trial plus the report."""
    try:
        trace = report.traces[0]
        write_trace_csv(trace, f"{prefix}.csv")
        write_json_file(f"{prefix}.json", {**trace.certificate(), 'report': report.to_dict()})
        if len(report.trials) > 1:
            frame = pd.DataFrame([{k: v for k, v in t.to_dict().items() if k != 'checks'}
                                  for t in report.trials])
            write_frame_csv(frame, f"{prefix}.trials.csv")
    except OSError as e:
        raise OSError(f"Could not write outputs with prefix {prefix}: {e}") from e
    logger.info(f"Wrote {prefix}.csv and {prefix}.json")


def report_json(report: Report) -> str:
    """Canonical serialization used for byte comparisons."""
    return json.dumps(report.to_dict(), indent=2, sort_keys=True) + '\n'


# ---------------------------------------------------------------------------
# Acceptance suite
# ---------------------------------------------------------------------------

FULL_COUNTS = {
    'dimension_classes': 500,
    'soa_pairs': 1000,
    'tree_walk_max_points': 4,
    'regret_random_classes': 50,
    'noisy_sequences': 200,
    'crafted_sequences': 50,
    'mw_matrices': 500,
    'separation_max_m': 6,
    'halving_max_m': 4,
    'rademacher_pairs': 20,
    'finite_y_sequences': 100,
}

QUICK_COUNTS = {
    'dimension_classes': 40,
    'soa_pairs': 60,
    'tree_walk_max_points': 4,
    'regret_random_classes': 4,
    'noisy_sequences': 12,
    'crafted_sequences': 3,
    'mw_matrices': 40,
    'separation_max_m': 4,
    'halving_max_m': 3,
    'rademacher_pairs': 4,
    'finite_y_sequences': 10,
}

REGRET_HORIZONS = (8, 16, 32)

# Stream bases keep every check on its own counter range
_STREAMS = {
    'dimensions': 1 << 24,
    'soa': 2 << 24,
    'regret_classes': 3 << 24,
    'regret_sequences': 4 << 24,
    'mw': 5 << 24,
    'rademacher': 6 << 24,
    'finite_y': 7 << 24,
}


def _draw(seed: int, base: str, k: int) -> np.random.Generator:
    return make_rng(seed, _STREAMS[base] + k)


def _class_seed(rng: np.random.Generator) -> int:
    return int(rng.integers(0, 2 ** 31))


def check_dimension_oracle(seed: int, count: int) -> CheckResult:
    check = CheckResult('dimension_oracle')
    for k in range(count):
        rng = _draw(seed, 'dimensions', k)
        nx, ny, nh = int(rng.integers(1, 5)), int(rng.integers(1, 4)), int(rng.integers(1, 13))
        c = random_class(_class_seed(rng), nx, ny, nh)
        recursive = class_littlestone_dim(c)
        brute = littlestone_dim_bruteforce(c.full_space(), c.n_hypotheses.bit_length())
        check.record(recursive == brute, case=k, recursive=recursive, bruteforce=brute)
    return check


def check_soa_mistake_bound(seed: int, count: int) -> CheckResult:
    check = CheckResult('soa_mistake_bound')
    for k in range(count):
        rng = _draw(seed, 'soa', k)
        nx, ny, nh = int(rng.integers(1, 6)), int(rng.integers(2, 5)), int(rng.integers(1, 17))
        c = random_class(_class_seed(rng), nx, ny, nh)
        s = random_realizable_sequence(c, int(rng.integers(1, 13)), seed, _STREAMS['soa'] + k)
        _, mistakes = soa_run(c, s)
        littlestone = class_littlestone_dim(c)
        check.record(mistakes <= littlestone, case=k, mistakes=mistakes, littlestone=littlestone)
    return check


def check_tree_walk(max_points: int) -> CheckResult:
    check = CheckResult('forcing_adversary')
    for n in range(1, max_points + 1):
        c = full_binary_class(n)
        learner = SoaState(c)
        s = tree_walk_adversary(c, learner)
        ok = len(s) == n and learner.mistakes == n and is_realizable(c.full_space(), s)
        check.record(ok, points=n, length=len(s), mistakes=learner.mistakes)
    return check


def regret_classes(seed: int, count: int) -> List[ConceptClass]:
    """example1_class(3) followed by `count` seeded random classes with L ≤ 2."""
    classes = [example1_class(3)]
    k = 0
    while len(classes) < count + 1:
        rng = _draw(seed, 'regret_classes', k)
        k += 1
        nx, ny, nh = int(rng.integers(2, 5)), int(rng.integers(2, 4)), int(rng.integers(2, 9))
        c = random_class(_class_seed(rng), nx, ny, nh)
        if class_littlestone_dim(c) <= 2:
            classes.append(c)
    return classes


def regret_sequences(seed: int, classes: List[ConceptClass], noisy: int,
                     crafted: int) -> List[Tuple[str, int, ConceptClass, LabeledSequence]]:
    """Noisy and greedy sequences spread over classes and horizons in turn."""
    cases = []
    for k in range(noisy + crafted):
        c = classes[k % len(classes)]
        horizon = REGRET_HORIZONS[k % len(REGRET_HORIZONS)]
        stream = _STREAMS['regret_sequences'] + k
        if k < noisy:
            rng = make_rng(seed, stream)
            hypothesis = int(rng.integers(0, c.n_hypotheses))
            rate = float(rng.uniform(0.0, 0.5))
            s = noisy_adversary(c, hypothesis, rate, horizon, seed, stream + (1 << 23))
            cases.append(('noisy', k, c, s))
        else:
            cases.append(('crafted', k, c, greedy_regret_adversary(c, horizon, seed, stream)))
    return cases


def check_regret_certificate(cases) -> CheckResult:
    check = CheckResult('regret_certificate')
    worst = None
    for kind, k, c, s in cases:
        trace = aag_run(c, s)
        slack = trace.bound - trace.regret
        worst = slack if worst is None else min(worst, slack)
        check.record(trace.bound_holds, kind=kind, case=k, horizon=len(s),
                     regret=trace.regret, bound=trace.bound)
    check.details['min_slack'] = worst
    return check


def check_best_expert_witness(cases) -> CheckResult:
    check = CheckResult('best_expert_witness')
    for kind, k, c, s in cases:
        if len(s) > 16:
            continue
        subset, _, certificate = best_expert_witness(c, s)
        littlestone = max(certificate.littlestone, 0)
        family = enumerate_experts(len(s), littlestone)
        totals = expert_loss_matrix(c, s, family).sum(axis=1)
        position = family.subsets.index(subset) if subset in family.subsets else None
        ok = (certificate.holds and position is not None
              and int(totals[position]) == certificate.expert_mistakes
              and int(totals.min()) <= certificate.opt + littlestone)
        check.record(ok, kind=kind, case=k, subset=list(subset),
                     expert_mistakes=certificate.expert_mistakes, opt=certificate.opt)
    return check


def check_mw_bound(seed: int, count: int) -> CheckResult:
    check = CheckResult('multiplicative_weights_bound')
    for k in range(count):
        rng = _draw(seed, 'mw', k)
        n_experts, horizon = int(rng.integers(1, 65)), int(rng.integers(1, 65))
        bits = rng.integers(0, 2, size=(n_experts, horizon))
        outcomes = None if k % 2 == 0 else rng.integers(0, 2, size=horizon)
        result = run_expert_protocol(bits, outcomes)
        check.record(result.bound_holds, case=k, experts=n_experts, horizon=horizon,
                     regret=result.regret, bound=result.bound)
    return check


def check_separation(max_m: int, halving_max_m: int, classes: List[ConceptClass]) -> CheckResult:
    check = CheckResult('dimension_separation')
    for m in range(2, max_m + 1):
        c = example1_class(m)
        littlestone, sg = class_littlestone_dim(c), sequential_graph_dim(c)
        check.record(littlestone == 1 and sg == m, m=m, littlestone=littlestone, sequential_graph=sg)
    for m in range(2, halving_max_m + 1):
        certificate = adaptive_expert_halving(example1_class(m))
        check.record(certificate.holds, m=m, halving=certificate.to_dict())
    for i, c in enumerate(classes[1:]):
        littlestone, sg = class_littlestone_dim(c), sequential_graph_dim(c)
        check.record(sg <= sg_dimension_bound(littlestone, c.n_labels) + PROBABILITY_TOLERANCE,
                     random_class=i, littlestone=littlestone, sequential_graph=sg)
    return check


def check_rademacher(seed: int, pairs: int) -> CheckResult:
    check = CheckResult('sequential_rademacher')
    singleton = ConceptClass(['x1', 'x2'], ['0', '1'], np.array([[0, 1]]))
    for horizon in (1, 2, 3):
        value = sequential_rademacher(singleton, horizon)
        check.record(value == 0.0, instance='singleton', horizon=horizon, value=value)

    agree_disagree = ConceptClass(['x1'], ['0', '1'], np.array([[0], [1]]))
    value = sequential_rademacher(agree_disagree, 1)
    check.record(value == 0.5, instance='agree_disagree', horizon=1, value=value)

    for k in range(pairs):
        rng = _draw(seed, 'rademacher', k)
        c = random_class(_class_seed(rng), 2, 2, int(rng.integers(2, 5)))
        rows = [r for r in range(c.n_hypotheses) if rng.random() < 0.5] or [0]
        inner = sub_class(c, rows)
        outer_value = sequential_rademacher(c, 2)
        inner_value = sequential_rademacher(inner, 2)
        recursive_value = sequential_rademacher_recursive(c, 2)
        ok = (0.0 <= inner_value <= outer_value <= 1.0) and recursive_value == outer_value
        check.record(ok, instance='nested', case=k, inner=inner_value, outer=outer_value,
                     recursive=recursive_value)
    return check


def check_finite_y(seed: int, count: int) -> CheckResult:
    check = CheckResult('finite_label_learner')
    k = 0
    attempts = 0
    while check.cases < count:
        rng = _draw(seed, 'finite_y', attempts)
        attempts += 1
        nx, ny, nh = int(rng.integers(1, 4)), int(rng.integers(2, 5)), int(rng.integers(1, 7))
        c = random_class(_class_seed(rng), nx, ny, nh)
        if class_littlestone_dim(c) > 1:
            continue
        horizon = int(rng.integers(1, 11))
        hypothesis = int(rng.integers(0, c.n_hypotheses))
        s = noisy_adversary(c, hypothesis, float(rng.uniform(0.0, 0.5)), horizon, seed,
                            _STREAMS['finite_y'] + (1 << 23) + k)
        trace = finite_y_learner(c, s)
        check.record(trace.bound_holds, case=k, horizon=horizon, regret=trace.regret,
                     bound=trace.bound, star_attains_opt=trace.extra['star_attains_opt'])
        k += 1
    return check


def check_reproducibility(seed: int) -> CheckResult:
    check = CheckResult('reproducibility')
    config = ExperimentConfig(class_gen='example1:2', adversary='noisy:0.2', learner='aag',
                              horizon=8, trials=3, seed=seed)
    first, second = run_experiment(config), run_experiment(config)
    check.record(report_json(first) == report_json(second) and first.passed, seed=seed)
    return check


def run_check(name: str, step: Callable[[], CheckResult]) -> CheckResult:
    """Run one acceptance check; an exhausted resource cap fails it instead of the suite."""
    try:
        return step()
    except ResourceLimitError as e:
        logger.error(f"Check {name} hit a resource cap: {e}")
        check = CheckResult(name)
        check.record(False, error=str(e))
        return check


def run_verification(seed: int = 0, quick: bool = False,
                     progress: Optional[Callable[[CheckResult], None]] = None) -> Report:
    """
    Run the acceptance suite.

    Args:
        seed: Root seed for every generated class and sequence
        quick: Use reduced case counts
        progress: Optional callback invoked after each check

    Returns:
        Report whose checks list holds one CheckResult per criterion
    """
    counts = QUICK_COUNTS if quick else FULL_COUNTS
    report = Report(kind='verification', parameters={'seed': seed, 'quick': quick, 'counts': counts})

    classes = regret_classes(seed, counts['regret_random_classes'])
    cases = regret_sequences(seed, classes, counts['noisy_sequences'], counts['crafted_sequences'])

    steps = [
        ('dimension_oracle', lambda: check_dimension_oracle(seed, counts['dimension_classes'])),
        ('soa_mistake_bound', lambda: check_soa_mistake_bound(seed, counts['soa_pairs'])),
        ('forcing_adversary', lambda: check_tree_walk(counts['tree_walk_max_points'])),
        ('regret_certificate', lambda: check_regret_certificate(cases)),
        ('best_expert_witness', lambda: check_best_expert_witness(cases)),
        ('multiplicative_weights_bound', lambda: check_mw_bound(seed, counts['mw_matrices'])),
        ('dimension_separation', lambda: check_separation(counts['separation_max_m'],
                                                          counts['halving_max_m'], classes)),
        ('sequential_rademacher', lambda: check_rademacher(seed, counts['rademacher_pairs'])),
        ('finite_label_learner', lambda: check_finite_y(seed, counts['finite_y_sequences'])),
        ('reproducibility', lambda: check_reproducibility(seed)),
    ]
    for name, step in steps:
        check = run_check(name, step)
        report.checks.append(check)
        level = logging.INFO if check.passed else logging.ERROR
        logger.log(level, f"Check {check.name}: {check.cases} cases, passed={check.passed}")
        if progress is not None:
            progress(check)
    return report
