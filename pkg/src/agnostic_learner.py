"""
Agnostic online learner for Littlestone Lab.

Aggregates SOA-on-subsequence experts under multiplicative weights. An expert
is an index set J with |J| ≤ L; at round t it predicts what SOA would predict
after absorbing only the examples at J ∩ {0..t-1}. The label-expert variant
uses pairs (J, Y) whose outputs are Y_j on J and SOA on their own past outputs
elsewhere.

Expert SOA states sharing an absorbed prefix are stored once in a prefix trie,
so per-round work grows with the number of distinct prefixes, not |J|.
"""

import itertools
import logging
import math
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.special import comb

try:
    from .concept_core import loss_class
    from .data_models import (PROBABILITY_TOLERANCE, AagTrace, ConceptClass, ExpertFamily,
                              HalvingCertificate, LabeledSequence, PredictionDistribution,
                              RoundRecord, WitnessCertificate)
    from .data_validation import (PreconditionError, ValidationError, VerificationError,
                                  check_cap)
    from .dimensions import (class_littlestone_dim, sequential_graph_dim, sg_dimension_bound,
                             shattered_tree)
    from .experts_mw import (MWState, check_mixture_identity, mw_mix, mw_regret_bound,
                             mw_update)
    from .oracles import opt_mistakes, running_opt
    from .settings import get_config
    from .soa import conservative_soa, predict_from_mask
except ImportError:
    from concept_core import loss_class
    from data_models import (PROBABILITY_TOLERANCE, AagTrace, ConceptClass, ExpertFamily,
                             HalvingCertificate, LabeledSequence, PredictionDistribution,
                             RoundRecord, WitnessCertificate)
    from data_validation import (PreconditionError, ValidationError, VerificationError,
                                 check_cap)
    from dimensions import (class_littlestone_dim, sequential_graph_dim, sg_dimension_bound,
                            shattered_tree)
    from experts_mw import (MWState, check_mixture_identity, mw_mix, mw_regret_bound,
                            mw_update)
    from oracles import opt_mistakes, running_opt
    from settings import get_config
    from soa import conservative_soa, predict_from_mask

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Expert families
# ---------------------------------------------------------------------------

def expert_count(horizon: int, budget: int) -> int:
    """|𝒥| = Σ_{i ≤ L} C(T, i)."""
    return sum(int(comb(horizon, i, exact=True)) for i in range(min(budget, horizon) + 1))


def label_expert_count(horizon: int, budget: int, n_labels: int) -> int:
    """|𝒬| = Σ_{i ≤ L} C(T, i)·|Y|^i."""
    return sum(int(comb(horizon, i, exact=True)) * n_labels ** i
               for i in range(min(budget, horizon) + 1))


def _check_family_args(horizon: int, budget: int) -> None:
    if horizon < 0:
        raise ValidationError(f"Horizon must be non-negative: {horizon}")
    if budget < 0:
        raise ValidationError(f"Budget must be non-negative: {budget}")


def enumerate_experts(horizon: int, budget: int, cap: Optional[int] = None) -> ExpertFamily:
    """
    All index sets J ⊆ {0..T-1} with |J| ≤ L, in lexicographic order.

    Args:
        horizon: T
        budget: L
        cap: Maximum family size (defaults to LLAB_EXPERT_CAP)

    Raises:
        ResourceLimitError: If Σ_{i≤L} C(T,i) exceeds the cap
    """
    _check_family_args(horizon, budget)
    cap = cap or get_config()['expert_cap']
    check_cap(f"Expert family for T={horizon}, L={budget}", expert_count(horizon, budget), cap)

    subsets = sorted(
        subset
        for size in range(min(budget, horizon) + 1)
        for subset in itertools.combinations(range(horizon), size)
    )
    return ExpertFamily(horizon=horizon, budget=budget, subsets=tuple(subsets))


def enumerate_label_experts(horizon: int, budget: int, n_labels: int,
                            cap: Optional[int] = None) -> ExpertFamily:
    """
    All pairs (J, Y) with |J| ≤ L and Y a label per index of J.

    Ordered by J as in enumerate_experts, then lexicographically by Y.

    Raises:
        ResourceLimitError: If Σ_{i≤L} C(T,i)·|Y|^i exceeds the cap
    """
    _check_family_args(horizon, budget)
    if n_labels < 1:
        raise ValidationError(f"Label count must be at least 1: {n_labels}")
    cap = cap or get_config()['expert_cap']
    check_cap(f"Label-expert family for T={horizon}, L={budget}, |Y|={n_labels}",
              label_expert_count(horizon, budget, n_labels), cap)

    base = enumerate_experts(horizon, budget, cap=cap)
    subsets, assignments = [], []
    for subset in base.subsets:
        for labels in itertools.product(range(n_labels), repeat=len(subset)):
            subsets.append(subset)
            assignments.append(labels)
    return ExpertFamily(horizon=horizon, budget=budget, subsets=tuple(subsets),
                        label_assignments=tuple(assignments))


def theoretical_regret_bound(horizon: int, budget: int) -> float:
    """
    L + √((T/2)·L·ln(eT/L)); 0 when L = 0.

    The logarithm is clamped at 0 when L > eT, where L alone already exceeds
    the largest possible regret T.
    """
    if horizon < 1:
        raise ValidationError(f"Horizon must be at least 1: {horizon}")
    if budget < 0:
        raise ValidationError(f"Budget must be non-negative: {budget}")
    if budget == 0:
        return 0.0
    log_term = max(0.0, math.log(math.e * horizon / budget))
    return budget + math.sqrt(horizon / 2.0 * budget * log_term)


# ---------------------------------------------------------------------------
# Expert evaluation
# ---------------------------------------------------------------------------

class ExpertPrefixTrie:
    """Version-space masks of absorbed prefixes; node 0 is the full class."""

    def __init__(self, root_mask: int):
        self.masks: List[int] = [root_mask]
        self._children: Dict[Tuple[int, object], int] = {}
        self.emptied = False

    def __len__(self) -> int:
        return len(self.masks)

    def child(self, node: int, key: object, restriction: int) -> int:
        """Node reached from node by absorbing the example identified by key."""
        edge = (node, key)
        found = self._children.get(edge)
        if found is None:
            found = len(self.masks)
            mask = self.masks[node] & restriction
            if mask == 0 and self.masks[node] and not self.emptied:
                self.emptied = True
                logger.warning(f"An expert history became non-realizable at {key}; "
                               f"those experts now predict the default label")
            self.masks.append(mask)
            self._children[edge] = found
        return found


class _ExpertPool:
    """Trie-backed SOA states for a family of experts."""

    def __init__(self, concept_class: ConceptClass, family: ExpertFamily):
        self.concept_class = concept_class
        self.family = family
        self.trie = ExpertPrefixTrie(concept_class.full_mask)
        self.node_of = np.zeros(len(family), dtype=np.int64)
        self.by_round: List[List[int]] = [[] for _ in range(family.horizon)]
        for i, subset in enumerate(family.subsets):
            for t in subset:
                self.by_round[t].append(i)

    def soa_outputs(self, x: int) -> np.ndarray:
        """SOA prediction at x of every expert's current version space."""
        nodes, inverse = np.unique(self.node_of, return_inverse=True)
        by_mask: Dict[int, int] = {}
        predictions = np.empty(len(nodes), dtype=np.int64)
        for k, node in enumerate(nodes):
            mask = self.trie.masks[node]
            if mask not in by_mask:
                by_mask[mask] = predict_from_mask(self.concept_class, mask, x)
            predictions[k] = by_mask[mask]
        logger.debug(f"{len(nodes)} distinct expert states, {len(by_mask)} distinct version spaces")
        return predictions[np.ravel(inverse)]


class SubsetExpertPool(_ExpertPool):
    """Experts J: absorb the true example at rounds in J."""

    def outputs(self, t: int, x: int) -> np.ndarray:
        return self.soa_outputs(x)

    def advance(self, t: int, x: int, y: int) -> None:
        experts = np.asarray(self.by_round[t], dtype=np.int64)
        if experts.size == 0:
            return
        restriction = self.concept_class.label_mask(x, y)
        nodes, inverse = np.unique(self.node_of[experts], return_inverse=True)
        children = np.array([self.trie.child(int(n), t, restriction) for n in nodes], dtype=np.int64)
        self.node_of[experts] = children[np.ravel(inverse)]


class LabelExpertPool(_ExpertPool):
    """Experts (J, Y): output Y_t on J and SOA elsewhere, absorbing their own outputs."""

    def __init__(self, concept_class: ConceptClass, family: ExpertFamily):
        if not family.is_labeled:
            raise ValidationError("LabelExpertPool requires a family of (J, Y) pairs")
        super().__init__(concept_class, family)
        self.fixed_labels: List[List[int]] = [[] for _ in range(family.horizon)]
        for subset, labels in zip(family.subsets, family.label_assignments):
            for t, y in zip(subset, labels):
                self.fixed_labels[t].append(y)

    def outputs(self, t: int, x: int) -> np.ndarray:
        result = self.soa_outputs(x)
        if self.by_round[t]:
            result[np.asarray(self.by_round[t])] = np.asarray(self.fixed_labels[t])
        return result

    def advance(self, t: int, x: int, outputs: np.ndarray) -> None:
        c = self.concept_class
        keys = self.node_of * c.n_labels + outputs
        distinct, inverse = np.unique(keys, return_inverse=True)
        children = np.array([
            self.trie.child(int(k) // c.n_labels, (t, int(k) % c.n_labels),
                            c.label_mask(x, int(k) % c.n_labels))
            for k in distinct
        ], dtype=np.int64)
        self.node_of = children[np.ravel(inverse)]


def expert_outputs(c: ConceptClass, subset: Sequence[int], s: LabeledSequence) -> np.ndarray:
    """Predictions g^J_t of the single expert J at every round of s."""
    absorbed = set(subset)
    members = c.full_mask
    outputs = np.empty(len(s), dtype=np.int64)
    for t, (x, y) in enumerate(s):
        outputs[t] = predict_from_mask(c, members, x)
        if t in absorbed:
            members &= c.label_mask(x, y)
    return outputs


def expert_predict(c: ConceptClass, subset: Sequence[int], seq_prefix: LabeledSequence,
                   t: int, x: int) -> int:
    """
    Prediction of expert J at round t on point x.

    Args:
        c: Concept class
        subset: Index set J
        seq_prefix: Sequence supplying (x_s, y_s) for every s < t
        t: Round index (0-based)
        x: Point presented at round t

    Returns:
        SOA prediction after absorbing {(x_s, y_s) : s ∈ J, s < t}
    """
    if t < 0 or t > len(seq_prefix):
        raise ValidationError(f"Round {t} needs a prefix of length {t}, got {len(seq_prefix)}")
    x = c.validate_point(x)
    seq_prefix.validate_for(c)
    members = c.full_mask
    for s_index in sorted(set(subset)):
        if s_index >= t:
            break
        px, py = seq_prefix[s_index]
        members &= c.label_mask(px, py)
    return predict_from_mask(c, members, x)


def label_expert_outputs(c: ConceptClass, subset: Sequence[int], labels: Sequence[int],
                         points: Sequence[int]) -> np.ndarray:
    """Outputs y^{J,Y}_t of a single label expert over a point sequence."""
    fixed = dict(zip(subset, labels))
    members = c.full_mask
    outputs = np.empty(len(points), dtype=np.int64)
    for t, x in enumerate(points):
        y = fixed[t] if t in fixed else predict_from_mask(c, members, int(x))
        outputs[t] = y
        members &= c.label_mask(int(x), int(y))
    return outputs


def expert_loss_matrix(c: ConceptClass, s: LabeledSequence, family: ExpertFamily) -> np.ndarray:
    """N×T matrix of 𝟙[g^J_t ≠ y_t] for every expert of the family."""
    pool = SubsetExpertPool(c, family)
    losses = np.zeros((len(family), len(s)), dtype=np.int8)
    for t, (x, y) in enumerate(s):
        losses[:, t] = pool.outputs(t, x) != y
        pool.advance(t, x, y)
    return losses


# ---------------------------------------------------------------------------
# Learners
# ---------------------------------------------------------------------------

class AgnosticLearner:
    """Streaming multiplicative weights over the SOA-subsequence experts."""

    deterministic = False

    def __init__(self, concept_class: ConceptClass, horizon: int, budget: Optional[int] = None,
                 cap: Optional[int] = None):
        """
        Initialize the learner for a known horizon.

        Args:
            concept_class: Class the experts run SOA on
            horizon: Number of rounds T (η depends on it)
            budget: Size bound on J; defaults to the class's Littlestone dimension
            cap: Maximum expert count
        """
        if horizon < 1:
            raise ValidationError(f"Horizon must be at least 1: {horizon}")
        self.concept_class = concept_class
        self.horizon = horizon
        self.littlestone = class_littlestone_dim(concept_class)
        self.budget = budget if budget is not None else max(self.littlestone, 0)
        if self.budget < self.littlestone:
            logger.warning(f"Budget {self.budget} is below the Littlestone dimension {self.littlestone}")

        self.family = enumerate_experts(horizon, self.budget, cap)
        self.pool = SubsetExpertPool(concept_class, self.family)
        self.weights = MWState.for_horizon(horizon, len(self.family))
        self.t = 0
        self._pending: Optional[Tuple[int, np.ndarray, PredictionDistribution]] = None
        logger.info(f"Agnostic learner: T={horizon}, L={self.budget}, {len(self.family)} experts, "
                    f"eta={self.weights.eta:.6f}")

    def _advise(self, x: int) -> Tuple[np.ndarray, PredictionDistribution]:
        if self._pending is not None and self._pending[0] == x:
            return self._pending[1], self._pending[2]
        outputs = self.pool.outputs(self.t, x)
        distribution = mw_mix(self.weights, outputs)
        self._pending = (x, outputs, distribution)
        return outputs, distribution

    def predict_proba(self, x: int) -> PredictionDistribution:
        """Mixture p_t over labels at x for the current round."""
        if self.t >= self.horizon:
            raise ValidationError(f"Learner was built for {self.horizon} rounds")
        x = self.concept_class.validate_point(x)
        return self._advise(x)[1]

    def update(self, x: int, y: int) -> RoundRecord:
        """
        Reveal y, charge every expert its 0-1 loss and advance one round.

        Returns:
            RoundRecord without the OPT column filled in
        """
        if self.t >= self.horizon:
            raise ValidationError(f"Learner was built for {self.horizon} rounds")
        c = self.concept_class
        x, y = c.validate_point(x), c.validate_label(y)
        outputs, distribution = self._advise(x)
        expected = check_mixture_identity(self.weights, outputs, y, distribution)
        losses = (outputs != y).astype(np.int8)

        mw_update(self.weights, losses)
        self.pool.advance(self.t, x, y)
        record = RoundRecord(t=self.t, point=x, label=y, distribution=distribution,
                             expert_losses=losses, expected_loss=expected, opt_so_far=0)
        self.t += 1
        self._pending = None
        return record


def finish_trace(trace: AagTrace, c: ConceptClass, s: LabeledSequence) -> AagTrace:
    """Fill OPT columns and the realized regret."""
    opt_prefix = running_opt(c, s)
    for record, opt in zip(trace.rounds, opt_prefix):
        record.opt_so_far = int(opt)
    trace.opt_hypothesis, trace.opt = opt_mistakes(c, s)
    trace.cumulative_expected_loss = float(sum(r.expected_loss for r in trace.rounds))
    trace.best_expert_loss = int(trace.expert_loss_totals().min()) if trace.rounds else 0
    trace.regret = trace.cumulative_expected_loss - trace.opt
    return trace


def _enforce(trace: AagTrace, strict: bool) -> AagTrace:
    if not trace.bound_holds:
        logger.error(f"{trace.learner}: regret {trace.regret:.6f} exceeds bound {trace.bound:.6f}")
        if strict:
            raise VerificationError(
                f"{trace.learner} regret {trace.regret!r} exceeds its bound {trace.bound!r}")
    return trace


def aag_run(c: ConceptClass, s: LabeledSequence, budget: Optional[int] = None,
            cap: Optional[int] = None, bound_scale: float = 1.0,
            strict: bool = False) -> AagTrace:
    """
    Run the agnostic learner over s with T = |s|.

    Args:
        c: Concept class
        s: Sequence of length T ≥ 1
        budget: Override for L when building the expert family
        cap: Maximum expert count
        bound_scale: Multiplier applied to the regret bound (1.0 in normal runs)
        strict: Raise VerificationError if the regret bound fails

    Returns:
        AagTrace with per-round distributions, losses and the certificate
    """
    s.validate_for(c)
    if c.n_hypotheses == 0:
        raise ValidationError("aag_run is undefined for an empty class")
    learner = AgnosticLearner(c, len(s), budget=budget, cap=cap)
    trace = AagTrace(learner='aag', horizon=len(s), budget=learner.budget,
                     n_experts=len(learner.family), eta=learner.weights.eta)
    for x, y in s:
        learner.predict_proba(x)
        trace.rounds.append(learner.update(x, y))

    finish_trace(trace, c, s)
    trace.bound = theoretical_regret_bound(len(s), learner.budget) * bound_scale
    trace.bound_holds = trace.regret <= trace.bound + PROBABILITY_TOLERANCE
    trace.extra.update({
        'littlestone': learner.littlestone,
        'bound_applicable': learner.budget >= learner.littlestone,
        'trie_nodes': len(learner.pool.trie),
    })
    logger.info(f"aag: T={len(s)}, loss={trace.cumulative_expected_loss:.6f}, OPT={trace.opt}, "
                f"regret={trace.regret:.6f}, bound={trace.bound:.6f}")
    return _enforce(trace, strict)


def best_expert_witness(c: ConceptClass, s: LabeledSequence,
                        cap: Optional[int] = None) -> Tuple[Tuple[int, ...], int, WitnessCertificate]:
    """
    Build J* from the best hypothesis h*.

    R* is the set of rounds where h* is correct; J* is the mistake set of
    conservative SOA replayed on s restricted to R*, mapped back to rounds of s.

    Returns:
        Tuple of (J*, h*, certificate)
    """
    s.validate_for(c)
    littlestone = class_littlestone_dim(c)
    cap = cap or get_config()['expert_cap']
    check_cap("Expert family for the witness", expert_count(len(s), max(littlestone, 0)), cap)

    hypothesis, opt = opt_mistakes(c, s)
    correct_rounds = [t for t, (x, y) in enumerate(s) if c.table[hypothesis, x] == y]
    mistakes_on_r = conservative_soa(c, s.subsequence(correct_rounds))
    subset = tuple(correct_rounds[j] for j in mistakes_on_r)

    expert_mistakes = int((expert_outputs(c, subset, s) != s.labels).sum()) if len(s) else 0
    certificate = WitnessCertificate(
        subset=subset,
        hypothesis=hypothesis,
        opt=opt,
        littlestone=littlestone,
        expert_mistakes=expert_mistakes,
        in_family=len(subset) <= max(littlestone, 0) and all(0 <= t < len(s) for t in subset),
    )
    if not certificate.holds:
        logger.error(f"Best-expert witness failed: {certificate.to_dict()}")
    return subset, hypothesis, certificate


def star_label_expert(c: ConceptClass, hypothesis: int,
                      points: Sequence[int]) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    """
    The (J*, Y*) expert that replicates a hypothesis on a point sequence.

    J* holds the rounds where full-update SOA on the sequence labeled by h errs
    and Y* the labels of h there.
    """
    members = c.full_mask
    subset, labels = [], []
    for t, x in enumerate(points):
        target = int(c.table[hypothesis, x])
        if predict_from_mask(c, members, int(x)) != target:
            subset.append(t)
            labels.append(target)
        members &= c.label_mask(int(x), target)
    return tuple(subset), tuple(labels)


def finite_y_learner(c: ConceptClass, s: LabeledSequence, budget: Optional[int] = None,
                     cap: Optional[int] = None, bound_scale: float = 1.0,
                     strict: bool = False) -> AagTrace:
    """
    Multiplicative weights over the (J, Y) label experts.

    The bound is √((T/2)·ln|𝒬|); the run also checks that the (J*, Y*) expert
    built from h* attains OPT exactly and that no expert does worse than OPT
    at its best.
    """
    s.validate_for(c)
    if c.n_hypotheses == 0:
        raise ValidationError("finite_y_learner is undefined for an empty class")
    horizon = len(s)
    if horizon < 1:
        raise ValidationError("finite_y_learner needs at least one round")
    littlestone = class_littlestone_dim(c)
    budget = budget if budget is not None else max(littlestone, 0)

    family = enumerate_label_experts(horizon, budget, c.n_labels, cap)
    pool = LabelExpertPool(c, family)
    weights = MWState.for_horizon(horizon, len(family))
    trace = AagTrace(learner='finitey', horizon=horizon, budget=budget,
                     n_experts=len(family), eta=weights.eta)

    for t, (x, y) in enumerate(s):
        outputs = pool.outputs(t, x)
        distribution = mw_mix(weights, outputs)
        expected = check_mixture_identity(weights, outputs, y, distribution)
        losses = (outputs != y).astype(np.int8)
        mw_update(weights, losses)
        pool.advance(t, x, outputs)
        trace.rounds.append(RoundRecord(t=t, point=x, label=y, distribution=distribution,
                                        expert_losses=losses, expected_loss=expected, opt_so_far=0))

    finish_trace(trace, c, s)
    star_subset, star_labels = star_label_expert(c, trace.opt_hypothesis, s.points)
    star_loss = int((label_expert_outputs(c, star_subset, star_labels, s.points) != s.labels).sum())
    star_in_family = len(star_subset) <= budget
    star_attains_opt = star_in_family and star_loss == trace.opt

    trace.bound = mw_regret_bound(horizon, len(family)) * bound_scale
    log_term = budget * max(0.0, math.log(math.e * horizon / budget)) if budget else 0.0
    closed_form = math.sqrt(horizon / 2.0 * (log_term + budget * math.log(c.n_labels)))
    trace.bound_holds = (trace.regret <= trace.bound + PROBABILITY_TOLERANCE
                         and star_attains_opt and trace.best_expert_loss <= trace.opt)
    trace.extra.update({
        'littlestone': littlestone,
        'star_subset': list(star_subset),
        'star_labels': list(star_labels),
        'star_expert_loss': star_loss,
        'star_attains_opt': star_attains_opt,
        'closed_form_bound': closed_form,
    })
    logger.info(f"finitey: T={horizon}, |Q|={len(family)}, regret={trace.regret:.6f}, "
                f"bound={trace.bound:.6f}, star expert loss={star_loss}")
    return _enforce(trace, strict)


def adaptive_expert_halving(c: ConceptClass, depth: Optional[int] = None,
                            cap: Optional[int] = None) -> HalvingCertificate:
    """
    Walk a loss-class shattered tree while halving the surviving label experts.

    At each node the branch b is the loss value shared by the fewer surviving
    experts (ties go to 0), so survivors at least halve every round. The
    hypothesis realizing the chosen path yields an expert (J*, Y*) that must
    survive, giving 1 ≤ |V_n| ≤ 2^{-n}|𝒬|.

    Args:
        c: Non-empty concept class
        depth: Tree depth n ≤ sequential graph dimension (defaults to it)
        cap: Maximum label-expert count

    Raises:
        PreconditionError: If depth exceeds the sequential graph dimension
    """
    if c.n_hypotheses == 0:
        raise ValidationError("adaptive_expert_halving is undefined for an empty class")
    sg = sequential_graph_dim(c)
    depth = sg if depth is None else depth
    if depth < 0 or depth > sg:
        raise PreconditionError(f"Depth {depth} must lie in [0, {sg}]")
    littlestone = class_littlestone_dim(c)
    n_labels = c.n_labels

    family = enumerate_label_experts(depth, littlestone, n_labels, cap)
    tree = shattered_tree(loss_class(c).full_space(), depth)
    pool = LabelExpertPool(c, family)
    alive = np.ones(len(family), dtype=bool)

    address: Tuple[int, ...] = ()
    points, targets, path, counts = [], [], [], []
    for t in range(depth):
        pair, label0, label1 = tree.nodes[address]
        x, y = divmod(pair, n_labels)
        outputs = pool.outputs(t, x)
        disagree = outputs != y
        ones = int(np.count_nonzero(alive & disagree))
        zeros = int(np.count_nonzero(alive & ~disagree))
        bit = 0 if zeros <= ones else 1
        alive &= disagree == bool(bit)
        counts.append(int(alive.sum()))
        address += (0 if label0 == bit else 1,)
        pool.advance(t, x, outputs)
        points.append(x)
        targets.append(y)
        path.append(bit)

    rows = c.table[:, points] if points else np.zeros((c.n_hypotheses, 0), dtype=np.int64)
    matches = np.all((rows != np.array(targets, dtype=np.int64)) == np.array(path, dtype=bool), axis=1)
    if not matches.any():
        raise VerificationError("No hypothesis realizes the walked loss-class path")
    hypothesis = int(np.argmax(matches))

    star_subset, star_labels = star_label_expert(c, hypothesis, points)
    index = {pair: i for i, pair in enumerate(zip(family.subsets, family.label_assignments))}
    star_index = index.get((star_subset, star_labels))
    star_survives = star_index is not None and bool(alive[star_index])

    if depth == 0 or littlestone <= 0:
        implicit = 0.0
    else:
        implicit = littlestone * math.log2(2 * depth / littlestone) + littlestone * math.log2(n_labels)
    certificate = HalvingCertificate(
        depth=depth,
        littlestone=littlestone,
        n_labels=n_labels,
        n_experts=len(family),
        path=tuple(path),
        survivor_counts=tuple(counts),
        hypothesis=hypothesis,
        star_subset=star_subset,
        star_labels=star_labels,
        star_survives=star_survives,
        implicit_bound=implicit,
        closed_form_bound=sg_dimension_bound(littlestone, n_labels),
    )
    if not certificate.holds:
        logger.error(f"Adaptive-expert halving failed: {certificate.to_dict()}")
    return certificate
