"""
Data validation functions for Littlestone Lab.
Exception types plus validators for class files, sequence files and indices.
"""

from typing import Any, Dict, List, Sequence, Tuple
import logging

logger = logging.getLogger(__name__)


class ValidationError(Exception):
    """Custom exception for malformed input."""
    pass


class ResourceLimitError(Exception):
    """Raised when a configured resource cap would be exceeded."""
    pass


class PreconditionError(Exception):
    """Raised when a documented precondition of an operation does not hold."""
    pass


class VerificationError(Exception):
    """Raised when an internal invariant is violated at runtime."""
    pass


def check_cap(what: str, required: int, cap: int) -> None:
    """
    Raise ResourceLimitError if required exceeds cap.

    Args:
        what: Human-readable name of the resource
        required: Size the operation needs
        cap: Configured maximum
    """
    if required > cap:
        raise ResourceLimitError(f"{what} requires {required}, above the cap of {cap}")


class IndexValidator:
    """Validators for dense point/label/hypothesis indices."""

    @staticmethod
    def validate_index(value: Any, size: int, kind: str) -> int:
        """
        Validate an integer index into a table of the given size.

        Args:
            value: Raw index
            size: Number of valid entries
            kind: Name used in error messages ("point", "label", ...)

        Returns:
            The index as a plain int

        Raises:
            ValidationError: If the index is not an integer in range
        """
        if isinstance(value, bool):
            raise ValidationError(f"Invalid {kind} index: {value!r}")
        try:
            index = int(value)
        except (ValueError, TypeError):
            raise ValidationError(f"Invalid {kind} index: {value!r}")
        if index != value:
            raise ValidationError(f"Invalid {kind} index: {value!r}")
        if not (0 <= index < size):
            raise ValidationError(f"{kind.capitalize()} index {index} out of range [0, {size})")
        return index


class ClassFileValidator:
    """Validator for the textual concept-class format."""

    REQUIRED_FIELDS = ('points', 'labels', 'hypotheses')

    @staticmethod
    def validate_names(names: Any, field: str) -> List[str]:
        if not isinstance(names, list) or not names:
            raise ValidationError(f"Field '{field}' must be a non-empty list")
        cleaned = []
        for name in names:
            if not isinstance(name, str) or not name.strip():
                raise ValidationError(f"Field '{field}' must contain non-empty strings: {name!r}")
            cleaned.append(name.strip())
        if len(set(cleaned)) != len(cleaned):
            raise ValidationError(f"Field '{field}' contains duplicate names")
        return cleaned

    @staticmethod
    def validate_class_dict(data: Dict[str, Any]) -> Dict[str, Any]:
        """
        Validate a decoded class file.

        Args:
            data: Object with fields points, labels, hypotheses

        Returns:
            Validated copy with cleaned names and integer rows

        Raises:
            ValidationError: If any field is missing or malformed
        """
        if not isinstance(data, dict):
            raise ValidationError("Class file must contain an object")

        for field in ClassFileValidator.REQUIRED_FIELDS:
            if field not in data:
                raise ValidationError(f"Missing required field: {field}")

        points = ClassFileValidator.validate_names(data['points'], 'points')
        labels = ClassFileValidator.validate_names(data['labels'], 'labels')

        rows = data['hypotheses']
        if not isinstance(rows, list):
            raise ValidationError("Field 'hypotheses' must be a list of integer lists")

        validated_rows = []
        for i, row in enumerate(rows):
            if not isinstance(row, list) or len(row) != len(points):
                raise ValidationError(
                    f"Hypothesis {i} must list one label index per point ({len(points)})")
            validated_rows.append([
                IndexValidator.validate_index(value, len(labels), 'label') for value in row
            ])

        return {'points': points, 'labels': labels, 'hypotheses': validated_rows}


class SequenceValidator:
    """Validator for labeled sequences."""

    @staticmethod
    def validate_entries(entries: Any, n_points: int, n_labels: int) -> List[Tuple[int, int]]:
        """
        Validate a list of [point_index, label_index] pairs.

        Args:
            entries: Raw list of pairs
            n_points: Size of the point set
            n_labels: Size of the label alphabet

        Returns:
            List of (point, label) integer tuples

        Raises:
            ValidationError: If an entry is malformed or out of range
        """
        if not isinstance(entries, (list, tuple)):
            raise ValidationError("Sequence must be a list of [point_index, label_index] pairs")

        validated = []
        for t, entry in enumerate(entries):
            if not isinstance(entry, (list, tuple)) or len(entry) != 2:
                raise ValidationError(f"Sequence entry {t} must be a [point_index, label_index] pair")
            x = IndexValidator.validate_index(entry[0], n_points, 'point')
            y = IndexValidator.validate_index(entry[1], n_labels, 'label')
            validated.append((x, y))
        return validated

    @staticmethod
    def validate_multiset(indices: Sequence[Any], length: int) -> List[int]:
        """Validate a non-empty multiset of round indices into a sequence."""
        if len(indices) == 0:
            raise ValidationError("Index multiset K must be non-empty")
        return [IndexValidator.validate_index(k, length, 'round') for k in indices]


def validate_experiment_parameters(horizon: int, trials: int, seed: int,
                                   rate: float = 0.0) -> Dict[str, Any]:
    """
    Validate all experiment parameters at once.

    Args:
        horizon: Sequence length T
        trials: Number of trials
        seed: Root seed
        rate: Label-noise rate for noisy streams

    Returns:
        Dictionary of validated parameters

    Raises:
        ValidationError: If any parameter is invalid
    """
    if not isinstance(horizon, int) or horizon < 1:
        raise ValidationError(f"Horizon must be a positive integer: {horizon}")
    if not isinstance(trials, int) or trials < 1:
        raise ValidationError(f"Trial count must be a positive integer: {trials}")
    if not isinstance(seed, int) or seed < 0:
        raise ValidationError(f"Seed must be a non-negative integer: {seed}")
    if not (0.0 <= float(rate) <= 1.0):
        raise ValidationError(f"Noise rate must be in [0, 1]: {rate}")

    return {'horizon': horizon, 'trials': trials, 'seed': seed, 'rate': float(rate)}
