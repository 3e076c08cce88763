"""Dense feature table with named, role-tagged columns."""
from dataclasses import dataclass, field

import numpy as np

ROLE_PRIMITIVE_A = "primitive_a"
ROLE_PRIMITIVE_B = "primitive_b"
ROLE_RATIO = "engineered_ratio"
ROLE_DISTRACTOR = "distractor"
KNOWN_ROLES = (ROLE_PRIMITIVE_A, ROLE_PRIMITIVE_B, ROLE_RATIO, ROLE_DISTRACTOR)


@dataclass
class FeatureMatrix:
    """Numeric (n_rows, n_cols) table, stored column-contiguous.

    ``col_roles`` is optional; when provided it must tag exactly one
    primitive_a and one primitive_b column.
    """

    values: np.ndarray
    col_names: list[str]
    col_roles: list[str] | None = None

    def __post_init__(self):
        v = np.asarray(self.values, dtype=np.float64)
        if v.ndim != 2:
            raise ValueError("values must be 2-dimensional")
        self.values = np.asfortranarray(v)
        if not np.isfinite(self.values).all():
            raise ValueError("values must be finite")
        if len(self.col_names) != self.n_cols:
            raise ValueError("col_names length does not match n_cols")
        if self.col_roles is not None:
            if len(self.col_roles) != self.n_cols:
                raise ValueError("col_roles length does not match n_cols")
            for r in self.col_roles:
                if r not in KNOWN_ROLES:
                    raise ValueError(f"unknown column role {r!r}")
            for role in (ROLE_PRIMITIVE_A, ROLE_PRIMITIVE_B):
                if self.col_roles.count(role) != 1:
                    raise ValueError(f"need exactly one {role} column")

    @property
    def n_rows(self) -> int:
        return self.values.shape[0]

    @property
    def n_cols(self) -> int:
        return self.values.shape[1]

    def columns(self) -> np.ndarray:
        """(n_cols, n_rows) C-contiguous view."""
        return self.values.T

    def role_index(self, role: str) -> int:
        if self.col_roles is None:
            raise ValueError("matrix has no role tags")
        return self.col_roles.index(role)

    def name_index(self, name: str) -> int:
        return self.col_names.index(name)


def validate_labels(labels, n_rows: int) -> np.ndarray:
    y = np.asarray(labels)
    if y.shape != (n_rows,):
        raise ValueError("labels length does not match rows")
    vals = np.unique(y)
    if not np.isin(vals, (0, 1)).all():
        raise ValueError("labels must be 0/1")
    return y.astype(np.float64)
