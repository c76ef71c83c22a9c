"""Sparse exact linear algebra over a scalar field.

Vectors are dicts mapping sortable keys to nonzero raw field values.
:class:`Echelon` keeps a reduced row echelon basis with ascending pivot
keys and supports incremental insertion, which is what the saturation
and center computations iterate on.
"""

from __future__ import annotations

from .scalars import ScalarField


class Echelon:
    """A reduced echelon basis of a growing subspace."""

    def __init__(self, field: ScalarField, descending: bool = False):
        self.field = field
        self.descending = descending
        self.rows: list[tuple[object, dict]] = []  # (pivot key, normalized row)

    def __len__(self):
        return len(self.rows)

    def _pivot_key(self, v: dict):
        return max(v) if self.descending else min(v)

    def reduce(self, v: dict) -> dict:
        """Eliminate v against the basis; the result has no support on pivot keys."""
        field = self.field
        v = dict(v)
        for pivot, row in self.rows:
            coeff = v.get(pivot)
            if not coeff:
                continue
            for key, value in row.items():
                acc = field.sub(v.get(key, field.zero), field.mul(coeff, value))
                if acc:
                    v[key] = acc
                else:
                    v.pop(key, None)
        return v

    def insert(self, v: dict) -> bool:
        """Reduce and insert; returns True when the rank grew."""
        field = self.field
        v = self.reduce(v)
        if not v:
            return False
        pivot = self._pivot_key(v)
        inv = field.inv(v[pivot])
        v = {key: field.mul(inv, value) for key, value in v.items()}
        # keep the basis fully reduced
        for i, (other_pivot, row) in enumerate(self.rows):
            coeff = row.get(pivot)
            if not coeff:
                continue
            new_row = dict(row)
            for key, value in v.items():
                acc = field.sub(new_row.get(key, field.zero), field.mul(coeff, value))
                if acc:
                    new_row[key] = acc
                else:
                    new_row.pop(key, None)
            self.rows[i] = (other_pivot, new_row)
        self.rows.append((pivot, v))
        self.rows.sort(key=lambda item: item[0], reverse=self.descending)
        return True

    def contains(self, v: dict) -> bool:
        return not self.reduce(v)

    def vectors(self) -> list[dict]:
        return [dict(row) for _, row in self.rows]


def rref(vectors: list[dict], field: ScalarField, descending: bool = False) -> list[dict]:
    """Reduced row echelon form of a list of sparse vectors."""
    ech = Echelon(field, descending)
    for v in vectors:
        ech.insert(v)
    return ech.vectors()


def nullspace(rows: list[dict[int, object]], ncols: int, field: ScalarField) -> list[dict[int, object]]:
    """Kernel basis of the matrix whose rows are given as sparse int-keyed dicts."""
    ech = Echelon(field)
    for row in rows:
        ech.insert(row)
    pivots = {pivot for pivot, _ in ech.rows}
    basis = []
    for free in range(ncols):
        if free in pivots:
            continue
        vec = {free: field.one}
        for pivot, row in ech.rows:
            coeff = row.get(free)
            if coeff:
                vec[pivot] = field.neg(coeff)
        basis.append(vec)
    return basis


def express_in_span(vectors: list[dict], target: dict, field: ScalarField) -> list | None:
    """Coefficients x with sum x_j * vectors[j] == target, or None.

    Keys may be arbitrary sortable tuples; the solve runs on the transpose
    (one row per coordinate key).
    """
    rows_by_key: dict[object, dict[int, object]] = {}
    for j, vec in enumerate(vectors):
        for key, value in vec.items():
            rows_by_key.setdefault(key, {})[j] = value
    rhs_col = len(vectors)
    rows = []
    keys = set(rows_by_key) | set(target)
    for key in sorted(keys):
        row = dict(rows_by_key.get(key, {}))
        t = target.get(key)
        if t:
            row[rhs_col] = t
        if row:
            rows.append(row)
    ech = Echelon(field)
    for row in rows:
        ech.insert(row)
    solution = [field.zero] * len(vectors)
    for pivot, row in ech.rows:
        if pivot == rhs_col:
            return None  # inconsistent
        if any(key != rhs_col and key != pivot for key in row):
            # a non-pivot variable appears; with free vars pinned to zero the
            # row still determines the pivot variable
            pass
        solution[pivot] = row.get(rhs_col, field.zero)
    # verify (free variables were pinned to zero)
    acc: dict[object, object] = {}
    for j, vec in enumerate(vectors):
        coeff = solution[j]
        if not coeff:
            continue
        for key, value in vec.items():
            s = field.add(acc.get(key, field.zero), field.mul(coeff, value))
            if s:
                acc[key] = s
            else:
                acc.pop(key, None)
    if acc != {key: value for key, value in target.items() if value}:
        return None
    return solution
