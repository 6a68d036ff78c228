"""Exact dense linear algebra over Q and F_p.

Vectors are tuples (or lists) of field elements, matrices are tuples of row
tuples.  Everything here is deterministic: pivots are always the leftmost
nonzero coordinate, echelon forms are fully reduced.
"""

from __future__ import annotations


class Echelon:
    """Incrementally maintained reduced row echelon form.

    Rows are kept fully reduced (each pivot column is zero in every other
    row) and sorted by pivot column, so the stored rows are the canonical
    RREF basis of the span.
    """

    def __init__(self, field, width):
        self.field = field
        self.width = width
        self.rows = []
        self.pivots = []

    def residual(self, vec):
        """Reduce vec against the current rows; returns a list."""
        f = self.field
        out = list(vec)
        for row, piv in zip(self.rows, self.pivots):
            c = out[piv]
            if c != f.zero:
                for j in range(piv, self.width):
                    out[j] = f.sub(out[j], f.mul(c, row[j]))
        return out

    def contains(self, vec):
        return all(c == self.field.zero for c in self.residual(vec))

    def add(self, vec):
        """Insert vec's residual if independent; returns True if rank grew."""
        f = self.field
        res = self.residual(vec)
        piv = next((j for j, c in enumerate(res) if c != f.zero), None)
        if piv is None:
            return False
        lead = res[piv]
        row = [f.div(c, lead) for c in res]
        for other in self.rows:
            c = other[piv]
            if c != f.zero:
                for j in range(piv, self.width):
                    other[j] = f.sub(other[j], f.mul(c, row[j]))
        at = next((k for k, q in enumerate(self.pivots) if q > piv), len(self.pivots))
        self.rows.insert(at, row)
        self.pivots.insert(at, piv)
        return True

    @property
    def rank(self):
        return len(self.rows)

    def snapshot(self):
        return tuple(tuple(r) for r in self.rows)


def rref(field, rows, width):
    ech = Echelon(field, width)
    for r in rows:
        ech.add(r)
    return ech


class Expander:
    """Echelon that rewrites vectors as combinations of the added ones.

    Only vectors accepted by add() (i.e. independent at insertion time) are
    stored; express() returns coefficients over them, in insertion order.
    Rows are kept mutually reduced, so reduction is a single pass.
    """

    def __init__(self, field, width):
        self.field = field
        self.width = width
        self.rows = []      # reduced vectors, pivot normalized to 1
        self.pivots = []
        self.combos = []    # combo[i][k]: coefficient of added vector k in rows[i]

    def _reduce(self, vec):
        f = self.field
        out = list(vec)
        combo = [f.zero] * len(self.rows)
        for i, (row, piv) in enumerate(zip(self.rows, self.pivots)):
            c = out[piv]
            if c != f.zero:
                for j in range(self.width):
                    out[j] = f.sub(out[j], f.mul(c, row[j]))
                for k, ck in enumerate(self.combos[i]):
                    combo[k] = f.add(combo[k], f.mul(c, ck))
        return out, combo

    def add(self, vec):
        f = self.field
        res, combo = self._reduce(vec)
        piv = next((j for j, c in enumerate(res) if c != f.zero), None)
        if piv is None:
            return False
        lead = f.inv(res[piv])
        row = [f.mul(lead, c) for c in res]
        new_combo = [f.neg(f.mul(lead, c)) for c in combo] + [lead]
        for i, other in enumerate(self.rows):
            c = other[piv]
            if c != f.zero:
                for j in range(self.width):
                    other[j] = f.sub(other[j], f.mul(c, row[j]))
                old = self.combos[i] + [f.zero] * (len(new_combo) - len(self.combos[i]))
                self.combos[i] = [f.sub(a, f.mul(c, b)) for a, b in zip(old, new_combo)]
        self.combos = [
            cb + [f.zero] * (len(new_combo) - len(cb)) for cb in self.combos
        ]
        self.rows.append(row)
        self.pivots.append(piv)
        self.combos.append(new_combo)
        return True

    def express(self, vec):
        """Coefficients over the added vectors, or None if not in the span."""
        f = self.field
        res, combo = self._reduce(vec)
        if any(c != f.zero for c in res):
            return None
        return combo

    @property
    def rank(self):
        return len(self.rows)


def nullspace(field, rows, width):
    """Canonical basis of the right nullspace of the given matrix.

    One basis vector per free column, with 1 in the free position; the basis
    is itself in echelon form with respect to the free columns.
    """
    ech = rref(field, rows, width)
    pivset = set(ech.pivots)
    basis = []
    for free in range(width):
        if free in pivset:
            continue
        vec = [field.zero] * width
        vec[free] = field.one
        for row, piv in zip(ech.rows, ech.pivots):
            vec[piv] = field.neg(row[free])
        basis.append(tuple(vec))
    return basis


def mat_vec(field, mat, vec):
    f = field
    out = []
    for row in mat:
        acc = f.zero
        for a, x in zip(row, vec):
            if a != f.zero and x != f.zero:
                acc = f.add(acc, f.mul(a, x))
        out.append(acc)
    return out


def mat_mul(field, a, b, inner_cols):
    """Product a*b where a is r x inner and b is inner x c; inner_cols = c."""
    f = field
    if not a:
        return ()
    if not b:
        return tuple((f.zero,) * inner_cols for _ in a)
    out = []
    for row in a:
        acc = [f.zero] * inner_cols
        for coeff, brow in zip(row, b):
            if coeff != f.zero:
                for j, v in enumerate(brow):
                    if v != f.zero:
                        acc[j] = f.add(acc[j], f.mul(coeff, v))
        out.append(tuple(acc))
    return tuple(out)


def identity(field, n):
    return tuple(
        tuple(field.one if i == j else field.zero for j in range(n)) for i in range(n)
    )


def is_invertible(field, mat, n):
    if n == 0:
        return True
    if len(mat) != n:
        return False
    return rref(field, list(mat), n).rank == n
