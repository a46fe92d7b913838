"""Exact integer linear algebra.

Matrices are numpy arrays of dtype ``int64`` while their entries are small and
``object`` (Python ints) once they are not.  Every routine here checks bounds
before multiplying, so results are always exact.

Abelian groups are stored as diagonal presentations ``Z/o_1 + ... + Z/o_n``
where ``o_i == 0`` means a free summand.  A homomorphism is an integer matrix
whose row ``i`` is read modulo ``o_i``.

>>> smith_normal_form(as_matrix([[2, 4], [6, 8]])).diagonal
[2, 4]
>>> FgAbelianGroup((2, 0, 2)).iso_invariants()
(1, [2, 2])
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

IntMatrix = np.ndarray

# int64 arithmetic is used only while every entry stays below this bound, so a
# single product plus a sum can never leave the int64 range.
_SMALL = 1 << 31
_FLOAT_EXACT = 2 ** 53
_INT64_SAFE = 1 << 62


class NotASubgroup(ValueError):
    """Boundary lattice is not contained in the cycle lattice."""


class DoesNotDescend(ValueError):
    """A map fails to carry cycles to cycles or boundaries to boundaries."""


# ---------------------------------------------------------------- matrices


def _max_abs(a: np.ndarray) -> int:
    if a.size == 0:
        return 0
    return int(np.max(np.abs(a)))


def _shrink(a: np.ndarray) -> np.ndarray:
    """Use int64 storage when every entry is comfortably small."""
    if a.dtype == object and _max_abs(a) < _INT64_SAFE:
        return a.astype(np.int64)
    return a


def as_matrix(data, rows: int | None = None, cols: int | None = None) -> IntMatrix:
    """Integer matrix from nested sequences or an array (1-D input is a column).

    ``rows``/``cols`` fix the shape of empty input.
    """
    if isinstance(data, np.ndarray):
        a = data if data.dtype in (np.int64, object) else data.astype(np.int64)
    else:
        a = np.array(data, dtype=object)
    if a.size == 0:
        r = rows if rows is not None else (a.shape[0] if a.ndim >= 1 else 0)
        c = cols if cols is not None else (a.shape[1] if a.ndim == 2 else 0)
        return zeros(r, c)
    if a.ndim == 1:
        a = a.reshape(-1, 1)
    if a.dtype == object:
        a = _shrink(np.vectorize(int, otypes=[object])(a))
    return a


def zeros(rows: int, cols: int) -> IntMatrix:
    return np.zeros((rows, cols), dtype=np.int64)


def identity(n: int) -> IntMatrix:
    return np.eye(n, dtype=np.int64)


def matmul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    """Exact product, promoting to Python ints when int64 could overflow."""
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"shape mismatch {a.shape} @ {b.shape}")
    if a.shape[1] == 0:
        return zeros(a.shape[0], b.shape[1])
    if a.dtype == np.int64 and b.dtype == np.int64:
        bound = _max_abs(a) * _max_abs(b) * a.shape[1]
        if bound < _FLOAT_EXACT and a.size * b.shape[1] > 4096:
            # exact in double precision, and BLAS is far faster than integer loops
            return np.rint(a.astype(np.float64) @ b.astype(np.float64)).astype(np.int64)
        if bound < _INT64_SAFE:
            return a @ b
    return _shrink(a.astype(object) @ b.astype(object))


def mat_sum(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    if a.dtype == np.int64 and b.dtype == np.int64 and _max_abs(a) + _max_abs(b) < _INT64_SAFE:
        return a + b
    return _shrink(a.astype(object) + b.astype(object))


def scale(c: int, a: IntMatrix) -> IntMatrix:
    if a.dtype == np.int64 and abs(c) * _max_abs(a) < _INT64_SAFE:
        return c * a
    return _shrink(c * a.astype(object))


def reduce_rows(a: IntMatrix, orders: Sequence[int]) -> IntMatrix:
    """Reduce row ``i`` modulo ``orders[i]`` (free rows untouched)."""
    out = a.copy()
    for i, o in enumerate(orders):
        if o:
            out[i] = out[i] % o
    return out


def block_diag(blocks: Sequence[IntMatrix]) -> IntMatrix:
    rows = sum(b.shape[0] for b in blocks)
    cols = sum(b.shape[1] for b in blocks)
    dtype = object if any(b.dtype == object for b in blocks) else np.int64
    out = np.zeros((rows, cols), dtype=dtype)
    r = c = 0
    for b in blocks:
        out[r:r + b.shape[0], c:c + b.shape[1]] = b
        r += b.shape[0]
        c += b.shape[1]
    return out


def is_zero(a: IntMatrix) -> bool:
    return not np.any(a != 0)


def determinant(a: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    m = [[int(x) for x in row] for row in as_matrix(a)]
    n = len(m)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


# ---------------------------------------------------------------- Smith form


@dataclass(frozen=True)
class SmithDecomposition:
    """``U @ A @ V == D`` with ``U``, ``V`` unimodular and ``D`` in Smith form."""

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix
    U_inv: IntMatrix | None = None
    V_inv: IntMatrix | None = None

    @property
    def rank(self) -> int:
        return len(self.diagonal)

    @property
    def diagonal(self) -> list[int]:
        """Nonzero diagonal entries, in divisibility order."""
        out = []
        for i in range(min(self.D.shape)):
            if self.D[i, i] == 0:
                break
            out.append(int(self.D[i, i]))
        return out


class _Work:
    """Elimination state; switches from int64 to Python ints on growth."""

    def __init__(self, a: IntMatrix, inverses: bool):
        m, n = a.shape
        self.A = a.astype(np.int64) if a.dtype != object else a.copy()
        self.U = identity(m)
        self.V = identity(n)
        self.Ui = identity(m) if inverses else None
        self.Vi = identity(n) if inverses else None
        self.big = a.dtype == object
        if self.big:
            self._promote()

    def _promote(self):
        self.big = True
        self.A = self.A.astype(object)
        self.U = self.U.astype(object)
        self.V = self.V.astype(object)
        if self.Ui is not None:
            self.Ui = self.Ui.astype(object)
            self.Vi = self.Vi.astype(object)

    def _guard(self, *parts):
        if self.big:
            return
        for p in parts:
            if p.size and int(np.max(np.abs(p))) >= _SMALL:
                self._promote()
                return

    def swap_rows(self, i, j):
        if i == j:
            return
        self.A[[i, j]] = self.A[[j, i]]
        self.U[[i, j]] = self.U[[j, i]]
        if self.Ui is not None:
            self.Ui[:, [i, j]] = self.Ui[:, [j, i]]

    def swap_cols(self, i, j):
        if i == j:
            return
        self.A[:, [i, j]] = self.A[:, [j, i]]
        self.V[:, [i, j]] = self.V[:, [j, i]]
        if self.Vi is not None:
            self.Vi[[i, j]] = self.Vi[[j, i]]

    def _presum(self, count, q):
        # inverse updates sum ``count`` products; promote before they could overflow
        if not self.big and count * _max_abs(q) * _SMALL >= _INT64_SAFE:
            self._promote()

    def row_sub(self, rows, q, t):
        """rows[k] -= q[k] * row t."""
        self._presum(len(rows), q)
        self.A[rows] -= np.outer(q, self.A[t])
        self.U[rows] -= np.outer(q, self.U[t])
        if self.Ui is not None:
            self.Ui[:, t] += self.Ui[:, rows] @ q
        self._guard(self.A[rows], self.U[rows], *( [self.Ui[:, t]] if self.Ui is not None else []))

    def col_sub(self, cols, q, t):
        """cols[k] -= q[k] * col t."""
        self._presum(len(cols), q)
        self.A[:, cols] -= np.outer(self.A[:, t], q)
        self.V[:, cols] -= np.outer(self.V[:, t], q)
        if self.Vi is not None:
            self.Vi[t] += q @ self.Vi[cols]
        self._guard(self.A[:, cols], self.V[:, cols], *([self.Vi[t]] if self.Vi is not None else []))

    def row_add(self, t, i):
        """row t += row i."""
        self.A[t] += self.A[i]
        self.U[t] += self.U[i]
        if self.Ui is not None:
            self.Ui[:, i] -= self.Ui[:, t]
        self._guard(self.A[t], self.U[t], *([self.Ui[:, i]] if self.Ui is not None else []))

    def negate_row(self, t):
        self.A[t] = -self.A[t]
        self.U[t] = -self.U[t]
        if self.Ui is not None:
            self.Ui[:, t] = -self.Ui[:, t]


def _first_min_abs(block: np.ndarray) -> tuple[int, int] | None:
    """Position of the smallest nonzero |entry|, ties broken by row then column."""
    if block.size == 0:
        return None
    if block.dtype == np.int64:
        # argmin scans row-major, which is exactly the tie-break we want
        absb = np.abs(block)
        flat = int(np.argmin(np.where(absb == 0, np.iinfo(np.int64).max, absb)))
        r, c = divmod(flat, block.shape[1])
        return (r, c) if block[r, c] != 0 else None
    nz = block != 0
    if not nz.any():
        return None
    absb = np.abs(block)
    if block.dtype == object:
        best = min(int(x) for x in absb[nz])
    else:
        best = absb[nz].min()
    hits = np.argwhere(nz & (absb == best))
    return int(hits[0][0]), int(hits[0][1])


def smith_normal_form(a: IntMatrix, inverses: bool = False) -> SmithDecomposition:
    """Smith normal form with unimodular transforms (and optionally their inverses).

    Pivots are chosen as the smallest nonzero absolute value, ties going to the
    lowest row and then the lowest column, so the output is reproducible.
    """
    a = as_matrix(a)
    m, n = a.shape
    w = _Work(a, inverses)
    t = 0
    while t < min(m, n):
        pos = _first_min_abs(w.A[t:, t:])
        if pos is None:
            break
        w.swap_rows(t, t + pos[0])
        w.swap_cols(t, t + pos[1])
        while True:
            p = w.A[t, t]
            col = w.A[t + 1:, t]
            rows = np.nonzero(col)[0]
            if rows.size:
                q = col[rows] // p
                w.row_sub(rows + t + 1, q, t)
            row = w.A[t, t + 1:]
            cols = np.nonzero(row)[0]
            if cols.size:
                q = row[cols] // p
                w.col_sub(cols + t + 1, q, t)
            col = w.A[t + 1:, t]
            row = w.A[t, t + 1:]
            if np.any(col != 0) or np.any(row != 0):
                # a remainder survived: move the smallest one into the pivot
                cands = [(abs(int(x)), 0, i) for i, x in enumerate(col) if x != 0]
                cands += [(abs(int(x)), 1, j) for j, x in enumerate(row) if x != 0]
                _, kind, idx = min(cands)
                if kind == 0:
                    w.swap_rows(t, t + 1 + idx)
                else:
                    w.swap_cols(t, t + 1 + idx)
                continue
            rest = w.A[t + 1:, t + 1:]
            bad = np.argwhere(rest % p != 0) if (p != 1 and rest.size) else ()
            if len(bad):
                w.row_add(t, t + 1 + int(bad[0][0]))
                continue
            break
        if w.A[t, t] < 0:
            w.negate_row(t)
        t += 1
    return SmithDecomposition(
        U=_shrink(w.U), D=_shrink(w.A), V=_shrink(w.V),
        U_inv=None if w.Ui is None else _shrink(w.Ui),
        V_inv=None if w.Vi is None else _shrink(w.Vi),
    )


def rank(a: IntMatrix) -> int:
    return smith_normal_form(a).rank


def elementary_divisors(a: IntMatrix) -> list[int]:
    return smith_normal_form(a).diagonal


# ---------------------------------------------------------------- Hermite form


def hermite_rows(a: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Row-style Hermite normal form ``H = T @ a``; returns ``(H, T, T^-1)``.

    Pivots are positive and the entries above each pivot lie in ``[0, pivot)``.
    """
    a = as_matrix(a)
    m, n = a.shape
    w = _Work(a, inverses=True)
    r = 0
    for c in range(n):
        if r == m:
            break
        while True:
            col = w.A[r:, c]
            nz = np.nonzero(col)[0]
            if nz.size == 0:
                break
            best = min(nz, key=lambda i: (abs(int(col[i])), i))
            w.swap_rows(r, r + int(best))
            others = np.nonzero(w.A[r + 1:, c])[0]
            if others.size == 0:
                break
            q = w.A[r + 1:, c][others] // w.A[r, c]
            w.row_sub(others + r + 1, q, r)
        if w.A[r, c] == 0:
            continue
        if w.A[r, c] < 0:
            w.negate_row(r)
        p = w.A[r, c]
        above = np.nonzero(w.A[:r, c] // p)[0]
        if above.size:
            q = w.A[:r, c][above] // p
            w.row_sub(above, q, r)
        r += 1
    return _shrink(w.A), _shrink(w.U), _shrink(w.Ui)


# ---------------------------------------------------------------- groups


@dataclass(frozen=True)
class FgAbelianGroup:
    """``Z/o_1 + ... + Z/o_n`` with ``o_i == 0`` for free summands.

    Groups built by this package keep orders in canonical form (torsion
    ascending in divisibility order, then free), but any list of orders is
    accepted, e.g. ``(2, 3)`` for ``Z/6``.
    """

    orders: tuple[int, ...] = ()

    def __post_init__(self):
        for o in self.orders:
            if o < 0 or o == 1:
                raise ValueError(f"invalid cyclic order {o}")

    @property
    def ngens(self) -> int:
        return len(self.orders)

    @property
    def free_rank(self) -> int:
        return sum(1 for o in self.orders if o == 0)

    @property
    def invariant_factors(self) -> list[int]:
        return self.iso_invariants()[1]

    def is_trivial(self) -> bool:
        return not self.orders

    def relations(self) -> IntMatrix:
        """Relation lattice as columns."""
        cols = [i for i, o in enumerate(self.orders) if o]
        out = zeros(self.ngens, len(cols))
        for j, i in enumerate(cols):
            out[i, j] = self.orders[i]
        return out

    def iso_invariants(self) -> tuple[int, list[int]]:
        return iso_invariants(self)

    def __add__(self, other: "FgAbelianGroup") -> "FgAbelianGroup":
        return FgAbelianGroup(self.orders + other.orders)

    def __str__(self) -> str:
        return describe_group(self)

    @classmethod
    def free(cls, n: int) -> "FgAbelianGroup":
        return cls((0,) * n)

    @classmethod
    def from_presentation(cls, relations: IntMatrix, ngens: int | None = None) -> "Subquotient":
        """Cokernel of ``relations`` (columns are relations on ``ngens`` generators)."""
        rel = as_matrix(relations)
        n = rel.shape[0] if ngens is None else ngens
        rel = rel.reshape(n, -1) if rel.size else zeros(n, 0)
        free = cls.free(n)
        return subquotient(GroupHom(cls.free(rel.shape[1]), free, rel), GroupHom(free, cls(), zeros(0, n)))


def iso_invariants(g: FgAbelianGroup) -> tuple[int, list[int]]:
    """``(free_rank, invariant_factors)``; equal exactly for isomorphic groups."""
    torsion = [o for o in g.orders if o]
    factors = _invariant_factors(torsion)
    return g.free_rank, factors


def _invariant_factors(orders: list[int]) -> list[int]:
    # Merge cyclic orders prime by prime: the Smith form of a diagonal matrix.
    primes: dict[int, list[int]] = {}
    for o in orders:
        for p, e in _factor(o).items():
            primes.setdefault(p, []).append(p ** e)
    width = max((len(v) for v in primes.values()), default=0)
    out = [1] * width
    for powers in primes.values():
        powers.sort()
        for k, q in enumerate(powers):
            out[width - len(powers) + k] *= q
    return [x for x in out if x > 1]


def _factor(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def primary_parts(g: FgAbelianGroup) -> dict[str, int]:
    """Multiplicities of ``Z`` and of each ``Z/p^a``; additive under direct sum."""
    out: dict[str, int] = {}
    for o in g.orders:
        if o == 0:
            out["Z"] = out.get("Z", 0) + 1
            continue
        for p, e in _factor(o).items():
            key = f"Z/{p ** e}"
            out[key] = out.get(key, 0) + 1
    return out


def describe_group(g: FgAbelianGroup) -> str:
    free, factors = iso_invariants(g)
    parts = []
    if free:
        parts.append("Z" if free == 1 else f"Z^{free}")
    counts: dict[int, int] = {}
    for f in factors:
        counts[f] = counts.get(f, 0) + 1
    for f, c in counts.items():
        name = "F2" if f == 2 else f"Z/{f}"
        parts.append(name if c == 1 else f"{name}^{c}")
    return " + ".join(parts) if parts else "0"


@dataclass(frozen=True, eq=False)
class GroupHom:
    """Homomorphism given by a matrix in the distinguished generators."""

    source: FgAbelianGroup
    target: FgAbelianGroup
    matrix: IntMatrix

    def __post_init__(self):
        m = as_matrix(self.matrix, self.target.ngens, self.source.ngens)
        if m.shape != (self.target.ngens, self.source.ngens):
            raise ValueError(f"matrix shape {m.shape} does not match {self.target.ngens}x{self.source.ngens}")
        m = reduce_rows(m, self.target.orders)
        for j, o in enumerate(self.source.orders):
            if o and np.any(reduce_rows(scale(o, m[:, j:j + 1]), self.target.orders) != 0):
                raise ValueError(f"generator {j} of order {o} is not sent to an element of compatible order")
        object.__setattr__(self, "matrix", m)

    def __matmul__(self, other: "GroupHom") -> "GroupHom":
        return GroupHom(other.source, self.target, matmul(self.matrix, other.matrix))

    def __eq__(self, other) -> bool:
        return (isinstance(other, GroupHom) and self.source == other.source
                and self.target == other.target and np.array_equal(self.matrix, other.matrix))

    __hash__ = None


# ---------------------------------------------------------------- subquotients


@dataclass(frozen=True, eq=False)
class Subquotient:
    """Homology ``ker(out) / im(inc)`` at an ambient group, in canonical form.

    ``section`` holds ambient representatives of the canonical generators;
    ``project`` sends ambient cycles to canonical coordinates.
    """

    ambient: FgAbelianGroup
    group: FgAbelianGroup
    section: IntMatrix
    _out: IntMatrix = field(repr=False)
    _out_orders: tuple[int, ...] = field(repr=False)
    _coord: IntMatrix = field(repr=False)          # augmented cycle -> lattice coords
    _to_canonical: IntMatrix = field(repr=False)   # lattice coords -> canonical
    _boundaries: IntMatrix = field(repr=False)

    def cycle_coords(self, x: IntMatrix) -> IntMatrix:
        """Coordinates of ambient cycles (columns) in the cycle lattice basis."""
        x = as_matrix(x, self.ambient.ngens)
        dx = matmul(self._out, x)
        tors = [i for i, o in enumerate(self._out_orders) if o]
        extra = zeros(len(tors), x.shape[1])
        for k, i in enumerate(tors):
            o = self._out_orders[i]
            if np.any(dx[i] % o != 0):
                raise DoesNotDescend("element is not a cycle")
            extra[k] = -(dx[i] // o)
        free = [i for i, o in enumerate(self._out_orders) if not o]
        if free and np.any(dx[free] != 0):
            raise DoesNotDescend("element is not a cycle")
        aug = np.vstack([x, extra]) if len(tors) else x
        return matmul(self._coord, aug)

    def project(self, x: IntMatrix) -> IntMatrix:
        """Canonical coordinates of the classes of ambient cycles ``x``."""
        y = matmul(self._to_canonical, self.cycle_coords(x))
        return reduce_rows(y, self.group.orders)

    def lift(self, y: IntMatrix) -> IntMatrix:
        return reduce_rows(matmul(self.section, y), self.ambient.orders)


def _kernel_with_coords(out: IntMatrix, out_orders: Sequence[int], n: int):
    """Basis of ``{x : out x = 0 in the target}`` and a coordinate matrix for it."""
    rel = FgAbelianGroup(tuple(out_orders)).relations()
    big = np.hstack([out, rel]) if rel.shape[1] else out
    big = as_matrix(big, out.shape[0], n + rel.shape[1])
    dec = smith_normal_form(big, inverses=True)
    r = dec.rank
    basis = dec.V[:n, r:]
    coord = dec.V_inv[r:, :]
    return _shrink(basis), _shrink(coord)


def subquotient(b_in: GroupHom, z_in: GroupHom, canonical: bool = True) -> Subquotient:
    """Homology at the middle of ``X --b_in--> Y --z_in--> W``.

    With ``canonical`` the cycle lattice basis is put in Hermite form first, so
    kernels come out in echelon coordinates.
    """
    amb = b_in.target
    if z_in.source != amb:
        raise ValueError("maps do not compose")
    n = amb.ngens
    basis, coord = _kernel_with_coords(z_in.matrix, z_in.target.orders, n)
    if canonical and basis.shape[1]:
        h, t, t_inv = hermite_rows(basis.T)
        basis = h.T
        coord = matmul(t_inv.T, coord)
    tmp = Subquotient(amb, FgAbelianGroup(), zeros(n, 0), z_in.matrix, tuple(z_in.target.orders),
                      coord, zeros(0, basis.shape[1]), zeros(n, 0))
    gens = np.hstack([b_in.matrix, amb.relations()])
    gens = as_matrix(gens, n, b_in.source.ngens + amb.relations().shape[1])
    try:
        ycoords = tmp.cycle_coords(gens)
    except DoesNotDescend:
        raise NotASubgroup("image is not contained in the kernel") from None
    s = basis.shape[1]
    dec = smith_normal_form(ycoords, inverses=True)
    diag = dec.diagonal + [0] * (s - dec.rank)
    keep = [i for i, d in enumerate(diag) if d != 1]
    orders = tuple(diag[i] for i in keep)
    section = reduce_rows(matmul(basis, dec.U_inv[:, keep]), amb.orders)
    return Subquotient(amb, FgAbelianGroup(orders), section, z_in.matrix, tuple(z_in.target.orders),
                       coord, _shrink(dec.U[keep, :]) if keep else zeros(0, s), gens)


def induced_on_subquotient(f: GroupHom, src: Subquotient, tgt: Subquotient, check: bool = True) -> GroupHom:
    """Map induced by ``f`` from ``src`` to ``tgt``; raises ``DoesNotDescend``."""
    images = reduce_rows(matmul(f.matrix, src.section), tgt.ambient.orders)
    m = tgt.project(images)
    if check:
        bd = tgt.project(reduce_rows(matmul(f.matrix, src._boundaries), tgt.ambient.orders))
        if np.any(bd != 0):
            raise DoesNotDescend("boundaries are not sent to boundaries")
    return GroupHom(src.group, tgt.group, m)


def kernel(f: GroupHom) -> Subquotient:
    return subquotient(GroupHom(FgAbelianGroup(), f.source, zeros(f.source.ngens, 0)), f)


def cokernel(f: GroupHom) -> Subquotient:
    return subquotient(f, GroupHom(f.target, FgAbelianGroup(), zeros(0, f.target.ngens)))


def image_group(f: GroupHom) -> FgAbelianGroup:
    """Isomorphism type of the image, in canonical form."""
    k = kernel(f)
    q = subquotient(GroupHom(k.group, f.source, k.section),
                    GroupHom(f.source, FgAbelianGroup(), zeros(0, f.source.ngens)))
    return q.group


def exactness_defect(f: GroupHom, g: GroupHom) -> str | None:
    """``None`` when ``ker g = im f``, else a description of the defect."""
    if not is_zero(reduce_rows(matmul(g.matrix, f.matrix), g.target.orders)):
        return "composite is nonzero"
    try:
        sq = subquotient(f, g)
    except NotASubgroup:
        return "composite is nonzero"
    if not sq.group.is_trivial():
        return f"ker/im = {sq.group}"
    return None
