"""Smith normal form over the integers and first homology of surgery presentations."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from lensbound.errors import InputError, InvariantError
from lensbound.rational import ConnectedSum, cf_eval


@dataclass(frozen=True)
class IntMatrix:
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in r) for r in self.rows)
        if rows and len({len(r) for r in rows}) != 1:
            raise InputError("ragged matrix")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def of(cls, rows: Iterable[Iterable[int]]) -> IntMatrix:
        return cls(tuple(tuple(r) for r in rows))

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls.of([[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def diagonal(cls, entries: Sequence[int]) -> IntMatrix:
        n = len(entries)
        return cls.of([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), (len(self.rows[0]) if self.rows else 0)

    @property
    def n(self) -> int:
        m, k = self.shape
        if m != k:
            raise InputError(f"matrix is {m}x{k}, not square")
        return m

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        cols = list(zip(*other.rows))
        return IntMatrix.of([[sum(a * b for a, b in zip(r, c)) for c in cols] for r in self.rows])

    def transpose(self) -> IntMatrix:
        return IntMatrix.of(zip(*self.rows))

    def is_symmetric(self) -> bool:
        return self.shape[0] == self.shape[1] and self.rows == self.transpose().rows

    def det(self) -> int:
        """Determinant by unimodular row reduction to upper triangular form.

        Rows with a zero in the pivot column are never touched, so banded
        matrices such as plumbing chains stay cheap.
        """
        n = self.n
        a = [list(r) for r in self.rows]
        sign = 1
        for k in range(n):
            rows = [i for i in range(k, n) if a[i][k]]
            if not rows:
                return 0
            while len(rows) > 1:
                piv = min(rows, key=lambda i: abs(a[i][k]))
                for i in rows:
                    if i != piv:
                        f = a[i][k] // a[piv][k]
                        ri, rp = a[i], a[piv]
                        for j in range(k, n):
                            if rp[j]:
                                ri[j] -= f * rp[j]
                rows = [i for i in rows if a[i][k]]
            if rows[0] != k:
                a[k], a[rows[0]] = a[rows[0]], a[k]
                sign = -sign
        out = sign
        for k in range(n):
            out *= a[k][k]
        return out

    def to_text(self) -> str:
        lines = [str(self.n)] + [" ".join(str(x) for x in r) for r in self.rows]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> IntMatrix:
        """Parse ``n`` followed by n rows of n whitespace-separated integers."""
        lines = [ln.split() for ln in text.splitlines() if ln.strip()]
        if not lines:
            raise InputError("empty matrix file")
        try:
            n = int(lines[0][0])
            rows = [[int(x) for x in ln] for ln in lines[1:]]
        except ValueError as exc:
            raise InputError(f"malformed matrix file: {exc}") from None
        if len(lines[0]) != 1 or n < 0 or len(rows) != n or any(len(r) != n for r in rows):
            raise InputError(f"matrix file does not hold {n} rows of {n} integers")
        return cls.of(rows)


@dataclass(frozen=True)
class AbelianGroup:
    """Z^free_rank plus cyclic factors d1 | d2 | ... (each >= 2)."""

    free_rank: int = 0
    invariant_factors: tuple[int, ...] = ()

    def __post_init__(self):
        fs = tuple(self.invariant_factors)
        if self.free_rank < 0 or any(d < 2 for d in fs):
            raise InputError(f"bad group data {self.free_rank}, {fs}")
        if any(b % a for a, b in zip(fs, fs[1:])):
            raise InputError(f"invariant factors {fs} do not form a divisibility chain")
        object.__setattr__(self, "invariant_factors", fs)

    @classmethod
    def from_cyclic(cls, orders: Iterable[int]) -> AbelianGroup:
        """Invariant-factor form of the direct sum of Z/n over ``orders`` (0 means Z)."""
        orders = list(orders)
        return cokernel(IntMatrix.diagonal(orders))

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.invariant_factors

    @property
    def order(self) -> int:
        if self.free_rank:
            return 0
        out = 1
        for d in self.invariant_factors:
            out *= d
        return out

    def __str__(self) -> str:
        parts = ["Z"] * self.free_rank + [f"Z/{d}" for d in self.invariant_factors]
        return " + ".join(parts) if parts else "0"

    def to_json(self) -> dict:
        return {"free_rank": str(self.free_rank), "invariant_factors": [str(d) for d in self.invariant_factors]}


def smith_normal_form(m: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return ``(U, D, V)`` with ``U @ m @ V == D``, U and V unimodular.

    The pivot is always the nonzero entry of least absolute value in the
    remaining block, first in row-major order.  The diagonal of D is
    non-negative with d1 | d2 | ..., zeros last.
    """
    rows, cols = m.shape
    a = [list(r) for r in m.rows]
    u = [[int(i == j) for j in range(rows)] for i in range(rows)]
    v = [[int(i == j) for j in range(cols)] for i in range(cols)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def add_row(dst, src, k):
        # row dst += k * row src
        a[dst] = [x + k * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + k * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, k):
        for r in a:
            r[dst] += k * r[src]
        for r in v:
            r[dst] += k * r[src]

    for t in range(min(rows, cols)):
        while True:
            best = None
            for i in range(t, rows):
                for j in range(t, cols):
                    x = abs(a[i][j])
                    if x and (best is None or x < best[0]):
                        best = (x, i, j)
            if best is None:
                break
            _, i, j = best
            swap_rows(t, i)
            swap_cols(t, j)
            p = a[t][t]
            dirty = False
            for i in range(t + 1, rows):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // p))
                    dirty = dirty or a[i][t] != 0
            for j in range(t + 1, cols):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // p))
                    dirty = dirty or a[t][j] != 0
            if dirty:
                continue
            bad = next(
                ((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols) if a[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if t < rows and t < cols and a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]

    U, D, V = IntMatrix.of(u), IntMatrix.of(a), IntMatrix.of(v)
    return U, D, V


def check_snf(m: IntMatrix, U: IntMatrix, D: IntMatrix, V: IntMatrix) -> None:
    """Raise :class:`InvariantError` unless (U, D, V) is a valid decomposition of m."""
    if U @ m @ V != D:
        raise InvariantError("U*M*V != D")
    if abs(U.det()) != 1 or abs(V.det()) != 1:
        raise InvariantError("transform is not unimodular")
    rows, cols = D.shape
    diag = [D[i, i] for i in range(min(rows, cols))]
    if any(D[i, j] for i in range(rows) for j in range(cols) if i != j):
        raise InvariantError("D is not diagonal")
    if any(d < 0 for d in diag):
        raise InvariantError("negative diagonal entry")
    for x, y in zip(diag, diag[1:]):
        if (x == 0 and y != 0) or (x and y % x):
            raise InvariantError(f"diagonal {diag} breaks the divisibility chain")


def cokernel(m: IntMatrix) -> AbelianGroup:
    rows, cols = m.shape
    _, D, _ = smith_normal_form(m)
    diag = [D[i, i] for i in range(min(rows, cols))]
    free = rows - sum(1 for d in diag if d)
    return AbelianGroup(free, tuple(d for d in diag if d > 1))


def h1_of_surgery(m: IntMatrix) -> AbelianGroup:
    """First homology of the 3-manifold given by surgery on a framed link with linking matrix m."""
    if not m.is_symmetric():
        raise InputError("linking matrix must be symmetric")
    return cokernel(m)


def is_homology_sphere(m: IntMatrix) -> bool:
    if not m.is_symmetric():
        raise InputError("linking matrix must be symmetric")
    answer = abs(m.det()) == 1
    if answer != h1_of_surgery(m).is_trivial:
        raise InvariantError("determinant and Smith form disagree")
    return answer


def chain_linking_matrix(coeffs: Sequence[int]) -> IntMatrix:
    """Linear plumbing with framings ``coeffs``; presents L(p,q) when -p/q = [coeffs]."""
    cf_eval(coeffs)
    n = len(coeffs)
    return IntMatrix.of(
        [[coeffs[i] if i == j else int(abs(i - j) == 1) for j in range(n)] for i in range(n)]
    )


def star_linking_matrix(e0: int, legs: Sequence[Sequence[int]]) -> IntMatrix:
    """Star-shaped plumbing: central vertex e0 joined to the first vertex of each leg."""
    if not legs:
        raise InputError("star plumbing needs at least one leg")
    n = 1 + sum(len(leg) for leg in legs)
    a = [[0] * n for _ in range(n)]
    a[0][0] = e0
    k = 1
    for leg in legs:
        block = chain_linking_matrix(leg)
        for i in range(len(leg)):
            for j in range(len(leg)):
                a[k + i][k + j] = block[i, j]
        a[0][k] = a[k][0] = 1
        k += len(leg)
    return IntMatrix.of(a)


E8_LEGS = ([-2], [-2, -2], [-2, -2, -2, -2])


def e8_matrix() -> IntMatrix:
    return star_linking_matrix(-2, E8_LEGS)


def hantzsche_double_test(g: AbelianGroup) -> AbelianGroup | None:
    """Return G when the torsion group is G + G, else None."""
    if g.free_rank:
        raise InputError("the doubling test applies to torsion groups; strip the free part first")
    fs = g.invariant_factors
    if len(fs) % 2 or any(fs[i] != fs[i + 1] for i in range(0, len(fs), 2)):
        return None
    return AbelianGroup(0, fs[::2])


def primary_parts(g: AbelianGroup) -> list[int]:
    """Sorted prime-power orders of the cyclic primary summands of the torsion."""
    out = []
    for d in g.invariant_factors:
        n, f = d, 2
        while f * f <= n:
            if n % f == 0:
                pk = 1
                while n % f == 0:
                    n //= f
                    pk *= f
                out.append(pk)
            f += 1
        if n > 1:
            out.append(n)
    return sorted(out)


def h1_of_lens_sum(s: ConnectedSum) -> AbelianGroup:
    return AbelianGroup.from_cyclic(lens.p for lens in s)
