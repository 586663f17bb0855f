"""Small dense matrices over an exact field (CycNumber, QTScalar or Fraction)."""

from __future__ import annotations


def _zero(x) -> bool:
    if hasattr(x, "is_zero"):
        return x.is_zero()
    return x == 0


class Matrix:
    __slots__ = ("rows", "nrows", "ncols", "zero", "one")

    def __init__(self, rows, zero, one):
        self.rows = [list(r) for r in rows]
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else 0
        self.zero = zero
        self.one = one

    @classmethod
    def identity(cls, n, zero, one):
        return cls([[one if i == j else zero for j in range(n)] for i in range(n)], zero, one)

    @classmethod
    def diagonal(cls, entries, zero, one):
        n = len(entries)
        return cls([[entries[i] if i == j else zero for j in range(n)] for i in range(n)], zero, one)

    @classmethod
    def zeros(cls, n, m, zero, one):
        return cls([[zero] * m for _ in range(n)], zero, one)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def copy(self):
        return Matrix(self.rows, self.zero, self.one)

    def __add__(self, other):
        return Matrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.zero, self.one)

    def __sub__(self, other):
        return Matrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.zero, self.one)

    def scale(self, c):
        return Matrix([[a * c for a in r] for r in self.rows], self.zero, self.one)

    def __mul__(self, other):
        if isinstance(other, Matrix):
            if self.ncols != other.nrows:
                raise ValueError("shape mismatch")
            cols = other.ncols
            nz_other = [[(j, x) for j, x in enumerate(r) if not _zero(x)] for r in other.rows]
            out = []
            for r in self.rows:
                acc = [None] * cols
                for k, a in enumerate(r):
                    if _zero(a):
                        continue
                    for j, x in nz_other[k]:
                        p = a * x
                        acc[j] = p if acc[j] is None else acc[j] + p
                out.append([self.zero if v is None else v for v in acc])
            return Matrix(out, self.zero, self.one)
        return self.scale(other)

    def apply(self, vec):
        out = []
        for r in self.rows:
            acc = self.zero
            for a, x in zip(r, vec):
                if not _zero(a) and not _zero(x):
                    acc = acc + a * x
            out.append(acc)
        return out

    def transpose(self):
        return Matrix([list(c) for c in zip(*self.rows)], self.zero, self.one)

    def map(self, fn):
        return Matrix([[fn(a) for a in r] for r in self.rows], self.zero, self.one)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return all(_zero(a - b) for r, s in zip(self.rows, other.rows) for a, b in zip(r, s))

    def is_zero(self):
        return all(_zero(a) for r in self.rows for a in r)

    def is_scalar(self, c) -> bool:
        return all(_zero(a - (c if i == j else self.zero)) for i, r in enumerate(self.rows) for j, a in enumerate(r))

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = Matrix.identity(self.nrows, self.zero, self.one)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def _echelon(self, augment=None):
        """Row reduce; returns (reduced rows, pivot columns, reduced augment)."""
        rows = [list(r) for r in self.rows]
        aug = [list(r) for r in augment.rows] if augment is not None else None
        pivots = []
        r = 0
        for c in range(self.ncols):
            piv = next((i for i in range(r, self.nrows) if not _zero(rows[i][c])), None)
            if piv is None:
                continue
            rows[r], rows[piv] = rows[piv], rows[r]
            if aug is not None:
                aug[r], aug[piv] = aug[piv], aug[r]
            inv = self.one / rows[r][c]
            rows[r] = [x * inv for x in rows[r]]
            if aug is not None:
                aug[r] = [x * inv for x in aug[r]]
            for i in range(self.nrows):
                if i != r and not _zero(rows[i][c]):
                    f = rows[i][c]
                    rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
                    if aug is not None:
                        aug[i] = [a - f * b for a, b in zip(aug[i], aug[r])]
            pivots.append(c)
            r += 1
            if r == self.nrows:
                break
        return rows, pivots, aug

    def rank(self) -> int:
        return len(self._echelon()[1])

    def inverse(self):
        if self.nrows != self.ncols:
            raise ValueError("not square")
        rows, pivots, aug = self._echelon(Matrix.identity(self.nrows, self.zero, self.one))
        if len(pivots) != self.nrows:
            raise ZeroDivisionError("singular matrix")
        return Matrix(aug, self.zero, self.one)

    def nullspace(self):
        rows, pivots, _ = self._echelon()
        free = [c for c in range(self.ncols) if c not in pivots]
        basis = []
        for f in free:
            v = [self.zero] * self.ncols
            v[f] = self.one
            for i, p in enumerate(pivots):
                v[p] = -rows[i][f]
            basis.append(v)
        return basis

    def __repr__(self):
        return "Matrix[" + "; ".join(", ".join(str(a) for a in r) for r in self.rows) + "]"


def span_rank(vectors, zero, one) -> int:
    if not vectors:
        return 0
    return Matrix(vectors, zero, one).rank()
