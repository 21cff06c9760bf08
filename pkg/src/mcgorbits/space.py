"""State space for index-n fiberwise coverings of the unit tangent bundle.

A covering of index n along the fibers over a genus-g surface is recorded
by the residues a 1-cochain takes on the 2g standard loops, giving a point
of (Z/nZ)^(2g) with coordinates ordered (alpha_1, beta_1, ..., alpha_g,
beta_g).  Mapping classes act on this space by invertible affine maps over
Z/nZ; this module holds the space parameters, its elements, affine maps,
and the mixed-radix indexing used by the exhaustive search code.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import sympy


class DimensionError(ValueError):
    """Vector or matrix size does not match the 2g coordinates."""


@dataclass(frozen=True)
class SpaceParams:
    """Genus g >= 2, covering index n >= 1.

    Coverings along the fibers exist only when n divides 2g - 2; by
    default that is enforced.  The affine twist action itself is defined
    for every n, so `strict_euler=False` permits experiments outside that
    regime (no classification claim is attached to them).
    """

    g: int
    n: int
    strict_euler: bool = True

    def __post_init__(self):
        if not (isinstance(self.g, int) and self.g >= 2):
            raise ValueError(f"genus must be an integer >= 2, got {self.g!r}")
        if not (isinstance(self.n, int) and self.n >= 1):
            raise ValueError(f"index must be an integer >= 1, got {self.n!r}")
        if self.strict_euler and (2 * self.g - 2) % self.n != 0:
            raise ValueError(
                f"n={self.n} does not divide 2g-2={2 * self.g - 2}; "
                "pass strict_euler=False to explore outside that regime")

    @property
    def dim(self) -> int:
        return 2 * self.g

    @property
    def size(self) -> int:
        """Number of states, n^(2g)."""
        return self.n ** (2 * self.g)


@dataclass(frozen=True)
class GnElement:
    """A state: 2g residues in [0, n), ordered alpha_1, beta_1, ..."""

    params: SpaceParams
    coords: tuple

    def __post_init__(self):
        if len(self.coords) != self.params.dim:
            raise DimensionError(
                f"expected {self.params.dim} coordinates, got {len(self.coords)}")

    def alpha(self, i: int) -> int:
        """alpha_i, 1-based block index."""
        return self.coords[2 * i - 2]

    def beta(self, i: int) -> int:
        return self.coords[2 * i - 1]

    def block(self, i: int) -> tuple:
        """(alpha_i, beta_i), 1-based."""
        return self.coords[2 * i - 2], self.coords[2 * i - 1]

    def __str__(self):
        return ",".join(str(c) for c in self.coords)


def make_element(params: SpaceParams, values) -> GnElement:
    """Build a state from any integer vector, reducing mod n."""
    values = list(values)
    if len(values) != params.dim:
        raise DimensionError(
            f"expected {params.dim} values for g={params.g}, got {len(values)}")
    return GnElement(params, tuple(int(v) % params.n for v in values))


def zero_element(params: SpaceParams) -> GnElement:
    return GnElement(params, (0,) * params.dim)


def parse_element(params: SpaceParams, text: str) -> GnElement:
    """Parse the comma-separated text form, e.g. "0,1,0,1"."""
    try:
        values = [int(piece) for piece in text.split(",")]
    except ValueError as exc:
        raise ValueError(f"bad element {text!r}: {exc}") from None
    return make_element(params, values)


@dataclass(frozen=True)
class AffineMap:
    """x -> Lx + t over Z/nZ, with L an invertible 2g x 2g matrix.

    Entries are kept as canonical residues; linear and translation are
    read-only numpy arrays.  Invertibility is not checked on construction
    (products of generator maps are invertible by design); `inverse`
    raises on a singular linear part.
    """

    n: int
    linear: np.ndarray = field(compare=False)
    translation: np.ndarray = field(compare=False)

    def __post_init__(self):
        lin = np.asarray(self.linear, dtype=np.int64) % self.n
        tra = np.asarray(self.translation, dtype=np.int64) % self.n
        if lin.ndim != 2 or lin.shape[0] != lin.shape[1]:
            raise DimensionError(f"linear part must be square, got {lin.shape}")
        if tra.shape != (lin.shape[0],):
            raise DimensionError(
                f"translation shape {tra.shape} does not match linear {lin.shape}")
        lin.setflags(write=False)
        tra.setflags(write=False)
        object.__setattr__(self, "linear", lin)
        object.__setattr__(self, "translation", tra)

    @property
    def dim(self) -> int:
        return self.linear.shape[0]

    @classmethod
    def identity(cls, params: SpaceParams) -> "AffineMap":
        return cls(params.n, np.eye(params.dim, dtype=np.int64),
                   np.zeros(params.dim, dtype=np.int64))

    def __eq__(self, other):
        if not isinstance(other, AffineMap):
            return NotImplemented
        return (self.n == other.n
                and np.array_equal(self.linear, other.linear)
                and np.array_equal(self.translation, other.translation))

    def __hash__(self):
        return hash((self.n, self.linear.tobytes(), self.translation.tobytes()))

    def is_identity(self) -> bool:
        return (not self.translation.any()
                and np.array_equal(self.linear, np.eye(self.dim, dtype=np.int64) % self.n))

    def inverse(self) -> "AffineMap":
        """Two-sided affine inverse; raises ValueError if L is singular mod n."""
        try:
            linv = sympy.Matrix(self.linear.tolist()).inv_mod(self.n)
        except (ValueError, sympy.matrices.exceptions.NonInvertibleMatrixError) as exc:
            raise ValueError(f"linear part not invertible mod {self.n}: {exc}") from None
        linv = np.array(linv.tolist(), dtype=np.int64) % self.n
        return AffineMap(self.n, linv, (-linv @ self.translation) % self.n)

    def __pow__(self, k: int) -> "AffineMap":
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        result = AffineMap(self.n, np.eye(self.dim, dtype=np.int64),
                           np.zeros(self.dim, dtype=np.int64))
        while k:
            if k & 1:
                result = compose(result, base)
            base = compose(base, base)
            k >>= 1
        return result


def apply_affine(m: AffineMap, x: GnElement) -> GnElement:
    """Return m(x) = Lx + t reduced mod n."""
    if m.dim != x.params.dim or m.n != x.params.n:
        raise DimensionError(
            f"map on (Z/{m.n})^{m.dim} applied to element of (Z/{x.params.n})^{x.params.dim}")
    coords = (m.linear @ np.array(x.coords, dtype=np.int64) + m.translation) % m.n
    return GnElement(x.params, tuple(int(c) for c in coords))


def compose(m1: AffineMap, m2: AffineMap) -> AffineMap:
    """m1 after m2: apply_affine(compose(m1, m2), x) == m1(m2(x))."""
    if m1.dim != m2.dim or m1.n != m2.n:
        raise DimensionError("cannot compose maps of different dimensions or moduli")
    return AffineMap(m1.n, (m1.linear @ m2.linear) % m1.n,
                     (m1.linear @ m2.translation + m1.translation) % m1.n)


def linear_translation_split(m: AffineMap) -> tuple:
    """(L, t) with t the image of the zero element."""
    return m.linear.copy(), m.translation.copy()


def encode(x: GnElement) -> int:
    """Mixed-radix index: sum of coords[j] * n^j; bijective with states."""
    n = x.params.n
    index = 0
    for c in reversed(x.coords):
        index = index * n + c
    return index


def decode(index: int, params: SpaceParams) -> GnElement:
    if not 0 <= index < params.size:
        raise ValueError(f"index {index} out of range [0, {params.size})")
    coords = []
    for _ in range(params.dim):
        index, c = divmod(index, params.n)
        coords.append(c)
    return GnElement(params, tuple(coords))


def decode_array(indices, params: SpaceParams) -> np.ndarray:
    """Vectorized decode: (N,) index array -> (N, 2g) coordinate matrix."""
    idx = np.asarray(indices, dtype=np.int64)
    out = np.empty((idx.shape[0], params.dim), dtype=np.int64)
    for j in range(params.dim):
        out[:, j] = idx % params.n
        idx = idx // params.n
    return out


def encode_array(coords, params: SpaceParams) -> np.ndarray:
    """Vectorized encode: (N, 2g) coordinate matrix -> (N,) index array."""
    mat = np.asarray(coords, dtype=np.int64) % params.n
    idx = np.zeros(mat.shape[0], dtype=np.int64)
    for j in reversed(range(params.dim)):
        idx = idx * params.n + mat[:, j]
    return idx


def symplectic_form(params: SpaceParams) -> np.ndarray:
    """Standard symplectic matrix J in the (alpha_1, beta_1, ...) ordering."""
    J = np.zeros((params.dim, params.dim), dtype=np.int64)
    for i in range(params.g):
        J[2 * i, 2 * i + 1] = 1
        J[2 * i + 1, 2 * i] = -1
    return J % params.n


def is_symplectic(matrix: np.ndarray, params: SpaceParams) -> bool:
    """Does L^T J L = J hold mod n?"""
    J = symplectic_form(params)
    L = np.asarray(matrix, dtype=np.int64)
    return np.array_equal((L.T @ J @ L) % params.n, J)
