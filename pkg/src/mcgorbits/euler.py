"""Circle lifts and the integer cocycle of a hyperbolic surface group.

A genus-g surface group is realized as a cocompact lattice in
PSL(2, R) by the side pairings of the regular 4g-gon (interior angle
pi/2g), with the boundary labeled a_1 b_1 a_1^-1 b_1^-1 ... so the
standard single-relator presentation holds.

The group acts on the circle of lines through the origin, parameterized
by the angle theta in R/(pi Z); lifts to the line commute with the deck
shift delta: theta -> theta + pi.  Every nontrivial element is
hyperbolic and has a distinguished lift fixing the lifts of its fixed
angles; the failure of this section to be multiplicative is an integer:

    lift0(uv) = delta^c(u, v) . lift0(u) lift0(v)

c takes only the values -1, 0, +1, vanishes when the axes of u and v
cross, and summed along the relator yields the Euler number 2g - 2 of
the unit tangent bundle (after the orientation of the realization is
normalized to make that sign positive).
"""

from __future__ import annotations

import cmath
import math
import re
from dataclasses import dataclass

import numpy as np

PI = math.pi


class ConstructionError(RuntimeError):
    """The polygon realization failed its own verification."""


class IllConditionedError(ValueError):
    """Lift or cocycle evaluation too close to a degenerate configuration."""


# --- plane hyperbolic geometry helpers (upper half-plane, SL(2,R)) ----------

def _mobius(m: np.ndarray, z: complex) -> complex:
    return (m[0, 0] * z + m[0, 1]) / (m[1, 0] * z + m[1, 1])


def _normalized(m: np.ndarray) -> np.ndarray:
    det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
    if det <= 0:
        raise ValueError(f"matrix has nonpositive determinant {det}")
    return m / math.sqrt(det)


def _align(p: complex, q: complex) -> np.ndarray:
    """SL(2,R) map sending p to i and q onto the ray above i."""
    y = p.imag
    move = np.array([[1 / math.sqrt(y), -p.real / math.sqrt(y)],
                     [0.0, math.sqrt(y)]])
    q1 = _mobius(move, q)
    zeta = (q1 - 1j) / (q1 + 1j)
    phi = -cmath.phase(zeta)
    half = phi / 2
    spin = np.array([[math.cos(half), math.sin(half)],
                     [-math.sin(half), math.cos(half)]])
    return spin @ move


# --- the circle of lines and canonical lifts --------------------------------

def circle_angle(m: np.ndarray, t: float) -> float:
    """Image of the line at angle t under m, as an angle in [0, pi)."""
    x = m[0, 0] * math.cos(t) + m[0, 1] * math.sin(t)
    y = m[1, 0] * math.cos(t) + m[1, 1] * math.sin(t)
    return math.atan2(y, x) % PI


def fixed_angles(m: np.ndarray):
    """(attracting, repelling) fixed angles in [0, pi) of a hyperbolic matrix."""
    tr = m[0, 0] + m[1, 1]
    disc = tr * tr - 4
    if disc <= 0:
        raise IllConditionedError(f"matrix with trace {tr} is not hyperbolic")
    root = math.sqrt(disc)
    lam1 = (tr + root) / 2
    lam2 = (tr - root) / 2
    if abs(lam1) < abs(lam2):
        lam1, lam2 = lam2, lam1

    def eigvec_angle(lam):
        v1 = (m[0, 1], lam - m[0, 0])
        v2 = (lam - m[1, 1], m[1, 0])
        v = v1 if math.hypot(*v1) >= math.hypot(*v2) else v2
        return math.atan2(v[1], v[0]) % PI

    return eigvec_angle(lam1), eigvec_angle(lam2)


def _is_projective_identity(m: np.ndarray, tol: float) -> bool:
    for sign in (1.0, -1.0):
        if np.max(np.abs(m - sign * np.eye(2))) < tol:
            return True
    return False


@dataclass(frozen=True)
class LiftedCircleMap:
    """A lift to the line of the projective action of `matrix`.

    `deck` counts deck shifts: this lift equals the canonical
    fixed-point lift plus deck * pi.  For (projectively) identity
    matrices the canonical lift is the identity of the line.
    """

    matrix: np.ndarray
    deck: int = 0
    tolerance: float = 1e-9

    @property
    def offset(self) -> float:
        return self.deck * PI

    def is_trivial(self) -> bool:
        return _is_projective_identity(self.matrix, self.tolerance)

    def __call__(self, t: float) -> float:
        if self.is_trivial():
            return t + self.deck * PI
        m = self.matrix
        plus, minus = fixed_angles(m)
        x = (t - plus) % PI
        k = round((t - plus - x) / PI)
        raw = (circle_angle(m, t) - plus) % PI
        xm = (minus - plus) % PI
        # reject branch flips near the fixed angles: the canonical lift
        # maps [0, xm] into itself and [xm, pi] into itself
        if x <= xm and raw > (xm + PI) / 2:
            raw -= PI
        elif x > xm and raw < xm / 2:
            raw += PI
        return plus + k * PI + raw + self.deck * PI

    def inverse(self) -> "LiftedCircleMap":
        m = self.matrix
        adj = np.array([[m[1, 1], -m[0, 1]], [-m[1, 0], m[0, 0]]])
        return LiftedCircleMap(_normalized(adj), -self.deck, self.tolerance)

    def translation_number(self, iterations: int = 64, start: float = 0.383) -> float:
        """Poincare average with one Richardson step; kpi for deck shifts."""
        t = start
        for _ in range(iterations):
            t = self(t)
        half = (t - start) / iterations
        t2 = t
        for _ in range(iterations):
            t2 = self(t2)
        full = (t2 - start) / (2 * iterations)
        return 2 * full - half


SAMPLE_ANGLES = (0.137, 0.731, 1.329, 1.923, 2.517, 3.017)


def lift_cocycle(m1: np.ndarray, m2: np.ndarray, tolerance: float = 1e-6):
    """(c, residual): the deck power relating lift0(m1 m2) to lift0(m1) lift0(m2)."""
    f1 = LiftedCircleMap(m1)
    f2 = LiftedCircleMap(m2)
    f12 = LiftedCircleMap(_normalized(m1 @ m2))
    values = []
    for t in SAMPLE_ANGLES:
        values.append((f12(t) - f1(f2(t))) / PI)
    ints = {round(v) for v in values}
    residual = max(abs(v - round(v)) for v in values)
    if len(ints) != 1 or residual > tolerance:
        raise IllConditionedError(
            f"cocycle samples disagree: {values} (residual {residual:.3g})")
    return ints.pop(), residual


# --- words in the surface group ----------------------------------------------

_SURFACE_TOKEN = re.compile(r"([ab])([0-9]+)(?:\^(-?[0-9]+))?$")


def parse_surface_word(text: str):
    """Tokens like "a1 b2^-1" -> tuple of (name, exponent)."""
    tokens = []
    for piece in text.split():
        m = _SURFACE_TOKEN.fullmatch(piece)
        if m is None:
            raise ValueError(f"bad surface-group token {piece!r}")
        exp = 1 if m.group(3) is None else int(m.group(3))
        if exp == 0:
            raise ValueError(f"zero exponent in {piece!r}")
        tokens.append((m.group(1) + m.group(2), exp))
    return tuple(tokens)


@dataclass(frozen=True)
class CocycleValue:
    value: int
    residual: float


class FuchsianGroup:
    """Marked genus-g surface group realized in SL(2,R).

    `generators` maps names "a1".."ag", "b1".."bg" to matrices; the
    relator [a1,b1]...[ag,bg] holds projectively within `tolerance`.
    """

    def __init__(self, genus: int, generators: dict, tolerance: float = 1e-6):
        self.genus = genus
        self.generators = dict(generators)
        self.tolerance = tolerance
        self._inverses = {name: _normalized(np.array(
            [[m[1, 1], -m[0, 1]], [-m[1, 0], m[0, 0]]]))
            for name, m in self.generators.items()}

    def generator(self, name: str, exponent: int = 1) -> np.ndarray:
        if name not in self.generators:
            raise KeyError(f"unknown generator {name!r} for genus {self.genus}")
        base = self.generators[name] if exponent > 0 else self._inverses[name]
        m = np.eye(2)
        for _ in range(abs(exponent)):
            m = _normalized(m @ base)
        return m

    def evaluate(self, word) -> np.ndarray:
        """Matrix of a word, given as text or (name, exponent) tokens."""
        if isinstance(word, str):
            word = parse_surface_word(word)
        m = np.eye(2)
        for name, exp in word:
            m = _normalized(m @ self.generator(name, exp))
        return m

    def relator_letters(self):
        """The relator a1 b1 a1^-1 b1^-1 ... as single-letter tokens."""
        letters = []
        for i in range(1, self.genus + 1):
            letters += [(f"a{i}", 1), (f"b{i}", 1), (f"a{i}", -1), (f"b{i}", -1)]
        return tuple(letters)

    def relator_residual(self) -> float:
        m = self.evaluate(self.relator_letters())
        return min(float(np.max(np.abs(m - np.eye(2)))),
                   float(np.max(np.abs(m + np.eye(2)))))


def sigma0_lift(group: FuchsianGroup, word) -> LiftedCircleMap:
    """The canonical (fixed-point) lift of a word's circle action."""
    m = group.evaluate(word)
    if _is_projective_identity(m, group.tolerance):
        return LiftedCircleMap(m, 0, group.tolerance)
    if abs(m[0, 0] + m[1, 1]) <= 2:
        raise IllConditionedError(
            f"word evaluates to a non-hyperbolic matrix (trace {m[0,0]+m[1,1]:.6f})")
    return LiftedCircleMap(m, 0, group.tolerance)


def cocycle(group: FuchsianGroup, w1, w2) -> CocycleValue:
    """The integer c with lift0(w1 w2) = delta^c lift0(w1) lift0(w2)."""
    m1 = group.evaluate(w1)
    m2 = group.evaluate(w2)
    for m, w in ((m1, w1), (m2, w2), (_normalized(m1 @ m2), None)):
        if not _is_projective_identity(m, group.tolerance) \
                and abs(m[0, 0] + m[1, 1]) <= 2:
            raise IllConditionedError(
                f"non-hyperbolic factor in cocycle evaluation ({w!r})")
    value, residual = lift_cocycle(m1, m2, group.tolerance)
    if value not in (-1, 0, 1):
        raise IllConditionedError(f"cocycle value {value} outside -1..1")
    return CocycleValue(value, residual)


def axes_cross(group: FuchsianGroup, w1, w2) -> bool:
    """Do the axes of the two (hyperbolic) words cross transversely?"""
    p1, q1 = fixed_angles(group.evaluate(w1))
    p2, q2 = fixed_angles(group.evaluate(w2))
    span = (q1 - p1) % PI
    a = (p2 - p1) % PI
    b = (q2 - p1) % PI
    eps = 1e-12
    if min(a, b, abs(a - span), abs(b - span)) < eps:
        raise IllConditionedError("axes share an endpoint within tolerance")
    return (a < span) != (b < span)


def _cocycle_sum_along(group: FuchsianGroup, letters) -> int:
    """Sum of c(prefix, next) telescoped along a word multiplying to 1."""
    total = 0
    prefix = group.evaluate(letters[:1])
    for name, exp in letters[1:]:
        step = group.generator(name, exp)
        value, _ = lift_cocycle(prefix, step, group.tolerance)
        total += value
        prefix = _normalized(prefix @ step)
    if not _is_projective_identity(prefix, group.tolerance):
        raise ConstructionError("relator does not multiply to the identity")
    return total


def relator_euler_number(group: FuchsianGroup) -> int:
    """Accumulated cocycle along the relator: sum of c(prefix, next letter).

    The cochain-extension rule nu(uv) = nu(u) + nu(v) - c(u, v) telescoped
    over the relator accumulates exactly this sum, so a cochain on the
    generators extends consistently mod n iff n divides it.  With the
    normalized orientation it equals +(2g - 2).
    """
    return _cocycle_sum_along(group, group.relator_letters())


def nu_consistency(group: FuchsianGroup, x, params=None) -> dict:
    """Extend the cochain given by x along the relator; must close to 0 mod n.

    x is a GnElement (alpha_i = value on a_i, beta_i = value on b_i).
    The closing defect is the relator Euler number mod n, so the check
    passes exactly when n divides 2g - 2.
    """
    params = x.params if params is None else params
    n = params.n
    if params.g != group.genus:
        raise ValueError(f"element genus {params.g} != group genus {group.genus}")
    values = {}
    for i in range(1, params.g + 1):
        values[f"a{i}"] = x.coords[2 * i - 2]
        values[f"b{i}"] = x.coords[2 * i - 1]
    letters = group.relator_letters()
    name0, exp0 = letters[0]
    acc = exp0 * values[name0]
    prefix = group.generator(name0, exp0)
    total_c = 0
    for name, exp in letters[1:]:
        step = group.generator(name, exp)
        c, _ = lift_cocycle(prefix, step, group.tolerance)
        acc = (acc + exp * values[name] - c) % n
        total_c += c
        prefix = _normalized(prefix @ step)
    return {
        "relator_cochain_value": acc % n,
        "cocycle_sum": total_c,
        "passes": acc % n == 0,
    }


# --- the polygon realization --------------------------------------------------

def _polygon_generators(genus: int) -> dict:
    """Side pairings of the regular 4g-gon with commutator edge word."""
    N = 4 * genus
    cosh_r = 1 / math.tan(PI / N) ** 2
    rho = math.sqrt((cosh_r - 1) / (cosh_r + 1))
    disk = [rho * cmath.exp(2j * PI * k / N) for k in range(N)]
    verts = [1j * (1 + v) / (1 - v) for v in disk]  # to the half-plane

    def side(k):
        return verts[k % N], verts[(k + 1) % N]

    # Each side pairing carries its source side onto its partner with the
    # endpoints reversed (the gluing reverses the boundary orientation).
    # Reading the single vertex cycle of this gluing gives the relation
    # [b_g^-1, a_g] ... [b_1^-1, a_1] = 1 for the raw pairing maps, so
    # taking the b generators as the inverse pairings yields the marked
    # presentation [a_1, b_1] ... [a_g, b_g] = 1.
    def pairing(k, j):
        zk0, zk1 = side(k)
        zj0, zj1 = side(j)
        return _normalized(np.linalg.inv(_align(zj1, zj0)) @ _align(zk0, zk1))

    gens = {}
    for m in range(genus):
        gens[f"a{m + 1}"] = pairing(4 * m + 2, 4 * m)
        gens[f"b{m + 1}"] = pairing(4 * m + 1, 4 * m + 3)
    return gens


def _reflect(group: FuchsianGroup) -> FuchsianGroup:
    """Conjugate the realization by the line reflection theta -> -theta."""
    r = np.array([[1.0, 0.0], [0.0, -1.0]])
    flipped = {name: _normalized(r @ m @ r) for name, m in group.generators.items()}
    return FuchsianGroup(group.genus, flipped, group.tolerance)


def standard_group(genus: int, tolerance: float = 1e-6,
                   word_check_length: int = 3) -> FuchsianGroup:
    """Regular-4g-gon realization, orientation-normalized.

    Verifies the relator within `tolerance`, checks that all short
    reduced words are hyperbolic, and flips the orientation if needed so
    that the relator Euler number is +(2g - 2).
    """
    if genus < 2:
        raise ValueError(f"genus must be >= 2, got {genus}")
    group = FuchsianGroup(genus, _polygon_generators(genus), tolerance)
    residual = group.relator_residual()
    if residual > tolerance:
        raise ConstructionError(
            f"relator residual {residual:.3g} exceeds tolerance {tolerance:.3g}")
    _check_short_words_hyperbolic(group, word_check_length)
    e = relator_euler_number(group)
    if e == -(2 * genus - 2):
        group = _reflect(group)
        e = relator_euler_number(group)
    if e != 2 * genus - 2:
        raise ConstructionError(
            f"relator Euler number {e}, expected +-{2 * genus - 2}")
    return group


def _check_short_words_hyperbolic(group: FuchsianGroup, max_length: int):
    """Every nontrivial reduced word up to max_length must be hyperbolic."""
    letters = []
    for name in group.generators:
        letters.append((name, 1))
        letters.append((name, -1))

    def extend(word, depth):
        for letter in letters:
            if word and letter == (word[-1][0], -word[-1][1]):
                continue  # free reduction
            new = word + [letter]
            m = group.evaluate(new)
            if abs(m[0, 0] + m[1, 1]) <= 2 + 1e-9:
                raise ConstructionError(
                    f"short word {new} is not hyperbolic "
                    f"(trace {m[0, 0] + m[1, 1]:.6f}); not a discrete realization")
            if depth + 1 < max_length:
                extend(new, depth + 1)

    extend([], 0)


def conjugated_generator_word(i: int):
    """b_i a_i b_i^-1: the handle loop pushed to the pants boundary.

    This is the conjugate for which the separating-curve identity
    c_i = a_i (b_{i+1} a_{i+1} b_{i+1}^-1)^-1 holds; its inverse pairs
    with a_i in the positive-cocycle configuration.
    """
    return ((f"b{i}", 1), (f"a{i}", 1), (f"b{i}", -1))
