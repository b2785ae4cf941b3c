"""Exterior algebra over an oriented Euclidean R^6 in two numeric modes.

Blades are 6-bit masks (bit i encodes the basis covector e^{i+1}); a Form is
a sparse map from blade masks to coefficients, so a general element has 64
coefficients.  Coefficients are `fractions.Fraction` in exact mode or `float`
in float mode.  The mode is fixed per Form, operations never mix modes, and
every operation returns a new Form: instances are immutable and safe to share
across threads.

The metric makes the coordinate blades orthonormal and the orientation is
fixed by the volume blade e123456.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Iterable, Iterator, Mapping, Sequence, Union

DIM = 6
N_BLADES = 1 << DIM
VOLUME_MASK = N_BLADES - 1

EXACT = "exact"
FLOAT = "float"
MODES = (EXACT, FLOAT)

#: Absolute coefficient tolerance used for float-mode comparisons.
DEFAULT_TOL = 1e-12

Scalar = Union[Fraction, float]


class AlgebraError(Exception):
    """Base class for errors raised by the kernel."""


class ModeError(AlgebraError):
    """Mixed exact/float operands, or a coefficient invalid for the mode."""


class DegreeError(AlgebraError):
    """An operation received a form of inadmissible or mixed degree."""


class DecompositionError(AlgebraError):
    """An input lies outside the subspace a decomposition requires."""


# ---------------------------------------------------------------------------
# blade utilities


def blade_degree(mask: int) -> int:
    return mask.bit_count()


def wedge_sign(a: int, b: int) -> int:
    """Sign of e_a ^ e_b relative to the ascending-index blade, 0 if they meet.

    Counts the transpositions needed to merge the two ascending index lists:
    one for every index pair (i in a, j in b) with i > j.
    """
    if a & b:
        return 0
    swaps = 0
    x = a >> 1
    while x:
        swaps += (x & b).bit_count()
        x >>= 1
    return -1 if swaps & 1 else 1


def contraction_sign(i: int, mask: int) -> int:
    """Sign picked up when removing index bit i from a blade: (-1)^(#lower bits)."""
    lower = mask & ((1 << i) - 1)
    return -1 if lower.bit_count() & 1 else 1


def blade_indices(mask: int) -> tuple[int, ...]:
    """0-based index positions present in the blade, ascending."""
    return tuple(i for i in range(DIM) if mask >> i & 1)


def blade_name(mask: int) -> str:
    """Blade label with 1-based digits, e.g. 0b10101 -> 'e135'; 'e' is the scalar."""
    return "e" + "".join(str(i + 1) for i in blade_indices(mask))


def blade_from_name(name: str) -> int:
    if not name.startswith("e"):
        raise ValueError(f"blade name must start with 'e': {name!r}")
    mask = 0
    prev = 0
    for ch in name[1:]:
        if not ch.isdigit():
            raise ValueError(f"blade name has a non-digit index: {name!r}")
        i = int(ch)
        if not 1 <= i <= DIM:
            raise ValueError(f"blade index out of range 1..{DIM}: {name!r}")
        if i <= prev:
            raise ValueError(f"blade indices must be strictly ascending: {name!r}")
        prev = i
        mask |= 1 << (i - 1)
    return mask


def blades_of_degree(k: int) -> tuple[int, ...]:
    """All blade masks of degree k in ascending-combination order."""
    return tuple(
        sum(1 << i for i in combo) for combo in combinations(range(DIM), k)
    )


# ---------------------------------------------------------------------------
# scalars


def coerce_scalar(value, mode: str) -> Scalar:
    """Coerce a coefficient into the mode's scalar type.

    Exact mode accepts ints and Fractions (floats would silently corrupt the
    exact arithmetic, so they are rejected); float mode accepts any real
    number.
    """
    if mode == EXACT:
        if isinstance(value, Fraction):
            return value
        if isinstance(value, int):
            return Fraction(value)
        raise ModeError(f"exact mode cannot accept coefficient {value!r}")
    if mode == FLOAT:
        if isinstance(value, (int, float, Fraction)):
            return float(value)
        raise ModeError(f"float mode cannot accept coefficient {value!r}")
    raise ModeError(f"unknown mode {mode!r}")


def scalar_zero(mode: str) -> Scalar:
    return Fraction(0) if mode == EXACT else 0.0


def _check_same_mode(a: "Form", b: "Form") -> None:
    if a.mode != b.mode:
        raise ModeError(f"cannot combine {a.mode} and {b.mode} forms")


# ---------------------------------------------------------------------------
# Form


class Form:
    """Sparse element of the full exterior algebra Lambda R^6.

    Not hashable; compare with ``==`` (coefficient-wise in exact mode, within
    `DEFAULT_TOL` max-norm in float mode) or `isclose` for an explicit
    tolerance.
    """

    __slots__ = ("mode", "_c")

    def __init__(self, mode: str, coeffs: Mapping[int, object] | None = None):
        if mode not in MODES:
            raise ModeError(f"unknown mode {mode!r}")
        object.__setattr__(self, "mode", mode)
        clean: dict[int, Scalar] = {}
        if coeffs:
            for mask, value in coeffs.items():
                if not 0 <= mask < N_BLADES:
                    raise ValueError(f"blade mask out of range: {mask}")
                v = coerce_scalar(value, mode)
                if v:
                    clean[mask] = v
        object.__setattr__(self, "_c", clean)

    def __setattr__(self, name, value):  # pragma: no cover - defensive
        raise AttributeError("Form is immutable")

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, mode: str) -> "Form":
        return cls(mode)

    @classmethod
    def scalar(cls, value, mode: str) -> "Form":
        return cls(mode, {0: value})

    @classmethod
    def blade(cls, spec: int | str, mode: str, coeff=1) -> "Form":
        mask = blade_from_name(spec) if isinstance(spec, str) else spec
        return cls(mode, {mask: coeff})

    @classmethod
    def vector(cls, components: Sequence, mode: str) -> "Form":
        """Degree-1 form from 6 components (vectors and covectors identified)."""
        if len(components) != DIM:
            raise ValueError(f"expected {DIM} components, got {len(components)}")
        return cls(mode, {1 << i: c for i, c in enumerate(components)})

    # -- inspection ----------------------------------------------------------

    def terms(self) -> Iterator[tuple[int, Scalar]]:
        return iter(sorted(self._c.items()))

    def coeff(self, blade: int | str) -> Scalar:
        mask = blade_from_name(blade) if isinstance(blade, str) else blade
        return self._c.get(mask, scalar_zero(self.mode))

    def components(self) -> list[Scalar]:
        """The 6 coefficients of the degree-1 part."""
        return [self.coeff(1 << i) for i in range(DIM)]

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(sorted({blade_degree(m) for m in self._c}))

    @property
    def degree(self) -> int | None:
        """Degree of a homogeneous form, None for zero, error if mixed."""
        degs = self.degrees
        if not degs:
            return None
        if len(degs) > 1:
            raise DegreeError(f"form has mixed degrees {degs}")
        return degs[0]

    def homogeneous_part(self, k: int) -> "Form":
        return Form(self.mode, {m: v for m, v in self._c.items() if blade_degree(m) == k})

    def is_zero(self, tol: float | None = None) -> bool:
        if self.mode == EXACT:
            return not self._c
        t = DEFAULT_TOL if tol is None else tol
        return all(abs(v) <= t for v in self._c.values())

    def max_norm(self) -> Scalar:
        if not self._c:
            return scalar_zero(self.mode)
        return max(abs(v) for v in self._c.values())

    def to_float(self) -> "Form":
        """Float-mode copy (the exact-to-float direction is the safe one)."""
        if self.mode == FLOAT:
            return self
        return Form(FLOAT, {m: float(v) for m, v in self._c.items()})

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other: "Form") -> "Form":
        if not isinstance(other, Form):
            return NotImplemented
        _check_same_mode(self, other)
        out = dict(self._c)
        for m, v in other._c.items():
            out[m] = out.get(m, scalar_zero(self.mode)) + v
        return Form(self.mode, out)

    def __sub__(self, other: "Form") -> "Form":
        if not isinstance(other, Form):
            return NotImplemented
        return self + (-other)

    def __neg__(self) -> "Form":
        return Form(self.mode, {m: -v for m, v in self._c.items()})

    def scale(self, value) -> "Form":
        v = coerce_scalar(value, self.mode)
        return Form(self.mode, {m: v * c for m, c in self._c.items()})

    def __mul__(self, value) -> "Form":
        return self.scale(value)

    __rmul__ = __mul__

    def __truediv__(self, value) -> "Form":
        v = coerce_scalar(value, self.mode)
        return Form(self.mode, {m: c / v for m, c in self._c.items()})

    def __xor__(self, other: "Form") -> "Form":
        return wedge(self, other)

    # -- comparison ----------------------------------------------------------

    def isclose(self, other: "Form", tol: float = DEFAULT_TOL) -> bool:
        _check_same_mode(self, other)
        return (self - other).is_zero(tol)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Form):
            return NotImplemented
        if self.mode != other.mode:
            return False
        if self.mode == EXACT:
            return self._c == other._c
        return self.isclose(other)

    __hash__ = None  # tolerance-based equality is incompatible with hashing

    def __repr__(self) -> str:
        if not self._c:
            return f"Form({self.mode}, 0)"
        parts = [f"{v!s}*{blade_name(m)}" for m, v in sorted(self._c.items())]
        return f"Form({self.mode}, {' + '.join(parts)})"

    # -- linear substitution -------------------------------------------------

    def pullback(self, matrix: Sequence[Sequence]) -> "Form":
        """Pullback along the linear map with the given 6x6 matrix M.

        Returns the form u' with u'(v_1, ..., v_k) = u(M v_1, ..., M v_k);
        coefficients are sums of k x k minors of M.
        """
        rows = [[coerce_scalar(x, self.mode) for x in row] for row in matrix]
        if len(rows) != DIM or any(len(r) != DIM for r in rows):
            raise ValueError("pullback expects a 6x6 matrix")
        out: dict[int, Scalar] = {}
        for mask, value in self._c.items():
            idx = blade_indices(mask)
            k = len(idx)
            if k == 0:
                out[0] = out.get(0, scalar_zero(self.mode)) + value
                continue
            for cols in combinations(range(DIM), k):
                minor = _det([[rows[i][j] for j in cols] for i in idx])
                if minor:
                    cm = sum(1 << j for j in cols)
                    out[cm] = out.get(cm, scalar_zero(self.mode)) + value * minor
        return Form(self.mode, out)

    # -- serialization -------------------------------------------------------

    def to_json_dict(self) -> dict:
        terms = []
        for mask, value in sorted(self._c.items()):
            coeff = str(value) if self.mode == EXACT else float(value)
            terms.append({"blade": blade_name(mask), "coeff": coeff})
        return {"mode": self.mode, "terms": terms}

    @classmethod
    def from_json_dict(cls, data: Mapping) -> "Form":
        try:
            mode = data["mode"]
            raw_terms = data["terms"]
        except (KeyError, TypeError) as exc:
            raise ValueError(f"form object needs 'mode' and 'terms': {exc}") from exc
        if mode not in MODES:
            raise ValueError(f"unknown mode {mode!r}")
        coeffs: dict[int, Scalar] = {}
        for term in raw_terms:
            mask = blade_from_name(term["blade"])
            raw = term["coeff"]
            if mode == EXACT:
                if isinstance(raw, str):
                    value: Scalar = Fraction(raw)
                elif isinstance(raw, int):
                    value = Fraction(raw)
                else:
                    raise ValueError(
                        f"exact coefficients must be rational strings, got {raw!r}"
                    )
            else:
                if not isinstance(raw, (int, float)):
                    raise ValueError(f"float coefficients must be numbers, got {raw!r}")
                value = float(raw)
            if mask in coeffs:
                raise ValueError(f"duplicate blade {term['blade']!r}")
            coeffs[mask] = value
        return cls(mode, coeffs)


# ---------------------------------------------------------------------------
# core operations


def wedge(a: Form, b: Form) -> Form:
    """Exterior product a ^ b (graded-commutative, zero past top degree)."""
    _check_same_mode(a, b)
    out: dict[int, Scalar] = {}
    zero = scalar_zero(a.mode)
    for ma, va in a._c.items():
        for mb, vb in b._c.items():
            sign = wedge_sign(ma, mb)
            if sign:
                m = ma | mb
                term = va * vb
                out[m] = out.get(m, zero) + (term if sign > 0 else -term)
    return Form(a.mode, out)


def contract_basis(i: int, a: Form) -> Form:
    """Interior product e_i -| a for the i-th (0-based) basis vector."""
    out: dict[int, Scalar] = {}
    bit = 1 << i
    for mask, value in a._c.items():
        if mask & bit:
            sign = contraction_sign(i, mask)
            out[mask ^ bit] = value if sign > 0 else -value
    return Form(a.mode, out)


def contract(x: Form, a: Form) -> Form:
    """Interior product x -| a of a vector (degree-1 form) into a.

    Adjoint to wedging with x: <x -| a, b> = <a, x ^ b>.
    """
    _check_same_mode(x, a)
    if x.degrees not in ((), (1,)):
        raise DegreeError("contraction direction must be a degree-1 form")
    out = Form.zero(a.mode)
    for i in range(DIM):
        c = x.coeff(1 << i)
        if c:
            out = out + contract_basis(i, a).scale(c)
    return out


def inner(a: Form, b: Form) -> Scalar:
    """Inner product with the coordinate blades orthonormal.

    Forms of different degree are orthogonal (their blades are disjoint), so
    this is just the coefficient dot product.
    """
    _check_same_mode(a, b)
    total = scalar_zero(a.mode)
    small, large = (a._c, b._c) if len(a._c) <= len(b._c) else (b._c, a._c)
    for mask, value in small.items():
        other = large.get(mask)
        if other is not None:
            total += value * other
    return total


def hodge_star(a: Form) -> Form:
    """Hodge star for the orthonormal blades and orientation e123456.

    Defined by u ^ *t = <u, t> e123456; on blades *e_A = s e_{A'} where A' is
    the complementary mask and s makes e_A ^ e_{A'} = s e123456.
    """
    a.degree  # noqa: B018 - raises DegreeError on mixed input
    out: dict[int, Scalar] = {}
    for mask, value in a._c.items():
        comp = VOLUME_MASK ^ mask
        sign = wedge_sign(mask, comp)
        out[comp] = value if sign > 0 else -value
    return Form(a.mode, out)


def evaluate(a: Form, *vectors: Form) -> Scalar:
    """Evaluate a k-form on k vectors via iterated contraction."""
    out = a
    for v in vectors:
        out = contract(v, out)
    if out.degrees not in ((), (0,)):
        raise DegreeError("form degree does not match the number of vectors")
    return out.coeff(0)


def _det(rows: list[list[Scalar]]) -> Scalar:
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    total = None
    for j in range(n):
        piv = rows[0][j]
        if not piv:
            continue
        minor = [[row[c] for c in range(n) if c != j] for row in rows[1:]]
        term = piv * _det(minor)
        if j & 1:
            term = -term
        total = term if total is None else total + term
    if total is None:
        return rows[0][0] * 0  # preserves the scalar type
    return total
