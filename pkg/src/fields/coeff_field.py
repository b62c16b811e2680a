"""
coeff_field.py - Corpo de coeficientes K e o homomorfismo θ
Unipotent Modules Project - Fase 1

Dois modos:
- ciclotômico: K = Q(ζ_p), elementos são vetores racionais exatos de comprimento p-1
  (coeficientes de 1, z, ..., z^{p-2}) reduzidos módulo Φ_p;
- modular: K = F_ℓ com p | ℓ-1 e ζ a menor raiz p-ésima primitiva da unidade.

θ(α) = ζ^{Tr(α)} com Tr o traço absoluto de F_q.
"""

import logging
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

from sympy import QQ, Poly, Symbol, cyclotomic_poly, isprime

from src.errors import MixedFieldError
from src.fields.finite_field import FqScalar

logger = logging.getLogger(__name__)

CYCLOTOMIC = 'cyclotomic'
MODULAR = 'modular'

_Z = Symbol('z')


class CoeffFieldSpec:
    """Especificação de K (imutável)."""

    def __init__(self, mode: str, p: int, ell: Optional[int] = None):
        if not isprime(p):
            raise ValueError(f"p = {p} não é primo")
        self.mode = mode
        self.p = p
        self.ell = ell
        if mode == CYCLOTOMIC:
            self.zeta_code = None
            self._phi = Poly(cyclotomic_poly(p, _Z), _Z, domain=QQ)
        elif mode == MODULAR:
            if ell is None or not isprime(ell):
                raise ValueError(f"ℓ = {ell} não é primo")
            if ell == p:
                raise ValueError("A característica de K não pode ser p")
            if (ell - 1) % p != 0:
                raise ValueError(f"p = {p} não divide ℓ-1 = {ell - 1}")
            self.zeta_code = next(x for x in range(2, ell) if pow(x, p, ell) == 1)
        else:
            raise ValueError(f"Modo desconhecido: {mode}")

    @property
    def is_modular(self) -> bool:
        return self.mode == MODULAR

    @property
    def label(self) -> str:
        """Rótulo estável usado em caches e relatórios."""
        return CYCLOTOMIC if self.mode == CYCLOTOMIC else f"mod{self.ell}"

    # ------------------------------------------------------------------
    def from_int(self, n: int) -> "KScalar":
        if self.is_modular:
            return KScalar(self, n % self.ell)
        return KScalar(self, (Fraction(n),) + (Fraction(0),) * (self.p - 2))

    def from_fraction(self, x: Fraction) -> "KScalar":
        if self.is_modular:
            return KScalar(self, x.numerator * pow(x.denominator, -1, self.ell) % self.ell)
        return KScalar(self, (Fraction(x),) + (Fraction(0),) * (self.p - 2))

    @property
    def zero(self) -> "KScalar":
        return self.from_int(0)

    @property
    def one(self) -> "KScalar":
        return self.from_int(1)

    def zeta_power(self, e: int) -> "KScalar":
        """ζ^e."""
        e %= self.p
        if self.is_modular:
            return KScalar(self, pow(self.zeta_code, e, self.ell))
        return KScalar(self, _reduce_cyclic([Fraction(int(i == e)) for i in range(self.p)]))

    @property
    def zeta(self) -> "KScalar":
        return self.zeta_power(1)

    def __repr__(self):
        return f"CoeffFieldSpec({self.label}, p={self.p})"


def _reduce_cyclic(c: Sequence[Fraction]) -> Tuple[Fraction, ...]:
    """Vetor em Q[z]/(z^p - 1) → representante módulo Φ_p (comprimento p-1)."""
    top = c[-1]
    return tuple(c[i] - top for i in range(len(c) - 1))


class KScalar:
    """Elemento de K; igualdade exata."""

    __slots__ = ('spec', 'data')

    def __init__(self, spec: CoeffFieldSpec, data: Union[int, Tuple[Fraction, ...]]):
        self.spec = spec
        self.data = data

    def _check(self, other: "KScalar") -> None:
        if other.spec is not self.spec:
            raise MixedFieldError("Escalares de corpos de coeficientes diferentes")

    def _coerce(self, other) -> "KScalar":
        if isinstance(other, KScalar):
            self._check(other)
            return other
        if isinstance(other, int):
            return self.spec.from_int(other)
        if isinstance(other, Fraction):
            return self.spec.from_fraction(other)
        raise TypeError(f"Não é possível converter {other!r} para KScalar")

    def __add__(self, other):
        other = self._coerce(other)
        if self.spec.is_modular:
            return KScalar(self.spec, (self.data + other.data) % self.spec.ell)
        return KScalar(self.spec, tuple(a + b for a, b in zip(self.data, other.data)))

    __radd__ = __add__

    def __neg__(self):
        if self.spec.is_modular:
            return KScalar(self.spec, (-self.data) % self.spec.ell)
        return KScalar(self.spec, tuple(-a for a in self.data))

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        if self.spec.is_modular:
            return KScalar(self.spec, (self.data * other.data) % self.spec.ell)
        p = self.spec.p
        if p == 2:
            return KScalar(self.spec, (self.data[0] * other.data[0],))
        prod = [Fraction(0)] * p
        for i, a in enumerate(self.data):
            if a:
                for j, b in enumerate(other.data):
                    if b:
                        prod[(i + j) % p] += a * b
        return KScalar(self.spec, _reduce_cyclic(prod))

    __rmul__ = __mul__

    def inverse(self) -> "KScalar":
        if self.is_zero():
            raise ZeroDivisionError("Inverso de 0 em K")
        if self.spec.is_modular:
            return KScalar(self.spec, pow(self.data, -1, self.spec.ell))
        if self.is_rational():
            return self.spec.from_fraction(1 / self.data[0])
        poly = Poly(list(reversed([QQ(a.numerator, a.denominator) for a in self.data])), _Z, domain=QQ)
        inv = poly.invert(self.spec._phi)
        coeffs = [Fraction(int(c.p), int(c.q)) for c in reversed(inv.all_coeffs())]
        coeffs += [Fraction(0)] * (self.spec.p - 1 - len(coeffs))
        return KScalar(self.spec, tuple(coeffs))

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def conjugate(self) -> "KScalar":
        """Automorfismo z ↦ z^{-1} de Q(ζ_p)."""
        if self.spec.is_modular:
            raise ValueError("Conjugação só existe no modo ciclotômico")
        p = self.spec.p
        full = list(self.data) + [Fraction(0)]
        image = [Fraction(0)] * p
        for i, a in enumerate(full):
            image[(-i) % p] += a
        return KScalar(self.spec, _reduce_cyclic(image))

    def is_zero(self) -> bool:
        if self.spec.is_modular:
            return self.data == 0
        return not any(self.data)

    def __bool__(self):
        return not self.is_zero()

    def is_rational(self) -> bool:
        return self.spec.is_modular or not any(self.data[1:])

    def to_fraction(self) -> Fraction:
        """Valor racional; ValueError se o elemento não estiver em Q."""
        if self.spec.is_modular:
            return Fraction(self.data)
        if not self.is_rational():
            raise ValueError(f"{self} não é racional")
        return self.data[0]

    def to_int(self) -> int:
        value = self.to_fraction()
        if value.denominator != 1:
            raise ValueError(f"{self} não é inteiro")
        return value.numerator

    def max_denominator(self) -> int:
        if self.spec.is_modular:
            return 1
        return max(a.denominator for a in self.data)

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.spec.from_int(other)
        if not isinstance(other, KScalar):
            return NotImplemented
        return self.spec is other.spec and self.data == other.data

    def __hash__(self):
        return hash(self.data)

    def __str__(self):
        return format_kscalar(self)

    def __repr__(self):
        return f"K({format_kscalar(self)})"


def make_coeff_field(mode: str, p: int, ell: Optional[int] = None) -> CoeffFieldSpec:
    """
    Constrói K.

    Args:
        mode: 'cyclotomic' ou 'modular'
        p: característica de F_q
        ell: primo ℓ (apenas modo modular), com p | ℓ-1

    Returns:
        CoeffFieldSpec com ζ fixado
    """
    spec = CoeffFieldSpec(mode, p, ell)
    logger.debug(f"Corpo de coeficientes {spec.label} criado para p = {p}")
    return spec


def theta(alpha: FqScalar, spec: CoeffFieldSpec) -> KScalar:
    """θ(α) = ζ^{Tr(α)}."""
    if alpha.field.p != spec.p:
        raise MixedFieldError(f"Característica {alpha.field.p} incompatível com K (p = {spec.p})")
    return spec.zeta_power(alpha.trace())


# ----------------------------------------------------------------------
# formato texto
# ----------------------------------------------------------------------
def _format_fraction(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def format_kscalar(a: KScalar) -> str:
    """'c0 + c1*z + ...' (ciclotômico) ou o resíduo mod ℓ."""
    if a.spec.is_modular:
        return str(a.data)
    terms = []
    for i, c in enumerate(a.data):
        if not c:
            continue
        coeff = _format_fraction(c)
        if i == 0:
            terms.append(coeff)
        elif i == 1:
            terms.append(f"{coeff}*z")
        else:
            terms.append(f"{coeff}*z^{i}")
    return " + ".join(terms) if terms else "0"


def parse_kscalar(spec: CoeffFieldSpec, text: str) -> KScalar:
    """Inverso de format_kscalar."""
    text = text.strip()
    if spec.is_modular:
        return KScalar(spec, int(text) % spec.ell)
    coeffs = [Fraction(0)] * (spec.p - 1)
    if text == "0":
        return KScalar(spec, tuple(coeffs))
    for term in text.split(" + "):
        if "*z" in term:
            coeff, power = term.split("*z")
            index = int(power[1:]) if power.startswith("^") else 1
        else:
            coeff, index = term, 0
        coeffs[index] += Fraction(coeff)
    return KScalar(spec, tuple(coeffs))


# ----------------------------------------------------------------------
# álgebra linear sobre K
# ----------------------------------------------------------------------
KMatrix = List[List[KScalar]]


def kmat_identity(spec: CoeffFieldSpec, n: int) -> KMatrix:
    return [[spec.one if i == j else spec.zero for j in range(n)] for i in range(n)]


def kmat_mul(a: KMatrix, b: KMatrix) -> KMatrix:
    if not a:
        return []
    inner = len(b)
    cols = len(b[0]) if b else 0
    out = []
    for row in a:
        new_row = []
        for j in range(cols):
            acc = row[0].spec.zero
            for t in range(inner):
                if row[t] and b[t][j]:
                    acc = acc + row[t] * b[t][j]
            new_row.append(acc)
        out.append(new_row)
    return out


def kmat_rref(matrix: KMatrix) -> Tuple[KMatrix, List[int]]:
    """Forma escalonada reduzida sobre K; devolve (matriz, colunas pivô)."""
    rows = [list(r) for r in matrix]
    pivots: List[int] = []
    if not rows:
        return rows, pivots
    ncols = len(rows[0])
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                factor = rows[i][c]
                rows[i] = [x - factor * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rank_over_k(matrix: KMatrix) -> int:
    return len(kmat_rref(matrix)[1])


def kernel_over_k(matrix: KMatrix) -> KMatrix:
    """Base do núcleo à direita {x : M x = 0}."""
    if not matrix:
        return []
    spec = matrix[0][0].spec
    ncols = len(matrix[0])
    reduced, pivots = kmat_rref(matrix)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [spec.zero] * ncols
        x[f] = spec.one
        for r, c in enumerate(pivots):
            x[c] = -reduced[r][f]
        basis.append(x)
    return basis
