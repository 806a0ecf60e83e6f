"""Finitely presented truncated algebras and their etale certificates.

A presentation here is a quotient of Z/p^k[x_1..x_n] (optionally with an
invertible graded unit v adjoined) by one relation per generator.  Every
algebra this package needs is *separated*: relation i involves only
generator i, so the quotient is a tensor product of single-generator
factors and normal forms reduce one variable at a time.  The module of
relative differentials of such a quotient vanishes exactly when each
diagonal Jacobian entry is a unit in its factor, which is certified by
explicit inversion; the failing cases are certified instead through a
Smith normal form of the differentials' presentation matrix.
"""

from __future__ import annotations

import hashlib
import itertools
import json
from dataclasses import dataclass

from .errors import (
    DomainError,
    FalsificationError,
    ShapeError,
    UnsupportedPresentationError,
)
from .exact import int_ord_p
from .linalg import SnfResult, module_exponents, smith_normal_form
from .quotient import InversionResult, UniQuotient, invert_in_quotient

Term = tuple[tuple[int, ...], int]  # ((gen exponents..., v exponent), coeff)


def _freeze_relation(rel: dict, width: int) -> tuple[Term, ...]:
    out = []
    for key, coeff in rel.items():
        key = tuple(key)
        if len(key) != width:
            raise ShapeError(f"term key {key} does not match {width} slots")
        if coeff:
            out.append((key, int(coeff)))
    return tuple(sorted(out))


@dataclass(frozen=True)
class FinitePresentation:
    """Base Z/p^k, ordered generators, one relation polynomial each.

    Relation terms are keyed by (exponents per generator..., v exponent);
    the trailing v slot must be zero unless ``unit_v`` is set.
    """

    p: int
    k: int
    gens: tuple[str, ...]
    relations: tuple[tuple[Term, ...], ...]
    unit_v: bool = False

    @classmethod
    def build(cls, p, k, gens, relations, unit_v=False) -> "FinitePresentation":
        gens = tuple(gens)
        width = len(gens) + 1
        frozen = []
        for rel in relations:
            normalized = {}
            for key, coeff in rel.items():
                key = tuple(key)
                if len(key) == len(gens):
                    key = key + (0,)
                normalized[key] = coeff
            frozen.append(_freeze_relation(normalized, width))
        pres = cls(p, k, gens, tuple(frozen), unit_v)
        pres.validate()
        return pres

    @classmethod
    def univariate(cls, p, k, coeffs, gen="x") -> "FinitePresentation":
        """Single generator with an ascending coefficient list relation."""
        rel = {(e,): c for e, c in enumerate(coeffs) if c}
        return cls.build(p, k, (gen,), [rel])

    def validate(self):
        if self.k < 1:
            raise DomainError("precision k must be >= 1")
        for rel in self.relations:
            for key, _ in rel:
                if key[-1] != 0 and not self.unit_v:
                    raise UnsupportedPresentationError(
                        "v exponent present but no graded unit adjoined"
                    )

    @property
    def modulus(self) -> int:
        return self.p**self.k

    def is_square(self) -> bool:
        return len(self.relations) == len(self.gens)

    def padded(self) -> "FinitePresentation":
        """Pad with zero relations so free generators count as relations."""
        if len(self.relations) > len(self.gens):
            raise ShapeError("more relations than generators")
        missing = len(self.gens) - len(self.relations)
        return FinitePresentation(
            self.p,
            self.k,
            self.gens,
            self.relations + ((),) * missing,
            self.unit_v,
        )

    def separated_support(self) -> list[int | None]:
        """For each relation the unique generator it involves, or None when
        zero; raises when a relation mixes generators."""
        out = []
        for idx, rel in enumerate(self.relations):
            used = set()
            for key, _ in rel:
                for g, e in enumerate(key[:-1]):
                    if e:
                        used.add(g)
            if len(used) > 1:
                raise UnsupportedPresentationError(
                    f"relation {idx} involves generators {sorted(used)}; "
                    "only one generator per relation is supported"
                )
            out.append(used.pop() if used else None)
        return out

    def relation_coeff_lists(self) -> list[list[int]]:
        """Univariate ascending coefficient lists, one per relation.

        Only valid for presentations without the graded unit.
        """
        if self.unit_v:
            raise UnsupportedPresentationError(
                "graded-unit relations are not plain univariate lists"
            )
        support = self.separated_support()
        out = []
        for rel, gen in zip(self.relations, support):
            coeffs_map = {}
            for key, coeff in rel:
                exp = key[gen] if gen is not None else 0
                coeffs_map[exp] = coeffs_map.get(exp, 0) + coeff
            top = max(coeffs_map, default=-1)
            out.append([coeffs_map.get(e, 0) for e in range(top + 1)])
        return out

    # -- wire format ----------------------------------------------------

    def to_json(self) -> dict:
        rels = []
        for rel in self.relations:
            terms = []
            for key, coeff in rel:
                term = {"coeff": str(coeff), "exps": list(key[:-1])}
                if key[-1]:
                    term["v"] = key[-1]
                terms.append(term)
            rels.append(terms)
        return {
            "p": self.p,
            "k": self.k,
            "unit_v": self.unit_v,
            "gens": list(self.gens),
            "rels": rels,
        }

    @classmethod
    def from_json(cls, data: dict) -> "FinitePresentation":
        gens = tuple(data["gens"])
        relations = []
        for rel in data["rels"]:
            terms = {}
            for term in rel:
                key = tuple(term["exps"]) + (term.get("v", 0),)
                terms[key] = int(term["coeff"])
            relations.append(terms)
        return cls.build(
            data["p"], data["k"], gens, relations, data.get("unit_v", False)
        )


# ---------------------------------------------------------------------------
# tensor products of single-generator factors
# ---------------------------------------------------------------------------


class SeparatedQuotient:
    """Tensor product over Z/p^k of monic single-generator quotients."""

    def __init__(self, p: int, k: int, factors: list[UniQuotient]):
        self.p = p
        self.k = k
        self.modulus = p**k
        self.factors = factors
        self.degrees = [f.degree for f in factors]
        self.rank = 1
        for d in self.degrees:
            self.rank *= d
        self.basis = list(itertools.product(*[range(d) for d in self.degrees]))
        self.index = {b: i for i, b in enumerate(self.basis)}

    def reduce_term(self, exps: tuple[int, ...], coeff: int) -> dict:
        """Normal form of coeff * prod(x_i^exps[i]) as {basis tuple: coeff}."""
        out = {exps: coeff % self.modulus}
        for i, factor in enumerate(self.factors):
            nxt: dict = {}
            for key, c in out.items():
                if c == 0:
                    continue
                mono = [0] * (key[i] + 1)
                mono[key[i]] = 1
                reduced = factor.reduce(mono)
                for e, ce in enumerate(reduced):
                    if ce:
                        new_key = key[:i] + (e,) + key[i + 1 :]
                        nxt[new_key] = (nxt.get(new_key, 0) + c * ce) % self.modulus
            out = nxt
        return {k: v for k, v in out.items() if v}

    def multiply_basis(self, a: tuple[int, ...], b: tuple[int, ...]) -> dict:
        exps = tuple(x + y for x, y in zip(a, b))
        return self.reduce_term(exps, 1)

    def structure_table(self) -> list[list[list[list[int]]]]:
        """table[i][j] lists [basis index, coefficient] pairs of b_i * b_j."""
        table = []
        for a in self.basis:
            row = []
            for b in self.basis:
                product = self.multiply_basis(a, b)
                row.append(
                    sorted([self.index[key], c] for key, c in product.items())
                )
            table.append(row)
        return table


def serialize_structure_table(table) -> str:
    return json.dumps(table, separators=(",", ":"))


def reduce_structure_table(table, modulus: int):
    return [
        [[[idx, c % modulus] for idx, c in entry if c % modulus] for entry in row]
        for row in table
    ]


# ---------------------------------------------------------------------------
# Kaehler differentials via the Jacobian criterion
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FactorReport:
    generator: str
    jacobian: tuple[int, ...]
    unit: bool
    inverse: tuple[int, ...] | None = None
    snf: SnfResult | None = None


@dataclass(frozen=True)
class KahlerVerdict:
    zero: bool
    factors: tuple[FactorReport, ...]
    free_generators: tuple[str, ...] = ()
    omega_exponents: tuple[int, ...] = ()
    free_rank: int = 0

    def __bool__(self):
        return self.zero

    def to_json(self) -> dict:
        return {
            "omega1_zero": self.zero,
            "free_generators": list(self.free_generators),
            "factors": [
                {
                    "generator": f.generator,
                    "jacobian": list(f.jacobian),
                    "unit": f.unit,
                    "inverse": list(f.inverse) if f.inverse else None,
                }
                for f in self.factors
            ],
            "omega_exponents": list(self.omega_exponents),
            "free_rank": self.free_rank,
        }


def _derivative(coeffs: list[int], modulus: int) -> list[int]:
    return [i * c % modulus for i, c in enumerate(coeffs)][1:]


def kahler_rank(pres: FinitePresentation) -> KahlerVerdict:
    """Certify whether the relative differentials of the quotient vanish.

    The verdict is "zero" exactly when the Jacobian determinant inverts
    in the quotient; since presentations are separated that determinant
    is the product of the diagonal entries, and it is inverted factor by
    factor (for one generator this is literally inversion of the
    determinant in normal form).  Non-units yield a Smith normal form of
    the presentation matrix of the differentials instead.
    """
    if pres.unit_v:
        raise UnsupportedPresentationError(
            "graded-unit presentations use their dedicated certificates"
        )
    pres = pres.padded()
    support = pres.separated_support()
    coeff_lists = pres.relation_coeff_lists()
    modulus = pres.modulus

    factors: list[FactorReport] = []
    free_gens: list[str] = []
    seen = set()
    rings: list[UniQuotient | None] = []
    for i, (gen_idx, coeffs) in enumerate(zip(support, coeff_lists)):
        if gen_idx is None:
            free_gens.append(pres.gens[i] if i < len(pres.gens) else f"#{i}")
            rings.append(None)
            continue
        if gen_idx in seen:
            raise UnsupportedPresentationError(
                f"generator {pres.gens[gen_idx]} carries two relations"
            )
        seen.add(gen_idx)
        ring = UniQuotient(pres.p, pres.k, coeffs)
        rings.append(ring)
        jac = ring.reduce(_derivative(ring.relation, modulus))
        result = ring.invert(jac)
        factors.append(
            FactorReport(
                pres.gens[gen_idx],
                tuple(jac),
                result.is_unit,
                result.inverse,
                None,
            )
        )

    all_units = all(f.unit for f in factors) and not free_gens
    if all_units:
        return KahlerVerdict(True, tuple(factors))

    # non-vanishing certificate: per factor, the cokernel of multiplication
    # by the Jacobian entry, replicated across the rest of the tensor basis
    finite_rank = 1
    for ring in rings:
        if ring is not None:
            finite_rank *= ring.degree
    exps: list[int] = []
    enriched: list[FactorReport] = []
    for f, ring in zip(factors, (r for r in rings if r is not None)):
        matrix = ring.mult_matrix(list(f.jacobian))
        snf = smith_normal_form(matrix, modulus=modulus, p=pres.p)
        copies = finite_rank // ring.degree
        factor_exps = module_exponents(snf.diagonal, 0, pres.p, pres.k)
        exps.extend(list(factor_exps) * copies)
        enriched.append(
            FactorReport(f.generator, f.jacobian, f.unit, f.inverse, snf)
        )
    return KahlerVerdict(
        False,
        tuple(enriched),
        tuple(free_gens),
        tuple(sorted(exps)),
        free_rank=len(free_gens),
    )


# ---------------------------------------------------------------------------
# low-degree Andre-Quillen style modules from the two-term Jacobian complex
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AqModule:
    """Isomorphism class: p-power invariant factors plus a free rank."""

    torsion_exponents: tuple[int, ...] = ()
    free_rank: int = 0

    @property
    def is_zero(self) -> bool:
        return not self.torsion_exponents and self.free_rank == 0

    def to_json(self):
        return {
            "torsion_exponents": list(self.torsion_exponents),
            "free_rank": self.free_rank,
        }


def aq_low(pres: FinitePresentation, module: str = "self") -> tuple[AqModule, AqModule]:
    """Kernel and cokernel of the Jacobian-induced map on homomorphisms.

    ``module`` selects the coefficients: "self" is the quotient algebra,
    "base" is Z/p^k acting through evaluation of all generators at 0
    (each relation must then vanish at 0).  Derivations form the kernel;
    the cokernel is the degree-one obstruction module.  For separated
    presentations the map is block diagonal with one multiplication
    block per relation.
    """
    if pres.unit_v:
        raise UnsupportedPresentationError(
            "graded-unit presentations use their dedicated certificates"
        )
    if module not in ("self", "base"):
        raise UnsupportedPresentationError(f"unsupported module {module!r}")
    pres = pres.padded()
    support = pres.separated_support()
    coeff_lists = pres.relation_coeff_lists()
    modulus = pres.modulus

    rings = []
    for gen_idx, coeffs in zip(support, coeff_lists):
        rings.append(None if gen_idx is None else UniQuotient(pres.p, pres.k, coeffs))

    finite_rank = 1
    for ring in rings:
        if ring is not None:
            finite_rank *= ring.degree
    module_rank = finite_rank if module == "self" else 1

    ker_exps: list[int] = []
    coker_exps: list[int] = []
    for ring in rings:
        if ring is None:
            # free generator: the corresponding derivation is unconstrained
            ker_exps.extend([pres.k] * module_rank)
            continue
        jac = ring.reduce(_derivative(ring.relation, modulus))
        if module == "self":
            matrix = ring.mult_matrix(jac)
            snf = smith_normal_form(matrix, modulus=modulus, p=pres.p)
            block = module_exponents(snf.diagonal, 0, pres.p, pres.k)
            copies = finite_rank // ring.degree
            ker_exps.extend(list(block) * copies)
            coker_exps.extend(list(block) * copies)
        else:
            if ring.relation[0] % modulus:
                raise UnsupportedPresentationError(
                    "base coefficients need relations vanishing at 0"
                )
            scalar = jac[0] % modulus
            e = pres.k if scalar == 0 else min(pres.k, int_ord_p(scalar, pres.p))
            if e:
                ker_exps.append(e)
                coker_exps.append(e)
    return (
        AqModule(tuple(sorted(ker_exps))),
        AqModule(tuple(sorted(coker_exps))),
    )


def aq_low_polynomial_over_field(n_gens: int = 1, module_rank: int = 1):
    """The rational smooth case: a polynomial ring over Q with no relations.

    Derivations are freely generated by the partials, so the degree-zero
    module is free of rank n_gens * module_rank and the degree-one
    module vanishes.
    """
    if n_gens < 0 or module_rank < 0:
        raise DomainError("ranks must be >= 0")
    return (
        AqModule(free_rank=n_gens * module_rank),
        AqModule(),
    )


# ---------------------------------------------------------------------------
# truncation towers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TowerLevel:
    k: int
    factors_etale: bool
    table_digest: str
    reduction_ok: bool | None


@dataclass(frozen=True)
class TowerReport:
    p: int
    l: int
    k_max: int
    levels: tuple[TowerLevel, ...]
    ok: bool

    def to_json(self):
        return {
            "p": self.p,
            "l": self.l,
            "k_max": self.k_max,
            "levels": [
                {
                    "k": lv.k,
                    "factors_etale": lv.factors_etale,
                    "table_sha256": lv.table_digest,
                    "reduction_ok": lv.reduction_ok,
                }
                for lv in self.levels
            ],
            "ok": self.ok,
        }


def idempotent_truncation(p: int, k: int, l: int) -> FinitePresentation:
    """Z/p^k[s_0..s_l] with every generator satisfying s^p = s."""
    gens = tuple(f"s{i}" for i in range(l + 1))
    relations = []
    for i in range(l + 1):
        key_p = tuple(p if j == i else 0 for j in range(l + 1))
        key_1 = tuple(1 if j == i else 0 for j in range(l + 1))
        relations.append({key_p: 1, key_1: -1})
    return FinitePresentation.build(p, k, gens, relations)


def _tensor_tables(p: int, l: int, k: int):
    factors = [
        UniQuotient(p, k, [0, -1] + [0] * (p - 2) + [1]) for _ in range(l + 1)
    ]
    return SeparatedQuotient(p, k, factors).structure_table()


def truncation_tower(p: int, k_max: int, l: int) -> TowerReport:
    """Certify every level of the tower of idempotent truncations.

    Each level k is the tensor product of single-generator factors with
    relation s^p - s; each factor is certified etale, and consecutive
    levels must agree after reduction: the level-(k+1) structure table
    reduced mod p^k must serialize byte-identically to the level-k one.
    """
    if l < 0:
        raise DomainError("l must be >= 0")
    if k_max < 1:
        raise DomainError("k_max must be >= 1")
    levels = []
    previous_serialized = None
    ok = True
    for k in range(1, k_max + 1):
        factor_pres = FinitePresentation.univariate(
            p, k, [0, -1] + [0] * (p - 2) + [1], gen="s"
        )
        verdict = kahler_rank(factor_pres)
        table = _tensor_tables(p, l, k)
        serialized = serialize_structure_table(table)
        reduction_ok = None
        if previous_serialized is not None:
            reduced = reduce_structure_table(table, p ** (k - 1))
            reduction_ok = (
                serialize_structure_table(reduced) == previous_serialized
            )
            ok = ok and reduction_ok
        ok = ok and verdict.zero
        levels.append(
            TowerLevel(
                k,
                verdict.zero,
                hashlib.sha256(serialized.encode()).hexdigest(),
                reduction_ok,
            )
        )
        previous_serialized = serialized
    return TowerReport(p, l, k_max, tuple(levels), ok)


# ---------------------------------------------------------------------------
# the height-one cooperation relation and its geometric-series certificate
# ---------------------------------------------------------------------------


def _poly2_mul(a: dict, b: dict, modulus: int) -> dict:
    out: dict = {}
    for (s1, v1), c1 in a.items():
        for (s2, v2), c2 in b.items():
            key = (s1 + s2, v1 + v2)
            out[key] = (out.get(key, 0) + c1 * c2) % modulus
    return {k: c for k, c in out.items() if c}


@dataclass(frozen=True)
class EnCertificate:
    p: int
    k: int
    n: int
    j: int
    iterations: int
    series: tuple[tuple[tuple[int, int], int], ...]
    jacobian: tuple[tuple[tuple[int, int], int], ...]
    inverse: tuple[tuple[tuple[int, int], int], ...]
    verified: bool

    def __bool__(self):
        return self.verified

    def to_json(self):
        def fmt(terms):
            return [
                {"S": s, "v": v, "coeff": str(c)} for (s, v), c in terms
            ]

        return {
            "p": self.p,
            "k": self.k,
            "n": self.n,
            "j": self.j,
            "iterations": self.iterations,
            "series": fmt(self.series),
            "jacobian": fmt(self.jacobian),
            "inverse": fmt(self.inverse),
            "omega1_zero": self.verified,
        }


def en_presentation_check(p: int, k: int, n_chromatic: int = 1, j: int = 1) -> EnCertificate:
    """Unit-Jacobian certificate for the one-generator cooperation relation.

    The relation is v * S^(p^n) - v^(p^j) * S over Z/p^k with v an
    invertible graded unit.  Its derivative factors as
    -v^(p^j) * (1 - p^n * u) with u = v^(1 - p^j) * S^(p^n - 1), and
    1 - p^n*u is inverted by the geometric series truncated after t
    terms, the least t with t*n >= k (each term carries n more powers
    of p, and p^k = 0).
    """
    if k < 1:
        raise DomainError("k must be >= 1")
    if j < 1 or n_chromatic < 1:
        raise DomainError("j and the height must be >= 1")
    modulus = p**k
    q = p**n_chromatic
    t = -(-k // n_chromatic)  # ceil(k / n)
    u_key = (q - 1, 1 - p**j)
    one = {(0, 0): 1}
    pu = {u_key: p**n_chromatic % modulus}
    series: dict = dict(one)
    power = dict(one)
    for _ in range(1, t):
        power = _poly2_mul(power, pu, modulus)
        for key, c in power.items():
            series[key] = (series.get(key, 0) + c) % modulus
    series = {key: c for key, c in series.items() if c}
    one_minus_pu = {(0, 0): 1, u_key: (-(p**n_chromatic)) % modulus}
    product = _poly2_mul(one_minus_pu, series, modulus)
    verified = product == one

    jacobian = {
        (q - 1, 1): q % modulus,
        (0, p**j): (-1) % modulus,
    }
    jacobian = {key: c for key, c in jacobian.items() if c}
    inverse = {
        (s, v - p**j): (-c) % modulus for (s, v), c in series.items()
    }
    inverse = {key: c for key, c in inverse.items() if c}
    if jacobian:
        verified = verified and _poly2_mul(jacobian, inverse, modulus) == one
    if not verified:
        raise FalsificationError(
            f"geometric-series inverse failed at p={p}, k={k}, j={j}"
        )
    return EnCertificate(
        p,
        k,
        n_chromatic,
        j,
        t,
        tuple(sorted(series.items())),
        tuple(sorted(jacobian.items())),
        tuple(sorted(inverse.items())),
        verified,
    )
