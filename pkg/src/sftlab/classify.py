"""Decidable equivalence verdicts from exact integer invariants.

For a presentation with adjacency matrix A the report carries the cokernel
of I - A (the flow-equivalence group), the cokernel of I - A^T pointed at
the class of the all-ones vector, the sign of det(I - A), and a rational
Collatz-Wielandt enclosure of the spectral radius (diagnostic only).

Flow equivalence is decided by group isomorphism plus determinant sign;
continuous orbit equivalence by pointed isomorphism plus determinant sign,
with `undecided` propagating from the pointed-isomorphism search.  A
consistency check cross-validates verdicts against explicit two-sided
machine witnesses and raises on any contradiction."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import cohomology as coh
from . import transducers as tr
from .config import Limits, default_limits
from .errors import (
    ContradictionDetected,
    InsufficientLookahead,
    InvalidResult,
    PresentationMismatch,
)
from .linalg import (
    CokernelPresentation,
    FgAbelianGroup,
    PointedGroup,
    PointedIsoResult,
    cokernel,
    determinant,
    mat_vec,
    pointed_iso,
    transpose,
)
from .shifts import Matrix, SftPresentation


def _identity_minus(m: Matrix) -> Matrix:
    n = len(m)
    return tuple(
        tuple((1 if i == j else 0) - m[i][j] for j in range(n))
        for i in range(n))


@dataclass(frozen=True)
class InvariantReport:
    presentation: SftPresentation
    bf_group: FgAbelianGroup                      # coker(I - A)
    bf_cokernel: CokernelPresentation
    k0_pointed: PointedGroup                      # coker(I - A^T), class of 1
    det_sign: int
    spectral_radius_bounds: tuple[Fraction, Fraction]


def invariants(p: SftPresentation, limits: Limits | None = None) -> InvariantReport:
    limits = limits or default_limits()
    a = p.adjacency
    n = len(a)
    bf_cok = cokernel(_identity_minus(a))
    k0_cok = cokernel(_identity_minus(transpose(a)))
    marked = k0_cok.project((1,) * n)
    det = determinant(_identity_minus(a))
    sign = (det > 0) - (det < 0)
    # det(I - A) = +-(product of invariant factors), so sign 0 means free rank
    assert (sign == 0) == (bf_cok.group.free_rank > 0)

    v = tuple(1 for _ in range(n))
    for _ in range(8):
        v = mat_vec(a, v)
    av = mat_vec(a, v)
    ratios = [Fraction(av[i], v[i]) for i in range(n)]
    bounds = (min(ratios), max(ratios))

    return InvariantReport(
        presentation=p,
        bf_group=bf_cok.group,
        bf_cokernel=bf_cok,
        k0_pointed=PointedGroup(k0_cok.group, marked),
        det_sign=sign,
        spectral_radius_bounds=bounds)


@dataclass(frozen=True)
class FlowReport:
    verdict: bool
    reason: str
    a: InvariantReport
    b: InvariantReport


def flow_equivalent(pa: SftPresentation, pb: SftPresentation,
                    limits: Limits | None = None) -> FlowReport:
    """Groups isomorphic (canonical invariant factors equal) and determinant
    signs equal."""
    ra = invariants(pa, limits)
    rb = invariants(pb, limits)
    if ra.det_sign != rb.det_sign:
        return FlowReport(False, "determinant signs differ", ra, rb)
    if ra.bf_group != rb.bf_group:
        return FlowReport(False, "groups are not isomorphic", ra, rb)
    return FlowReport(True, "groups isomorphic and signs equal", ra, rb)


@dataclass(frozen=True)
class CoeReport:
    verdict: str                         # yes / no / undecided
    reason: str
    iso: PointedIsoResult | None
    a: InvariantReport
    b: InvariantReport


def coe_verdict(pa: SftPresentation, pb: SftPresentation,
                limits: Limits | None = None) -> CoeReport:
    """Pointed isomorphism of the marked cokernels plus determinant sign."""
    limits = limits or default_limits()
    ra = invariants(pa, limits)
    rb = invariants(pb, limits)
    if ra.det_sign != rb.det_sign:
        return CoeReport("no", "determinant signs differ", None, ra, rb)
    iso = pointed_iso(ra.k0_pointed, rb.k0_pointed, limits)
    if iso.verdict == "yes":
        return CoeReport("yes", "pointed groups isomorphic and signs equal",
                         iso, ra, rb)
    if iso.verdict == "no":
        return CoeReport("no", f"pointed groups differ: {iso.reason}",
                         iso, ra, rb)
    return CoeReport("undecided", iso.reason, iso, ra, rb)


# -------------------------------------------------------------- consistency

@dataclass(frozen=True)
class CoeWitness:
    """Two-sided machine witness of a continuous orbit equivalence: mutually
    inverse transducers with verified cocycle data."""

    forward: tr.Transducer
    forward_data: tr.OrbitData
    backward: tr.Transducer
    backward_data: tr.OrbitData


@dataclass(frozen=True)
class ConsistencyReport:
    coe: CoeReport
    witness_verified: bool
    unit_image_forward: coh.LocallyConstantFunction | None
    unit_image_backward: coh.LocallyConstantFunction | None
    eventual_conjugacy: bool | None
    strong_coe: bool | None


def _check_witness(pa: SftPresentation, pb: SftPresentation,
                   witness: CoeWitness, limits: Limits) -> None:
    fwd, bwd = witness.forward, witness.backward
    if fwd.domain != pa or fwd.codomain != pb:
        raise PresentationMismatch("forward witness does not map A to B")
    if bwd.domain != pb or bwd.codomain != pa:
        raise PresentationMismatch("backward witness does not map B to A")
    for machine, data, name in ((fwd, witness.forward_data, "forward"),
                                (bwd, witness.backward_data, "backward")):
        rel = tr.verify_orbit_relation(machine, data, limits)
        if not rel.holds:
            raise InvalidResult(
                f"{name} witness violates its orbit relation on "
                f"{machine.domain.word_label(rel.witness)}")
    for outer, inner, p, name in ((bwd, fwd, pa, "backward after forward"),
                                  (fwd, bwd, pb, "forward after backward")):
        round_trip = tr.compose(outer, inner, limits)
        res = tr.equivalent_maps(round_trip, tr.identity_transducer(p),
                                 None, limits)
        if res.status == "unequal":
            raise InvalidResult(
                f"{name} is not the identity "
                f"(splits on {p.word_label(res.witness)})")
        if res.status == "inconclusive":
            raise InsufficientLookahead(
                f"cannot certify that {name} is the identity")


def consistency_check(pa: SftPresentation, pb: SftPresentation,
                      witness: CoeWitness | None = None,
                      limits: Limits | None = None) -> ConsistencyReport:
    """Cross-validate the invariant verdict against an explicit witness.

    A witness is accepted only if its orbit relations verify and the two
    machines invert each other; an accepted witness together with a `no`
    verdict trips ContradictionDetected."""
    limits = limits or default_limits()
    verdict = coe_verdict(pa, pb, limits)
    if witness is None:
        return ConsistencyReport(verdict, False, None, None, None, None)
    _check_witness(pa, pb, witness, limits)
    if verdict.verdict == "no":
        raise ContradictionDetected(
            "verified orbit-equivalence witness against a 'no' verdict: "
            + verdict.reason)
    c1_fwd = tr.transfer_psi(witness.forward, witness.forward_data,
                             coh.unit(pb), limits)
    c1_bwd = tr.transfer_psi(witness.backward, witness.backward_data,
                             coh.unit(pa), limits)
    eventual = (coh.subtract(c1_fwd, coh.unit(pa), limits).is_zero()
                and coh.subtract(c1_bwd, coh.unit(pb), limits).is_zero())
    strong = (coh.class_equal(c1_fwd, coh.unit(pa), limits).is_coboundary
              and coh.class_equal(c1_bwd, coh.unit(pb), limits).is_coboundary)
    return ConsistencyReport(verdict, True, c1_fwd, c1_bwd, eventual, strong)
