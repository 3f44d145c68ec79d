"""Metric, subobject classifier, pullbacks, factorization and negative probes.

The distance between two instances is the total object when they are
behaviorally equivalent and their matching otherwise, ordered by inverse
inclusion (more shared views means smaller distance).  Pullback squares are
built with corner the intersection of the two fluxes.  Their universal
property is verified in the two-cell form valid for flux semantics: every
commuting cone has exactly one mediating arrow whose full composite to the
cospan target reproduces the cone's composite, and that arrow sits below the
cone legs in the arrow order.  The strict one-categorical property fails in
this semantics (a cone may have legs with different fluxes, which no single
mediating flux can reproduce), so the strict form is deliberately not
asserted.

The characteristic arrow of a monomorphism is verified at two layers.  The
generator layer works with the set difference of the two closures, exactly
as the classifying pullback requires.  The closure-level audit additionally
closes that generator set and records when the closure meets the subobject,
which happens already for one-element subobjects of two-element instances;
those audits are reported as flagged, never as failures.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .catops import (
    arrow_coproduct,
    coproduct,
    copair,
    matching,
    tagged_flux,
)
from .closure import (
    ClosedInstance,
    closed_subsets,
    generating_queries,
    isomorphic,
    meet_closed,
    po_leq,
    power_view,
    total_object,
    zero_object,
)
from .core import (
    BOTTOM,
    Instance,
    Relation,
    UniverseConfig,
    sorted_relations,
    subset_instances,
    with_default_labels,
)
from .errors import DomainMismatch, NotAPullback, NotMonic
from .morphisms import (
    Morphism,
    ViewMap,
    ViewTree,
    compose,
    empty_arrow,
    equiv,
    identity,
    is_epi,
    is_mono,
    semantic_arrow,
    semantic_homset,
    _morphism,
)


def distance(a: Instance, b: Instance, cfg: UniverseConfig) -> ClosedInstance:
    """The distance between two instances: total when equivalent, else matching."""
    if isomorphic(a, b, cfg):
        return total_object(cfg)
    return matching(a, b, cfg)


def closure_classes(cfg: UniverseConfig, max_relations: int) -> list[Instance]:
    """One representative instance per behavioral class of the enumeration."""
    seen: dict[frozenset[Relation], Instance] = {}
    for inst in subset_instances(cfg, max_relations):
        key = power_view(inst, cfg).relations
        if key not in seen:
            seen[key] = inst
    return [seen[k] for k in sorted(seen, key=lambda rels: tuple(
        r.sort_key() for r in sorted_relations(rels)))]


@dataclass
class MetricReport:
    """Exhaustive verification of the distance laws over an enumeration."""

    instances: int
    symmetry_failures: list[str] = field(default_factory=list)
    self_distance_failures: list[str] = field(default_factory=list)
    indiscernible_failures: list[str] = field(default_factory=list)
    triangle_failures: list[str] = field(default_factory=list)
    order_failures: list[str] = field(default_factory=list)
    locally_closed_failures: list[str] = field(default_factory=list)
    infinite_distance_failures: list[str] = field(default_factory=list)
    triples_checked: int = 0

    @property
    def ok(self) -> bool:
        return not (
            self.symmetry_failures
            or self.self_distance_failures
            or self.indiscernible_failures
            or self.triangle_failures
            or self.order_failures
            or self.locally_closed_failures
            or self.infinite_distance_failures
        )


def metric_suite(cfg: UniverseConfig, max_relations: int = 4) -> MetricReport:
    """Check every distance law exhaustively over the bounded enumeration."""
    insts = list(subset_instances(cfg, max_relations))
    total = total_object(cfg)
    report = MetricReport(instances=len(insts))

    def d(a, b):
        return distance(a, b, cfg).relations

    for a in insts:
        if d(a, a) != total.relations:
            report.self_distance_failures.append(repr(a))
        if not isomorphic(a, zero_object(), cfg) and d(a, zero_object()) != frozenset({BOTTOM}):
            report.infinite_distance_failures.append(repr(a))
        own = semantic_homset(a, a, cfg)
        own_fluxes = {h.relations for h in own}
        others = {frozenset(d(a, b)) for b in insts if not isomorphic(a, b, cfg)}
        if len(others) > len(own_fluxes) or not others <= own_fluxes:
            report.locally_closed_failures.append(repr(a))
    for a, b in itertools.product(insts, repeat=2):
        if d(a, b) != d(b, a):
            report.symmetry_failures.append(f"{a!r},{b!r}")
        if BOTTOM not in d(a, b):
            report.infinite_distance_failures.append(f"{a!r},{b!r}")
        if d(a, b) == total.relations and not isomorphic(a, b, cfg):
            report.indiscernible_failures.append(f"{a!r},{b!r}")
        expected = all(
            d(a, c) <= d(b, c)
            for c in insts
            if not isomorphic(c, a, cfg)
        )
        if po_leq(a, b, cfg) != expected:
            report.order_failures.append(f"{a!r},{b!r}")
    for a, b, c in itertools.product(insts, repeat=3):
        report.triples_checked += 1
        if not d(a, b) & d(b, c) <= d(a, c):
            report.triangle_failures.append(f"{a!r},{b!r},{c!r}")
    return report


@dataclass(frozen=True)
class PullbackSquare:
    """A commuting square: corner with two legs over a cospan."""

    corner: Instance
    left: Morphism  # corner -> f.source
    right: Morphism  # corner -> g.source
    f: Morphism  # f.source -> target of the cospan
    g: Morphism  # g.source -> same target


def pullback(f: Morphism, g: Morphism) -> PullbackSquare:
    """The canonical pullback of a cospan: corner is the meet of the fluxes.

    Both legs are monomorphisms carrying the corner's closure as flux; read
    backwards the same data is the pushout of the reversed arrows.
    """
    if f.target != g.target:
        raise DomainMismatch("pullback needs a cospan with a common target")
    corner_flux = meet_closed(f.flux, g.flux)
    corner = Instance(corner_flux.relations, {})
    left = semantic_arrow(corner, f.source, corner_flux, f.cfg)
    right = semantic_arrow(corner, g.source, corner_flux, f.cfg)
    return PullbackSquare(corner, left, right, f, g)


def is_pullback_square(
    square: PullbackSquare,
    cfg: UniverseConfig,
    vertices: list[Instance],
) -> bool:
    """Verify a square is a pullback in the two-cell sense of flux semantics.

    Checks the square commutes and, for every semantic cone from every
    vertex, that exactly one arrow into the corner reproduces the cone's
    composite through both legs, and that this arrow factors below the cone
    legs in the arrow order.
    """
    fl_f = square.f.flux.relations
    fl_g = square.g.flux.relations
    fl_p1 = square.left.flux.relations
    fl_p2 = square.right.flux.relations
    if fl_f & fl_p1 != fl_g & fl_p2:
        return False
    a, b = square.f.source, square.g.source
    for v in vertices:
        homs_a = [h.relations for h in semantic_homset(v, a, cfg)]
        homs_b = [h.relations for h in semantic_homset(v, b, cfg)]
        homs_corner = [h.relations for h in semantic_homset(v, square.corner, cfg)]
        for s1 in homs_a:
            for s2 in homs_b:
                w = fl_f & s1
                if w != fl_g & s2:
                    continue
                mediators = [
                    u for u in homs_corner
                    if fl_f & fl_p1 & u == w and fl_g & fl_p2 & u == w
                ]
                if len(mediators) != 1:
                    return False
                u = mediators[0]
                if not (fl_p1 & u <= s1 and fl_p2 & u <= s2):
                    return False
    return True


def true_arrow(cfg: UniverseConfig) -> Morphism:
    """The arrow from the zero object into the classifier; transmits nothing."""
    omega = Instance(total_object(cfg).relations, {})
    zero = Instance(zero_object().relations, {})
    return empty_arrow(zero, omega, cfg)


@dataclass
class ClassifierReport:
    """Two-layer verification of a characteristic arrow."""

    subobject: Instance
    ambient: Instance
    generators: frozenset[Relation]
    generator_commutes: bool
    factorization_ok: bool
    arrows_checked: int
    char_class_size: int
    audit_intersection: frozenset[Relation]
    flagged: bool


def classifier(
    in_a: Morphism, cfg: UniverseConfig, vertices: list[Instance] | None = None
) -> tuple[Morphism, ClassifierReport]:
    """The characteristic arrow of a monomorphism, with its verification report.

    The arrow sends the ambient instance to the classifying object (the
    total object) and is generated by the bottom view-map together with one
    view-map per view of the ambient that is not a view of the subobject.
    The report checks the classifying square at the generator layer, runs
    the factorization half of the pullback property over enumerated arrows,
    counts the semantic arrows satisfying the flux-level pullback condition,
    and audits the closure of the generator set (flagged when the closure
    meets the subobject's views).
    """
    if not is_mono(in_a):
        raise NotMonic("classifier needs a monomorphism")
    if vertices is None:
        vertices = closure_classes(cfg, 1)
    ta = power_view(in_a.source, cfg).relations
    tb = power_view(in_a.target, cfg).relations
    generators = frozenset(tb - ta) | {BOTTOM}

    labeled = with_default_labels(in_a.target)
    witness = generating_queries(labeled, cfg)
    trees = [
        ViewTree(ViewMap(witness[v], labeled, v))
        for v in sorted_relations(generators)
    ]
    omega = Instance(total_object(cfg).relations, {})
    char = _morphism(
        in_a.target, omega, trees,
        power_view(Instance(generators, {}), cfg), cfg,
    )

    proper_gens = generators - {BOTTOM}
    gen_commutes = not (proper_gens & ta)
    t_a = empty_arrow(in_a.source, Instance(zero_object().relations, {}), cfg)
    true_composite = compose(true_arrow(cfg), t_a)
    gen_commutes = gen_commutes and true_composite.flux.relations == frozenset({BOTTOM})

    factor_ok = True
    checked = 0
    for v in vertices:
        for h in semantic_homset(v, in_a.target, cfg):
            checked += 1
            if h.relations & proper_gens:
                continue
            if not h.relations <= ta:
                factor_ok = False
                continue
            mediators = [
                k for k in semantic_homset(v, in_a.source, cfg)
                if ta & k.relations == h.relations
            ]
            if len(mediators) != 1:
                factor_ok = False

    class_size = 0
    for s in closed_subsets(power_view(in_a.target, cfg), cfg):
        if _flux_level_classifier_condition(s.relations, ta, vertices, in_a.target, cfg):
            class_size += 1

    audit = power_view(Instance(generators, {}), cfg).relations & ta
    flagged = audit != frozenset({BOTTOM})
    report = ClassifierReport(
        subobject=in_a.source,
        ambient=in_a.target,
        generators=generators,
        generator_commutes=gen_commutes,
        factorization_ok=factor_ok,
        arrows_checked=checked,
        char_class_size=class_size,
        audit_intersection=frozenset(audit),
        flagged=flagged,
    )
    return char, report


def _flux_level_classifier_condition(
    s: frozenset[Relation],
    ta: frozenset[Relation],
    vertices: list[Instance],
    ambient: Instance,
    cfg: UniverseConfig,
) -> bool:
    """Whether composing with flux ``s`` is trivial exactly on arrows into the
    subobject's views."""
    for v in vertices:
        for h in semantic_homset(v, ambient, cfg):
            trivial = (s & h.relations) == frozenset({BOTTOM})
            if trivial != (h.relations <= ta):
                return False
    return True


def equalizer_check(
    f: Morphism, cfg: UniverseConfig, vertices: list[Instance] | None = None
) -> bool:
    """Verify a monomorphism equalizes its characteristic arrow and the
    constant-true arrow, over enumerated test arrows at the generator layer."""
    if not is_mono(f):
        raise NotMonic("equalizer_check needs a monomorphism")
    if vertices is None:
        vertices = closure_classes(cfg, 1)
    ta = power_view(f.source, cfg).relations
    tb = power_view(f.target, cfg).relations
    proper_gens = (tb - ta) - {BOTTOM}
    # f itself equalizes: its flux avoids every generator.
    if ta & proper_gens:
        return False
    for v in vertices:
        for h in semantic_homset(v, f.target, cfg):
            if h.relations & proper_gens:
                continue  # does not equalize; no factorization required
            if not h.relations <= ta:
                return False
            mediators = [
                k for k in semantic_homset(v, f.source, cfg)
                if ta & k.relations == h.relations
            ]
            if len(mediators) != 1:
                return False
    return True


def epi_mono_factorize(f: Morphism) -> tuple[Morphism, Morphism]:
    """Factor an arrow through its flux: an epimorphism onto the flux object
    followed by a monomorphism into the target."""
    mid = Instance(f.flux.relations, {})
    tau = semantic_arrow(f.source, mid, f.flux, f.cfg)
    tau_inv = semantic_arrow(mid, f.target, f.flux, f.cfg)
    return tau, tau_inv


def factorization_minimal(
    f: Morphism, cfg: UniverseConfig, candidates: list[Instance]
) -> bool:
    """The flux object is the smallest subobject of the target through which
    the arrow factors: every monic factorization contains it, with a unique
    mediating arrow from the flux object."""
    tau, tau_inv = epi_mono_factorize(f)
    if not (is_epi_onto_flux(tau, f) and is_mono(tau_inv)):
        return False
    if not equiv(compose(tau_inv, tau), f):
        return False
    for c in candidates:
        tc = power_view(c, cfg).relations
        if not tc <= power_view(f.target, cfg).relations:
            continue  # not a subobject of the target
        if not f.flux.relations <= tc:
            continue  # the arrow does not factor through this subobject
        mediators = [
            k for k in semantic_homset(Instance(f.flux.relations, {}), c, cfg)
            if tc & k.relations == f.flux.relations
        ]
        if len(mediators) != 1:
            return False
    return True


def is_epi_onto_flux(tau: Morphism, f: Morphism) -> bool:
    return tau.flux.relations == power_view(tau.target, f.cfg).relations


def coproduct_pullback_check(
    sq1: PullbackSquare,
    sq2: PullbackSquare,
    cfg: UniverseConfig,
    vertices: list[Instance],
) -> bool:
    """Coproducts preserve pullbacks: the componentwise combination of two
    pullback squares over a shared cospan leg is again a pullback.

    The combined corner is the coproduct of the corners, the legs are the
    copairing and the arrow coproduct, and all flux algebra is componentwise
    in the tagged space (a plain flux crossing into the tagged space acts on
    both components).
    """
    if not is_pullback_square(sq1, cfg, vertices):
        raise NotAPullback("first square fails pullback verification")
    if not is_pullback_square(sq2, cfg, vertices):
        raise NotAPullback("second square fails pullback verification")
    if sq1.f.source != sq2.f.source or sq1.f.target != sq2.f.target:
        raise NotAPullback("squares do not share the cospan leg")
    if not equiv(sq1.f, sq2.f):
        raise NotAPullback("squares do not share the cospan leg")

    def zeroish(inst: Instance) -> bool:
        return all(r.is_bottom for r in inst.relations)

    # The zero object is the coproduct unit: combining with a zero corner
    # returns the other square, already verified above.
    if zeroish(sq1.corner) or zeroish(sq2.corner):
        return True

    shared = sq1.f  # k : D -> E
    combined_corner = coproduct(sq1.corner, sq2.corner)
    left_pair = copair(sq1.left, sq2.left)  # A+A1 -> D
    right_pair = arrow_coproduct(sq1.right, sq2.right)  # A+A1 -> B+B1
    bottom_pair = copair(sq1.g, sq2.g)  # B+B1 -> E

    # Corner closure decomposes componentwise.
    expected_corner = tagged_flux(
        power_view(sq1.corner, cfg), power_view(sq2.corner, cfg), cfg
    )
    if power_view(combined_corner, cfg).relations != expected_corner.relations:
        return False
    # Copairing flux is the tagged sum of the component fluxes.
    if left_pair.flux.relations != tagged_flux(sq1.left.flux, sq2.left.flux, cfg).relations:
        return False

    # Combined square commutes componentwise: a plain flux is lifted to both
    # components when it crosses into the tagged space.
    k_lifted = tagged_flux(shared.flux, shared.flux, cfg).relations
    lhs = k_lifted & left_pair.flux.relations
    rhs = bottom_pair.flux.relations & right_pair.flux.relations
    if lhs != rhs:
        return False

    # Universal property: component mediators reassemble into the unique
    # tagged mediator for every pair of component cones.
    for v1, v2 in itertools.product(vertices, repeat=2):
        for s1 in _cones(sq1, v1, cfg):
            for s2 in _cones(sq2, v2, cfg):
                u1 = _unique_mediator(sq1, v1, s1, cfg)
                u2 = _unique_mediator(sq2, v2, s2, cfg)
                if u1 is None or u2 is None:
                    return False
                combined = tagged_flux(
                    frozenset(u1), frozenset(u2), cfg
                ).relations
                p1 = left_pair.flux.relations & combined
                expected = tagged_flux(
                    frozenset(sq1.left.flux.relations & u1),
                    frozenset(sq2.left.flux.relations & u2),
                    cfg,
                ).relations
                if p1 != expected:
                    return False
    return True


def _cones(square: PullbackSquare, vertex: Instance, cfg: UniverseConfig):
    fl_f = square.f.flux.relations
    fl_g = square.g.flux.relations
    homs_a = [h.relations for h in semantic_homset(vertex, square.f.source, cfg)]
    homs_b = [h.relations for h in semantic_homset(vertex, square.g.source, cfg)]
    for s1 in homs_a:
        for s2 in homs_b:
            if fl_f & s1 == fl_g & s2:
                yield (s1, s2)


def _unique_mediator(square, vertex, cone, cfg):
    s1, s2 = cone
    fl_f = square.f.flux.relations
    fl_g = square.g.flux.relations
    fl_p1 = square.left.flux.relations
    fl_p2 = square.right.flux.relations
    w = fl_f & s1
    mediators = [
        u.relations for u in semantic_homset(vertex, square.corner, cfg)
        if fl_f & fl_p1 & u.relations == w and fl_g & fl_p2 & u.relations == w
    ]
    return mediators[0] if len(mediators) == 1 else None


@dataclass
class NegativeReport:
    """Witnesses for the properties this category fails to have."""

    pullback_epi_witness: str | None
    power_object_confirmed: bool
    power_object_candidates: int
    well_pointed_witness: str | None

    @property
    def all_confirmed(self) -> bool:
        return (
            self.pullback_epi_witness is not None
            and self.power_object_confirmed
            and self.well_pointed_witness is not None
        )


def negative_probes(cfg: UniverseConfig, max_relations: int = 4) -> NegativeReport:
    """Exhibit the negative results: pullbacks do not preserve epimorphisms,
    no instance has a power object, and the category is not well-pointed."""
    reps = closure_classes(cfg, max_relations)

    pullback_witness = None
    for c in reps:
        for a in reps:
            epis = [
                h for h in semantic_homset(a, c, cfg)
                if h.relations == power_view(c, cfg).relations
            ]
            if not epis:
                continue
            f = semantic_arrow(a, c, epis[0], cfg)
            for b in reps:
                for g_flux in semantic_homset(b, c, cfg):
                    g = semantic_arrow(b, c, g_flux, cfg)
                    square = pullback(f, g)
                    if not is_epi(square.right):
                        pullback_witness = (
                            f"epi flux {f.flux!r} against {g.flux!r}: corner "
                            f"{square.corner!r} does not cover {b!r}"
                        )
                        break
                if pullback_witness:
                    break
            if pullback_witness:
                break
        if pullback_witness:
            break

    candidates = closed_subsets(total_object(cfg), cfg)
    confirmed = True
    tried = 0
    for a in reps:
        if isomorphic(a, zero_object(), cfg):
            continue
        for p in candidates:
            tried += 1
            p_inst = Instance(p.relations, {})
            refuted = False
            for b in reps:
                sub_count = len(closed_subsets(power_view(coproduct(b, a), cfg), cfg))
                hom_count = len(semantic_homset(b, p_inst, cfg))
                if hom_count != sub_count:
                    refuted = True
                    break
            if not refuted:
                confirmed = False

    well_pointed_witness = None
    for a in reps:
        ta = power_view(a, cfg).relations
        if ta == frozenset({BOTTOM}):
            continue
        f = identity(a, cfg)
        g = empty_arrow(a, a, cfg)
        # every point out of the zero object has the zero flux
        points = semantic_homset(Instance(zero_object().relations, {}), a, cfg)
        if all(
            (f.flux.relations & pt.relations) == (g.flux.relations & pt.relations)
            for pt in points
        ) and not equiv(f, g):
            well_pointed_witness = (
                f"identity and empty arrow on {a!r} agree on all "
                f"{len(points)} points"
            )
            break

    return NegativeReport(
        pullback_epi_witness=pullback_witness,
        power_object_confirmed=confirmed,
        power_object_candidates=tried,
        well_pointed_witness=well_pointed_witness,
    )
