"""Law-check suites: randomized and exhaustive verifications of the
categorical facts the rest of the library leans on.

Each suite returns a report dict {"suite", "ok", "checked", "failures"}.
The suites are deterministic: every randomized one takes a seed.
"""

from __future__ import annotations

import random

from .adjunction import graph_interface
from .colimits import (
    copair,
    coproduct,
    full_subobject,
    pullback,
    pushout,
    sub_enumerate,
    sub_join,
    sub_meet,
)
from .cospans import StructuredCospan, compose, identity_cospan, tensor
from .presheaf import (
    Morphism,
    Presheaf,
    canonical_key,
    check_morphism,
    graph,
    hom_enumerate,
    identity,
)
from .rewriting import Grammar, Rule, derivation_search, one_step
from .squares import (
    SquareRep,
    adjoint_triangles,
    comonoid_laws,
    frobenius_check,
    interchange_check,
    special_check,
    triangle_identity_check,
    two_cell,
)


def _report(suite: str, checked: int, failures: list[str]) -> dict:
    return {
        "suite": suite,
        "ok": not failures,
        "checked": checked,
        "failures": failures,
    }


def random_graph(rng: random.Random, max_nodes: int = 3, max_edges: int = 3) -> Presheaf:
    n = rng.randint(0, max_nodes)
    e = rng.randint(0, max_edges) if n else 0
    return graph(n, [(rng.randrange(n), rng.randrange(n)) for _ in range(e)])


def random_hom(rng: random.Random, x: Presheaf, y: Presheaf) -> Morphism | None:
    homs = hom_enumerate(x, y)
    return rng.choice(homs) if homs else None


def _ckey(m: Morphism) -> tuple:
    return tuple(sorted(m.components.items()))


def _commuting_pairs(f, g, target):
    """All cocones (u, v) under the span (f, g) into ``target``."""
    us = hom_enumerate(f.target, target)
    vs = hom_enumerate(g.target, target)
    for u in us:
        fu = f.then(u)
        for v in vs:
            if fu == g.then(v):
                yield u, v


def is_pushout(f: Morphism, g: Morphism, p: Morphism, q: Morphism) -> bool:
    """The cocone (p, q) under the span (f, g) is a pushout."""
    if f.then(p) != g.then(q):
        return False
    po = pushout(f, g)
    try:
        return po.factorize(p, q).is_iso()
    except Exception:
        return False


def is_pullback(f: Morphism, g: Morphism, p: Morphism, q: Morphism) -> bool:
    """The cone (p, q) over the cospan (f, g) with p.then(f) == q.then(g)."""
    if p.then(f) != q.then(g):
        return False
    pb = pullback(f, g)
    try:
        return pb.factorize(p, q).is_iso()
    except Exception:
        return False


def pushout_oracle_suite(n: int = 200, seed: int = 0) -> dict:
    """Universal-property oracle: every enumerated (co)cone into a pool of
    small targets factors through the computed pushout/pullback uniquely."""
    rng = random.Random(seed)
    pool = [graph(0, []), graph(1, []), graph(2, []), graph(1, [(0, 0)]),
            graph(2, [(0, 1)]), graph(2, [(0, 1), (1, 0)])]
    failures: list[str] = []
    checked = 0
    for i in range(n):
        a = random_graph(rng)
        x, y = random_graph(rng), random_graph(rng)
        f, g = random_hom(rng, a, x), random_hom(rng, a, y)
        if f is None or g is None:
            continue
        if i % 2 == 0:
            po = pushout(f, g)
            targets = pool + ([po.apex] if po.apex.total_size() <= 6 else [])
            for t in targets:
                # index every hom out of the apex by the cocone it restricts to
                by_cocone: dict[tuple, list] = {}
                for h in hom_enumerate(po.apex, t):
                    key = (_ckey(po.left.then(h)), _ckey(po.right.then(h)))
                    by_cocone.setdefault(key, []).append(h)
                for u, v in _commuting_pairs(f, g, t):
                    checked += 1
                    med = po.factorize(u, v)
                    if by_cocone.get((_ckey(u), _ckey(v))) != [med]:
                        failures.append(f"pushout #{i}: mediator not unique")
        else:
            # a cospan x -> a <- y and its pullback
            fx, gy = random_hom(rng, x, a), random_hom(rng, y, a)
            if fx is None or gy is None:
                continue
            pb = pullback(fx, gy)
            sources = pool + ([pb.apex] if pb.apex.total_size() <= 6 else [])
            for t in sources:
                by_cone: dict[tuple, list] = {}
                for h in hom_enumerate(t, pb.apex):
                    key = (_ckey(h.then(pb.left)), _ckey(h.then(pb.right)))
                    by_cone.setdefault(key, []).append(h)
                for u in hom_enumerate(t, x):
                    for v in hom_enumerate(t, y):
                        if u.then(fx) != v.then(gy):
                            continue
                        checked += 1
                        med = pb.factorize(u, v)
                        if by_cone.get((_ckey(u), _ckey(v))) != [med]:
                            failures.append(f"pullback #{i}: mediator not unique")
    return _report("pushout-oracle", checked, failures)


def _mono_span(rng: random.Random):
    """A span y <-mono- a -> z built from a random subobject inclusion."""
    x = random_graph(rng, 3, 3)
    subs = sub_enumerate(x)
    a = rng.choice(subs)
    z = random_graph(rng, 3, 3)
    g = random_hom(rng, a.domain(), z)
    if g is None:
        return None
    return a.inclusion(), g


def adhesive_suite(n: int = 100, seed: int = 1) -> dict:
    """Monos are stable under pushout; pushouts along monos are pullbacks;
    the coproduct-quotient square of a mono-extended span is a pushout with
    monic comparison arrows; and the Van Kampen cube condition, both ways."""
    rng = random.Random(seed)
    failures: list[str] = []
    checked = 0
    for i in range(n):
        span = _mono_span(rng)
        if span is None:
            continue
        m, g = span
        po = pushout(m, g)
        checked += 1
        if not po.right.is_mono():
            failures.append(f"#{i}: pushout of mono not mono")
        if not is_pullback(po.left, po.right, m, g):
            failures.append(f"#{i}: pushout along mono not a pullback")
    for i in range(n):
        if not _quotient_map_instance(rng):
            failures.append(f"quotient-map instance #{i} failed")
        checked += 1
    vk = _vk_cube_suite(rng, n)
    checked += vk[0]
    failures += vk[1]
    return _report("adhesive", checked, failures)


def _quotient_map_instance(rng: random.Random) -> bool:
    """Extend a span by monos on both feet: the square of induced maps
    between coproducts and pushout apexes is again a pushout, monic sides."""
    y = random_graph(rng, 2, 2)
    x, z = random_graph(rng, 3, 2), random_graph(rng, 3, 2)
    f, g = random_hom(rng, y, x), random_hom(rng, y, z)
    if f is None or g is None:
        return True
    jx, jz = random_graph(rng, 2, 1), random_graph(rng, 2, 1)
    xp, ix, _ = coproduct(x, jx)
    zp, iz, _ = coproduct(z, jz)
    fp, gp = f.then(ix), g.then(iz)
    top = pushout(f, g)
    bot = pushout(fp, gp)
    xz, i1, i2 = coproduct(x, z)
    xzp, i1p, i2p = coproduct(xp, zp)
    rho = copair(top.left, top.right)
    rho_p = copair(bot.left, bot.right)
    gamma = copair(ix.then(i1p), iz.then(i2p))
    gamma_p = top.factorize(ix.then(bot.left), iz.then(bot.right))
    if not (gamma.is_mono() and gamma_p.is_mono()):
        return False
    return is_pushout(rho, gamma, gamma_p, rho_p)


def _vk_cube_suite(rng: random.Random, n: int) -> tuple[int, list[str]]:
    """Cubes of subobjects: top/bottom faces are meets (pullbacks of monos),
    front faces are joins-over-meets (pushouts).  The back faces must be
    pushouts exactly when the bottom face is the pullback."""
    failures = []
    checked = 0
    for i in range(n):
        bf = random_graph(rng, 3, 2)
        subs = sub_enumerate(bf)
        full = full_subobject(bf)
        tf, bl, br = (rng.choice(subs) for _ in range(3))
        if sub_join(tf, bl) != full or sub_join(tf, br) != full:
            continue
        tl, tr = sub_meet(tf, bl), sub_meet(tf, br)
        tb, bb = sub_meet(tl, tr), sub_meet(bl, br)
        checked += 1
        if not (_sub_square_pushout(tl, tf, bl, full) and _sub_square_pushout(tr, tf, br, full)):
            failures.append(f"vk #{i}: front faces not pushouts")
            continue
        if not (_sub_square_pushout(tb, tl, bb, bl) and _sub_square_pushout(tb, tr, bb, br)):
            failures.append(f"vk #{i}: back faces not pushouts over pullback bottom")
        # shrink the bottom apex below the meet: the bottom face stops being
        # a pullback and some back face must stop being a pushout
        smaller = [
            s for s in sub_enumerate(bf)
            if s != bb and _sub_leq(s, bb) and _sub_leq(tb, s)
        ]
        if smaller:
            bb2 = rng.choice(smaller)
            checked += 1
            if _sub_square_pushout(tb, tl, bb2, bl) and _sub_square_pushout(tb, tr, bb2, br):
                failures.append(f"vk #{i}: non-pullback bottom with pushout backs")
    return checked, failures


def _sub_leq(s1, s2) -> bool:
    return all(set(s1.members[k]) <= set(s2.members[k]) for k in s1.members)


def _sub_incl(small, big) -> Morphism:
    """Inclusion of one subobject's domain into a larger one's."""
    idx = {
        s: {m: i for i, m in enumerate(sorted(big.members[s]))}
        for s in big.members
    }
    comps = {
        s: tuple(idx[s][m] for m in sorted(small.members[s]))
        for s in small.members
    }
    return check_morphism(Morphism(small.domain(), big.domain(), comps))


def _sub_square_pushout(a, b, c, d) -> bool:
    """a <= b, a <= c, b,c <= d as subobjects: is the inclusion square a pushout?"""
    return is_pushout(_sub_incl(a, b), _sub_incl(a, c), _sub_incl(b, d), _sub_incl(c, d))


def _random_globular(rng: random.Random, top: StructuredCospan, fine: bool) -> SquareRep:
    """A square under ``top``: either glue junk below (monic, fine) or merge
    two apex nodes (a quotient, bold)."""
    apex = top.apex
    if fine or apex.size("n") < 2 or rng.random() < 0.5:
        junk = random_graph(rng, 2, 1)
        bigger, inl, _ = coproduct(apex, junk)
        down = inl
    else:
        u, v = rng.sample(range(apex.size("n")), 2)
        point = graph(1, [])
        two = graph(2, [])
        m = check_morphism(Morphism(two, apex, {"n": (u, v), "e": ()}))
        collapse = check_morphism(Morphism(two, point, {"n": (0, 0), "e": ()}))
        po = pushout(m, collapse)
        bigger, down = po.apex, po.left
    bot = StructuredCospan(
        top.interface, top.left_foot, top.right_foot, bigger,
        top.left_leg.then(down), top.right_leg.then(down),
    )
    return two_cell(top, bot, top, identity(apex), down, fine)


def _random_cospan(rng: random.Random, iface, a: int, b: int) -> StructuredCospan:
    apex = random_graph(rng, 3, 2)
    pool = list(hom_enumerate(iface.L_apply(a), apex)), list(
        hom_enumerate(iface.L_apply(b), apex)
    )
    if not pool[0] or not pool[1]:
        apex = graph(max(a, b, 1), [])
        return StructuredCospan(
            iface, a, b, apex,
            check_morphism(Morphism(iface.L_apply(a), apex,
                                    {"n": tuple(range(a)), "e": ()})),
            check_morphism(Morphism(iface.L_apply(b), apex,
                                    {"n": tuple(min(j, apex.size("n") - 1) for j in range(b)),
                                     "e": ()})),
        )
    return StructuredCospan(iface, a, b, apex, rng.choice(pool[0]), rng.choice(pool[1]))


def interchange_suite(n_fine: int = 100, n_bold: int = 50, seed: int = 2) -> dict:
    """Horizontal-then-vertical equals vertical-then-horizontal on random
    composable 2x2 grids of squares."""
    rng = random.Random(seed)
    iface = graph_interface()
    failures: list[str] = []
    checked = 0
    for kind, count in (("fine", n_fine), ("bold", n_bold)):
        fine = kind == "fine"
        for i in range(count):
            a, b, c = (rng.randint(0, 2) for _ in range(3))
            t1 = _random_cospan(rng, iface, a, b)
            t2 = _random_cospan(rng, iface, b, c)
            s11 = _random_globular(rng, t1, fine)
            s12 = _random_globular(rng, t2, fine)
            s21 = _random_globular(rng, s11.bot, fine)
            s22 = _random_globular(rng, s12.bot, fine)
            checked += 1
            ok, _ = interchange_check(s11, s12, s21, s22)
            if not ok:
                failures.append(f"{kind} grid #{i}")
    return _report("interchange", checked, failures)


def frobenius_suite(max_size: int = 3) -> dict:
    """Comonoid laws, Frobenius, specialness and the adjunction triangles
    for the copy/discard structure on every interface object up to a bound."""
    iface = graph_interface()
    failures: list[str] = []
    checked = 0
    for a in range(max_size + 1):
        for name, ok in comonoid_laws(iface, a).items():
            checked += 1
            if not ok:
                failures.append(f"|a|={a}: {name}")
        for name, check in (
            ("frobenius", frobenius_check),
            ("special", special_check),
        ):
            checked += 1
            if not check(iface, a):
                failures.append(f"|a|={a}: {name}")
        for name, ok in adjoint_triangles(iface, a).items():
            checked += 1
            if not ok:
                failures.append(f"|a|={a}: {name}")
        for which in ("copy", "discard"):
            checked += 1
            if not triangle_identity_check(iface, a, which):
                failures.append(f"|a|={a}: {which} triangle 2-cells")
    return _report("frobenius", checked, failures)


def snake_suite(max_size: int = 3) -> dict:
    """Compact closure: both snake composites are the identity cospan."""
    from .cospans import coevaluation, evaluation

    iface = graph_interface()
    failures: list[str] = []
    checked = 0
    for a in range(max_size + 1):
        ida = identity_cospan(iface, a)
        ev, coev = evaluation(iface, a), coevaluation(iface, a)
        lhs = compose(tensor(ida, coev), tensor(ev, ida))
        rhs = compose(tensor(coev, ida), tensor(ida, ev))
        for name, c in (("snake-left", lhs), ("snake-right", rhs)):
            checked += 1
            if c.key() != ida.key():
                failures.append(f"|a|={a}: {name}")
    return _report("snake", checked, failures)


def loop_grammar() -> Grammar:
    """Deletes one loop: node+loop <- node -> node."""
    point = graph(1, [])
    looped = graph(1, [(0, 0)])
    leg = check_morphism(Morphism(point, looped, {"n": (0,), "e": ()}))
    return Grammar(graph_interface(), (
        Rule("drop-loop", looped, point, point, leg, identity(point)),
    ))


def edge_grammar() -> Grammar:
    """Collapses one edge to a node, merging its endpoints (bold)."""
    two = graph(2, [(0, 1)])
    ends = graph(2, [])
    point = graph(1, [])
    leg_l = check_morphism(Morphism(ends, two, {"n": (0, 1), "e": ()}))
    leg_r = check_morphism(Morphism(ends, point, {"n": (0, 0), "e": ()}))
    return Grammar(graph_interface(), (
        Rule("collapse-edge", two, ends, point, leg_l, leg_r, "bold"),
    ))


def discrete_grammar_suite(bounds: dict[str, int] | None = None) -> dict:
    """One-step relations of a grammar and its discretization coincide."""
    from .language import discrete_equivalence_check

    bounds = bounds or {"n": 3, "e": 3}
    failures: list[str] = []
    checked = 0
    for g in (loop_grammar(), edge_grammar()):
        report = discrete_equivalence_check(g, bounds)
        checked += 1
        failures += [f"{g.rules[0].name}: {line}" for line in report]
    return _report("discrete-grammar", checked, failures)


def inductive_rewriting_suite(max_nodes: int = 4, depth: int = 3, seed: int = 3) -> dict:
    """Derivations between closed systems exist exactly when a lifted square
    does, and every converted square validates."""
    from .language import enumerate_hosts, lift_grammar, square_search
    from .squares import validate_square

    rng = random.Random(seed)
    g = loop_grammar()
    lifted = lift_grammar(g)
    hosts = enumerate_hosts(graph_interface(), {"n": max_nodes, "e": 3})
    rng.shuffle(hosts)
    failures: list[str] = []
    checked = 0
    for h in hosts[:12]:
        reachable = {canonical_key(h)}
        frontier = [h]
        for _ in range(depth):
            nxt = []
            for cur in frontier:
                for st in one_step(g, cur):
                    k = canonical_key(st.result)
                    if k not in reachable:
                        reachable.add(k)
                        nxt.append(st.result)
            frontier = nxt
        for target in hosts[:12]:
            want = canonical_key(target) in reachable
            d = derivation_search(g, h, target, depth)
            sq = square_search(lifted, h, target, depth)
            checked += 1
            if (d is not None) != want or (sq is not None) != want:
                failures.append(f"{h.carriers}->{target.carriers}: existence mismatch")
            elif sq is not None and validate_square(sq):
                failures.append(f"{h.carriers}->{target.carriers}: square invalid")
    return _report("inductive-rewriting", checked, failures)


SUITES = {
    "pushout-oracle": pushout_oracle_suite,
    "adhesive": adhesive_suite,
    "interchange": interchange_suite,
    "frobenius": frobenius_suite,
    "snake": snake_suite,
    "discrete-grammar": discrete_grammar_suite,
    "inductive-rewriting": inductive_rewriting_suite,
}


def run_suite(name: str, **kwargs) -> dict:
    if name not in SUITES:
        raise KeyError(name)
    return SUITES[name](**kwargs)
