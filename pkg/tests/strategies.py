"""Shared hypothesis strategies and naive oracles."""

from itertools import combinations

from hypothesis import strategies as st

from topomodal.topology import FiniteTopology, close_family

LABELS = "abcde"


@st.composite
def topologies(draw, max_n=5):
    n = draw(st.integers(1, max_n))
    full = (1 << n) - 1
    gens = draw(st.lists(st.integers(0, full), max_size=2 * n))
    return FiniteTopology(tuple(LABELS[:n]), close_family(n, gens))


def naive_close(n, gens):
    """Fixpoint closure under pairwise union and intersection, plus the two trivial opens."""
    fam = {0, (1 << n) - 1, *gens}
    while True:
        new = {a | b for a, b in combinations(fam, 2)} | {a & b for a, b in combinations(fam, 2)}
        if new <= fam:
            return fam
        fam |= new


def naive_interior(T, a):
    return max((u for u in T.opens if u & ~a == 0), key=lambda u: bin(u).count("1"))


def random_formula(rng, depth=4):
    """Any-connective formula over p, q, r for parser round trips."""
    from topomodal.formula import (
        And, Atom, Bot, Box, Diamond, Implies, NegClosed, NegOpen, NotClassical, Or, Top,
    )

    if depth == 0 or rng.random() < 0.25:
        return rng.choice([Atom("p"), Atom("q"), Atom("r"), Atom("x_1"), Top(), Bot()])
    k = rng.randrange(8)
    if k < 5:
        op = (NotClassical, NegClosed, NegOpen, Box, Diamond)[k]
        return op(random_formula(rng, depth - 1))
    op = (And, Or, Implies)[k - 5]
    return op(random_formula(rng, depth - 1), random_formula(rng, depth - 1))


def naive_formulas(atom_names, depth, unary, binary, size_cap):
    """Every formula up to ``size_cap`` nodes by direct recursion, then filtered on depth."""
    from topomodal.formula import Atom, Bot, Top, modal_depth

    by_size = {1: [Atom(a) for a in atom_names] + [Top(), Bot()]}
    for s in range(2, size_cap + 1):
        out = [op(f) for op in unary for f in by_size[s - 1]]
        for k in range(1, s - 1):
            out += [op(l, r) for op in binary for l in by_size[k] for r in by_size[s - 1 - k]]
        by_size[s] = out
    return [f for s in by_size for f in by_size[s] if modal_depth(f) <= depth]


def legal(T, regime):
    from topomodal.formula import Regime

    if regime is Regime.PARACONSISTENT:
        return list(T.closed_sets())
    if regime is Regime.PARACOMPLETE:
        return list(T.opens)
    return list(range(T.whole + 1))


@st.composite
def models(draw, regimes=None, max_n=4, atom_names=("p", "q")):
    from topomodal.formula import Regime
    from topomodal.semantics import model_from_masks

    T = draw(topologies(max_n))
    regime = draw(st.sampled_from(regimes or list(Regime)))
    sets = legal(T, regime)
    val = {a: draw(st.sampled_from(sets)) for a in atom_names}
    return model_from_masks(T, regime, val)


def naive_eval(model, f):
    """Label-set evaluator written against the definitions, without bit tricks."""
    from topomodal import formula as F

    S = set(model.points)
    opens = [set(model.topology.labels(u)) for u in model.topology.opens]

    def interior(A):
        out = set()
        for u in opens:
            if u <= A:
                out |= u
        return out

    def closure(A):
        return S - interior(S - A)

    def ev(f):
        if isinstance(f, F.Atom):
            return set(model.topology.labels(model.value(f.name)))
        if isinstance(f, F.Top):
            return set(S)
        if isinstance(f, F.Bot):
            return set()
        if isinstance(f, F.And):
            return ev(f.left) & ev(f.right)
        if isinstance(f, F.Or):
            return ev(f.left) | ev(f.right)
        if isinstance(f, F.Implies):
            return (S - ev(f.left)) | ev(f.right)
        if isinstance(f, F.NotClassical):
            return S - ev(f.sub)
        if isinstance(f, F.NegClosed):
            return closure(S - ev(f.sub))
        if isinstance(f, F.NegOpen):
            return interior(S - ev(f.sub))
        if isinstance(f, F.Box):
            return interior(ev(f.sub))
        return closure(ev(f.sub))

    return ev(f)


@st.composite
def maps_between(draw, max_n=4, regimes=None, continuous=False):
    """A source model, a target topology and a total map (optionally continuous)."""
    from topomodal.mappings import PointMap, is_continuous

    m = draw(models(regimes=regimes, max_n=max_n, atom_names=("p",)))
    T = draw(topologies(max_n))
    images = tuple(draw(st.lists(st.integers(0, T.n - 1), min_size=m.topology.n, max_size=m.topology.n)))
    f = PointMap(m, T, images)
    if continuous:
        from hypothesis import assume

        assume(is_continuous(f))
    return f


@st.composite
def homeomorphic_pairs(draw, max_n=5, regimes=None):
    """A model and a random carrier permutation carrying it onto a relabelled copy."""
    from topomodal.mappings import PointMap, transport

    m = draw(models(regimes=regimes, max_n=max_n))
    perm = tuple(draw(st.permutations(range(m.topology.n))))
    copy = transport(m, perm, [c.upper() for c in m.points])
    return m, copy, PointMap(m, copy.topology, perm)


def kripke_eval(K, f):
    """Direct relational evaluation over the reflexive-transitive closure of ``K``."""
    from topomodal import formula as F

    succ = {p: {p} for p in K.points}
    changed = True
    for a, b in K.edges:
        succ[a].add(b)
    while changed:
        changed = False
        for p in K.points:
            new = set().union(*(succ[q] for q in succ[p]))
            if not new <= succ[p]:
                succ[p] |= new
                changed = True
    W = set(K.points)

    def ev(f):
        if isinstance(f, F.Atom):
            return set(K.valuation.get(f.name, ()))
        if isinstance(f, F.Top):
            return set(W)
        if isinstance(f, F.Bot):
            return set()
        if isinstance(f, F.And):
            return ev(f.left) & ev(f.right)
        if isinstance(f, F.Or):
            return ev(f.left) | ev(f.right)
        if isinstance(f, F.Implies):
            return (W - ev(f.left)) | ev(f.right)
        if isinstance(f, F.NotClassical):
            return W - ev(f.sub)
        sub = ev(f.sub)
        if isinstance(f, F.Box):
            return {w for w in W if succ[w] <= sub}
        if isinstance(f, F.Diamond):
            return {w for w in W if succ[w] & sub}
        raise TypeError(f)

    return ev(f)


def robustness_oracle(mi, mj, emb, depth=3, size_cap=5):
    """Verdict from enumerated formulas, with ``emb`` placing each point of ``mj`` in ``mi``."""
    from topomodal.formula import enumerate_formulas
    from topomodal.semantics import Evaluator
    from topomodal.topology import members

    ei, ej = Evaluator(mi, check=False), Evaluator(mj, check=False)
    more = less = True
    for f in enumerate_formulas(mi.atoms, depth, mi.regime, size_cap):
        a = ei(f)
        b = sum(1 << emb[k] for k in members(ej(f)))
        more = more and not b & ~a
        less = less and not a & ~b
    return {
        (True, True): "EquallyRobust",
        (True, False): "MoreRobust",
        (False, True): "LessRobust",
        (False, False): "Incomparable",
    }[(more, less)]


def restrict(model, keep):
    """Submodel on the points in ``keep`` (a mask), subspace topology, restricted valuation."""
    from topomodal.semantics import model_from_masks
    from topomodal.topology import members

    idx = {e: k for k, e in enumerate(members(keep))}
    val = {a: sum(1 << idx[e] for e in members(m) if e in idx) for a, m in model.valuation}
    return model_from_masks(model.topology.subspace(keep), model.regime, val)


def robustness_pair(rng, n_max=4):
    """Seeded classical pair: odd draws embed a submodel, even draws share the carrier."""
    from topomodal.formula import Regime
    from topomodal.proplab import random_model, random_topology

    n = rng.randint(1, n_max)
    mi = random_model(rng, random_topology(rng, n), Regime.CLASSICAL, ("p",))
    if rng.random() < 0.5:
        keep = sum(1 << e for e in rng.sample(range(n), rng.randint(1, n)))
        mj = restrict(mi, keep)
    else:
        mj = random_model(rng, random_topology(rng, n), Regime.CLASSICAL, ("p",))
    emb = [mi.points.index(p) for p in mj.points]
    return mi, mj, emb


def robustness_triple(rng, n_max=4):
    """Three classical models, each later one usually a submodel of the one before."""
    from topomodal.formula import Regime
    from topomodal.proplab import random_model, random_topology

    n = rng.randint(1, n_max)
    models = [random_model(rng, random_topology(rng, n), Regime.CLASSICAL, ("p",))]
    for _ in range(2):
        prev = models[-1]
        if rng.random() < 0.8:
            k = prev.topology.n
            keep = sum(1 << e for e in rng.sample(range(k), rng.randint(1, k)))
            models.append(restrict(prev, keep))
        else:
            models.append(random_model(rng, random_topology(rng, prev.topology.n), Regime.CLASSICAL, ("p",)))
            models[-1] = type(models[-1])(
                models[-1].topology.relabel(prev.points), Regime.CLASSICAL, models[-1].valuation
            )
    return models


def at_least_as_robust(mi, mj):
    from topomodal.robustness import Verdict, robustness_compare

    return robustness_compare(mi, mj).verdict in (Verdict.MORE_ROBUST, Verdict.EQUALLY_ROBUST)
