"""Finite modules over the Steenrod algebra given by basis and action tables.

A presentation lists named basis classes with degrees, the single squares
Sq^s on basis classes (Sq^0 is the identity and never stored), and an
optional cup-product table.  Validation checks degree bookkeeping, the
instability condition Sq^s x = 0 for s > |x|, and consistency of the table
with the Adem relations.  Presentations are immutable; all operations
return new ones.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple

from . import f2linalg, steenrod

ElementSum = FrozenSet[str]

EMPTY: ElementSum = frozenset()


class ModuleError(Exception):
    pass


class DesuspensionNotUnstable(ModuleError):
    pass


class ResultNotAModule(ModuleError):
    pass


class ModuleValidationError(ModuleError):
    def __init__(self, violations: Sequence["Violation"]):
        self.violations = list(violations)
        lines = "; ".join(str(v) for v in violations[:8])
        more = "" if len(violations) <= 8 else f" (+{len(violations) - 8} more)"
        super().__init__(f"invalid module: {lines}{more}")


@dataclass(frozen=True)
class Violation:
    kind: str  # "degree" | "instability" | "adem"
    subject: Tuple
    detail: str

    def __str__(self) -> str:
        return f"{self.kind}{self.subject}: {self.detail}"


def _freeze_table(table: Optional[Mapping]) -> Dict:
    out = {}
    if table:
        for key, val in table.items():
            val = frozenset(val)
            if val:
                out[key] = val
    return out


@dataclass(frozen=True, eq=False)
class ModulePresentation:
    name: str
    basis: Tuple[Tuple[str, int], ...]
    action: Mapping[Tuple[int, str], ElementSum] = field(default_factory=dict)
    cup: Optional[Mapping[Tuple[str, str], ElementSum]] = None

    def __post_init__(self):
        object.__setattr__(self, "basis", tuple((str(n), int(d)) for n, d in self.basis))
        names = [n for n, _ in self.basis]
        if len(set(names)) != len(names):
            raise ModuleError("duplicate basis names")
        object.__setattr__(self, "action", _freeze_table(self.action))
        object.__setattr__(
            self, "cup", None if self.cup is None else _freeze_table(self.cup)
        )
        object.__setattr__(self, "_degree", dict(self.basis))
        object.__setattr__(self, "_order", {n: i for i, n in enumerate(names)})

    # structural equality ignoring the name label
    def __eq__(self, other) -> bool:
        if not isinstance(other, ModulePresentation):
            return NotImplemented
        return (
            self.basis == other.basis
            and self.action == other.action
            and self.cup == other.cup
        )

    def __repr__(self) -> str:
        return f"ModulePresentation({self.name!r}, dim={len(self.basis)})"

    # -- queries ---------------------------------------------------------

    def degree(self, name: str) -> int:
        return self._degree[name]

    def names(self) -> Tuple[str, ...]:
        return tuple(n for n, _ in self.basis)

    def degrees_present(self) -> Tuple[int, ...]:
        return tuple(sorted({d for _, d in self.basis}))

    @property
    def low(self) -> Optional[int]:
        """c: lowest degree with a nonzero class (None for the zero module)."""
        return min((d for _, d in self.basis), default=None)

    @property
    def high(self) -> Optional[int]:
        """e: highest degree with a nonzero class."""
        return max((d for _, d in self.basis), default=None)

    def in_degree(self, d: int) -> Tuple[str, ...]:
        return tuple(n for n, deg in self.basis if deg == d)

    def sq(self, s: int, name: str) -> ElementSum:
        if s == 0:
            return frozenset({name})
        return self.action.get((s, name), EMPTY)

    def sq_sum(self, s: int, elem: Iterable[str]) -> ElementSum:
        acc: set = set()
        for x in elem:
            acc ^= self.sq(s, x)
        return frozenset(acc)

    def act_word(self, word: Sequence[int], elem: Iterable[str]) -> ElementSum:
        out = frozenset(elem)
        for s in reversed(tuple(word)):
            out = self.sq_sum(s, out)
            if not out:
                break
        return out

    def act_element(self, e: steenrod.SteenrodElement, elem: Iterable[str]) -> ElementSum:
        acc: set = set()
        src = frozenset(elem)
        for w in e.monomials:
            acc ^= self.act_word(w, src)
        return frozenset(acc)

    def cup_get(self, x: str, y: str) -> ElementSum:
        """Cup product of basis classes; falls back to the swapped pair."""
        if self.cup is None:
            return EMPTY
        got = self.cup.get((x, y))
        if got is None:
            got = self.cup.get((y, x), EMPTY)
        return got

    def cup_sum(self, a: Iterable[str], b: Iterable[str]) -> ElementSum:
        acc: set = set()
        for x in a:
            for y in b:
                acc ^= self.cup_get(x, y)
        return frozenset(acc)

    def sort_key(self, name: str) -> Tuple[int, int]:
        return (self._degree[name], self._order[name])

    def format_sum(self, elem: Iterable[str]) -> str:
        elems = sorted(elem, key=self.sort_key)
        return " + ".join(elems) if elems else "0"


def _structure_violations(p: ModulePresentation) -> List[Violation]:
    """Degree bookkeeping and instability only (no Adem sweep)."""
    out: List[Violation] = []
    names = set(p.names())
    for (s, x), targets in sorted(p.action.items(), key=lambda kv: (kv[0][0], kv[0][1])):
        if s < 1:
            out.append(Violation("degree", (s, x), "stored square with s < 1"))
            continue
        if x not in names:
            out.append(Violation("degree", (s, x), "source not in basis"))
            continue
        want = p.degree(x) + s
        for t in sorted(targets):
            if t not in names:
                out.append(Violation("degree", (s, x), f"target {t} not in basis"))
            elif p.degree(t) != want:
                out.append(
                    Violation(
                        "degree",
                        (s, x),
                        f"target {t} has degree {p.degree(t)}, expected {want}",
                    )
                )
    if p.cup is not None:
        for (x, y), targets in sorted(p.cup.items()):
            if x not in names or y not in names:
                out.append(Violation("degree", (x, y), "cup factor not in basis"))
                continue
            want = p.degree(x) + p.degree(y)
            for t in sorted(targets):
                if t not in names:
                    out.append(Violation("degree", (x, y), f"cup target {t} not in basis"))
                elif p.degree(t) != want:
                    out.append(
                        Violation(
                            "degree",
                            (x, y),
                            f"cup target {t} has degree {p.degree(t)}, expected {want}",
                        )
                    )
    if out:
        return out  # degree bookkeeping must hold before the other checks

    for name, d in p.basis:
        if d < 0:
            out.append(Violation("instability", (0, name), "class below degree 0 (Sq^0 = id)"))
    for (s, x), targets in sorted(p.action.items()):
        if s > p.degree(x) and targets:
            out.append(
                Violation("instability", (s, x), f"Sq^{s} nonzero on a degree-{p.degree(x)} class")
            )
    return out


def validate(p: ModulePresentation) -> List[Violation]:
    """Every violated (relation, element) pair; empty list means valid."""
    if getattr(p, "_valid_ok", False):
        return []
    out = _structure_violations(p)
    e = p.high
    if not out and e is not None:
        for name, d in p.basis:
            for b in range(1, e - d + 1):
                for a in range(1, min(2 * b - 1, e - d - b) + 1):
                    lhs = p.act_word((a, b), (name,))
                    rhs = p.act_element(steenrod.adem_normal_form((a, b)), (name,))
                    if lhs != rhs:
                        out.append(
                            Violation(
                                "adem",
                                (a, b, name),
                                f"Sq^{a}Sq^{b}({name}) = {p.format_sum(lhs)} but its "
                                f"Adem expansion gives {p.format_sum(rhs)}",
                            )
                        )
    return out


def require_valid(p: ModulePresentation) -> ModulePresentation:
    violations = validate(p)
    if violations:
        raise ModuleValidationError(violations)
    object.__setattr__(p, "_valid_ok", True)
    return p


# ---------------------------------------------------------------------------
# Constructors
# ---------------------------------------------------------------------------

def phi_name(i: int) -> str:
    return f"t{1 << i}"


@dataclass(frozen=True, eq=False)
class PhiModule(ModulePresentation):
    k: int = 0
    l: int = 0


def phi(k: int, l: int) -> PhiModule:
    """The module on t^{2^k}, ..., t^{2^l} with Sq^{2^i} t^{2^i} = t^{2^{i+1}}."""
    if k < 0 or l < k:
        raise ModuleError(f"phi requires 0 <= k <= l, got ({k}, {l})")
    basis = tuple((phi_name(i), 1 << i) for i in range(k, l + 1))
    action = {
        (1 << i, phi_name(i)): frozenset({phi_name(i + 1)}) for i in range(k, l)
    }
    out = PhiModule(
        name=f"phi_{k}_{l}", basis=basis, action=action, cup=None, k=k, l=l
    )
    require_valid(out)
    return out


def tensor_name(x: str, i: int) -> str:
    return f"{x}@t{1 << i}"


def tensor_phi(m: ModulePresentation, k: int, width: int = 2) -> ModulePresentation:
    """M tensor Phi(k, k+width), with the action given by the Cartan rule.

    Sq^s(x (x) t^{2^i}) = Sq^s(x) (x) t^{2^i} + Sq^{s-2^i}(x) (x) t^{2^{i+1}},
    the second term present only for s >= 2^i and i < k+width.

    The output is well-formed by construction and not revalidated here
    (full validation of large tensor products normal-forms high-degree
    words); the test suite validates a grid of instances.
    """
    require_valid(m)
    if k < 0 or width < 0:
        raise ModuleError("k and width must be >= 0")
    basis = []
    for i in range(k, k + width + 1):
        for x, d in m.basis:
            basis.append((tensor_name(x, i), d + (1 << i)))
    action: Dict[Tuple[int, str], ElementSum] = {}
    spread = (m.high - m.low) if m.basis else 0
    for i in range(k, k + width + 1):
        p2 = 1 << i
        for x, d in m.basis:
            for s in range(1, spread + p2 + 1):
                acc: set = set()
                acc ^= {tensor_name(y, i) for y in m.sq(s, x)}
                if s >= p2 and i < k + width:
                    acc ^= {tensor_name(y, i + 1) for y in m.sq(s - p2, x)}
                if acc:
                    action[(s, tensor_name(x, i))] = frozenset(acc)
    out = ModulePresentation(
        name=f"{m.name}(x)phi_{k}_{k + width}", basis=tuple(basis), action=action, cup=None
    )
    return out


def suspend(m: ModulePresentation, n: int) -> ModulePresentation:
    """Degree shift by n; for n < 0 the result must still be unstable."""
    basis = tuple((x, d + n) for x, d in m.basis)
    out = ModulePresentation(name=m.name, basis=basis, action=m.action, cup=None)
    if n < 0:
        violations = [v for v in validate(out) if v.kind == "instability"]
        if violations:
            raise DesuspensionNotUnstable(
                f"desuspension by {-n} breaks instability: "
                + "; ".join(str(v) for v in violations)
            )
    return out


def desuspend_graded(m: ModulePresentation, n: int) -> ModulePresentation:
    """Degree shift by -n as a graded object, without the instability check."""
    basis = tuple((x, d - n) for x, d in m.basis)
    return ModulePresentation(name=m.name, basis=basis, action=m.action, cup=m.cup)


def with_cup(m: ModulePresentation, cup: Mapping[Tuple[str, str], Iterable[str]]) -> ModulePresentation:
    return ModulePresentation(
        name=m.name,
        basis=m.basis,
        action=m.action,
        cup={k: frozenset(v) for k, v in cup.items()},
    )


def rename(m: ModulePresentation, mapping: Mapping[str, str], name: Optional[str] = None) -> ModulePresentation:
    def r(x: str) -> str:
        return mapping.get(x, x)

    basis = tuple((r(x), d) for x, d in m.basis)
    action = {(s, r(x)): frozenset(r(t) for t in v) for (s, x), v in m.action.items()}
    cup = None
    if m.cup is not None:
        cup = {(r(x), r(y)): frozenset(r(t) for t in v) for (x, y), v in m.cup.items()}
    return ModulePresentation(name=name or m.name, basis=basis, action=action, cup=cup)


# ---------------------------------------------------------------------------
# Structural operations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DistinguishedTriple:
    """The classes a, b, c over a witness x of degree d in M (x) Phi(k, k+2):
    |a| = d+2^k, |b| = d+2^{k+1}, |c| = d+2^{k+2}, Sq^{2^k}a = b,
    Sq^{2^{k+1}}b = c and Sq^d c != 0."""

    a: str
    b: str
    c: str
    d: int
    k: int


def distinguished_triple(m: ModulePresentation, k: int) -> Optional[DistinguishedTriple]:
    """Locate the triple in tensor_phi(m, k), verified against its table."""
    witness = not_desuspendable_witness(m)
    if witness is None:
        return None
    x, d = witness
    t = tensor_phi(m, k)
    a, b, c = (tensor_name(x, k + i) for i in range(3))
    tri = DistinguishedTriple(a, b, c, d, k)
    ok = (
        t.degree(a) == d + (1 << k)
        and t.degree(b) == d + (1 << (k + 1))
        and t.degree(c) == d + (1 << (k + 2))
        and b in t.sq(1 << k, a)
        and c in t.sq(1 << (k + 1), b)
        and bool(t.sq(d, c))
    )
    if not ok:
        raise ModuleError(f"triple invariants fail for {tri}")
    return tri


def not_desuspendable_witness(m: ModulePresentation) -> Optional[Tuple[str, int]]:
    """A minimal-degree basis class x with Sq^{|x|} x != 0, or None.

    Degree-0 classes qualify automatically since Sq^0 is the identity.
    """
    for x, d in sorted(m.basis, key=lambda nd: (nd[1], nd[0])):
        if d == 0 or m.sq(d, x):
            return (x, d)
    return None


def truncate_below(m: ModulePresentation, cutoff: int) -> ModulePresentation:
    """Keep the classes of degree >= cutoff.

    Squares raise degree, so the kept classes span a submodule whenever the
    degrees are consistent; entries that would escape it are reported.
    """
    kept = {x for x, d in m.basis if d >= cutoff}
    offending = []
    action: Dict[Tuple[int, str], ElementSum] = {}
    for (s, x), targets in m.action.items():
        if x not in kept:
            continue
        lost = targets - kept
        if lost:
            offending.append(((s, x), sorted(lost)))
        else:
            action[(s, x)] = targets
    if offending:
        raise ResultNotAModule(f"truncation drops targets of kept classes: {offending}")
    cup = None
    if m.cup is not None:
        cup = {
            (x, y): targets
            for (x, y), targets in m.cup.items()
            if x in kept and y in kept and targets <= kept
        }
    basis = tuple((x, d) for x, d in m.basis if x in kept)
    return ModulePresentation(name=f"{m.name}|>={cutoff}", basis=basis, action=action, cup=cup)


def max_unstable_quotient(g: ModulePresentation, degree_bound: Optional[int] = None) -> ModulePresentation:
    """Quotient by the sub-object generated by all Sq^s x with s > |x|.

    The input may carry unstable data (degree bookkeeping must still hold).
    Bad vectors are closed under the action, then the quotient presentation
    is read off degree by degree; surviving original basis classes name the
    result.
    """
    degree_errors = [v for v in _structure_violations(g) if v.kind == "degree"]
    if degree_errors:
        raise ModuleValidationError(degree_errors)
    if degree_bound is None:
        degree_bound = g.high if g.high is not None else 0

    by_degree: Dict[int, List[str]] = {}
    for x, d in g.basis:
        by_degree.setdefault(d, []).append(x)
    index = {x: i for d, xs in by_degree.items() for i, x in enumerate(xs)}

    def to_mask(elem: ElementSum) -> int:
        mask = 0
        for x in elem:
            mask |= 1 << index[x]
        return mask

    # seed with the unstable values, then close under all squares
    bad: Dict[int, List[int]] = {d: [] for d in by_degree}
    queue: List[Tuple[int, ElementSum]] = []
    for (s, x), targets in g.action.items():
        if s > g.degree(x) and targets:
            queue.append((g.degree(x) + s, targets))
    seen_rank: Dict[int, int] = {d: 0 for d in by_degree}
    while queue:
        d, elem = queue.pop()
        if d > degree_bound or d not in by_degree:
            continue
        rows = bad[d]
        rows.append(to_mask(elem))
        newrank = f2linalg.span_rank(rows, len(by_degree[d]))
        if newrank == seen_rank[d]:
            rows.pop()
            continue
        seen_rank[d] = newrank
        for s in range(1, degree_bound - d + 1):
            img = g.sq_sum(s, elem)
            if img:
                queue.append((d + s, img))

    kept: Dict[int, List[str]] = {}
    reducers: Dict[int, Tuple[List[int], List[int]]] = {}
    for d, xs in by_degree.items():
        reduced, pivots = f2linalg._echelon(bad[d], len(xs))
        reducers[d] = (reduced, pivots)
        pivot_set = set(pivots)
        kept[d] = [x for i, x in enumerate(xs) if i not in pivot_set]

    def reduce_elem(d: int, elem: ElementSum) -> ElementSum:
        if d not in by_degree:
            return EMPTY
        mask = to_mask(elem)
        reduced, pivots = reducers[d]
        for row, p in zip(reduced, pivots):
            if (mask >> p) & 1:
                mask ^= row
        xs = by_degree[d]
        return frozenset(xs[i] for i in range(len(xs)) if (mask >> i) & 1)

    kept_names = {x for xs in kept.values() for x in xs}
    basis = tuple((x, d) for x, d in g.basis if x in kept_names)
    action: Dict[Tuple[int, str], ElementSum] = {}
    for x, d in basis:
        for s in range(1, degree_bound - d + 1):
            if s > d:
                break  # instability: everything above is killed by construction
            img = reduce_elem(d + s, g.sq_sum(s, (x,)))
            if img:
                action[(s, x)] = img
    out = ModulePresentation(name=f"U({g.name})", basis=basis, action=action, cup=None)
    return out


def cup_trivial_forced(m: ModulePresentation) -> bool:
    """True iff no two occupied degrees sum to an occupied degree."""
    degrees = set(d for _, d in m.basis)
    for d1 in degrees:
        for d2 in degrees:
            if d1 + d2 in degrees:
                return False
    return True


# ---------------------------------------------------------------------------
# Unstable algebra axioms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AxiomViolation:
    axiom: str  # "commutativity" | "associativity" | "cartan" | "restriction"
    subject: Tuple
    detail: str

    def __str__(self) -> str:
        return f"{self.axiom}{self.subject}: {self.detail}"


def check_unstable_algebra_axioms(m: ModulePresentation) -> List[AxiomViolation]:
    """Check cup commutativity/associativity, the Cartan formula, and restriction.

    The cup table must be present (it may be all-zero).  Violations are
    returned as data, one record per failing instance.  Only structural
    validity is enforced here; Adem consistency of the table is validate's
    business.
    """
    if m.cup is None:
        raise ModuleError("module has no cup table")
    structural = _structure_violations(m)
    if structural:
        raise ModuleValidationError(structural)
    out: List[AxiomViolation] = []
    names = m.names()
    e = m.high if m.high is not None else 0

    for (x, y) in m.cup:
        if (y, x) in m.cup and m.cup[(x, y)] != m.cup[(y, x)]:
            if x <= y:
                out.append(
                    AxiomViolation(
                        "commutativity",
                        (x, y),
                        f"{x}cup{y} = {m.format_sum(m.cup[(x, y)])} but "
                        f"{y}cup{x} = {m.format_sum(m.cup[(y, x)])}",
                    )
                )

    for x in names:
        for y in names:
            for z in names:
                if m.degree(x) + m.degree(y) + m.degree(z) > e:
                    continue
                lhs = m.cup_sum(m.cup_get(x, y), (z,))
                rhs = m.cup_sum((x,), m.cup_get(y, z))
                if lhs != rhs:
                    out.append(
                        AxiomViolation(
                            "associativity",
                            (x, y, z),
                            f"({x}cup{y})cup{z} = {m.format_sum(lhs)} != "
                            f"{x}cup({y}cup{z}) = {m.format_sum(rhs)}",
                        )
                    )

    for x in names:
        for y in names:
            base = m.degree(x) + m.degree(y)
            for s in range(1, e - base + 1):
                lhs = m.sq_sum(s, m.cup_get(x, y))
                acc: set = set()
                for i in range(0, s + 1):
                    acc ^= m.cup_sum(m.sq(i, x), m.sq(s - i, y))
                if lhs != frozenset(acc):
                    out.append(
                        AxiomViolation(
                            "cartan",
                            (s, x, y),
                            f"Sq^{s}({x}cup{y}) = {m.format_sum(lhs)} but the Cartan "
                            f"expansion gives {m.format_sum(frozenset(acc))}",
                        )
                    )

    for x in names:
        lhs = m.sq(m.degree(x), x)
        rhs = m.cup_get(x, x)
        if lhs != rhs:
            out.append(
                AxiomViolation(
                    "restriction",
                    (x,),
                    f"Sq^{m.degree(x)}({x}) = {m.format_sum(lhs)} but "
                    f"{x}cup{x} = {m.format_sum(rhs)}",
                )
            )
    return out
