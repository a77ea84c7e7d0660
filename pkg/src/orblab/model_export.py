"""Export the OR-MIP and SL-QIP order models as plain constraint text.

Expressions are kept symbolic (a small polynomial-plus-functions tree) so a
candidate solution can be substituted back and every constraint evaluated
with true ``cos``/``sqrt``.  Nothing here calls an optimizer.

Model file layout::

    # family: or-mip
    # instance: <id>
    # ...notes...
    VARIABLES
    binary a_0_1
    continuous beta_0 [0, 6.283185307179586]
    OBJECTIVE
    minimize <expr>
    CONSTRAINTS
    <name> [linear]: <lo> <= <expr> <= <hi>
    END
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from itertools import combinations
from typing import Union

from .geometry import TWO_PI, LeaderStyle, angular_distance
from .instance import Instance, validate

PI = math.pi

# --------------------------------------------------------------------------- expressions


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Prod:
    left: "Atom"
    right: "Atom"


@dataclass(frozen=True)
class Call:
    fn: str
    arg: "Expr"


Atom = Union[Var, Prod, Call]
_FUNCS = {"cos": math.cos, "sin": math.sin, "sqrt": math.sqrt}


def _num(x: float) -> str:
    if x == int(x) and abs(x) < 1e15:
        return str(int(x))
    return repr(float(x))


@dataclass(frozen=True)
class Expr:
    """``sum(coef * atom) + const`` with terms kept in first-seen order."""

    terms: tuple[tuple[Atom, float], ...] = ()
    const: float = 0.0

    @staticmethod
    def lift(x) -> Expr:
        if isinstance(x, Expr):
            return x
        if isinstance(x, (Var, Prod, Call)):
            return Expr(((x, 1.0),))
        return Expr((), float(x))

    def __add__(self, other) -> Expr:
        other = Expr.lift(other)
        acc: dict[Atom, float] = dict(self.terms)
        for a, c in other.terms:
            acc[a] = acc.get(a, 0.0) + c
        return Expr(tuple((a, c) for a, c in acc.items() if c != 0.0), self.const + other.const)

    __radd__ = __add__

    def __neg__(self) -> Expr:
        return self * -1.0

    def __sub__(self, other) -> Expr:
        return self + (-Expr.lift(other))

    def __rsub__(self, other) -> Expr:
        return Expr.lift(other) - self

    def __mul__(self, other) -> Expr:
        if not isinstance(other, (Expr, Var, Prod, Call)):
            k = float(other)
            if k == 0.0:
                return Expr()
            return Expr(tuple((a, c * k) for a, c in self.terms), self.const * k)
        other = Expr.lift(other)
        out = Expr((), self.const * other.const)
        for a, c in self.terms:
            out = out + Expr(((a, c * other.const),))
            for b, d in other.terms:
                out = out + Expr(((Prod(a, b), c * d),))
        for b, d in other.terms:
            out = out + Expr(((b, d * self.const),))
        return out

    __rmul__ = __mul__

    def evaluate(self, env) -> float:
        return math.fsum([c * _eval_atom(a, env) for a, c in self.terms] + [self.const])

    def magnitude(self, env) -> float:
        """Sum of absolute term values; scales feasibility tolerances."""
        return sum(abs(c * _eval_atom(a, env)) for a, c in self.terms) + abs(self.const)

    def degree(self) -> float:
        return max((_degree(a) for a, _ in self.terms), default=0)

    def variables(self) -> set[str]:
        out: set[str] = set()
        for a, _ in self.terms:
            _collect(a, out)
        return out

    def functions(self) -> set[str]:
        out: set[str] = set()
        for a, _ in self.terms:
            _collect_funcs(a, out)
        return out

    def __str__(self) -> str:
        parts = []
        for a, c in self.terms:
            body = _atom_str(a)
            mag = abs(c)
            text = body if mag == 1.0 else f"{_num(mag)}*{body}"
            if not parts:
                parts.append(text if c > 0 else f"-{text}")
            else:
                parts.append(f"+ {text}" if c > 0 else f"- {text}")
        if self.const != 0.0 or not parts:
            if not parts:
                parts.append(_num(self.const))
            else:
                parts.append(f"+ {_num(self.const)}" if self.const > 0 else f"- {_num(-self.const)}")
        return " ".join(parts)


def _eval_atom(a: Atom, env) -> float:
    if isinstance(a, Var):
        return float(env[a.name])
    if isinstance(a, Prod):
        return _eval_atom(a.left, env) * _eval_atom(a.right, env)
    x = a.arg.evaluate(env)
    if a.fn == "sqrt":
        x = max(x, 0.0)
    return _FUNCS[a.fn](x)


def _degree(a: Atom) -> float:
    if isinstance(a, Var):
        return 1
    if isinstance(a, Prod):
        return _degree(a.left) + _degree(a.right)
    return math.inf


def _collect(a: Atom, out: set[str]) -> None:
    if isinstance(a, Var):
        out.add(a.name)
    elif isinstance(a, Prod):
        _collect(a.left, out)
        _collect(a.right, out)
    else:
        out |= a.arg.variables()


def _collect_funcs(a: Atom, out: set[str]) -> None:
    if isinstance(a, Prod):
        _collect_funcs(a.left, out)
        _collect_funcs(a.right, out)
    elif isinstance(a, Call):
        out.add(a.fn)
        out |= a.arg.functions()


def _atom_str(a: Atom) -> str:
    if isinstance(a, Var):
        return a.name
    if isinstance(a, Prod):
        return f"{_atom_str(a.left)}*{_atom_str(a.right)}"
    return f"{a.fn}({a.arg})"


def var(name: str) -> Expr:
    return Expr.lift(Var(name))


def call(fn: str, arg) -> Expr:
    return Expr.lift(Call(fn, Expr.lift(arg)))


# --------------------------------------------------------------------------- documents


@dataclass(frozen=True)
class Variable:
    name: str
    kind: str  # "binary" | "continuous"
    lo: float = 0.0
    hi: float = 1.0


@dataclass(frozen=True)
class Constraint:
    """``lo <= expr <= hi``; a missing side is unbounded."""

    name: str
    expr: Expr
    lo: float | None = None
    hi: float | None = None
    note: str = ""

    @property
    def kind(self) -> str:
        d = self.expr.degree()
        return "linear" if d <= 1 else "quadratic" if d == 2 else "nonlinear"

    def residual(self, env) -> float:
        """How far the substituted value lies outside ``[lo, hi]`` (0 when satisfied)."""
        v = self.expr.evaluate(env)
        r = 0.0
        if self.lo is not None:
            r = max(r, self.lo - v)
        if self.hi is not None:
            r = max(r, v - self.hi)
        return r

    def __str__(self) -> str:
        e = str(self.expr)
        if self.lo is not None and self.hi is not None:
            body = f"{e} = {_num(self.lo)}" if self.lo == self.hi else f"{_num(self.lo)} <= {e} <= {_num(self.hi)}"
        elif self.lo is not None:
            body = f"{e} >= {_num(self.lo)}"
        else:
            body = f"{e} <= {_num(self.hi)}"
        tail = f"  # {self.note}" if self.note else ""
        return f"{self.name} [{self.kind}]: {body}{tail}"


@dataclass
class ModelDocument:
    family: str
    instance_id: str
    variables: list[Variable] = field(default_factory=list)
    linear_constraints: list[Constraint] = field(default_factory=list)
    quadratic_constraints: list[Constraint] = field(default_factory=list)
    nonlinear_constraints: list[Constraint] = field(default_factory=list)
    nonlinear_notes: list[str] = field(default_factory=list)
    header_notes: list[str] = field(default_factory=list)
    objective: Expr = field(default_factory=Expr)

    def add_var(self, name: str, kind: str, lo: float = 0.0, hi: float = 1.0) -> Expr:
        self.variables.append(Variable(name, kind, lo, hi))
        return var(name)

    def add(self, name: str, expr, lo=None, hi=None, note: str = "") -> None:
        c = Constraint(name, Expr.lift(expr), lo, hi, note)
        {"linear": self.linear_constraints, "quadratic": self.quadratic_constraints}.get(
            c.kind, self.nonlinear_constraints
        ).append(c)
        if c.kind == "nonlinear":
            fns = ", ".join(sorted(c.expr.functions()))
            self.nonlinear_notes.append(f"{name}: uses {fns}; approximate piecewise-linearly when solving")

    @property
    def constraints(self) -> list[Constraint]:
        return self.linear_constraints + self.quadratic_constraints + self.nonlinear_constraints

    def binaries(self) -> list[Variable]:
        return [v for v in self.variables if v.kind == "binary"]

    def check(self) -> None:
        """Raise if names repeat or a constraint references an undeclared variable."""
        names = [v.name for v in self.variables]
        if len(set(names)) != len(names):
            raise ValueError("duplicate variable names")
        cnames = [c.name for c in self.constraints]
        if len(set(cnames)) != len(cnames):
            raise ValueError("duplicate constraint names")
        declared = set(names)
        for c in self.constraints:
            missing = c.expr.variables() - declared
            if missing:
                raise ValueError(f"{c.name} uses undeclared {sorted(missing)}")
        missing = self.objective.variables() - declared
        if missing:
            raise ValueError(f"objective uses undeclared {sorted(missing)}")

    def violations(self, env, tol: float = 1e-9, nonlinear_tol: float = 1e-6) -> list[tuple[str, float]]:
        """Constraints not satisfied by ``env``, with their residuals.

        Polynomial constraints use a tolerance relative to the size of their
        terms; constraints with cos/sqrt use the absolute ``nonlinear_tol``.
        """
        out = []
        for v in self.variables:
            x = env[v.name]
            if x < v.lo - tol or x > v.hi + tol or (v.kind == "binary" and x not in (0, 1)):
                out.append((v.name, math.inf))
        for c in self.constraints:
            r = c.residual(env)
            limit = nonlinear_tol if c.kind == "nonlinear" else tol * (1.0 + c.expr.magnitude(env))
            if r > limit:
                out.append((c.name, r))
        return out

    def to_text(self) -> str:
        lines = [f"# family: {self.family}", f"# instance: {self.instance_id}"]
        lines += [f"# {n}" for n in self.header_notes]
        lines.append("VARIABLES")
        for v in self.variables:
            if v.kind == "binary":
                lines.append(f"binary {v.name}")
            else:
                lines.append(f"continuous {v.name} [{_num(v.lo)}, {_num(v.hi)}]")
        lines.append("OBJECTIVE")
        lines.append(f"minimize {self.objective}")
        lines.append("CONSTRAINTS")
        lines += [str(c) for c in self.constraints]
        if self.nonlinear_notes:
            lines.append("NOTES")
            lines += [f"# {n}" for n in self.nonlinear_notes]
        lines.append("END")
        return "\n".join(lines) + "\n"


def write_model(doc: ModelDocument, path: str | os.PathLike) -> None:
    if not str(path):
        raise ValueError("empty output path")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(doc.to_text())


# --------------------------------------------------------------------------- shared order block


def _order_block(doc: ModelDocument, inst: Instance) -> list[Expr]:
    """Pairwise order binaries, transitivity and port-angle equalities; returns beta vars."""
    n, R = inst.n, inst.radius
    a: dict[tuple[int, int], Expr] = {}
    for i, j in combinations(range(n), 2):
        a[i, j] = doc.add_var(f"a_{i}_{j}", "binary")

    def before(j, i):  # 1 iff label j precedes label i
        return a[j, i] if j < i else 1 - a[i, j]

    for i, j, k in combinations(range(n), 3):
        doc.add(f"trans_{i}_{j}_{k}", a[i, j] + a[j, k] - a[i, k], 0, 1)
    betas = [doc.add_var(f"beta_{i}", "continuous", 0.0, TWO_PI) for i in range(n)]
    w = inst.widths
    for i in range(n):
        rhs = Expr()
        for j in range(n):
            if j != i:
                rhs = rhs + (w[j] / R) * before(j, i)
        e = betas[i] - rhs
        target = w[i] / (2 * R) - e.const
        doc.add(f"port_{i}", e - e.const, target, target)
    return betas


def _header(doc: ModelDocument, inst: Instance) -> None:
    doc.header_notes += [
        f"n: {inst.n}  R: {_num(inst.radius)}",
        "a_i_j = 1 iff label i precedes label j going CCW from the anchor (i < j)",
        "transitivity written as 0 <= a_i_j + a_j_k - a_i_k <= 1 (linear-ordering form)",
        "angles in radians; port angle beta_i = (w_i/2 + sum_j [j before i] w_j) / R",
    ]


def _check_inst(inst: Instance) -> None:
    problems = validate(inst)
    if problems:
        raise ValueError(f"invalid instance: {problems}")


def build_or_mip(inst: Instance) -> ModelDocument:
    """Mixed-integer model for orbital-radial leaders."""
    _check_inst(inst)
    doc = ModelDocument("or-mip", inst.id)
    _header(doc, inst)
    doc.header_notes += [
        "delta_i: arc angle of leader i; b1_i/b2_i shift theta_i - beta_i by +-2pi so delta_i is the shorter arc",
        "c_i = 1 iff beta_i >= theta_i; d_i = 1 iff the shorter arc of leader i passes the anchor ray (|beta_i - theta_i| > pi)",
        "big-M is 2pi for angle comparisons and 4pi for the c_i switch inside the d_i rows",
        "pair (i,j) with inner k = smaller radius, outer l: e1 = [beta_k > theta_l], e2 = [beta_k > beta_l]",
        "no crossing iff (d_l = 0 and e1 = e2) or (d_l = 1 and e1 != e2)",
        "objective includes the constant radial part sum(R - r_i), so it equals the total leader length",
    ]
    n, R = inst.n, inst.radius
    betas = _order_block(doc, inst)
    pos = inst.positions
    deltas, c, d = [], [], []
    for i in range(n):
        deltas.append(doc.add_var(f"delta_{i}", "continuous", 0.0, PI))
    for i in range(n):
        b1 = doc.add_var(f"b1_{i}", "binary")
        b2 = doc.add_var(f"b2_{i}", "binary")
        shifted = pos[i].theta - betas[i] + TWO_PI * b1 - TWO_PI * b2
        doc.add(f"arc_lo_{i}", shifted + deltas[i], lo=0)
        doc.add(f"arc_hi_{i}", shifted - deltas[i], hi=0)
    for i in range(n):
        c.append(doc.add_var(f"c_{i}", "binary"))
        d.append(doc.add_var(f"d_{i}", "binary"))
    for i in range(n):
        D = betas[i] - pos[i].theta
        doc.add(f"c_up_{i}", D - TWO_PI * c[i], hi=0)
        doc.add(f"c_dn_{i}", D + TWO_PI * (1 - c[i]), lo=0)
        # the c-switch needs M >= 3pi since |D| < 2pi; 4pi keeps it symmetric
        doc.add(f"d_1_{i}", D - PI - TWO_PI * d[i] - 2 * TWO_PI * (1 - c[i]), hi=0)
        doc.add(f"d_2_{i}", D - PI + TWO_PI * (1 - d[i]) + 2 * TWO_PI * (1 - c[i]), lo=0)
        doc.add(f"d_3_{i}", -D - PI - TWO_PI * d[i] - 2 * TWO_PI * c[i], hi=0)
        doc.add(f"d_4_{i}", -D - PI + TWO_PI * (1 - d[i]) + 2 * TWO_PI * c[i], lo=0)
    for i, j in combinations(range(n), 2):
        k, l = (i, j) if pos[i].r < pos[j].r else (j, i)
        e1 = doc.add_var(f"e1_{i}_{j}", "binary")
        e2 = doc.add_var(f"e2_{i}_{j}", "binary")
        g = betas[k] - pos[l].theta
        h = betas[k] - betas[l]
        doc.add(f"e1_up_{i}_{j}", g - TWO_PI * e1, hi=0)
        doc.add(f"e1_dn_{i}_{j}", g + TWO_PI * (1 - e1), lo=0)
        doc.add(f"e2_up_{i}_{j}", h - TWO_PI * e2, hi=0)
        doc.add(f"e2_dn_{i}_{j}", h + TWO_PI * (1 - e2), lo=0)
        doc.add(f"nocross_1_{i}_{j}", e1 + e2 - d[l], lo=0)
        doc.add(f"nocross_2_{i}_{j}", e1 + e2 + d[l], hi=2)
        doc.add(f"nocross_3_{i}_{j}", e1 - e2 - d[l], hi=0)
        doc.add(f"nocross_4_{i}_{j}", e2 - e1 - d[l], hi=0)
    obj = Expr()
    for i in range(n):
        obj = obj + pos[i].r * deltas[i]
    doc.objective = obj + math.fsum(R - p.r for p in pos)
    doc.check()
    return doc


def _orient(ax, ay, bx, by, cx, cy) -> Expr:
    return (Expr.lift(bx) - ax) * (Expr.lift(cy) - ay) - (Expr.lift(by) - ay) * (Expr.lift(cx) - ax)


def build_sl_qip(inst: Instance) -> ModelDocument:
    """Quadratic model for straight-line leaders (cos/sqrt left symbolic)."""
    _check_inst(inst)
    doc = ModelDocument("sl-qip", inst.id)
    _header(doc, inst)
    big_m = 4.0 * inst.radius ** 2
    doc.header_notes += [
        "px_i, py_i: Cartesian port coordinates; gamma_i: straight leader length",
        "f1..f4 = [orientation > 0] for (feature_j, port_j) vs leader i and (feature_i, port_i) vs leader j",
        f"big-M for orientation indicators is 4 R^2 = {_num(big_m)} (bounds any orientation value)",
        "g1 = f1 xor f2, g2 = f3 xor f4; leaders cross iff g1 = g2 = 1",
    ]
    n, R = inst.n, inst.radius
    betas = _order_block(doc, inst)
    pos = inst.positions
    xy = [p.cartesian() for p in pos]
    gammas, px, py = [], [], []
    for i in range(n):
        gammas.append(doc.add_var(f"gamma_{i}", "continuous", 0.0, 2.0 * R))
    for i in range(n):
        px.append(doc.add_var(f"px_{i}", "continuous", -R, R))
        py.append(doc.add_var(f"py_{i}", "continuous", -R, R))
    for i in range(n):
        doc.add(f"portx_{i}", px[i] - R * call("cos", betas[i]), 0, 0)
        doc.add(f"porty_{i}", py[i] - R * call("sin", betas[i]), 0, 0)
        r = pos[i].r
        arg = (r * r + R * R) - (2 * r * R) * call("cos", pos[i].theta - betas[i])
        doc.add(f"len_{i}", gammas[i] - call("sqrt", arg), lo=0)
    for i, j in combinations(range(n), 2):
        p1, q1 = xy[i], (px[i], py[i])
        p2, q2 = xy[j], (px[j], py[j])
        orients = [
            _orient(*p1, *q1, *p2),
            _orient(*p1, *q1, *q2),
            _orient(*p2, *q2, *p1),
            _orient(*p2, *q2, *q1),
        ]
        f = [doc.add_var(f"f{k}_{i}_{j}", "binary") for k in (1, 2, 3, 4)]
        for k, (o, fk) in enumerate(zip(orients, f), start=1):
            doc.add(f"f{k}_up_{i}_{j}", o - big_m * fk, hi=0)
            doc.add(f"f{k}_dn_{i}_{j}", o + big_m * (1 - fk), lo=0)
        g1 = doc.add_var(f"g1_{i}_{j}", "binary")
        g2 = doc.add_var(f"g2_{i}_{j}", "binary")
        for name, g, fa, fb in (("g1", g1, f[0], f[1]), ("g2", g2, f[2], f[3])):
            doc.add(f"{name}_a_{i}_{j}", g - fa - fb, hi=0)
            doc.add(f"{name}_b_{i}_{j}", g - fa + fb, lo=0)
            doc.add(f"{name}_c_{i}_{j}", g - fb + fa, lo=0)
            doc.add(f"{name}_d_{i}_{j}", g + fa + fb, hi=2)
        doc.add(f"nocross_{i}_{j}", g1 + g2, hi=1)
    obj = Expr()
    for g in gammas:
        obj = obj + g
    doc.objective = obj
    doc.check()
    return doc


FAMILIES = ("or-mip", "sl-qip")


def build_model(inst: Instance, family: str) -> ModelDocument:
    if family == "or-mip":
        return build_or_mip(inst)
    if family == "sl-qip":
        return build_sl_qip(inst)
    raise ValueError(f"unknown model family {family!r}")


# --------------------------------------------------------------------------- substitution


def assignment_from_order(inst: Instance, order, family: str) -> dict[str, float]:
    """Variable values describing the anchored labeling with label order ``order``.

    Indicator binaries take the values their defining constraints force;
    on exact ties either value is admissible and 0 is chosen.
    """
    n, R = inst.n, inst.radius
    rank = {f: k for k, f in enumerate(order)}
    if sorted(rank) != list(range(n)):
        raise ValueError("order must be a permutation")
    env: dict[str, float] = {}
    for i, j in combinations(range(n), 2):
        env[f"a_{i}_{j}"] = 1.0 if rank[i] < rank[j] else 0.0
    w = inst.widths
    betas = []
    for i in range(n):
        before = math.fsum(w[j] for j in range(n) if rank[j] < rank[i])
        betas.append((w[i] / 2 + before) / R)
        env[f"beta_{i}"] = betas[-1]
    pos = inst.positions

    if family == "or-mip":
        for i in range(n):
            t, b = pos[i].theta, betas[i]
            delta, _ = angular_distance(t, b)
            x = t - b
            env[f"delta_{i}"] = delta
            env[f"b1_{i}"] = 1.0 if x < -PI else 0.0
            env[f"b2_{i}"] = 1.0 if x > PI else 0.0
            D = b - t
            env[f"c_{i}"] = 1.0 if D > 0 else 0.0
            env[f"d_{i}"] = 1.0 if abs(D) > PI else 0.0
        for i, j in combinations(range(n), 2):
            k, l = (i, j) if pos[i].r < pos[j].r else (j, i)
            env[f"e1_{i}_{j}"] = 1.0 if betas[k] > pos[l].theta else 0.0
            env[f"e2_{i}_{j}"] = 1.0 if betas[k] > betas[l] else 0.0
        return env

    if family == "sl-qip":
        xy = [p.cartesian() for p in pos]
        q = []
        for i in range(n):
            b = betas[i]
            q.append((R * math.cos(b), R * math.sin(b)))
            env[f"px_{i}"], env[f"py_{i}"] = q[-1]
            r, t = pos[i].r, pos[i].theta
            env[f"gamma_{i}"] = math.sqrt(max(r * r + R * R - 2 * r * R * math.cos(t - b), 0.0))
        for i, j in combinations(range(n), 2):
            o = [
                _orient_val(*xy[i], *q[i], *xy[j]),
                _orient_val(*xy[i], *q[i], *q[j]),
                _orient_val(*xy[j], *q[j], *xy[i]),
                _orient_val(*xy[j], *q[j], *q[i]),
            ]
            f = [1.0 if v > 0 else 0.0 for v in o]
            for k in range(4):
                env[f"f{k + 1}_{i}_{j}"] = f[k]
            env[f"g1_{i}_{j}"] = float(f[0] != f[1])
            env[f"g2_{i}_{j}"] = float(f[2] != f[3])
        return env

    raise ValueError(f"unknown model family {family!r}")


def _orient_val(ax, ay, bx, by, cx, cy) -> float:
    return (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)


def family_for(style: LeaderStyle) -> str:
    return "or-mip" if LeaderStyle(style) is LeaderStyle.OR else "sl-qip"
