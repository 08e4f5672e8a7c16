"""Scenario files: algebras, modules, a bimodule, pair builders and windows.

A scenario is a JSON document.  Matrices are lists of rows of residues
modulo ``p``.  Loading resolves every reference and validates every
structure before any check runs.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import exactla as la
from .algrep import Algebra, Bimodule, Module, ModuleCategory, TensorFunctor, Verdict, is_isomorphic
from .classes import (
    all_objects,
    builtin_gp,
    builtin_mod_inj,
    builtin_proj,
    cotorsion_to_frobenius,
    injectives,
    lift_pair,
    projectives,
    restricted_W,
    right_perp,
)
from .comma import CommaCategory

DEFAULTS = {"depth": 4, "budget": 4096, "seed": 0}


class ScenarioError(ValueError):
    """Malformed or inconsistent scenario input."""


def _matrix(data, where):
    try:
        arr = np.array(data, dtype=np.int64)
    except (TypeError, ValueError) as exc:
        raise ScenarioError(f"{where}: not a rectangular integer array") from exc
    return arr


def _need(d, key, where):
    if key not in d:
        raise ScenarioError(f"{where}: missing field {key!r}")
    return d[key]


# window enumeration ------------------------------------------------------------

def fingerprint(cat, M):
    """Cheap isomorphism invariant: dimension, ranks of basis actions, End dimension."""
    p = cat.p
    ranks = tuple(la.rank(a, p) for a in M.actions)
    return (M.dim, ranks, cat.hom(M, M).dim)


def dedup(cat, objects, budget=4096, seed=0, invariant=None):
    """Drop objects isomorphic to an earlier one; returns ``(kept, exhaustive)``."""
    invariant = invariant or (lambda M: fingerprint(cat, M))
    buckets = {}
    kept = []
    exhaustive = True
    for M in objects:
        key = invariant(M)
        bucket = buckets.setdefault(key, [])
        duplicate = False
        for N in bucket:
            v, _ = is_isomorphic(cat, M, N, budget, np.random.default_rng(seed))
            if v is Verdict.YES:
                duplicate = True
                break
            if v is Verdict.UNDETERMINED:
                exhaustive = False
        if not duplicate:
            bucket.append(M)
            kept.append(M)
    return kept, exhaustive


def enumerate_window(cat, max_dim, budget=4096, seed=0):
    """Modules of dimension at most ``max_dim`` up to isomorphism.

    Generator action matrices are enumerated exhaustively when ``p**(m*m*g)``
    fits the budget, otherwise sampled; returns ``(modules, exhaustive)``.
    """
    A = cat.algebra
    p = cat.p
    gens = A.generators
    found = [cat.zero()]
    exhaustive = True
    rng = np.random.default_rng(seed)
    for m in range(1, max_dim + 1):
        count = p ** (m * m * len(gens))
        if count <= budget:
            tuples = itertools.product(range(p), repeat=m * m * len(gens))
        else:
            exhaustive = False
            tuples = (tuple(t) for t in rng.integers(0, p, size=(budget, m * m * len(gens))))
        for t in tuples:
            mats = np.array(t, dtype=np.int64).reshape(len(gens), m, m)
            acts = A.actions_from_generators(list(mats), m)
            M = Module(A, acts)
            if M.validate():
                continue
            found.append(M)
    kept, ok = dedup(cat, found, budget, seed)
    return kept, exhaustive and ok


def comma_fingerprint(comma, B):
    p = comma.p
    return (B.X.dim, B.Y.dim, la.rank(B.phi.matrix, p), fingerprint(comma.A, B.X), fingerprint(comma.B, B.Y), comma.hom(B, B).dim)


def enumerate_comma_window(comma, window_A, window_B, budget=4096, seed=0):
    """All ``(X, Y, phi)`` with components from the windows, up to isomorphism."""
    found = []
    exhaustive = True
    rng = np.random.default_rng(seed)
    p = comma.p
    for Y in window_B:
        TY = comma.T(Y)
        for X in window_A:
            H = comma.A.hom(TY, X)
            if p**H.dim <= budget:
                coeffs = itertools.product(range(p), repeat=H.dim)
            else:
                exhaustive = False
                coeffs = (tuple(c) for c in rng.integers(0, p, size=(budget, H.dim)))
            for c in coeffs:
                phi = H.element(np.array(c, dtype=np.int64))
                found.append(comma.obj(X, Y, phi.matrix))
    kept, ok = dedup(comma, found, budget, seed, invariant=lambda B: comma_fingerprint(comma, B))
    return kept, exhaustive and ok


# loaded scenarios --------------------------------------------------------------

@dataclass
class Scenario:
    name: str
    p: int
    data: dict
    algebras: dict
    modules: dict
    categories: dict
    bimodule: object = None
    T: object = None
    comma: object = None
    comma_objects: dict = field(default_factory=dict)
    depth: int = 4
    budget: int = 4096
    seed: int = 0
    validation: list = field(default_factory=list)
    _cache: dict = field(default_factory=dict)

    # pairs ---------------------------------------------------------------
    def pair(self, side):
        key = ("pair", side)
        if key not in self._cache:
            spec = self.data.get("pairs", {}).get(side)
            if spec is None:
                raise ScenarioError(f"no pair builder for side {side!r}")
            self._cache[key] = self._build_pair(side, spec)
        return self._cache[key]

    @property
    def sides(self):
        """Sides with a module category: A always, B when a bimodule is given."""
        return ("A", "B") if self.comma is not None else ("A",)

    def side_category(self, side):
        if side == "A":
            return self.comma.A if self.comma else self.categories[self.data.get("algebra_A", _first(self.algebras))]
        if side == "B" and self.comma is not None:
            return self.comma.B
        raise ScenarioError(f"unknown side {side!r}")

    def _build_pair(self, side, spec):
        cat = self.side_category(side)
        where = f"pairs.{side}"
        if "builtin" in spec:
            kind = spec["builtin"]
            if kind == "mod_inj":
                pair = builtin_mod_inj(cat, self.depth)
            elif kind == "gp":
                pair = builtin_gp(cat, int(_need(spec, "d", where)), self.depth)
            elif kind == "proj":
                pair = builtin_proj(cat, self.depth)
            else:
                raise ScenarioError(f"{where}: unknown builtin {kind!r}")
            if "restrict_W" in spec:
                members = [self.module(n, f"{where}.restrict_W") for n in spec["restrict_W"]]
                pad = self.module(spec["pad_with"], f"{where}.pad_with") if "pad_with" in spec else cat.regular()
                pair = restricted_W(pair, members, pad_with=pad, label=f"{pair.label}/restricted")
            return pair
        if "cotorsion" in spec:
            c = spec["cotorsion"]
            window = self.window(side)
            xclass = self._class(cat, c.get("X", "all"), window)
            yclass = self._class(cat, c.get("Y", "all"), window)
            base = self._build_pair(side, {"builtin": c.get("approximations", "mod_inj")} | ({"d": c["d"]} if "d" in c else {}))
            pair, report = cotorsion_to_frobenius(
                cat,
                xclass,
                yclass,
                [M for _, M in window],
                self.depth,
                lambda M, v: base.right_approx(M, v)[0],
                (lambda M, v: base.left_approx(M, v)[1]) if base.strong else None,
                label="cotorsion",
            )
            pair.cotorsion_report = report
            return pair
        raise ScenarioError(f"{where}: pair builder needs 'builtin' or 'cotorsion'")

    def _class(self, cat, label, window):
        if label == "all":
            return all_objects()
        if label == "proj":
            return projectives(cat)
        if label == "inj":
            return injectives(cat)
        if label.startswith("gp:"):
            return builtin_gp(cat, int(label[3:]), self.depth).X
        if label == "gp_perp":
            gp = builtin_gp(cat, int(self.data.get("gp_bound", 2)), self.depth)
            return right_perp(cat, [M for _, M in window if gp.X(M)], self.depth, label="GP_perp")
        raise ScenarioError(f"unknown class {label!r}")

    def lifted(self):
        key = ("lifted",)
        if key not in self._cache:
            level = self.data.get("lift_level", "theorem")
            self._cache[key] = lift_pair(self.pair("A"), self.pair("B"), self.comma, self.window("B"), self.depth, level)
        return self._cache[key]

    # windows ----------------------------------------------------------------
    def module(self, name, where="module"):
        if name not in self.modules:
            raise ScenarioError(f"{where}: unknown module {name!r}")
        return self.modules[name]

    def window(self, side):
        """Labelled window ``[(name, object)]`` for side A, B or the comma category C."""
        key = ("window", side)
        if key in self._cache:
            return self._cache[key]
        spec = self.data.get("windows", {}).get(side, {})
        if side in ("A", "B"):
            cat = self.side_category(side)
            out = []
            if "max_dim" in spec:
                mods, exhaustive = enumerate_window(cat, int(spec["max_dim"]), self.budget, self.seed)
                self._cache[("exhaustive", side)] = exhaustive
                out = [(self._label(cat, M, side, i), M) for i, M in enumerate(mods)]
            for n in spec.get("modules", []):
                M = self.module(n, f"windows.{side}")
                if not any(is_isomorphic(cat, M, N, self.budget)[0] is Verdict.YES for _, N in out):
                    out.append((n, M))
        elif side == "C":
            if self.comma is None:
                raise ScenarioError("comma window requested without a bimodule")
            out = []
            if spec.get("enumerate", True):
                wa = [M for _, M in self.window("A")]
                wb = [M for _, M in self.window("B")]
                objs, exhaustive = enumerate_comma_window(self.comma, wa, wb, self.budget, self.seed)
                self._cache[("exhaustive", side)] = exhaustive
                out = [(f"C{i}", B) for i, B in enumerate(objs)]
            for n in spec.get("objects", []):
                out.append((n, self.comma_objects[n]))
        else:
            raise ScenarioError(f"unknown window {side!r}")
        self._cache[key] = out
        return out

    def _label(self, cat, M, side, i):
        for n, N in self.modules.items():
            if N.algebra is M.algebra and is_isomorphic(cat, M, N, self.budget)[0] is Verdict.YES:
                return n
        return "0" if M.dim == 0 else f"{side}_m{i}"

    def filtered_window(self, side, oracle):
        return [(n, M) for n, M in self.window(side) if oracle(M, self.depth)]


def _first(d):
    return next(iter(d))


def parse_algebra(name, d, p):
    where = f"algebras.{name}"
    dim = int(_need(d, "dim", where))
    table = _matrix(_need(d, "table", where), where)
    if table.shape != (dim, dim, dim):
        raise ScenarioError(f"{where}: table has shape {table.shape}, expected {(dim, dim, dim)}")
    unit = _matrix(_need(d, "unit", where), where)
    idem = d.get("idempotents")
    rad = d.get("radical")
    if rad is not None:
        rad = _matrix(rad, where).reshape(-1, dim)
    return Algebra(table, unit, p, idempotents=idem, radical=rad, name=name)


def load(source, overrides=None):
    """Load a scenario from a path, a JSON string or a dict."""
    if isinstance(source, dict):
        data = source
    else:
        text = Path(source).read_text() if not str(source).lstrip().startswith("{") else str(source)
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ScenarioError(f"parse error at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    overrides = {k: v for k, v in (overrides or {}).items() if v is not None}
    p = int(data.get("p", 2))
    if not la.is_prime(p):
        raise ScenarioError(f"modulus {p} is not prime")
    validation = []
    algebras = {}
    for name, d in _need(data, "algebras", "scenario").items():
        A = parse_algebra(name, d, p)
        algebras[name] = A
        for f in A.validate():
            validation.append({"check": "validate.algebra", "object": name, "failure": f})
    categories = {n: ModuleCategory(A) for n, A in algebras.items()}
    modules = {}
    for name, d in data.get("modules", {}).items():
        where = f"modules.{name}"
        alg = _need(d, "algebra", where)
        if alg not in algebras:
            raise ScenarioError(f"{where}: unknown algebra {alg!r}")
        A = algebras[alg]
        dim = int(_need(d, "dim", where))
        acts = _matrix(_need(d, "actions", where), where)
        if acts.size != A.dim * dim * dim:
            raise ScenarioError(f"{where}: actions have {acts.size} entries, expected {A.dim * dim * dim}")
        M = Module(A, acts.reshape(A.dim, dim, dim), name=name)
        modules[name] = M
        for f in M.validate():
            validation.append({"check": "validate.module", "object": name, "failure": f})
    sc = Scenario(
        name=data.get("name", "scenario"),
        p=p,
        data=data,
        algebras=algebras,
        modules=modules,
        categories=categories,
        depth=int(overrides.get("depth", data.get("depth", DEFAULTS["depth"]))),
        budget=int(overrides.get("budget", data.get("budget", DEFAULTS["budget"]))),
        seed=int(overrides.get("seed", data.get("seed", DEFAULTS["seed"]))),
        validation=validation,
    )
    if "bimodule" in data:
        bd = data["bimodule"]
        where = "bimodule"
        if "regular" in bd:
            R = algebras[bd["regular"]]
            M = Bimodule.regular(R, name=bd.get("name", "M"))
        else:
            L, Rn = _need(bd, "left_algebra", where), _need(bd, "right_algebra", where)
            for n in (L, Rn):
                if n not in algebras:
                    raise ScenarioError(f"{where}: unknown algebra {n!r}")
            e = int(_need(bd, "dim", where))
            la_ = _matrix(_need(bd, "left_actions", where), where).reshape(algebras[L].dim, e, e)
            ra_ = _matrix(_need(bd, "right_actions", where), where).reshape(algebras[Rn].dim, e, e)
            M = Bimodule(algebras[L], algebras[Rn], la_, ra_, name=bd.get("name", "M"))
        for f in M.validate():
            validation.append({"check": "validate.bimodule", "object": M.name, "failure": f})
        sc.bimodule = M
        if not validation:
            T = TensorFunctor(M, categories[M.right_algebra.name], categories[M.left_algebra.name])
            sc.T = T
            sc.comma = CommaCategory(T)
            for name, d in data.get("comma_objects", {}).items():
                where = f"comma_objects.{name}"
                X = sc.module(_need(d, "X", where), where)
                Y = sc.module(_need(d, "Y", where), where)
                phi = _matrix(_need(d, "phi", where), where).reshape(X.dim, T(Y).dim)
                obj = sc.comma.obj(X, Y, phi, name=name)
                for f in sc.comma.validate_object(obj):
                    validation.append({"check": "validate.comma_object", "object": name, "failure": f})
                sc.comma_objects[name] = obj
    return sc


def algebra_to_json(A):
    out = {"dim": A.dim, "table": A.table.tolist(), "unit": A.unit.tolist()}
    if A.idempotents is not None:
        out["idempotents"] = [e.tolist() for e in A.idempotents]
    if A.radical is not None:
        out["radical"] = A.radical.basis.tolist()
    return out


def module_to_json(M, algebra_id):
    return {"algebra": algebra_id, "dim": M.dim, "actions": M.actions.tolist()}
