"""Spectral input data for the base pair (W, L).

A :class:`FanoBaseSpec` records the constant eigenvalues ``mu_k`` of the
curvature form ``2*pi*c_1(L; h)`` measured against a Kaehler-Einstein form
``omega_0`` with ``Ric(omega_0) = omega_0``.  Only the multiset of
eigenvalues enters the construction, so entries with equal ``mu`` are merged
and kept sorted ascending.

Eigenvalues of the catalogued families all follow from one observation:
when ``L`` is a rational power ``K_W^{-t}`` of the anticanonical bundle and
``h`` is the induced power of the metric on ``K_W^{-1}`` coming from
``omega_0``, the curvature of ``h`` is ``t * omega_0``, so every eigenvalue
equals ``t``.

* ``P^{n_i}`` with ``O(nu_i)``: ``K^{-1} = O(n_i + 1)`` gives ``t = nu_i/(n_i+1)``
  on the ``n_i`` directions of that factor.
* ``Gr(k, p)`` with ``A(k,p)^nu``: ``K^{-1} = A(k,p)^k`` gives ``t = nu/k``
  on all ``p(k-p)`` directions.  This eigenvalue is derived from the
  bundle isomorphism, not quoted.
* A degree-``n`` hypersurface ``W`` in ``P^{n+1}`` with ``L = O(1)|_W``:
  adjunction gives ``K_W = O(-2)|_W``, hence ``L^2 = K_W^{-1}`` and ``t = 1/2``
  in all ``n`` directions.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence

from .errors import EigenvalueOutOfRange, EmptySpec, InvalidSpec
from .ratpoly import as_fraction


@dataclass(frozen=True)
class FanoBaseSpec:
    """Normalized eigenvalue multiset ``((mu, multiplicity), ...)``.

    Equality and hashing ignore ``label``.
    """

    entries: tuple
    label: str = field(default="", compare=False)

    @property
    def n(self) -> int:
        return sum(m for _, m in self.entries)

    @property
    def mus(self) -> list:
        """Eigenvalues listed with multiplicity, ascending."""
        return [mu for mu, m in self.entries for _ in range(m)]

    def to_json_dict(self) -> dict:
        return {
            "label": self.label,
            "entries": [{"mu": str(mu), "multiplicity": m} for mu, m in self.entries],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())


def make_spec(entries: Iterable, label: str = "") -> FanoBaseSpec:
    """Validate, merge equal eigenvalues and sort ascending."""
    merged: dict = {}
    for item in entries:
        try:
            mu, mult = item
        except (TypeError, ValueError):
            raise InvalidSpec(f"entry {item!r} is not a (mu, multiplicity) pair") from None
        try:
            mu = as_fraction(mu)
        except (TypeError, ValueError, ZeroDivisionError) as exc:
            raise InvalidSpec(f"bad eigenvalue {item[0]!r}: {exc}") from None
        if isinstance(mult, bool) or not isinstance(mult, int):
            raise InvalidSpec(f"multiplicity must be an integer, got {mult!r}")
        if mult < 1:
            raise InvalidSpec(f"multiplicity must be >= 1, got {mult}")
        if not -1 < mu < 1:
            raise EigenvalueOutOfRange(f"eigenvalue {mu} violates -1 < mu < 1")
        merged[mu] = merged.get(mu, 0) + mult
    if not merged:
        raise EmptySpec("spectrum has no entries")
    return FanoBaseSpec(tuple(sorted(merged.items())), label)


def product_projective_spaces(dims: Sequence[int], twists: Sequence[int]) -> FanoBaseSpec:
    """``W = prod P^{n_i}``, ``L = tensor of p_i^* O(nu_i)``."""
    if len(dims) != len(twists):
        raise InvalidSpec("dims and twists must have the same length")
    if not dims:
        raise EmptySpec("no projective factors")
    entries = []
    for n_i, nu_i in zip(dims, twists):
        if n_i < 1:
            raise InvalidSpec(f"projective dimension must be >= 1, got {n_i}")
        if not -(n_i + 1) < nu_i < n_i + 1:
            raise EigenvalueOutOfRange(
                f"twist {nu_i} on P^{n_i} violates -{n_i + 1} < nu < {n_i + 1}"
            )
        entries.append((Fraction(nu_i, n_i + 1), n_i))
    factors = " x ".join(f"P^{d}" for d in dims)
    label = f"{factors}, nu=({','.join(str(v) for v in twists)})"
    return make_spec(entries, label)


def grassmannian(k: int, p: int, nu: int) -> FanoBaseSpec:
    """``W = Gr(k, p)``, ``L = A(k,p)^nu``; eigenvalue ``nu/k`` (derived)."""
    if not 1 <= p <= k - 1:
        raise InvalidSpec(f"Gr({k},{p}) needs 1 <= p <= k-1")
    if not -k < nu < k:
        raise EigenvalueOutOfRange(f"twist {nu} on Gr({k},{p}) violates -{k} < nu < {k}")
    label = f"Gr({k},{p}), L=A({k},{p})^{nu}"
    if 2 <= p <= k - 2:
        label += " [non-toric]"
    return make_spec([(Fraction(nu, k), p * (k - p))], label)


def fermat_hypersurface(n: int) -> FanoBaseSpec:
    """Degree-``n`` Fermat hypersurface in ``P^{n+1}`` with ``L = O(1)|_W``."""
    if n < 3:
        raise InvalidSpec(f"hypersurface family requires n >= 3, got {n}")
    label = f"Fermat hypersurface of degree {n} in P^{n + 1}, L=O(1)"
    if n == 3:
        label += " [cubic threefold, non-toric]"
    return make_spec([(Fraction(1, 2), n)], label)


CATALOG = [
    {
        "family": "pp",
        "grammar": "pp:n1,n2,.../v1,v2,...",
        "description": "product of projective spaces P^{n_i} with L = O(nu_i) on each factor",
        "bounds": "-(n_i+1) < nu_i < n_i+1",
        "eigenvalues": "nu_i/(n_i+1) with multiplicity n_i",
        "notes": "toric",
    },
    {
        "family": "gr",
        "grammar": "gr:k,p,v",
        "description": "Grassmannian Gr(k,p) of p-planes in C^k with L = A(k,p)^nu",
        "bounds": "-k < nu < k, 1 <= p <= k-1",
        "eigenvalues": "nu/k with multiplicity p(k-p) (derived from K^-1 = A(k,p)^k)",
        "notes": "non-toric when 2 <= p <= k-2",
    },
    {
        "family": "fermat",
        "grammar": "fermat:n",
        "description": "Fermat hypersurface of degree n in P^{n+1} with L = O(1)|_W",
        "bounds": "n >= 3",
        "eigenvalues": "1/2 with multiplicity n (K_W = O(-2)|_W by adjunction)",
        "notes": "n = 3 is the cubic threefold, non-toric",
    },
]

ALIASES = {"dp1": "pp:1/1"}


def _ints(text: str) -> list:
    try:
        return [int(t) for t in text.split(",") if t.strip() != ""]
    except ValueError:
        raise InvalidSpec(f"expected comma-separated integers, got {text!r}") from None


def parse_catalog_name(name: str) -> FanoBaseSpec:
    """Build a spec from ``dp1``, ``pp:1,2/1,0``, ``gr:4,2,1`` or ``fermat:3``."""
    name = ALIASES.get(name.strip(), name.strip())
    family, sep, args = name.partition(":")
    if not sep:
        raise InvalidSpec(f"unknown catalog entry {name!r}")
    if family == "pp":
        dims, slash, twists = args.partition("/")
        if not slash:
            raise InvalidSpec("pp grammar is pp:n1,n2,.../v1,v2,...")
        return product_projective_spaces(_ints(dims), _ints(twists))
    if family == "gr":
        vals = _ints(args)
        if len(vals) != 3:
            raise InvalidSpec("gr grammar is gr:k,p,v")
        return grassmannian(*vals)
    if family == "fermat":
        vals = _ints(args)
        if len(vals) != 1:
            raise InvalidSpec("fermat grammar is fermat:n")
        return fermat_hypersurface(vals[0])
    raise InvalidSpec(f"unknown catalog family {family!r}")


def spec_from_json_dict(data) -> FanoBaseSpec:
    if not isinstance(data, dict) or "entries" not in data:
        raise InvalidSpec("spec JSON must be an object with an 'entries' list")
    entries = data["entries"]
    if not isinstance(entries, list):
        raise InvalidSpec("'entries' must be a list")
    pairs = []
    for e in entries:
        if not isinstance(e, dict) or "mu" not in e or "multiplicity" not in e:
            raise InvalidSpec(f"bad entry {e!r}")
        if isinstance(e["mu"], float):
            raise InvalidSpec("mu must be an exact fraction string, not a float")
        pairs.append((str(e["mu"]), e["multiplicity"]))
    return make_spec(pairs, str(data.get("label", "")))


def load_spec(source: str) -> FanoBaseSpec:
    """Resolve a JSON file path or a catalog name."""
    path = Path(source)
    if path.suffix == ".json" or path.is_file():
        try:
            data = json.loads(path.read_text(encoding="utf-8"))
        except OSError as exc:
            raise InvalidSpec(f"cannot read {source}: {exc}") from None
        except json.JSONDecodeError as exc:
            raise InvalidSpec(f"invalid JSON in {source}: {exc}") from None
        return spec_from_json_dict(data)
    return parse_catalog_name(source)
