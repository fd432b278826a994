"""
JSON Documents

Pydantic models for every document the CLI reads (groups, set-level actions,
algebras, algebra-level actions) and helpers that turn them into library objects.

Key Features:
- Malformed JSON reported with line and column, schema violations with the field path
- Group sources: preset string, Cayley-table document, permutation-generator document
- Action sources: set-level {"set_size", "maps"} or algebra-level {"algebra", "ideals", "alpha"}
- Export helpers for tables and S(G)-action data with exact "p/q" entries

Author: excross Team
"""

import json
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, Tuple, Type, TypeVar, Union

from pydantic import BaseModel, ConfigDict, Field, PositiveInt, StrictInt, ValidationError, model_validator

from src.algebra import StructureAlgebra
from src.errors import DocumentError, GroupMismatch
from src.groups import GroupTable, load_group
from src.linalg import decode_matrix, decode_vector, encode_matrix, encode_vector
from src.partial_action import (
    AlgebraPartialAction,
    SetPartialAction,
    SgAction,
    algebra_action,
    set_action,
)
from utils.logging_config import get_logger

logger = get_logger("excross.documents")

Scalar = Union[StrictInt, str]
Model = TypeVar("Model", bound=BaseModel)


# ============================================================================
# Document models
# ============================================================================

class Document(BaseModel):
    model_config = ConfigDict(extra="forbid")

    version: Literal["1"] = "1"


class GroupDocument(Document):
    """A Cayley table, or permutations generating the group."""
    names: Optional[List[str]] = None
    table: Optional[List[List[int]]] = None
    permutations: Optional[List[List[int]]] = None

    @model_validator(mode="after")
    def _one_source(self):
        if (self.table is None) == (self.permutations is None):
            raise ValueError("exactly one of 'table' or 'permutations' is required")
        return self

    def to_group(self) -> GroupTable:
        return load_group(self.model_dump(exclude_none=True, exclude={"version"}))


GroupRef = Union[str, GroupDocument]


class SetActionDocument(Document):
    group: Optional[GroupRef] = None
    set_size: PositiveInt
    maps: Dict[str, List[Tuple[int, int]]] = Field(default_factory=dict)


class AlgebraDocument(Document):
    """Structure constants keyed "i,j"; absent products are zero."""
    labels: List[str]
    products: Dict[str, List[Scalar]] = Field(default_factory=dict)
    involution: Optional[List[List[Scalar]]] = None
    unit: Optional[List[Scalar]] = None
    name: str = "A"

    def to_algebra(self) -> StructureAlgebra:
        n = len(self.labels)
        products = {}
        for key, coords in self.products.items():
            try:
                i, j = (int(part) for part in key.split(","))
            except ValueError:
                raise DocumentError(f"products key {key!r} is not of the form 'i,j'", witness=key)
            if not (0 <= i < n and 0 <= j < n):
                raise DocumentError(f"products key {key!r} outside a basis of size {n}", witness=key)
            products[(i, j)] = decode_vector(coords, n)
        involution = decode_matrix(self.involution, n) if self.involution is not None else None
        unit = decode_vector(self.unit, n) if self.unit is not None else None
        return StructureAlgebra(self.labels, products, involution=involution, unit=unit, name=self.name)


class AlgebraActionDocument(Document):
    group: Optional[GroupRef] = None
    algebra: AlgebraDocument
    ideals: Dict[str, List[List[Scalar]]] = Field(default_factory=dict)
    alpha: Dict[str, List[List[Scalar]]] = Field(default_factory=dict)


# ============================================================================
# Parsing
# ============================================================================

def _location(loc: Tuple[Any, ...]) -> str:
    return ".".join(str(part) for part in loc) or "<root>"


def parse_payload(data: Any, model: Type[Model], source: str = "<document>") -> Model:
    try:
        return model.model_validate(data)
    except ValidationError as exc:
        first = exc.errors()[0]
        where = _location(first["loc"])
        raise DocumentError(f"{source}: field {where}: {first['msg']}", witness=where)


def read_json(path: Union[str, Path]) -> Any:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise DocumentError(f"cannot read {path}: {exc.strerror}", witness=str(path))
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(
            f"{path}:{exc.lineno}:{exc.colno}: invalid JSON: {exc.msg}",
            witness={"line": exc.lineno, "column": exc.colno},
        )


def parse_document(path: Union[str, Path], model: Type[Model]) -> Model:
    return parse_payload(read_json(path), model, str(path))


def _is_file_reference(source: str) -> bool:
    return source.lower().endswith(".json") or Path(source).is_file()


def load_group_source(source: Union[str, GroupDocument, GroupTable]) -> GroupTable:
    """Preset string, path to a group document, or an inline group document."""
    if isinstance(source, GroupTable):
        return source
    if isinstance(source, GroupDocument):
        return source.to_group()
    if _is_file_reference(source):
        return parse_document(source, GroupDocument).to_group()
    return load_group(source)


def _resolve_group(ref: Optional[GroupRef], group: Optional[GroupTable], source: str) -> GroupTable:
    if ref is None and group is None:
        raise DocumentError(f"{source}: no group given (use a 'group' field or --group)", witness="group")
    if ref is None:
        return group
    declared = load_group_source(ref)
    if group is not None and group != declared:
        raise GroupMismatch(
            f"{source}: document group (order {declared.order}) differs from --group (order {group.order})",
            witness={"document": declared.names, "cli": group.names},
        )
    return declared


def _element(G: GroupTable, name: str) -> int:
    return G.index(name)


def _set_action(doc: SetActionDocument, G: GroupTable) -> SetPartialAction:
    maps = {_element(G, name): pairs for name, pairs in doc.maps.items()}
    return set_action(G, doc.set_size, maps)


def _algebra_action(doc: AlgebraActionDocument, G: GroupTable) -> AlgebraPartialAction:
    A = doc.algebra.to_algebra()
    ideals = {
        _element(G, name): [decode_vector(v, A.dim) for v in vectors]
        for name, vectors in doc.ideals.items()
    }
    alpha = {}
    for name, rows in doc.alpha.items():
        g = _element(G, name)
        g_inv = G.inverse(g)
        if g_inv in ideals:
            width = len(ideals[g_inv])
        else:
            width = A.dim if g_inv == 0 else 0
        alpha[g] = decode_matrix(rows, width)
    return algebra_action(G, A, ideals, alpha)


def load_action_source(
    path: Union[str, Path], group: Optional[GroupTable] = None
) -> Union[SetPartialAction, AlgebraPartialAction]:
    """Set-level or algebra-level action, detected from the document's keys."""
    data = read_json(path)
    source = str(path)
    if isinstance(data, dict) and ("algebra" in data or "alpha" in data):
        doc = parse_payload(data, AlgebraActionDocument, source)
        G = _resolve_group(doc.group, group, source)
        action = _algebra_action(doc, G)
        logger.info(f"Loaded algebra-level action from {source}: dim A = {action.algebra.dim}")
        return action
    doc = parse_payload(data, SetActionDocument, source)
    G = _resolve_group(doc.group, group, source)
    action = _set_action(doc, G)
    logger.info(f"Loaded set-level action from {source}: |X| = {action.base_size}, |G| = {G.order}")
    return action


def load_algebra_source(
    path: Union[str, Path], group: Optional[GroupTable] = None
) -> Union[StructureAlgebra, AlgebraPartialAction]:
    """An algebra document, or an algebra-level action document."""
    data = read_json(path)
    if isinstance(data, dict) and "algebra" in data:
        return load_action_source(path, group)
    return parse_payload(data, AlgebraDocument, str(path)).to_algebra()


# ============================================================================
# Export
# ============================================================================

def algebra_document(A: StructureAlgebra) -> Dict[str, Any]:
    doc: Dict[str, Any] = {
        "labels": list(A.labels),
        "products": {f"{i},{j}": encode_vector(v) for (i, j), v in sorted(A.products.items())},
        "name": A.name,
    }
    if A.involution is not None:
        doc["involution"] = encode_matrix(A.involution)
    if A.unit is not None:
        doc["unit"] = encode_vector(A.unit)
    return doc


def sg_action_rows(B: SgAction) -> List[Dict[str, Any]]:
    """One row per s: dim E_s, its RREF basis and beta_s in RREF coordinates."""
    S = B.semigroup
    return [
        {
            "element": S.render(s),
            "dim": B.E[s].rank,
            "basis": B.E[s].to_json(),
            "beta": encode_matrix(B.beta[s].matrix),
        }
        for s in S
    ]


def sg_action_table(B: SgAction) -> Dict[str, Any]:
    S = B.semigroup
    return {
        "columns": ["dim E_s", "dim E_{s*}"],
        "elements": [S.render(s) for s in S],
        "table": [[B.E[s].rank, B.E[S.star(s)].rank] for s in S],
    }


def sg_action_beta_table(B: SgAction) -> Dict[str, Any]:
    """dim E_s, the RREF basis of E_s and beta_s per element, in the report table layout."""
    rows = sg_action_rows(B)
    return {
        "columns": ["dim E_s", "basis of E_s", "beta_s"],
        "elements": [row["element"] for row in rows],
        "table": [[row["dim"], row["basis"], row["beta"]] for row in rows],
    }
