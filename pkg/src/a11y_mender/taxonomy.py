"""
Violation taxonomy for the a11y-mender application.

This module loads the data-driven registry of violation types, maps impact
levels to violation scores and provides the category descriptions and WCAG
success-criterion texts used when building prompts.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass
from pathlib import Path

from pydantic import TypeAdapter, ValidationError

from . import config
from .enums import Category, Impact, SupplementaryKind
from .errors import (
    DuplicateViolationTypeError,
    TaxonomyFileNotFoundError,
    UnknownViolationTypeError,
    raise_taxonomy_error,
)
from .models import ViolationTypeRecord, WcagCriterionRecord

CATEGORY_DESCRIPTIONS: dict[Category, str] = {
    Category.SYNTACTIC: (
        "Syntax violations occur when HTML code lacks essential structural "
        "elements or attributes required for accessibility, or uses them with "
        "invalid values."
    ),
    Category.SEMANTIC: (
        "Semantic violations occur when accessibility attributes or elements are "
        "present but their content is not meaningful for the context, such as "
        "vague alternative text or the wrong element for a page region."
    ),
    Category.LAYOUT: (
        "Layout violations concern the visual presentation of content, such as "
        "insufficient color contrast, restricted zooming or fixed text spacing, "
        "and must be fixed without breaking the visual design."
    ),
}

_RECORDS = TypeAdapter(list[ViolationTypeRecord])
_CRITERIA = TypeAdapter(list[WcagCriterionRecord])


def impact_to_score(impact: Impact) -> int:
    """Map an impact level to its violation score (cosmetic 1 ... critical 5)."""
    return impact.score


@dataclass(frozen=True)
class ViolationTypeSpec:
    """One violation type of the taxonomy."""

    name: str
    category: Category
    description: str
    impact: Impact
    wcag: tuple[str, ...]
    supplementary: SupplementaryKind

    @property
    def score(self) -> int:
        """Violation score of every instance of this type."""
        return impact_to_score(self.impact)

    @property
    def is_visual(self) -> bool:
        """Whether correcting this type needs a view of the rendered page."""
        return self.category is Category.SEMANTIC and self.supplementary in (
            SupplementaryKind.IMAGE,
            SupplementaryKind.VIDEO,
            SupplementaryKind.SCREENSHOT,
        )


@dataclass(frozen=True)
class WcagCriterion:
    """A WCAG success criterion."""

    number: str
    title: str
    level: str
    summary: str

    def render(self) -> str:
        """One-line rendering used in prompts."""
        return f"WCAG {self.number} {self.title} (Level {self.level}): {self.summary}"


class TaxonomyRegistry:
    """Immutable registry of violation types keyed by name."""

    _specs: dict[str, ViolationTypeSpec]
    _criteria: dict[str, WcagCriterion]

    def __init__(
        self,
        specs: Iterable[ViolationTypeSpec],
        criteria: Mapping[str, WcagCriterion] | None = None,
    ):
        """
        Build a registry.

        Args:
            specs: Violation types in file order
            criteria: WCAG criteria by number, for rendering guidelines

        Raises:
            DuplicateViolationTypeError: If two specs share a name
        """
        self._specs = {}
        for spec in specs:
            if spec.name in self._specs:
                raise DuplicateViolationTypeError(spec.name)
            self._specs[spec.name] = spec
        self._criteria = dict(criteria or {})

    def __contains__(self, name: object) -> bool:
        """Whether a type name is registered."""
        return name in self._specs

    def __iter__(self) -> Iterator[ViolationTypeSpec]:
        """Iterate over the specs in file order."""
        return iter(self._specs.values())

    def __len__(self) -> int:
        """Number of registered types."""
        return len(self._specs)

    def lookup(self, name: str) -> ViolationTypeSpec:
        """
        Get the spec of a violation type.

        Raises:
            UnknownViolationTypeError: If the name is not registered
        """
        try:
            return self._specs[name]
        except KeyError:
            raise UnknownViolationTypeError(name) from None

    def find(self, name: str) -> ViolationTypeSpec | None:
        """Case-insensitive lookup returning None for unknown names."""
        spec = self._specs.get(name)
        if spec is not None:
            return spec
        lowered = name.lower()
        return next(
            (s for s in self._specs.values() if s.name.lower() == lowered), None
        )

    def list_types(self, category: Category | None = None) -> list[ViolationTypeSpec]:
        """All specs, optionally of one category, sorted by name."""
        selected = [
            spec
            for spec in self._specs.values()
            if category is None or spec.category is category
        ]
        return sorted(selected, key=lambda spec: spec.name)

    def category_description(self, category: Category) -> str:
        """Fixed description of a category."""
        return CATEGORY_DESCRIPTIONS[category]

    def criteria_for(self, spec: ViolationTypeSpec) -> list[WcagCriterion]:
        """WCAG criteria referenced by a spec, skipping unknown numbers."""
        return [self._criteria[n] for n in spec.wcag if n in self._criteria]

    def render_guidelines(self, spec: ViolationTypeSpec) -> str:
        """Text of the WCAG guidelines a spec references."""
        known = self.criteria_for(spec)
        if known:
            return "\n".join(criterion.render() for criterion in known)
        return "\n".join(f"WCAG {number}" for number in spec.wcag)


def list_types(
    registry: TaxonomyRegistry, category: Category | None = None
) -> list[ViolationTypeSpec]:
    """All entries of a registry, filtered by category when given, sorted by name."""
    return registry.list_types(category)


def lookup(registry: TaxonomyRegistry, name: str) -> ViolationTypeSpec:
    """Look a violation type up by name."""
    return registry.lookup(name)


def load_wcag_criteria(path: Path | None = None) -> dict[str, WcagCriterion]:
    """
    Load WCAG success criteria from a JSON array.

    Args:
        path: Criteria file; the bundled one when None

    Returns:
        Criteria keyed by number
    """
    source = path or config.BUNDLED_WCAG_CRITERIA
    try:
        records = _CRITERIA.validate_json(source.read_bytes())
    except FileNotFoundError as exc:
        raise TaxonomyFileNotFoundError(source) from exc
    except ValidationError as exc:
        raise_taxonomy_error(exc)
    return {
        r.number: WcagCriterion(r.number, r.title, r.level, r.summary) for r in records
    }


def load_taxonomy(
    path: Path | None = None, criteria: Mapping[str, WcagCriterion] | None = None
) -> TaxonomyRegistry:
    """
    Load a taxonomy file.

    The file is a JSON array of objects with exactly the keys ``name``,
    ``category``, ``description``, ``wcag``, ``impact`` and ``supplementary``.

    Args:
        path: Taxonomy file; the configured or bundled one when None
        criteria: WCAG criteria; the bundled ones when None

    Returns:
        The registry

    Raises:
        TaxonomyFileNotFoundError: If the file does not exist
        TaxonomySchemaError: If the file does not match the schema
        DuplicateViolationTypeError: If a name appears twice
    """
    source = path or config.get_taxonomy_path()
    try:
        raw = source.read_bytes()
    except FileNotFoundError as exc:
        raise TaxonomyFileNotFoundError(source) from exc
    try:
        records = _RECORDS.validate_json(raw)
    except ValidationError as exc:
        raise_taxonomy_error(exc)
    specs = [
        ViolationTypeSpec(
            name=r.name,
            category=r.category,
            description=r.description,
            impact=r.impact,
            wcag=tuple(r.wcag),
            supplementary=r.supplementary,
        )
        for r in records
    ]
    return TaxonomyRegistry(
        specs, criteria if criteria is not None else load_wcag_criteria()
    )
