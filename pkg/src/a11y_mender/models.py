"""
Pydantic models for the a11y-mender application.

This module provides the JSON wire formats (taxonomy file, detection and
correction reports, benchmark datasets, evaluation reports, provider
responses) and the provider configuration model.
"""

from pydantic import BaseModel, ConfigDict, Field, SecretStr
from pydantic.alias_generators import to_camel

from .enums import (
    Category,
    CorrectionSource,
    DiscardReason,
    Impact,
    Strategy,
    SupplementaryKind,
)

SCHEMA_VERSION = "1.0"


class WireModel(BaseModel):
    """Base for camelCase JSON documents."""

    model_config = ConfigDict(
        alias_generator=to_camel, populate_by_name=True, extra="ignore"
    )


# ----------------------------------------------------------------------
# Configuration
# ----------------------------------------------------------------------
class ProviderConfig(BaseModel):
    """Connection settings for an OpenAI-compatible provider."""

    endpoint: str
    model: str
    embedding_model: str
    api_key: SecretStr = Field(default=SecretStr(""), exclude=True, repr=False)
    timeout: float = 120.0
    max_parallel: int = Field(default=4, ge=1)
    retries: int = Field(default=2, ge=0)

    def headers(self) -> dict[str, str]:
        """Request headers, including the bearer token when a key is set."""
        headers = {"Content-Type": "application/json"}
        key = self.api_key.get_secret_value()
        if key:
            headers["Authorization"] = f"Bearer {key}"
        return headers


# ----------------------------------------------------------------------
# Taxonomy file
# ----------------------------------------------------------------------
class ViolationTypeRecord(BaseModel):
    """One entry of the taxonomy file."""

    model_config = ConfigDict(extra="forbid")

    name: str = Field(min_length=1)
    category: Category
    description: str
    impact: Impact
    wcag: list[str]
    supplementary: SupplementaryKind


class WcagCriterionRecord(BaseModel):
    """Title and summary of one WCAG success criterion."""

    number: str
    title: str
    level: str
    summary: str


# ----------------------------------------------------------------------
# Violation records shared by reports and datasets
# ----------------------------------------------------------------------
class ContextRecord(WireModel):
    """Page context of a violation."""

    url: str = ""
    domain: str = ""


class SupplementaryRecord(WireModel):
    """Supplementary evidence attached to a violation."""

    kind: SupplementaryKind
    ref: str | None = None
    foreground: str | None = None
    background: str | None = None
    contrast_ratio: float | None = None


class CorrectionScoresRecord(WireModel):
    """Violation scores of the correction candidates."""

    original: int
    llm1: int | None = None
    llm2: int | None = None


class CorrectionFlagsRecord(WireModel):
    """Flags raised while correcting a violation."""

    not_fixed: bool = False
    invalid_llm1: bool = False
    invalid_llm2: bool = False


class CorrectionRecord(WireModel):
    """Correction attached to a violation entry."""

    chosen_html: str
    source: CorrectionSource
    scores: CorrectionScoresRecord
    flags: CorrectionFlagsRecord = Field(default_factory=CorrectionFlagsRecord)
    final_score: int
    confidence: int | None = None
    explanation: str | None = None
    llm_calls: int = 0
    error: str | None = None


class ViolationRecord(WireModel):
    """One violation as written to reports and datasets."""

    id: str
    category: Category
    violation_name: str
    html_elements: list[str] = Field(min_length=1)
    description: str
    impact: Impact
    violation_score: int = Field(ge=1, le=5)
    supplementary: SupplementaryRecord | None = None
    context: ContextRecord = Field(default_factory=ContextRecord)
    approximate: bool = False
    node_paths: list[str] = Field(default_factory=list)
    fix_advice: str | None = None
    screenshot: str | None = None
    human_references: list[str] | None = None
    correction: CorrectionRecord | None = None


class DiscardRecord(WireModel):
    """A model-reported finding that could not be grounded."""

    snippet: str
    violation_name: str
    reason: DiscardReason


class ViolationReport(WireModel):
    """Detection or correction report."""

    schema_version: str = SCHEMA_VERSION
    source: str = ""
    entries: list[ViolationRecord] = Field(default_factory=list)
    discarded: list[DiscardRecord] = Field(default_factory=list)


class BenchmarkDatasetFile(WireModel):
    """Benchmark dataset document."""

    schema_version: str
    provenance: str = ""
    entries: list[ViolationRecord]


# ----------------------------------------------------------------------
# Evaluation report
# ----------------------------------------------------------------------
class CategoryMetrics(WireModel):
    """Metrics of one category."""

    count: int
    r_initial: float
    r_fix: float
    improvement: float | None
    corrected: int


class SimilarityRow(WireModel):
    """Mean cosine similarity of one violation type."""

    violation_name: str
    mean_similarity: float
    entries: int


class SimilaritySummary(WireModel):
    """Similarity study result."""

    rows: list[SimilarityRow] = Field(default_factory=list)
    overall: float | None = None
    failures: int = 0


class EntryOutcomeRecord(WireModel):
    """Per-entry result of a correction run."""

    id: str
    violation_name: str
    category: Category
    initial_score: int
    final_score: int
    source: CorrectionSource
    not_fixed: bool
    llm_calls: int = 0
    similarity: float | None = None
    error: str | None = None


class EvaluationReport(WireModel):
    """Metrics of a correction run."""

    schema_version: str = SCHEMA_VERSION
    strategy: Strategy | None = None
    model: str | None = None
    entries: int
    r_initial: float
    r_fix: float
    improvement: float | None
    corrected: int
    llm_calls: int = 0
    per_category: dict[str, CategoryMetrics] = Field(default_factory=dict)
    similarity: SimilaritySummary | None = None
    outcomes: list[EntryOutcomeRecord] = Field(default_factory=list)


# ----------------------------------------------------------------------
# Provider responses (OpenAI-compatible)
# ----------------------------------------------------------------------
class ChatMessage(BaseModel):
    """Assistant message of a chat completion."""

    content: str | None = None


class ChatChoice(BaseModel):
    """One choice of a chat completion."""

    message: ChatMessage


class ChatCompletionResponse(BaseModel):
    """Response body of the chat completions endpoint."""

    choices: list[ChatChoice] = Field(min_length=1)

    @property
    def response_text(self) -> str:
        """Get the text of the first choice."""
        return self.choices[0].message.content or ""


class EmbeddingItem(BaseModel):
    """One vector of an embeddings response."""

    embedding: list[float]


class EmbeddingResponse(BaseModel):
    """Response body of the embeddings endpoint."""

    data: list[EmbeddingItem] = Field(min_length=1)

    @property
    def vector(self) -> list[float]:
        """Get the first embedding vector."""
        return self.data[0].embedding
