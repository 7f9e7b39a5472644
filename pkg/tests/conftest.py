import math

import pytest

from refind.corpus import DocumentRecord, UserProfile


def make_record(**overrides) -> DocumentRecord:
    """A valid baseline record; tests override what they care about."""
    fields = dict(
        doc_id="doc-0000",
        path="library/research-paper/doc-0000.pdf",
        file_size=1_000_000,
        file_type="pdf",
        created_at=1_700_000_000,
        modified_at=1_710_000_000,
        last_accessed_at=1_720_000_000,
        author_count=2,
        author_genders=("male", "female"),
        pages=12,
        image_count=3,
        table_count=1,
        image_color="colorized",
        content_category="research-paper",
        difficulty_level=3,
        topic_vector=(1.0, 0.0, 0.0),
        language="en",
        has_bibliography=True,
    )
    fields.update(overrides)
    return DocumentRecord(**fields)


def unit_vector(*components) -> tuple:
    norm = math.sqrt(sum(c * c for c in components))
    return tuple(c / norm for c in components)


@pytest.fixture
def profile():
    return UserProfile(interest_vector=(1.0, 0.0, 0.0))


@pytest.fixture
def pages_corpus():
    """Five otherwise-identical documents with pages 5, 8, 11, 40, 201."""
    return [
        make_record(doc_id=f"doc-{i:04d}", pages=p)
        for i, p in enumerate([5, 8, 11, 40, 201])
    ]
