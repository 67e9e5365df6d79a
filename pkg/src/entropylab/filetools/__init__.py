"""Modules for reading and writing densities, families and tables."""

from .serialization import (
    FamilyFileError,
    decode_float,
    dump_family,
    encode_float,
    family_to_json,
    load_family,
    pdf_from_json,
    pdf_to_json,
)
from .tables import (
    SCHEMA_VERSION,
    OutputFormat,
    build_document,
    document_to_json,
    emit,
    frame_records,
    frame_to_csv,
    render_table,
)
