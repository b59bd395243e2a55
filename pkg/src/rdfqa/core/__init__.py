"""Core RDF model, parsing and indexing."""
