//! Fixture files, the task runner and report emission.
//!
//! A fixture is a JSON document with named sections (algebras, ideals, ring
//! maps, functors, modules, complexes, maps, triangles, subcategories, hom
//! ideals, contractions) and a task list. Scalars are strings such as `"3/2"`;
//! algebra elements are objects from basis names to scalars; block matrices
//! have one row per target summand. Reports are emitted as JSON with sorted
//! keys and no timing data, so equal inputs give byte-identical output.

mod load;
mod schema;
mod tasks;

pub use load::{
    decode_complex, decode_contraction, decode_elem, decode_map, encode_complex, encode_contraction, encode_elem, encode_map,
    field_name, parse_field, Fixture,
};
pub use schema::*;
pub use tasks::{
    certificate_from_json, emit_json, emit_text, run_task, run_tasks, verify_certificate, workers_from_env, CertificateFile,
    Overrides, Report, Verdict, WORKERS_ENV,
};
