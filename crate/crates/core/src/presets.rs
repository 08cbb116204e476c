//! Bundled logics and example proofs.

use crate::error::Result;
use crate::syntax::{parse_logic, LogicPresentation};

/// `(file name, contents)` of every bundled logic.
pub const LOGICS: &[(&str, &str)] = &[
    ("e.logic", include_str!("../presets/e.logic")),
    ("m.logic", include_str!("../presets/m.logic")),
    ("kt.logic", include_str!("../presets/kt.logic")),
    ("cdpm.logic", include_str!("../presets/cdpm.logic")),
];

/// `(file name, logic file name, contents)` of every bundled proof.
pub const PROOFS: &[(&str, &str, &str)] = &[
    ("kt-t.proof", "kt.logic", include_str!("../presets/kt-t.proof")),
    ("cdpm-fdp.proof", "cdpm.logic", include_str!("../presets/cdpm-fdp.proof")),
];

/// Contents of a bundled file by name, with or without a directory prefix
/// such as `presets/`.
pub fn source(name: &str) -> Option<&'static str> {
    let base = name.rsplit(['/', '\\']).next().unwrap_or(name);
    let base = if base.contains('.') { base.to_string() } else { format!("{base}.logic") };
    LOGICS
        .iter()
        .map(|(n, t)| (*n, *t))
        .chain(PROOFS.iter().map(|(n, _, t)| (*n, *t)))
        .find(|(n, _)| *n == base)
        .map(|(_, t)| t)
}

/// Parses a bundled logic by name (`"kt"` or `"kt.logic"`).
pub fn logic(name: &str) -> Option<Result<LogicPresentation>> {
    let file = if name.ends_with(".logic") { name.to_string() } else { format!("{name}.logic") };
    LOGICS.iter().find(|(n, _)| *n == file).map(|(_, t)| parse_logic(t))
}
