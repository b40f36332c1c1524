use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::Symbol;
use crate::constructions::{CompositionSpec, QuadraticSpec};
use crate::isometry::Isometry;
use crate::loops::BuiltinLoop;
use crate::q4::BooleanFunction;

/// How a code was built. Replaying a record (see
/// [`crate::constructions::replay`]) regenerates an identical word set;
/// `Literal` codes carry no recipe.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum Provenance {
    Literal,
    /// Graph `{(x, y, x·y)}` of a built-in binary loop.
    Graph { quasigroup: BuiltinLoop },
    /// `{x : x_1 · … · x_length = e}` for a built-in group.
    Iterated { group: BuiltinLoop, length: usize },
    Composition { spec: CompositionSpec },
    Quadratic { spec: QuadraticSpec },
    /// Standard semilinear code in `Q_4^n` with Boolean perturbation `r`.
    Semilinear { r: BooleanFunction },
    CodeH,
    Product { left: Box<Provenance>, right: Box<Provenance> },
    Subcode { parent: Box<Provenance>, fixed: BTreeMap<usize, Symbol> },
    Image { parent: Box<Provenance>, isometry: Isometry },
}

impl Default for Provenance {
    fn default() -> Self {
        Provenance::Literal
    }
}
