use serde::{Deserialize, Serialize};

use super::{MdsCode, Provenance};
use crate::algebra::{Alphabet, Structure, Symbol};
use crate::error::Result;

/// The canonical JSON layout of a code: words sorted lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeFile {
    pub q: usize,
    pub n: usize,
    pub structure: Structure,
    pub words: Vec<Vec<Symbol>>,
    #[serde(default)]
    pub provenance: Provenance,
}

impl CodeFile {
    pub fn from_code(code: &MdsCode) -> Self {
        Self {
            q: code.q(),
            n: code.n(),
            structure: code.alphabet().structure(),
            words: code.words().map(|w| w.to_vec()).collect(),
            provenance: code.provenance().clone(),
        }
    }

    pub fn into_code(self) -> Result<MdsCode> {
        let alphabet = Alphabet::new(self.q, self.structure)?;
        MdsCode::from_words(alphabet, self.n, self.words, self.provenance)
    }
}

impl MdsCode {
    /// Compact canonical JSON.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&CodeFile::from_code(self)).expect("code file serialises")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str::<CodeFile>(s)?.into_code()
    }
}
