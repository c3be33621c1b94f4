//! JSON forms of codes and certificates.
//!
//! A code is `{"range": N, "rule": {"<window>": "<symbol>", ...}}` with one
//! entry per admissible window, written with the alphabet's characters.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::language::Subshift;

use super::inverse::AutomorphismCertificate;
use super::SlidingBlockCode;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeFile {
    pub range: usize,
    pub rule: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateFile {
    pub code: CodeFile,
    pub inverse: CodeFile,
    pub verification_depth: usize,
    pub exact: bool,
}

impl CodeFile {
    pub fn from_code(code: &SlidingBlockCode) -> Self {
        let a = &code.spec().alphabet;
        CodeFile {
            range: code.range(),
            rule: code.table().map(|(w, s)| (a.render(w), a.char_of(s).to_string())).collect(),
        }
    }

    /// Rebuilds the code over `shift`. The rule must cover exactly the admissible windows.
    pub fn to_code(&self, shift: &Subshift) -> Result<SlidingBlockCode> {
        let a = shift.alphabet();
        let windows = shift.words(2 * self.range + 1)?;
        let mut images = vec![None; windows.count()];
        for (w, s) in &self.rule {
            let word = a.parse_word(w)?;
            let idx = windows.index_of(&word).ok_or_else(|| {
                Error::MalformedCode(format!("window {w:?} is not an admissible word of length {}", windows.length()))
            })?;
            let mut chars = s.chars();
            let (Some(c), None) = (chars.next(), chars.next()) else {
                return Err(Error::MalformedCode(format!("image {s:?} is not a single symbol")));
            };
            images[idx] = Some(a.index_of(c)?);
        }
        let images = images
            .into_iter()
            .enumerate()
            .map(|(i, s)| s.ok_or_else(|| Error::MalformedCode(format!("no image for window {:?}", a.render(windows.get(i))))))
            .collect::<Result<Vec<_>>>()?;
        SlidingBlockCode::from_images(shift, self.range, windows, images)
    }
}

impl CertificateFile {
    pub fn from_certificate(cert: &AutomorphismCertificate) -> Self {
        CertificateFile {
            code: CodeFile::from_code(&cert.code),
            inverse: CodeFile::from_code(&cert.inverse),
            verification_depth: cert.verification_depth,
            exact: cert.exact,
        }
    }
}

/// Reads a code from either a code file or a certificate file (its `code` part).
pub fn code_from_json(shift: &Subshift, text: &str) -> Result<SlidingBlockCode> {
    if let Ok(cert) = serde_json::from_str::<CertificateFile>(text) {
        return cert.code.to_code(shift);
    }
    serde_json::from_str::<CodeFile>(text)
        .map_err(|e| Error::MalformedCode(e.to_string()))?
        .to_code(shift)
}
