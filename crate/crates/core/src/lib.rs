//! Rule-based transliteration of Arabic into Maltese orthography.
//!
//! Three schemes are provided:
//!
//! * Buckwalter, the standard one-to-one ASCII encoding ([`script`]);
//! * a character-level Maltese mapping ([`chartx`]);
//! * a morphology-aware mapping that consumes externally produced
//!   morphological analyses ([`morphtx`]).
//!
//! Around them sit corpus tooling for labeled datasets ([`corpus`]) and a
//! subword fertility analyzer ([`fertility`]). Batch entry points run
//! sentence-parallel when the `parallel` feature is on (the default).
//!
//! ```
//! use ar2mt::pipeline::{Scheme, Transliterator};
//!
//! let tx = Transliterator::default();
//! let out = tx.sentence("أوقفت السيارة في الطريق.", Scheme::CharTx, None);
//! assert_eq!(out.text, "uqft alsjara fi altriq.");
//! ```

pub mod chartx;
pub mod corpus;
pub mod error;
pub mod fertility;
pub mod morphtx;
pub mod parallel;
pub mod pipeline;
pub mod script;

pub use chartx::{CharTx, RuleTable};
pub use error::{Error, Result};
pub use morphtx::MorphTx;
pub use pipeline::{Scheme, Transliterator};

/// Combined SHA-256 fingerprint of a character table and a morpheme rule set.
pub fn rules_fingerprint(chartx: &RuleTable, morph: &morphtx::MorphRuleSet) -> String {
    use sha2::{Digest, Sha256};
    let mut h = Sha256::new();
    h.update(chartx.checksum().as_bytes());
    h.update(b"\n");
    h.update(morph.checksum().as_bytes());
    hex::encode(h.finalize())
}
