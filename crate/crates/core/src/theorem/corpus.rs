//! The test corpus: ring specs with their structural flags.

use serde::Serialize;

use crate::config::Config;
use crate::error::{Error, Result};
use crate::predicates::{is_local_ring, ring_is_abelian, ring_is_boolean, ring_is_connected, ring_is_exchange};
use crate::radical::{jacobson_radical, Ideal};
use crate::ring::{parse_ring_spec_with_cap, Ring};

pub const DEFAULT_CORPUS: &[&str] = &[
    "Z/2", "Z/3", "Z/4", "Z/5", "Z/6", "Z/7", "Z/8", "Z/9", "Z/10", "Z/11", "Z/12", "Z/13", "Z/14", "Z/15", "Z/16",
    "GF(2)", "GF(3)", "GF(4)", "GF(8)", "GF(9)",
    "Z/2 x Z/2", "Z/2 x Z/4", "Z/4 x Z/4", "Z/2 x Z/3",
    "triv(GF(2),1)", "triv(GF(2),2)", "triv(GF(3),2)", "triv(GF(4),2)",
    "M2(GF(2))",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RingFlags {
    pub order: u64,
    pub commutative: bool,
    pub abelian: bool,
    pub connected: bool,
    pub exchange: bool,
    pub local: bool,
    pub boolean: bool,
}

impl RingFlags {
    pub fn derive(ring: &Ring, cfg: &Config) -> Result<RingFlags> {
        Ok(RingFlags {
            order: ring.order(),
            commutative: ring.is_commutative(),
            abelian: ring_is_abelian(ring, cfg)?.holds,
            connected: ring_is_connected(ring, cfg)?.holds,
            exchange: ring_is_exchange(ring, cfg)?.holds,
            local: is_local_ring(ring, cfg)?.holds,
            boolean: ring_is_boolean(ring, cfg)?.holds,
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CorpusEntry {
    pub spec: String,
    #[serde(skip)]
    pub ring: Ring,
    pub flags: RingFlags,
    pub radical: Ideal,
}

impl CorpusEntry {
    pub fn new(spec: &str, cfg: &Config) -> Result<CorpusEntry> {
        let ring = parse_ring_spec_with_cap(spec, cfg.order_cap)?;
        Ok(CorpusEntry {
            spec: spec.trim().to_string(),
            flags: RingFlags::derive(&ring, cfg)?,
            radical: jacobson_radical(&ring, cfg)?,
            ring,
        })
    }
}

pub fn default_corpus(cfg: &Config) -> Result<Vec<CorpusEntry>> {
    DEFAULT_CORPUS.iter().map(|s| CorpusEntry::new(s, cfg)).collect()
}

/// One spec per line; `#` starts a comment, blank lines are skipped.
/// Errors carry the line number in front of the parse message.
pub fn parse_corpus(text: &str, cfg: &Config) -> Result<Vec<CorpusEntry>> {
    text.lines()
        .enumerate()
        .filter_map(|(i, line)| {
            let spec = line.split('#').next().unwrap_or("").trim();
            (!spec.is_empty()).then_some((i + 1, spec))
        })
        .map(|(line, spec)| {
            CorpusEntry::new(spec, cfg).map_err(|e| match e {
                Error::Parse { .. } => Error::Precondition(format!("corpus line {line}: {e}")),
                other => other,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_flags() {
        let corpus = default_corpus(&Config::default()).unwrap();
        assert_eq!(corpus.len(), DEFAULT_CORPUS.len());
        for e in &corpus {
            // finite rings are exchange
            assert!(e.flags.exchange, "{}", e.spec);
            if e.flags.boolean {
                assert!(e.flags.abelian);
            }
            if e.flags.commutative {
                assert!(e.flags.abelian);
            }
        }
        let m2 = corpus.iter().find(|e| e.spec == "M2(GF(2))").unwrap();
        assert!(!m2.flags.abelian && !m2.flags.commutative && m2.radical.is_zero());
        let t = corpus.iter().find(|e| e.spec == "triv(GF(2),2)").unwrap();
        assert!(t.flags.local && t.flags.connected && t.radical.len() == 4);
    }

    #[test]
    fn corpus_file_format() {
        let cfg = Config::default();
        let parsed = parse_corpus("# header\nZ/4\n\n  GF(3)  # a field\n", &cfg).unwrap();
        let specs: Vec<&str> = parsed.iter().map(|e| e.spec.as_str()).collect();
        assert_eq!(specs, vec!["Z/4", "GF(3)"]);
        assert!(parse_corpus("", &cfg).unwrap().is_empty());
        let err = parse_corpus("Z/4\nZ/x\n", &cfg).unwrap_err();
        assert!(err.to_string().contains("line 2"));
    }
}
