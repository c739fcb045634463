//! Bundled ring definitions used by tests, benchmarks and the CLI.

use crate::error::{Error, Result};
use crate::ringdef::RingDefinition;

#[derive(Clone, Copy, Debug)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub source: &'static str,
}

macro_rules! entry {
    ($name:literal) => {
        CorpusEntry {
            name: $name,
            source: include_str!(concat!("../corpus/", $name, ".ring")),
        }
    };
}

pub const CORPUS: [CorpusEntry; 9] = [
    entry!("flagship"),
    entry!("yoshino1"),
    entry!("yoshino2"),
    entry!("yoshino3"),
    entry!("yoshino4"),
    entry!("roos1"),
    entry!("roos2"),
    entry!("golod-plane"),
    entry!("dual-numbers"),
];

pub fn entry(name: &str) -> Option<&'static CorpusEntry> {
    CORPUS.iter().find(|e| e.name == name)
}

pub fn definition(name: &str) -> Result<RingDefinition> {
    let e = entry(name).ok_or_else(|| Error::Input(format!("no corpus ring named `{name}`")))?;
    RingDefinition::parse(e.source)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::Rational;

    #[test]
    fn every_entry_builds() {
        for e in &CORPUS {
            let def = definition(e.name).unwrap();
            def.build::<Rational>(&(), None)
                .unwrap_or_else(|err| panic!("{}: {err}", e.name));
        }
        assert!(entry("missing").is_none());
    }
}
