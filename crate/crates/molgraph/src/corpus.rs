//! Deterministic in-package molecule corpus.
//!
//! Downstream crates need a reproducible supply of small valid molecules for
//! fixtures and tests, without a network or a bundled dataset. The corpus
//! mixes a curated seed list with systematic enumerations — heteroatom
//! chains, methyl-branched chains, substituted rings — deduplicated by
//! canonical string. Order is fixed: curated entries first, then the
//! generated families, so short samples stay chemically interesting.

use std::collections::HashSet;

use once_cell::sync::Lazy;

use crate::canon::canonical_smiles;
use crate::smiles::parse_smiles;

const CURATED: &[&str] = &[
    "C",
    "O",
    "N",
    "CO",
    "CC",
    "CCO",
    "CCN",
    "CC(C)O",
    "CC(C)=O",
    "CC=O",
    "OC=O",
    "C=C",
    "C#C",
    "C#N",
    "O=C=O",
    "CC#N",
    "CCOCC",
    "COC",
    "CCl",
    "CBr",
    "CF",
    "CI",
    "CS",
    "CSC",
    "NCCO",
    "NCC(=O)O",
    "CC(N)C(=O)O",
    "NC(CO)C(=O)O",
    "NC(Cc1ccccc1)C(=O)O",
    "CC(=O)O",
    "CC(=O)N",
    "CC(=O)OC",
    "CCOC(=O)C",
    "OCC(O)CO",
    "NC(N)=O",
    "NC(N)=N",
    "[NH4+]",
    "CC(=O)[O-]",
    "C[N+](C)(C)C",
    "C[N+](C)(C)CCO",
    "C[N+](=O)[O-]",
    "[O-][N+](=O)c1ccccc1",
    "OS(=O)(=O)O",
    "CS(=O)C",
    "CS(=O)(=O)C",
    "FC(F)F",
    "ClC(Cl)Cl",
    "FC(F)(F)c1ccccc1",
    "C1CC1",
    "C1CCC1",
    "C1CCCC1",
    "C1CCCCC1",
    "C1CCCCCC1",
    "C1CCOC1",
    "C1CCNC1",
    "C1CCNCC1",
    "C1CCOCC1",
    "O1CCOCC1",
    "C1COCCN1",
    "C1CNCCN1",
    "O=C1CCCCC1",
    "C1CCCCCCCCCCC1",
    "c1ccccc1",
    "Cc1ccccc1",
    "Oc1ccccc1",
    "Nc1ccccc1",
    "Clc1ccccc1",
    "COc1ccccc1",
    "Cc1ccc(C)cc1",
    "c1ccncc1",
    "c1cc[nH]c1",
    "c1ccoc1",
    "c1ccsc1",
    "c1cnc[nH]1",
    "Cn1ccnc1",
    "c1cncnc1",
    "c1cnccn1",
    "c1ccc2ccccc2c1",
    "c1ccc2[nH]ccc2c1",
    "c1ccc2ncccc2c1",
    "C=Cc1ccccc1",
    "O=Cc1ccccc1",
    "OCc1ccccc1",
    "CC(=O)c1ccccc1",
    "OC(=O)c1ccccc1",
    "OC(=O)c1ccccc1O",
    "NC(=O)c1ccccc1",
    "O=CC=Cc1ccccc1",
    "O=Cc1ccco1",
    "Nc1ccc(cc1)S(N)(=O)=O",
    "CC(C)Cc1ccc(cc1)C(C)C(=O)O",
    "CC(=O)Nc1ccc(O)cc1",
    "CC(=O)Oc1ccccc1C(=O)O",
    "Cn1cnc2c1c(=O)n(C)c(=O)n2C",
    "CN1CCCC1c1cccnc1",
    "CCCCCCCCCC",
];

const CHAIN_ELEMENTS: [char; 4] = ['C', 'N', 'O', 'S'];
const RING_SUBSTITUENTS: [&str; 7] = ["F", "Cl", "Br", "I", "C", "N", "O"];

fn chain_words(len: usize) -> Vec<String> {
    let mut out = vec![String::new()];
    for _ in 0..len {
        out = out
            .iter()
            .flat_map(|w| CHAIN_ELEMENTS.iter().map(move |c| format!("{w}{c}")))
            .collect();
    }
    out
}

fn candidates() -> Vec<String> {
    let mut out: Vec<String> = CURATED.iter().map(|s| s.to_string()).collect();

    // Unbranched heteroatom chains.
    for len in 2..=5 {
        out.extend(chain_words(len));
    }

    // One methyl branch at each interior position that can carry three
    // single bonds (divalent oxygen cannot).
    for len in [4usize, 5] {
        for w in chain_words(len) {
            for pos in 1..len - 1 {
                let host = w.as_bytes()[pos] as char;
                if matches!(host, 'C' | 'N' | 'S') {
                    out.push(format!("{}(C){}", &w[..=pos], &w[pos + 1..]));
                }
            }
        }
    }

    // Mono-substituted rings.
    for s in RING_SUBSTITUENTS {
        for ring in [
            "c1ccccc1", "c1ccncc1", "c1cccnc1", "c1ccccn1", "C1CCCCC1", "C1CCCC1", "C1CCOC1",
            "C1CCNC1", "C1CCNCC1",
        ] {
            out.push(format!("{s}{ring}"));
        }
    }

    // Di-substituted benzenes: ortho, meta, para.
    for a in RING_SUBSTITUENTS {
        for b in RING_SUBSTITUENTS {
            out.push(format!("{a}c1ccccc1{b}"));
            out.push(format!("{a}c1cccc({b})c1"));
            out.push(format!("{a}c1ccc({b})cc1"));
        }
    }

    out
}

static CORPUS: Lazy<Vec<String>> = Lazy::new(|| {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for cand in candidates() {
        let mol = parse_smiles(&cand)
            .unwrap_or_else(|e| panic!("corpus candidate `{cand}` failed to parse: {e}"));
        let canonical = canonical_smiles(&mol);
        if seen.insert(canonical.clone()) {
            out.push(canonical);
        }
    }
    out
});

/// The full corpus, as canonical strings in a fixed order.
pub fn corpus() -> &'static [String] {
    &CORPUS
}

/// The first `n` corpus entries (all of them if `n` exceeds the corpus).
pub fn sample_corpus(n: usize) -> Vec<String> {
    CORPUS.iter().take(n).cloned().collect()
}
