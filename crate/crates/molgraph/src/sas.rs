//! Synthetic-accessibility surrogate on a 1-10 scale.
//!
//! Not a trained model: a fixed additive score over size, ring fusion,
//! macrocycles, congested centers, charges and rare elements, with weights
//! in `data/sas_weights.toml`. Higher means harder to make.

use std::collections::BTreeMap;

use once_cell::sync::Lazy;
use serde::Deserialize;

use crate::canon::symmetry_classes;
use crate::element::Element;
use crate::molecule::{BondOrder, Molecule};
use crate::rings::ring_info;

const WEIGHTS_TOML: &str = include_str!("../data/sas_weights.toml");

#[derive(Debug, Deserialize)]
struct Weights {
    version: u32,
    base: f64,
    min: f64,
    max: f64,
    size_per_extra_heavy_atom: f64,
    ring_fusion_bond: f64,
    macrocycle: f64,
    congested_center: f64,
    charged_atom: f64,
    rare_atom: BTreeMap<String, f64>,
}

static WEIGHTS: Lazy<Weights> =
    Lazy::new(|| toml::from_str(WEIGHTS_TOML).expect("embedded sas weights parse"));

pub fn weights_version() -> u32 {
    WEIGHTS.version
}

#[derive(Debug, Clone, PartialEq)]
pub struct SasBreakdown {
    pub value: f64,
    pub size_term: f64,
    pub ring_fusion_term: f64,
    pub macrocycle_term: f64,
    pub congestion_term: f64,
    pub charge_term: f64,
    pub rare_atom_term: f64,
}

/// Accessibility score in [1, 10]; deterministic for a given graph.
pub fn sas_estimate(m: &Molecule) -> SasBreakdown {
    let w = &*WEIGHTS;
    let heavy = m.atom_count() as f64;
    let size_term = w.size_per_extra_heavy_atom * (heavy - 10.0).max(0.0);

    let rings = ring_info(m);
    let ring_fusion_term = w.ring_fusion_bond * rings.fused_bonds as f64;
    let macrocycle_term = w.macrocycle * rings.macrocycles as f64;

    let classes = symmetry_classes(m);
    let congested = (0..m.atom_count())
        .filter(|&i| is_congested(m, i, &classes))
        .count();
    let congestion_term = w.congested_center * congested as f64;

    let charged = m.atoms().iter().filter(|a| a.charge != 0).count();
    let charge_term = w.charged_atom * charged as f64;

    let rare_atom_term: f64 = m
        .atoms()
        .iter()
        .map(|a| w.rare_atom.get(a.element.symbol()).copied().unwrap_or(0.0))
        .sum();

    let raw = w.base
        + size_term
        + ring_fusion_term
        + macrocycle_term
        + congestion_term
        + charge_term
        + rare_atom_term;
    SasBreakdown {
        value: raw.clamp(w.min, w.max),
        size_term,
        ring_fusion_term,
        macrocycle_term,
        congestion_term,
        charge_term,
        rare_atom_term,
    }
}

/// Quaternary heavy atoms, or saturated carbons whose substituent
/// environments are pairwise distinct (a stereocenter stand-in: the graph
/// carries no parsed stereo descriptors).
fn is_congested(m: &Molecule, i: usize, classes: &[usize]) -> bool {
    if m.degree(i) >= 4 {
        return true;
    }
    let a = m.atom(i);
    if a.element != Element::C || a.aromatic || m.degree(i) != 3 || a.hydrogens != 1 {
        return false;
    }
    if m.incident(i)
        .iter()
        .any(|&bi| m.bond(bi).order != BondOrder::Single)
    {
        return false;
    }
    let mut nbr_classes: Vec<usize> = m.neighbors(i).map(|w| classes[w]).collect();
    nbr_classes.sort_unstable();
    nbr_classes.dedup();
    nbr_classes.len() == 3
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::molecule::{Atom, Bond};
    use crate::smiles::parse_smiles;

    fn sas(s: &str) -> f64 {
        sas_estimate(&parse_smiles(s).unwrap()).value
    }

    /// Saturated linear ladder of fused hexagons (acene skeleton), built
    /// directly so the test controls atom count exactly: two chains of
    /// 2*hexagons+1 carbons with a rung at every even column.
    fn acene_ladder(hexagons: usize) -> Molecule {
        let cols = 2 * hexagons + 1;
        let single = |a: usize, b: usize| Bond {
            a,
            b,
            order: BondOrder::Single,
            kekule: BondOrder::Single,
            in_ring: false,
        };
        let mut bonds = Vec::new();
        for i in 0..cols - 1 {
            bonds.push(single(i, i + 1)); // top chain
            bonds.push(single(cols + i, cols + i + 1)); // bottom chain
        }
        for i in (0..cols).step_by(2) {
            bonds.push(single(i, cols + i)); // rung
        }
        let mut degree = vec![0u8; 2 * cols];
        for b in &bonds {
            degree[b.a] += 1;
            degree[b.b] += 1;
        }
        let atoms = degree
            .iter()
            .map(|&d| Atom {
                element: Element::C,
                charge: 0,
                aromatic: false,
                hydrogens: 4 - d,
                fixed_hydrogens: false,
                in_ring: false,
            })
            .collect();
        Molecule::new(atoms, bonds).unwrap()
    }

    #[test]
    fn methane_is_trivial() {
        assert!(sas("C") <= 2.0);
        assert_eq!(sas("C"), 1.0);
    }

    #[test]
    fn range_respected() {
        // 162 fused atoms: raw score far beyond the cap, so it clamps
        let huge = sas_estimate(&acene_ladder(40)).value;
        assert_eq!(huge, 10.0);
        assert!(sas("CC") >= 1.0);
    }

    #[test]
    fn fused_polycycle_harder_than_chain() {
        let chain = sas("CCCCCCCCCC"); // 10 heavy atoms
        let fused = sas_estimate(&acene_ladder(12)).value; // 50 atoms, 12 fused rings
        assert!(fused > chain, "{fused} vs {chain}");
    }

    #[test]
    fn stereo_surrogate_counts() {
        // CHF(Cl)Br-like center: three distinct substituent environments
        let b = sas_estimate(&parse_smiles("FC(Cl)Br").unwrap());
        assert!(b.congestion_term > 0.0);
        // propane's middle CH2 is not congested
        let p = sas_estimate(&parse_smiles("CCC").unwrap());
        assert_eq!(p.congestion_term, 0.0);
    }

    #[test]
    fn deterministic() {
        assert_eq!(sas("Cn1cnc2c1c(=O)n(C)c(=O)n2C"), sas("Cn1cnc2c1c(=O)n(C)c(=O)n2C"));
    }
}
