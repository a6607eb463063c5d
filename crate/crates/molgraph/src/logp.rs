//! Additive lipophilicity estimate.
//!
//! Each heavy atom is mapped to a contribution type by local environment
//! rules (first match wins, mirroring the published pattern order), implicit
//! hydrogens are typed through their host, and Log P is the plain sum. The
//! numeric table lives in `data/logp_contributions.toml` and is versioned so
//! downstream gates stay reproducible.

use std::collections::BTreeMap;

use once_cell::sync::Lazy;
use serde::Deserialize;

use crate::element::Element;
use crate::molecule::{BondOrder, Molecule};

const TABLE_TOML: &str = include_str!("../data/logp_contributions.toml");

#[derive(Debug, Deserialize)]
struct Table {
    version: u32,
    scheme: String,
    contributions: BTreeMap<String, f64>,
    fallback: BTreeMap<String, f64>,
}

static TABLE: Lazy<Table> = Lazy::new(|| {
    let t: Table = toml::from_str(TABLE_TOML).expect("embedded logp table parses");
    assert!(!t.contributions.is_empty());
    t
});

/// Table metadata, surfaced so artifacts can record which parameterization
/// produced a value.
pub fn table_version() -> (u32, &'static str) {
    (TABLE.version, &TABLE.scheme)
}

#[derive(Debug, Clone, PartialEq)]
pub struct AtomContribution {
    pub atom: usize,
    pub type_code: String,
    pub value: f64,
    /// Hydrogen contribution folded in for this atom's implicit hydrogens.
    pub hydrogen_value: f64,
    pub fallback: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LogPEstimate {
    pub value: f64,
    pub contributions: Vec<AtomContribution>,
    /// Atoms priced by element-level fallback values.
    pub fallback_atoms: Vec<usize>,
}

/// Additive Log P over atom contributions. Total is the sum of per-atom
/// values plus hydrogen terms; atoms outside the parameterization fall back
/// to element-level defaults and are flagged.
pub fn logp_estimate(m: &Molecule) -> LogPEstimate {
    let mut contributions = Vec::with_capacity(m.atom_count());
    let mut fallback_atoms = Vec::new();
    let mut total = 0.0;
    for i in 0..m.atom_count() {
        let (code, fallback) = atom_type(m, i);
        let value = if fallback {
            *TABLE
                .fallback
                .get(m.atom(i).element.symbol())
                .unwrap_or(&0.0)
        } else {
            *TABLE
                .contributions
                .get(&code)
                .unwrap_or_else(|| panic!("type {code} missing from table"))
        };
        let h_code = hydrogen_type(m, i);
        let h_each = *TABLE.contributions.get(h_code).expect("hydrogen type");
        let hydrogen_value = h_each * m.atom(i).hydrogens as f64;
        total += value + hydrogen_value;
        if fallback {
            fallback_atoms.push(i);
        }
        contributions.push(AtomContribution {
            atom: i,
            type_code: code,
            value,
            hydrogen_value,
            fallback,
        });
    }
    LogPEstimate {
        value: total,
        contributions,
        fallback_atoms,
    }
}

fn has_bond(m: &Molecule, i: usize, pred: impl Fn(BondOrder) -> bool) -> bool {
    m.incident(i).iter().any(|&bi| pred(m.bond(bi).order))
}

fn neighbors_of(m: &Molecule, i: usize) -> Vec<usize> {
    m.neighbors(i).collect()
}

fn atom_type(m: &Molecule, i: usize) -> (String, bool) {
    let a = m.atom(i);
    let code: Option<&'static str> = match a.element {
        Element::C => Some(carbon_type(m, i)),
        Element::N => Some(nitrogen_type(m, i)),
        Element::O => Some(oxygen_type(m, i)),
        Element::S => Some(if a.aromatic {
            "S3"
        } else if a.charge != 0
            || has_bond(m, i, |o| matches!(o, BondOrder::Double | BondOrder::Triple))
        {
            "S2"
        } else {
            "S1"
        }),
        Element::P => Some("P"),
        Element::F | Element::Cl | Element::Br | Element::I => Some(if a.charge != 0 {
            "HalAnion"
        } else {
            a.element.symbol()
        }),
        Element::H => Some("HS"),
        Element::B => None,
    };
    match code {
        Some(c) => (c.to_string(), false),
        None => (format!("{}S*", a.element.symbol()), true),
    }
}

fn carbon_type(m: &Molecule, i: usize) -> &'static str {
    let a = m.atom(i);
    let nbrs = neighbors_of(m, i);
    if a.aromatic {
        let aromatic_ring_deg = m
            .incident(i)
            .iter()
            .filter(|&&bi| m.bond(bi).order == BondOrder::Aromatic)
            .count();
        if has_bond(m, i, |o| matches!(o, BondOrder::Double | BondOrder::Triple)) {
            return "C25";
        }
        if a.hydrogens > 0 {
            return "C18";
        }
        if aromatic_ring_deg >= 3 {
            return "C19";
        }
        // exactly one non-aromatic substituent when degree is 3
        let subst = m
            .incident(i)
            .iter()
            .map(|&bi| m.bond(bi))
            .find(|b| b.order != BondOrder::Aromatic)
            .map(|b| b.other(i));
        let Some(s) = subst else { return "CS" };
        let sa = m.atom(s);
        if sa.aromatic {
            return "C20";
        }
        return match sa.element {
            Element::C => "C21",
            Element::N => "C22",
            Element::O => "C23",
            Element::S => "C24",
            Element::F => "C14",
            Element::Cl => "C15",
            Element::Br => "C16",
            Element::I => "C17",
            _ => "C13",
        };
    }
    let doubles = m
        .incident(i)
        .iter()
        .filter(|&&bi| m.bond(bi).order == BondOrder::Double)
        .count();
    let triples = m
        .incident(i)
        .iter()
        .filter(|&&bi| m.bond(bi).order == BondOrder::Triple)
        .count();
    if triples >= 1 || doubles >= 2 {
        return "C7";
    }
    if doubles == 1 {
        let partner = m
            .incident(i)
            .iter()
            .map(|&bi| m.bond(bi))
            .find(|b| b.order == BondOrder::Double)
            .map(|b| b.other(i))
            .unwrap();
        if m.atom(partner).element != Element::C {
            return "C5";
        }
        if nbrs.iter().any(|&w| m.atom(w).aromatic) {
            return "C26";
        }
        return "C6";
    }
    // sp3
    let has_hetero = nbrs.iter().any(|&w| m.atom(w).element != Element::C);
    if has_hetero {
        return if a.hydrogens >= 2 { "C3" } else { "C4" };
    }
    let has_aromatic = nbrs.iter().any(|&w| m.atom(w).aromatic);
    if has_aromatic {
        // aromatic neighbors here are carbons (heteroatoms were caught above)
        return match a.hydrogens {
            3.. => "C8",
            2 => "C10",
            1 => "C11",
            _ => "C12",
        };
    }
    if a.hydrogens >= 2 {
        "C1"
    } else {
        "C2"
    }
}

fn nitrogen_type(m: &Molecule, i: usize) -> &'static str {
    let a = m.atom(i);
    if a.aromatic {
        return match a.charge {
            0 => "N11",
            c if c > 0 => "N12",
            _ => "NS",
        };
    }
    let has_multiple = has_bond(m, i, |o| matches!(o, BondOrder::Double | BondOrder::Triple));
    if a.charge > 0 {
        if a.hydrogens >= 1 && !has_multiple {
            return "N10";
        }
        if !has_multiple && m.degree(i) == 4 {
            return "N13";
        }
        if has_bond(m, i, |o| o == BondOrder::Double) && m.degree(i) == 3 {
            return "N13"; // nitro-type
        }
        return "N14";
    }
    if a.charge < 0 {
        return "N14";
    }
    if has_bond(m, i, |o| o == BondOrder::Triple) {
        return "N9";
    }
    if has_bond(m, i, |o| o == BondOrder::Double) {
        return if a.hydrogens >= 1 { "N5" } else { "N6" };
    }
    let aromatic_nbr = m.neighbors(i).any(|w| m.atom(w).aromatic);
    match a.hydrogens {
        2.. => {
            if aromatic_nbr {
                "N3"
            } else {
                "N1"
            }
        }
        1 => {
            if aromatic_nbr {
                "N4"
            } else {
                "N2"
            }
        }
        _ => {
            if m.degree(i) == 0 {
                "NS"
            } else if aromatic_nbr {
                "N8"
            } else {
                "N7"
            }
        }
    }
}

fn oxygen_type(m: &Molecule, i: usize) -> &'static str {
    let a = m.atom(i);
    if a.aromatic {
        return "O1";
    }
    let nbrs = neighbors_of(m, i);
    if a.charge < 0 {
        if nbrs.iter().any(|&w| m.atom(w).element == Element::N) {
            return "O5";
        }
        if nbrs.iter().any(|&w| m.atom(w).element == Element::S) {
            return "O6";
        }
        // carboxylate: O- on a carbon that is doubly bonded to another O
        if nbrs.iter().any(|&w| {
            m.atom(w).element == Element::C
                && m.incident(w).iter().any(|&bi| {
                    let b = m.bond(bi);
                    b.order == BondOrder::Double && m.atom(b.other(w)).element == Element::O
                })
        }) {
            return "O12";
        }
        return "O7";
    }
    if a.charge > 0 {
        return "OS";
    }
    if a.hydrogens >= 1 {
        return "O2";
    }
    let double_to = m
        .incident(i)
        .iter()
        .map(|&bi| m.bond(bi))
        .find(|b| b.order == BondOrder::Double)
        .map(|b| b.other(i));
    if let Some(x) = double_to {
        let xa = m.atom(x);
        return match xa.element {
            Element::N | Element::O => "O5",
            Element::S => "O6",
            Element::C => {
                if xa.aromatic {
                    return "O8";
                }
                let others: Vec<usize> =
                    m.neighbors(x).filter(|&w| w != i).collect();
                if others.len() == 2
                    && others.iter().all(|&w| m.atom(w).element != Element::C)
                {
                    "O11"
                } else if others.iter().any(|&w| m.atom(w).aromatic) {
                    "O10"
                } else {
                    "O9"
                }
            }
            _ => "OS",
        };
    }
    // ether
    if nbrs.iter().any(|&w| m.atom(w).aromatic) {
        "O4"
    } else {
        "O3"
    }
}

/// Contribution type for hydrogens attached to atom `i`.
fn hydrogen_type(m: &Molecule, i: usize) -> &'static str {
    let host = m.atom(i);
    match host.element {
        Element::C | Element::H => "H1",
        Element::N => "H3",
        Element::O => {
            let nbrs = neighbors_of(m, i);
            if nbrs.iter().any(|&w| m.atom(w).element == Element::N) {
                return "H3";
            }
            if nbrs
                .iter()
                .any(|&w| matches!(m.atom(w).element, Element::O | Element::S))
            {
                return "H4";
            }
            if nbrs.iter().any(|&w| m.atom(w).aromatic) {
                return "H2";
            }
            // acid / enol: carbon neighbor carrying a double bond
            if nbrs.iter().any(|&w| {
                m.atom(w).element == Element::C
                    && m.incident(w)
                        .iter()
                        .any(|&bi| m.bond(bi).order == BondOrder::Double)
            }) {
                return "H4";
            }
            "H2"
        }
        Element::S | Element::B | Element::P => "H2",
        Element::F | Element::Cl | Element::Br | Element::I => "H2",
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::smiles::parse_smiles;
    use approx::assert_relative_eq;

    fn logp(s: &str) -> f64 {
        logp_estimate(&parse_smiles(s).unwrap()).value
    }

    #[test]
    fn benzene_reference_value() {
        // 6 aromatic CH + 6 aromatic hydrogens
        let v = logp("c1ccccc1");
        assert_relative_eq!(v, 6.0 * 0.1581 + 6.0 * 0.123, epsilon = 1e-9);
        assert!((v - 1.69).abs() < 0.3);
    }

    #[test]
    fn ethanol_is_hydrophilic() {
        let v = logp("CCO");
        assert!(v < 0.0, "ethanol logp = {v}");
        assert_relative_eq!(
            v,
            0.1441 - 0.2035 - 0.2893 + 5.0 * 0.123 - 0.2677,
            epsilon = 1e-9
        );
    }

    #[test]
    fn acetic_acid_parts() {
        // C1 + C5 + O9 + O2 + 3*H1 + H4
        let v = logp("CC(=O)O");
        assert_relative_eq!(
            v,
            0.1441 - 0.2783 - 0.1526 - 0.2893 + 3.0 * 0.123 + 0.298,
            epsilon = 1e-9
        );
    }

    #[test]
    fn toluene_more_lipophilic_than_phenol() {
        assert!(logp("Cc1ccccc1") > logp("Oc1ccccc1"));
        assert!(logp("Oc1ccccc1") < logp("c1ccccc1"));
    }

    #[test]
    fn hydroxyl_always_lowers_logp() {
        use crate::variants::hydroxyl_variants;
        for s in [
            "C",
            "CCC",
            "Cc1ccccc1",
            "CC(C)Cc1ccc(cc1)C(C)C(=O)O",
            "c1ccccc1",
            "C=C",
            "C#C",
            "CC(=O)Nc1ccc(O)cc1",
        ] {
            let m = parse_smiles(s).unwrap();
            let parent = logp_estimate(&m).value;
            for v in hydroxyl_variants(&m).unwrap() {
                let child = logp_estimate(&v).value;
                assert!(child < parent, "{s}: {child} !< {parent}");
            }
        }
    }

    #[test]
    fn boron_uses_flagged_fallback() {
        let est = logp_estimate(&parse_smiles("B(O)(O)c1ccccc1").unwrap());
        assert_eq!(est.fallback_atoms.len(), 1);
        assert!(est.contributions.iter().any(|c| c.fallback));
    }

    #[test]
    fn deterministic() {
        let a = logp("CC(C)Cc1ccc(cc1)C(C)C(=O)O");
        let b = logp("CC(C)Cc1ccc(cc1)C(C)C(=O)O");
        assert_eq!(a, b);
    }
}
