//! Hydroxyl substitution: every structurally distinct way of swapping one
//! hydrogen for an -OH group.
//!
//! Substitution hosts are carbon atoms carrying at least one hydrogen.
//! Heteroatom-bound hydrogens (N-H, O-H, S-H) are left alone: attaching an
//! oxygen there would produce hydroxylamine/peroxide-type linkages that are
//! not drug-plausible, and carbon hosts keep the lipophilicity contribution
//! of the added group strictly negative. One candidate is built per
//! hydrogen-bearing carbon, then duplicates are removed by canonical-string
//! comparison (cross-checked against the isomorphism matcher in tests), so
//! symmetric positions collapse to a single variant.

use std::collections::BTreeMap;

use crate::canon::canonical_smiles;
use crate::element::Element;
use crate::error::{Error, Result};
use crate::molecule::{Atom, Bond, BondOrder, Molecule};

/// All distinct single-hydroxyl variants, ordered by canonical SMILES.
pub fn hydroxyl_variants(m: &Molecule) -> Result<Vec<Molecule>> {
    let hosts: Vec<usize> = (0..m.atom_count())
        .filter(|&i| {
            let a = m.atom(i);
            a.element == Element::C && a.hydrogens >= 1
        })
        .collect();
    if hosts.is_empty() {
        return Err(Error::NoSubstitutablePosition);
    }
    let mut unique: BTreeMap<String, Molecule> = BTreeMap::new();
    for host in hosts {
        let variant = attach_hydroxyl(m, host)?;
        unique.entry(canonical_smiles(&variant)).or_insert(variant);
    }
    Ok(unique.into_values().collect())
}

/// Replaces one hydrogen on `host` with a single-bonded OH.
pub fn attach_hydroxyl(m: &Molecule, host: usize) -> Result<Molecule> {
    if host >= m.atom_count() {
        return Err(Error::AtomIndexOutOfRange {
            index: host,
            len: m.atom_count(),
        });
    }
    if m.atom(host).hydrogens == 0 {
        return Err(Error::NoSubstitutablePosition);
    }
    let mut atoms: Vec<Atom> = m.atoms().to_vec();
    let mut bonds: Vec<Bond> = m.bonds().to_vec();
    atoms[host].hydrogens -= 1;
    let oxygen = atoms.len();
    atoms.push(Atom {
        element: Element::O,
        charge: 0,
        aromatic: false,
        hydrogens: 1,
        fixed_hydrogens: false,
        in_ring: false,
    });
    bonds.push(Bond {
        a: host,
        b: oxygen,
        order: BondOrder::Single,
        kekule: BondOrder::Single,
        in_ring: false,
    });
    Molecule::new(atoms, bonds)
}
