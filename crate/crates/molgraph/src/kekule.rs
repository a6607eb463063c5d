//! Alternating-bond (Kekulé) assignment for aromatic systems.
//!
//! Lowercase aromatic input only fixes which atoms/bonds are aromatic; the
//! underlying single/double pattern is recovered here by a perfect matching
//! over the atoms that must carry exactly one ring double bond. Atoms that
//! donate a lone pair (pyrrole-type N, furan O, thiophene S, borole B,
//! charge-satisfied carbons) stay out of the matching.

use crate::element::Element;
use crate::error::{Error, Result};
use crate::molecule::{Atom, Bond, BondOrder};

/// Decides whether an aromatic atom must be assigned one double bond within
/// the aromatic system.
fn needs_double(atom: &Atom, bond_sum_explicit_multiple: bool, degree: usize) -> bool {
    if bond_sum_explicit_multiple {
        // an explicit exocyclic =X / #X already satisfies the sp2 center
        return false;
    }
    match atom.element {
        Element::C => atom.charge == 0,
        Element::N | Element::P => match atom.charge {
            0 => atom.hydrogens == 0 && degree == 2,
            1 => true, // pyridinium-type
            _ => false,
        },
        Element::O | Element::S => atom.charge == 1, // pyrylium / thiopyrylium
        Element::B => false,
        _ => false,
    }
}

/// Assigns Kekulé orders to all `BondOrder::Aromatic` bonds in place.
///
/// `atoms[i].hydrogens` is consulted only for bracket atoms
/// (`fixed_hydrogens`); plain aromatic atoms carry 0 at this stage and the
/// convention is that a plain aromatic N/P is pyridine-like.
pub(crate) fn kekulize(atoms: &[Atom], bonds: &mut [Bond]) -> Result<()> {
    let n = atoms.len();
    let mut aromatic_adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n]; // (neighbor, bond idx)
    let mut degree = vec![0usize; n];
    let mut has_explicit_multiple = vec![false; n];
    for (bi, bond) in bonds.iter().enumerate() {
        degree[bond.a] += 1;
        degree[bond.b] += 1;
        match bond.order {
            BondOrder::Aromatic => {
                aromatic_adj[bond.a].push((bond.b, bi));
                aromatic_adj[bond.b].push((bond.a, bi));
            }
            BondOrder::Double | BondOrder::Triple => {
                has_explicit_multiple[bond.a] = true;
                has_explicit_multiple[bond.b] = true;
            }
            BondOrder::Single => {}
        }
    }

    let needs: Vec<bool> = atoms
        .iter()
        .enumerate()
        .map(|(i, a)| {
            a.aromatic
                && !aromatic_adj[i].is_empty()
                && needs_double(a, has_explicit_multiple[i], degree[i])
        })
        .collect();

    // Perfect matching over `needs` atoms along aromatic bonds, by
    // backtracking. Aromatic systems in practice are small, so the search
    // space stays tiny; the atom order makes the result deterministic.
    let mut matched: Vec<Option<usize>> = vec![None; n];
    if !match_all(0, &needs, &aromatic_adj, &mut matched) {
        let culprit = (0..n)
            .find(|&i| needs[i] && matched[i].is_none())
            .unwrap_or(0);
        return Err(Error::KekulizationFailure { atom: culprit });
    }

    for (bi, bond) in bonds.iter_mut().enumerate() {
        if bond.order == BondOrder::Aromatic {
            let paired = matched[bond.a] == Some(bond.b);
            debug_assert_eq!(paired, matched[bond.b] == Some(bond.a));
            bond.kekule = if paired {
                BondOrder::Double
            } else {
                BondOrder::Single
            };
        } else {
            bond.kekule = bond.order;
        }
        let _ = bi;
    }
    Ok(())
}

fn match_all(
    from: usize,
    needs: &[bool],
    adj: &[Vec<(usize, usize)>],
    matched: &mut Vec<Option<usize>>,
) -> bool {
    let next = (from..needs.len()).find(|&i| needs[i] && matched[i].is_none());
    let Some(u) = next else {
        return true;
    };
    for &(v, _) in &adj[u] {
        if needs[v] && matched[v].is_none() {
            matched[u] = Some(v);
            matched[v] = Some(u);
            if match_all(u + 1, needs, adj, matched) {
                return true;
            }
            matched[u] = None;
            matched[v] = None;
        }
    }
    false
}

/// Smallest charge-adjusted valence that accommodates `bond_sum`; the
/// difference is the implicit hydrogen count. `None` when the atom exceeds
/// every alternative.
pub(crate) fn implicit_fill(element: Element, charge: i8, bond_sum: u16) -> Option<u8> {
    element
        .allowed_valences(charge)
        .iter()
        .copied()
        .find(|&v| v as u16 >= bond_sum)
        .map(|v| (v as u16 - bond_sum) as u8)
}
