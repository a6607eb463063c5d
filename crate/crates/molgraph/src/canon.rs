//! Atom-environment refinement, symmetry classes and canonical ordering.
//!
//! Ranks come from iterative neighborhood-invariant refinement (element,
//! charge, aromaticity, degree, hydrogen count, ring flag, then sorted
//! neighbor (bond, rank) lists) run to a fixed point. Canonical output
//! resolves remaining ties by individualizing each member of the first
//! tied cell in turn, recursing, and keeping the lexicographically
//! smallest rendered string, so the result depends only on the graph.

use crate::molecule::Molecule;
use crate::writer::write_with_ranks;

type Key = (usize, Vec<(u8, usize)>);

fn initial_ranks(m: &Molecule) -> Vec<usize> {
    let keys: Vec<(u8, bool, i8, usize, u8, bool)> = (0..m.atom_count())
        .map(|i| {
            let a = m.atom(i);
            (
                a.element.atomic_number(),
                a.aromatic,
                a.charge,
                m.degree(i),
                a.hydrogens,
                a.in_ring,
            )
        })
        .collect();
    dense_ranks(&keys)
}

fn dense_ranks<K: Ord + Clone>(keys: &[K]) -> Vec<usize> {
    let mut sorted: Vec<K> = keys.to_vec();
    sorted.sort();
    sorted.dedup();
    keys.iter()
        .map(|k| sorted.binary_search(k).unwrap())
        .collect()
}

fn refine(m: &Molecule, mut ranks: Vec<usize>) -> Vec<usize> {
    loop {
        let keys: Vec<Key> = (0..m.atom_count())
            .map(|i| {
                let mut nbr: Vec<(u8, usize)> = m
                    .incident(i)
                    .iter()
                    .map(|&bi| {
                        let b = m.bond(bi);
                        (b.order.code(), ranks[b.other(i)])
                    })
                    .collect();
                nbr.sort_unstable();
                (ranks[i], nbr)
            })
            .collect();
        let next = dense_ranks(&keys);
        if next == ranks {
            return ranks;
        }
        ranks = next;
    }
}

/// Conservative symmetry classes: structurally equivalent atoms always share
/// a class. Dense ids, ordered by class invariant.
pub fn symmetry_classes(m: &Molecule) -> Vec<usize> {
    refine(m, initial_ranks(m))
}

fn is_discrete(ranks: &[usize]) -> bool {
    let n = ranks.len();
    ranks.iter().all(|&r| r < n) && {
        let mut seen = vec![false; n];
        ranks.iter().all(|&r| !std::mem::replace(&mut seen[r], true))
    }
}

fn individualize(m: &Molecule, ranks: &[usize], atom: usize) -> Vec<usize> {
    let keys: Vec<(usize, usize)> = ranks
        .iter()
        .enumerate()
        .map(|(i, &r)| (r, if i == atom { 0 } else { 1 }))
        .collect();
    refine(m, dense_ranks(&keys))
}

fn search(m: &Molecule, ranks: Vec<usize>, best: &mut Option<(String, Vec<usize>)>) {
    if is_discrete(&ranks) {
        let s = write_with_ranks(m, &ranks);
        match best {
            Some((bs, _)) if *bs <= s => {}
            _ => *best = Some((s, ranks)),
        }
        return;
    }
    // branch on the first tied cell
    let n = ranks.len();
    let mut count = vec![0usize; n];
    for &r in &ranks {
        count[r] += 1;
    }
    let cell = (0..n).find(|&r| count[r] > 1).expect("non-discrete partition");
    for atom in 0..n {
        if ranks[atom] == cell {
            search(m, individualize(m, &ranks, atom), best);
        }
    }
}

fn canonical(m: &Molecule) -> (String, Vec<usize>) {
    if m.atom_count() == 0 {
        return (String::new(), Vec::new());
    }
    let base = refine(m, initial_ranks(m));
    let mut best = None;
    search(m, base, &mut best);
    best.expect("canonical search explored no leaves")
}

/// Canonical atom ranks: a permutation of 0..n stable across any input
/// ordering of the same graph.
pub fn canonical_ranks(m: &Molecule) -> Vec<usize> {
    canonical(m).1
}

/// Canonical SMILES: identical strings exactly for isomorphic molecules.
pub fn canonical_smiles(m: &Molecule) -> String {
    canonical(m).0
}

/// Serializes a molecule to SMILES. The output is canonical, so writing is
/// deterministic for a given graph regardless of atom order.
pub fn write_smiles(m: &Molecule) -> String {
    canonical_smiles(m)
}
