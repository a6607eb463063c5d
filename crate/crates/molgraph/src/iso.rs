//! Labeled graph isomorphism by backtracking.
//!
//! Independent of the refinement-based canonicalizer on purpose: this is
//! the oracle the canonical writer is checked against, and the exact
//! deduplicator for substitution variants.

use crate::molecule::{BondOrder, Molecule};

type Label = (u8, i8, bool, u8);

fn label(m: &Molecule, i: usize) -> Label {
    let a = m.atom(i);
    (
        a.element.atomic_number(),
        a.charge,
        a.aromatic,
        a.hydrogens,
    )
}

fn bond_order_between(m: &Molecule, a: usize, b: usize) -> Option<BondOrder> {
    m.bond_between(a, b).map(|bond| bond.order)
}

/// Match order: put connected, high-degree atoms early so dead branches are
/// pruned fast.
fn match_order(m: &Molecule) -> Vec<usize> {
    let n = m.atom_count();
    let mut order = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    while order.len() < n {
        let seed = (0..n)
            .filter(|&i| !placed[i])
            .max_by_key(|&i| m.degree(i))
            .unwrap();
        placed[seed] = true;
        order.push(seed);
        let mut frontier = vec![seed];
        while let Some(v) = frontier.pop() {
            let mut next: Vec<usize> = m.neighbors(v).filter(|&w| !placed[w]).collect();
            next.sort_by_key(|&w| std::cmp::Reverse(m.degree(w)));
            for w in next {
                if !placed[w] {
                    placed[w] = true;
                    order.push(w);
                    frontier.push(w);
                }
            }
        }
    }
    order
}

fn compatible(a: &Molecule, b: &Molecule) -> bool {
    if a.atom_count() != b.atom_count() || a.bond_count() != b.bond_count() {
        return false;
    }
    let mut la: Vec<Label> = (0..a.atom_count()).map(|i| label(a, i)).collect();
    let mut lb: Vec<Label> = (0..b.atom_count()).map(|i| label(b, i)).collect();
    la.sort_unstable();
    lb.sort_unstable();
    if la != lb {
        return false;
    }
    let mut da: Vec<usize> = (0..a.atom_count()).map(|i| a.degree(i)).collect();
    let mut db: Vec<usize> = (0..b.atom_count()).map(|i| b.degree(i)).collect();
    da.sort_unstable();
    db.sort_unstable();
    da == db
}

fn extend(
    a: &Molecule,
    b: &Molecule,
    order: &[usize],
    pos: usize,
    map: &mut Vec<Option<usize>>,
    used: &mut Vec<bool>,
    on_complete: &mut dyn FnMut(&[Option<usize>]) -> bool,
) -> bool {
    if pos == order.len() {
        return on_complete(map);
    }
    let v = order[pos];
    let lv = label(a, v);
    'candidates: for w in 0..b.atom_count() {
        if used[w] || label(b, w) != lv || b.degree(w) != a.degree(v) {
            continue;
        }
        for u in a.neighbors(v) {
            if let Some(mu) = map[u] {
                if bond_order_between(a, v, u) != bond_order_between(b, w, mu) {
                    continue 'candidates;
                }
            }
        }
        // reverse direction: mapped neighbors of w must be neighbors of v
        for x in b.neighbors(w) {
            if let Some(u) = map.iter().position(|&mu| mu == Some(x)) {
                if bond_order_between(a, u, v).is_none() {
                    continue 'candidates;
                }
            }
        }
        map[v] = Some(w);
        used[w] = true;
        if extend(a, b, order, pos + 1, map, used, on_complete) {
            return true;
        }
        map[v] = None;
        used[w] = false;
    }
    false
}

/// True when the two molecules are isomorphic as labeled graphs
/// (element, charge, aromatic flag, hydrogen count, bond orders).
pub fn are_isomorphic(a: &Molecule, b: &Molecule) -> bool {
    if !compatible(a, b) {
        return false;
    }
    let order = match_order(a);
    let mut map = vec![None; a.atom_count()];
    let mut used = vec![false; b.atom_count()];
    extend(a, b, &order, 0, &mut map, &mut used, &mut |_| true)
}

/// Exact automorphism orbits: atoms share an orbit id iff some
/// self-isomorphism maps one to the other. Intended for small molecules
/// (full enumeration of automorphisms).
pub fn automorphism_orbits(m: &Molecule) -> Vec<usize> {
    let n = m.atom_count();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        if parent[x] != x {
            let root = find(parent, parent[x]);
            parent[x] = root;
        }
        parent[x]
    }
    let order = match_order(m);
    let mut map = vec![None; n];
    let mut used = vec![false; n];
    extend(m, m, &order, 0, &mut map, &mut used, &mut |map| {
        for (i, &mi) in map.iter().enumerate() {
            let a = find(&mut parent, i);
            let b = find(&mut parent, mi.unwrap());
            if a != b {
                parent[a] = b;
            }
        }
        false // keep enumerating
    });
    let roots: Vec<usize> = (0..n).map(|i| find(&mut parent, i)).collect();
    let mut ids = std::collections::BTreeMap::new();
    roots
        .iter()
        .map(|&r| {
            let next = ids.len();
            *ids.entry(r).or_insert(next)
        })
        .collect()
}
