//! Ring perception: circuit rank plus a deterministic "one shortest cycle
//! per ring bond" ring set, enough for fusion and macrocycle counting.

use std::collections::VecDeque;

use crate::molecule::Molecule;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingInfo {
    /// Distinct shortest cycles in traversal order (first atom arbitrary).
    pub rings: Vec<Vec<usize>>,
    /// Ring bonds lying on at least two of those cycles.
    pub fused_bonds: usize,
    /// Cycles longer than 8 atoms.
    pub macrocycles: usize,
    /// Independent cycle count: bonds - atoms + components.
    pub circuit_rank: usize,
}

/// Shortest path from `a` to `b` avoiding bond `skip`, restricted to ring
/// bonds (a cycle never crosses a bridge). Returns atom indices inclusive.
fn shortest_path(m: &Molecule, a: usize, b: usize, skip: usize) -> Option<Vec<usize>> {
    let n = m.atom_count();
    let mut prev = vec![usize::MAX; n];
    let mut seen = vec![false; n];
    seen[a] = true;
    let mut queue = VecDeque::from([a]);
    while let Some(v) = queue.pop_front() {
        if v == b {
            let mut path = vec![b];
            let mut cur = b;
            while cur != a {
                cur = prev[cur];
                path.push(cur);
            }
            path.reverse();
            return Some(path);
        }
        for &bi in m.incident(v) {
            let bond = m.bond(bi);
            if bi == skip || !bond.in_ring {
                continue;
            }
            let w = bond.other(v);
            if !seen[w] {
                seen[w] = true;
                prev[w] = v;
                queue.push_back(w);
            }
        }
    }
    None
}

fn cycle_has_edge(cycle: &[usize], a: usize, b: usize) -> bool {
    let k = cycle.len();
    (0..k).any(|i| {
        let (x, y) = (cycle[i], cycle[(i + 1) % k]);
        (x == a && y == b) || (x == b && y == a)
    })
}

pub fn ring_info(m: &Molecule) -> RingInfo {
    let circuit_rank = m.bond_count() + m.components().len() - m.atom_count();
    let mut rings: Vec<Vec<usize>> = Vec::new();
    let mut keys: Vec<Vec<usize>> = Vec::new();
    for bi in 0..m.bond_count() {
        let bond = m.bond(bi);
        if !bond.in_ring {
            continue;
        }
        if let Some(cycle) = shortest_path(m, bond.a, bond.b, bi) {
            let mut key = cycle.clone();
            key.sort_unstable();
            if !keys.contains(&key) {
                keys.push(key);
                rings.push(cycle);
            }
        }
    }

    let fused_bonds = (0..m.bond_count())
        .filter(|&bi| {
            let bond = m.bond(bi);
            bond.in_ring
                && rings
                    .iter()
                    .filter(|r| cycle_has_edge(r, bond.a, bond.b))
                    .count()
                    >= 2
        })
        .count();
    let macrocycles = rings.iter().filter(|r| r.len() > 8).count();
    RingInfo {
        rings,
        fused_bonds,
        macrocycles,
        circuit_rank,
    }
}
