use crate::element::Element;
use crate::error::{Error, Result};

/// Bond order. Aromatic bonds are kept distinct from their Kekulé orders so
/// aromatic perception survives round trips.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize, serde::Deserialize)]
pub enum BondOrder {
    Single,
    Double,
    Triple,
    Aromatic,
}

impl BondOrder {
    /// Contribution to valence sums. Aromatic counts via the Kekulé
    /// assignment, so this is only called on kekulized orders.
    pub fn valence(self) -> u8 {
        match self {
            BondOrder::Single => 1,
            BondOrder::Double => 2,
            BondOrder::Triple => 3,
            BondOrder::Aromatic => 1, // placeholder; kekulized order is authoritative
        }
    }

    /// Stable small integer used in canonical invariants.
    pub fn code(self) -> u8 {
        match self {
            BondOrder::Single => 1,
            BondOrder::Double => 2,
            BondOrder::Triple => 3,
            BondOrder::Aromatic => 4,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Atom {
    pub element: Element,
    pub charge: i8,
    pub aromatic: bool,
    /// Attached hydrogen count (implicit plus bracket-specified).
    pub hydrogens: u8,
    /// True when the hydrogen count came from a bracket expression rather
    /// than valence filling; such atoms keep their count verbatim on output.
    pub fixed_hydrogens: bool,
    pub in_ring: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Bond {
    pub a: usize,
    pub b: usize,
    pub order: BondOrder,
    /// Kekulé order for aromatic bonds (Single or Double); equals `order`
    /// for non-aromatic bonds.
    pub kekule: BondOrder,
    pub in_ring: bool,
}

impl Bond {
    pub fn other(&self, atom: usize) -> usize {
        if atom == self.a {
            self.b
        } else {
            self.a
        }
    }
}

/// A small labeled multigraph-free molecular graph.
///
/// Invariants, enforced at construction:
/// - bond endpoints are distinct and in range, at most one bond per pair;
/// - hydrogen counts are consistent with standard valence for the element,
///   charge and (kekulized) bond orders;
/// - aromatic bonds only join aromatic-flagged atoms and lie on rings;
/// - ring flags match the bridge decomposition of the graph.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Molecule {
    atoms: Vec<Atom>,
    bonds: Vec<Bond>,
    /// adjacency[i] lists bond indices incident to atom i, ascending.
    adjacency: Vec<Vec<usize>>,
}

impl Molecule {
    /// Builds a molecule from parts, validating all structural invariants.
    /// Hydrogen counts on atoms with `fixed_hydrogens` are taken verbatim
    /// and checked; others must already hold the filled implicit count.
    pub fn new(atoms: Vec<Atom>, bonds: Vec<Bond>) -> Result<Molecule> {
        let mut m = Molecule {
            adjacency: vec![Vec::new(); atoms.len()],
            atoms,
            bonds,
        };
        m.rebuild_adjacency()?;
        m.mark_rings();
        m.check_valences()?;
        Ok(m)
    }

    fn rebuild_adjacency(&mut self) -> Result<()> {
        self.adjacency = vec![Vec::new(); self.atoms.len()];
        let mut seen = std::collections::HashSet::new();
        for (i, bond) in self.bonds.iter().enumerate() {
            if bond.a >= self.atoms.len() || bond.b >= self.atoms.len() {
                return Err(Error::InvalidBond {
                    a: bond.a,
                    b: bond.b,
                    detail: format!("atom index out of range ({} atoms)", self.atoms.len()),
                });
            }
            if bond.a == bond.b {
                return Err(Error::InvalidBond {
                    a: bond.a,
                    b: bond.b,
                    detail: "self-loop".into(),
                });
            }
            let key = (bond.a.min(bond.b), bond.a.max(bond.b));
            if !seen.insert(key) {
                return Err(Error::InvalidBond {
                    a: bond.a,
                    b: bond.b,
                    detail: "duplicate bond".into(),
                });
            }
            self.adjacency[bond.a].push(i);
            self.adjacency[bond.b].push(i);
        }
        Ok(())
    }

    /// Marks ring membership: a bond is in a ring iff it is not a bridge.
    fn mark_rings(&mut self) {
        let bridges = self.bridges();
        for (i, bond) in self.bonds.iter_mut().enumerate() {
            bond.in_ring = !bridges.contains(&i);
        }
        for atom in &mut self.atoms {
            atom.in_ring = false;
        }
        for bi in 0..self.bonds.len() {
            if self.bonds[bi].in_ring {
                let (a, b) = (self.bonds[bi].a, self.bonds[bi].b);
                self.atoms[a].in_ring = true;
                self.atoms[b].in_ring = true;
            }
        }
    }

    /// Bridge detection (iterative lowpoint DFS).
    fn bridges(&self) -> std::collections::HashSet<usize> {
        let n = self.atoms.len();
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![usize::MAX; n];
        let mut bridges = std::collections::HashSet::new();
        let mut timer = 0usize;
        for start in 0..n {
            if disc[start] != usize::MAX {
                continue;
            }
            // stack entries: (node, incoming bond, next adjacency cursor)
            let mut stack = vec![(start, usize::MAX, 0usize)];
            disc[start] = timer;
            low[start] = timer;
            timer += 1;
            while let Some(&mut (v, vin, ref mut cursor)) = stack.last_mut() {
                if *cursor < self.adjacency[v].len() {
                    let bi = self.adjacency[v][*cursor];
                    *cursor += 1;
                    if bi == vin {
                        continue;
                    }
                    let w = self.bonds[bi].other(v);
                    if disc[w] == usize::MAX {
                        disc[w] = timer;
                        low[w] = timer;
                        timer += 1;
                        stack.push((w, bi, 0));
                    } else {
                        low[v] = low[v].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if let Some(&mut (parent, _, _)) = stack.last_mut() {
                        low[parent] = low[parent].min(low[v]);
                        if low[v] > disc[parent] {
                            bridges.insert(vin);
                        }
                    }
                }
            }
        }
        bridges
    }

    fn check_valences(&self) -> Result<()> {
        for (i, atom) in self.atoms.iter().enumerate() {
            if atom.aromatic && !atom.element.supports_aromatic() {
                return Err(Error::ValenceViolation {
                    atom: i,
                    element: atom.element.symbol().into(),
                    detail: "element cannot be aromatic".into(),
                    offset: 0,
                });
            }
            let bond_sum: u16 = self.adjacency[i]
                .iter()
                .map(|&bi| self.bonds[bi].kekule.valence() as u16)
                .sum();
            let total = bond_sum + atom.hydrogens as u16;
            let allowed = atom.element.allowed_valences(atom.charge);
            if allowed.is_empty() || !allowed.contains(&(total.min(255) as u8)) {
                return Err(Error::ValenceViolation {
                    atom: i,
                    element: atom.element.symbol().into(),
                    detail: format!(
                        "bond order sum {bond_sum} + {}H = {total}, allowed {allowed:?} at charge {}",
                        atom.hydrogens, atom.charge
                    ),
                    offset: 0,
                });
            }
        }
        for bond in &self.bonds {
            if bond.order == BondOrder::Aromatic {
                if !(self.atoms[bond.a].aromatic && self.atoms[bond.b].aromatic) {
                    return Err(Error::InvalidBond {
                        a: bond.a,
                        b: bond.b,
                        detail: "aromatic bond between non-aromatic atoms".into(),
                    });
                }
                if !bond.in_ring {
                    return Err(Error::InvalidBond {
                        a: bond.a,
                        b: bond.b,
                        detail: "aromatic bond outside any ring".into(),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn atom_count(&self) -> usize {
        self.atoms.len()
    }

    pub fn bond_count(&self) -> usize {
        self.bonds.len()
    }

    pub fn atom(&self, i: usize) -> &Atom {
        &self.atoms[i]
    }

    pub fn bond(&self, i: usize) -> &Bond {
        &self.bonds[i]
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn bonds(&self) -> &[Bond] {
        &self.bonds
    }

    /// Bond indices incident to atom `i`.
    pub fn incident(&self, i: usize) -> &[usize] {
        &self.adjacency[i]
    }

    /// Neighbor atom indices of atom `i`, in bond-list order.
    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.adjacency[i].iter().map(move |&bi| self.bonds[bi].other(i))
    }

    /// Heavy-atom degree (explicit neighbors only; hydrogens are implicit).
    pub fn degree(&self, i: usize) -> usize {
        self.adjacency[i].len()
    }

    pub fn bond_between(&self, a: usize, b: usize) -> Option<&Bond> {
        self.adjacency[a]
            .iter()
            .map(|&bi| &self.bonds[bi])
            .find(|bond| bond.other(a) == b)
    }

    /// Sum of kekulized bond orders at atom `i`.
    pub fn bond_order_sum(&self, i: usize) -> u16 {
        self.adjacency[i]
            .iter()
            .map(|&bi| self.bonds[bi].kekule.valence() as u16)
            .sum()
    }

    /// Total hydrogen count over all atoms.
    pub fn total_hydrogens(&self) -> u32 {
        self.atoms.iter().map(|a| a.hydrogens as u32).sum()
    }

    /// Molecular formula in Hill order (C, H, then alphabetical).
    pub fn formula(&self) -> String {
        use std::collections::BTreeMap;
        let mut counts: BTreeMap<&'static str, u32> = BTreeMap::new();
        for atom in &self.atoms {
            *counts.entry(atom.element.symbol()).or_insert(0) += 1;
        }
        let h = self.total_hydrogens();
        if h > 0 {
            *counts.entry("H").or_insert(0) += h;
        }
        let mut out = String::new();
        let mut push = |sym: &str, n: u32| {
            if n == 0 {
                return;
            }
            out.push_str(sym);
            if n > 1 {
                out.push_str(&n.to_string());
            }
        };
        if let Some(&c) = counts.get("C") {
            push("C", c);
            if let Some(&h) = counts.get("H") {
                push("H", h);
            }
            for (sym, &n) in &counts {
                if *sym != "C" && *sym != "H" {
                    push(sym, n);
                }
            }
        } else {
            for (sym, &n) in &counts {
                push(sym, n);
            }
        }
        out
    }

    /// Connected components as lists of atom indices.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.atoms.len();
        let mut seen = vec![false; n];
        let mut comps = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut comp = vec![start];
            seen[start] = true;
            let mut queue = std::collections::VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for w in self.neighbors(v) {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn carbon(h: u8) -> Atom {
        Atom {
            element: Element::C,
            charge: 0,
            aromatic: false,
            hydrogens: h,
            fixed_hydrogens: false,
            in_ring: false,
        }
    }

    fn single(a: usize, b: usize) -> Bond {
        Bond {
            a,
            b,
            order: BondOrder::Single,
            kekule: BondOrder::Single,
            in_ring: false,
        }
    }

    #[test]
    fn ethane_valences_ok() {
        let m = Molecule::new(vec![carbon(3), carbon(3)], vec![single(0, 1)]).unwrap();
        assert_eq!(m.atom_count(), 2);
        assert_eq!(m.formula(), "C2H6");
        assert!(!m.atom(0).in_ring);
    }

    #[test]
    fn overfilled_carbon_rejected() {
        let err = Molecule::new(vec![carbon(4), carbon(3)], vec![single(0, 1)]).unwrap_err();
        assert!(matches!(err, Error::ValenceViolation { atom: 0, .. }));
    }

    #[test]
    fn duplicate_bond_rejected() {
        let err = Molecule::new(
            vec![carbon(3), carbon(3)],
            vec![single(0, 1), single(1, 0)],
        )
        .unwrap_err();
        assert!(matches!(err, Error::InvalidBond { .. }));
    }

    #[test]
    fn cyclopropane_ring_flags() {
        let m = Molecule::new(
            vec![carbon(2), carbon(2), carbon(2)],
            vec![single(0, 1), single(1, 2), single(2, 0)],
        )
        .unwrap();
        assert!(m.atoms().iter().all(|a| a.in_ring));
        assert!(m.bonds().iter().all(|b| b.in_ring));
    }

    #[test]
    fn bridge_not_marked_as_ring() {
        // cyclopropane with a methyl tail
        let m = Molecule::new(
            vec![carbon(2), carbon(2), carbon(1), carbon(3)],
            vec![single(0, 1), single(1, 2), single(2, 0), single(2, 3)],
        )
        .unwrap();
        assert!(!m.atom(3).in_ring);
        assert!(!m.bond_between(2, 3).unwrap().in_ring);
        assert!(m.bond_between(0, 1).unwrap().in_ring);
    }

    #[test]
    fn components_split() {
        let m = Molecule::new(vec![carbon(4), carbon(4)], vec![]).unwrap();
        assert_eq!(m.components(), vec![vec![0], vec![1]]);
    }
}
