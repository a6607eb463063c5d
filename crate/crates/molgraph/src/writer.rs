//! SMILES emission for a fixed atom ordering.
//!
//! Two passes per component: the first walks the graph in rank order and
//! classifies every bond as tree edge or ring closure (undirected DFS only
//! produces back edges, so each closure has a well-defined earlier "open"
//! end); the second renders atoms, ring digits and branches. Digits are
//! taken from a min-heap and released on closure so they can be reused.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::element::Element;
use crate::kekule::implicit_fill;
use crate::molecule::{BondOrder, Molecule};

struct Walk<'a> {
    m: &'a Molecule,
    ranks: &'a [usize],
    visited: Vec<bool>,
    discovery: Vec<usize>,
    /// tree_children[v] = (bond, child) in emission order
    tree_children: Vec<Vec<(usize, usize)>>,
    /// ring bond -> (open atom, close atom)
    ring_ends: Vec<Option<(usize, usize)>>,
    clock: usize,
}

impl<'a> Walk<'a> {
    fn sorted_incident(&self, v: usize) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = self
            .m
            .incident(v)
            .iter()
            .map(|&bi| (bi, self.m.bond(bi).other(v)))
            .collect();
        out.sort_by_key(|&(_, w)| self.ranks[w]);
        out
    }

    fn dfs(&mut self, v: usize, parent_bond: Option<usize>) {
        self.visited[v] = true;
        self.discovery[v] = self.clock;
        self.clock += 1;
        for (bi, w) in self.sorted_incident(v) {
            if Some(bi) == parent_bond {
                continue;
            }
            if self.visited[w] {
                if self.ring_ends[bi].is_none() {
                    // w is an ancestor: it opens, v closes
                    self.ring_ends[bi] = Some((w, v));
                }
            } else {
                self.tree_children[v].push((bi, w));
                self.dfs(w, Some(bi));
            }
        }
    }
}

struct Emitter<'a> {
    m: &'a Molecule,
    walk: &'a Walk<'a>,
    opens: Vec<Vec<usize>>,  // atom -> ring bonds opening here
    closes: Vec<Vec<usize>>, // atom -> ring bonds closing here
    digit_pool: BinaryHeap<Reverse<u16>>,
    digit_of: Vec<u16>,
    out: String,
}

impl<'a> Emitter<'a> {
    fn new(m: &'a Molecule, walk: &'a Walk<'a>) -> Emitter<'a> {
        let n = m.atom_count();
        let mut opens = vec![Vec::new(); n];
        let mut closes = vec![Vec::new(); n];
        for (bi, ends) in walk.ring_ends.iter().enumerate() {
            if let Some((open, close)) = *ends {
                opens[open].push(bi);
                closes[close].push(bi);
            }
        }
        for v in 0..n {
            opens[v].sort_by_key(|&bi| walk.discovery[walk.ring_ends[bi].unwrap().1]);
            closes[v].sort_by_key(|&bi| walk.discovery[walk.ring_ends[bi].unwrap().0]);
        }
        Emitter {
            m,
            walk,
            opens,
            closes,
            digit_pool: (1..100).map(Reverse).collect(),
            digit_of: vec![0; m.bond_count()],
            out: String::new(),
        }
    }

    fn bond_symbol(&self, bi: usize) -> &'static str {
        let b = self.m.bond(bi);
        let both_aromatic = self.m.atom(b.a).aromatic && self.m.atom(b.b).aromatic;
        match b.order {
            BondOrder::Single => {
                if both_aromatic {
                    "-"
                } else {
                    ""
                }
            }
            BondOrder::Aromatic => "", // only valid between aromatic atoms
            BondOrder::Double => "=",
            BondOrder::Triple => "#",
        }
    }

    fn push_digit(&mut self, digit: u16) {
        if digit < 10 {
            self.out.push((b'0' + digit as u8) as char);
        } else {
            self.out.push('%');
            self.out.push((b'0' + (digit / 10) as u8) as char);
            self.out.push((b'0' + (digit % 10) as u8) as char);
        }
    }

    fn atom_token(&mut self, v: usize) {
        let a = self.m.atom(v);
        let sum = self.m.bond_order_sum(v);
        let needs_pyrrole_bracket = a.aromatic
            && matches!(a.element, Element::N | Element::P)
            && !self
                .m
                .incident(v)
                .iter()
                .any(|&bi| matches!(self.m.bond(bi).kekule, BondOrder::Double | BondOrder::Triple));
        let plain_ok = a.element != Element::H
            && a.charge == 0
            && implicit_fill(a.element, 0, sum) == Some(a.hydrogens)
            && !needs_pyrrole_bracket;
        let symbol = if a.aromatic {
            a.element.symbol().to_lowercase()
        } else {
            a.element.symbol().to_string()
        };
        if plain_ok {
            self.out.push_str(&symbol);
            return;
        }
        self.out.push('[');
        self.out.push_str(&symbol);
        if a.hydrogens > 0 {
            self.out.push('H');
            if a.hydrogens > 1 {
                self.out.push_str(&a.hydrogens.to_string());
            }
        }
        match a.charge {
            0 => {}
            1 => self.out.push('+'),
            -1 => self.out.push('-'),
            c if c > 0 => self.out.push_str(&format!("+{c}")),
            c => self.out.push_str(&c.to_string()),
        }
        self.out.push(']');
    }

    fn emit(&mut self, v: usize) {
        self.atom_token(v);
        for bi in self.closes[v].clone() {
            let digit = self.digit_of[bi];
            self.push_digit(digit);
            self.digit_pool.push(Reverse(digit));
        }
        for bi in self.opens[v].clone() {
            let Reverse(digit) = self
                .digit_pool
                .pop()
                .expect("more than 99 simultaneously open ring closures");
            self.digit_of[bi] = digit;
            let sym = self.bond_symbol(bi);
            self.out.push_str(sym);
            self.push_digit(digit);
        }
        let children = self.walk.tree_children[v].clone();
        for (i, (bi, w)) in children.iter().copied().enumerate() {
            let last = i + 1 == children.len();
            if !last {
                self.out.push('(');
            }
            self.out.push_str(self.bond_symbol(bi));
            self.emit(w);
            if !last {
                self.out.push(')');
            }
        }
    }
}

/// Renders SMILES with atoms ordered by the given ranks (component with the
/// lowest rank first, fragments joined by dots).
pub(crate) fn write_with_ranks(m: &Molecule, ranks: &[usize]) -> String {
    let n = m.atom_count();
    if n == 0 {
        return String::new();
    }
    let mut walk = Walk {
        m,
        ranks,
        visited: vec![false; n],
        discovery: vec![0; n],
        tree_children: vec![Vec::new(); n],
        ring_ends: vec![None; m.bond_count()],
        clock: 0,
    };
    let mut roots: Vec<usize> = Vec::new();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| ranks[v]);
    for v in order {
        if !walk.visited[v] {
            roots.push(v);
            walk.dfs(v, None);
        }
    }
    let mut emitter = Emitter::new(m, &walk);
    for (i, root) in roots.iter().enumerate() {
        if i > 0 {
            emitter.out.push('.');
        }
        emitter.emit(*root);
    }
    emitter.out
}
