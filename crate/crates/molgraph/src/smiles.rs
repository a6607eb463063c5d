//! SMILES reader for the organic subset.
//!
//! Supported: B C N O P S F Cl Br I (+ bracket H), aromatic lowercase,
//! branches, ring closures (digits and %nn), bond symbols - = # :, charges
//! and explicit hydrogens in brackets, dot-separated fragments.
//! Stereochemistry (/ \ @), isotopes and atom classes are parsed and
//! dropped, each reported as a warning. All errors carry byte offsets.

use std::collections::HashMap;

use crate::element::Element;
use crate::error::{Error, Result};
use crate::kekule::{implicit_fill, kekulize};
use crate::molecule::{Atom, Bond, BondOrder, Molecule};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Warning {
    StereoIgnored { offset: usize },
    IsotopeIgnored { offset: usize },
    AtomClassIgnored { offset: usize },
}

/// Parses a SMILES string, discarding warnings.
pub fn parse_smiles(text: &str) -> Result<Molecule> {
    parse_smiles_full(text).map(|(m, _)| m)
}

/// Parses a SMILES string, returning ignored-feature warnings alongside.
pub fn parse_smiles_full(text: &str) -> Result<(Molecule, Vec<Warning>)> {
    Parser::new(text).run()
}

struct RingOpen {
    atom: usize,
    bond: Option<BondOrder>,
    offset: usize,
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    atoms: Vec<Atom>,
    atom_offsets: Vec<usize>,
    bonds: Vec<Bond>,
    prev: Option<usize>,
    pending: Option<(BondOrder, usize)>,
    branch_stack: Vec<(usize, usize)>, // (saved prev atom, offset of '(')
    rings: HashMap<u16, RingOpen>,
    warnings: Vec<Warning>,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Parser<'a> {
        Parser {
            bytes: text.as_bytes(),
            pos: 0,
            atoms: Vec::new(),
            atom_offsets: Vec::new(),
            bonds: Vec::new(),
            prev: None,
            pending: None,
            branch_stack: Vec::new(),
            rings: HashMap::new(),
            warnings: Vec::new(),
        }
    }

    fn syntax(&self, detail: impl Into<String>, offset: usize) -> Error {
        Error::Syntax {
            detail: detail.into(),
            offset,
        }
    }

    fn run(mut self) -> Result<(Molecule, Vec<Warning>)> {
        while self.pos < self.bytes.len() {
            let offset = self.pos;
            let c = self.bytes[self.pos];
            match c {
                b' ' | b'\t' | b'\r' | b'\n' => break, // trailing title field
                b'B' => {
                    if self.peek(1) == Some(b'r') {
                        self.pos += 2;
                        self.plain_atom(Element::Br, false, offset)?;
                    } else {
                        self.pos += 1;
                        self.plain_atom(Element::B, false, offset)?;
                    }
                }
                b'C' => {
                    if self.peek(1) == Some(b'l') {
                        self.pos += 2;
                        self.plain_atom(Element::Cl, false, offset)?;
                    } else {
                        self.pos += 1;
                        self.plain_atom(Element::C, false, offset)?;
                    }
                }
                b'N' | b'O' | b'P' | b'S' | b'F' | b'I' => {
                    self.pos += 1;
                    let e = Element::from_symbol(std::str::from_utf8(&[c]).unwrap()).unwrap();
                    self.plain_atom(e, false, offset)?;
                }
                b'b' | b'c' | b'n' | b'o' | b'p' | b's' => {
                    self.pos += 1;
                    let e = Element::from_symbol(&(c as char).to_uppercase().to_string()).unwrap();
                    self.plain_atom(e, true, offset)?;
                }
                b'[' => {
                    let atom = self.bracket_atom()?;
                    self.attach_atom(atom, offset)?;
                }
                b'-' => self.set_pending(BondOrder::Single, offset)?,
                b'=' => self.set_pending(BondOrder::Double, offset)?,
                b'#' => self.set_pending(BondOrder::Triple, offset)?,
                b':' => self.set_pending(BondOrder::Aromatic, offset)?,
                b'/' | b'\\' => {
                    self.warnings.push(Warning::StereoIgnored { offset });
                    self.set_pending(BondOrder::Single, offset)?;
                }
                b'(' => {
                    if self.pending.is_some() {
                        return Err(self.syntax("bond symbol before branch open", offset));
                    }
                    match self.prev {
                        Some(p) => self.branch_stack.push((p, offset)),
                        None => return Err(self.syntax("branch opened before any atom", offset)),
                    }
                    self.pos += 1;
                }
                b')' => {
                    if let Some((bond, boff)) = self.pending {
                        let _ = bond;
                        return Err(self.syntax("dangling bond symbol", boff));
                    }
                    match self.branch_stack.pop() {
                        Some((saved, _)) => self.prev = Some(saved),
                        None => return Err(Error::UnbalancedParenthesis { offset }),
                    }
                    self.pos += 1;
                }
                b'0'..=b'9' => {
                    self.pos += 1;
                    self.ring_digit((c - b'0') as u16, offset)?;
                }
                b'%' => {
                    let d1 = self.peek(1);
                    let d2 = self.peek(2);
                    match (d1, d2) {
                        (Some(a), Some(b)) if a.is_ascii_digit() && b.is_ascii_digit() => {
                            self.pos += 3;
                            let d = (a - b'0') as u16 * 10 + (b - b'0') as u16;
                            self.ring_digit(d, offset)?;
                        }
                        _ => return Err(self.syntax("% must be followed by two digits", offset)),
                    }
                }
                b'.' => {
                    if let Some((_, boff)) = self.pending {
                        return Err(self.syntax("bond symbol before fragment separator", boff));
                    }
                    self.prev = None;
                    self.pos += 1;
                }
                _ => {
                    return Err(self.syntax(
                        format!("unexpected character `{}`", c as char),
                        offset,
                    ))
                }
            }
        }

        if let Some((_, boff)) = self.pending {
            return Err(self.syntax("dangling bond symbol at end of input", boff));
        }
        if let Some(&(_, offset)) = self.branch_stack.last() {
            return Err(Error::UnbalancedParenthesis { offset });
        }
        if let Some((&digit, open)) = self.rings.iter().min_by_key(|(d, _)| **d) {
            return Err(Error::UnclosedRing {
                digit,
                offset: open.offset,
            });
        }
        if self.atoms.is_empty() {
            return Err(self.syntax("no atoms in input", 0));
        }
        self.finish()
    }

    fn peek(&self, ahead: usize) -> Option<u8> {
        self.bytes.get(self.pos + ahead).copied()
    }

    fn plain_atom(&mut self, element: Element, aromatic: bool, offset: usize) -> Result<()> {
        if aromatic && !element.supports_aromatic() {
            return Err(Error::UnknownElement {
                symbol: (self.bytes[offset] as char).to_string(),
                offset,
            });
        }
        let atom = Atom {
            element,
            charge: 0,
            aromatic,
            hydrogens: 0, // filled after Kekulé assignment
            fixed_hydrogens: false,
            in_ring: false,
        };
        self.attach_atom(atom, offset)
    }

    fn attach_atom(&mut self, atom: Atom, offset: usize) -> Result<()> {
        let idx = self.atoms.len();
        self.atoms.push(atom);
        self.atom_offsets.push(offset);
        if let Some(prev) = self.prev {
            let order = match self.pending.take() {
                Some((o, _)) => o,
                None => self.default_order(prev, idx),
            };
            self.push_bond(prev, idx, order);
        } else if let Some((_, boff)) = self.pending {
            return Err(self.syntax("bond symbol with no preceding atom", boff));
        }
        self.prev = Some(idx);
        Ok(())
    }

    fn default_order(&self, a: usize, b: usize) -> BondOrder {
        if self.atoms[a].aromatic && self.atoms[b].aromatic {
            BondOrder::Aromatic
        } else {
            BondOrder::Single
        }
    }

    fn push_bond(&mut self, a: usize, b: usize, order: BondOrder) {
        self.bonds.push(Bond {
            a,
            b,
            order,
            kekule: order,
            in_ring: false,
        });
    }

    fn set_pending(&mut self, order: BondOrder, offset: usize) -> Result<()> {
        if self.pending.is_some() {
            return Err(self.syntax("two bond symbols in a row", offset));
        }
        self.pending = Some((order, offset));
        self.pos += 1;
        Ok(())
    }

    fn ring_digit(&mut self, digit: u16, offset: usize) -> Result<()> {
        let bond_here = self.pending.take().map(|(o, _)| o);
        let Some(cur) = self.prev else {
            return Err(self.syntax("ring closure before any atom", offset));
        };
        match self.rings.remove(&digit) {
            Some(open) => {
                if open.atom == cur {
                    return Err(self.syntax("ring closure bonds an atom to itself", offset));
                }
                let order = match (open.bond, bond_here) {
                    (None, None) => self.default_order(open.atom, cur),
                    (Some(o), None) | (None, Some(o)) => o,
                    (Some(a), Some(b)) if a == b => a,
                    (Some(_), Some(_)) => {
                        return Err(
                            self.syntax("conflicting bond symbols on ring closure", offset)
                        )
                    }
                };
                self.push_bond(open.atom, cur, order);
            }
            None => {
                self.rings.insert(
                    digit,
                    RingOpen {
                        atom: cur,
                        bond: bond_here,
                        offset,
                    },
                );
            }
        }
        Ok(())
    }

    fn bracket_atom(&mut self) -> Result<Atom> {
        let open = self.pos;
        self.pos += 1; // consume '['
        let mut i = self.pos;
        let b = self.bytes;

        // isotope (ignored)
        let iso_start = i;
        while i < b.len() && b[i].is_ascii_digit() {
            i += 1;
        }
        if i > iso_start {
            self.warnings.push(Warning::IsotopeIgnored { offset: iso_start });
        }

        // element symbol
        let sym_start = i;
        let (element, aromatic) = if i < b.len() && b[i].is_ascii_uppercase() {
            let end = i + 1;
            if end < b.len() && b[end].is_ascii_lowercase() {
                // inside brackets nothing after the symbol is lowercase, so
                // this pair can only be a two-letter element
                let two = std::str::from_utf8(&b[i..end + 1]).unwrap();
                match Element::from_symbol(two) {
                    Some(e) => {
                        i = end + 1;
                        (e, false)
                    }
                    None => {
                        return Err(Error::UnknownElement {
                            symbol: two.into(),
                            offset: sym_start,
                        })
                    }
                }
            } else {
                let one = std::str::from_utf8(&b[i..end]).unwrap();
                match Element::from_symbol(one) {
                    Some(e) => {
                        i = end;
                        (e, false)
                    }
                    None => {
                        return Err(Error::UnknownElement {
                            symbol: one.into(),
                            offset: sym_start,
                        })
                    }
                }
            }
        } else if i < b.len() && matches!(b[i], b'b' | b'c' | b'n' | b'o' | b'p' | b's') {
            let e = Element::from_symbol(&(b[i] as char).to_uppercase().to_string()).unwrap();
            i += 1;
            (e, true)
        } else {
            return Err(Error::UnknownElement {
                symbol: b.get(i).map(|&c| (c as char).to_string()).unwrap_or_default(),
                offset: i.min(b.len()),
            });
        };

        // chirality (ignored)
        if i < b.len() && b[i] == b'@' {
            self.warnings.push(Warning::StereoIgnored { offset: i });
            i += 1;
            if i < b.len() && b[i] == b'@' {
                i += 1;
            }
        }

        // explicit hydrogen count
        let mut hydrogens: u8 = 0;
        if i < b.len() && b[i] == b'H' {
            i += 1;
            let start = i;
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
            hydrogens = if i > start {
                std::str::from_utf8(&b[start..i])
                    .unwrap()
                    .parse::<u8>()
                    .map_err(|_| self.syntax("hydrogen count too large", start))?
            } else {
                1
            };
        }

        // charge
        let mut charge: i16 = 0;
        if i < b.len() && (b[i] == b'+' || b[i] == b'-') {
            let sign: i16 = if b[i] == b'+' { 1 } else { -1 };
            let symbol = b[i];
            i += 1;
            let start = i;
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
            if i > start {
                let mag: i16 = std::str::from_utf8(&b[start..i])
                    .unwrap()
                    .parse()
                    .map_err(|_| self.syntax("charge magnitude too large", start))?;
                charge = sign * mag;
            } else {
                charge = sign;
                while i < b.len() && b[i] == symbol {
                    charge += sign;
                    i += 1;
                }
            }
            if charge.abs() > 8 {
                return Err(self.syntax("charge magnitude too large", start));
            }
        }

        // atom class (ignored)
        if i < b.len() && b[i] == b':' {
            self.warnings.push(Warning::AtomClassIgnored { offset: i });
            i += 1;
            let start = i;
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
            if i == start {
                return Err(self.syntax("atom class expects digits", i));
            }
        }

        if i >= b.len() || b[i] != b']' {
            return Err(self.syntax("expected `]`", i.min(b.len())).annotate_open(open));
        }
        self.pos = i + 1;

        Ok(Atom {
            element,
            charge: charge as i8,
            aromatic,
            hydrogens,
            fixed_hydrogens: true,
            in_ring: false,
        })
    }

    fn finish(mut self) -> Result<(Molecule, Vec<Warning>)> {
        kekulize(&self.atoms, &mut self.bonds)?;

        // implicit hydrogens for plain atoms
        let mut bond_sum = vec![0u16; self.atoms.len()];
        for bond in &self.bonds {
            bond_sum[bond.a] += bond.kekule.valence() as u16;
            bond_sum[bond.b] += bond.kekule.valence() as u16;
        }
        for (idx, atom) in self.atoms.iter_mut().enumerate() {
            if !atom.fixed_hydrogens {
                match implicit_fill(atom.element, atom.charge, bond_sum[idx]) {
                    Some(h) => atom.hydrogens = h,
                    None => {
                        return Err(Error::ValenceViolation {
                            atom: idx,
                            element: atom.element.symbol().into(),
                            detail: format!(
                                "bond order sum {} exceeds every valence alternative",
                                bond_sum[idx]
                            ),
                            offset: self.atom_offsets[idx],
                        })
                    }
                }
            }
        }

        // fold explicit terminal hydrogens into their heavy neighbor
        let fold: Vec<bool> = (0..self.atoms.len())
            .map(|i| {
                let a = &self.atoms[i];
                if a.element != Element::H || a.charge != 0 || a.hydrogens != 0 {
                    return false;
                }
                let incident: Vec<&Bond> = self
                    .bonds
                    .iter()
                    .filter(|b| b.a == i || b.b == i)
                    .collect();
                incident.len() == 1
                    && incident[0].kekule == BondOrder::Single
                    && self.atoms[incident[0].other(i)].element != Element::H
            })
            .collect();
        if fold.iter().any(|&f| f) {
            let mut remap = vec![usize::MAX; self.atoms.len()];
            let mut atoms = Vec::new();
            let mut offsets = Vec::new();
            for (i, atom) in self.atoms.iter().enumerate() {
                if !fold[i] {
                    remap[i] = atoms.len();
                    atoms.push(atom.clone());
                    offsets.push(self.atom_offsets[i]);
                }
            }
            let mut bonds = Vec::new();
            for bond in &self.bonds {
                if fold[bond.a] {
                    atoms[remap[bond.b]].hydrogens += 1;
                } else if fold[bond.b] {
                    atoms[remap[bond.a]].hydrogens += 1;
                } else {
                    bonds.push(Bond {
                        a: remap[bond.a],
                        b: remap[bond.b],
                        ..*bond
                    });
                }
            }
            self.atoms = atoms;
            self.bonds = bonds;
            self.atom_offsets = offsets;
        }

        let offsets = self.atom_offsets.clone();
        let molecule = Molecule::new(self.atoms, self.bonds).map_err(|e| match e {
            Error::ValenceViolation {
                atom,
                element,
                detail,
                ..
            } => Error::ValenceViolation {
                atom,
                element,
                detail,
                offset: offsets.get(atom).copied().unwrap_or(0),
            },
            other => other,
        })?;
        Ok((molecule, self.warnings))
    }
}

trait AnnotateOpen {
    fn annotate_open(self, open: usize) -> Self;
}

impl AnnotateOpen for Error {
    fn annotate_open(self, open: usize) -> Self {
        match self {
            Error::Syntax { detail, offset } => Error::Syntax {
                detail: format!("{detail} (bracket opened at byte {open})"),
                offset,
            },
            other => other,
        }
    }
}
