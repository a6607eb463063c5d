use std::fmt;

use crate::error::{Error, Result};

/// Elements of the organic subset, plus explicit hydrogen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize, serde::Deserialize)]
pub enum Element {
    H,
    B,
    C,
    N,
    O,
    F,
    P,
    S,
    Cl,
    Br,
    I,
}

impl Element {
    pub const ALL: [Element; 11] = [
        Element::H,
        Element::B,
        Element::C,
        Element::N,
        Element::O,
        Element::F,
        Element::P,
        Element::S,
        Element::Cl,
        Element::Br,
        Element::I,
    ];

    pub fn symbol(self) -> &'static str {
        match self {
            Element::H => "H",
            Element::B => "B",
            Element::C => "C",
            Element::N => "N",
            Element::O => "O",
            Element::F => "F",
            Element::P => "P",
            Element::S => "S",
            Element::Cl => "Cl",
            Element::Br => "Br",
            Element::I => "I",
        }
    }

    pub fn from_symbol(s: &str) -> Option<Element> {
        Element::ALL.iter().copied().find(|e| e.symbol() == s)
    }

    /// Atomic number, used as a stable sort key and in atom invariants.
    pub fn atomic_number(self) -> u8 {
        match self {
            Element::H => 1,
            Element::B => 5,
            Element::C => 6,
            Element::N => 7,
            Element::O => 8,
            Element::F => 9,
            Element::P => 15,
            Element::S => 16,
            Element::Cl => 17,
            Element::Br => 35,
            Element::I => 53,
        }
    }

    /// True when the element may carry an aromatic flag (b, c, n, o, p, s).
    pub fn supports_aromatic(self) -> bool {
        matches!(
            self,
            Element::B | Element::C | Element::N | Element::O | Element::P | Element::S
        )
    }

    /// Standard valence alternatives for a neutral atom of this element.
    /// Implicit hydrogens fill up to the smallest alternative that fits.
    pub fn default_valences(self) -> &'static [u8] {
        match self {
            Element::H => &[1],
            Element::B => &[3],
            Element::C => &[4],
            Element::N => &[3, 5],
            Element::O => &[2],
            Element::F => &[1],
            Element::P => &[3, 5],
            Element::S => &[2, 4, 6],
            Element::Cl | Element::Br | Element::I => &[1],
        }
    }

    /// Valence alternatives after adjusting for formal charge.
    ///
    /// The shift follows the usual electron-counting convention: cations of
    /// N/O/P/S gain a bond, anions lose one; carbon loses one either way
    /// (carbanion or carbenium); boron anion gains one (borate).
    pub fn allowed_valences(self, charge: i8) -> Vec<u8> {
        let base = self.default_valences();
        let shift: i16 = match self {
            Element::C => -(charge.abs() as i16),
            Element::B => (-charge) as i16,
            _ => charge as i16,
        };
        base.iter()
            .filter_map(|&v| {
                let adjusted = v as i16 + shift;
                (0..=8).contains(&adjusted).then_some(adjusted as u8)
            })
            .collect()
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

impl std::str::FromStr for Element {
    type Err = Error;

    fn from_str(s: &str) -> Result<Element> {
        Element::from_symbol(s).ok_or_else(|| Error::UnknownElement {
            symbol: s.to_string(),
            offset: 0,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symbols_round_trip() {
        for e in Element::ALL {
            assert_eq!(Element::from_symbol(e.symbol()), Some(e));
        }
        assert_eq!(Element::from_symbol("Xx"), None);
    }

    #[test]
    fn charge_adjusted_valences() {
        assert_eq!(Element::N.allowed_valences(1), vec![4, 6]);
        assert_eq!(Element::N.allowed_valences(-1), vec![2, 4]);
        assert_eq!(Element::O.allowed_valences(-1), vec![1]);
        assert_eq!(Element::C.allowed_valences(1), vec![3]);
        assert_eq!(Element::C.allowed_valences(-1), vec![3]);
        assert_eq!(Element::B.allowed_valences(-1), vec![4]);
    }
}
