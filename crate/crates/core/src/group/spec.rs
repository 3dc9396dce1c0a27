use std::fmt;

use super::{families, FiniteGroup, GroupError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Atom {
    Cyclic(usize),
    /// Dihedral group of order `2n`.
    Dihedral(usize),
    Quaternion,
    Symmetric(usize),
    Alternating(usize),
}

impl Atom {
    /// Group order, or `None` on overflow.
    pub fn order(&self) -> Option<u128> {
        match *self {
            Atom::Cyclic(n) => Some(n as u128),
            Atom::Dihedral(n) => (n as u128).checked_mul(2),
            Atom::Quaternion => Some(8),
            Atom::Symmetric(n) => factorial(n),
            Atom::Alternating(n) => factorial(n).map(|f| if n >= 2 { f / 2 } else { f }),
        }
    }

    fn build(&self) -> Result<FiniteGroup, GroupError> {
        match *self {
            Atom::Cyclic(n) => families::cyclic(n),
            Atom::Dihedral(n) => families::dihedral(n),
            Atom::Quaternion => families::quaternion(),
            Atom::Symmetric(n) => families::symmetric(n),
            Atom::Alternating(n) => families::alternating(n),
        }
    }
}

fn factorial(n: usize) -> Option<u128> {
    (1..=n as u128).try_fold(1u128, |acc, k| acc.checked_mul(k))
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Cyclic(n) => write!(f, "C{n}"),
            Atom::Dihedral(n) => write!(f, "D{n}"),
            Atom::Quaternion => write!(f, "Q8"),
            Atom::Symmetric(n) => write!(f, "S{n}"),
            Atom::Alternating(n) => write!(f, "A{n}"),
        }
    }
}

/// Parsed group description: a direct product of atoms.
///
/// Grammar (case-insensitive, whitespace ignored):
///
/// ```text
/// atom := C(n) | D(n) | Q8 | S(n) | A(n)      parentheses optional: C6 == C(6)
/// spec := atom ('x' atom)*
/// ```
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupSpec {
    atoms: Vec<Atom>,
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, a) in self.atoms.iter().enumerate() {
            if i > 0 {
                f.write_str("x")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

struct Parser<'a> {
    input: &'a str,
    chars: Vec<(usize, char)>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(input: &'a str) -> Self {
        let chars = input
            .char_indices()
            .filter(|(_, c)| !c.is_whitespace())
            .map(|(i, c)| (i, c.to_ascii_lowercase()))
            .collect();
        Parser {
            input,
            chars,
            pos: 0,
        }
    }

    fn error(&self, message: impl Into<String>) -> GroupError {
        let position = self
            .chars
            .get(self.pos)
            .map(|&(i, _)| i)
            .unwrap_or(self.input.len());
        GroupError::Parse {
            input: self.input.to_string(),
            position,
            message: message.into(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        self.pos += 1;
        c
    }

    fn number(&mut self) -> Result<usize, GroupError> {
        let start = self.pos;
        let mut value: usize = 0;
        while let Some(d) = self.peek().and_then(|c| c.to_digit(10)) {
            value = value
                .checked_mul(10)
                .and_then(|v| v.checked_add(d as usize))
                .ok_or_else(|| self.error("number too large"))?;
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error("expected a number"));
        }
        Ok(value)
    }

    fn parameter(&mut self) -> Result<usize, GroupError> {
        if self.peek() == Some('(') {
            self.pos += 1;
            let n = self.number()?;
            if self.bump() != Some(')') {
                self.pos -= 1;
                return Err(self.error("expected ')'"));
            }
            Ok(n)
        } else {
            self.number()
        }
    }

    fn atom(&mut self) -> Result<Atom, GroupError> {
        let kind = self.peek().ok_or_else(|| self.error("expected an atom"))?;
        let atom_start = self.pos;
        self.pos += 1;
        let atom = match kind {
            'c' => Atom::Cyclic(self.parameter()?),
            'd' => Atom::Dihedral(self.parameter()?),
            's' => Atom::Symmetric(self.parameter()?),
            'a' => Atom::Alternating(self.parameter()?),
            'q' => {
                if self.parameter()? != 8 {
                    self.pos = atom_start;
                    return Err(self.error("only Q8 is supported"));
                }
                Atom::Quaternion
            }
            _ => {
                self.pos -= 1;
                return Err(self.error(format!("unknown atom '{kind}'")));
            }
        };
        let positive = match atom {
            Atom::Cyclic(n) | Atom::Dihedral(n) | Atom::Symmetric(n) | Atom::Alternating(n) => {
                n > 0
            }
            Atom::Quaternion => true,
        };
        if !positive {
            self.pos = atom_start;
            return Err(self.error("atom parameter must be positive"));
        }
        Ok(atom)
    }
}

impl GroupSpec {
    pub fn parse(input: &str) -> Result<Self, GroupError> {
        let mut p = Parser::new(input);
        let mut atoms = vec![p.atom()?];
        while let Some(c) = p.peek() {
            if c != 'x' && c != '×' {
                return Err(p.error("expected 'x' between atoms"));
            }
            p.pos += 1;
            atoms.push(p.atom()?);
        }
        Ok(GroupSpec { atoms })
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    /// Product of the atom orders, or `None` on overflow.
    pub fn order(&self) -> Option<u128> {
        self.atoms
            .iter()
            .try_fold(1u128, |acc, a| a.order().and_then(|o| acc.checked_mul(o)))
    }

    /// Builds the product group, refusing orders above `cap`.
    pub fn build(&self, cap: usize) -> Result<FiniteGroup, GroupError> {
        let order = self.order();
        match order {
            Some(o) if o <= cap as u128 => {}
            _ => {
                return Err(GroupError::OrderCapExceeded {
                    order: order.map_or_else(|| "overflow".to_string(), |o| o.to_string()),
                    cap,
                })
            }
        }
        let mut group = self.atoms[0].build()?;
        for atom in &self.atoms[1..] {
            group = families::direct_product(&group, &atom.build()?)?;
        }
        Ok(group)
    }
}

/// Nonabelian groups of the built-in families with order at most
/// `max_order`: Q8, D3..D8, S3, S4, A4 and each of these times C2.
pub fn catalog(max_order: u128) -> Vec<GroupSpec> {
    let bases = ["Q8", "D3", "D4", "D5", "D6", "D7", "D8", "S3", "S4", "A4"];
    bases
        .iter()
        .map(|b| b.to_string())
        .chain(bases.iter().map(|b| format!("{b}xC2")))
        .map(|s| GroupSpec::parse(&s).expect("catalog entries parse"))
        .filter(|g| g.order().is_some_and(|o| o <= max_order))
        .collect()
}

impl std::str::FromStr for GroupSpec {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        GroupSpec::parse(s)
    }
}
