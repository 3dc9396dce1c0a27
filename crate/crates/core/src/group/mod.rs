//! Finite groups stored as explicit Cayley tables.
//!
//! Every product is a table lookup, which keeps exhaustive scans over
//! element pairs and triples cheap at the sizes this crate targets.

mod families;
mod spec;

pub use families::{alternating, cyclic, dihedral, direct_product, quaternion, symmetric};
pub use spec::{catalog, Atom, GroupSpec};

use thiserror::Error;

/// Default upper bound on the order of a group built from a spec string.
pub const DEFAULT_ORDER_CAP: usize = 512;

/// Associativity is verified exhaustively up to this order.
pub const ASSOCIATIVITY_CHECK_LIMIT: usize = 512;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("cannot parse group spec {input:?} at byte {position}: {message}")]
    Parse {
        input: String,
        position: usize,
        message: String,
    },
    #[error("group order {order} exceeds the cap of {cap}")]
    OrderCapExceeded { order: String, cap: usize },
    #[error("invalid atom parameter: {0}")]
    InvalidParameter(String),
    #[error("cayley table is not a latin square (row or column {0})")]
    NotLatinSquare(usize),
    #[error("element {0} is not a two-sided identity")]
    BadIdentity(usize),
    #[error("associativity fails at ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("element index {index} out of range for group of order {order}")]
    ElementOutOfRange { index: usize, order: usize },
}

/// A finite group given by its multiplication table.
///
/// `cayley[a * order + b]` is the index of the product `a·b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    cayley: Vec<u32>,
    identity: usize,
    labels: Vec<String>,
}

impl FiniteGroup {
    /// Builds a group from a row-major table and validates the group axioms
    /// (latin square, identity, and associativity up to
    /// [`ASSOCIATIVITY_CHECK_LIMIT`]).
    pub fn from_table(
        cayley: Vec<Vec<usize>>,
        identity: usize,
        labels: Vec<String>,
    ) -> Result<Self, GroupError> {
        let order = cayley.len();
        if order == 0 || labels.len() != order {
            return Err(GroupError::InvalidParameter(format!(
                "table has {} rows and {} labels",
                order,
                labels.len()
            )));
        }
        let mut flat = Vec::with_capacity(order * order);
        for (a, row) in cayley.iter().enumerate() {
            if row.len() != order {
                return Err(GroupError::NotLatinSquare(a));
            }
            for &c in row {
                if c >= order {
                    return Err(GroupError::ElementOutOfRange { index: c, order });
                }
                flat.push(c as u32);
            }
        }
        let group = FiniteGroup {
            order,
            cayley: flat,
            identity,
            labels,
        };
        group.validate()?;
        Ok(group)
    }

    fn validate(&self) -> Result<(), GroupError> {
        let n = self.order;
        if self.identity >= n {
            return Err(GroupError::ElementOutOfRange {
                index: self.identity,
                order: n,
            });
        }
        let mut seen = vec![false; n];
        for a in 0..n {
            seen.iter_mut().for_each(|s| *s = false);
            for b in 0..n {
                let c = self.mul(a, b);
                if std::mem::replace(&mut seen[c], true) {
                    return Err(GroupError::NotLatinSquare(a));
                }
            }
        }
        for b in 0..n {
            seen.iter_mut().for_each(|s| *s = false);
            for a in 0..n {
                let c = self.mul(a, b);
                if std::mem::replace(&mut seen[c], true) {
                    return Err(GroupError::NotLatinSquare(b));
                }
            }
        }
        for a in 0..n {
            if self.mul(self.identity, a) != a || self.mul(a, self.identity) != a {
                return Err(GroupError::BadIdentity(self.identity));
            }
        }
        if n <= ASSOCIATIVITY_CHECK_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    let ab = self.mul(a, b);
                    for c in 0..n {
                        if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                            return Err(GroupError::NotAssociative(a, b, c));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn element_by_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    /// Product `a·b`. Panics on out-of-range indices; see [`commutes`] for
    /// the checked query.
    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.cayley[a * self.order + b] as usize
    }

    pub fn inverse(&self, a: usize) -> usize {
        (0..self.order)
            .find(|&b| self.mul(a, b) == self.identity)
            .expect("latin square rows contain the identity")
    }

    /// Row-major copy of the table as nested vectors.
    pub fn table(&self) -> Vec<Vec<usize>> {
        self.cayley
            .chunks(self.order)
            .map(|row| row.iter().map(|&c| c as usize).collect())
            .collect()
    }

    pub fn is_abelian(&self) -> bool {
        self.center().len() == self.order
    }
}

/// Checked commutation test: `cayley[a][b] == cayley[b][a]`.
pub fn commutes(g: &FiniteGroup, a: usize, b: usize) -> Result<bool, GroupError> {
    for index in [a, b] {
        if index >= g.order {
            return Err(GroupError::ElementOutOfRange {
                index,
                order: g.order,
            });
        }
    }
    Ok(g.mul(a, b) == g.mul(b, a))
}

/// Elements commuting with every element, in increasing index order.
pub fn center(g: &FiniteGroup) -> Vec<usize> {
    g.center()
}

impl FiniteGroup {
    pub fn center(&self) -> Vec<usize> {
        (0..self.order)
            .filter(|&z| (0..self.order).all(|a| self.mul(z, a) == self.mul(a, z)))
            .collect()
    }
}

/// Parses and builds a group with the default order cap.
pub fn build_group(spec: &str) -> Result<FiniteGroup, GroupError> {
    GroupSpec::parse(spec)?.build(DEFAULT_ORDER_CAP)
}
