//! Cartan types in Bourbaki labeling.
//!
//! Matrices follow the convention `a[i][j] = <alpha_j, alpha_i^vee>`, so that
//! `s_i(alpha_j) = alpha_j - a[i][j] alpha_i`. Node `i` of the Dynkin diagram is
//! stored at index `i - 1`.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CartanType {
    family: Family,
    rank: usize,
}

impl CartanType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if !ok {
            return Err(Error::InvalidCartanType(format!(
                "{}{}: rank out of range for family",
                family.letter(),
                rank
            )));
        }
        // Elements are keyed by the images of the simple roots packed into a u128.
        if rank > 8 {
            return Err(Error::InvalidCartanType(format!(
                "{}{}: ranks above 8 are not supported",
                family.letter(),
                rank
            )));
        }
        Ok(CartanType { family, rank })
    }

    pub fn family(self) -> Family {
        self.family
    }

    pub fn rank(self) -> usize {
        self.rank
    }

    /// `a[i][j] = <alpha_j, alpha_i^vee>` with 0-based indices.
    pub fn cartan_matrix(self) -> Vec<Vec<i64>> {
        let n = self.rank;
        let mut a = vec![vec![0i64; n]; n];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
        }
        // (i, j, a_ij, a_ji), 1-based nodes.
        let mut bond = |i: usize, j: usize, aij: i64, aji: i64| {
            a[i - 1][j - 1] = aij;
            a[j - 1][i - 1] = aji;
        };
        match self.family {
            Family::A => {
                for i in 1..n {
                    bond(i, i + 1, -1, -1);
                }
            }
            Family::B => {
                for i in 1..n - 1 {
                    bond(i, i + 1, -1, -1);
                }
                // alpha_n short
                bond(n - 1, n, -1, -2);
            }
            Family::C => {
                for i in 1..n - 1 {
                    bond(i, i + 1, -1, -1);
                }
                // alpha_n long
                bond(n - 1, n, -2, -1);
            }
            Family::D => {
                for i in 1..n - 1 {
                    bond(i, i + 1, -1, -1);
                }
                bond(n - 2, n, -1, -1);
            }
            Family::E => {
                bond(1, 3, -1, -1);
                bond(2, 4, -1, -1);
                for i in 3..n {
                    bond(i, i + 1, -1, -1);
                }
            }
            Family::F => {
                bond(1, 2, -1, -1);
                // alpha_2 long, alpha_3 short
                bond(2, 3, -1, -2);
                bond(3, 4, -1, -1);
            }
            Family::G => {
                // alpha_1 short, alpha_2 long
                bond(1, 2, -3, -1);
            }
        }
        a
    }

    /// Number of positive roots, from the standard closed forms.
    pub fn num_positive_roots(self) -> usize {
        let n = self.rank;
        match self.family {
            Family::A => n * (n + 1) / 2,
            Family::B | Family::C => n * n,
            Family::D => n * (n - 1),
            Family::E => match n {
                6 => 36,
                7 => 63,
                _ => 120,
            },
            Family::F => 24,
            Family::G => 6,
        }
    }

    /// Order of the Weyl group.
    pub fn weyl_order(self) -> u128 {
        let n = self.rank as u128;
        let fact = |k: u128| (1..=k).product::<u128>();
        match self.family {
            Family::A => fact(n + 1),
            Family::B | Family::C => (1u128 << n) * fact(n),
            Family::D => (1u128 << (n - 1)) * fact(n),
            Family::E => match n {
                6 => 51_840,
                7 => 2_903_040,
                _ => 696_729_600,
            },
            Family::F => 1152,
            Family::G => 12,
        }
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

impl Serialize for CartanType {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl FromStr for CartanType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let letter = chars
            .next()
            .ok_or_else(|| Error::InvalidCartanType("empty string".into()))?;
        let family = match letter.to_ascii_uppercase() {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            _ => return Err(Error::InvalidCartanType(s.to_string())),
        };
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::InvalidCartanType(s.to_string()))?;
        CartanType::new(family, rank)
    }
}
