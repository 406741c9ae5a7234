//! Cartan types and Cartan matrices for the finite crystallographic families,
//! in Bourbaki numbering.

use std::fmt;

use crate::error::{Error, Result};

/// Hard limit on the Weyl group order accepted at construction. Everything
/// downstream may enumerate the full group, so types above this bound are
/// rejected before any work happens.
pub const WEYL_ORDER_CAP: u128 = 50_000;

/// One of the seven simple families A-G.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
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
    pub fn letter(self) -> char {
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

    fn from_letter(c: char) -> Option<Family> {
        match c.to_ascii_uppercase() {
            'A' => Some(Family::A),
            'B' => Some(Family::B),
            'C' => Some(Family::C),
            'D' => Some(Family::D),
            'E' => Some(Family::E),
            'F' => Some(Family::F),
            'G' => Some(Family::G),
            _ => None,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// A validated simple Lie type: family plus rank, e.g. `A3` or `G2`.
///
/// Construction checks both the classification constraints on the rank and
/// the Weyl-order cap [`WEYL_ORDER_CAP`], so a value of this type always
/// describes a root system whose Weyl group can be enumerated in full.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CartanType {
    family: Family,
    rank: usize,
}

impl CartanType {
    pub fn new(family: Family, rank: usize) -> Result<CartanType> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 3,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if !ok {
            return Err(Error::InvalidCartanType {
                label: format!("{}{}", family.letter(), rank),
                reason: "rank outside the classification range for this family",
            });
        }
        let order = weyl_order(family, rank);
        if order > WEYL_ORDER_CAP {
            return Err(Error::WeylOrderCapExceeded {
                family: family.letter(),
                rank,
                order,
                cap: WEYL_ORDER_CAP,
            });
        }
        Ok(CartanType { family, rank })
    }

    /// Parse a compact label such as `"A2"`, `"b3"`, or `"G2"`.
    pub fn parse(label: &str) -> Result<CartanType> {
        let label = label.trim();
        let mut chars = label.chars();
        let family =
            chars
                .next()
                .and_then(Family::from_letter)
                .ok_or_else(|| Error::InvalidCartanType {
                    label: label.to_string(),
                    reason: "expected a family letter A-G followed by the rank",
                })?;
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::InvalidCartanType {
                label: label.to_string(),
                reason: "expected a family letter A-G followed by the rank",
            })?;
        CartanType::new(family, rank)
    }

    pub fn family(self) -> Family {
        self.family
    }

    pub fn rank(self) -> usize {
        self.rank
    }

    /// Order of the Weyl group, from the classical closed-form counts.
    pub fn weyl_order(self) -> u128 {
        weyl_order(self.family, self.rank)
    }

    /// The Cartan matrix in Bourbaki numbering with the pairing convention
    /// `a[i][j] = <alpha_j, alpha_i^vee>`: column j holds the pairings of the
    /// j-th simple root against every simple coroot.
    pub fn cartan_matrix(self) -> Vec<Vec<i64>> {
        let n = self.rank;
        let mut a = vec![vec![0i64; n]; n];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
        }
        // Shared chain part; the families below adjust the tail or the fork.
        let bond = |a: &mut Vec<Vec<i64>>, i: usize, j: usize| {
            a[i][j] = -1;
            a[j][i] = -1;
        };
        match self.family {
            Family::A => {
                for i in 0..n - 1 {
                    bond(&mut a, i, i + 1);
                }
            }
            Family::B => {
                for i in 0..n - 1 {
                    bond(&mut a, i, i + 1);
                }
                // alpha_n is short: <alpha_{n-1}, alpha_n^vee> = -2.
                a[n - 1][n - 2] = -2;
            }
            Family::C => {
                for i in 0..n - 1 {
                    bond(&mut a, i, i + 1);
                }
                // alpha_n is long: <alpha_n, alpha_{n-1}^vee> = -2.
                a[n - 2][n - 1] = -2;
            }
            Family::D => {
                for i in 0..n - 2 {
                    bond(&mut a, i, i + 1);
                }
                bond(&mut a, n - 3, n - 1);
            }
            Family::E => {
                // Chain 1-3-4-5-...-n with node 2 attached to node 4.
                bond(&mut a, 0, 2);
                for i in 2..n - 1 {
                    bond(&mut a, i, i + 1);
                }
                bond(&mut a, 1, 3);
            }
            Family::F => {
                bond(&mut a, 0, 1);
                bond(&mut a, 1, 2);
                bond(&mut a, 2, 3);
                // alpha_1, alpha_2 long; alpha_3, alpha_4 short.
                a[2][1] = -2;
            }
            Family::G => {
                // alpha_1 short, alpha_2 long: <alpha_2, alpha_1^vee> = -3.
                a[0][1] = -3;
                a[1][0] = -1;
            }
        }
        a
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

fn weyl_order(family: Family, rank: usize) -> u128 {
    fn factorial(n: usize) -> u128 {
        (1..=n as u128).fold(1u128, |acc, k| acc.saturating_mul(k))
    }
    let two_pow = |k: usize| -> u128 {
        if k >= 127 {
            u128::MAX
        } else {
            1u128 << k
        }
    };
    match family {
        Family::A => factorial(rank + 1),
        Family::B | Family::C => two_pow(rank).saturating_mul(factorial(rank)),
        Family::D => two_pow(rank - 1).saturating_mul(factorial(rank)),
        Family::E => match rank {
            6 => 51_840,
            7 => 2_903_040,
            8 => 696_729_600,
            _ => unreachable!("E rank validated at construction"),
        },
        Family::F => 1_152,
        Family::G => 12,
    }
}
