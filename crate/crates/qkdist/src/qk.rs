//! Quantum K-theoretic pairings determined by the distance function.
//!
//! The two-point K-theoretic Gromov-Witten invariant of a pair of
//! structure sheaves `(O^u, O_v)` in degree `d` equals 1 when `d` is at
//! least the distance `dist(u, v)` and 0 otherwise; summing over all
//! degrees gives the quantum K-metric
//!
//! ```text
//! ((O^u, O_v)) = q^dist(u,v) / prod_beta (1 - q_beta).
//! ```
//!
//! This module provides those pairings as exact data: indicator
//! invariants, closed-form series with their denominators cleared, and
//! truncated expansions, plus the sparse integer classes used to express
//! multiplication-table rows.

use std::collections::BTreeMap;
use std::fmt;

use crate::distance::{degrees_up_to, Degree, FlagVariety};
use crate::error::{Error, Result};
use crate::weyl::{WeylElement, WeylGroup};

/// Which Schubert basis a class is expressed in: classes of the opposite
/// Schubert varieties `O^w` or of the Schubert varieties `O_w`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SchubertBasis {
    Opposite,
    Schubert,
}

/// A sparse integer combination of Schubert structure sheaves.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct KClass {
    basis: SchubertBasis,
    coefficients: BTreeMap<WeylElement, i64>,
}

impl KClass {
    pub fn zero(basis: SchubertBasis) -> KClass {
        KClass {
            basis,
            coefficients: BTreeMap::new(),
        }
    }

    /// The basis vector for a single coset.
    pub fn basis_element(basis: SchubertBasis, w: WeylElement) -> KClass {
        let mut class = KClass::zero(basis);
        class.add_term(w, 1);
        class
    }

    pub fn basis(&self) -> SchubertBasis {
        self.basis
    }

    /// Add `c` times a basis vector, dropping the term if it cancels.
    pub fn add_term(&mut self, w: WeylElement, c: i64) {
        use std::collections::btree_map::Entry;
        match self.coefficients.entry(w) {
            Entry::Vacant(slot) => {
                if c != 0 {
                    slot.insert(c);
                }
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if *slot.get() == 0 {
                    slot.remove();
                }
            }
        }
    }

    pub fn coefficient(&self, w: &WeylElement) -> i64 {
        self.coefficients.get(w).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&WeylElement, i64)> {
        self.coefficients.iter().map(|(w, &c)| (w, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// Render against a group, so cosets print as canonical words.
    pub fn format(&self, group: &WeylGroup) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut terms: Vec<(usize, Vec<usize>, &WeylElement, i64)> = self
            .coefficients
            .iter()
            .map(|(w, &c)| {
                let (len, word) = group.sort_key(w);
                (len, word, w, c)
            })
            .collect();
        terms.sort();
        let mut out = String::new();
        for (k, (_, _, w, c)) in terms.iter().enumerate() {
            let symbol = match self.basis {
                SchubertBasis::Opposite => format!("O^{{{}}}", group.format_word(w)),
                SchubertBasis::Schubert => format!("O_{{{}}}", group.format_word(w)),
            };
            let mag = c.abs();
            if k == 0 {
                if *c < 0 {
                    out.push('-');
                }
            } else {
                out.push_str(if *c < 0 { " - " } else { " + " });
            }
            if mag != 1 {
                out.push_str(&format!("{mag} "));
            }
            out.push_str(&symbol);
        }
        out
    }
}

/// The sheaf Euler characteristic, extended linearly from
/// `chi(O_w) = chi(O^w) = 1`: the sum of the coefficients.
pub fn euler_characteristic(class: &KClass) -> i64 {
    class.iter().map(|(_, c)| c).sum()
}

fn monomial_string(d: &Degree) -> String {
    let parts: Vec<String> = d
        .entries()
        .filter(|&(_, e)| e > 0)
        .map(|(i, e)| {
            if e == 1 {
                format!("q{}", i + 1)
            } else {
                format!("q{}^{}", i + 1, e)
            }
        })
        .collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join(" ")
    }
}

fn write_signed_terms(f: &mut fmt::Formatter<'_>, terms: &BTreeMap<Degree, i64>) -> fmt::Result {
    let nonzero: Vec<(&Degree, i64)> = terms
        .iter()
        .filter(|(_, &c)| c != 0)
        .map(|(d, &c)| (d, c))
        .collect();
    if nonzero.is_empty() {
        return write!(f, "0");
    }
    for (k, (d, c)) in nonzero.iter().enumerate() {
        let mag = c.abs();
        if k == 0 {
            if *c < 0 {
                write!(f, "-")?;
            }
        } else {
            write!(f, "{}", if *c < 0 { " - " } else { " + " })?;
        }
        if d.is_zero() {
            write!(f, "{mag}")?;
        } else if mag == 1 {
            write!(f, "{}", monomial_string(d))?;
        } else {
            write!(f, "{mag} {}", monomial_string(d))?;
        }
    }
    Ok(())
}

/// A Laurent-free polynomial in the quantum parameters with integer
/// coefficients, e.g. a metric numerator or a row of per-degree sums.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct QPolynomial {
    terms: BTreeMap<Degree, i64>,
}

impl QPolynomial {
    pub fn new() -> QPolynomial {
        QPolynomial::default()
    }

    pub fn monomial(degree: Degree, coefficient: i64) -> QPolynomial {
        let mut p = QPolynomial::new();
        p.add_term(degree, coefficient);
        p
    }

    /// Accumulate a term, dropping it if the coefficient cancels to zero.
    pub fn add_term(&mut self, degree: Degree, coefficient: i64) {
        let entry = self.terms.entry(degree.clone()).or_insert(0);
        *entry += coefficient;
        if *entry == 0 {
            self.terms.remove(&degree);
        }
    }

    pub fn coefficient(&self, degree: &Degree) -> i64 {
        self.terms.get(degree).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Degree, i64)> {
        self.terms.iter().map(|(d, &c)| (d, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Substitute 1 for every quantum parameter.
    pub fn evaluate_at_one(&self) -> i64 {
        self.terms.values().sum()
    }
}

impl fmt::Display for QPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_signed_terms(f, &self.terms)
    }
}

/// A power series in the quantum parameters, in one of two shapes:
/// the exact closed form `q^m / prod_beta (1 - q_beta)` produced by the
/// metric, or a truncation recording every coefficient up to a cap.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum QSeries {
    Closed {
        numerator: Degree,
    },
    Truncated {
        cap: Degree,
        coefficients: BTreeMap<Degree, i64>,
    },
}

impl QSeries {
    /// Expand into coefficients for every degree `<= cap` (componentwise).
    /// The cap must live on the same parameter support.
    pub fn truncate(&self, cap: &Degree) -> Result<QSeries> {
        match self {
            QSeries::Closed { numerator } => {
                if !numerator.same_support(cap) {
                    return Err(Error::DegreeSupportMismatch {
                        expected: support_names(numerator),
                        got: support_names(cap),
                    });
                }
                let coefficients = degrees_up_to(cap)
                    .into_iter()
                    .filter(|d| numerator.leq(d))
                    .map(|d| (d, 1))
                    .collect();
                Ok(QSeries::Truncated {
                    cap: cap.clone(),
                    coefficients,
                })
            }
            QSeries::Truncated {
                cap: old,
                coefficients,
            } => {
                if !cap.same_support(old) || !cap.leq(old) {
                    return Err(Error::ClosedFormRequired);
                }
                Ok(QSeries::Truncated {
                    cap: cap.clone(),
                    coefficients: coefficients
                        .iter()
                        .filter(|(d, _)| d.leq(cap))
                        .map(|(d, &c)| (d.clone(), c))
                        .collect(),
                })
            }
        }
    }

    /// Multiply through by `prod_beta (1 - q_beta)`, which is exact only
    /// for the closed form: the metric becomes the single monomial
    /// `q^dist`.
    pub fn clear_denominator(&self) -> Result<QPolynomial> {
        match self {
            QSeries::Closed { numerator } => Ok(QPolynomial::monomial(numerator.clone(), 1)),
            QSeries::Truncated { .. } => Err(Error::ClosedFormRequired),
        }
    }

    pub fn coefficient(&self, degree: &Degree) -> Option<i64> {
        match self {
            QSeries::Closed { numerator } => numerator
                .same_support(degree)
                .then(|| i64::from(numerator.leq(degree))),
            QSeries::Truncated { cap, coefficients } => (degree.same_support(cap)
                && degree.leq(cap))
            .then(|| coefficients.get(degree).copied().unwrap_or(0)),
        }
    }
}

fn support_names(d: &Degree) -> String {
    d.support()
        .map(|i| format!("q{}", i + 1))
        .collect::<Vec<_>>()
        .join(",")
}

impl fmt::Display for QSeries {
    /// Closed forms render as `q^(d_vec) / (1-q1)(1-q2)...` with the
    /// numerator in degree-vector notation (`1` when the numerator is
    /// zero, and no denominator on a point); truncations render as a
    /// polynomial in the parameters.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QSeries::Closed { numerator } => {
                let num = if numerator.is_zero() {
                    "1".to_string()
                } else {
                    format!("q^{numerator}")
                };
                let denominator: String = numerator
                    .support()
                    .map(|i| format!("(1-q{})", i + 1))
                    .collect();
                if denominator.is_empty() {
                    write!(f, "{num}")
                } else {
                    write!(f, "{num} / {denominator}")
                }
            }
            QSeries::Truncated { coefficients, .. } => write_signed_terms(f, coefficients),
        }
    }
}

impl<'g> FlagVariety<'g> {
    /// The classical pairing `chi(O^u . O_v)`: the opposite Schubert
    /// variety meets the Schubert variety exactly when `u <= v`, and the
    /// intersection then has Euler characteristic 1.
    pub fn classical_pairing(&self, u: &WeylElement, v: &WeylElement) -> Result<i64> {
        self.require_basis(u)?;
        self.require_basis(v)?;
        Ok(i64::from(self.group().bruhat_leq(u, v)))
    }

    /// The two-point K-theoretic Gromov-Witten invariant of
    /// `(O^u, O_v)` in a fixed effective degree: 1 exactly when the
    /// degree dominates `dist(u, v)` componentwise.
    pub fn two_point_invariant(
        &self,
        u: &WeylElement,
        v: &WeylElement,
        degree: &Degree,
    ) -> Result<i64> {
        let dist = self.distance(u, v)?;
        if !degree.same_support(&dist) {
            return Err(Error::DegreeSupportMismatch {
                expected: support_names(&dist),
                got: support_names(degree),
            });
        }
        Ok(i64::from(dist.leq(degree)))
    }

    /// The quantum K-metric `((O^u, O_v)) = sum_d <O^u, O_v>_d q^d`,
    /// in closed form `q^dist(u,v) / prod_beta (1 - q_beta)`.
    pub fn metric(&self, u: &WeylElement, v: &WeylElement) -> Result<QSeries> {
        Ok(QSeries::Closed {
            numerator: self.distance(u, v)?,
        })
    }

    /// The metric expanded degree by degree up to a componentwise cap;
    /// each coefficient is the corresponding two-point invariant.
    pub fn metric_truncated(
        &self,
        u: &WeylElement,
        v: &WeylElement,
        cap: &Degree,
    ) -> Result<QSeries> {
        self.metric(u, v)?.truncate(cap)
    }

    fn convert_basis(&self, class: &KClass, target: SchubertBasis) -> Result<KClass> {
        if class.basis() == target {
            return Ok(class.clone());
        }
        let mut out = KClass::zero(target);
        for (w, c) in class.iter() {
            out.add_term(self.group().dual(w, self.parabolic())?, c);
        }
        Ok(out)
    }

    /// Rewrite a class over the opposite-variety basis using the duality
    /// `O_w = O^{dual(w)}`; coefficients are carried over unchanged, so
    /// the conversion is an involution and preserves Euler
    /// characteristics.
    pub fn to_opposite_basis(&self, class: &KClass) -> Result<KClass> {
        self.convert_basis(class, SchubertBasis::Opposite)
    }

    /// Rewrite a class over the Schubert-variety basis; inverse of
    /// [`FlagVariety::to_opposite_basis`].
    pub fn to_schubert_basis(&self, class: &KClass) -> Result<KClass> {
        self.convert_basis(class, SchubertBasis::Schubert)
    }
}
