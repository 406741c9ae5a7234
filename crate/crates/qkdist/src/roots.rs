//! Root systems over the integers.
//!
//! Roots are stored as coefficient vectors over the simple roots and coroots
//! as coefficient vectors over the simple coroots, so every quantity in this
//! module is an exact integer. The full system is generated from the simple
//! roots by closing under the simple reflections, tracking the root and its
//! coroot side by side (reflections preserve the correspondence).

use std::collections::HashMap;
use std::fmt;

use crate::cartan::CartanType;
use crate::error::{Error, Result};

/// A root written in simple-root coordinates.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Root(pub Vec<i64>);

/// A coroot written in simple-coroot coordinates.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Coroot(pub Vec<i64>);

impl Root {
    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    /// True when every coefficient is >= 0 and the vector is nonzero. Roots
    /// are always all-nonnegative or all-nonpositive, so this splits the
    /// system in two.
    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&c| c >= 0) && self.0.iter().any(|&c| c != 0)
    }

    pub fn negated(&self) -> Root {
        Root(self.0.iter().map(|c| -c).collect())
    }
}

impl Coroot {
    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn negated(&self) -> Coroot {
        Coroot(self.0.iter().map(|c| -c).collect())
    }
}

fn fmt_vec(f: &mut fmt::Formatter<'_>, coeffs: &[i64]) -> fmt::Result {
    let parts: Vec<String> = coeffs.iter().map(|c| c.to_string()).collect();
    write!(f, "({})", parts.join(","))
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_vec(f, &self.0)
    }
}

impl fmt::Display for Coroot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_vec(f, &self.0)
    }
}

/// A subset of the simple roots, identifying a standard parabolic subgroup.
/// Indices are 0-based internally; the CLI and file formats use 1-based
/// labels and convert at the boundary.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Parabolic {
    indices: Vec<usize>,
    rank: usize,
}

impl Parabolic {
    pub fn new(indices: impl IntoIterator<Item = usize>, rank: usize) -> Result<Parabolic> {
        let mut indices: Vec<usize> = indices.into_iter().collect();
        indices.sort_unstable();
        indices.dedup();
        if let Some(&bad) = indices.iter().find(|&&i| i >= rank) {
            return Err(Error::IndexOutOfRange {
                index: bad + 1,
                rank,
            });
        }
        Ok(Parabolic { indices, rank })
    }

    pub fn empty(rank: usize) -> Parabolic {
        Parabolic {
            indices: Vec::new(),
            rank,
        }
    }

    pub fn full(rank: usize) -> Parabolic {
        Parabolic {
            indices: (0..rank).collect(),
            rank,
        }
    }

    /// All simple indices except `beta`: the maximal parabolic whose quotient
    /// is the rank-one flag variety attached to `beta`.
    pub fn maximal_omitting(beta: usize, rank: usize) -> Result<Parabolic> {
        if beta >= rank {
            return Err(Error::IndexOutOfRange {
                index: beta + 1,
                rank,
            });
        }
        Ok(Parabolic {
            indices: (0..rank).filter(|&i| i != beta).collect(),
            rank,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn contains(&self, i: usize) -> bool {
        self.indices.binary_search(&i).is_ok()
    }

    /// The complement within the simple roots: the indices that carry a
    /// quantum parameter / curve-degree component.
    pub fn complement(&self) -> Vec<usize> {
        (0..self.rank).filter(|i| !self.contains(*i)).collect()
    }

    pub fn is_full(&self) -> bool {
        self.indices.len() == self.rank
    }

    pub fn is_subset_of(&self, other: &Parabolic) -> bool {
        self.rank == other.rank && self.indices.iter().all(|&i| other.contains(i))
    }
}

impl fmt::Display for Parabolic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.indices.iter().map(|i| (i + 1).to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// The full set of roots and coroots of a Cartan type, with exact pairings.
///
/// Immutable after construction; all operations are pure.
pub struct RootSystem {
    cartan_type: CartanType,
    cartan: Vec<Vec<i64>>,
    /// Positive roots, sorted by (height, coefficients).
    positive_roots: Vec<Root>,
    /// Coroot of `positive_roots[k]`, same index.
    positive_coroots: Vec<Coroot>,
    positive_index: HashMap<Root, usize>,
}

impl RootSystem {
    pub fn new(cartan_type: CartanType) -> RootSystem {
        let n = cartan_type.rank();
        let cartan = cartan_type.cartan_matrix();

        // Close the simple (root, coroot) pairs under all simple reflections.
        let mut seen: HashMap<Root, Coroot> = HashMap::new();
        let mut queue: Vec<(Root, Coroot)> = Vec::new();
        for i in 0..n {
            let mut r = vec![0i64; n];
            r[i] = 1;
            let mut c = vec![0i64; n];
            c[i] = 1;
            let pair = (Root(r), Coroot(c));
            seen.insert(pair.0.clone(), pair.1.clone());
            queue.push(pair);
        }
        while let Some((r, c)) = queue.pop() {
            for i in 0..n {
                let r2 = reflect_root_coords(&cartan, i, &r);
                if !seen.contains_key(&r2) {
                    let c2 = reflect_coroot_coords(&cartan, i, &c);
                    seen.insert(r2.clone(), c2.clone());
                    queue.push((r2, c2));
                }
            }
        }

        let mut positive: Vec<(Root, Coroot)> =
            seen.into_iter().filter(|(r, _)| r.is_positive()).collect();
        positive.sort_by(|(a, _), (b, _)| {
            let ha: i64 = a.0.iter().sum();
            let hb: i64 = b.0.iter().sum();
            ha.cmp(&hb).then_with(|| a.0.cmp(&b.0))
        });

        let positive_index = positive
            .iter()
            .enumerate()
            .map(|(k, (r, _))| (r.clone(), k))
            .collect();
        let (positive_roots, positive_coroots) = positive.into_iter().unzip();

        let rs = RootSystem {
            cartan_type,
            cartan,
            positive_roots,
            positive_coroots,
            positive_index,
        };
        // Signs split exactly in half and every root is all-nonnegative or
        // all-nonpositive; both follow from the theory but are cheap to pin.
        debug_assert!(rs
            .positive_roots
            .iter()
            .all(|r| r.is_positive() && rs.coroot(r).is_ok()));
        rs
    }

    pub fn cartan_type(&self) -> CartanType {
        self.cartan_type
    }

    pub fn rank(&self) -> usize {
        self.cartan_type.rank()
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn simple_root(&self, i: usize) -> Root {
        let mut r = vec![0i64; self.rank()];
        r[i] = 1;
        Root(r)
    }

    pub fn simple_coroot(&self, i: usize) -> Coroot {
        let mut c = vec![0i64; self.rank()];
        c[i] = 1;
        Coroot(c)
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive_roots
    }

    pub fn positive_coroots(&self) -> &[Coroot] {
        &self.positive_coroots
    }

    pub fn is_root(&self, r: &Root) -> bool {
        self.positive_index.contains_key(r) || self.positive_index.contains_key(&r.negated())
    }

    /// The coroot of any root (positive or negative).
    pub fn coroot(&self, r: &Root) -> Result<Coroot> {
        if let Some(&k) = self.positive_index.get(r) {
            return Ok(self.positive_coroots[k].clone());
        }
        if let Some(&k) = self.positive_index.get(&r.negated()) {
            return Ok(self.positive_coroots[k].negated());
        }
        Err(Error::NotARoot(r.to_string()))
    }

    /// Exact pairing `<lambda, gamma^vee>` between a weight written over the
    /// simple roots and a coweight written over the simple coroots.
    pub fn pairing(&self, lambda: &Root, gamma: &Coroot) -> Result<i64> {
        let n = self.rank();
        if lambda.0.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: lambda.0.len(),
            });
        }
        if gamma.0.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: gamma.0.len(),
            });
        }
        // <alpha_j, alpha_i^vee> = cartan[i][j].
        let mut total = 0i64;
        for (i, &m) in gamma.0.iter().enumerate() {
            if m == 0 {
                continue;
            }
            for (j, &c) in lambda.0.iter().enumerate() {
                total += m * self.cartan[i][j] * c;
            }
        }
        Ok(total)
    }

    /// Whether `alpha` lies in the span of the parabolic's simple roots,
    /// i.e. whether its support avoids every quantum direction.
    pub fn in_parabolic_span(&self, alpha: &Root, parabolic: &Parabolic) -> bool {
        alpha
            .0
            .iter()
            .enumerate()
            .all(|(i, &c)| c == 0 || parabolic.contains(i))
    }

    /// Apply the simple reflection `s_i` to a vector in root coordinates.
    pub fn reflect_root(&self, i: usize, r: &Root) -> Root {
        reflect_root_coords(&self.cartan, i, r)
    }

    /// Apply the simple reflection `s_i` to a vector in coroot coordinates.
    pub fn reflect_coroot(&self, i: usize, c: &Coroot) -> Coroot {
        reflect_coroot_coords(&self.cartan, i, c)
    }
}

/// `s_i` on root coordinates: subtract `<v, alpha_i^vee> = (A v)_i` times
/// `alpha_i`, which only touches coordinate `i`.
fn reflect_root_coords(cartan: &[Vec<i64>], i: usize, r: &Root) -> Root {
    let mut out = r.0.clone();
    let pairing: i64 = cartan[i].iter().zip(&r.0).map(|(&a, &c)| a * c).sum();
    out[i] -= pairing;
    Root(out)
}

/// `s_i` on coroot coordinates: subtract `<alpha_i, v^vee> = (A^T v)_i` times
/// `alpha_i^vee`.
fn reflect_coroot_coords(cartan: &[Vec<i64>], i: usize, c: &Coroot) -> Coroot {
    let mut out = c.0.clone();
    let pairing: i64 = cartan.iter().zip(&c.0).map(|(row, &m)| row[i] * m).sum();
    out[i] -= pairing;
    Coroot(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::Family;

    fn system(label: &str) -> RootSystem {
        RootSystem::new(CartanType::parse(label).unwrap())
    }

    /// Closed-form positive root counts, independent of the closure code.
    fn expected_positive_count(t: CartanType) -> usize {
        let n = t.rank();
        match t.family() {
            Family::A => n * (n + 1) / 2,
            Family::B | Family::C => n * n,
            Family::D => n * (n - 1),
            Family::E => unreachable!("above the cap"),
            Family::F => 24,
            Family::G => 6,
        }
    }

    #[test]
    fn positive_root_counts_match_closed_forms() {
        for label in [
            "A1", "A2", "A3", "A4", "A5", "A6", "A7", "B2", "B3", "B4", "B5", "B6", "C2", "C3",
            "C4", "C5", "C6", "D3", "D4", "D5", "D6", "F4", "G2",
        ] {
            let rs = system(label);
            assert_eq!(
                rs.positive_roots().len(),
                expected_positive_count(rs.cartan_type()),
                "count mismatch for {label}"
            );
        }
    }

    #[test]
    fn every_root_sign_definite_and_closed_under_simple_reflections() {
        for label in ["A3", "B3", "C3", "D4", "G2"] {
            let rs = system(label);
            let mut all: Vec<Root> = rs.positive_roots().to_vec();
            all.extend(rs.positive_roots().iter().map(Root::negated));
            for r in &all {
                assert!(r.is_positive() || r.negated().is_positive(), "{label} {r}");
                for i in 0..rs.rank() {
                    let img = rs.reflect_root(i, r);
                    assert!(rs.is_root(&img), "{label}: s_{i}({r}) = {img} not a root");
                }
            }
        }
    }

    #[test]
    fn pairing_of_root_with_own_coroot_is_two() {
        for label in ["A2", "A4", "B3", "C3", "D4", "F4", "G2"] {
            let rs = system(label);
            for r in rs.positive_roots() {
                let c = rs.coroot(r).unwrap();
                assert_eq!(rs.pairing(r, &c).unwrap(), 2, "{label} {r}");
            }
        }
    }

    #[test]
    fn pairing_reads_off_cartan_matrix() {
        // <alpha_1, alpha_2^vee> = -1 in A2.
        let a2 = system("A2");
        let v = a2
            .pairing(&a2.simple_root(0), &a2.simple_coroot(1))
            .unwrap();
        assert_eq!(v, -1);

        // G2: alpha_1 short, alpha_2 long; <alpha_long, alpha_short^vee> = -3.
        let g2 = system("G2");
        let v = g2
            .pairing(&g2.simple_root(1), &g2.simple_coroot(0))
            .unwrap();
        assert_eq!(v, -3);
        let v = g2
            .pairing(&g2.simple_root(0), &g2.simple_coroot(1))
            .unwrap();
        assert_eq!(v, -1);
    }

    #[test]
    fn pairings_stay_in_crystallographic_range() {
        // Integrality is automatic with integer storage; the content is that
        // coroot() succeeds for every root and |<a, b^vee>| <= 3 throughout,
        // the bound forced by length ratios in crystallographic systems.
        for label in ["A3", "B3", "C3", "D4", "F4", "G2"] {
            let rs = system(label);
            for r in rs.positive_roots() {
                for c in rs.positive_coroots() {
                    let p = rs.pairing(r, c).unwrap();
                    assert!(
                        (-3..=3).contains(&p),
                        "{label}: pairing {p} out of crystallographic range"
                    );
                }
            }
        }
    }

    #[test]
    fn a2_highest_root_and_its_coroot() {
        let rs = system("A2");
        let theta = Root(vec![1, 1]);
        assert!(rs.is_root(&theta));
        assert_eq!(rs.coroot(&theta).unwrap(), Coroot(vec![1, 1]));
        assert_eq!(rs.positive_roots().len(), 3);
    }

    #[test]
    fn g2_highest_roots_have_known_coroots() {
        let rs = system("G2");
        // Highest (long) root 3a1 + 2a2 has coroot a1^vee + 2a2^vee.
        assert_eq!(rs.coroot(&Root(vec![3, 2])).unwrap(), Coroot(vec![1, 2]));
        // Highest short root 2a1 + a2 has coroot 2a1^vee + 3a2^vee.
        assert_eq!(rs.coroot(&Root(vec![2, 1])).unwrap(), Coroot(vec![2, 3]));
    }

    #[test]
    fn coroot_support_matches_root_support() {
        for label in ["A3", "B4", "C4", "D4", "F4", "G2"] {
            let rs = system(label);
            for (r, c) in rs.positive_roots().iter().zip(rs.positive_coroots()) {
                for i in 0..rs.rank() {
                    assert_eq!(
                        r.0[i] == 0,
                        c.0[i] == 0,
                        "{label}: support mismatch at {i} for {r}"
                    );
                }
            }
        }
    }

    #[test]
    fn parabolic_span_detection() {
        let a3 = system("A3");
        let p13 = Parabolic::new([0, 2], 3).unwrap();
        // alpha_1 + alpha_2 + alpha_3 uses index 2 which is outside {1,3}.
        assert!(!a3.in_parabolic_span(&Root(vec![1, 1, 1]), &p13));
        assert!(a3.in_parabolic_span(&a3.simple_root(0), &p13));
        assert!(a3.in_parabolic_span(&a3.simple_root(2), &p13));
        assert!(!a3.in_parabolic_span(&a3.simple_root(1), &p13));
    }

    #[test]
    fn coroot_rejects_non_roots() {
        let a2 = system("A2");
        assert!(matches!(
            a2.coroot(&Root(vec![2, 0])),
            Err(Error::NotARoot(_))
        ));
        assert!(matches!(
            a2.coroot(&Root(vec![1, -1])),
            Err(Error::NotARoot(_))
        ));
    }

    #[test]
    fn pairing_rejects_dimension_mismatch() {
        let a2 = system("A2");
        assert!(matches!(
            a2.pairing(&Root(vec![1, 0, 0]), &a2.simple_coroot(0)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn parabolic_validation_and_complement() {
        assert!(Parabolic::new([3], 3).is_err());
        let p = Parabolic::new([2, 0], 4).unwrap();
        assert_eq!(p.indices(), &[0, 2]);
        assert_eq!(p.complement(), vec![1, 3]);
        assert!(Parabolic::empty(4).is_subset_of(&p));
        assert!(p.is_subset_of(&Parabolic::full(4)));
        assert!(!Parabolic::full(4).is_subset_of(&p));
    }
}
