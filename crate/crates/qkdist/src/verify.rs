//! Consistency checks for user-supplied multiplication tables.
//!
//! Every check compares a quantity read off the table against one
//! recomputed from the distance function alone, so the two sides are
//! independent:
//!
//! * `euler`: the degree-by-degree sheaf Euler characteristic of the row
//!   `O^u * O^{dual(v)}` must be the single monomial `q^dist(u,v)`.
//! * `sumcoef-total`: the coefficients of each row must sum to 1.
//! * `sumcoef-per-degree`: the per-degree coefficient sums of the row
//!   `O^u * O^v` must equal `sum_z f_z(v) q^dist(u,z)`, where `f` is the
//!   Mobius expansion produced by [`mobius_coefficients`].
//! * `ringhom`: substituting 1 for every quantum parameter and then
//!   summing coefficients must give 1, computed straight off the raw
//!   term list as a cross-check of the aggregation used by `sumcoef`.

use std::collections::BTreeMap;
use std::fmt;

use crate::distance::FlagVariety;
use crate::error::Result;
use crate::qk::{euler_characteristic, QPolynomial};
use crate::table::QkTable;
use crate::weyl::WeylElement;

/// Expand the class dual to a Schubert basis element over the opposite
/// basis: the unique integers `f_z` with
/// `sum over z >= u of f_z = [u <= dual(v)]` for every basis coset `u`,
/// found by back-substitution down the length filtration. Zero
/// coefficients are omitted.
///
/// The solution is always the single term `f_{dual(v)} = 1`: that delta
/// satisfies the system, and triangularity makes the solution unique.
/// Solving the system anyway means the checks built on the expansion
/// cross-validate that collapse instead of assuming it.
pub fn mobius_coefficients(
    variety: &FlagVariety<'_>,
    v: &WeylElement,
) -> Result<BTreeMap<WeylElement, i64>> {
    let group = variety.group();
    let dual = group.dual(v, variety.parabolic())?;
    let basis = variety.basis();
    // The basis is sorted by length, and `u < z` in Bruhat order forces
    // `length(u) < length(z)`, so every constraint on `f` at position `i`
    // involves only positions `>= i`.
    let mut f: Vec<i64> = vec![0; basis.len()];
    for i in (0..basis.len()).rev() {
        let rhs = i64::from(group.bruhat_leq(&basis[i], &dual));
        let tail: i64 = (i + 1..basis.len())
            .filter(|&j| f[j] != 0 && group.bruhat_leq(&basis[i], &basis[j]))
            .map(|j| f[j])
            .sum();
        f[i] = rhs - tail;
    }
    Ok(basis
        .iter()
        .zip(f)
        .filter(|&(_, c)| c != 0)
        .map(|(w, c)| (w.clone(), c))
        .collect())
}

/// The individual table checks.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CheckKind {
    Euler,
    SumcoefTotal,
    SumcoefPerDegree,
    RingHom,
}

impl CheckKind {
    pub const ALL: [CheckKind; 4] = [
        CheckKind::Euler,
        CheckKind::SumcoefTotal,
        CheckKind::SumcoefPerDegree,
        CheckKind::RingHom,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckKind::Euler => "euler",
            CheckKind::SumcoefTotal => "sumcoef-total",
            CheckKind::SumcoefPerDegree => "sumcoef-per-degree",
            CheckKind::RingHom => "ringhom",
        }
    }
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One comparison: a single check evaluated on a single table row.
#[derive(Clone, Debug)]
pub struct CheckRecord {
    pub check: CheckKind,
    pub u: String,
    pub v: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

/// The outcome of a set of checks over a whole table.
#[derive(Clone, Debug, Default)]
pub struct Report {
    records: Vec<CheckRecord>,
}

impl Report {
    pub fn records(&self) -> &[CheckRecord] {
        &self.records
    }

    pub fn passed(&self) -> bool {
        self.records.iter().all(|r| r.pass)
    }

    pub fn total(&self) -> usize {
        self.records.len()
    }

    pub fn failed(&self) -> usize {
        self.records.iter().filter(|r| !r.pass).count()
    }

    pub fn merge(&mut self, other: Report) {
        self.records.extend(other.records);
    }

    fn push(
        &mut self,
        check: CheckKind,
        variety: &FlagVariety<'_>,
        pair: (usize, usize),
        expected: String,
        actual: String,
    ) {
        let group = variety.group();
        self.records.push(CheckRecord {
            check,
            u: group.format_word(&variety.basis()[pair.0]),
            v: group.format_word(&variety.basis()[pair.1]),
            pass: expected == actual,
            expected,
            actual,
        });
    }
}

/// Ordered orientations of a declared row: `(a, b)` and, when distinct,
/// `(b, a)`. Checks whose statement is not symmetric in the two factors
/// must hold in both orientations.
fn orientations(pair: (usize, usize)) -> Vec<(usize, usize)> {
    if pair.0 == pair.1 {
        vec![pair]
    } else {
        vec![pair, (pair.1, pair.0)]
    }
}

/// Per-degree coefficient sums of the declared row `O^u * O^v` as a
/// polynomial in the quantum parameters.
fn row_coefficient_sums(
    table: &QkTable,
    variety: &FlagVariety<'_>,
    u: &WeylElement,
    v: &WeylElement,
) -> Result<QPolynomial> {
    let mut sums = QPolynomial::new();
    for (degree, class) in table.product(variety, u, v)? {
        sums.add_term(degree, euler_characteristic(&class));
    }
    Ok(sums)
}

/// Check that every declared row `O^u * O^w` has degree-by-degree Euler
/// characteristic `q^dist(u, dual(w))`, the statement of the pairing
/// formula with `w = dual(v)`.
pub fn check_euler_dist(table: &QkTable, variety: &FlagVariety<'_>) -> Result<Report> {
    let group = variety.group();
    let mut report = Report::default();
    for pair in table.row_pairs() {
        for (a, b) in orientations(pair) {
            let u = &variety.basis()[a];
            let w = &variety.basis()[b];
            let v = group.dual(w, variety.parabolic())?;
            let expected = QPolynomial::monomial(variety.distance(u, &v)?, 1);
            let actual = row_coefficient_sums(table, variety, u, w)?;
            report.push(
                CheckKind::Euler,
                variety,
                (a, b),
                expected.to_string(),
                actual.to_string(),
            );
        }
    }
    Ok(report)
}

/// Check the coefficient sums of every declared row: the total must be 1,
/// and per degree the sums must match `sum_z f_z(v) q^dist(u,z)` with `f`
/// the Mobius expansion of `dual(v)`.
pub fn check_sumcoef(table: &QkTable, variety: &FlagVariety<'_>) -> Result<Report> {
    let mut report = Report::default();
    for pair in table.row_pairs() {
        // The total is symmetric in the factors: record it once per row.
        let u = &variety.basis()[pair.0];
        let v = &variety.basis()[pair.1];
        let total = row_coefficient_sums(table, variety, u, v)?.evaluate_at_one();
        report.push(
            CheckKind::SumcoefTotal,
            variety,
            pair,
            "1".to_string(),
            total.to_string(),
        );

        for (a, b) in orientations(pair) {
            let u = &variety.basis()[a];
            let v = &variety.basis()[b];
            let mut expected = QPolynomial::new();
            for (z, c) in mobius_coefficients(variety, v)? {
                expected.add_term(variety.distance(u, &z)?, c);
            }
            let actual = row_coefficient_sums(table, variety, u, v)?;
            report.push(
                CheckKind::SumcoefPerDegree,
                variety,
                (a, b),
                expected.to_string(),
                actual.to_string(),
            );
        }
    }
    Ok(report)
}

/// Check that evaluating every quantum parameter at 1 and then summing
/// the raw coefficients of each declared row gives 1: the specialization
/// to ordinary K-theory preserves Euler characteristics. Computed
/// term-by-term off the stored rows, independently of the grouping used
/// by the `sumcoef` checks.
pub fn check_ringhom(table: &QkTable, variety: &FlagVariety<'_>) -> Result<Report> {
    let mut report = Report::default();
    for pair in table.row_pairs() {
        let specialized: i64 = table
            .terms(pair.0, pair.1)
            .map(|terms| terms.iter().map(|t| t.coefficient).sum())
            .unwrap_or(0);
        report.push(
            CheckKind::RingHom,
            variety,
            pair,
            "1".to_string(),
            specialized.to_string(),
        );
    }
    Ok(report)
}

/// Run the selected checks and collect every record into one report.
pub fn run_checks(
    table: &QkTable,
    variety: &FlagVariety<'_>,
    kinds: &[CheckKind],
) -> Result<Report> {
    let mut report = Report::default();
    if kinds.contains(&CheckKind::Euler) {
        report.merge(check_euler_dist(table, variety)?);
    }
    if kinds.contains(&CheckKind::SumcoefTotal) || kinds.contains(&CheckKind::SumcoefPerDegree) {
        let full = check_sumcoef(table, variety)?;
        let keep: Vec<CheckRecord> = full
            .records
            .into_iter()
            .filter(|r| kinds.contains(&r.check))
            .collect();
        report.merge(Report { records: keep });
    }
    if kinds.contains(&CheckKind::RingHom) {
        report.merge(check_ringhom(table, variety)?);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::CartanType;
    use crate::qk::{KClass, SchubertBasis};
    use crate::roots::{Parabolic, RootSystem};
    use crate::table::read_header;
    use crate::weyl::WeylGroup;

    const P1_TABLE: &str = include_str!("../data/qk_p1.txt");
    const P2_TABLE: &str = include_str!("../data/qk_p2.txt");

    fn group(label: &str) -> WeylGroup {
        WeylGroup::new(RootSystem::new(CartanType::parse(label).unwrap()))
    }

    fn variety<'g>(g: &'g WeylGroup, parabolic_1based: &[usize]) -> FlagVariety<'g> {
        let p = Parabolic::new(
            parabolic_1based.iter().map(|i| i - 1).collect::<Vec<_>>(),
            g.rank(),
        )
        .unwrap();
        FlagVariety::new(g, p).unwrap()
    }

    fn loaded(text: &str) -> (WeylGroup, Parabolic) {
        let (t, p) = read_header(text).unwrap();
        (WeylGroup::new(RootSystem::new(t)), p)
    }

    #[test]
    fn mobius_examples_on_the_projective_plane() {
        let g = group("A2");
        let x = variety(&g, &[2]);
        let e = g.identity().clone();
        let s1 = g.parse_word("1").unwrap();
        let top = g.parse_word("2,1").unwrap();

        let f = mobius_coefficients(&x, &e).unwrap();
        assert_eq!(f, BTreeMap::from([(top.clone(), 1)]));
        let f = mobius_coefficients(&x, &s1).unwrap();
        assert_eq!(f, BTreeMap::from([(s1.clone(), 1)]));
        let f = mobius_coefficients(&x, &top).unwrap();
        assert_eq!(f, BTreeMap::from([(e.clone(), 1)]));

        // Non-minimal representatives are rejected.
        assert!(mobius_coefficients(&x, &g.parse_word("2").unwrap()).is_err());
    }

    fn assert_mobius_system(x: &FlagVariety<'_>) {
        let g = x.group();
        for v in x.basis() {
            let f = mobius_coefficients(x, v).unwrap();
            let dual = g.dual(v, x.parabolic()).unwrap();
            for u in x.basis() {
                let lhs: i64 = f
                    .iter()
                    .filter(|(z, _)| g.bruhat_leq(u, z))
                    .map(|(_, c)| c)
                    .sum();
                assert_eq!(lhs, i64::from(g.bruhat_leq(u, &dual)));
            }
            let total: i64 = f.values().sum();
            assert_eq!(
                total,
                1,
                "expansion of dual({}) must have Euler characteristic 1",
                g.format_word(v)
            );
            // The back-substitution must discover the collapse to the
            // single dual class rather than assume it.
            assert_eq!(f, BTreeMap::from([(dual, 1)]));
        }
    }

    #[test]
    fn mobius_solves_its_defining_system_and_sums_to_one() {
        // Verified directly against the defining system, including on
        // spaces with incomparable cosets.
        let a3 = group("A3");
        assert_mobius_system(&variety(&a3, &[1, 3]));
        let b2 = group("B2");
        assert_mobius_system(&variety(&b2, &[2]));
        assert_mobius_system(&variety(&b2, &[]));
    }

    #[test]
    fn mobius_expansion_multiplies_to_the_classical_pairing() {
        // Pairing the expansion of dual(v) against O^u under the
        // classical rule chi(O^z . O^u) = [u <= z] ... recovers the
        // incidence [u <= dual(v)], i.e. the expansion really is the
        // dual class.
        let g = group("A2");
        let x = variety(&g, &[]);
        for v in x.basis() {
            let f = mobius_coefficients(&x, v).unwrap();
            let mut class = KClass::zero(SchubertBasis::Opposite);
            for (z, c) in &f {
                class.add_term(z.clone(), *c);
            }
            assert_eq!(euler_characteristic(&class), 1);
        }
    }

    #[test]
    fn bundled_tables_pass_every_check() {
        for text in [P1_TABLE, P2_TABLE] {
            let (g, p) = loaded(text);
            let x = FlagVariety::new(&g, p).unwrap();
            let table = QkTable::parse(text, &x).unwrap();
            let report = run_checks(&table, &x, &CheckKind::ALL).unwrap();
            assert!(
                report.passed(),
                "failures: {:?}",
                report
                    .records()
                    .iter()
                    .filter(|r| !r.pass)
                    .collect::<Vec<_>>()
            );
            assert_eq!(report.failed(), 0);
            // Every check produced records.
            for kind in CheckKind::ALL {
                assert!(report.records().iter().any(|r| r.check == kind));
            }
        }
    }

    #[test]
    fn selected_checks_run_alone() {
        let (g, p) = loaded(P1_TABLE);
        let x = FlagVariety::new(&g, p).unwrap();
        let table = QkTable::parse(P1_TABLE, &x).unwrap();
        let report = run_checks(&table, &x, &[CheckKind::Euler]).unwrap();
        assert!(report.total() > 0);
        assert!(report.records().iter().all(|r| r.check == CheckKind::Euler));
        let report = run_checks(&table, &x, &[CheckKind::SumcoefTotal]).unwrap();
        assert!(report
            .records()
            .iter()
            .all(|r| r.check == CheckKind::SumcoefTotal));
    }

    fn p1_with_row(replacement: &str) -> String {
        let mut out = String::new();
        for line in P1_TABLE.lines() {
            let meaningful = line.split('#').next().unwrap_or("").trim();
            if meaningful.starts_with("1 | 1") {
                out.push_str(replacement);
            } else {
                out.push_str(line);
            }
            out.push('\n');
        }
        out
    }

    #[test]
    fn corrupted_coefficient_fails_ringhom_sumcoef_and_euler() {
        let text = p1_with_row("1 | 1 | e | 1 | 2");
        let (g, p) = loaded(&text);
        let x = FlagVariety::new(&g, p).unwrap();
        let table = QkTable::parse(&text, &x).unwrap();
        let report = run_checks(&table, &x, &CheckKind::ALL).unwrap();
        assert!(!report.passed());
        for kind in CheckKind::ALL {
            assert!(
                report.records().iter().any(|r| r.check == kind && !r.pass),
                "{kind} should fail"
            );
        }
    }

    #[test]
    fn corrupted_degree_fails_exactly_the_degree_sensitive_checks() {
        let text = p1_with_row("1 | 1 | e | 0 | 1");
        let (g, p) = loaded(&text);
        let x = FlagVariety::new(&g, p).unwrap();
        let table = QkTable::parse(&text, &x).unwrap();
        let report = run_checks(&table, &x, &CheckKind::ALL).unwrap();
        assert!(!report.passed());
        let failed_kinds: Vec<CheckKind> = report
            .records()
            .iter()
            .filter(|r| !r.pass)
            .map(|r| r.check)
            .collect();
        assert!(failed_kinds.contains(&CheckKind::Euler));
        assert!(failed_kinds.contains(&CheckKind::SumcoefPerDegree));
        // The degree shuffle keeps the coefficient total intact.
        assert!(!failed_kinds.contains(&CheckKind::SumcoefTotal));
        assert!(!failed_kinds.contains(&CheckKind::RingHom));
    }

    #[test]
    fn spurious_term_and_dropped_term_both_fail() {
        let spurious = p1_with_row("1 | 1 | e | 1 | 1\n1 | 1 | 1 | 0 | 1");
        let (g, p) = loaded(&spurious);
        let x = FlagVariety::new(&g, p).unwrap();
        let table = QkTable::parse(&spurious, &x).unwrap();
        assert!(!run_checks(&table, &x, &CheckKind::ALL).unwrap().passed());

        // A row declared with an explicit zero coefficient is a dropped
        // term: the product is empty, so every check fails on it.
        let dropped = p1_with_row("1 | 1 | e | 1 | 0");
        let (g, p) = loaded(&dropped);
        let x = FlagVariety::new(&g, p).unwrap();
        let table = QkTable::parse(&dropped, &x).unwrap();
        let report = run_checks(&table, &x, &CheckKind::ALL).unwrap();
        for kind in CheckKind::ALL {
            assert!(report.records().iter().any(|r| r.check == kind && !r.pass));
        }
    }

    #[test]
    fn euler_check_uses_the_orientation_of_the_row() {
        // dist is not symmetric, so the euler expectation differs between
        // the two orientations of an off-diagonal row; both must hold.
        let (g, p) = loaded(P2_TABLE);
        let x = FlagVariety::new(&g, p).unwrap();
        let table = QkTable::parse(P2_TABLE, &x).unwrap();
        let report = check_euler_dist(&table, &x).unwrap();
        // 3 diagonal rows + 3 off-diagonal rows checked both ways.
        assert_eq!(report.total(), 9);
        assert!(report.passed());
        let distinct: std::collections::HashSet<(String, String)> = report
            .records()
            .iter()
            .map(|r| (r.u.clone(), r.v.clone()))
            .collect();
        assert_eq!(distinct.len(), 9);
    }

    #[test]
    fn triple_products_specialize_to_euler_characteristic_one() {
        // Associativity composed with the specialization at q = 1: for
        // any three basis classes, ((O^u * O^v) * O^w) must specialize
        // to total coefficient 1.
        for text in [P1_TABLE, P2_TABLE] {
            let (g, p) = loaded(text);
            let x = FlagVariety::new(&g, p).unwrap();
            let table = QkTable::parse(text, &x).unwrap();
            for u in x.basis() {
                for v in x.basis() {
                    for w in x.basis() {
                        let uv = table.product(&x, u, v).unwrap();
                        let wc = KClass::basis_element(SchubertBasis::Opposite, w.clone());
                        let mut total = 0i64;
                        for class in uv.values() {
                            for (_, triple) in table.product_classes(&x, class, &wc).unwrap() {
                                total += euler_characteristic(&triple);
                            }
                        }
                        assert_eq!(total, 1);
                    }
                }
            }
        }
    }
}
