//! Multiplication-table files for quantum K-rings.
//!
//! A table lists the structure constants of products of opposite Schubert
//! classes, `O^u * O^v = sum N q^d O^w`, in a plain text format:
//!
//! ```text
//! # comments run to the end of the line
//! type A2
//! parabolic [2]
//! u | v | w | d1,d2,... | N
//! ```
//!
//! * `type` is the Cartan label of the group.
//! * `parabolic` lists the 1-based simple-root indices of the parabolic
//!   (`[]` for the Borel case, all indices for a point).
//! * Each remaining line is one term of one product row. `u`, `v`, `w`
//!   are minimal coset representatives written as comma-separated 1-based
//!   reduced words (`e` for the identity). The degree field lists one
//!   non-negative component per quantum parameter, in increasing order of
//!   the omitted simple root, and is empty when there are none. `N` is
//!   the integer structure constant.
//!
//! Loading validates everything that does not require the main theorem:
//! labels must name basis cosets, degrees must be effective with the
//! right arity, no term may repeat, rows given in both orders must agree,
//! and the identity rows `O^e * O^v = O^v` must be present and exact for
//! every basis coset. Whether the remaining rows are *correct* is what
//! the checks decide.

use std::collections::{BTreeMap, HashMap, HashSet};

use crate::cartan::CartanType;
use crate::distance::{Degree, FlagVariety};
use crate::error::{Error, Result};
use crate::qk::{KClass, SchubertBasis};
use crate::roots::Parabolic;
use crate::weyl::WeylElement;

/// One term `N q^d O^w` of a product row.
#[derive(Clone, Debug)]
pub struct TableTerm {
    pub w: WeylElement,
    pub degree: Degree,
    pub coefficient: i64,
}

/// A parsed and load-validated multiplication table, bound to the basis
/// order of the flag variety it was parsed against.
pub struct QkTable {
    cartan_type: CartanType,
    parabolic: Parabolic,
    rows: HashMap<(usize, usize), Vec<TableTerm>>,
}

fn meaningful_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(k, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((k + 1, line))
    })
}

fn parse_error(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::TableParse {
        line,
        col,
        msg: msg.into(),
    }
}

/// Read just the context declaration of a table: its Cartan type and
/// parabolic. Callers use this to build the matching Weyl group and flag
/// variety before parsing the body.
pub fn read_header(text: &str) -> Result<(CartanType, Parabolic)> {
    let mut lines = meaningful_lines(text);
    let (line, first) = lines
        .next()
        .ok_or_else(|| parse_error(1, 1, "empty table: expected `type <label>`"))?;
    let label = first
        .strip_prefix("type")
        .map(str::trim)
        .filter(|rest| !rest.is_empty())
        .ok_or_else(|| parse_error(line, 1, "expected `type <label>` as the first declaration"))?;
    let cartan_type = CartanType::parse(label).map_err(|e| parse_error(line, 1, e.to_string()))?;

    let (line, second) = lines.next().ok_or_else(|| {
        parse_error(
            line,
            1,
            "expected `parabolic [..]` after the type declaration",
        )
    })?;
    let inner = second
        .strip_prefix("parabolic")
        .map(str::trim)
        .and_then(|rest| rest.strip_prefix('['))
        .and_then(|rest| rest.strip_suffix(']'))
        .ok_or_else(|| {
            parse_error(
                line,
                1,
                "expected `parabolic [i,j,...]` as the second declaration",
            )
        })?;
    let mut indices = Vec::new();
    if !inner.trim().is_empty() {
        for part in inner.split(',') {
            let idx: usize = part.trim().parse().map_err(|_| {
                parse_error(line, 1, format!("{:?} is not a 1-based index", part.trim()))
            })?;
            if idx == 0 {
                return Err(parse_error(line, 1, "parabolic indices are 1-based"));
            }
            indices.push(idx - 1);
        }
    }
    let parabolic = Parabolic::new(indices, cartan_type.rank())
        .map_err(|e| parse_error(line, 1, e.to_string()))?;
    Ok((cartan_type, parabolic))
}

impl QkTable {
    /// Parse a table body against the flag variety its header declares.
    /// The variety must match the header — callers typically build it via
    /// [`read_header`] first.
    pub fn parse(text: &str, variety: &FlagVariety<'_>) -> Result<QkTable> {
        let (cartan_type, parabolic) = read_header(text)?;
        if cartan_type != variety.group().cartan_type() || &parabolic != variety.parabolic() {
            return Err(Error::ContextMismatch {
                declared: format!("{cartan_type} with parabolic {parabolic}"),
                supplied: format!(
                    "{} with parabolic {}",
                    variety.group().cartan_type(),
                    variety.parabolic()
                ),
            });
        }

        let group = variety.group();
        let resolve = |line: usize, label: &str| -> Result<usize> {
            group
                .parse_word(label)
                .ok()
                .and_then(|w| variety.basis_position(&w))
                .ok_or_else(|| Error::UnknownLabel {
                    line,
                    label: label.to_string(),
                })
        };

        let mut oriented: HashMap<(usize, usize), Vec<TableTerm>> = HashMap::new();
        let mut seen_terms: HashSet<(usize, usize, usize, Degree)> = HashSet::new();
        for (line, content) in meaningful_lines(text).skip(2) {
            let fields: Vec<&str> = content.split('|').map(str::trim).collect();
            if fields.len() != 5 {
                return Err(parse_error(
                    line,
                    fields.len().min(5),
                    format!("expected 5 `|`-separated fields, found {}", fields.len()),
                ));
            }
            let u = resolve(line, fields[0])?;
            let v = resolve(line, fields[1])?;
            let w = resolve(line, fields[2])?;

            let mut components: Vec<u64> = Vec::new();
            if !fields[3].is_empty() {
                for part in fields[3].split(',') {
                    let c: i64 = part.trim().parse().map_err(|_| {
                        parse_error(
                            line,
                            4,
                            format!("{:?} is not an integer degree component", part.trim()),
                        )
                    })?;
                    if c < 0 {
                        return Err(Error::IneffectiveDegree {
                            line,
                            degree: fields[3].to_string(),
                        });
                    }
                    components.push(c as u64);
                }
            }
            let degree = variety
                .degree_from_components(&components)
                .map_err(|e| parse_error(line, 4, e.to_string()))?;

            let coefficient: i64 = fields[4].parse().map_err(|_| {
                parse_error(
                    line,
                    5,
                    format!("{:?} is not an integer coefficient", fields[4]),
                )
            })?;

            if !seen_terms.insert((u, v, w, degree.clone())) {
                return Err(Error::DuplicateTerm {
                    line,
                    u: fields[0].to_string(),
                    v: fields[1].to_string(),
                    w: fields[2].to_string(),
                    degree: degree.to_string(),
                });
            }
            oriented.entry((u, v)).or_default().push(TableTerm {
                w: variety.basis()[w].clone(),
                degree,
                coefficient,
            });
        }

        // Rows declared in both orders must list the same terms: the
        // product is commutative.
        let canonical = |terms: &[TableTerm]| -> Vec<(usize, Degree, i64)> {
            let mut c: Vec<(usize, Degree, i64)> = terms
                .iter()
                .map(|t| {
                    (
                        variety.basis_position(&t.w).expect("terms index the basis"),
                        t.degree.clone(),
                        t.coefficient,
                    )
                })
                .collect();
            c.sort();
            c
        };
        let word = |k: usize| group.format_word(&variety.basis()[k]);
        let mut rows: HashMap<(usize, usize), Vec<TableTerm>> = HashMap::new();
        for ((u, v), terms) in &oriented {
            if u > v {
                if let Some(other) = oriented.get(&(*v, *u)) {
                    if canonical(terms) != canonical(other) {
                        return Err(Error::SymmetryViolation {
                            u: word(*v),
                            v: word(*u),
                        });
                    }
                    continue; // the (v, u) orientation carries the terms
                }
            }
            let key = (*u.min(v), *u.max(v));
            rows.insert(key, terms.clone());
        }

        // The identity coset must act as the unit on every basis class.
        let identity_pos = variety
            .basis_position(group.identity())
            .expect("the identity is always a minimal representative");
        let zero = variety.zero_degree();
        for (k, basis_w) in variety.basis().iter().enumerate() {
            let key = (identity_pos.min(k), identity_pos.max(k));
            let ok = rows.get(&key).is_some_and(|terms| {
                terms.len() == 1
                    && &terms[0].w == basis_w
                    && terms[0].degree == zero
                    && terms[0].coefficient == 1
            });
            if !ok {
                return Err(Error::UnitViolation { v: word(k) });
            }
        }

        Ok(QkTable {
            cartan_type,
            parabolic,
            rows,
        })
    }

    pub fn cartan_type(&self) -> CartanType {
        self.cartan_type
    }

    pub fn parabolic(&self) -> &Parabolic {
        &self.parabolic
    }

    /// Terms of the row for a pair of basis positions, under symmetry.
    pub fn terms(&self, a: usize, b: usize) -> Option<&[TableTerm]> {
        self.rows.get(&(a.min(b), a.max(b))).map(Vec::as_slice)
    }

    /// Number of distinct product rows the table declares.
    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    /// The declared rows as sorted `(min, max)` basis-position pairs.
    pub fn row_pairs(&self) -> Vec<(usize, usize)> {
        let mut pairs: Vec<(usize, usize)> = self.rows.keys().copied().collect();
        pairs.sort_unstable();
        pairs
    }

    /// The declared product `O^u * O^v` of two basis cosets, grouped by
    /// degree. An undeclared pair is an error — the table claims no value
    /// for it.
    pub fn product(
        &self,
        variety: &FlagVariety<'_>,
        u: &WeylElement,
        v: &WeylElement,
    ) -> Result<BTreeMap<Degree, KClass>> {
        let group = variety.group();
        variety.require_basis(u)?;
        variety.require_basis(v)?;
        let missing = || Error::MissingRow {
            u: group.format_word(u),
            v: group.format_word(v),
        };
        let a = variety.basis_position(u).ok_or_else(missing)?;
        let b = variety.basis_position(v).ok_or_else(missing)?;
        let terms = self.terms(a, b).ok_or_else(missing)?;
        let mut out: BTreeMap<Degree, KClass> = BTreeMap::new();
        for t in terms {
            out.entry(t.degree.clone())
                .or_insert_with(|| KClass::zero(SchubertBasis::Opposite))
                .add_term(t.w.clone(), t.coefficient);
        }
        Ok(out)
    }

    /// The product extended bilinearly to arbitrary classes; inputs over
    /// the Schubert-variety basis are first rewritten through the duality
    /// `O_w = O^{dual(w)}`. Every pair of labels must have a declared
    /// row.
    pub fn product_classes(
        &self,
        variety: &FlagVariety<'_>,
        a: &KClass,
        b: &KClass,
    ) -> Result<BTreeMap<Degree, KClass>> {
        let a = variety.to_opposite_basis(a)?;
        let b = variety.to_opposite_basis(b)?;
        let mut out: BTreeMap<Degree, KClass> = BTreeMap::new();
        for (u, cu) in a.iter() {
            for (v, cv) in b.iter() {
                for (degree, row) in self.product(variety, u, v)? {
                    let acc = out
                        .entry(degree)
                        .or_insert_with(|| KClass::zero(SchubertBasis::Opposite));
                    for (w, cw) in row.iter() {
                        acc.add_term(w.clone(), cu * cv * cw);
                    }
                }
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::CartanType;
    use crate::roots::RootSystem;
    use crate::weyl::WeylGroup;

    const P1_TABLE: &str = include_str!("../data/qk_p1.txt");
    const P2_TABLE: &str = include_str!("../data/qk_p2.txt");

    fn context(text: &str) -> (WeylGroup, Parabolic) {
        let (t, p) = read_header(text).unwrap();
        (WeylGroup::new(RootSystem::new(t)), p)
    }

    #[test]
    fn header_reads_type_and_parabolic() {
        let (t, p) = read_header(P2_TABLE).unwrap();
        assert_eq!(t, CartanType::parse("A2").unwrap());
        assert_eq!(p, Parabolic::new([1], 2).unwrap());

        let (t, p) = read_header(P1_TABLE).unwrap();
        assert_eq!(t, CartanType::parse("A1").unwrap());
        assert!(p.indices().is_empty());
    }

    #[test]
    fn header_errors_are_precise() {
        assert!(matches!(
            read_header(""),
            Err(Error::TableParse { line: 1, .. })
        ));
        assert!(read_header("type Z9\nparabolic []").is_err());
        assert!(read_header("type A2\nparabolic [3]").is_err());
        assert!(read_header("type A2\nparabolic [0]").is_err());
        assert!(read_header("type A2\nparabolic 1,2").is_err());
        assert!(matches!(
            read_header("type A2"),
            Err(Error::TableParse { .. })
        ));
    }

    #[test]
    fn bundled_tables_load() {
        for text in [P1_TABLE, P2_TABLE] {
            let (g, p) = context(text);
            let x = FlagVariety::new(&g, p).unwrap();
            let table = QkTable::parse(text, &x).unwrap();
            // Every pair of basis cosets is declared (up to symmetry).
            let n = x.basis().len();
            assert_eq!(table.row_count(), n * (n + 1) / 2);
        }
    }

    #[test]
    fn context_mismatch_is_rejected() {
        let g = WeylGroup::from_label("A2").unwrap();
        let x = FlagVariety::new(&g, Parabolic::empty(2)).unwrap();
        assert!(matches!(
            QkTable::parse(P1_TABLE, &x),
            Err(Error::ContextMismatch { .. })
        ));
    }

    #[test]
    fn products_group_terms_by_degree() {
        let (g, p) = context(P2_TABLE);
        let x = FlagVariety::new(&g, p).unwrap();
        let table = QkTable::parse(P2_TABLE, &x).unwrap();
        let s1 = g.parse_word("1").unwrap();
        let s21 = g.parse_word("2,1").unwrap();

        // O^{s1} * O^{s1} = O^{s2 s1}.
        let prod = table.product(&x, &s1, &s1).unwrap();
        assert_eq!(prod.len(), 1);
        let zero = x.zero_degree();
        assert_eq!(prod[&zero].coefficient(&s21), 1);

        // O^{s1} * O^{s2 s1} = q O^{e}: symmetry serves both orders.
        for (a, b) in [(&s1, &s21), (&s21, &s1)] {
            let prod = table.product(&x, a, b).unwrap();
            let one = x.degree_from_components(&[1]).unwrap();
            assert_eq!(prod.len(), 1);
            assert_eq!(prod[&one].coefficient(g.identity()), 1);
        }
    }

    #[test]
    fn product_rejects_non_basis_labels_and_reports_missing_rows() {
        let (g, p) = context(P2_TABLE);
        let x = FlagVariety::new(&g, p).unwrap();
        let table = QkTable::parse(P2_TABLE, &x).unwrap();
        // s1 s2 represents the same coset as s1, but products are looked
        // up by basis cosets only.
        assert!(matches!(
            table.product(
                &x,
                &g.parse_word("1,2").unwrap(),
                &g.parse_word("1").unwrap()
            ),
            Err(Error::NotMinimalRepresentative { .. })
        ));

        // A partial table misses non-unit rows.
        let partial = "\
type A1
parabolic []
e | e | e | 0 | 1
e | 1 | 1 | 0 | 1
";
        let (g1, p1) = context(partial);
        let x1 = FlagVariety::new(&g1, p1).unwrap();
        let t1 = QkTable::parse(partial, &x1).unwrap();
        let s1 = g1.parse_word("1").unwrap();
        assert!(matches!(
            t1.product(&x1, &s1, &s1),
            Err(Error::MissingRow { .. })
        ));
    }

    #[test]
    fn class_products_are_bilinear_with_unit_element() {
        let (g, p) = context(P2_TABLE);
        let x = FlagVariety::new(&g, p).unwrap();
        let table = QkTable::parse(P2_TABLE, &x).unwrap();
        let s1 = g.parse_word("1").unwrap();
        let top = g.parse_word("2,1").unwrap();

        // The identity class is a unit: O^e * gamma = gamma at degree 0.
        let unit = KClass::basis_element(SchubertBasis::Opposite, g.identity().clone());
        let mut gamma = KClass::zero(SchubertBasis::Opposite);
        gamma.add_term(s1.clone(), 2);
        gamma.add_term(top.clone(), -1);
        let prod = table.product_classes(&x, &unit, &gamma).unwrap();
        assert_eq!(prod.len(), 1);
        assert_eq!(prod[&x.zero_degree()], gamma);

        // Bilinearity: (2 O^u) * O^v = 2 (O^u * O^v).
        let mut doubled = KClass::zero(SchubertBasis::Opposite);
        doubled.add_term(s1.clone(), 2);
        let single = KClass::basis_element(SchubertBasis::Opposite, s1.clone());
        let twice = table.product_classes(&x, &doubled, &single).unwrap();
        let once = table.product_classes(&x, &single, &single).unwrap();
        assert_eq!(twice.len(), once.len());
        for (d, class) in &once {
            for (w, c) in class.iter() {
                assert_eq!(twice[d].coefficient(w), 2 * c);
            }
        }

        // Schubert-basis inputs are rewritten through duality:
        // O_{2,1} = O^{dual(2,1)} = O^{e}, again a unit.
        let dual_of_top = g.dual(&top, x.parabolic()).unwrap();
        assert_eq!(dual_of_top, *g.identity());
        let schubert_unit = KClass::basis_element(SchubertBasis::Schubert, top.clone());
        let prod = table.product_classes(&x, &schubert_unit, &gamma).unwrap();
        assert_eq!(prod[&x.zero_degree()], gamma);
    }

    fn parse_against_p2(text: &str) -> Result<QkTable> {
        let (g, p) = context(P2_TABLE);
        let x = FlagVariety::new(&g, p).unwrap();
        QkTable::parse(text, &x).inspect(|t| {
            assert_eq!(t.cartan_type(), g.cartan_type());
        })
    }

    #[test]
    fn body_validation_rejects_malformed_lines() {
        let base = "type A2\nparabolic [2]\n";

        // Wrong field count.
        assert!(matches!(
            parse_against_p2(&format!("{base}e | e | e | 0\n")),
            Err(Error::TableParse { line: 3, .. })
        ));
        // Unknown label: s2 is not a minimal representative here.
        assert!(matches!(
            parse_against_p2(&format!("{base}2 | e | e | 0 | 1\n")),
            Err(Error::UnknownLabel { line: 3, .. })
        ));
        // Garbage label.
        assert!(matches!(
            parse_against_p2(&format!("{base}x | e | e | 0 | 1\n")),
            Err(Error::UnknownLabel { .. })
        ));
        // Negative degree.
        assert!(matches!(
            parse_against_p2(&format!("{base}e | e | e | -1 | 1\n")),
            Err(Error::IneffectiveDegree { line: 3, .. })
        ));
        // Degree arity mismatch (two components for one parameter).
        assert!(matches!(
            parse_against_p2(&format!("{base}e | e | e | 1,1 | 1\n")),
            Err(Error::TableParse {
                line: 3,
                col: 4,
                ..
            })
        ));
        // Non-integer coefficient.
        assert!(matches!(
            parse_against_p2(&format!("{base}e | e | e | 0 | x\n")),
            Err(Error::TableParse {
                line: 3,
                col: 5,
                ..
            })
        ));
    }

    #[test]
    fn duplicate_terms_are_rejected_but_split_degrees_are_fine() {
        let dup = "\
type A1
parabolic []
e | e | e | 0 | 1
e | 1 | 1 | 0 | 1
1 | 1 | e | 1 | 1
1 | 1 | e | 1 | 1
";
        let (g, p) = context(dup);
        let x = FlagVariety::new(&g, p).unwrap();
        assert!(matches!(
            QkTable::parse(dup, &x),
            Err(Error::DuplicateTerm { line: 6, .. })
        ));

        // Same pair, different degrees: two legitimate terms.
        let split = "\
type A1
parabolic []
e | e | e | 0 | 1
e | 1 | 1 | 0 | 1
1 | 1 | e | 1 | 1
1 | 1 | e | 2 | 1
";
        let t = QkTable::parse(split, &x).unwrap();
        let s1 = g.parse_word("1").unwrap();
        assert_eq!(t.product(&x, &s1, &s1).unwrap().len(), 2);
    }

    #[test]
    fn symmetry_violations_are_rejected_and_agreement_accepted() {
        let bad = "\
type A2
parabolic [2]
e | e | e | 0 | 1
e | 1 | 1 | 0 | 1
e | 2,1 | 2,1 | 0 | 1
1 | 2,1 | e | 1 | 1
2,1 | 1 | e | 1 | 2
";
        let (g, p) = context(bad);
        let x = FlagVariety::new(&g, p).unwrap();
        assert!(matches!(
            QkTable::parse(bad, &x),
            Err(Error::SymmetryViolation { .. })
        ));

        let good = bad.replace("2,1 | 1 | e | 1 | 2", "2,1 | 1 | e | 1 | 1");
        // Still missing unit structure? No: unit rows are the three (e, v)
        // rows, all present. Both orientations of (s1, s2 s1) agree now.
        let t = QkTable::parse(&good, &x).unwrap();
        assert_eq!(t.row_count(), 4);
    }

    #[test]
    fn unit_rows_are_mandatory_and_exact() {
        // Missing the (e, s1) row entirely.
        let missing = "\
type A1
parabolic []
e | e | e | 0 | 1
1 | 1 | e | 1 | 1
";
        let (g, p) = context(missing);
        let x = FlagVariety::new(&g, p).unwrap();
        assert!(matches!(
            QkTable::parse(missing, &x),
            Err(Error::UnitViolation { .. })
        ));

        // Present but wrong: O^e * O^{s1} must be exactly O^{s1}.
        let wrong = "\
type A1
parabolic []
e | e | e | 0 | 1
e | 1 | 1 | 1 | 1
1 | 1 | e | 1 | 1
";
        assert!(matches!(
            QkTable::parse(wrong, &x),
            Err(Error::UnitViolation { .. })
        ));
    }
}
