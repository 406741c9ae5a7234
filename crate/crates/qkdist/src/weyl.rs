//! Weyl group arithmetic.
//!
//! An element is stored as the tuple of images of the simple roots (its
//! matrix in root coordinates), so composition is exact integer linear
//! algebra and equality is structural — no normal forms or reduced-word
//! comparisons are ever needed. Reduced words are recovered on demand by
//! stripping descents, which also yields the deterministic total order
//! (length, then lexicographic canonical word) used for all listings.

use std::collections::{HashMap, HashSet};
use std::sync::{Mutex, OnceLock};

use crate::cartan::CartanType;
use crate::error::{Error, Result};
use crate::roots::{Parabolic, Root, RootSystem};

/// A Weyl group element, represented by the images of the simple roots.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct WeylElement {
    cartan_type: CartanType,
    images: Vec<Root>,
}

impl WeylElement {
    pub fn cartan_type(&self) -> CartanType {
        self.cartan_type
    }

    /// The image `w(alpha_i)` of a simple root.
    pub fn image_of_simple(&self, i: usize) -> &Root {
        &self.images[i]
    }

    /// Apply the element to any vector in root coordinates (linear
    /// extension of the simple-root images).
    pub fn apply(&self, r: &Root) -> Root {
        let n = self.images.len();
        assert_eq!(r.coeffs().len(), n, "rank mismatch applying Weyl element");
        let mut out = vec![0i64; n];
        for (j, &c) in r.coeffs().iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (k, &v) in self.images[j].coeffs().iter().enumerate() {
                out[k] += c * v;
            }
        }
        Root(out)
    }

    fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, r)| {
            r.coeffs()
                .iter()
                .enumerate()
                .all(|(k, &c)| c == i64::from(k == i))
        })
    }
}

/// A root image is a root, hence sign-definite: negative iff any
/// coefficient is negative.
fn root_is_negative(r: &Root) -> bool {
    r.coeffs().iter().any(|&c| c < 0)
}

struct ElementsIndex {
    list: Vec<WeylElement>,
    position: HashMap<WeylElement, usize>,
}

/// The Weyl group of a root system, with cached enumeration and a memoized
/// Bruhat-order oracle. All caches behave as pure caches: queries are
/// deterministic and safe to issue from concurrent threads.
pub struct WeylGroup {
    roots: RootSystem,
    identity: WeylElement,
    simples: Vec<WeylElement>,
    elements_cache: OnceLock<ElementsIndex>,
    longest_cache: OnceLock<WeylElement>,
    bruhat_memo: Mutex<HashMap<(WeylElement, WeylElement), bool>>,
}

impl WeylGroup {
    pub fn new(roots: RootSystem) -> WeylGroup {
        let t = roots.cartan_type();
        let n = t.rank();
        let identity = WeylElement {
            cartan_type: t,
            images: (0..n).map(|i| roots.simple_root(i)).collect(),
        };
        let simples = (0..n)
            .map(|i| WeylElement {
                cartan_type: t,
                images: (0..n)
                    .map(|j| roots.reflect_root(i, &roots.simple_root(j)))
                    .collect(),
            })
            .collect();
        WeylGroup {
            roots,
            identity,
            simples,
            elements_cache: OnceLock::new(),
            longest_cache: OnceLock::new(),
            bruhat_memo: Mutex::new(HashMap::new()),
        }
    }

    /// Convenience constructor from a type label such as `"A3"`.
    pub fn from_label(label: &str) -> Result<WeylGroup> {
        Ok(WeylGroup::new(RootSystem::new(CartanType::parse(label)?)))
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.roots
    }

    pub fn cartan_type(&self) -> CartanType {
        self.roots.cartan_type()
    }

    pub fn rank(&self) -> usize {
        self.roots.rank()
    }

    pub fn identity(&self) -> &WeylElement {
        &self.identity
    }

    pub fn simple_reflection(&self, i: usize) -> &WeylElement {
        &self.simples[i]
    }

    pub(crate) fn check_member(&self, w: &WeylElement) -> Result<()> {
        if w.cartan_type != self.cartan_type() {
            return Err(Error::MixedRootSystems {
                left: w.cartan_type.to_string(),
                right: self.cartan_type().to_string(),
            });
        }
        Ok(())
    }

    /// Unchecked product; callers guarantee both elements belong to this
    /// group (everything produced by this group does).
    pub(crate) fn mul(&self, u: &WeylElement, v: &WeylElement) -> WeylElement {
        WeylElement {
            cartan_type: u.cartan_type,
            images: v.images.iter().map(|r| u.apply(r)).collect(),
        }
    }

    fn mul_simple_right(&self, w: &WeylElement, i: usize) -> WeylElement {
        self.mul(w, &self.simples[i])
    }

    pub fn compose(&self, u: &WeylElement, v: &WeylElement) -> Result<WeylElement> {
        self.check_member(u)?;
        self.check_member(v)?;
        Ok(self.mul(u, v))
    }

    pub fn inverse(&self, w: &WeylElement) -> Result<WeylElement> {
        self.check_member(w)?;
        let mut word = self.word_of(w);
        word.reverse();
        Ok(self.element_from_indices(&word))
    }

    /// Coxeter length: the number of positive roots sent negative.
    pub fn length(&self, w: &WeylElement) -> Result<usize> {
        self.check_member(w)?;
        Ok(self.len(w))
    }

    fn len(&self, w: &WeylElement) -> usize {
        self.roots
            .positive_roots()
            .iter()
            .filter(|r| root_is_negative(&w.apply(r)))
            .count()
    }

    /// The reflection attached to any root.
    pub fn reflection(&self, alpha: &Root) -> Result<WeylElement> {
        if !self.roots.is_root(alpha) {
            return Err(Error::NotARoot(alpha.to_string()));
        }
        let coroot = self.roots.coroot(alpha)?;
        let n = self.rank();
        let images = (0..n)
            .map(|j| {
                let simple = self.roots.simple_root(j);
                let p = self
                    .roots
                    .pairing(&simple, &coroot)
                    .expect("dimensions agree by construction");
                let mut out = simple.coeffs().to_vec();
                for (k, &a) in alpha.coeffs().iter().enumerate() {
                    out[k] -= p * a;
                }
                Root(out)
            })
            .collect();
        Ok(WeylElement {
            cartan_type: self.cartan_type(),
            images,
        })
    }

    /// Canonical reduced word (0-based generator indices): repeatedly strip
    /// the smallest-index right descent.
    pub fn canonical_word(&self, w: &WeylElement) -> Result<Vec<usize>> {
        self.check_member(w)?;
        Ok(self.word_of(w))
    }

    fn word_of(&self, w: &WeylElement) -> Vec<usize> {
        let mut cur = w.clone();
        let mut stripped = Vec::new();
        loop {
            let descent = (0..self.rank()).find(|&i| root_is_negative(&cur.images[i]));
            match descent {
                Some(i) => {
                    stripped.push(i);
                    cur = self.mul_simple_right(&cur, i);
                }
                None => break,
            }
        }
        debug_assert!(cur.is_identity());
        stripped.reverse();
        stripped
    }

    /// Build an element from 0-based generator indices (any word, not
    /// necessarily reduced).
    pub fn element_from_word(&self, word: &[usize]) -> Result<WeylElement> {
        if let Some(&bad) = word.iter().find(|&&i| i >= self.rank()) {
            return Err(Error::IndexOutOfRange {
                index: bad + 1,
                rank: self.rank(),
            });
        }
        Ok(self.element_from_indices(word))
    }

    fn element_from_indices(&self, word: &[usize]) -> WeylElement {
        word.iter().fold(self.identity.clone(), |acc, &i| {
            self.mul_simple_right(&acc, i)
        })
    }

    /// Parse the external word syntax: `e` for the identity, otherwise a
    /// comma-separated list of 1-based generator indices such as `1,2,1`.
    pub fn parse_word(&self, text: &str) -> Result<WeylElement> {
        let text = text.trim();
        if text == "e" {
            return Ok(self.identity.clone());
        }
        let mut word = Vec::new();
        for part in text.split(',') {
            let part = part.trim();
            let idx: usize = part.parse().map_err(|_| Error::InvalidWord {
                word: text.to_string(),
                reason: format!("{part:?} is not a positive integer"),
            })?;
            if idx == 0 || idx > self.rank() {
                return Err(Error::IndexOutOfRange {
                    index: idx,
                    rank: self.rank(),
                });
            }
            word.push(idx - 1);
        }
        Ok(self.element_from_indices(&word))
    }

    /// Render an element in the external word syntax (canonical reduced
    /// word, 1-based, `e` for the identity).
    pub fn format_word(&self, w: &WeylElement) -> String {
        let word = self.word_of(w);
        if word.is_empty() {
            "e".to_string()
        } else {
            word.iter()
                .map(|i| (i + 1).to_string())
                .collect::<Vec<_>>()
                .join(",")
        }
    }

    /// Sort key for the deterministic total order: length, then canonical
    /// word lexicographically.
    pub fn sort_key(&self, w: &WeylElement) -> (usize, Vec<usize>) {
        let word = self.word_of(w);
        (word.len(), word)
    }

    /// The longest element of the standard parabolic subgroup generated by
    /// the given simple reflections (the full group for `Parabolic::full`).
    pub fn longest_element(&self, parabolic: &Parabolic) -> WeylElement {
        assert_eq!(parabolic.rank(), self.rank(), "parabolic rank mismatch");
        if parabolic.is_full() {
            return self
                .longest_cache
                .get_or_init(|| self.ascend_within(&Parabolic::full(self.rank())))
                .clone();
        }
        self.ascend_within(parabolic)
    }

    /// Greedy ascent inside a parabolic subgroup: multiply by any ascent
    /// until every listed generator is a descent, which characterizes the
    /// longest element of the subgroup.
    fn ascend_within(&self, parabolic: &Parabolic) -> WeylElement {
        let mut w = self.identity.clone();
        loop {
            let ascent = parabolic
                .indices()
                .iter()
                .copied()
                .find(|&i| !root_is_negative(&w.images[i]));
            match ascent {
                Some(i) => w = self.mul_simple_right(&w, i),
                None => return w,
            }
        }
    }

    /// Minimal representative of the coset `w W_P`: strip right descents
    /// lying in the parabolic.
    pub fn min_rep(&self, w: &WeylElement, parabolic: &Parabolic) -> WeylElement {
        assert_eq!(parabolic.rank(), self.rank(), "parabolic rank mismatch");
        let mut cur = w.clone();
        loop {
            let descent = parabolic
                .indices()
                .iter()
                .copied()
                .find(|&i| root_is_negative(&cur.images[i]));
            match descent {
                Some(i) => cur = self.mul_simple_right(&cur, i),
                None => return cur,
            }
        }
    }

    pub fn is_min_rep(&self, w: &WeylElement, parabolic: &Parabolic) -> bool {
        parabolic
            .indices()
            .iter()
            .all(|&i| !root_is_negative(&w.images[i]))
    }

    /// Bruhat order on the full group, decided by the lifting property:
    /// for a left descent `s` of `v`, `u <= v` iff `min(u, su) <= sv`.
    /// Memoized over pairs; the memo is a pure cache.
    pub fn bruhat_leq(&self, u: &WeylElement, v: &WeylElement) -> bool {
        assert_eq!(
            u.cartan_type,
            self.cartan_type(),
            "element from a different root system"
        );
        assert_eq!(
            v.cartan_type,
            self.cartan_type(),
            "element from a different root system"
        );
        self.bruhat_rec(u, v)
    }

    fn bruhat_rec(&self, u: &WeylElement, v: &WeylElement) -> bool {
        if u == v {
            return true;
        }
        let lu = self.len(u);
        let lv = self.len(v);
        if lu >= lv {
            return false;
        }
        if lu == 0 {
            return true;
        }
        let key = (u.clone(), v.clone());
        if let Some(&hit) = self.bruhat_memo.lock().unwrap().get(&key) {
            return hit;
        }
        // Find the smallest left descent of v: l(s_i v) < l(v).
        let (i, sv) = (0..self.rank())
            .filter_map(|i| {
                let sv = self.mul(&self.simples[i], v);
                (self.len(&sv) < lv).then_some((i, sv))
            })
            .next()
            .expect("every non-identity element has a left descent");
        let su = self.mul(&self.simples[i], u);
        let u_next = if self.len(&su) < lu { su } else { u.clone() };
        let result = self.bruhat_rec(&u_next, &sv);
        self.bruhat_memo.lock().unwrap().insert(key, result);
        result
    }

    /// Every group element, sorted by (length, canonical word). Built once
    /// and cached; the construction-time cap keeps this below 50,000.
    pub fn elements(&self) -> &[WeylElement] {
        &self.elements_index().list
    }

    /// Position of an element in the `elements()` ordering.
    pub fn element_position(&self, w: &WeylElement) -> Option<usize> {
        self.elements_index().position.get(w).copied()
    }

    fn elements_index(&self) -> &ElementsIndex {
        self.elements_cache.get_or_init(|| {
            let mut seen: HashSet<WeylElement> = HashSet::new();
            seen.insert(self.identity.clone());
            let mut frontier = vec![self.identity.clone()];
            while !frontier.is_empty() {
                let mut next = Vec::new();
                for w in &frontier {
                    for i in 0..self.rank() {
                        let t = self.mul_simple_right(w, i);
                        if seen.insert(t.clone()) {
                            next.push(t);
                        }
                    }
                }
                frontier = next;
            }
            let mut keyed: Vec<((usize, Vec<usize>), WeylElement)> =
                seen.into_iter().map(|w| (self.sort_key(&w), w)).collect();
            keyed.sort();
            let list: Vec<WeylElement> = keyed.into_iter().map(|(_, w)| w).collect();
            let position = list
                .iter()
                .enumerate()
                .map(|(k, w)| (w.clone(), k))
                .collect();
            ElementsIndex { list, position }
        })
    }

    /// The minimal coset representatives for `W / W_P`, sorted by
    /// (length, canonical word).
    pub fn minimal_representatives(&self, parabolic: &Parabolic) -> Vec<WeylElement> {
        self.elements()
            .iter()
            .filter(|w| self.is_min_rep(w, parabolic))
            .cloned()
            .collect()
    }

    /// The duality involution on minimal representatives: the minimal
    /// representative of `w_0 v W_P`. It reverses the Bruhat order on the
    /// quotient and exchanges the two Schubert bases.
    pub fn dual(&self, v: &WeylElement, parabolic: &Parabolic) -> Result<WeylElement> {
        self.check_member(v)?;
        if !self.is_min_rep(v, parabolic) {
            return Err(Error::NotMinimalRepresentative {
                word: self.format_word(v),
            });
        }
        let w0 = self.longest_element(&Parabolic::full(self.rank()));
        Ok(self.min_rep(&self.mul(&w0, v), parabolic))
    }
}
