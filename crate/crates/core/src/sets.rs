//! Finite index sets, the involution `I`, the transform `J_h`, the order
//! formulas and the Krawtchouk canonical split.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A strictly increasing finite set of nonnegative integers.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct IndexSet {
    elems: Vec<i64>,
}

impl IndexSet {
    /// Accepts any order; rejects duplicates and negative entries.
    pub fn new(mut elems: Vec<i64>) -> Result<Self> {
        elems.sort_unstable();
        if elems.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Domain(format!("repeated element in {elems:?}")));
        }
        if elems.first().is_some_and(|&e| e < 0) {
            return Err(Error::Domain(format!("negative element in {elems:?}")));
        }
        Ok(IndexSet { elems })
    }

    pub fn empty() -> Self {
        IndexSet::default()
    }

    /// Parses a comma separated list; the empty string is the empty set.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('{').trim_end_matches('}');
        if s.trim().is_empty() {
            return Ok(IndexSet::empty());
        }
        let elems = s
            .split(',')
            .map(|t| t.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad set element {t:?}"))))
            .collect::<Result<Vec<_>>>()?;
        IndexSet::new(elems)
    }

    pub fn elements(&self) -> &[i64] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    /// `max F`, with `max {} = -1`.
    pub fn max_elem(&self) -> i64 {
        self.elems.last().copied().unwrap_or(-1)
    }

    pub fn min_elem(&self) -> Option<i64> {
        self.elems.first().copied()
    }

    pub fn sum(&self) -> i64 {
        self.elems.iter().sum()
    }

    /// Every element is at least one.
    pub fn is_positive(&self) -> bool {
        self.elems.first().map_or(true, |&e| e >= 1)
    }

    pub fn contains(&self, x: i64) -> bool {
        self.elems.binary_search(&x).is_ok()
    }

    fn require_positive_nonempty(&self, what: &str) -> Result<()> {
        if self.is_empty() {
            return Err(Error::Domain(format!("{what} needs a nonempty set")));
        }
        if !self.is_positive() {
            return Err(Error::Domain(format!("{what} needs positive elements, got {self}")));
        }
        Ok(())
    }

    /// `{f_M - f + 1 : f in F}`; empty stays empty.
    pub fn reflect(&self) -> IndexSet {
        let m = self.max_elem();
        IndexSet::new(self.elems.iter().map(|f| m - f + 1).collect()).expect("reflection of a set is a set")
    }
}

impl TryFrom<Vec<i64>> for IndexSet {
    type Error = Error;
    fn try_from(v: Vec<i64>) -> Result<Self> {
        IndexSet::new(v)
    }
}

impl From<IndexSet> for Vec<i64> {
    fn from(s: IndexSet) -> Vec<i64> {
        s.elems
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.elems.iter().map(i64::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

fn choose2(n: usize) -> i64 {
    let n = n as i64;
    n * (n - 1) / 2
}

/// `I(F) = {1, ..., f_k} \ {f_k - f : f in F}`.
pub fn involution_i(f: &IndexSet) -> Result<IndexSet> {
    f.require_positive_nonempty("I")?;
    let fk = f.max_elem();
    let out = (1..=fk).filter(|g| !f.contains(fk - g)).collect();
    IndexSet::new(out)
}

/// `J_h(F) = {0, ..., f_k + h - 1} \ {f - 1 : f in F}`.
pub fn transform_j(f: &IndexSet, h: i64) -> Result<IndexSet> {
    if h < 1 {
        return Err(Error::Domain(format!("J_h needs h >= 1, got {h}")));
    }
    f.require_positive_nonempty("J_h")?;
    let top = f.max_elem() + h - 1;
    let out = (0..=top).filter(|g| !f.contains(g + 1)).collect();
    IndexSet::new(out)
}

/// `r_F = sum F - n_F (n_F - 1)/2 + 1`; the empty set gives 1.
pub fn r_of(f: &IndexSet) -> i64 {
    f.sum() - choose2(f.len()) + 1
}

/// `r = sum G - m(m-1)/2 + 1` for a single-block index set.
pub fn r_from_single_block(g: &IndexSet) -> i64 {
    g.sum() - choose2(g.len()) + 1
}

/// `r = sum H + sum K - C(m1, 2) - C(m2, 2) + 1`: one plus the degree of the
/// two-block Casorati determinant.
pub fn r_from_blocks(h_set: &IndexSet, k_set: &IndexSet) -> i64 {
    h_set.sum() + k_set.sum() - choose2(h_set.len()) - choose2(k_set.len()) + 1
}

/// `r` written directly in terms of the theorem sets `(F1, F2, h)` for
/// Meixner, where `F1` feeds `J_h` and `F2` feeds `I`.
pub fn r_meixner_theorem(f1: &IndexSet, f2: &IndexSet, h: i64) -> i64 {
    f2.sum() - f1.sum() - choose2(f1.len()) - choose2(f2.len()) + f1.len() as i64 * (f1.max_elem() + h) + 1
}

/// Krawtchouk counterpart of [`r_meixner_theorem`]: `F1` feeds `I`, `F2`
/// feeds `J_h`.
pub fn r_krawtchouk_theorem(f1: &IndexSet, f2: &IndexSet, h: i64) -> i64 {
    f1.sum() - f2.sum() - choose2(f1.len()) - choose2(f2.len()) + f2.len() as i64 * (f2.max_elem() + h) + 1
}

/// Conjectured half-order of the operator for a measure with root data
/// `F` (Charlier) or `(F1, F2)` (Meixner, Krawtchouk).
pub fn order_r(f1: &IndexSet, f2: Option<&IndexSet>) -> i64 {
    match f2 {
        None => r_of(f1),
        Some(f2) => r_of(f1) + r_of(f2) - 1,
    }
}

/// A pair `(F1, F2)` producing the Krawtchouk weight
/// `prod (x - f) prod (N - 1 - f - x) rho`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitPair {
    pub f1: IndexSet,
    pub f2: IndexSet,
    pub r: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalSplit {
    pub canonical: SplitPair,
    /// Every admissible pair, canonical one included, in enumeration order.
    pub alternatives: Vec<SplitPair>,
}

const MAX_SPLIT_ROOTS: usize = 12;

/// Enumerates all ways of distributing the weight's roots between `F1`
/// (root `x0` kept as `x0`) and `F2` (root `x0` stored as `N - 1 - x0`),
/// and returns the pair with `max F1, max F2 < N/2`.
pub fn krawtchouk_canonical_split(f1: &IndexSet, f2: &IndexSet, n: i64) -> Result<CanonicalSplit> {
    if n < 1 {
        return Err(Error::Domain(format!("canonical split needs a positive integer N, got {n}")));
    }
    let mut roots: Vec<i64> = f1.elements().to_vec();
    roots.extend(f2.elements().iter().map(|f| n - 1 - f));
    roots.sort_unstable();
    let k = roots.len();
    if roots.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::Domain(format!("repeated root in {roots:?}")));
    }
    if k > MAX_SPLIT_ROOTS {
        return Err(Error::Domain(format!("canonical split limited to {MAX_SPLIT_ROOTS} roots, got {k}")));
    }
    let mut alternatives = Vec::new();
    for mask in 0u32..(1 << k) {
        let mut a = Vec::new();
        let mut b = Vec::new();
        for (i, &x0) in roots.iter().enumerate() {
            if mask & (1 << i) == 0 {
                a.push(x0);
            } else {
                b.push(n - 1 - x0);
            }
        }
        if a.iter().chain(&b).any(|&e| e < 1) {
            continue;
        }
        let (a, b) = (IndexSet::new(a)?, IndexSet::new(b)?);
        let r = order_r(&a, Some(&b));
        alternatives.push(SplitPair { f1: a, f2: b, r });
    }
    let canonical = alternatives
        .iter()
        .filter(|p| 2 * p.f1.max_elem() < n && 2 * p.f2.max_elem() < n)
        .min_by_key(|p| (p.r, p.f1.clone(), p.f2.clone()))
        .cloned()
        .ok_or_else(|| Error::Infeasible(format!("no split with max F1, max F2 < N/2 for N = {n}")))?;
    Ok(CanonicalSplit { canonical, alternatives })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[i64]) -> IndexSet {
        IndexSet::new(v.to_vec()).unwrap()
    }

    #[test]
    fn involution_examples() {
        assert_eq!(involution_i(&s(&[1, 2, 3, 4])).unwrap(), s(&[4]));
        assert_eq!(involution_i(&s(&[1, 6])).unwrap(), s(&[1, 2, 3, 4, 6]));
        assert_eq!(involution_i(&involution_i(&s(&[2, 5, 7])).unwrap()).unwrap(), s(&[2, 5, 7]));
        assert!(involution_i(&IndexSet::empty()).is_err());
    }

    #[test]
    fn j_examples() {
        assert_eq!(transform_j(&s(&[1]), 1).unwrap(), s(&[1]));
        let j = transform_j(&s(&[2, 3]), 2).unwrap();
        assert_eq!(j, s(&[0, 3, 4]));
        assert_eq!(j.max_elem(), 4);
        assert!(transform_j(&s(&[1]), 0).is_err());
    }

    #[test]
    fn order_examples() {
        assert_eq!(order_r(&s(&[3]), None), 4);
        assert_eq!(order_r(&s(&[1, 2, 3, 4]), None), 5);
        assert_eq!(order_r(&s(&[1]), Some(&s(&[1]))), 3);
        assert_eq!(order_r(&s(&[1, 4]), None), 5);
    }

    #[test]
    fn n100_split() {
        let split = krawtchouk_canonical_split(&s(&[1, 5, 68]), &IndexSet::empty(), 100).unwrap();
        assert_eq!(split.alternatives.len(), 8);
        assert_eq!(split.canonical.f1, s(&[1, 5]));
        assert_eq!(split.canonical.f2, s(&[31]));
        let min_r = split.alternatives.iter().map(|p| p.r).min().unwrap();
        assert_eq!(split.canonical.r, min_r);
        let again = krawtchouk_canonical_split(&s(&[1, 5]), &s(&[31]), 100).unwrap();
        assert_eq!(again.canonical, split.canonical);
    }

    #[test]
    fn empty_max_is_minus_one() {
        assert_eq!(IndexSet::empty().max_elem(), -1);
        assert_eq!(r_of(&IndexSet::empty()), 1);
    }

    #[test]
    fn parse_sets() {
        assert_eq!(IndexSet::parse("2,3, 5").unwrap(), s(&[2, 3, 5]));
        assert_eq!(IndexSet::parse("").unwrap(), IndexSet::empty());
        assert_eq!(IndexSet::parse("{1}").unwrap(), s(&[1]));
        assert!(IndexSet::parse("1,1").is_err());
    }
}
