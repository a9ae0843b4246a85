//! Sequences of naturals and their prefix-gcd bookkeeping.
//!
//! All public indices are 1-based: `term(1)` is the head of the sequence.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer as _;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::num::{gcd_all, parse_natural_list, Natural};

/// A non-empty, immutable, ordered list of naturals.
///
/// Zeros and repeated values are allowed.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Sequence(Vec<Natural>);

impl Sequence {
    pub fn new(terms: Vec<Natural>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::EmptySequence);
        }
        Ok(Sequence(terms))
    }

    /// Convenience constructor for small literals.
    ///
    /// # Panics
    ///
    /// Panics on an empty slice.
    pub fn from_u64s(terms: &[u64]) -> Self {
        Self::new(terms.iter().map(|&t| Natural::from(t)).collect())
            .expect("literal sequence must be non-empty")
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Always false; kept for clippy's `len_without_is_empty`.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn terms(&self) -> &[Natural] {
        &self.0
    }

    pub fn into_terms(self) -> Vec<Natural> {
        self.0
    }

    /// The `i`-th term, 1-based.
    pub fn term(&self, i: usize) -> Result<&Natural> {
        if i == 0 || i > self.len() {
            return Err(Error::IndexOutOfRange {
                index: i,
                len: self.len(),
            });
        }
        Ok(&self.0[i - 1])
    }

    pub fn head(&self) -> &Natural {
        &self.0[0]
    }

    pub fn last(&self) -> &Natural {
        &self.0[self.0.len() - 1]
    }

    pub fn gcd(&self) -> Natural {
        gcd_all(&self.0)
    }

    /// The prefix `(g_1, …, g_i)`.
    pub fn prefix(&self, i: usize) -> Result<Sequence> {
        slice(self, 0, i)
    }

    pub fn is_nondecreasing(&self) -> bool {
        self.0.windows(2).all(|w| w[0] <= w[1])
    }

    pub fn to_u64s(&self) -> Option<Vec<u64>> {
        use num_traits::ToPrimitive;
        self.0.iter().map(|t| t.to_u64()).collect()
    }
}

impl fmt::Display for Sequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Sequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl FromStr for Sequence {
    type Err = Error;

    /// Parses the canonical form, e.g. `660,550,352,50,201`.
    fn from_str(s: &str) -> Result<Self> {
        Sequence::new(parse_natural_list(s)?)
    }
}

impl Serialize for Sequence {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        crate::num::dec_vec::serialize(&self.0, s)
    }
}

impl<'de> Deserialize<'de> for Sequence {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let terms = crate::num::dec_vec::deserialize(d)?;
        Sequence::new(terms).map_err(serde::de::Error::custom)
    }
}

/// Prefix gcds `d_i = gcd(g_1, …, g_i)` and quotients `c_j = d_{j-1} / d_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GcdProfile {
    d: Vec<Natural>,
    c: Vec<Natural>,
}

impl GcdProfile {
    pub fn len(&self) -> usize {
        self.d.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// All prefix gcds, `d[0]` being `d_1`.
    pub fn prefix_gcds(&self) -> &[Natural] {
        &self.d
    }

    /// The c-sequence `(c_2, …, c_k)`; empty for length 1.
    pub fn c_values(&self) -> &[Natural] {
        &self.c
    }

    /// `d_i`, 1-based.
    pub fn d(&self, i: usize) -> &Natural {
        &self.d[i - 1]
    }

    /// `c_j` for `2 <= j <= k`.
    pub fn c(&self, j: usize) -> &Natural {
        &self.c[j - 2]
    }

    pub fn gcd(&self) -> &Natural {
        &self.d[self.d.len() - 1]
    }

    /// `C_{m,n} = c_{m+1} ⋯ c_n`, the empty product being 1.
    pub fn c_product(&self, m: usize, n: usize) -> Result<Natural> {
        let k = self.len();
        if m == 0 || m > k {
            return Err(Error::IndexOutOfRange { index: m, len: k });
        }
        if n < m || n > k {
            return Err(Error::IndexOutOfRange { index: n, len: k });
        }
        Ok(self.c[m - 1..n - 1]
            .iter()
            .fold(Natural::one(), |acc, c| acc * c))
    }
}

/// Computes the gcd profile. Requires `g_1 > 0`.
pub fn gcd_profile(g: &Sequence) -> Result<GcdProfile> {
    if g.head().is_zero() {
        return Err(Error::HeadZero);
    }
    let mut d = Vec::with_capacity(g.len());
    let mut running = Natural::zero();
    for t in g.terms() {
        running = running.gcd(t);
        d.push(running.clone());
    }
    let c = d.windows(2).map(|w| &w[0] / &w[1]).collect();
    Ok(GcdProfile { d, c })
}

pub fn c_product(p: &GcdProfile, m: usize, n: usize) -> Result<Natural> {
    p.c_product(m, n)
}

/// `mG`.
pub fn scale(g: &Sequence, m: &Natural) -> Sequence {
    Sequence(g.terms().iter().map(|t| t * m).collect())
}

/// `G / m`; every term must be a multiple of `m`.
pub fn divide(g: &Sequence, m: &Natural) -> Result<Sequence> {
    if m.is_zero() {
        return Err(Error::ZeroScale);
    }
    let mut out = Vec::with_capacity(g.len());
    for (i, t) in g.terms().iter().enumerate() {
        let (q, r) = t.div_rem(m);
        if !r.is_zero() {
            return Err(Error::NotDivisible { index: i + 1 });
        }
        out.push(q);
    }
    Ok(Sequence(out))
}

/// `G_{i,j} = (g_{i+1}, …, g_j)` for `0 <= i < j <= k`.
pub fn slice(g: &Sequence, i: usize, j: usize) -> Result<Sequence> {
    let k = g.len();
    if j > k || j == 0 {
        return Err(Error::IndexOutOfRange { index: j, len: k });
    }
    if i >= j {
        return Err(Error::IndexOutOfRange { index: i, len: k });
    }
    Ok(Sequence(g.terms()[i..j].to_vec()))
}

/// `G × H`.
pub fn concat(g: &Sequence, h: &Sequence) -> Sequence {
    let mut terms = g.terms().to_vec();
    terms.extend_from_slice(h.terms());
    Sequence(terms)
}

/// A bijection on `{1, …, k}` stored as its image list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let k = images.len();
        let mut seen = vec![false; k];
        for &x in &images {
            if x == 0 || x > k || seen[x - 1] {
                return Err(Error::InvalidParameters {
                    reason: format!("{images:?} is not a permutation of 1..={k}"),
                });
            }
            seen[x - 1] = true;
        }
        Ok(Permutation(images))
    }

    pub fn identity(k: usize) -> Self {
        Permutation((1..=k).collect())
    }

    /// The transposition `(i j)` in `S_k`.
    pub fn transposition(k: usize, i: usize, j: usize) -> Result<Self> {
        for x in [i, j] {
            if x == 0 || x > k {
                return Err(Error::IndexOutOfRange { index: x, len: k });
            }
        }
        let mut images: Vec<usize> = (1..=k).collect();
        images.swap(i - 1, j - 1);
        Ok(Permutation(images))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }
}

/// `σ(G) = (g_{σ(1)}, …, g_{σ(k)})`.
pub fn apply_permutation(g: &Sequence, sigma: &Permutation) -> Result<Sequence> {
    if sigma.len() != g.len() {
        return Err(Error::SizeMismatch {
            expected: g.len(),
            found: sigma.len(),
        });
    }
    Ok(Sequence(
        sigma.images().iter().map(|&i| g.terms()[i - 1].clone()).collect(),
    ))
}

/// Swaps positions `i` and `j` (1-based).
pub fn swap(g: &Sequence, i: usize, j: usize) -> Result<Sequence> {
    apply_permutation(g, &Permutation::transposition(g.len(), i, j)?)
}

/// Returns `(1 2)(G)` when `g_1 = 0`, otherwise `G`.
pub fn normalize_head(g: &Sequence) -> Result<Sequence> {
    if !g.head().is_zero() {
        return Ok(g.clone());
    }
    if g.len() >= 2 && !g.terms()[1].is_zero() {
        return swap(g, 1, 2);
    }
    Err(Error::DegenerateHead)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::nat;
    use proptest::prelude::*;

    fn seq(v: &[u64]) -> Sequence {
        Sequence::from_u64s(v)
    }

    fn nats(v: &[u64]) -> Vec<Natural> {
        v.iter().map(|&x| nat(x)).collect()
    }

    #[test]
    fn profile_of_motivating_sequence() {
        let p = gcd_profile(&seq(&[660, 550, 352, 50, 201])).unwrap();
        assert_eq!(p.prefix_gcds(), nats(&[660, 110, 22, 2, 1]).as_slice());
        assert_eq!(p.c_values(), nats(&[6, 5, 11, 2]).as_slice());
        assert_eq!(p.c_product(1, 5).unwrap(), nat(660));
        assert_eq!(p.c_product(3, 3).unwrap(), nat(1));
    }

    #[test]
    fn profile_of_length_one_and_gcd_four() {
        let p = gcd_profile(&seq(&[7])).unwrap();
        assert_eq!(p.prefix_gcds(), nats(&[7]).as_slice());
        assert!(p.c_values().is_empty());

        let p = gcd_profile(&seq(&[360, 120, 60, 12, 4])).unwrap();
        assert_eq!(p.c_values(), nats(&[3, 2, 5, 3]).as_slice());
        assert_eq!(p.gcd(), &nat(4));
        assert_eq!(p.c_product(2, 4).unwrap(), nat(10));
    }

    #[test]
    fn profile_rejects_zero_head_and_bad_indices() {
        assert_eq!(gcd_profile(&seq(&[0, 5])), Err(Error::HeadZero));
        let p = gcd_profile(&seq(&[4, 6, 9])).unwrap();
        assert!(matches!(p.c_product(0, 2), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(p.c_product(3, 2), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(p.c_product(1, 4), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn scaling_and_division() {
        assert_eq!(scale(&seq(&[4, 6, 9]), &nat(3)), seq(&[12, 18, 27]));
        let g = seq(&[360, 120, 60, 12, 4]);
        let q = divide(&g, &nat(4)).unwrap();
        assert_eq!(q, seq(&[90, 30, 15, 3, 1]));
        assert_eq!(
            gcd_profile(&q).unwrap().c_values(),
            gcd_profile(&g).unwrap().c_values()
        );
        assert_eq!(
            divide(&seq(&[4, 6, 9]), &nat(2)),
            Err(Error::NotDivisible { index: 3 })
        );
        assert_eq!(divide(&seq(&[4]), &nat(0)), Err(Error::ZeroScale));
    }

    #[test]
    fn slicing_and_concat() {
        let g = seq(&[660, 550, 352, 50, 201]);
        assert_eq!(slice(&g, 2, 5).unwrap(), seq(&[352, 50, 201]));
        assert_eq!(concat(&seq(&[352]), &seq(&[50, 201])), seq(&[352, 50, 201]));
        assert_eq!(
            concat(&slice(&g, 0, 2).unwrap(), &slice(&g, 2, 5).unwrap()),
            slice(&g, 0, 5).unwrap()
        );
        assert!(matches!(slice(&g, 3, 3), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(slice(&g, 0, 6), Err(Error::IndexOutOfRange { 
            index: 6, len: 5 
        })));
    }

    #[test]
    fn permutations() {
        let t = Permutation::transposition(3, 1, 2).unwrap();
        assert_eq!(apply_permutation(&seq(&[4, 5, 6]), &t).unwrap(), seq(&[5, 4, 6]));
        let g = seq(&[660, 550, 352, 902, 50, 201]);
        assert_eq!(swap(&g, 2, 5).unwrap(), seq(&[660, 50, 352, 902, 550, 201]));
        assert_eq!(apply_permutation(&g, &Permutation::identity(6)).unwrap(), g);
        assert!(matches!(
            apply_permutation(&g, &Permutation::identity(5)),
            Err(Error::SizeMismatch { .. })
        ));
        assert!(Permutation::from_images(vec![1, 1, 3]).is_err());
        assert!(Permutation::from_images(vec![3, 1, 2]).is_ok());
    }

    #[test]
    fn head_normalization() {
        assert_eq!(normalize_head(&seq(&[0, 5, 10])).unwrap(), seq(&[5, 0, 10]));
        assert_eq!(normalize_head(&seq(&[4, 6, 9])).unwrap(), seq(&[4, 6, 9]));
        assert_eq!(normalize_head(&seq(&[0, 0, 3])), Err(Error::DegenerateHead));
        assert_eq!(normalize_head(&seq(&[0])), Err(Error::DegenerateHead));
    }

    #[test]
    fn canonical_text_form() {
        let g: Sequence = "660,550,352,50,201".parse().unwrap();
        assert_eq!(g, seq(&[660, 550, 352, 50, 201]));
        assert_eq!(g.to_string(), "660,550,352,50,201");
        assert_eq!("".parse::<Sequence>(), Err(Error::EmptySequence));
        assert!("1,,2".parse::<Sequence>().is_err());
    }

    #[test]
    fn repeated_terms_follow_the_definitions() {
        // c_j = 1 whenever a prefix gcd does not drop.
        let p = gcd_profile(&seq(&[6, 6, 4, 0])).unwrap();
        assert_eq!(p.c_values(), nats(&[1, 3, 1]).as_slice());
    }

    fn arb_seq() -> impl Strategy<Value = Vec<u64>> {
        (1u64..500, prop::collection::vec(0u64..500, 0..7)).prop_map(|(h, mut t)| {
            t.insert(0, h);
            t
        })
    }

    proptest! {
        #[test]
        fn prefix_gcd_is_c_product_times_gcd(v in arb_seq()) {
            let g = seq(&v);
            let p = gcd_profile(&g).unwrap();
            let k = g.len();
            for i in 1..=k {
                prop_assert_eq!(p.d(i).clone(), p.c_product(i, k).unwrap() * p.gcd());
            }
            for j in 2..=k {
                prop_assert_eq!(p.c(j) * p.d(j), p.d(j - 1).clone());
            }
        }

        #[test]
        fn c_values_survive_scaling(v in arb_seq(), m in 1u64..50) {
            let g = seq(&v);
            let p = gcd_profile(&g).unwrap();
            let pm = gcd_profile(&scale(&g, &nat(m))).unwrap();
            prop_assert_eq!(p.c_values(), pm.c_values());
            prop_assert_eq!(divide(&scale(&g, &nat(m)), &nat(m)).unwrap(), g);
        }

        #[test]
        fn prefixes_truncate_c(v in arb_seq(), cut in 1usize..8) {
            let g = seq(&v);
            let m = cut.min(g.len());
            let full = gcd_profile(&g).unwrap();
            let pre = gcd_profile(&g.prefix(m).unwrap()).unwrap();
            prop_assert_eq!(pre.c_values(), &full.c_values()[..m - 1]);
        }

        #[test]
        fn slice_composition(v in prop::collection::vec(0u64..100, 3..9), a in 0usize..9, b in 0usize..9, c in 0usize..9) {
            let g = seq(&v);
            let mut idx = [a % g.len(), b % g.len(), c % g.len() + 1];
            idx.sort();
            let [i, j, l] = idx;
            if i < j && j < l {
                let left = concat(&slice(&g, i, j).unwrap(), &slice(&g, j, l).unwrap());
                prop_assert_eq!(left, slice(&g, i, l).unwrap());
            }
            let x = seq(&v[..1]);
            let y = seq(&v[1..2]);
            let z = seq(&v[2..]);
            prop_assert_eq!(concat(&concat(&x, &y), &z), concat(&x, &concat(&y, &z)));
            prop_assert_eq!(concat(&x, &z).gcd(), x.gcd().gcd(&z.gcd()));
        }
    }
}
