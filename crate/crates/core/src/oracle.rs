//! Brute-force ground truth for the monoid `⟨G⟩`.
//!
//! Everything here is plain dynamic programming over `0..=n / gcd(G)`, kept
//! deliberately simple so the closed forms elsewhere can be checked against
//! it. Tables larger than [`TABLE_LIMIT`] entries are refused.

use num_bigint::Sign;
use num_integer::Integer as _;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::num::{dec, dec_int, dec_vec, gcd_all, to_usize, Integer, Natural};
use crate::poly::IntPolynomial;
use crate::seqcore::Sequence;

/// Largest dynamic-programming table (in entries) the oracle will build.
pub const TABLE_LIMIT: usize = 1 << 27;

/// Generators divided by their gcd, zeros dropped.
#[derive(Debug, Clone)]
struct Reduced {
    gcd: Natural,
    gens: Vec<usize>,
}

impl Reduced {
    fn new(terms: &[Natural]) -> Result<Self> {
        let gcd = gcd_all(terms);
        if gcd.is_zero() {
            return Ok(Reduced { gcd, gens: Vec::new() });
        }
        let mut gens = terms
            .iter()
            .filter(|t| !t.is_zero())
            .map(|t| to_usize(&(t / &gcd), TABLE_LIMIT))
            .collect::<Result<Vec<_>>>()?;
        gens.sort_unstable();
        gens.dedup();
        Ok(Reduced { gcd, gens })
    }

    /// Reachability over `0..=bound` (in reduced units).
    fn table(&self, bound: usize) -> Vec<bool> {
        let mut reach = vec![false; bound + 1];
        reach[0] = true;
        for &g in &self.gens {
            for v in g..=bound {
                if reach[v - g] {
                    reach[v] = true;
                }
            }
        }
        reach
    }
}

/// Membership of every multiple of `gcd(G)` up to a bound.
#[derive(Debug, Clone)]
pub struct MembershipTable {
    gcd: Natural,
    reach: Vec<bool>,
}

impl MembershipTable {
    /// Builds the table for `0..=bound`.
    pub fn new(g: &Sequence, bound: &Natural) -> Result<Self> {
        Self::from_terms(g.terms(), bound)
    }

    /// Like [`Self::new`] for a bare slice of generators.
    pub fn from_terms(terms: &[Natural], bound: &Natural) -> Result<Self> {
        let red = Reduced::new(terms)?;
        let reduced_bound = if red.gcd.is_zero() {
            0
        } else {
            to_usize(&(bound / &red.gcd), TABLE_LIMIT)?
        };
        let reach = red.table(reduced_bound);
        Ok(MembershipTable { gcd: red.gcd, reach })
    }

    /// Largest value the table covers, in original units.
    pub fn bound(&self) -> Natural {
        if self.gcd.is_zero() {
            Natural::zero()
        } else {
            (self.reach.len() - 1) * &self.gcd
        }
    }

    /// Membership of `n`; `None` if `n` is a multiple of the gcd past the
    /// bound.
    pub fn get(&self, n: &Natural) -> Option<bool> {
        if n.is_zero() {
            return Some(true);
        }
        if self.gcd.is_zero() {
            return Some(false);
        }
        let (q, r) = n.div_rem(&self.gcd);
        if !r.is_zero() {
            return Some(false);
        }
        q.to_usize().and_then(|i| self.reach.get(i).copied())
    }

    /// Membership of `n` within the table's range.
    ///
    /// # Panics
    ///
    /// Panics if `n` is a multiple of the gcd above [`Self::bound`].
    pub fn contains(&self, n: &Natural) -> bool {
        self.get(n).expect("value outside membership table")
    }
}

fn contains_in(terms: &[Natural], n: &Natural) -> Result<bool> {
    if n.is_zero() {
        return Ok(true);
    }
    let d = gcd_all(terms);
    if d.is_zero() || !(n % &d).is_zero() {
        return Ok(false);
    }
    Ok(MembershipTable::from_terms(terms, n)?.contains(n))
}

/// Whether `n` is a non-negative integer combination of the terms of `G`.
///
/// The only error is [`Error::OracleLimit`] when `n / gcd(G)` is too large
/// for a table.
pub fn contains(g: &Sequence, n: &Natural) -> Result<bool> {
    contains_in(g.terms(), n)
}

/// Same as [`contains`] for an arbitrary (possibly empty) list of generators.
pub fn contains_terms(terms: &[Natural], n: &Natural) -> Result<bool> {
    contains_in(terms, n)
}

/// Membership scan of a numerical semigroup up to its conductor.
struct GapScan {
    /// `reach[v]` for `v` in `0..=frobenius + run`.
    reach: Vec<bool>,
    frobenius: Option<usize>,
    red: Reduced,
}

impl GapScan {
    fn new(terms: &[Natural]) -> Result<Self> {
        let red = Reduced::new(terms)?;
        if !red.gcd.is_one() {
            return Err(Error::InfiniteComplement);
        }
        let m = red.gens[0];
        let mut reach = vec![true];
        let mut run = 1usize;
        let mut frobenius = None;
        // Once m consecutive members appear, every later value is a member.
        while run < m {
            let v = reach.len();
            if v > TABLE_LIMIT {
                return Err(Error::OracleLimit {
                    needed: v.to_string(),
                    limit: TABLE_LIMIT,
                });
            }
            let member = red.gens.iter().any(|&g| g <= v && reach[v - g]);
            reach.push(member);
            if member {
                run += 1;
            } else {
                run = 0;
                frobenius = Some(v);
            }
        }
        Ok(GapScan { reach, frobenius, red })
    }

    fn member(&self, v: usize) -> bool {
        v >= self.reach.len() || self.reach[v]
    }

    fn gaps(&self) -> Vec<Natural> {
        self.reach
            .iter()
            .enumerate()
            .filter(|(_, &m)| !m)
            .map(|(v, _)| Natural::from(v))
            .collect()
    }

    fn frobenius(&self) -> Integer {
        self.frobenius.map_or(Integer::from(-1), Integer::from)
    }

    /// Extends the table so it covers `0..=bound`.
    fn extend_to(&mut self, bound: usize) -> Result<()> {
        if bound > TABLE_LIMIT {
            return Err(Error::OracleLimit {
                needed: bound.to_string(),
                limit: TABLE_LIMIT,
            });
        }
        if bound >= self.reach.len() {
            self.reach.resize(bound + 1, true);
        }
        Ok(())
    }
}

/// Gaps, Frobenius number, genus and (optionally) an Apéry set of a
/// numerical semigroup.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonoidSummary {
    #[serde(with = "dec_vec")]
    pub gaps: Vec<Natural>,
    /// `-1` when there are no gaps.
    #[serde(with = "dec_int")]
    pub frobenius: Integer,
    #[serde(with = "dec")]
    pub genus: Natural,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "opt_dec_vec")]
    pub apery: Option<Vec<Natural>>,
    pub embedding_dimension: usize,
}

fn opt_dec_vec<S: serde::Serializer>(
    v: &Option<Vec<Natural>>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(v) => dec_vec::serialize(v, s),
        None => s.serialize_none(),
    }
}

/// Enumerates the gaps of `⟨G⟩`. Requires `gcd(G) = 1`.
pub fn gaps(g: &Sequence) -> Result<MonoidSummary> {
    let scan = GapScan::new(g.terms())?;
    let gaps = scan.gaps();
    Ok(MonoidSummary {
        genus: Natural::from(gaps.len()),
        gaps,
        frobenius: scan.frobenius(),
        apery: None,
        embedding_dimension: minimal_generators(g)?.len(),
    })
}

/// Brute-force Frobenius number (`-1` for `ℕ₀`).
pub fn frobenius_bf(g: &Sequence) -> Result<Integer> {
    Ok(GapScan::new(g.terms())?.frobenius())
}

/// `Ap(⟨G⟩; t)` indexed by residue: entry `r` is the least member `≡ r (mod t)`.
pub fn apery_bf(g: &Sequence, t: &Natural) -> Result<Vec<Natural>> {
    let mut scan = GapScan::new(g.terms())?;
    if t.is_zero() {
        return Err(Error::NotAMember { value: t.to_string() });
    }
    let tu = to_usize(t, TABLE_LIMIT)?;
    if !scan.member(tu) {
        return Err(Error::NotAMember { value: t.to_string() });
    }
    let frob = scan.frobenius.map_or(0, |f| f + 1);
    scan.extend_to(frob + tu)?;
    let mut slots: Vec<Option<usize>> = vec![None; tu];
    let mut filled = 0;
    for v in 0..=frob + tu {
        if filled == tu {
            break;
        }
        if scan.member(v) && slots[v % tu].is_none() {
            slots[v % tu] = Some(v);
            filled += 1;
        }
    }
    Ok(slots
        .into_iter()
        .map(|s| Natural::from(s.expect("every residue has a member below F + t")))
        .collect())
}

fn check_apery_size(apery: &[Natural], t: &Natural) -> Result<()> {
    if Natural::from(apery.len()) != *t {
        return Err(Error::SizeMismatch {
            expected: t.to_usize().unwrap_or(usize::MAX),
            found: apery.len(),
        });
    }
    Ok(())
}

/// `F = max(Ap) - t`.
pub fn frobenius_from_apery(apery: &[Natural], t: &Natural) -> Result<Integer> {
    check_apery_size(apery, t)?;
    let max = apery.iter().max().ok_or(Error::InvalidApery {
        reason: "empty Apery set".into(),
    })?;
    Ok(Integer::from(max.clone()) - Integer::from(t.clone()))
}

/// `g = (1 - t)/2 + (1/t) Σ Ap`, evaluated exactly.
pub fn genus_from_apery(apery: &[Natural], t: &Natural) -> Result<Natural> {
    check_apery_size(apery, t)?;
    let sum: Natural = apery.iter().sum();
    let t = Integer::from(t.clone());
    // 2t·g = 2Σ + t(1 - t)
    let numerator: Integer = Integer::from(sum) * 2 + &t * (Integer::one() - &t);
    let denominator = &t * 2;
    let (q, r) = numerator.div_rem(&denominator);
    if !r.is_zero() || q.sign() == Sign::Minus {
        return Err(Error::InvalidApery {
            reason: "genus formula is not a non-negative integer".into(),
        });
    }
    Ok(q.magnitude().clone())
}

/// The unique minimal subsequence generating `⟨G⟩`, in original order.
///
/// Zeros are dropped and duplicates collapse to their first occurrence. An
/// all-zero input yields `(0)`.
pub fn minimal_generators(g: &Sequence) -> Result<Sequence> {
    let mut distinct: Vec<Natural> = Vec::new();
    for t in g.terms() {
        if !t.is_zero() && !distinct.contains(t) {
            distinct.push(t.clone());
        }
    }
    if distinct.is_empty() {
        return Sequence::new(vec![Natural::zero()]);
    }
    let mut ascending = distinct.clone();
    ascending.sort();
    let mut kept: Vec<Natural> = Vec::new();
    for a in ascending {
        // Only smaller terms can contribute to a representation of `a`.
        if !contains_in(&kept, &a)? {
            kept.push(a);
        }
    }
    Sequence::new(distinct.into_iter().filter(|t| kept.contains(t)).collect())
}

/// Whether no term lies in the monoid generated by the others.
pub fn is_minimal_bf(g: &Sequence) -> Result<bool> {
    Ok(redundant_indices(g)?.is_empty())
}

/// Every `n` (1-based) with `g_n ∈ ⟨π_n(G)⟩`.
pub fn redundant_indices(g: &Sequence) -> Result<Vec<usize>> {
    let terms = g.terms();
    let mut out = Vec::new();
    for n in 0..terms.len() {
        let others: Vec<Natural> = terms
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != n)
            .map(|(_, t)| t.clone())
            .collect();
        if contains_in(&others, &terms[n])? {
            out.push(n + 1);
        }
    }
    Ok(out)
}

/// Whether `⟨G⟩ = ⟨H⟩`.
pub fn monoids_equal(g: &Sequence, h: &Sequence) -> Result<bool> {
    let (dg, dh) = (g.gcd(), h.gcd());
    if dg != dh {
        return Ok(false);
    }
    if dg.is_zero() {
        return Ok(true);
    }
    let reduce = |s: &Sequence| -> Vec<Natural> { s.terms().iter().map(|t| t / &dg).collect() };
    let (rg, rh) = (reduce(g), reduce(h));
    let fg = GapScan::new(&rg)?.frobenius();
    let fh = GapScan::new(&rh)?.frobenius();
    let bound: Integer = fg.max(fh) + 1;
    let bound = bound.to_biguint().unwrap_or_default();
    let tg = MembershipTable::from_terms(&rg, &bound)?;
    let th = MembershipTable::from_terms(&rh, &bound)?;
    Ok(tg.reach == th.reach)
}

/// Both sides of `Σ_{n ∈ H(S)} [f(n+t) - f(n)] = Σ_{n ∈ Ap(S;t)} f(n) - Σ_{n<t} f(n)`.
pub fn tuenter_check(g: &Sequence, t: &Natural, f: &IntPolynomial) -> Result<(Integer, Integer)> {
    tuenter_check_with(g, t, f, Execution::default())
}

pub fn tuenter_check_with(
    g: &Sequence,
    t: &Natural,
    f: &IntPolynomial,
    exec: Execution,
) -> Result<(Integer, Integer)> {
    let scan = GapScan::new(g.terms())?;
    let apery = apery_bf(g, t)?;
    let ti = Integer::from(t.clone());
    let gaps = scan.gaps();
    let lhs = exec.sum(&gaps, |n| {
        let n = Integer::from(n.clone());
        f.eval(&(&n + &ti)) - f.eval(&n)
    });
    let rhs = exec.sum(&apery, |n| f.eval(&Integer::from(n.clone())))
        - sum_below(f, t, exec)?;
    debug_assert!(scan.red.gcd.is_one());
    Ok((lhs, rhs))
}

/// `Σ_{n=0}^{t-1} f(n)`.
pub(crate) fn sum_below(f: &IntPolynomial, t: &Natural, exec: Execution) -> Result<Integer> {
    let t = to_usize(t, TABLE_LIMIT)?;
    Ok(exec.sum_range(t, |n| f.eval(&Integer::from(n))))
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

    /// Independent membership check by exhaustive coefficient search.
    fn member_by_search(gens: &[u64], n: u64) -> bool {
        fn go(gens: &[u64], n: u64) -> bool {
            match gens.split_first() {
                None => n == 0,
                Some((&0, rest)) => go(rest, n),
                Some((&g, rest)) => (0..=n / g).any(|a| go(rest, n - a * g)),
            }
        }
        go(gens, n)
    }

    #[test]
    fn membership_examples() {
        let g = seq(&[4, 6, 5]);
        assert!(!contains(&g, &nat(7)).unwrap());
        assert!(contains(&g, &nat(0)).unwrap());
        assert!(contains(&seq(&[660, 550, 352, 50, 201]), &nat(902)).unwrap());
        assert!(!contains(&seq(&[0, 0]), &nat(3)).unwrap());
        assert!(!contains(&seq(&[4, 6]), &nat(7)).unwrap());
        assert!(contains(&seq(&[4, 6]), &nat(10)).unwrap());
    }

    #[test]
    fn gap_examples() {
        let s = gaps(&seq(&[4, 6, 5])).unwrap();
        assert_eq!(s.gaps, nats(&[1, 2, 3, 7]));
        assert_eq!(s.frobenius, Integer::from(7));
        assert_eq!(s.genus, nat(4));
        assert_eq!(s.embedding_dimension, 3);

        let s = gaps(&seq(&[1])).unwrap();
        assert!(s.gaps.is_empty());
        assert_eq!(s.frobenius, Integer::from(-1));
        assert_eq!(s.genus, nat(0));

        let s = gaps(&seq(&[4, 6, 9])).unwrap();
        assert_eq!(s.gaps, nats(&[1, 2, 3, 5, 7, 11]));
        assert_eq!(s.frobenius, Integer::from(11));
        assert_eq!(s.genus, nat(6));

        assert_eq!(gaps(&seq(&[4, 6])), Err(Error::InfiniteComplement));
        assert_eq!(gaps(&seq(&[0])), Err(Error::InfiniteComplement));
    }

    #[test]
    fn apery_examples() {
        assert_eq!(apery_bf(&seq(&[4, 6, 5]), &nat(4)).unwrap(), nats(&[0, 5, 6, 11]));
        assert_eq!(apery_bf(&seq(&[1]), &nat(1)).unwrap(), nats(&[0]));
        assert_eq!(apery_bf(&seq(&[4, 6, 9]), &nat(4)).unwrap(), nats(&[0, 9, 6, 15]));
        assert!(matches!(apery_bf(&seq(&[4, 6, 5]), &nat(7)), Err(Error::NotAMember { .. })));
        assert!(matches!(apery_bf(&seq(&[4, 6, 5]), &nat(0)), Err(Error::NotAMember { .. })));
        assert_eq!(apery_bf(&seq(&[4, 6]), &nat(4)), Err(Error::InfiniteComplement));
    }

    #[test]
    fn invariants_from_apery() {
        let (a, t) = (nats(&[0, 5, 6, 11]), nat(4));
        assert_eq!(frobenius_from_apery(&a, &t).unwrap(), Integer::from(7));
        assert_eq!(genus_from_apery(&a, &t).unwrap(), nat(4));
        assert_eq!(frobenius_from_apery(&nats(&[0]), &nat(1)).unwrap(), Integer::from(-1));
        assert_eq!(genus_from_apery(&nats(&[0]), &nat(1)).unwrap(), nat(0));
        let (a, t) = (nats(&[0, 9, 6, 15]), nat(4));
        assert_eq!(frobenius_from_apery(&a, &t).unwrap(), Integer::from(11));
        assert_eq!(genus_from_apery(&a, &t).unwrap(), nat(6));
        assert!(matches!(
            genus_from_apery(&nats(&[0, 5]), &nat(4)),
            Err(Error::SizeMismatch { expected: 4, found: 2 })
        ));
    }

    #[test]
    fn minimal_generator_examples() {
        assert_eq!(
            minimal_generators(&seq(&[660, 550, 352, 50, 201])).unwrap(),
            seq(&[660, 352, 50, 201])
        );
        assert_eq!(minimal_generators(&seq(&[2, 3])).unwrap(), seq(&[2, 3]));
        assert_eq!(minimal_generators(&seq(&[4, 6, 9, 13])).unwrap(), seq(&[4, 6, 9]));
        assert_eq!(minimal_generators(&seq(&[0, 6, 4, 6, 0])).unwrap(), seq(&[6, 4]));
        assert_eq!(minimal_generators(&seq(&[0, 0])).unwrap(), seq(&[0]));
    }

    #[test]
    fn minimality_examples() {
        assert!(!is_minimal_bf(&seq(&[660, 550, 352, 50, 201])).unwrap());
        assert!(is_minimal_bf(&seq(&[660, 50, 352, 201])).unwrap());
        assert!(is_minimal_bf(&seq(&[1])).unwrap());
        assert!(!is_minimal_bf(&seq(&[5, 5])).unwrap());
        assert!(!is_minimal_bf(&seq(&[5, 0])).unwrap());
        assert_eq!(
            redundant_indices(&seq(&[660, 550, 352, 902, 50, 201])).unwrap(),
            vec![2, 4]
        );
    }

    #[test]
    fn monoid_equality_examples() {
        assert!(monoids_equal(&seq(&[660, 550, 352, 50, 201]), &seq(&[660, 50, 352, 201])).unwrap());
        assert!(!monoids_equal(&seq(&[2, 3]), &seq(&[2, 5])).unwrap());
        assert!(monoids_equal(&seq(&[4, 6, 5]), &seq(&[5, 4, 6])).unwrap());
        assert!(monoids_equal(&seq(&[8, 12]), &seq(&[12, 8, 20])).unwrap());
        assert!(!monoids_equal(&seq(&[8, 12]), &seq(&[4])).unwrap());
        assert!(monoids_equal(&seq(&[0]), &seq(&[0, 0])).unwrap());
    }

    #[test]
    fn tuenter_examples() {
        let g = seq(&[4, 6, 5]);
        let t = nat(4);
        assert_eq!(
            tuenter_check(&g, &t, &IntPolynomial::monomial(1)).unwrap(),
            (Integer::from(16), Integer::from(16))
        );
        assert_eq!(
            tuenter_check(&g, &t, &IntPolynomial::constant(1)).unwrap(),
            (Integer::from(0), Integer::from(0))
        );
        // f(n) = n² on (4,6,9): gaps {1,2,3,5,7,11} give Σ (8n + 16) = 8·29 + 96 = 328;
        // Apéry {0,6,9,15} gives 0 + 36 + 81 + 225 - (0 + 1 + 4 + 9) = 328.
        let (l, r) = tuenter_check(&seq(&[4, 6, 9]), &t, &IntPolynomial::monomial(2)).unwrap();
        assert_eq!(l, Integer::from(328));
        assert_eq!(r, Integer::from(328));
    }

    proptest! {
        #[test]
        fn dp_agrees_with_search(gens in prop::collection::vec(0u64..15, 1..4), n in 0u64..60) {
            let g = seq(&gens);
            prop_assert_eq!(contains(&g, &nat(n)).unwrap(), member_by_search(&gens, n));
        }

        #[test]
        fn apery_routes_agree(gens in prop::collection::vec(1u64..30, 1..5), pick in 0usize..5) {
            let g = seq(&gens);
            prop_assume!(g.gcd().is_one());
            let t = g.terms()[pick % g.len()].clone();
            let s = gaps(&g).unwrap();
            let ap = apery_bf(&g, &t).unwrap();
            prop_assert_eq!(frobenius_from_apery(&ap, &t).unwrap(), s.frobenius.clone());
            prop_assert_eq!(genus_from_apery(&ap, &t).unwrap(), s.genus.clone());
            // No gap past the boundary in an extended scan.
            let f = s.frobenius.to_i64().unwrap();
            let table = MembershipTable::new(&g, &nat((f + 1) as u64 * 3 + 10)).unwrap();
            for v in (f + 1) as u64..=(f + 1) as u64 * 3 + 10 {
                prop_assert!(table.contains(&nat(v)));
            }
            for gap in &s.gaps {
                prop_assert!(!table.contains(gap));
            }
        }

        #[test]
        fn minimal_generators_are_minimal(gens in prop::collection::vec(0u64..40, 1..6)) {
            let g = seq(&gens);
            prop_assume!(gens.iter().any(|&x| x != 0));
            let m = minimal_generators(&g).unwrap();
            prop_assert!(monoids_equal(&g, &m).unwrap());
            prop_assert!(is_minimal_bf(&m).unwrap());
        }

        #[test]
        fn tuenter_identity_holds(gens in prop::collection::vec(1u64..25, 1..4), pick in 0usize..4, deg in 0usize..4) {
            let g = seq(&gens);
            prop_assume!(g.gcd().is_one());
            let t = g.terms()[pick % g.len()].clone();
            let (l, r) = tuenter_check(&g, &t, &IntPolynomial::monomial(deg)).unwrap();
            prop_assert_eq!(l, r);
        }

        #[test]
        fn membership_is_monotone_in_generators(a in prop::collection::vec(0u64..20, 1..3), b in prop::collection::vec(0u64..20, 1..3), n in 0u64..50) {
            let g = seq(&a);
            let gh = crate::seqcore::concat(&g, &seq(&b));
            if contains(&g, &nat(n)).unwrap() {
                prop_assert!(contains(&gh, &nat(n)).unwrap());
            }
        }
    }
}
