//! Reduction of a telescopic sequence to a minimal telescopic sequence
//! generating the same monoid.
//!
//! A telescopic `G` fails to be minimal exactly when some `g_i` equals some
//! `h_j = c_j g_j`. Either `c_i = 1` (the term lies in the monoid of the
//! terms before it: case 1) or `g_i = c_j g_j` for a later `j` (case 2).

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::oracle;
use crate::seqcore::{gcd_profile, GcdProfile, Sequence};
use crate::telescopic::{Telescopic, telescopic_witness};
use crate::transforms::pi;
use crate::seqcore::swap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Case {
    One,
    Two,
}

impl Serialize for Case {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(match self {
            Case::One => "1",
            Case::Two => "2",
        })
    }
}

/// Case 1: `c_n = 1`. Case 2: `g_n = c_m g_m` with `m > n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RedundancyWitness {
    pub case: Case,
    pub n: usize,
    pub m: Option<usize>,
}

impl RedundancyWitness {
    fn one(n: usize) -> Self {
        RedundancyWitness {
            case: Case::One,
            n,
            m: None,
        }
    }

    fn two(n: usize, m: usize) -> Self {
        RedundancyWitness {
            case: Case::Two,
            n,
            m: Some(m),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReductionStep {
    pub before: Sequence,
    #[serde(flatten)]
    pub witness: RedundancyWitness,
    pub after: Sequence,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
#[serde(transparent)]
pub struct ReductionTrace {
    pub steps: Vec<ReductionStep>,
}

impl ReductionTrace {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

/// The value-matching scan, smallest `n` then smallest `m`.
///
/// For `i >= 2`, `g_i = c_j g_j` with `j <= i` happens only when `c_i = 1`,
/// so testing `c_i` covers every match at or before `i`. A case 2 match at
/// `n = 1` is passed over when `g_2 = 0`: the index-2 case 1 applies then.
fn scan(g: &Sequence, p: &GcdProfile) -> Option<RedundancyWitness> {
    let terms = g.terms();
    let k = terms.len();
    for i in 1..=k {
        if i >= 2 && p.c(i) == &1u32.into() {
            return Some(RedundancyWitness::one(i));
        }
        if i == 1 && k >= 2 && terms[1] == 0u32.into() {
            continue;
        }
        for j in i + 1..=k {
            if terms[i - 1] == p.c(j) * &terms[j - 1] {
                return Some(RedundancyWitness::two(i, j));
            }
        }
    }
    None
}

pub fn find_redundancy(g: &Sequence) -> Result<Option<RedundancyWitness>> {
    let t = Telescopic::new(g)?;
    Ok(scan(g, t.profile()))
}

pub fn is_minimal_telescopic(g: &Sequence) -> Result<bool> {
    Ok(find_redundancy(g)?.is_none())
}

fn violated(reason: String) -> Error {
    Error::PreconditionViolated { reason }
}

/// `π_n(G)` for a term with `c_n = 1` lying in `⟨G_{n-1}⟩`.
pub fn remove_case1(g: &Sequence, n: usize) -> Result<Sequence> {
    let p = gcd_profile(g)?;
    if n < 2 || n > g.len() {
        return Err(Error::IndexOutOfRange {
            index: n,
            len: g.len(),
        });
    }
    if p.c(n) != &1u32.into() {
        return Err(violated(format!("c_{n} = {} is not 1", p.c(n))));
    }
    if !oracle::contains_terms(&g.terms()[..n - 1], &g.terms()[n - 1])? {
        return Err(violated(format!("g_{n} is not generated by the terms before it")));
    }
    pi(g, n)
}

/// `π_m((n m)G)` for `g_n = c_m g_m`. With `n = 1` the first two terms are
/// swapped first, which moves the witness to index 2.
pub fn remove_case2(g: &Sequence, n: usize, m: usize) -> Result<Sequence> {
    let p = gcd_profile(g)?;
    let k = g.len();
    if n < 1 || m > k {
        return Err(Error::IndexOutOfRange {
            index: if m > k { m } else { n },
            len: k,
        });
    }
    if n >= m {
        return Err(violated(format!("need n < m, got n = {n}, m = {m}")));
    }
    let terms = g.terms();
    if terms[n - 1] != p.c(m) * &terms[m - 1] {
        return Err(violated(format!("g_{n} != c_{m} g_{m}")));
    }
    if n > 1 {
        return pi(&swap(g, n, m)?, m);
    }
    if terms[1] == 0u32.into() {
        return Err(violated("g_2 = 0; remove it as a case 1 term".into()));
    }
    let h = swap(g, 1, 2)?;
    if m == 2 {
        // g_1 = c_2 g_2, so after the swap the second term is a multiple
        // of the first.
        return pi(&h, 2);
    }
    pi(&swap(&h, 2, m)?, m)
}

fn remove(g: &Sequence, w: &RedundancyWitness) -> Result<Sequence> {
    match (w.case, w.m) {
        (Case::One, _) => remove_case1(g, w.n),
        (Case::Two, Some(m)) => remove_case2(g, w.n, m),
        (Case::Two, None) => Err(violated("case 2 witness without m".into())),
    }
}

/// Removes the first detected redundancy until none is left.
pub fn minimize_telescopic(g: &Sequence) -> Result<(Sequence, ReductionTrace)> {
    Telescopic::new(g)?;
    let mut current = g.clone();
    let mut trace = ReductionTrace::default();
    loop {
        let p = gcd_profile(&current)?;
        let Some(witness) = scan(&current, &p) else {
            return Ok((current, trace));
        };
        let after = remove(&current, &witness)?;
        trace.steps.push(ReductionStep {
            before: std::mem::replace(&mut current, after.clone()),
            witness,
            after,
        });
    }
}

/// For a term known to be redundant (`g_n ∈ ⟨π_n G⟩`), the case 1 or case 2
/// witness explaining it, if any. Case 1 is preferred.
pub fn explain_redundant(g: &Sequence, n: usize) -> Result<Option<RedundancyWitness>> {
    let p = gcd_profile(g)?;
    let terms = g.terms();
    if n == 0 || n > terms.len() {
        return Err(Error::IndexOutOfRange {
            index: n,
            len: terms.len(),
        });
    }
    if n >= 2
        && p.c(n) == &1u32.into()
        && oracle::contains_terms(&terms[..n - 1], &terms[n - 1])?
    {
        return Ok(Some(RedundancyWitness::one(n)));
    }
    Ok((n + 1..=terms.len())
        .find(|&m| terms[n - 1] == p.c(m) * &terms[m - 1])
        .map(|m| RedundancyWitness::two(n, m)))
}

/// A permutation of `h` that is telescopic: the minimal telescopic
/// reduction of `g` first, then the rest of `h` in its original order.
pub fn telescopic_reorder(h: &Sequence, g: &Sequence) -> Result<Sequence> {
    if let Some(witness) = telescopic_witness(g)? {
        return Err(Error::NotTelescopic { witness });
    }
    if !oracle::monoids_equal(h, g)? {
        return Err(Error::MonoidMismatch);
    }
    let (minimal, _) = minimize_telescopic(g)?;
    let mut used = vec![false; h.len()];
    let mut out = Vec::with_capacity(h.len());
    for t in minimal.terms() {
        let pos = h
            .terms()
            .iter()
            .enumerate()
            .position(|(i, x)| !used[i] && x == t)
            .ok_or_else(|| Error::MissingTerm {
                value: t.to_string(),
            })?;
        used[pos] = true;
        out.push(t.clone());
    }
    out.extend(
        h.terms()
            .iter()
            .zip(&used)
            .filter(|(_, &u)| !u)
            .map(|(x, _)| x.clone()),
    );
    Sequence::new(out)
}
