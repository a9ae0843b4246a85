//! Building telescopic sequences from `(d, c, z)` data, the minimality
//! conditions on that data, the classical families, and bounded search.

use num_integer::Integer as _;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::num::{dec, dec_vec, to_usize, Natural};
use crate::oracle::MembershipTable;
use crate::seqcore::{gcd_profile, Sequence};
use crate::telescopic::{is_telescopic, Telescopic, ZDecomposition};

/// `d`, `(c_2, …, c_k)` and `(z_2, …, z_k)`; `z_1` is always `d`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionRequest {
    #[serde(with = "dec")]
    pub d: Natural,
    #[serde(with = "dec_vec")]
    pub c: Vec<Natural>,
    #[serde(with = "dec_vec")]
    pub z: Vec<Natural>,
}

impl ConstructionRequest {
    pub fn new(d: Natural, c: Vec<Natural>, z: Vec<Natural>) -> Self {
        ConstructionRequest { d, c, z }
    }

    pub fn from_u64s(d: u64, c: &[u64], z: &[u64]) -> Self {
        let v = |s: &[u64]| s.iter().map(|&x| Natural::from(x)).collect();
        ConstructionRequest::new(d.into(), v(c), v(z))
    }

    /// Sequence length `k`.
    pub fn len(&self) -> usize {
        self.c.len() + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `z_i`, 1-based, with `z_1 = d`.
    pub fn z(&self, i: usize) -> &Natural {
        if i == 1 {
            &self.d
        } else {
            &self.z[i - 2]
        }
    }

    /// `C_{m,n} = c_{m+1} ⋯ c_n`.
    pub fn c_product(&self, m: usize, n: usize) -> Natural {
        self.c[m - 1..n - 1]
            .iter()
            .fold(Natural::one(), |acc, c| acc * c)
    }

    fn check_shape(&self) -> Result<()> {
        if self.z.len() != self.c.len() {
            return Err(Error::SizeMismatch {
                expected: self.c.len(),
                found: self.z.len(),
            });
        }
        if self.d.is_zero() {
            return Err(Error::InvalidParameters {
                reason: "d must be at least 1".into(),
            });
        }
        if let Some(j) = self.c.iter().position(Zero::is_zero) {
            return Err(Error::InvalidParameters {
                reason: format!("c_{} must be at least 1", j + 2),
            });
        }
        Ok(())
    }

    /// Checks `gcd(z_i, d c_i) = d` and `z_i ∈ ⟨z_j C_{j,i-1} : j < i⟩` for
    /// each `i`, reporting the first failing index.
    pub fn validate(&self) -> Result<()> {
        self.check_shape()?;
        for i in 2..=self.len() {
            if !gcd_condition(self, i, self.z(i)) {
                return Err(Error::GcdConditionFailed { index: i });
            }
            let table = level_table(self, i, self.z(i))?;
            if !table.contains(&(self.z(i) / &self.d)) {
                return Err(Error::MembershipConditionFailed { index: i });
            }
        }
        Ok(())
    }

    pub fn decomposition(&self) -> ZDecomposition {
        let mut z = Vec::with_capacity(self.len());
        z.push(self.d.clone());
        z.extend(self.z.iter().cloned());
        ZDecomposition {
            d: self.d.clone(),
            c: self.c.clone(),
            z,
        }
    }
}

pub(crate) fn gcd_condition(req: &ConstructionRequest, i: usize, zi: &Natural) -> bool {
    zi.gcd(&(&req.d * &req.c[i - 2])) == req.d
}

/// Membership in `⟨z_j C_{j,i-1} : j < i⟩`, scaled down by `d`, for values up
/// to `bound`.
pub(crate) fn level_table(req: &ConstructionRequest, i: usize, bound: &Natural) -> Result<MembershipTable> {
    let gens: Vec<Natural> = (1..i)
        .map(|j| req.z(j) * req.c_product(j, i - 1) / &req.d)
        .collect();
    MembershipTable::from_terms(&gens, &(bound / &req.d))
}

/// `g_i = z_i C_{i,k}` after validating the request.
pub fn build(req: &ConstructionRequest) -> Result<Sequence> {
    req.validate()?;
    Ok(assemble(req))
}

fn assemble(req: &ConstructionRequest) -> Sequence {
    let k = req.len();
    Sequence::new((1..=k).map(|i| req.z(i) * req.c_product(i, k)).collect())
        .expect("at least one term")
}

/// The first reason a valid request builds a non-minimal sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MinimalityViolation {
    /// `c_j = 1`.
    UnitC { j: usize },
    /// `z_j | z_i C_{i,j}`.
    Divides { i: usize, j: usize },
}

impl std::fmt::Display for MinimalityViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MinimalityViolation::UnitC { j } => write!(f, "c_{j} = 1"),
            MinimalityViolation::Divides { i, j } => write!(f, "z_{j} divides z_{i}·C_{{{i},{j}}}"),
        }
    }
}

fn first_violation_at(req: &ConstructionRequest, j: usize, zj: &Natural) -> Option<MinimalityViolation> {
    if req.c[j - 2].is_one() {
        return Some(MinimalityViolation::UnitC { j });
    }
    (1..j)
        .find(|&i| {
            let zi = if i == 1 { &req.d } else { &req.z[i - 2] };
            (zi * req.c_product(i, j)).is_multiple_of(zj)
        })
        .map(|i| MinimalityViolation::Divides { i, j })
}

/// `None` when the built sequence is minimal: every `c_j > 1` and
/// `z_j ∤ z_i C_{i,j}` for all `i < j`. Scans `j` upward, then `i`.
pub fn validate_minimal(req: &ConstructionRequest) -> Result<Option<MinimalityViolation>> {
    req.validate()?;
    Ok((2..=req.len()).find_map(|j| first_violation_at(req, j, req.z(j))))
}

pub fn is_minimal_request(req: &ConstructionRequest) -> Result<bool> {
    Ok(validate_minimal(req)?.is_none())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilySpec {
    /// `g_i = a^{k-i} b^{i-1}`.
    Geometric {
        #[serde(with = "dec")]
        a: Natural,
        #[serde(with = "dec")]
        b: Natural,
        #[serde(with = "dec")]
        k: Natural,
    },
    /// `g_i = A / a_i` with `A = a_1 ⋯ a_k`.
    Supersymmetric(#[serde(with = "dec_vec")] Vec<Natural>),
    /// `g_i = b_1 ⋯ b_{i-1} a_i ⋯ a_{k-1}`.
    Compound {
        #[serde(with = "dec_vec")]
        a: Vec<Natural>,
        #[serde(with = "dec_vec")]
        b: Vec<Natural>,
    },
}

const FAMILY_LENGTH_LIMIT: usize = 4096;

fn bad_family(reason: String) -> Error {
    Error::InvalidFamilyParameters { reason }
}

fn require_positive(name: &str, v: &[Natural]) -> Result<()> {
    match v.iter().position(Zero::is_zero) {
        Some(i) => Err(bad_family(format!("{name}_{} must be at least 1", i + 1))),
        None => Ok(()),
    }
}

/// The family's sequence, with its predicted c-values and telescopicness
/// checked before returning.
pub fn family(spec: &FamilySpec) -> Result<Sequence> {
    let (g, predicted) = match spec {
        FamilySpec::Geometric { a, b, k } => {
            require_positive("a", std::slice::from_ref(a))?;
            require_positive("b", std::slice::from_ref(b))?;
            let k = to_usize(k, FAMILY_LENGTH_LIMIT).map_err(|_| bad_family(format!("k = {k} is too large")))?;
            if k == 0 {
                return Err(bad_family("k must be at least 1".into()));
            }
            if !a.gcd(b).is_one() {
                return Err(bad_family(format!("gcd(a, b) = gcd({a}, {b}) != 1")));
            }
            let terms = (1..=k)
                .map(|i| num_traits::pow(a.clone(), k - i) * num_traits::pow(b.clone(), i - 1))
                .collect();
            (terms, vec![a.clone(); k - 1])
        }
        FamilySpec::Supersymmetric(a) => {
            if a.is_empty() {
                return Err(bad_family("need at least one a_i".into()));
            }
            require_positive("a", a)?;
            for i in 0..a.len() {
                for j in i + 1..a.len() {
                    if !a[i].gcd(&a[j]).is_one() {
                        return Err(bad_family(format!(
                            "gcd(a_{}, a_{}) = gcd({}, {}) != 1",
                            i + 1,
                            j + 1,
                            a[i],
                            a[j]
                        )));
                    }
                }
            }
            let product: Natural = a.iter().product();
            let terms = a.iter().map(|ai| &product / ai).collect();
            (terms, a[1..].to_vec())
        }
        FamilySpec::Compound { a, b } => {
            if a.len() != b.len() {
                return Err(bad_family(format!(
                    "a has {} entries but b has {}",
                    a.len(),
                    b.len()
                )));
            }
            require_positive("a", a)?;
            require_positive("b", b)?;
            for i in 0..a.len() {
                for j in 0..=i {
                    if !a[i].gcd(&b[j]).is_one() {
                        return Err(bad_family(format!(
                            "gcd(a_{}, b_{}) = gcd({}, {}) != 1",
                            i + 1,
                            j + 1,
                            a[i],
                            b[j]
                        )));
                    }
                }
            }
            let k = a.len() + 1;
            let terms = (1..=k)
                .map(|i| {
                    let bs: Natural = b[..i - 1].iter().product();
                    let as_: Natural = a[i - 1..].iter().product();
                    bs * as_
                })
                .collect();
            (terms, a.clone())
        }
    };
    let g = Sequence::new(g)?;
    let c = gcd_profile(&g)?;
    if c.c_values() != predicted.as_slice() {
        return Err(bad_family(format!(
            "c-values {:?} differ from the predicted {:?}",
            c.c_values(),
            predicted
        )));
    }
    if !is_telescopic(&g)? {
        return Err(bad_family("resulting sequence is not telescopic".into()));
    }
    Ok(g)
}

/// Whether `G` is non-decreasing with every `c_j > 1`, in which case it is
/// minimal. `false` makes no claim.
pub fn check_nondecreasing_minimal(g: &Sequence) -> Result<bool> {
    let t = Telescopic::new(g)?;
    Ok(g.is_nondecreasing() && t.profile().c_values().iter().all(|c| c > &Natural::one()))
}

struct Level {
    table: MembershipTable,
    next: Natural,
    last: Natural,
}

/// Depth-first search over z-vectors in lexicographic order (`z_2` most
/// significant), pruning each prefix on the gcd condition, then
/// membership, then (when requested) minimality.
pub struct Enumerate {
    req: ConstructionRequest,
    bound: Natural,
    minimal_only: bool,
    first: (Natural, Natural),
    levels: Vec<Level>,
    started: bool,
    done: bool,
}

/// Every telescopic sequence with gcd `d`, c-values `c` and
/// `d <= z_i <= z_bound`, optionally only the minimal ones.
pub fn enumerate(d: &Natural, c: &[Natural], z_bound: &Natural, minimal_only: bool) -> Enumerate {
    Enumerate::new(d, c, z_bound, minimal_only, d.clone(), z_bound.clone())
}

impl Enumerate {
    fn new(
        d: &Natural,
        c: &[Natural],
        z_bound: &Natural,
        minimal_only: bool,
        first_lo: Natural,
        first_hi: Natural,
    ) -> Self {
        let req = ConstructionRequest::new(d.clone(), c.to_vec(), Vec::new());
        let done = d.is_zero() || c.iter().any(Zero::is_zero) || z_bound < d;
        Enumerate {
            req,
            bound: z_bound.clone(),
            minimal_only,
            first: (first_lo, first_hi),
            levels: Vec::new(),
            started: false,
            done,
        }
    }

    /// Index being chosen at the deepest open level.
    fn depth_index(&self) -> usize {
        self.levels.len() + 1
    }

    fn open_level(&mut self) -> Result<()> {
        let i = self.depth_index() + 1;
        let (lo, hi) = if i == 2 {
            self.first.clone()
        } else {
            (self.req.d.clone(), self.bound.clone())
        };
        let table = level_table(&self.req, i, &hi)?;
        // Start at the first multiple of d not below `lo`.
        let d = &self.req.d;
        let next = lo.div_ceil(d) * d;
        self.levels.push(Level {
            table,
            next,
            last: hi,
        });
        Ok(())
    }

    fn accepts(&self, i: usize, zi: &Natural, table: &MembershipTable) -> bool {
        gcd_condition(&self.req, i, zi)
            && table.contains(&(zi / &self.req.d))
            && !(self.minimal_only && first_violation_at(&self.req, i, zi).is_some())
    }

    fn step(&mut self) -> Result<Option<Sequence>> {
        let k = self.req.len();
        if self.done {
            return Ok(None);
        }
        if k == 1 {
            self.done = true;
            return Ok(Some(assemble(&self.req)));
        }
        if !self.started {
            self.started = true;
            self.open_level()?;
        }
        loop {
            let i = self.depth_index();
            let Some(level) = self.levels.last_mut() else {
                self.done = true;
                return Ok(None);
            };
            if level.next > level.last {
                self.levels.pop();
                if !self.levels.is_empty() {
                    self.req.z.pop();
                }
                continue;
            }
            let zi = level.next.clone();
            level.next += &self.req.d;
            let level = self.levels.last().expect("level present");
            if !self.accepts(i, &zi, &level.table) {
                continue;
            }
            self.req.z.push(zi);
            if i == k {
                let g = assemble(&self.req);
                self.req.z.pop();
                return Ok(Some(g));
            }
            self.open_level()?;
        }
    }
}

impl Iterator for Enumerate {
    type Item = Sequence;

    /// Tables that would exceed the oracle limit end the stream.
    fn next(&mut self) -> Option<Sequence> {
        match self.step() {
            Ok(g) => g,
            Err(_) => {
                self.done = true;
                None
            }
        }
    }
}

/// The same sequences as [`enumerate`] in the same order, split across
/// `z_2` values and gathered with `exec`; at most `limit` are returned.
pub fn enumerate_collect(
    d: &Natural,
    c: &[Natural],
    z_bound: &Natural,
    minimal_only: bool,
    limit: Option<usize>,
    exec: Execution,
) -> Vec<Sequence> {
    if c.is_empty() || d.is_zero() || z_bound < d {
        return enumerate(d, c, z_bound, minimal_only).take(limit.unwrap_or(usize::MAX)).collect();
    }
    let firsts: Vec<Natural> = {
        let mut v = Vec::new();
        let mut z = d.clone();
        while &z <= z_bound {
            v.push(z.clone());
            z += d;
        }
        v
    };
    let chunks = exec.map(&firsts, |z2| {
        let it = Enumerate::new(d, c, z_bound, minimal_only, z2.clone(), z2.clone());
        match limit {
            Some(n) => it.take(n).collect::<Vec<_>>(),
            None => it.collect(),
        }
    });
    let all = chunks.into_iter().flatten();
    match limit {
        Some(n) => all.take(n).collect(),
        None => all.collect(),
    }
}
