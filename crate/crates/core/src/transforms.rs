//! Contraction ρ_n, gluing extension τ_{g,m}, deletion π_n, and programs
//! built from them: the collapse to `(gcd G)`, the rebuild from a
//! z-decomposition, and the morph between two telescopic sequences.

use std::fmt;

use num_integer::Integer as _;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::num::{dec, Natural};
use crate::oracle;
use crate::seqcore::{gcd_profile, swap, Sequence};
use crate::telescopic::{Telescopic, ZDecomposition};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "lowercase")]
pub enum TransformStep {
    Rho {
        n: usize,
    },
    Tau {
        #[serde(with = "dec")]
        g: Natural,
        #[serde(with = "dec")]
        m: Natural,
    },
    Pi {
        n: usize,
    },
    Swap {
        i: usize,
        j: usize,
    },
}

impl TransformStep {
    pub fn apply(&self, g: &Sequence) -> Result<Sequence> {
        match self {
            TransformStep::Rho { n } => rho(g, *n),
            TransformStep::Tau { g: t, m } => tau(g, t, m),
            TransformStep::Pi { n } => pi(g, *n),
            TransformStep::Swap { i, j } => swap(g, *i, *j),
        }
    }
}

impl fmt::Display for TransformStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TransformStep::Rho { n } => write!(f, "ρ_{n}"),
            TransformStep::Tau { g, m } => write!(f, "τ_{{{g},{m}}}"),
            TransformStep::Pi { n } => write!(f, "π_{n}"),
            TransformStep::Swap { i, j } => write!(f, "({i} {j})"),
        }
    }
}

/// Steps in application order. `source_gcd` records the gcd the program
/// was derived for, when known; it is not serialized.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TransformProgram {
    pub steps: Vec<TransformStep>,
    pub source_gcd: Option<Natural>,
}

impl TransformProgram {
    pub fn new(steps: Vec<TransformStep>) -> Self {
        TransformProgram {
            steps,
            source_gcd: None,
        }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// `self` followed by `next`.
    pub fn then(mut self, next: TransformProgram) -> Self {
        self.steps.extend(next.steps);
        self.source_gcd = self.source_gcd.or(next.source_gcd);
        self
    }
}

/// Composition notation: the last step applied is written first.
impl fmt::Display for TransformProgram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.steps.is_empty() {
            return f.write_str("id");
        }
        for (i, step) in self.steps.iter().rev().enumerate() {
            if i > 0 {
                f.write_str("∘")?;
            }
            write!(f, "{step}")?;
        }
        Ok(())
    }
}

impl Serialize for TransformProgram {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.steps.serialize(s)
    }
}

impl<'de> Deserialize<'de> for TransformProgram {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Vec::<TransformStep>::deserialize(d).map(TransformProgram::new)
    }
}

fn check_index(g: &Sequence, n: usize, low: usize) -> Result<()> {
    if g.len() < 2 || n < low || n > g.len() {
        return Err(Error::IndexOutOfRange {
            index: n,
            len: g.len(),
        });
    }
    Ok(())
}

/// `ρ_n(G) = (G_{n-1}/c_n) × G_{n,k}`.
pub fn rho(g: &Sequence, n: usize) -> Result<Sequence> {
    check_index(g, n, 2)?;
    let p = gcd_profile(g)?;
    let c = p.c(n);
    let terms = g.terms();
    let mut out: Vec<Natural> = terms[..n - 1].iter().map(|t| t / c).collect();
    out.extend_from_slice(&terms[n..]);
    Sequence::new(out)
}

/// `ρ_2((1 2)G)`, which equals `ρ_2(G)` when both are defined: the result
/// starts with `gcd(g_1, g_2)`.
pub fn rho_first(g: &Sequence) -> Result<Sequence> {
    check_index(g, 2, 2)?;
    let terms = g.terms();
    if terms[1].is_zero() {
        return rho(g, 2);
    }
    rho(&swap(g, 1, 2)?, 2)
}

/// `τ_{t,m}(G) = (mG) × (t)`.
///
/// Coprimality is required of `m` and `t / gcd(G)`, which is the plain
/// `gcd(m, t) = 1` when `gcd(G) = 1` and makes `τ_{dt,m}(dG) = d·τ_{t,m}(G)`
/// hold for every `d`.
pub fn tau(g: &Sequence, t: &Natural, m: &Natural) -> Result<Sequence> {
    if m.is_zero() {
        return Err(Error::ZeroMultiplier);
    }
    let not_member = || Error::NotAMember {
        value: t.to_string(),
    };
    let d = g.gcd();
    let unit = if d.is_zero() {
        t.clone()
    } else {
        let (q, r) = t.div_rem(&d);
        if !r.is_zero() {
            return Err(not_member());
        }
        q
    };
    if !m.gcd(&unit).is_one() {
        return Err(Error::NotCoprime {
            g: t.to_string(),
            m: m.to_string(),
        });
    }
    if !oracle::contains(g, t)? {
        return Err(not_member());
    }
    Ok(glue(g, t, m))
}

/// `(mG) × (t)` without the membership and coprimality checks of [`tau`].
pub fn glue(g: &Sequence, t: &Natural, m: &Natural) -> Sequence {
    let mut out: Vec<Natural> = g.terms().iter().map(|x| x * m).collect();
    out.push(t.clone());
    Sequence::new(out).expect("non-empty")
}

/// `π_n(G)`: delete the `n`-th term.
pub fn pi(g: &Sequence, n: usize) -> Result<Sequence> {
    check_index(g, n, 1)?;
    let mut out = g.terms().to_vec();
    out.remove(n - 1);
    Sequence::new(out)
}

/// The program `ρ_2 ∘ … ∘ ρ_k`, taking any `G` with positive head to
/// `(gcd G)`.
pub fn collapse(g: &Sequence) -> Result<(Natural, TransformProgram)> {
    let p = gcd_profile(g)?;
    let steps = (2..=g.len()).rev().map(|n| TransformStep::Rho { n }).collect();
    Ok((
        p.gcd().clone(),
        TransformProgram {
            steps,
            source_gcd: Some(p.gcd().clone()),
        },
    ))
}

/// `τ_{z_k,c_k} ∘ … ∘ τ_{z_2,c_2}` applied to `(d)`.
pub fn rebuild(z: &ZDecomposition) -> Result<(Sequence, TransformProgram)> {
    z.validate()?;
    let steps: Vec<TransformStep> = z
        .c
        .iter()
        .zip(&z.z[1..])
        .map(|(c, zi)| TransformStep::Tau {
            g: zi.clone(),
            m: c.clone(),
        })
        .collect();
    let program = TransformProgram {
        steps,
        source_gcd: Some(z.d.clone()),
    };
    let start = Sequence::new(vec![z.d.clone()])?;
    let out = apply_program(&start, &program)?;
    Ok((out, program))
}

/// Collapse `g`, then rebuild `h`.
pub fn morph(g: &Sequence, h: &Sequence) -> Result<TransformProgram> {
    let tg = Telescopic::new(g)?;
    let th = Telescopic::new(h)?;
    if tg.gcd() != th.gcd() {
        return Err(Error::GcdMismatch {
            left: tg.gcd().to_string(),
            right: th.gcd().to_string(),
        });
    }
    let (_, down) = collapse(g)?;
    let (_, up) = rebuild(&th.decomposition())?;
    Ok(down.then(up))
}

pub fn apply_program(g: &Sequence, p: &TransformProgram) -> Result<Sequence> {
    p.steps
        .iter()
        .enumerate()
        .try_fold(g.clone(), |acc, (i, step)| annotate(i, step.apply(&acc)))
}

/// Like [`apply_program`], returning every intermediate sequence, starting
/// with `g` itself.
pub fn apply_program_traced(g: &Sequence, p: &TransformProgram) -> Result<Vec<Sequence>> {
    let mut trace = vec![g.clone()];
    for (i, step) in p.steps.iter().enumerate() {
        let next = annotate(i, step.apply(trace.last().expect("non-empty")))?;
        trace.push(next);
    }
    Ok(trace)
}

fn annotate(i: usize, r: Result<Sequence>) -> Result<Sequence> {
    r.map_err(|e| Error::Step {
        index: i + 1,
        source: Box::new(e),
    })
}
