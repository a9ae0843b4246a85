//! Closed forms checked against the brute-force oracle, for one sequence or
//! a whole corpus.

use num_traits::{One, ToPrimitive};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::num::{Integer, Natural};
use crate::oracle::{self, MembershipTable};
use crate::poly::IntPolynomial;
use crate::seqcore::Sequence;
use crate::telescopic::Telescopic;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub pass: bool,
    /// Closed-form side.
    pub closed: String,
    /// Oracle side.
    pub oracle: String,
}

impl Check {
    fn new(name: &'static str, closed: impl ToString, oracle: impl ToString) -> Self {
        let (closed, oracle) = (closed.to_string(), oracle.to_string());
        Check {
            name,
            pass: closed == oracle,
            closed,
            oracle,
        }
    }
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    /// Test function for the two sum identities.
    pub poly: IntPolynomial,
    /// Modulus for the oracle-side identity; `g_1` when `None`.
    pub t: Option<Natural>,
    pub apery_cap: usize,
    pub exec: Execution,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            poly: IntPolynomial::monomial(1),
            t: None,
            apery_cap: crate::telescopic::DEFAULT_APERY_CAP,
            exec: Execution::default(),
        }
    }
}

fn join(v: &[Natural]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

fn pair((a, b): (Integer, Integer)) -> String {
    format!("{a}={b}")
}

/// Runs every check on a telescopic gcd-1 sequence: Apéry set, Frobenius
/// number, genus, symmetry, fast membership on `0..=F+2g_1`, and both sum
/// identities (reported as `lhs=rhs` strings, passing when equal).
pub fn verify(g: &Sequence, opts: &VerifyOptions) -> Result<Vec<Check>> {
    let t = Telescopic::new(g)?;
    if !t.gcd().is_one() {
        return Err(Error::NonUnitGcd {
            gcd: t.gcd().to_string(),
        });
    }
    let exec = opts.exec;
    let summary = oracle::gaps(g)?;
    let f = t.frobenius()?;
    let genus = t.genus()?;
    let mut checks = vec![
        Check::new(
            "apery",
            join(&t.apery(opts.apery_cap, exec)?),
            join(&oracle::apery_bf(g, g.head())?),
        ),
        Check::new("frobenius", &f, &summary.frobenius),
        Check::new("genus", &genus, &summary.genus),
        Check::new("symmetry", &f, Integer::from(genus) * 2 - 1),
    ];

    let top: Integer = &f + Integer::from(g.head().clone()) * 2;
    let top = top.to_u64().unwrap_or(0);
    let table = MembershipTable::new(g, &Natural::from(top))?;
    let disagreements = exec
        .map_range(top as usize + 1, |n| {
            t.contains(&Integer::from(n)) != table.contains(&Natural::from(n))
        })
        .into_iter()
        .filter(|&x| x)
        .count();
    checks.push(Check {
        name: "membership",
        pass: disagreements == 0,
        closed: format!("{disagreements} disagreements on 0..={top}"),
        oracle: "0 disagreements".into(),
    });

    let modulus = opts.t.clone().unwrap_or_else(|| g.head().clone());
    let (l, r) = oracle::tuenter_check_with(g, &modulus, &opts.poly, exec)?;
    checks.push(Check {
        name: "tuenter",
        pass: l == r,
        closed: pair((l.clone(), r.clone())),
        oracle: pair((l.clone(), l)),
    });
    let (l, r) = t.gap_identity(&opts.poly, opts.apery_cap, exec)?;
    checks.push(Check {
        name: "gap_identity",
        pass: l == r,
        closed: pair((l.clone(), r)),
        oracle: pair((l.clone(), l)),
    });
    Ok(checks)
}

/// [`verify`] for every sequence, fanned out across the corpus with
/// `opts.exec`; each sequence is then checked sequentially.
pub fn audit(corpus: &[Sequence], opts: &VerifyOptions) -> Vec<Result<Vec<Check>>> {
    let inner = VerifyOptions {
        exec: Execution::Sequential,
        ..opts.clone()
    };
    opts.exec.map(corpus, |g| verify(g, &inner))
}
