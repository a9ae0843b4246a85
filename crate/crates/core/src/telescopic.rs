//! Telescopic sequences: the defining test, the z-decomposition, unique
//! representations, and the closed forms for free numerical semigroups.

use num_bigint::Sign;
use num_integer::Integer as _;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::num::{dec, dec_int, dec_vec, Integer, Natural};
use crate::oracle;
use crate::poly::IntPolynomial;
use crate::seqcore::{gcd_profile, GcdProfile, Sequence};

/// Default cap on how many elements a closed-form Apéry set may have.
pub const DEFAULT_APERY_CAP: usize = 1_000_000;

/// The least `j >= 2` with `c_j g_j ∉ ⟨G_{j-1}⟩`, or `None` when `G` is
/// telescopic. Memberships are decided by the brute-force oracle.
pub fn telescopic_witness(g: &Sequence) -> Result<Option<usize>> {
    let p = gcd_profile(g)?;
    let terms = g.terms();
    for j in 2..=g.len() {
        let target = p.c(j) * &terms[j - 1];
        if !oracle::contains_terms(&terms[..j - 1], &target)? {
            return Ok(Some(j));
        }
    }
    Ok(None)
}

pub fn is_telescopic(g: &Sequence) -> Result<bool> {
    Ok(telescopic_witness(g)?.is_none())
}

/// `(d, c, z)` with `g_i = z_i C_{i,k}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZDecomposition {
    #[serde(with = "dec")]
    pub d: Natural,
    /// `(c_2, …, c_k)`.
    #[serde(with = "dec_vec")]
    pub c: Vec<Natural>,
    /// `(z_1, …, z_k)` with `z_1 = d`.
    #[serde(with = "dec_vec")]
    pub z: Vec<Natural>,
}

impl ZDecomposition {
    pub fn len(&self) -> usize {
        self.z.len()
    }

    pub fn is_empty(&self) -> bool {
        self.z.is_empty()
    }

    /// `C_{m,n}` over this decomposition's c-values (1-based, `m <= n`).
    pub fn c_product(&self, m: usize, n: usize) -> Natural {
        self.c[m - 1..n - 1]
            .iter()
            .fold(Natural::one(), |acc, c| acc * c)
    }

    /// Checks the three conditions characterizing telescopic data:
    /// `d | z_i`, `gcd(z_i/d, c_i) = 1`, and `z_i ∈ ⟨z_j C_{j,i-1} : j < i⟩`.
    pub fn validate(&self) -> Result<()> {
        let bad = |reason: String| Err(Error::InvalidDecomposition { reason });
        if self.d.is_zero() {
            return bad("d must be positive".into());
        }
        if self.z.len() != self.c.len() + 1 {
            return bad(format!(
                "{} z-values for {} c-values",
                self.z.len(),
                self.c.len()
            ));
        }
        if self.z[0] != self.d {
            return bad("z_1 must equal d".into());
        }
        for (j, c) in self.c.iter().enumerate() {
            if c.is_zero() {
                return bad(format!("c_{} is zero", j + 2));
            }
        }
        for i in 2..=self.len() {
            let zi = &self.z[i - 1];
            let (q, r) = zi.div_rem(&self.d);
            if !r.is_zero() {
                return bad(format!("z_{i} is not a multiple of d"));
            }
            if !q.gcd(&self.c[i - 2]).is_one() {
                return bad(format!("gcd(z_{i}/d, c_{i}) != 1"));
            }
            let gens: Vec<Natural> = (1..i)
                .map(|j| &self.z[j - 1] * self.c_product(j, i - 1))
                .collect();
            if !oracle::contains_terms(&gens, zi)? {
                return bad(format!("z_{i} is not in the monoid of earlier scaled z-values"));
            }
        }
        Ok(())
    }

    /// `g_i = z_i C_{i,k}`.
    pub fn reconstruct(&self) -> Sequence {
        let k = self.len();
        Sequence::new(
            (1..=k)
                .map(|i| &self.z[i - 1] * self.c_product(i, k))
                .collect(),
        )
        .expect("decomposition has at least one z-value")
    }
}

/// `n = n_1 g_1 + Σ_{j>=2} n_j g_j` with `0 <= n_j < c_j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Representation {
    #[serde(with = "dec_int")]
    pub n1: Integer,
    #[serde(with = "dec_vec")]
    pub coeffs: Vec<Natural>,
    #[serde(skip)]
    pub value: Integer,
}

/// A sequence verified (once) to be telescopic with a positive head,
/// together with its profile and z-values.
#[derive(Debug, Clone)]
pub struct Telescopic {
    seq: Sequence,
    profile: GcdProfile,
    z: Vec<Natural>,
    /// `(z_j/d)^{-1} mod c_j` for `j = 2..=k`.
    inverses: Vec<Integer>,
}

impl Telescopic {
    pub fn new(g: &Sequence) -> Result<Self> {
        if let Some(witness) = telescopic_witness(g)? {
            return Err(Error::NotTelescopic { witness });
        }
        Ok(Self::assume(g.clone()))
    }

    /// Wraps a sequence already known to be telescopic with `g_1 > 0`.
    pub(crate) fn assume(seq: Sequence) -> Self {
        let profile = gcd_profile(&seq).expect("head is positive");
        let k = seq.len();
        let z: Vec<Natural> = (1..=k)
            .map(|i| &seq.terms()[i - 1] / profile.c_product(i, k).expect("in range"))
            .collect();
        let d = profile.gcd().clone();
        let inverses = (2..=k)
            .map(|j| {
                let c = Integer::from(profile.c(j).clone());
                let unit = Integer::from(&z[j - 1] / &d);
                let e = unit.extended_gcd(&c);
                debug_assert!(e.gcd.is_one());
                e.x.mod_floor(&c)
            })
            .collect();
        Telescopic {
            seq,
            profile,
            z,
            inverses,
        }
    }

    pub fn sequence(&self) -> &Sequence {
        &self.seq
    }

    pub fn profile(&self) -> &GcdProfile {
        &self.profile
    }

    pub fn gcd(&self) -> &Natural {
        self.profile.gcd()
    }

    pub fn decomposition(&self) -> ZDecomposition {
        ZDecomposition {
            d: self.gcd().clone(),
            c: self.profile.c_values().to_vec(),
            z: self.z.clone(),
        }
    }

    /// The unique representation of a multiple of `gcd(G)`.
    ///
    /// Coefficients are solved from index `k` down: with `r` the remainder
    /// still to be represented (a multiple of `d_j`), `n_j` is the residue
    /// of `(r/d_j)·(z_j/d)^{-1}` mod `c_j`.
    pub fn represent(&self, n: &Integer) -> Result<Representation> {
        let d = Integer::from(self.gcd().clone());
        if !n.mod_floor(&d).is_zero() {
            return Err(Error::NotMultipleOfGcd {
                value: n.to_string(),
                gcd: d.to_string(),
            });
        }
        let k = self.seq.len();
        let terms = self.seq.terms();
        let mut rest = n.clone();
        let mut coeffs = vec![Natural::zero(); k - 1];
        for j in (2..=k).rev() {
            let c = Integer::from(self.profile.c(j).clone());
            if c.is_one() {
                continue;
            }
            let dj = Integer::from(self.profile.d(j).clone());
            let nj = ((&rest / &dj) * &self.inverses[j - 2]).mod_floor(&c);
            rest -= &nj * Integer::from(terms[j - 1].clone());
            coeffs[j - 2] = nj.to_biguint().expect("residue is non-negative");
        }
        let g1 = Integer::from(terms[0].clone());
        debug_assert!(rest.mod_floor(&g1).is_zero());
        Ok(Representation {
            n1: rest / g1,
            coeffs,
            value: n.clone(),
        })
    }

    /// Membership through the sign of `n_1`; non-multiples of the gcd are
    /// never members.
    pub fn contains(&self, n: &Integer) -> bool {
        match self.represent(n) {
            Ok(r) => r.n1.sign() != Sign::Minus,
            Err(_) => false,
        }
    }

    fn require_unit_gcd(&self) -> Result<()> {
        if !self.gcd().is_one() {
            return Err(Error::NonUnitGcd {
                gcd: self.gcd().to_string(),
            });
        }
        Ok(())
    }

    /// Size of the coefficient box `Π c_j`, checked against `cap`.
    fn box_size(&self, cap: usize) -> Result<(usize, Vec<usize>)> {
        let size = self.profile.c_product(1, self.seq.len())?;
        match size.to_usize() {
            Some(s) if s <= cap => {}
            _ => {
                return Err(Error::SizeCapExceeded {
                    size: size.to_string(),
                    cap,
                })
            }
        }
        let radices = self
            .profile
            .c_values()
            .iter()
            .map(|c| c.to_usize().expect("bounded by box size"))
            .collect();
        Ok((size.to_usize().unwrap_or(0), radices))
    }

    /// `Σ_{j>=2} n_j g_j` for the `index`-th point of the coefficient box.
    fn box_value(&self, radices: &[usize], mut index: usize) -> Natural {
        let terms = self.seq.terms();
        let mut value = Natural::zero();
        for (j, &c) in radices.iter().enumerate() {
            let digit = index % c;
            index /= c;
            if digit > 0 {
                value += &terms[j + 1] * digit;
            }
        }
        value
    }

    /// `Ap(S; g_1)` indexed by residue mod `g_1`.
    pub fn apery(&self, cap: usize, exec: Execution) -> Result<Vec<Natural>> {
        self.require_unit_gcd()?;
        let (size, radices) = self.box_size(cap)?;
        let values = exec.map_range(size, |i| self.box_value(&radices, i));
        let g1 = self.seq.head();
        let mut slots: Vec<Option<Natural>> = vec![None; size];
        for v in values {
            let r = (&v % g1).to_usize().expect("residue below g_1");
            if slots[r].replace(v).is_some() {
                return Err(Error::InvalidApery {
                    reason: format!("two box points share residue {r}"),
                });
            }
        }
        Ok(slots.into_iter().map(|s| s.expect("one value per residue")).collect())
    }

    /// `F = -g_1 + Σ (c_j - 1) g_j`.
    pub fn frobenius(&self) -> Result<Integer> {
        self.require_unit_gcd()?;
        let terms = self.seq.terms();
        let mut f = -Integer::from(terms[0].clone());
        for j in 2..=terms.len() {
            let c = self.profile.c(j);
            f += Integer::from((c - 1u32) * &terms[j - 1]);
        }
        Ok(f)
    }

    /// `g = (1 - g_1 + Σ (c_j - 1) g_j) / 2`.
    pub fn genus(&self) -> Result<Natural> {
        let twice: Integer = self.frobenius()? + 1;
        let (q, r) = twice.div_rem(&Integer::from(2));
        debug_assert!(r.is_zero());
        Ok(q.to_biguint().expect("genus is non-negative"))
    }

    /// Both sides of the explicit gap identity for `f`: the left from the
    /// oracle's gap list, the right from the nested sum over the box.
    pub fn gap_identity(
        &self,
        f: &IntPolynomial,
        cap: usize,
        exec: Execution,
    ) -> Result<(Integer, Integer)> {
        self.require_unit_gcd()?;
        let (size, radices) = self.box_size(cap)?;
        let summary = oracle::gaps(&self.seq)?;
        let g1 = Integer::from(self.seq.head().clone());
        let lhs = exec.sum(&summary.gaps, |n| {
            let n = Integer::from(n.clone());
            f.eval(&(&n + &g1)) - f.eval(&n)
        });
        let nested = exec.sum_range(size, |i| f.eval(&Integer::from(self.box_value(&radices, i))));
        let rhs = nested - oracle::sum_below(f, self.seq.head(), exec)?;
        Ok((lhs, rhs))
    }
}

pub fn z_decompose(g: &Sequence) -> Result<ZDecomposition> {
    Ok(Telescopic::new(g)?.decomposition())
}

pub fn represent(g: &Sequence, n: &Integer) -> Result<Representation> {
    Telescopic::new(g)?.represent(n)
}

pub fn contains_fast(g: &Sequence, n: &Integer) -> Result<bool> {
    Ok(Telescopic::new(g)?.contains(n))
}

pub fn apery_closed(g: &Sequence) -> Result<Vec<Natural>> {
    Telescopic::new(g)?.apery(DEFAULT_APERY_CAP, Execution::default())
}

pub fn frobenius_closed(g: &Sequence) -> Result<Integer> {
    Telescopic::new(g)?.frobenius()
}

pub fn genus_closed(g: &Sequence) -> Result<Natural> {
    Telescopic::new(g)?.genus()
}

pub fn gap_identity_check(g: &Sequence, f: &IntPolynomial) -> Result<(Integer, Integer)> {
    Telescopic::new(g)?.gap_identity(f, DEFAULT_APERY_CAP, Execution::default())
}
