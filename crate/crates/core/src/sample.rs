//! Random telescopic instances: uniform z-sampling within bounds, and
//! deliberate violations of the minimality conditions.

use num_traits::ToPrimitive;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::construct::{gcd_condition, level_table, validate_minimal, ConstructionRequest};
use crate::num::Natural;

/// Bounds for [`sample_request`]: length `1..=k_max`, `c_j ∈ 1..=c_max`,
/// `z_i ∈ [d, z_max]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampleParams {
    pub d: u64,
    pub k_max: usize,
    pub c_max: u64,
    pub z_max: u64,
}

impl Default for SampleParams {
    fn default() -> Self {
        SampleParams {
            d: 1,
            k_max: 5,
            c_max: 6,
            z_max: 50,
        }
    }
}

fn try_sample<R: Rng + ?Sized>(rng: &mut R, p: &SampleParams) -> Option<ConstructionRequest> {
    let k = rng.gen_range(1..=p.k_max.max(1));
    let c: Vec<Natural> = (1..k).map(|_| Natural::from(rng.gen_range(1..=p.c_max.max(1)))).collect();
    let mut req = ConstructionRequest::new(Natural::from(p.d), c, Vec::new());
    let top = Natural::from(p.z_max);
    for i in 2..=k {
        let table = level_table(&req, i, &top).ok()?;
        let candidates: Vec<u64> = (1..=p.z_max / p.d)
            .map(|t| t * p.d)
            .filter(|&z| {
                let z = Natural::from(z);
                gcd_condition(&req, i, &z) && table.contains(&(z / p.d))
            })
            .collect();
        req.z.push(Natural::from(*candidates.choose(rng)?));
    }
    Some(req)
}

/// A valid construction request drawn within `p`: each `z_i` is uniform
/// among the values meeting both conditions given the earlier choices.
///
/// # Panics
///
/// Panics if `p.d` is zero or exceeds `p.z_max`.
pub fn sample_request<R: Rng + ?Sized>(rng: &mut R, p: &SampleParams) -> ConstructionRequest {
    assert!(p.d >= 1 && p.d <= p.z_max, "need 1 <= d <= z_max");
    loop {
        if let Some(req) = try_sample(rng, p) {
            return req;
        }
    }
}

/// Modifies a request so that it still builds a telescopic sequence but
/// fails the minimality conditions, by setting some `c_j = 1` or
/// `z_j = z_i C_{i,j-1}`. `None` if a few random attempts all fail.
pub fn inject_redundancy<R: Rng + ?Sized>(
    rng: &mut R,
    req: &ConstructionRequest,
) -> Option<ConstructionRequest> {
    let k = req.len();
    if k < 2 {
        return None;
    }
    for _ in 0..16 {
        let mut out = req.clone();
        let j = rng.gen_range(2..=k);
        if rng.gen_bool(0.5) {
            out.c[j - 2] = Natural::from(1u32);
        } else {
            let i = rng.gen_range(1..j);
            out.z[j - 2] = out.z(i) * out.c_product(i, j - 1);
        }
        if let Ok(Some(_)) = validate_minimal(&out) {
            return Some(out);
        }
    }
    None
}

/// Largest term of the built sequence, as a cheap size measure.
pub fn max_term(req: &ConstructionRequest) -> Option<u64> {
    (1..=req.len())
        .map(|i| (req.z(i) * req.c_product(i, req.len())).to_u64())
        .try_fold(0u64, |m, v| v.map(|v| m.max(v)))
}
