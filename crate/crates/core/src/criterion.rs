//! The rank criterion for Invariant Basis Number and constructive witnesses
//! for its failure.
//!
//! With vertices ordered regular-first, `L_K(E)` has IBN exactly when
//! `rank(Aᵗ − J) < rank([Aᵗ − J | b])`. When the ranks agree, an integer
//! solution of `(Aᵗ − J)·x = d·b` with `d > 0` yields relation counts `k`, `k′`
//! whose greedy schedules rewrite `m·Σv` and `n·Σv` (with `m − n = d`) to the
//! same element of the free monoid. The field never enters: only ranks over
//! the rationals matter.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::linalg::{criterion_system, rank, solve_particular, CriterionSystem, RatVector};
use crate::monoid::{execute_counts, MonoidVector, RewriteTrace};

/// Evidence that `m·Σv = n·Σv` in the graph monoid for some `m > n ≥ 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub m: BigUint,
    pub n: BigUint,
    /// `m − n`.
    pub d: BigUint,
    /// Regular vertices indexing `m_vec`, `k` and `k_prime`, in canonical order.
    pub regular: Vec<VertexId>,
    /// `k′_j − k_j`: a solution of the criterion system scaled by `d`.
    pub m_vec: Vec<BigInt>,
    /// Relation counts applied to `m·Σv`.
    pub k: Vec<BigUint>,
    /// Relation counts applied to `n·Σv`.
    pub k_prime: Vec<BigUint>,
    /// Schedule replayed from `m·Σv`.
    pub sigma: RewriteTrace,
    /// Schedule replayed from `n·Σv`.
    pub sigma_prime: RewriteTrace,
    /// Common result of both schedules.
    pub gamma: MonoidVector,
    /// How far `n` had to be raised above `max(1, max |m_j|)`.
    pub slack: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IbnVerdict {
    pub has_ibn: bool,
    /// `rank(Aᵗ − J)`.
    pub rank_m: usize,
    /// `rank([Aᵗ − J | b])`.
    pub rank_aug: usize,
    /// Present exactly when `has_ibn` is false; always verified.
    pub witness: Option<Witness>,
}

struct Ranks {
    system: CriterionSystem,
    rank_m: usize,
    rank_aug: usize,
}

fn ranks(g: &Graph) -> Result<Ranks> {
    let system = criterion_system(g)?;
    let rank_m = rank(&system.matrix);
    let rank_aug = rank(&system.augmented());
    debug_assert!(rank_aug == rank_m || rank_aug == rank_m + 1);
    Ok(Ranks {
        system,
        rank_m,
        rank_aug,
    })
}

/// `(rank(M), rank([M | b]))` alone: the verdict without building a witness.
pub fn criterion_ranks(g: &Graph) -> Result<(usize, usize)> {
    let r = ranks(g)?;
    Ok((r.rank_m, r.rank_aug))
}

/// Decides IBN; a negative verdict carries a witness that has been replayed.
pub fn decide_ibn(g: &Graph) -> Result<IbnVerdict> {
    let Ranks {
        system,
        rank_m,
        rank_aug,
    } = ranks(g)?;
    let has_ibn = rank_m < rank_aug;
    let witness = if has_ibn {
        None
    } else {
        let w = witness_from_system(g, &system, &BigUint::from(1u32))?;
        if !verify_witness(g, &w)? {
            return Err(Error::WitnessConstructionFailed(
                "constructed witness failed replay".into(),
            ));
        }
        Some(w)
    };
    Ok(IbnVerdict {
        has_ibn,
        rank_m,
        rank_aug,
        witness,
    })
}

/// Builds a witness for a graph lacking IBN, with the smallest possible `d`.
pub fn construct_witness(g: &Graph) -> Result<Witness> {
    construct_scaled_witness(g, &BigUint::from(1u32))
}

/// As [`construct_witness`], with the rational solution scaled by `scale · d_min`.
pub fn construct_scaled_witness(g: &Graph, scale: &BigUint) -> Result<Witness> {
    if scale.is_zero() {
        return Err(Error::BadCount(0));
    }
    let r = ranks(g)?;
    if r.rank_m < r.rank_aug {
        return Err(Error::NotApplicable);
    }
    witness_from_system(g, &r.system, scale)
}

fn to_count(x: &BigUint) -> Result<u64> {
    x.to_u64().ok_or_else(|| {
        Error::WitnessConstructionFailed(format!("relation count {x} does not fit in 64 bits"))
    })
}

fn witness_from_system(g: &Graph, system: &CriterionSystem, scale: &BigUint) -> Result<Witness> {
    let x: RatVector = solve_particular(&system.matrix, &system.rhs)?.ok_or_else(|| {
        Error::WitnessConstructionFailed("criterion system is inconsistent".into())
    })?;
    let d = x.denominator_lcm() * BigInt::from(scale.clone());
    let scaled = x
        .scaled_to_integers(&d)
        .expect("denominator lcm clears every denominator");
    let z = system.regular_count();
    if scaled[z..].iter().any(|v| !v.is_zero()) {
        return Err(Error::WitnessConstructionFailed(
            "particular solution is nonzero on a sink coordinate".into(),
        ));
    }
    let m_vec = scaled[..z].to_vec();
    let regular: Vec<VertexId> = system.order.order[..z]
        .iter()
        .map(|&v| g.vertex(v).clone())
        .collect();
    let d = d.to_biguint().expect("d is positive");

    let (k_prime, k): (Vec<BigUint>, Vec<BigUint>) = m_vec.iter().map(split_counts).unzip();
    let count_map = |ks: &[BigUint]| -> Result<BTreeMap<VertexId, u64>> {
        regular
            .iter()
            .cloned()
            .zip(ks)
            .map(|(v, k)| Ok((v, to_count(k)?)))
            .collect()
    };
    let counts = count_map(&k)?;
    let counts_prime = count_map(&k_prime)?;

    let base = m_vec
        .iter()
        .map(|m| m.magnitude().clone())
        .max()
        .unwrap_or_default()
        .max(BigUint::from(1u32));
    let h = g.vertex_count() as u64;
    let bound = BigUint::from(10u32) * &d * BigUint::from(h);
    let mut slack = 0u64;
    loop {
        let n = &base + BigUint::from(slack);
        let m = &n + &d;
        let left = execute_counts(g, &MonoidVector::uniform(g, m.clone()), &counts)?;
        let right = execute_counts(g, &MonoidVector::uniform(g, n.clone()), &counts_prime)?;
        if let (Some((gamma, sigma)), Some((gamma_prime, sigma_prime))) = (left, right) {
            if gamma == gamma_prime {
                return Ok(Witness {
                    m,
                    n,
                    d,
                    regular,
                    m_vec,
                    k,
                    k_prime,
                    sigma,
                    sigma_prime,
                    gamma,
                    slack,
                });
            }
        }
        slack += 1;
        if BigUint::from(slack) > bound {
            return Err(Error::WitnessConstructionFailed(format!(
                "no schedule found with slack up to {bound}"
            )));
        }
    }
}

/// Replays both schedules of `w` and checks that they meet.
///
/// Only the traces, `m`, `n` and `gamma` matter for the answer; the remaining
/// fields are checked for shape. A step that cannot be applied makes the
/// witness invalid rather than malformed.
pub fn verify_witness(g: &Graph, w: &Witness) -> Result<bool> {
    let z = w.regular.len();
    if w.m_vec.len() != z || w.k.len() != z || w.k_prime.len() != z {
        return Err(Error::MalformedWitness(
            "count vectors do not match the regular vertex list".into(),
        ));
    }
    for v in w
        .regular
        .iter()
        .chain(&w.sigma.steps)
        .chain(&w.sigma_prime.steps)
        .chain(w.gamma.iter().map(|(v, _)| v))
    {
        if !g.has_vertex(v.as_str()) {
            return Err(Error::MalformedWitness(format!("unknown vertex `{v}`")));
        }
    }
    if w.n.is_zero() || w.m <= w.n {
        return Ok(false);
    }
    let replay = |trace: &RewriteTrace, k: &BigUint| -> Result<Option<MonoidVector>> {
        match trace.replay(g, &MonoidVector::uniform(g, k.clone())) {
            Ok(x) => Ok(Some(x)),
            Err(Error::NotRegular(_) | Error::InsufficientCoefficient(_)) => Ok(None),
            Err(e) => Err(e),
        }
    };
    let (Some(left), Some(right)) = (replay(&w.sigma, &w.m)?, replay(&w.sigma_prime, &w.n)?) else {
        return Ok(false);
    };
    Ok(left == right && left == w.gamma)
}

/// `(k′_j, k_j) = (max(m_j, 0), max(−m_j, 0))`.
pub fn split_counts(m: &BigInt) -> (BigUint, BigUint) {
    match m.sign() {
        Sign::Plus => (m.magnitude().clone(), BigUint::zero()),
        Sign::Minus => (BigUint::zero(), m.magnitude().clone()),
        Sign::NoSign => (BigUint::zero(), BigUint::zero()),
    }
}
