//! JSON views of verdicts, witnesses and refutations.
//!
//! Integers are JSON numbers when they fit in 64 bits and decimal strings
//! otherwise, so no reader silently loses precision.

use ibn_core::monoid::Refutation;
use ibn_core::{IbnVerdict, MonoidVector, RewriteTrace, SufficiencyResult, Witness};
use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

pub fn uint(n: &BigUint) -> Value {
    n.to_u64()
        .map_or_else(|| Value::String(n.to_string()), Value::from)
}

pub fn int(n: &BigInt) -> Value {
    n.to_i64()
        .map_or_else(|| Value::String(n.to_string()), Value::from)
}

pub fn vector(x: &MonoidVector) -> Value {
    let map: Map<String, Value> = x.iter().map(|(v, k)| (v.to_string(), uint(k))).collect();
    Value::Object(map)
}

fn trace(t: &RewriteTrace) -> Value {
    json!(t.steps)
}

pub fn witness(w: &Witness) -> Value {
    json!({
        "m": uint(&w.m),
        "n": uint(&w.n),
        "d": uint(&w.d),
        "regular": w.regular,
        "m_vec": w.m_vec.iter().map(int).collect::<Vec<_>>(),
        "k": w.k.iter().map(uint).collect::<Vec<_>>(),
        "k_prime": w.k_prime.iter().map(uint).collect::<Vec<_>>(),
        "sigma": trace(&w.sigma),
        "sigma_prime": trace(&w.sigma_prime),
        "gamma": vector(&w.gamma),
    })
}

pub fn verdict(v: &IbnVerdict) -> Value {
    let mut out = json!({
        "has_ibn": v.has_ibn,
        "rank_M": v.rank_m,
        "rank_aug": v.rank_aug,
    });
    if let Some(w) = &v.witness {
        out["witness"] = witness(w);
    }
    out
}

pub fn refutation(r: Option<&Refutation>) -> Value {
    match r {
        None => json!({ "found": false }),
        Some(r) => json!({
            "found": true,
            "m": r.m,
            "n": r.n,
            "left": trace(&r.left),
            "right": trace(&r.right),
            "common": vector(&r.common),
        }),
    }
}

pub fn classification(c: &SufficiencyResult) -> Value {
    serde_json::to_value(c).expect("classifications serialize")
}
