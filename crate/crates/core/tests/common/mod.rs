#![allow(dead_code)]

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use netcert::net_geometry::MultiplicityProfile;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random profile satisfying the pair count `m·C(d,2) = Σ t_r·C(r,2)`:
/// multiple points are drawn while they fit, the rest are double points.
pub fn random_consistent_profile(rng: &mut ChaCha8Rng) -> MultiplicityProfile {
    let m: u32 = rng.gen_range(3..=9);
    let d: u32 = rng.gen_range(3..=12);
    let mut remaining = (m * d * (d - 1) / 2) as u64;
    let mut pairs = Vec::new();
    for _ in 0..rng.gen_range(0..=4) {
        let r: u32 = rng.gen_range(3..=d);
        let cost = (r * (r - 1) / 2) as u64;
        if cost > remaining {
            continue;
        }
        let count = rng.gen_range(1..=remaining / cost);
        remaining -= count * cost;
        pairs.push((r, count));
    }
    pairs.push((2, remaining));
    let mut merged = std::collections::BTreeMap::new();
    for (r, c) in pairs {
        *merged.entry(r).or_insert(0u64) += c;
    }
    MultiplicityProfile::new(m, d, merged).unwrap()
}

pub fn hesse_profile() -> MultiplicityProfile {
    MultiplicityProfile::from_pairs(4, 3, &[(2, 12)]).unwrap()
}

pub fn deleted_hesse_profile() -> MultiplicityProfile {
    MultiplicityProfile::from_pairs(3, 3, &[(2, 9)]).unwrap()
}

pub fn fermat3_profile() -> MultiplicityProfile {
    MultiplicityProfile::from_pairs(3, 3, &[(3, 3)]).unwrap()
}

pub fn primes_up_to(limit: u64) -> Vec<u64> {
    (2..=limit).filter(|&n| netcert::exact_arith::is_prime(n)).collect()
}

pub fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|r| n % r == 0).collect()
}
