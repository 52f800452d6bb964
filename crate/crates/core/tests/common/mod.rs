#![allow(dead_code)]

//! Shared test support: a seeded generator of random admissible module
//! data.
//!
//! The tables are built to satisfy rank consistency by construction (each
//! point's Jordan blocks tile the multiset of Hodge slots prescribed by
//! h), and the degrees δ are chosen so that the H¹ package is defined and
//! nonnegative: the identity Σ_p γ^p = 0 pins the total Σ_p h¹(p) to
//! Σ_i dim φ_{x_i} − n, which is distributed randomly above the forced
//! unipotent floor.

use std::collections::BTreeMap;

use rand::Rng;

use hodgemc::angle::Angle;
use hodgemc::invariants::{HodgeTable, ModuleData, PointLocation};

pub const MAX_DENOMINATOR: i64 = 12;

pub fn random_angle(rng: &mut impl Rng) -> Angle {
    let den = rng.gen_range(1..=MAX_DENOMINATOR);
    let num = rng.gen_range(0..den.max(1));
    Angle::new(num, den).unwrap()
}

pub fn random_nonzero_angle(rng: &mut impl Rng) -> Angle {
    loop {
        let a = random_angle(rng);
        if !a.is_zero() {
            return a;
        }
    }
}

/// Random table consistent with `h`: partitions the slot multiset
/// {p with multiplicity h(p)} into downward runs, each run becoming one
/// Jordan block with a random eigenvalue angle.
pub fn random_table(rng: &mut impl Rng, h: &BTreeMap<i32, u64>) -> HodgeTable {
    let mut slots: BTreeMap<i32, u64> = h.clone();
    let mut table = HodgeTable::new();
    while let Some(top) = pick_slot(rng, &slots) {
        take_slot(&mut slots, top);
        let mut len = 1u32;
        while slots.get(&(top - len as i32)).copied().unwrap_or(0) > 0 && rng.gen_bool(0.5) {
            take_slot(&mut slots, top - len as i32);
            len += 1;
        }
        table.add(random_angle(rng), len - 1, top, 1);
    }
    table
}

fn pick_slot(rng: &mut impl Rng, slots: &BTreeMap<i32, u64>) -> Option<i32> {
    let total: u64 = slots.values().sum();
    if total == 0 {
        return None;
    }
    let mut k = rng.gen_range(0..total);
    for (p, m) in slots {
        if k < *m {
            return Some(*p);
        }
        k -= m;
    }
    unreachable!()
}

fn take_slot(slots: &mut BTreeMap<i32, u64>, p: i32) {
    let m = slots.get_mut(&p).unwrap();
    *m -= 1;
    if *m == 0 {
        slots.remove(&p);
    }
}

/// Random Hodge numbers: rank `n` spread over p ∈ {0, 1, 2}.
pub fn random_h(rng: &mut impl Rng, n: u64) -> BTreeMap<i32, u64> {
    let mut h = BTreeMap::new();
    for _ in 0..n {
        *h.entry(rng.gen_range(0..3)).or_insert(0) += 1;
    }
    h
}

/// Builds degrees δ so that h¹(p) = target(p) ≥ floor(p), where floor is
/// the unipotent prim correction at ∞ and the total is forced by the
/// vanishing-cycle budget.  Returns None when the data cannot carry a
/// nonnegative H¹ package.
pub fn fit_delta(
    rng: &mut impl Rng,
    points: &BTreeMap<PointLocation, HodgeTable>,
    h: &BTreeMap<i32, u64>,
) -> Option<BTreeMap<i32, i64>> {
    let n: u64 = h.values().sum();
    let zero = Angle::zero();
    let inf = &points[&PointLocation::Infinity];

    let lo = h.keys().next().copied().unwrap() - 3;
    let hi = h.keys().next_back().copied().unwrap() + 3;

    let mu_sum = |p: i32| -> u64 {
        points
            .iter()
            .filter(|(loc, _)| **loc != PointLocation::Infinity)
            .map(|(_, t)| {
                let mut s = 0;
                for g in t.angles() {
                    if g.is_zero() {
                        s += t.mu_total(&g, p);
                    } else {
                        s += t.mu_total(&g, p - 1);
                    }
                }
                s
            })
            .sum()
    };

    let budget: i64 =
        (lo..=hi).map(|p| mu_sum(p) as i64).sum::<i64>() - n as i64;
    let floor: Vec<u64> = (lo..=hi).map(|p| inf.nu_prim(&zero, p - 1)).collect();
    let floor_total: i64 = floor.iter().map(|f| *f as i64).sum();
    if budget < floor_total {
        return None;
    }

    // distribute the slack above the floor
    let mut target = floor;
    let mut slack = (budget - floor_total) as u64;
    while slack > 0 {
        let idx = rng.gen_range(0..target.len());
        target[idx] += 1;
        slack -= 1;
    }

    let mut delta = BTreeMap::new();
    let mut acc: i64 = 0;
    for (idx, p) in (lo..=hi).enumerate() {
        let gamma_p = mu_sum(p) as i64 - h.get(&p).copied().unwrap_or(0) as i64
            - target[idx] as i64;
        acc += gamma_p;
        if acc != 0 {
            delta.insert(p, acc);
        }
    }
    // δ must return to zero outside the window
    debug_assert_eq!(acc, 0);
    Some(delta)
}

/// Random admissible module data: rank ≤ 5, at most 3 finite points, angle
/// denominators ≤ 12, valid degrees.  None when this draw is unusable.
pub fn random_module_data(rng: &mut impl Rng) -> Option<ModuleData> {
    let n = rng.gen_range(1..=5);
    let h = random_h(rng, n);
    let finite_count = rng.gen_range(1..=3);
    let mut points = BTreeMap::new();
    for x in 0..finite_count {
        points.insert(PointLocation::finite(x), random_table(rng, &h));
    }
    points.insert(PointLocation::Infinity, random_table(rng, &h));
    let delta = fit_delta(rng, &points, &h)?;
    let data = ModuleData::new(points, h, delta, true).ok()?;
    debug_assert!(data.check_rank_consistency().is_empty());
    data.h1_min_map().ok()?;
    Some(data)
}

/// Random data whose infinity table is concentrated at (γ₀, ℓ = 0) —
/// scalar monodromy at infinity equal to λ₀.
pub fn random_scalar_infinity_data(rng: &mut impl Rng) -> Option<(ModuleData, Angle)> {
    let n = rng.gen_range(1..=5);
    let h = random_h(rng, n);
    let gamma0 = random_nonzero_angle(rng);
    let finite_count = rng.gen_range(1..=3);
    let mut points = BTreeMap::new();
    for x in 0..finite_count {
        points.insert(PointLocation::finite(x), random_table(rng, &h));
    }
    let mut inf = HodgeTable::new();
    for (p, m) in &h {
        inf.add(gamma0, 0, *p, *m);
    }
    points.insert(PointLocation::Infinity, inf);
    let delta = fit_delta(rng, &points, &h)?;
    let data = ModuleData::new(points, h, delta, true).ok()?;
    data.h1_min_map().ok()?;
    Some((data, gamma0))
}
