//! The middle convolution MC_{λ₀} and the rank-one twist on module data.
//!
//! For the Kummer parameter γ₀ ∈ (0,1), λ₀ = exp(−2iπγ₀), the transform of
//! the nearby-cycle table at infinity reads, entry by entry in the forward
//! direction (old entry → new entry):
//!
//! * (γ, ℓ, p) with γ ∈ (γ₀, 1) → (γ−γ₀, ℓ, p+1);
//! * (γ, ℓ, p) with γ ∈ (0, γ₀) → (γ−γ₀+1, ℓ, p);
//! * (γ₀, ℓ, p) with ℓ ≥ 1 → (0, ℓ−1, p); the (γ₀, 0, p) entries are
//!   consumed;
//! * (0, ℓ, p) → (1−γ₀, ℓ+1, p+1);
//! * additionally (1−γ₀, 0, p) receives h^p H¹(ℙ¹, DR 𝓜^min).
//!
//! Hodge numbers transform as
//!
//! h^p(MC) = Σ_{γ∈[0,γ₀)} ν^p_{∞,λ} + Σ_{γ∈[γ₀,1)} ν^{p−1}_{∞,λ}
//!           + h^p H¹(𝔸¹, DR M) − ν^{p−1}_{∞,λ₀,prim},
//!
//! and degrees as
//!
//! δ^p(MC) = δ^p + Σ_{γ∈[γ₀,1)} ν^p_{∞,λ}
//!           − Σ_i ( μ^p_{x_i,1} + Σ_{γ∈(0,1−γ₀)} μ^{p−1}_{x_i,λ} ).
//!
//! At a finite point the vanishing-cycle data transports pointwise: the
//! eigenvalue angle moves by +γ₀ (mod 1), the weight ℓ is preserved, and
//! the Hodge index shifts by +1 exactly when the old angle lies in
//! (0, 1−γ₀].  This is the unique uniform-shift rule compatible with the
//! summed identity
//!
//! Σ_i ( Σ_{μ≠1} μ^{p−1}_{x_i,μ}(MC) + μ^p_{x_i,1}(MC) )
//!   = Σ_i ( Σ_{γ∈(0,1−γ₀)} μ^{p−2}_{x_i,λ}(M) + Σ_{γ∈[1−γ₀,1]} μ^{p−1}_{x_i,λ}(M) ),
//!
//! which is verified, together with the closure h^p(MC) = Σ_λ ν^p_{∞,λ}(MC)
//! and rank consistency of the result, on every convolution.
//!
//! All interval memberships are exact rational comparisons with the
//! boundaries exactly as written above.

use std::collections::BTreeMap;

use num_rational::Ratio;

use crate::angle::Angle;
use crate::error::{Error, Result};
use crate::invariants::{FiniteLabel, HodgeTable, ModuleData, PointLocation};

/// Parameter of the Kummer module 𝒦_{λ₀}: the angle γ₀ ≠ 0 of λ₀.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct KummerParameter {
    gamma0: Angle,
}

impl KummerParameter {
    pub fn new(gamma0: Angle) -> Result<Self> {
        if gamma0.is_zero() {
            return Err(Error::InvalidArgument(
                "Kummer parameter must have lambda0 != 1 (gamma0 != 0)".into(),
            ));
        }
        Ok(KummerParameter { gamma0 })
    }

    pub fn gamma0(&self) -> Angle {
        self.gamma0
    }

    /// Parameter of the inverse convolution, γ̄₀ = 1−γ₀.
    pub fn conjugate(&self) -> Self {
        KummerParameter {
            gamma0: self.gamma0.conjugate(),
        }
    }
}

/// Exponents of a rank-one twist at finite points; the infinity exponent is
/// the derived value (−Σ exponents) mod 1.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct TwistParameter {
    exponents: BTreeMap<FiniteLabel, Angle>,
}

impl TwistParameter {
    /// Zero exponents are dropped so that the trivial twist is canonical.
    pub fn new<I: IntoIterator<Item = (FiniteLabel, Angle)>>(exponents: I) -> Self {
        TwistParameter {
            exponents: exponents
                .into_iter()
                .filter(|(_, e)| !e.is_zero())
                .collect(),
        }
    }

    pub fn exponents(&self) -> &BTreeMap<FiniteLabel, Angle> {
        &self.exponents
    }

    pub fn exponent_at(&self, label: &FiniteLabel) -> Angle {
        self.exponents.get(label).copied().unwrap_or_else(Angle::zero)
    }

    pub fn is_trivial(&self) -> bool {
        self.exponents.is_empty()
    }

    /// (−Σ exponents) mod 1.
    pub fn infinity_exponent(&self) -> Angle {
        self.exponents
            .values()
            .fold(Angle::zero(), |acc, e| acc.add(e))
            .neg()
    }

    /// The inverse twist (negated exponents).
    pub fn inverse(&self) -> Self {
        TwistParameter::new(self.exponents.iter().map(|(l, e)| (l.clone(), e.neg())))
    }
}

/// Transports the infinity table through MC_{λ₀}.
///
/// `h1min` must hold h^p H¹(ℙ¹, DR 𝓜^min) of the full module data; it
/// feeds the (λ̄₀, ℓ = 0) entries.
pub fn mc_infinity(
    table: &HodgeTable,
    h1min: &BTreeMap<i32, u64>,
    g0: &KummerParameter,
) -> HodgeTable {
    let gamma0 = g0.gamma0();
    let mut out = HodgeTable::new();
    for ((g, ell, p), m) in table.iter() {
        if g.is_zero() {
            out.add(gamma0.conjugate(), ell + 1, p + 1, *m);
        } else if *g == gamma0 {
            if *ell >= 1 {
                out.add(Angle::zero(), ell - 1, *p, *m);
            }
            // the (γ₀, 0, p) part is consumed by the minimal extension
        } else if *g > gamma0 {
            out.add(g.sub(&gamma0), *ell, p + 1, *m);
        } else {
            out.add(g.sub(&gamma0), *ell, *p, *m);
        }
    }
    for (p, m) in h1min {
        out.add(gamma0.conjugate(), 0, *p, *m);
    }
    out
}

/// Hodge numbers of MC_{λ₀}(M).
pub fn mc_h(data: &ModuleData, g0: &KummerParameter) -> Result<BTreeMap<i32, u64>> {
    require_consistent(data, "mc_h")?;
    let gamma0 = g0.gamma0();
    let inf = data.infinity_table();
    let h1 = data.h1_affine_map()?;
    let (lo, hi) = data.p_window();
    let mut out = BTreeMap::new();
    for p in (lo - 1)..=(hi + 1) {
        let mut value: i64 = 0;
        for g in inf.angles() {
            if g < gamma0 {
                value += inf.nu_total(&g, p) as i64;
            } else {
                value += inf.nu_total(&g, p - 1) as i64;
            }
        }
        value += h1.get(&p).copied().unwrap_or(0) as i64;
        value -= inf.nu_prim(&gamma0, p - 1) as i64;
        if value < 0 {
            return Err(Error::InconsistentData(format!(
                "h^p(MC) came out negative ({value}) at p={p}"
            )));
        }
        if value > 0 {
            out.insert(p, value as u64);
        }
    }
    Ok(out)
}

/// Degrees of MC_{λ₀}(M).
pub fn mc_delta(data: &ModuleData, g0: &KummerParameter) -> Result<BTreeMap<i32, i64>> {
    require_consistent(data, "mc_delta")?;
    if !data.delta_valid() {
        return Err(Error::UnavailableInvariant(
            "mc_delta requires valid delta data".into(),
        ));
    }
    let gamma0 = g0.gamma0();
    let co_gamma0 = gamma0.conjugate();
    let inf = data.infinity_table();
    let (lo, hi) = data.p_window();
    let mut out = BTreeMap::new();
    for p in (lo - 1)..=(hi + 1) {
        let mut value = data.delta_at(p);
        for g in inf.angles() {
            if g >= gamma0 {
                value += inf.nu_total(&g, p) as i64;
            }
        }
        for (_, table) in data.finite_points() {
            value -= table.mu_total(&Angle::zero(), p) as i64;
            for g in table.angles() {
                if !g.is_zero() && g < co_gamma0 {
                    value -= table.mu_total(&g, p - 1) as i64;
                }
            }
        }
        if value != 0 {
            out.insert(p, value);
        }
    }
    Ok(out)
}

/// The ν-table of a finite point read in vanishing-cycle (μ) terms:
/// identical away from λ = 1, one step down the monodromy filtration at
/// λ = 1.
fn to_mu_table(table: &HodgeTable) -> HodgeTable {
    let mut out = HodgeTable::new();
    for ((g, ell, p), m) in table.iter() {
        if g.is_zero() {
            if *ell >= 1 {
                out.add(*g, ell - 1, *p, *m);
            }
        } else {
            out.add(*g, *ell, *p, *m);
        }
    }
    out
}

/// Transports one finite-point table through MC_{λ₀} and reconstructs the
/// ν-table, fixing the unipotent ℓ = 0 part by rank consistency against
/// `new_h`.
pub fn mc_finite(
    table: &HodgeTable,
    g0: &KummerParameter,
    new_h: &BTreeMap<i32, u64>,
) -> Result<HodgeTable> {
    let gamma0 = g0.gamma0();
    let co_gamma0 = gamma0.conjugate();

    // vanishing cycles move by +γ₀ with a Hodge shift on old γ ∈ (0, 1−γ₀]
    let mut new_mu = HodgeTable::new();
    for ((g, ell, p), m) in to_mu_table(table).iter() {
        let shift = if !g.is_zero() && *g <= co_gamma0 { 1 } else { 0 };
        new_mu.add(g.add(&gamma0), *ell, p + shift, *m);
    }

    // back to ν-data: λ ≠ 1 entries coincide, λ = 1 climbs one weight
    let mut out = HodgeTable::new();
    for ((g, ell, p), m) in new_mu.iter() {
        if g.is_zero() {
            out.add(*g, ell + 1, *p, *m);
        } else {
            out.add(*g, *ell, *p, *m);
        }
    }

    // unipotent ℓ = 0 part: ν^p_{x,1,0} = h^p − Σ_{γ≠0} ν^p_{x,γ} − Σ_{ℓ≥1} Σ_k ν^{p+k}_{x,1,ℓ}
    let lo = new_h.keys().next().copied().unwrap_or(0);
    let hi = new_h.keys().next_back().copied().unwrap_or(0);
    let (tlo, thi) = out.p_window().unwrap_or((lo, hi));
    for p in lo.min(tlo)..=hi.max(thi) {
        let mut placed: u64 = 0;
        for g in out.angles() {
            placed += out.nu_total(&g, p);
        }
        let target = new_h.get(&p).copied().unwrap_or(0);
        if placed > target {
            return Err(Error::InconsistentData(format!(
                "transported multiplicities at a finite point exceed h^p(MC) at p={p} \
                 ({placed} > {target})"
            )));
        }
        out.add(Angle::zero(), 0, p, target - placed);
    }
    Ok(out)
}

/// Full middle convolution MC_{λ₀} on a module-data package.
///
/// Requires rank consistency and valid degree data; rejects a convolution
/// that collapses the total rank to zero.  The identity closures
/// (Hodge numbers against the transported infinity table, the summed
/// finite-point identity, rank consistency of the output) are re-checked
/// on every call.
pub fn middle_convolve(data: &ModuleData, g0: &KummerParameter) -> Result<ModuleData> {
    require_consistent(data, "middle_convolve")?;
    let new_h = mc_h(data, g0)?;
    if new_h.is_empty() {
        return Err(Error::DegenerateConvolution(format!(
            "MC with gamma0 = {} kills the module; the input violates the \
             irreducibility assumptions (Kummer pullback)",
            g0.gamma0()
        )));
    }
    let h1min = data.h1_min_map()?;
    let mut points = BTreeMap::new();
    points.insert(
        PointLocation::Infinity,
        mc_infinity(data.infinity_table(), &h1min, g0),
    );
    for (label, table) in data.finite_points() {
        points.insert(
            PointLocation::Finite(label.clone()),
            mc_finite(table, g0, &new_h)?,
        );
    }
    let new_delta = mc_delta(data, g0)?;
    let out = ModuleData::new(points, new_h, new_delta, data.delta_valid())?;

    let residues = infinity_closure_violations(&out);
    if !residues.is_empty() {
        return Err(Error::InconsistentData(format!(
            "internal closure failed: transported infinity table disagrees with h^p(MC) \
             at p = {residues:?}"
        )));
    }
    let residues = finite_aggregate_violations(data, &out, g0);
    if !residues.is_empty() {
        return Err(Error::InconsistentData(format!(
            "internal closure failed: summed finite-point identity broken at p = {residues:?}"
        )));
    }
    let violations = out.check_rank_consistency();
    if !violations.is_empty() {
        return Err(Error::InconsistentData(format!(
            "convolution output fails rank consistency: {}",
            violations[0]
        )));
    }
    Ok(out)
}

/// Rank-one twist by the given exponents.
///
/// Every table entry's angle moves by the local exponent (mod 1), the
/// infinity table by the derived exponent; h is unchanged.  The degrees are
/// carried along exactly: with e_x the exponent at x (finite and ∞) and
/// m = Σ_x e_x ∈ ℤ≥0, the Deligne lattice changes by
///
/// δ^p(M⊗L) = δ^p(M) − m·h^p(M) + Σ_x Σ_{γ : γ+e_x ≥ 1} ν^p_{x,λ}(M),
///
/// the last sum collecting the eigenvalues whose residue overflows and is
/// renormalized back into [0,1).
pub fn twist(data: &ModuleData, tw: &TwistParameter) -> Result<ModuleData> {
    require_consistent(data, "twist")?;
    if tw.is_trivial() {
        return Ok(data.clone());
    }
    let e_inf = tw.infinity_exponent();

    let mut points = BTreeMap::new();
    let mut overflow: BTreeMap<i32, i64> = BTreeMap::new();
    let mut add_overflow = |table: &HodgeTable, e: &Angle| {
        if e.is_zero() {
            return;
        }
        let threshold = e.conjugate(); // γ + e ≥ 1 ⟺ γ ≥ 1 − e
        if let Some((lo, hi)) = table.p_window() {
            for g in table.angles() {
                if g >= threshold {
                    for p in lo..=hi {
                        let m = table.nu_total(&g, p);
                        if m != 0 {
                            *overflow.entry(p).or_insert(0) += m as i64;
                        }
                    }
                }
            }
        }
    };

    // existing finite points, then points newly made singular by the twist
    for (label, table) in data.finite_points() {
        let e = tw.exponent_at(label);
        add_overflow(table, &e);
        points.insert(PointLocation::Finite(label.clone()), table.shift_gamma(&e));
    }
    for (label, e) in tw.exponents() {
        let loc = PointLocation::Finite(label.clone());
        if !points.contains_key(&loc) {
            // previously regular point: implicit trivial table, full
            // unipotent ℓ = 0 content, nothing overflows (γ = 0, e < 1)
            let mut t = HodgeTable::new();
            for (p, m) in data.h() {
                t.add(*e, 0, *p, *m);
            }
            points.insert(loc, t);
        }
    }
    let inf = data.infinity_table();
    add_overflow(inf, &e_inf);
    points.insert(PointLocation::Infinity, inf.shift_gamma(&e_inf));

    let (delta, valid) = if data.delta_valid() {
        let total: Ratio<i128> = tw
            .exponents()
            .values()
            .chain(std::iter::once(&e_inf))
            .map(|e| Ratio::new(e.numerator() as i128, e.denominator() as i128))
            .sum();
        debug_assert!(total.is_integer());
        let m = *total.numer() / *total.denom();
        let mut delta = BTreeMap::new();
        let (lo, hi) = data.p_window();
        for p in lo..=hi {
            let v = data.delta_at(p) - m as i64 * data.h_at(p) as i64
                + overflow.get(&p).copied().unwrap_or(0);
            if v != 0 {
                delta.insert(p, v);
            }
        }
        (delta, true)
    } else {
        (BTreeMap::new(), false)
    };

    ModuleData::new(points, data.h().clone(), delta, valid)
}

/// Residual degrees where Σ_λ ν^p_{∞,λ} of the (convolved) data differs
/// from its h^p.  Empty for every genuine convolution output.
pub fn infinity_closure_violations(data: &ModuleData) -> Vec<i32> {
    let inf = data.infinity_table();
    let (lo, hi) = data.p_window();
    (lo..=hi)
        .filter(|p| {
            let total: u64 = inf.angles().iter().map(|g| inf.nu_total(g, *p)).sum();
            total != data.h_at(*p)
        })
        .collect()
}

/// Degrees at which the summed finite-point identity fails between a
/// convolution input and its output.  Empty for every genuine convolution.
pub fn finite_aggregate_violations(
    before: &ModuleData,
    after: &ModuleData,
    g0: &KummerParameter,
) -> Vec<i32> {
    let co_gamma0 = g0.gamma0().conjugate();
    let (blo, bhi) = before.p_window();
    let (alo, ahi) = after.p_window();
    let (lo, hi) = (blo.min(alo) - 2, bhi.max(ahi) + 2);
    let mut bad = Vec::new();
    for p in lo..=hi {
        let mut new_side: u64 = 0;
        for (_, table) in after.finite_points() {
            new_side += crate::invariants::finite_mu_sum(table, p);
        }
        let mut old_side: u64 = 0;
        for (_, table) in before.finite_points() {
            for g in table.angles() {
                if g.is_zero() {
                    // the λ = 1 endpoint of [1−γ₀, 1]
                    old_side += table.mu_total(&g, p - 1);
                } else if g < co_gamma0 {
                    old_side += table.mu_total(&g, p - 2);
                } else {
                    old_side += table.mu_total(&g, p - 1);
                }
            }
        }
        if new_side != old_side {
            bad.push(p);
        }
    }
    bad
}

fn require_consistent(data: &ModuleData, op: &str) -> Result<()> {
    let violations = data.check_rank_consistency();
    if let Some(first) = violations.first() {
        return Err(Error::Precondition(format!(
            "{op} requires rank-consistent data; {first}"
        )));
    }
    Ok(())
}
